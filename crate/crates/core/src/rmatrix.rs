//! Hecke R-matrices, their Baxterisation, and the identity checks they must
//! pass, together with the braided-integer operators built from `PR`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff::{LaurentPoly, PolyQZW, Scalar};
use crate::error::Error;
use crate::tensor::{encode, TensorOp};

pub type Op = TensorOp<LaurentPoly>;

/// Whether identities are tested for generic `q` or after setting `q = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QSpecialization {
    /// `(PR - q)(PR + q^{-1}) = 0` over `Z[q, q^-1]`.
    Generic,
    /// Same identity with every coefficient evaluated at `q = 1`.
    AtOne,
}

#[derive(Clone, Debug)]
pub struct HeckeData {
    pub n: usize,
    pub r: Op,
    pub specialization: QSpecialization,
}

/// Which off-diagonal triangle carries the `q - q^{-1}` entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangle {
    /// `R[(a,b)][(b,a)] = q - q^{-1}` for `a > b` (the usual FRT form).
    Lower,
    /// The same entries for `a < b`.
    Upper,
}

impl HeckeData {
    pub fn new(r: Op) -> Result<Self, Error> {
        if r.legs() != 2 {
            return Err(Error::Shape(format!("R must act on 2 legs, got {}", r.legs())));
        }
        Ok(Self {
            n: r.n(),
            r,
            specialization: QSpecialization::Generic,
        })
    }

    pub fn at_q_one(mut self) -> Self {
        self.specialization = QSpecialization::AtOne;
        self
    }

    /// `PR`.
    pub fn pr(&self) -> Op {
        braid_operator(&self.r)
    }

    /// `𝐑 = -q^{-1} R`.
    pub fn bold_r(&self) -> Op {
        self.r.scale(&-LaurentPoly::q_pow(-1))
    }

    /// `(PR)^{-1} = PR - (q - q^{-1})`, valid for Hecke `R`.
    pub fn pr_inverse_hecke(&self) -> Op {
        self.pr()
            .sub(&Op::scalar(self.n, 2, LaurentPoly::q_minus_q_inv()))
            .expect("same shape")
    }

    /// `R_{21}^{-1}` by exact elimination.
    pub fn r21_inverse(&self) -> Result<Op, Error> {
        self.r.swap_legs()?.invert()
    }
}

/// The standard `sl_n` Hecke R-matrix with the lower-triangle convention.
pub fn standard_sln_r(n: usize) -> HeckeData {
    sln_r(n, Triangle::Lower)
}

pub fn sln_r(n: usize, triangle: Triangle) -> HeckeData {
    let mut r = Op::zero(n, 2);
    for a in 0..n {
        for b in 0..n {
            let row = encode(n, &[a, b]);
            if a == b {
                r.set(row, row, LaurentPoly::q());
            } else {
                r.set(row, row, LaurentPoly::one());
                let carries = match triangle {
                    Triangle::Lower => a > b,
                    Triangle::Upper => a < b,
                };
                if carries {
                    r.set(row, encode(n, &[b, a]), LaurentPoly::q_minus_q_inv());
                }
            }
        }
    }
    HeckeData {
        n,
        r,
        specialization: QSpecialization::Generic,
    }
}

/// `P · X` for a two-leg operator `X`.
pub fn braid_operator(x: &Op) -> Op {
    TensorOp::permutation(x.n())
        .compose(x)
        .expect("two-leg operator")
}

/// A nonzero entry certifying a failed identity (1-based multi-indices).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
    pub value: String,
}

impl Witness {
    fn from_op<C: Scalar + std::fmt::Display>(op: &TensorOp<C>) -> Option<Self> {
        op.first_entry().map(|(r, c, v)| Witness {
            row: r.iter().map(|x| x + 1).collect(),
            col: c.iter().map(|x| x + 1).collect(),
            value: v.to_string(),
        })
    }
}

/// Outcome of one identity check; serialises to the CLI report schema.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    pub pass: bool,
    pub witness: Option<Witness>,
    pub degrees: BTreeMap<String, i64>,
}

impl CheckReport {
    pub fn from_difference<C: Scalar + std::fmt::Display>(
        check: &str,
        n: usize,
        diff: &TensorOp<C>,
    ) -> Self {
        Self {
            check: check.to_string(),
            n,
            pass: diff.is_zero(),
            witness: Witness::from_op(diff),
            degrees: BTreeMap::new(),
        }
    }
}

fn specialize(data: &HeckeData, op: &Op) -> Op {
    match data.specialization {
        QSpecialization::Generic => op.clone(),
        QSpecialization::AtOne => op.map(|p| LaurentPoly::constant(p.at_one())),
    }
}

fn laurent_degrees(op: &Op) -> BTreeMap<String, i64> {
    let mut lo = 0;
    let mut hi = 0;
    for (_, _, v) in op.entries() {
        lo = lo.min(v.min_exp().unwrap_or(0));
        hi = hi.max(v.max_exp().unwrap_or(0));
    }
    BTreeMap::from([("q_min".to_string(), lo), ("q_max".to_string(), hi)])
}

/// `(PR - q)(PR + q^{-1}) = 0`.
pub fn check_hecke(data: &HeckeData) -> Result<CheckReport, Error> {
    if data.r.legs() != 2 || data.r.n() != data.n {
        return Err(Error::Shape("Hecke check needs a two-leg operator".into()));
    }
    let n = data.n;
    let (q, q_inv) = match data.specialization {
        QSpecialization::Generic => (LaurentPoly::q(), LaurentPoly::q_pow(-1)),
        QSpecialization::AtOne => (LaurentPoly::one(), LaurentPoly::one()),
    };
    let pr = specialize(data, &data.pr());
    let left = pr.sub(&Op::scalar(n, 2, q))?;
    let right = pr.add(&Op::scalar(n, 2, q_inv))?;
    let prod = specialize(data, &left.compose(&right)?);
    let mut report = CheckReport::from_difference("hecke", n, &prod);
    report.degrees = laurent_degrees(&data.r);
    Ok(report)
}

/// `(PR)_{12}(PR)_{23}(PR)_{12} = (PR)_{23}(PR)_{12}(PR)_{23}`.
pub fn check_braid(data: &HeckeData) -> Result<CheckReport, Error> {
    let pr = data.pr();
    let a = pr.embed(&[1, 2], 3)?;
    let b = pr.embed(&[2, 3], 3)?;
    let lhs = Op::chain(&[&a, &b, &a])?;
    let rhs = Op::chain(&[&b, &a, &b])?;
    let diff = specialize(data, &lhs.sub(&rhs)?);
    let mut report = CheckReport::from_difference("ybe", data.n, &diff);
    report.degrees = laurent_degrees(&lhs);
    Ok(report)
}

/// `R_{12} R_{13} R_{23} = R_{23} R_{13} R_{12}`.
pub fn check_ybe(data: &HeckeData) -> Result<CheckReport, Error> {
    let r12 = data.r.embed(&[1, 2], 3)?;
    let r13 = data.r.embed(&[1, 3], 3)?;
    let r23 = data.r.embed(&[2, 3], 3)?;
    let lhs = Op::chain(&[&r12, &r13, &r23])?;
    let rhs = Op::chain(&[&r23, &r13, &r12])?;
    let diff = specialize(data, &lhs.sub(&rhs)?);
    Ok(CheckReport::from_difference("ybe_r", data.n, &diff))
}

/// Denominator-cleared Baxterisation: `R(z/w) = S(z,w) / (wq - zq^{-1})`
/// with `S(z,w) = wR - zR_{21}^{-1}`.
#[derive(Clone, Debug)]
pub struct SpectralR {
    pub n: usize,
    r: TensorOp<PolyQZW>,
    r21_inv: TensorOp<PolyQZW>,
}

/// Spectral variable slot for [`SpectralR::numerator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spectral {
    One,
    Z,
    W,
}

impl Spectral {
    fn poly(self) -> PolyQZW {
        match self {
            Spectral::One => PolyQZW::one(),
            Spectral::Z => PolyQZW::z(),
            Spectral::W => PolyQZW::w(),
        }
    }
}

impl SpectralR {
    /// `den·R - num·R_{21}^{-1}`, the cleared numerator of `R(num/den)`.
    pub fn numerator(&self, num: Spectral, den: Spectral) -> TensorOp<PolyQZW> {
        self.r
            .scale(&den.poly())
            .sub(&self.r21_inv.scale(&num.poly()))
            .expect("same shape")
    }

    /// `S(z, w)`.
    pub fn s(&self) -> TensorOp<PolyQZW> {
        self.numerator(Spectral::Z, Spectral::W)
    }

    /// `den·q - num·q^{-1}`.
    pub fn denominator(&self, num: Spectral, den: Spectral) -> PolyQZW {
        &(&den.poly() * &PolyQZW::q_pow(1)) - &(&num.poly() * &PolyQZW::q_pow(-1))
    }

    /// `R(z0)` at exact rational `(q0, z0)`; fails on the pole `z0 = q0^2`.
    pub fn evaluate(
        &self,
        q0: &BigRational,
        z0: &BigRational,
    ) -> Result<TensorOp<BigRational>, Error> {
        let den = q0 - z0 / q0;
        if den.is_zero() {
            return Err(Error::Pole(format!("z = {z0} equals q^2 for q = {q0}")));
        }
        let eval = |p: &PolyQZW| -> BigRational {
            let mut acc = BigRational::zero();
            for (m, c) in p.terms() {
                assert!(m.z == 0 && m.w == 0);
                acc += LaurentPoly::q_pow(m.q).eval(q0) * BigRational::from_integer(c.clone());
            }
            acc
        };
        let r = self.r.map(eval);
        let r21_inv = self.r21_inv.map(eval);
        let num = r.sub(&r21_inv.scale(z0))?;
        Ok(num.scale(&den.recip()))
    }
}

pub fn baxterise(data: &HeckeData) -> Result<SpectralR, Error> {
    let r21_inv = data.r21_inverse()?;
    Ok(SpectralR {
        n: data.n,
        r: data.r.map(LaurentPoly::to_qzw),
        r21_inv: r21_inv.map(LaurentPoly::to_qzw),
    })
}

/// Parametrised Yang–Baxter equation after clearing denominators:
/// `S(z,w)_{12} S(z,1)_{13} S(w,1)_{23} = S(w,1)_{23} S(z,1)_{13} S(z,w)_{12}`.
pub fn check_pybe(data: &HeckeData) -> Result<CheckReport, Error> {
    let spectral = baxterise(data)?;
    let s12 = spectral.numerator(Spectral::Z, Spectral::W).embed(&[1, 2], 3)?;
    let s13 = spectral.numerator(Spectral::Z, Spectral::One).embed(&[1, 3], 3)?;
    let s23 = spectral.numerator(Spectral::W, Spectral::One).embed(&[2, 3], 3)?;
    let lhs = TensorOp::chain(&[&s12, &s13, &s23])?;
    let rhs = TensorOp::chain(&[&s23, &s13, &s12])?;
    let mut diff = lhs.sub(&rhs)?;
    if data.specialization == QSpecialization::AtOne {
        diff = diff.map(PolyQZW::at_q_one);
    }
    let mut report = CheckReport::from_difference("pybe", data.n, &diff);
    let (mut qmin, mut qmax, mut zmax, mut wmax) = (0i64, 0i64, 0u32, 0u32);
    for (_, _, v) in lhs.entries() {
        let (a, b, c, d) = v.degree_bounds();
        qmin = qmin.min(a);
        qmax = qmax.max(b);
        zmax = zmax.max(c);
        wmax = wmax.max(d);
    }
    report.degrees = BTreeMap::from([
        ("q_min".to_string(), qmin),
        ("q_max".to_string(), qmax),
        ("z_max".to_string(), zmax as i64),
        ("w_max".to_string(), wmax as i64),
    ]);
    Ok(report)
}

/// `count` reproducible admissible points `(q0, z0)`: `q0 ∉ {0, ±1}` and
/// `z0 ∉ {0, q0^2, q0^-2}`, with small numerators and denominators.
pub fn admissible_samples(seed: u64, count: usize) -> Vec<(BigRational, BigRational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=9);
        BigRational::new(num.into(), den.into())
    };
    let one = BigRational::one();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q0 = draw(&mut rng);
        if q0.is_zero() || q0 == one || q0 == -one.clone() {
            continue;
        }
        let z0 = draw(&mut rng);
        let q2 = &q0 * &q0;
        if z0.is_zero() || z0 == q2 || z0 == q2.recip() {
            continue;
        }
        out.push((q0, z0));
    }
    out
}

/// Checks `R(z) (R(z^{-1}))_{21} = 1` at exact rational samples `(q0, z0)`.
pub fn check_unitarity(
    data: &HeckeData,
    samples: &[(BigRational, BigRational)],
) -> Result<CheckReport, Error> {
    let spectral = baxterise(data)?;
    let n = data.n;
    let one = BigRational::one();
    let mut report = CheckReport {
        check: "unitarity".into(),
        n,
        pass: true,
        witness: None,
        degrees: BTreeMap::from([("samples".to_string(), samples.len() as i64)]),
    };
    for (q0, z0) in samples {
        if q0.is_zero() || *q0 == one || *q0 == -one.clone() {
            return Err(Error::Pole(format!("q = {q0} is not admissible")));
        }
        if z0.is_zero() {
            return Err(Error::Pole("z = 0 is not admissible".into()));
        }
        let q2 = q0 * q0;
        if *z0 == q2 || *z0 == q2.recip() {
            return Err(Error::Pole(format!(
                "z = {z0} hits the Baxterisation denominator at q = {q0}"
            )));
        }
        let rz = spectral.evaluate(q0, z0)?;
        let rzinv21 = spectral.evaluate(q0, &z0.recip())?.swap_legs()?;
        let prod = rz.compose(&rzinv21)?;
        let diff = prod.sub(&TensorOp::identity(n, 2))?;
        if !diff.is_zero() {
            report.pass = false;
            report.witness = diff.first_entry().map(|(r, c, v)| Witness {
                row: r.iter().map(|x| x + 1).collect(),
                col: c.iter().map(|x| x + 1).collect(),
                value: format!("{v} at (q, z) = ({q0}, {z0})"),
            });
            break;
        }
    }
    Ok(report)
}

fn pr_on_legs(r_like: &Op, k: usize, legs: usize) -> Result<Op, Error> {
    braid_operator(r_like).embed(&[k, k + 1], legs)
}

/// `[from, to; R] = (PR)_{from,from+1} ... (PR)_{to-1,to}` on `legs` legs.
pub fn interval_product(r_like: &Op, from: usize, to: usize, legs: usize) -> Result<Op, Error> {
    if from == 0 || from >= to || to > legs {
        return Err(Error::Legs(format!("[{from},{to}] on {legs} legs")));
    }
    let factors = (from..to)
        .map(|k| pr_on_legs(r_like, k, legs))
        .collect::<Result<Vec<_>, _>>()?;
    Op::chain(&factors.iter().collect::<Vec<_>>())
}

/// `bar[from, to; R] = (PR)_{to-1,to} ... (PR)_{from,from+1}`.
pub fn interval_product_bar(
    r_like: &Op,
    from: usize,
    to: usize,
    legs: usize,
) -> Result<Op, Error> {
    if from == 0 || from >= to || to > legs {
        return Err(Error::Legs(format!("bar[{from},{to}] on {legs} legs")));
    }
    let factors = (from..to)
        .rev()
        .map(|k| pr_on_legs(r_like, k, legs))
        .collect::<Result<Vec<_>, _>>()?;
    Op::chain(&factors.iter().collect::<Vec<_>>())
}

/// `[m; R] = 1 + (PR)_{12} + (PR)_{12}(PR)_{23} + ...` on `m` legs.
pub fn braided_integer(m: usize, r_like: &Op) -> Result<Op, Error> {
    if m == 0 {
        return Err(Error::Legs("braided integer needs m >= 1".into()));
    }
    let n = r_like.n();
    let mut acc = Op::identity(n, m);
    let mut partial = Op::identity(n, m);
    for k in 1..m {
        partial = partial.compose(&pr_on_legs(r_like, k, m)?)?;
        acc = acc.add(&partial)?;
    }
    Ok(acc)
}

/// `bar[m; R] = 1 + (PR)_{m-1,m} + (PR)_{m-1,m}(PR)_{m-2,m-1} + ...`.
pub fn braided_integer_bar(m: usize, r_like: &Op) -> Result<Op, Error> {
    if m == 0 {
        return Err(Error::Legs("braided integer needs m >= 1".into()));
    }
    let n = r_like.n();
    let mut acc = Op::identity(n, m);
    let mut partial = Op::identity(n, m);
    for k in (1..m).rev() {
        partial = partial.compose(&pr_on_legs(r_like, k, m)?)?;
        acc = acc.add(&partial)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_is_trivially_hecke() {
        let d = standard_sln_r(1);
        assert_eq!(d.r, Op::scalar(1, 2, LaurentPoly::q()));
        assert!(check_hecke(&d).unwrap().pass);
    }

    #[test]
    fn permutation_is_hecke_only_at_q_one() {
        let p = HeckeData::new(Op::permutation(2)).unwrap();
        assert!(!check_hecke(&p).unwrap().pass);
        assert!(check_hecke(&p.clone().at_q_one()).unwrap().pass);
        assert!(check_pybe(&p.at_q_one()).unwrap().pass);
    }

    #[test]
    fn identity_fails_with_witness() {
        let id = HeckeData::new(Op::identity(2, 2)).unwrap();
        let rep = check_hecke(&id).unwrap();
        assert!(!rep.pass);
        let w = rep.witness.unwrap();
        // (1 - q)(1 + q^{-1}) = q^-1 - q on the diagonal.
        assert_eq!(w.value, "-q + q^-1");
        assert_eq!(w.row, w.col);
    }

    #[test]
    fn both_triangles_are_hecke_and_braided() {
        for n in 2..=3 {
            for t in [Triangle::Lower, Triangle::Upper] {
                let d = sln_r(n, t);
                assert!(check_hecke(&d).unwrap().pass);
                assert!(check_braid(&d).unwrap().pass);
                assert!(check_ybe(&d).unwrap().pass);
            }
        }
    }

    #[test]
    fn spectral_at_zero_and_one() {
        let d = standard_sln_r(2);
        let s = baxterise(&d).unwrap();
        let r = d.r.map(LaurentPoly::to_qzw);
        let r21i = d.r21_inverse().unwrap().map(LaurentPoly::to_qzw);
        assert_eq!(s.numerator(Spectral::One, Spectral::One), r.sub(&r21i).unwrap());
        // S(0, w) = wR.
        let s_zw = s.s();
        let at_z0 = s_zw.map(|p| {
            PolyQZW::from_terms(p.terms().filter(|(m, _)| m.z == 0).map(|(m, c)| (*m, c.clone())))
        });
        assert_eq!(at_z0, r.scale(&PolyQZW::w()));
    }

    #[test]
    fn braided_integer_small() {
        let d = standard_sln_r(2);
        let br = d.bold_r();
        assert_eq!(braided_integer(1, &br).unwrap(), Op::identity(2, 1));
        let two = braided_integer(2, &br).unwrap();
        assert_eq!(two, Op::identity(2, 2).add(&braid_operator(&br)).unwrap());
        assert_eq!(two, braided_integer_bar(2, &br).unwrap());
        let pr = braid_operator(&d.r);
        assert_eq!(interval_product(&d.r, 1, 2, 2).unwrap(), pr);
        let p12 = pr.embed(&[1, 2], 3).unwrap();
        let p23 = pr.embed(&[2, 3], 3).unwrap();
        assert_eq!(interval_product(&d.r, 1, 3, 3).unwrap(), p12.compose(&p23).unwrap());
        assert_eq!(interval_product_bar(&d.r, 1, 3, 3).unwrap(), p23.compose(&p12).unwrap());
        assert!(interval_product(&d.r, 2, 2, 3).is_err());
    }

    #[test]
    fn unitarity_rejects_pole() {
        let d = standard_sln_r(2);
        let q0 = BigRational::new(3.into(), 2.into());
        let z0 = &q0 * &q0;
        assert!(matches!(check_unitarity(&d, &[(q0, z0)]), Err(Error::Pole(_))));
    }
}
