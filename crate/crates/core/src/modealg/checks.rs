use std::collections::BTreeMap;

use num_traits::One;

use super::reduce::NormalOrderer;
use super::rules::ExchangeRules;
use super::{ModeElement, ModeGen};
use crate::coeff::LaurentPoly;
use crate::error::Error;
use crate::rmatrix::{CheckReport, Op, Witness};
use crate::tensor::{decode, encode};

/// A vector of mode elements indexed by a pair `(a, b)`, such as `θ^x θ^y`
/// with components `θ^x_a θ^y_b`. Operators act on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVector {
    n: usize,
    comps: Vec<ModeElement>,
}

impl PairVector {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            comps: vec![ModeElement::zero(); n * n],
        }
    }

    /// `θ^x θ^y`.
    pub fn product(n: usize, x: i64, y: i64) -> Self {
        let mut out = Self::zero(n);
        for a in 0..n {
            for b in 0..n {
                out.comps[encode(n, &[a, b])] =
                    ModeElement::word(vec![ModeGen::new(x, a), ModeGen::new(y, b)]);
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn component(&self, a: usize, b: usize) -> &ModeElement {
        &self.comps[encode(self.n, &[a, b])]
    }

    /// `(v X)_{col} = Σ_row v_row X[row][col]`.
    pub fn apply(&self, op: &Op) -> Self {
        let mut out = Self::zero(self.n);
        for (col, entries) in op.columns() {
            for (row, c) in entries {
                out.comps[col].add_scaled(&self.comps[row], &c);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self {
            n: self.n,
            comps: self.comps.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn normal_form(&self, orderer: &mut NormalOrderer) -> Result<Self, Error> {
        let comps = self
            .comps
            .iter()
            .map(|x| orderer.normal_form(x))
            .collect::<Result<_, _>>()?;
        Ok(Self { n: self.n, comps })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ModeElement::is_zero)
    }

    /// First nonzero component as `((a, b), value)`.
    pub fn first_nonzero(&self) -> Option<((usize, usize), &ModeElement)> {
        self.comps.iter().enumerate().find(|(_, x)| !x.is_zero()).map(|(k, x)| {
            let ab = decode(self.n, 2, k);
            ((ab[0], ab[1]), x)
        })
    }
}

/// `{θ^x, θ^y}_R = θ^x θ^y + q^{-1} θ^y θ^x PR`.
pub fn anticommutator(rules: &ExchangeRules, x: i64, y: i64) -> PairVector {
    let n = rules.n();
    let swapped = PairVector::product(n, y, x).apply(&rules.hecke().pr());
    PairVector::product(n, x, y).add(&swapped.scale(&LaurentPoly::q_pow(-1)))
}

/// `{θ^x_a, θ^y_b}_R = θ^x_a θ^y_b + q^{-1} Σ_{c,d} θ^y_d θ^x_c R^c_a^d_b`.
pub fn r_anticommutator(rules: &ExchangeRules, x: i64, a: usize, y: i64, b: usize) -> ModeElement {
    let n = rules.n();
    let r = &rules.hecke().r;
    let mut out = ModeElement::word(vec![ModeGen::new(x, a), ModeGen::new(y, b)]);
    let q_inv = LaurentPoly::q_pow(-1);
    for (row, v) in r.columns().remove(&encode(n, &[a, b])).unwrap_or_default() {
        let cd = decode(n, 2, row);
        out.add_term(vec![ModeGen::new(y, cd[1]), ModeGen::new(x, cd[0])], &q_inv * &v);
    }
    out
}

fn report(check: &str, n: usize, diff: &PairVector) -> CheckReport {
    CheckReport {
        check: check.to_string(),
        n,
        pass: diff.is_zero(),
        witness: diff.first_nonzero().map(|((a, b), x)| Witness {
            row: vec![a + 1, b + 1],
            col: Vec::new(),
            value: x.to_string(),
        }),
        degrees: BTreeMap::new(),
    }
}

/// `θ^j θ^i PR + q θ^i θ^j = θ^{j+1} θ^{i-1} (PR)^{-1} + q^{-1} θ^{i-1} θ^{j+1}`
/// after normal ordering.
pub fn check_moderel(orderer: &mut NormalOrderer, i: i64, j: i64) -> Result<CheckReport, Error> {
    let rules = orderer.rules().clone();
    let n = rules.n();
    let pr = rules.hecke().pr();
    let pr_inv = pr.invert()?;
    let lhs = PairVector::product(n, j, i)
        .apply(&pr)
        .add(&PairVector::product(n, i, j).scale(&LaurentPoly::q()));
    let rhs = PairVector::product(n, j + 1, i - 1)
        .apply(&pr_inv)
        .add(&PairVector::product(n, i - 1, j + 1).scale(&LaurentPoly::q_pow(-1)));
    let diff = lhs.sub(&rhs).normal_form(orderer)?;
    Ok(report("moderel", n, &diff))
}

/// `{θ^i, θ^j}_R = {θ^{i-1}, θ^{j+1}}_R (1 + λPR)
///   + (q^{-2} - 1) θ^{j+1} θ^{i-1} (1 + P𝐑)` after normal ordering.
pub fn check_modeind(orderer: &mut NormalOrderer, i: i64, j: i64) -> Result<CheckReport, Error> {
    let rules = orderer.rules().clone();
    let n = rules.n();
    let pr = rules.hecke().pr();
    let one = Op::identity(n, 2);
    let hecke_factor = one.add(&pr.scale(&LaurentPoly::q_minus_q_inv()))?;
    let one_plus_pbr = one.add(&pr.scale(&-LaurentPoly::q_pow(-1)))?;
    let lhs = anticommutator(&rules, i, j);
    let rhs = anticommutator(&rules, i - 1, j + 1).apply(&hecke_factor).add(
        &PairVector::product(n, j + 1, i - 1)
            .apply(&one_plus_pbr)
            .scale(&(&LaurentPoly::q_pow(-2) - &LaurentPoly::one())),
    );
    let diff = lhs.sub(&rhs).normal_form(orderer)?;
    Ok(report("modeind", n, &diff))
}

/// `(θ^i θ^j + θ^j θ^i)(PR + q^{-1}) = 0` after normal ordering.
pub fn check_modeanticom(
    orderer: &mut NormalOrderer,
    i: i64,
    j: i64,
) -> Result<CheckReport, Error> {
    let rules = orderer.rules().clone();
    let n = rules.n();
    let killer = rules
        .hecke()
        .pr()
        .add(&Op::scalar(n, 2, LaurentPoly::q_pow(-1)))?;
    let sum = PairVector::product(n, i, j).add(&PairVector::product(n, j, i));
    let diff = sum.apply(&killer).normal_form(orderer)?;
    Ok(report("modeanticom", n, &diff))
}
