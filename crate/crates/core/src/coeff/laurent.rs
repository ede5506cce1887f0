use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{LaurentPoly, PolyQZW, QzwExp};
use crate::error::Error;

impl LaurentPoly {
    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// `q - q^{-1}`, the off-diagonal Hecke entry.
    pub fn q_minus_q_inv() -> Self {
        &Self::q() - &Self::q_pow(-1)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms().next().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms().last().map(|(e, _)| *e)
    }

    /// Geometric sum `1 + q^step + ... + q^{step (m-1)}`, i.e. the braided
    /// integer `(1 - q^{step m}) / (1 - q^step)` in cleared form.
    pub fn braided_int(m: i64, step: i64) -> Result<Self, Error> {
        if m < 0 {
            return Err(Error::NegativeBraidedInteger(m));
        }
        Ok(Self::from_terms((0..m).map(|s| (step * s, BigInt::one()))))
    }

    /// Value at an exact rational point.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let p = if *e >= 0 {
                pow_rational(q, *e as u64)
            } else {
                pow_rational(q, e.unsigned_abs()).recip()
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms().map(|(_, c)| c.clone()).sum()
    }

    /// Exact quotient in `Z[q, q^{-1}]`, or `None` when `rhs` does not divide.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let a_min = self.min_exp()?;
        let b_min = rhs.min_exp()?;
        // Shift both to genuine polynomials with nonzero constant term; then
        // divisibility in the Laurent ring coincides with divisibility in Z[q].
        let mut num = dense(self, a_min);
        let den = dense(rhs, b_min);
        let lead = den.last()?.clone();
        if num.len() < den.len() {
            return None;
        }
        let mut quot = vec![BigInt::zero(); num.len() - den.len() + 1];
        while num.len() >= den.len() {
            let top = num.last().cloned().unwrap_or_default();
            if !top.is_zero() {
                if !(&top % &lead).is_zero() {
                    return None;
                }
                let c = &top / &lead;
                let shift = num.len() - den.len();
                for (k, d) in den.iter().enumerate() {
                    num[shift + k] -= &c * d;
                }
                quot[shift] = c;
            }
            num.pop();
        }
        if num.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let offset = a_min - b_min;
        Some(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(k, c)| (k as i64 + offset, c)),
        ))
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        self.map_monomials(|e| -e)
    }

    /// Embeds into `Z[q^{±1}, z, w]` with `z`, `w` degree zero.
    pub fn to_qzw(&self) -> PolyQZW {
        self.map_monomials(|e| QzwExp::new(*e, 0, 0))
    }
}

fn dense(p: &LaurentPoly, min: i64) -> Vec<BigInt> {
    let max = p.max_exp().unwrap_or(min);
    let mut v = vec![BigInt::zero(); (max - min + 1) as usize];
    for (e, c) in p.terms() {
        v[(e - min) as usize] = c.clone();
    }
    v
}

fn pow_rational(x: &BigRational, e: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl PolyQZW {
    pub fn z() -> Self {
        Self::monomial(1, QzwExp::new(0, 1, 0))
    }

    pub fn w() -> Self {
        Self::monomial(1, QzwExp::new(0, 0, 1))
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, QzwExp::new(e, 0, 0))
    }

    /// Collapses every `q` exponent to zero (the specialisation `q = 1`).
    pub fn at_q_one(&self) -> Self {
        self.map_monomials(|m| QzwExp::new(0, m.z, m.w))
    }

    /// Largest `(q, z, w)` degrees and smallest `q` degree, for reports.
    pub fn degree_bounds(&self) -> (i64, i64, u32, u32) {
        let mut qmin = 0;
        let mut qmax = 0;
        let mut zmax = 0;
        let mut wmax = 0;
        for (i, (m, _)) in self.terms().enumerate() {
            if i == 0 {
                qmin = m.q;
                qmax = m.q;
            }
            qmin = qmin.min(m.q);
            qmax = qmax.max(m.q);
            zmax = zmax.max(m.z);
            wmax = wmax.max(m.w);
        }
        (qmin, qmax, zmax, wmax)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest power first: "2 + 2q^-4", "q - q^-1".
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for PolyQZW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if m.q != 0 {
                write!(f, "q^{}", m.q)?;
            }
            if m.z != 0 {
                write!(f, "z^{}", m.z)?;
            }
            if m.w != 0 {
                write!(f, "w^{}", m.w)?;
            }
        }
        Ok(())
    }
}
