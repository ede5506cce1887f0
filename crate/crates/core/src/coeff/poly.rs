//! Sparse polynomials with arbitrary-precision integer coefficients over a
//! pluggable monomial type.
//!
//! The two instantiations used by the engine are [`LaurentPoly`] (monomials
//! `q^e`, `e` any integer) and [`PolyQZW`] (monomials `q^e z^a w^b`, with
//! `a, b >= 0`). Zero coefficients are never stored, so structural equality
//! is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A commutative monoid of exponent vectors.
pub trait Monomial: Clone + Ord + Hash + fmt::Debug {
    fn unit() -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exponent tuple as used for JSON keys, e.g. `"-2"` or `"-2,1,0"`.
    fn key(&self) -> String;
    fn parse_key(s: &str) -> Option<Self>;
}

impl Monomial for i64 {
    fn unit() -> Self {
        0
    }

    fn mul(&self, other: &Self) -> Self {
        self + other
    }

    fn key(&self) -> String {
        self.to_string()
    }

    fn parse_key(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

/// Exponents of `q^q z^z w^w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QzwExp {
    pub q: i64,
    pub z: u32,
    pub w: u32,
}

impl QzwExp {
    pub const fn new(q: i64, z: u32, w: u32) -> Self {
        Self { q, z, w }
    }
}

impl Monomial for QzwExp {
    fn unit() -> Self {
        Self::default()
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            q: self.q + other.q,
            z: self.z + other.z,
            w: self.w + other.w,
        }
    }

    fn key(&self) -> String {
        format!("{},{},{}", self.q, self.z, self.w)
    }

    fn parse_key(s: &str) -> Option<Self> {
        let mut parts = s.split(',');
        let q = parts.next()?.trim().parse().ok()?;
        let z = parts.next()?.trim().parse().ok()?;
        let w = parts.next()?.trim().parse().ok()?;
        if parts.next().is_some() {
            return None;
        }
        Some(Self { q, z, w })
    }
}

/// Sparse polynomial `sum c_m * m` with `c_m` nonzero integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<M: Monomial> {
    terms: BTreeMap<M, BigInt>,
}

/// Univariate Laurent polynomial in `q` over the integers.
pub type LaurentPoly = Poly<i64>;

/// Polynomial in `q^{±1}`, `z`, `w` over the integers.
pub type PolyQZW = Poly<QzwExp>;

impl<M: Monomial> Default for Poly<M> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Monomial> Poly<M> {
    pub fn monomial(coeff: impl Into<BigInt>, exp: M) -> Self {
        let c = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, M::unit())
    }

    pub fn from_terms<I: IntoIterator<Item = (M, BigInt)>>(it: I) -> Self {
        let mut p = Self::default();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: M, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&M, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &M) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// `self += a * b` without materialising the product separately.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Maps every monomial through `f`, merging collisions.
    pub fn map_monomials<N: Monomial>(&self, f: impl Fn(&M) -> N) -> Poly<N> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }
}

impl<M: Monomial> Zero for Poly<M> {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<M: Monomial> One for Poly<M> {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl<'a, M: Monomial> AddAssign<&'a Poly<M>> for Poly<M> {
    fn add_assign(&mut self, rhs: &'a Poly<M>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a, M: Monomial> SubAssign<&'a Poly<M>> for Poly<M> {
    fn sub_assign(&mut self, rhs: &'a Poly<M>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<M: Monomial> AddAssign for Poly<M> {
    fn add_assign(&mut self, rhs: Poly<M>) {
        *self += &rhs;
    }
}

impl<M: Monomial> SubAssign for Poly<M> {
    fn sub_assign(&mut self, rhs: Poly<M>) {
        *self -= &rhs;
    }
}

impl<'b, M: Monomial> Add<&'b Poly<M>> for &Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: &'b Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'b, M: Monomial> Sub<&'b Poly<M>> for &Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: &'b Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'b, M: Monomial> Mul<&'b Poly<M>> for &Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: &'b Poly<M>) -> Poly<M> {
        self.mul_ref(rhs)
    }
}

impl<M: Monomial> Add for Poly<M> {
    type Output = Poly<M>;
    fn add(mut self, rhs: Poly<M>) -> Poly<M> {
        self += &rhs;
        self
    }
}

impl<M: Monomial> Sub for Poly<M> {
    type Output = Poly<M>;
    fn sub(mut self, rhs: Poly<M>) -> Poly<M> {
        self -= &rhs;
        self
    }
}

impl<M: Monomial> Mul for Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: Poly<M>) -> Poly<M> {
        self.mul_ref(&rhs)
    }
}

impl<M: Monomial> Neg for Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<M: Monomial> Neg for &Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        -(self.clone())
    }
}

impl<M: Monomial> fmt::Debug for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (m.key(), c.to_string())))
            .finish()
    }
}
