//! Exact coefficient rings.

mod json;
mod laurent;
mod poly;

pub use json::{poly_from_json, poly_to_json};
pub use poly::{LaurentPoly, Monomial, Poly, PolyQZW, QzwExp};

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficient ring for [`crate::tensor::TensorOp`].
pub trait Scalar: Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        let acc = std::mem::replace(self, Self::zero());
        *self = acc + a.mul_ref(b);
    }
}

impl<M: Monomial> Scalar for Poly<M> {
    fn mul_ref(&self, rhs: &Self) -> Self {
        Poly::mul_ref(self, rhs)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        Poly::add_mul(self, a, b)
    }
}

impl Scalar for BigRational {}
