//! Minimal ring abstraction shared by exact and floating-point operators.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, One, Zero};
use std::fmt::Debug;

/// Commutative ring with an involution, enough to multiply and compare matrices.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn conj(&self) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }
}

macro_rules! int_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn add_ref(&self, o: &Self) -> Self { self + o }
            fn mul_ref(&self, o: &Self) -> Self { self * o }
            fn neg_ref(&self) -> Self { -self }
            fn conj(&self) -> Self { *self }
            fn add_assign_ref(&mut self, o: &Self) { *self += o }
        }
    )*};
}
int_ring!(i64, i128);

impl Ring for BigInt {
    fn add_ref(&self, o: &Self) -> Self { self + o }
    fn mul_ref(&self, o: &Self) -> Self { self * o }
    fn neg_ref(&self) -> Self { -self }
    fn conj(&self) -> Self { self.clone() }
    fn add_assign_ref(&mut self, o: &Self) { *self += o }
}

impl Ring for BigRational {
    fn add_ref(&self, o: &Self) -> Self { self + o }
    fn mul_ref(&self, o: &Self) -> Self { self * o }
    fn neg_ref(&self) -> Self { -self }
    fn conj(&self) -> Self { self.clone() }
    fn add_assign_ref(&mut self, o: &Self) { *self += o }
}

impl<F: Float + Debug + Send + Sync> Ring for Complex<F> {
    fn add_ref(&self, o: &Self) -> Self { *self + *o }
    fn mul_ref(&self, o: &Self) -> Self { *self * *o }
    fn neg_ref(&self) -> Self { -*self }
    fn conj(&self) -> Self { Complex::conj(self) }
}
