use std::fmt;

use crate::algebra::GaussianRational;
use crate::error::Result;

/// Coefficient arithmetic shared by Q(i) and its one-level extensions.
///
/// Extension rings may fail to be fields (their modulus is square-free, not
/// necessarily irreducible). Branching on whether a value vanishes must go
/// through [`Scalar::decide_zero`], which reports a zero divisor instead of
/// answering inconsistently across components.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    /// Exact representation test.
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Zero test that is uniform over every component of the ring.
    fn decide_zero(&self) -> Result<bool>;
    fn from_gaussian(g: &GaussianRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_gaussian(&GaussianRational::from_int(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Divide a list of coefficients by a common nonzero scalar that keeps
    /// them small; used on remainder sequences, where only the result up to
    /// scale matters. The default leaves them alone.
    fn shrink(_coeffs: &mut [Self]) {}

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}
