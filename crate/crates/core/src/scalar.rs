//! Scalar abstraction shared by every module.
//!
//! All numerics are generic over a real floating-point type `T` (`f32` or
//! `f64`); complex quantities are `Complex<T>`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Conversion from a count or index.
    fn from_len(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    /// Absolute tolerance used where a fixed double-precision tolerance is
    /// specified: `max(tol, 64 * machine epsilon)`.
    fn tol(tol: f64) -> Self {
        Self::lit(tol).max(Self::epsilon() * Self::lit(64.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Matrix entry type: either a real scalar or a complex number over one.
///
/// Lets the dense kernels in [`crate::linalg`] run in real arithmetic when a
/// matrix happens to have no imaginary part.
pub trait Entry:
    Copy + NumAssign + std::ops::Neg<Output = Self> + Send + Sync + Debug + 'static
{
    type Real: Scalar;

    fn conjugate(self) -> Self;
    fn modulus(self) -> Self::Real;
    fn modulus_sq(self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;
    fn scale(self, r: Self::Real) -> Self;
}

impl<T: Scalar> Entry for T {
    type Real = T;

    #[inline]
    fn conjugate(self) -> Self {
        self
    }
    #[inline]
    fn modulus(self) -> T {
        Float::abs(self)
    }
    #[inline]
    fn modulus_sq(self) -> T {
        self * self
    }
    #[inline]
    fn from_real(r: T) -> Self {
        r
    }
    #[inline]
    fn scale(self, r: T) -> Self {
        self * r
    }
}

impl<T: Scalar> Entry for Complex<T> {
    type Real = T;

    #[inline]
    fn conjugate(self) -> Self {
        self.conj()
    }
    #[inline]
    fn modulus(self) -> T {
        self.norm()
    }
    #[inline]
    fn modulus_sq(self) -> T {
        self.norm_sqr()
    }
    #[inline]
    fn from_real(r: T) -> Self {
        Complex::new(r, T::zero())
    }
    #[inline]
    fn scale(self, r: T) -> Self {
        Complex::new(self.re * r, self.im * r)
    }
}
