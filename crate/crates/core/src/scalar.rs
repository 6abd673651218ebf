//! Scalar abstraction shared by the geometric kernel.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the geometry is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Tolerance for deciding that a point sits on the ideal boundary (`|‖p‖² − 1|`).
    fn class_eps() -> Self;

    /// Slack allowed when clamping `arccos`/`arccosh` arguments that drift past
    /// their domain by roundoff.
    fn clamp_eps() -> Self;

    /// Converts an `f64` literal. Every `f64` is representable (possibly rounded)
    /// in the supported scalars, so this never fails.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    #[inline]
    fn class_eps() -> Self {
        1e-10
    }
    #[inline]
    fn clamp_eps() -> Self {
        1e-12
    }
}

impl Real for f32 {
    #[inline]
    fn class_eps() -> Self {
        1e-5
    }
    #[inline]
    fn clamp_eps() -> Self {
        1e-5
    }
}

/// `arccosh(x)` for `x ≥ 1`, written through `log1p` so arguments close to 1
/// keep their relative precision.
pub(crate) fn acosh_stable<T: Real>(x: T) -> T {
    let t = x - T::one();
    (t + (t * (t + T::lit(2.0))).sqrt()).ln_1p()
}

/// `arcsinh(x)` without cancellation for small or negative `x`.
pub(crate) fn asinh_stable<T: Real>(x: T) -> T {
    let a = x.abs();
    let y = if a > T::lit(1e8) {
        a.ln() + T::LN_2()
    } else {
        (a + a * a / (T::one() + (T::one() + a * a).sqrt())).ln_1p()
    };
    if x.is_sign_negative() {
        -y
    } else {
        y
    }
}
