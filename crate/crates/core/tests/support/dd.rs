#![allow(clippy::approx_constant)]

//! Double-double scalar (about 32 significant digits) implementing the crate's
//! [`Real`] trait, used as a high-precision oracle for the generic kernel.
//!
//! Arithmetic follows the classic error-free transformations; transcendental
//! functions take an `f64` seed and refine it with Newton steps or short series.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use complete_orthoscheme::Real;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn plain(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Self { hi: s, lo: e }
    }

    fn mul_f(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        if !p.is_finite() {
            return Self::plain(p);
        }
        Self::renorm(p, e + self.lo * b)
    }

    fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Self { hi: self.hi * s, lo: self.lo * s }
    }

    fn sq(self) -> Self {
        self * self
    }

    fn exp_taylor(r: Self) -> Self {
        let mut sum = Self::one();
        let mut term = Self::one();
        for n in 1..30 {
            term = term * r / Self::new(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 * sum.hi.abs() {
                break;
            }
        }
        sum
    }

    fn sin_cos_taylor(t: Self) -> (Self, Self) {
        let t2 = t.sq();
        let mut s = t;
        let mut c = Self::one();
        let mut st = t;
        let mut ct = Self::one();
        for k in 1..30 {
            let n = 2.0 * k as f64;
            st = -st * t2 / Self::new(n * (n + 1.0));
            ct = -ct * t2 / Self::new((n - 1.0) * n);
            s = s + st;
            c = c + ct;
            if st.hi.abs() < 1e-36 && ct.hi.abs() < 1e-36 {
                break;
            }
        }
        (s, c)
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hi)
    }
}

impl Neg for Dd {
    type Output = Self;
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Self::plain(s1);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Self::renorm(s1, s2 + t2)
    }
}

impl Sub for Dd {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        if !p.is_finite() {
            return Self::plain(p);
        }
        Self::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || b.hi == 0.0 {
            return Self::plain(q1);
        }
        let r = self - b.mul_f(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self { hi: q1, lo: q2 } + Self::new(q3)
    }
}

impl Rem for Dd {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - (self / b).trunc() * b
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Self::new(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Self::new(1.0)
    }
}

impl Num for Dd {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Self::new)
    }
}

impl ToPrimitive for Dd {
    fn to_i64(&self) -> Option<i64> {
        self.hi.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.hi.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl FromPrimitive for Dd {
    fn from_i64(n: i64) -> Option<Self> {
        let hi = n as f64;
        Some(Self::renorm(hi, (n - hi as i64) as f64))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        Some(Self::renorm(hi, (n as i128 - hi as i128) as f64))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Self::new(x))
    }
}

impl NumCast for Dd {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        n.to_f64().map(Self::new)
    }
}

macro_rules! consts {
    ($($name:ident = ($hi:expr, $lo:expr);)*) => {
        impl FloatConst for Dd {
            $(fn $name() -> Self { Self::from_parts($hi, $lo) })*
        }
    };
}

consts! {
    E = (2.718281828459045, 1.4456468917292502e-16);
    FRAC_1_PI = (0.3183098861837907, -1.9678676675182486e-17);
    FRAC_1_SQRT_2 = (0.7071067811865476, -4.833646656726457e-17);
    FRAC_2_PI = (0.6366197723675814, -3.935735335036497e-17);
    FRAC_2_SQRT_PI = (1.1283791670955126, 1.533545961316588e-17);
    FRAC_PI_2 = (1.5707963267948966, 6.123233995736766e-17);
    FRAC_PI_3 = (1.0471975511965979, -1.072081766451091e-16);
    FRAC_PI_4 = (0.7853981633974483, 3.061616997868383e-17);
    FRAC_PI_6 = (0.5235987755982989, -5.360408832255455e-17);
    FRAC_PI_8 = (0.39269908169872414, 1.5308084989341915e-17);
    LN_10 = (2.302585092994046, -2.1707562233822494e-16);
    LN_2 = (0.6931471805599453, 2.3190468138462996e-17);
    LOG10_E = (0.4342944819032518, 1.098319650216765e-17);
    LOG2_E = (1.4426950408889634, 2.0355273740931033e-17);
    PI = (3.141592653589793, 1.2246467991473532e-16);
    SQRT_2 = (1.4142135623730951, -9.667293313452913e-17);
}

impl Float for Dd {
    fn nan() -> Self {
        Self::plain(f64::NAN)
    }
    fn infinity() -> Self {
        Self::plain(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        Self::plain(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Self::plain(-0.0)
    }
    fn min_value() -> Self {
        Self::plain(f64::MIN)
    }
    fn min_positive_value() -> Self {
        Self::plain(f64::MIN_POSITIVE)
    }
    fn epsilon() -> Self {
        Self::plain(2f64.powi(-104))
    }
    fn max_value() -> Self {
        Self::plain(f64::MAX)
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }
    fn floor(self) -> Self {
        let f = self.hi.floor();
        if f == self.hi {
            Self::renorm(f, self.lo.floor())
        } else {
            Self::plain(f)
        }
    }
    fn ceil(self) -> Self {
        let c = self.hi.ceil();
        if c == self.hi {
            Self::renorm(c, self.lo.ceil())
        } else {
            Self::plain(c)
        }
    }
    fn round(self) -> Self {
        (self + Self::new(0.5)).floor()
    }
    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            self.ceil()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        Self::plain(self.hi.signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
    fn powf(self, n: Self) -> Self {
        if n.lo == 0.0 && n.hi.fract() == 0.0 && n.hi.abs() < 1024.0 {
            return self.powi(n.hi as i32);
        }
        (n * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::zero() } else { Self::nan() };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let y = Self::new(self.hi.sqrt());
        y + (self - y.sq()) / y.mul_f(2.0)
    }
    fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Self::infinity();
        }
        if self.hi < -745.0 {
            return Self::zero();
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = (self - Self::LN_2().mul_f(k)).ldexp(-4);
        let mut e = Self::exp_taylor(r);
        for _ in 0..4 {
            e = e.sq();
        }
        e.ldexp(k as i32)
    }
    fn exp2(self) -> Self {
        (self * Self::LN_2()).exp()
    }
    fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::neg_infinity() } else { Self::nan() };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let mut y = Self::new(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::one();
        }
        y
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() / Self::LN_2()
    }
    fn log10(self) -> Self {
        self.ln() / Self::LN_10()
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        (self - other).max(Self::zero())
    }
    fn cbrt(self) -> Self {
        if self.hi == 0.0 || !self.hi.is_finite() {
            return self;
        }
        let y = Self::new(self.hi.cbrt());
        y - (y.sq() * y - self) / (y.sq().mul_f(3.0))
    }
    fn hypot(self, other: Self) -> Self {
        (self.sq() + other.sq()).sqrt()
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }
    fn asin(self) -> Self {
        self.atan2(((Self::one() - self) * (Self::one() + self)).sqrt())
    }
    fn acos(self) -> Self {
        ((Self::one() - self) * (Self::one() + self)).sqrt().atan2(self)
    }
    fn atan(self) -> Self {
        self.atan2(Self::one())
    }
    fn atan2(self, x: Self) -> Self {
        let y = self;
        if y.is_nan() || x.is_nan() {
            return Self::nan();
        }
        if y.hi == 0.0 && x.hi == 0.0 {
            return Self::plain(y.hi.atan2(x.hi));
        }
        let mut z = Self::new(y.hi.atan2(x.hi));
        for _ in 0..2 {
            let (s, c) = z.sin_cos();
            z = z + (y * c - x * s) / (x * c + y * s);
        }
        z
    }
    fn sin_cos(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            return (Self::nan(), Self::nan());
        }
        let k = (self.hi / std::f64::consts::FRAC_PI_2).round();
        let t = self - Self::FRAC_PI_2().mul_f(k);
        let (s, c) = Self::sin_cos_taylor(t);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
    fn exp_m1(self) -> Self {
        if self.hi.abs() < 0.5 {
            let mut sum = self;
            let mut term = self;
            for n in 2..60 {
                term = term * self / Self::new(n as f64);
                sum = sum + term;
                if term.hi.abs() < 1e-36 * sum.hi.abs() {
                    break;
                }
            }
            sum
        } else {
            self.exp() - Self::one()
        }
    }
    fn ln_1p(self) -> Self {
        if self.hi <= -1.0 {
            return if self.hi == -1.0 && self.lo == 0.0 { Self::neg_infinity() } else { Self::nan() };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let mut y = Self::new(self.hi.ln_1p());
        for _ in 0..2 {
            let em = y.exp_m1();
            y = y - (em - self) / (em + Self::one());
        }
        y
    }
    fn sinh(self) -> Self {
        let em = self.exp_m1();
        (em + em / (em + Self::one())).mul_f(0.5)
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).mul_f(0.5)
    }
    fn tanh(self) -> Self {
        self.sinh() / self.cosh()
    }
    fn asinh(self) -> Self {
        let s = self.abs();
        let r = (s + s.sq() / (Self::one() + (Self::one() + s.sq()).sqrt())).ln_1p();
        if self.hi < 0.0 {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        let t = self - Self::one();
        (t + (t * (self + Self::one())).sqrt()).ln_1p()
    }
    fn atanh(self) -> Self {
        (self.mul_f(2.0) / (Self::one() - self)).ln_1p().mul_f(0.5)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi.integer_decode()
    }
}

impl Real for Dd {
    fn class_eps() -> Self {
        Self::new(1e-10)
    }
    fn clamp_eps() -> Self {
        Self::new(1e-12)
    }
}

/// Largest relative error of the double-double functions against identities that
/// hold exactly, over a small set of arguments.
pub fn self_check() -> f64 {
    let mut worst = 0.0f64;
    let mut note = |a: Dd, b: Dd| {
        let e = ((a - b) / b).abs().hi;
        worst = worst.max(e);
    };
    let third = Dd::one() / Dd::new(3.0);
    note(third.mul_f(3.0), Dd::one());
    for x in [1e-9, 1e-3, 0.1, 0.3, 0.5, 0.77, 0.999, 1.3, 7.0, 40.0] {
        let d = Dd::new(x) + Dd::new(x * 3e-17);
        note(d.ln().exp(), d);
        note(d.sqrt().sq(), d);
        note(d.atan2(Dd::one()).tan(), d);
        note(d.asinh().sinh(), d);
        note(d.ln_1p().exp_m1(), d);
        // cos ∘ acos near π/2 turns an absolute error of 1e-32 into a relative one
        if x > 1e-3 && x < 1.0 {
            note(d.acos().cos(), d);
            note(d.atanh().tanh(), d);
        }
        if x > 1.0 {
            note(d.acosh().cosh(), d);
        }
        let (s, c) = d.sin_cos();
        note(s.sq() + c.sq(), Dd::one());
    }
    note(Dd::PI().mul_f(0.25).tan(), Dd::one());
    worst
}
