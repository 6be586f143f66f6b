//! Double-double arithmetic: a value is the unevaluated sum `hi + lo` of two
//! doubles with `|lo| <= ulp(hi) / 2`, giving about 31 significant digits.
//!
//! Used where plain doubles lose too much to cancellation: the triangular
//! recurrence for `J_j^alpha(x)` near `x = 1` and the Mittag-Leffler power
//! series.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExtendedReal {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
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

const LN2: ExtendedReal = ExtendedReal {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

const HALF_LN_TWO_PI: ExtendedReal = ExtendedReal {
    hi: 0.9189385332046728,
    lo: -3.8782941580672414e-17,
};

impl ExtendedReal {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    /// Builds a normalized value from two doubles.
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Nearest double.
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqr(self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, self.hi);
        p2 += 2.0 * self.hi * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }

    /// Multiplies by `2^k` exactly (barring overflow/underflow).
    pub fn ldexp(self, k: i32) -> Self {
        let scale = 2.0_f64.powi(k);
        Self {
            hi: self.hi * scale,
            lo: self.lo * scale,
        }
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    /// Square root of a non-negative value (one Newton step from the f64 root).
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(self.hi.sqrt());
        }
        let root = Self::from_f64(self.hi.sqrt());
        root + (self - root.sqr()) / (root * 2.0)
    }

    /// `self^n` by binary powering.
    pub fn powi(self, n: i32) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self;
        let mut acc = Self::ONE;
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.7 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Self::ONE;
        }

        // x = k ln 2 + r with |r| <= ln2 / 2, then r / 2^9 through Taylor.
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * k).ldexp(-9);

        // expm1(r) by Taylor; |r| < 7e-4 so 12 terms reach ~1e-40.
        let mut term = r;
        let mut sum = r;
        for n in 2..=12 {
            term = term * r / (n as f64);
            sum += term;
            if term.hi.abs() < 1e-36 * sum.hi.abs() {
                break;
            }
        }
        // expm1(2x) = 2 expm1(x) + expm1(x)^2
        for _ in 0..9 {
            sum = sum * 2.0 + sum.sqr();
        }
        (sum + 1.0).ldexp(k as i32)
    }

    /// Natural logarithm; NaN for non-positive arguments.
    pub fn ln(self) -> Self {
        if !(self.hi > 0.0) {
            return Self::from_f64(f64::NAN);
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return Self::ZERO;
        }
        // Newton on exp(y) = x, quadratically convergent from a double seed.
        let mut y = Self::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - 1.0;
        }
        y
    }

    /// `self^e` for `self > 0` (and `0^e = 0` for `e > 0`).
    pub fn powf(self, e: Self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return if e.hi > 0.0 { Self::ZERO } else { Self::from_f64(f64::NAN) };
        }
        (e * self.ln()).exp()
    }

    /// Natural log of the gamma function for arguments `x >= 1`.
    ///
    /// Shifts the argument past 40 by the functional equation and applies the
    /// Stirling series there.
    pub fn ln_gamma(self) -> Self {
        assert!(self.hi >= 1.0, "ln_gamma is only provided for x >= 1");
        let mut x = self;
        let mut prod = Self::ONE;
        while x.hi < 40.0 {
            prod *= x;
            x += 1.0;
        }

        // B_{2k} / (2k (2k - 1)) for k = 1..12 as exact rationals.
        const STIRLING: [(f64, f64); 12] = [
            (1.0, 12.0),
            (-1.0, 360.0),
            (1.0, 1260.0),
            (-1.0, 1680.0),
            (1.0, 1188.0),
            (-691.0, 360360.0),
            (1.0, 156.0),
            (-3617.0, 122400.0),
            (43867.0, 244188.0),
            (-174611.0, 125400.0),
            (77683.0, 5796.0),
            (-236364091.0, 1506960.0),
        ];
        let inv = x.recip();
        let inv2 = inv.sqr();
        let mut pow = inv;
        let mut series = Self::ZERO;
        for &(num, den) in &STIRLING {
            series += pow * (Self::from_f64(num) / den);
            pow *= inv2;
        }
        let main = (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + series;
        main - prod.ln()
    }

    /// Gamma function for `x >= 1`.
    pub fn gamma(self) -> Self {
        self.ln_gamma().exp()
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi, self.lo)
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for ExtendedReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for ExtendedReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Add<f64> for ExtendedReal {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Self { hi, lo }
    }
}

impl Sub for ExtendedReal {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Sub<f64> for ExtendedReal {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: f64) -> Self {
        self + (-rhs)
    }
}

impl Mul for ExtendedReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, rhs.hi);
        p2 += self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }
}

impl Mul<f64> for ExtendedReal {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        let (p1, mut p2) = two_prod(self.hi, rhs);
        p2 += self.lo * rhs;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }
}

impl Div for ExtendedReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + q3
    }
}

impl Div<f64> for ExtendedReal {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        self / Self::from_f64(rhs)
    }
}

impl AddAssign for ExtendedReal {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl AddAssign<f64> for ExtendedReal {
    fn add_assign(&mut self, rhs: f64) {
        *self = *self + rhs;
    }
}

impl SubAssign for ExtendedReal {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for ExtendedReal {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl MulAssign<f64> for ExtendedReal {
    fn mul_assign(&mut self, rhs: f64) {
        *self = *self * rhs;
    }
}
