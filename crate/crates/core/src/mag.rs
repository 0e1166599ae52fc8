//! Coarse nonnegative magnitudes: ball radii and rigorous error bounds.

use rug::float::{Round, Special};
use rug::Float;
use std::cmp::Ordering;
use std::fmt;

/// Bits carried by radii and bounds. Radii only need to be correct upper
/// bounds, not accurate ones, so a few words suffice; what matters is the
/// unbounded exponent range underneath.
pub const MAG_PREC: u32 = 30;

/// A nonnegative magnitude: the radius of a ball, or a one-sided bound.
///
/// Values are finite nonnegative numbers or `+inf`. Each operation states its
/// rounding direction in its name; the `_up` operations never round below the
/// exact result, so chains of them preserve "is an upper bound".
#[derive(Clone, Debug)]
pub struct Mag(Float);

impl Mag {
    pub fn zero() -> Self {
        Mag(Float::with_val(MAG_PREC, 0))
    }

    pub fn inf() -> Self {
        Mag(Float::with_val(MAG_PREC, Special::Infinity))
    }

    /// Exact power of two, `2^e`.
    pub fn two_pow(e: i32) -> Self {
        Mag(Float::with_val(MAG_PREC, 1) << e)
    }

    /// `|x|` rounded up.
    pub fn from_f64_up(x: f64) -> Self {
        let (f, _) = Float::with_val_round(MAG_PREC, x.abs(), Round::Up);
        Mag::sanitize(f)
    }

    /// `|x|` rounded up.
    pub fn from_float_up(x: &Float) -> Self {
        let (f, _) = Float::with_val_round(MAG_PREC, x.abs_ref(), Round::Up);
        Mag::sanitize(f)
    }

    /// `|x|` rounded down. The result is a valid *lower* bound; feed it only
    /// to operations documented to accept one (e.g. [`Mag::recip_up`]).
    pub fn from_float_down(x: &Float) -> Self {
        let (f, _) = Float::with_val_round(MAG_PREC, x.abs_ref(), Round::Down);
        Mag::sanitize(f)
    }

    /// Upper bound for a decimal string, e.g. `"1e-30"`.
    pub fn parse_up(s: &str) -> Option<Self> {
        let incomplete = Float::parse(s).ok()?;
        let (f, _) = Float::with_val_round(MAG_PREC, incomplete, Round::Up);
        if f.is_nan() || f < 0u32 {
            return None;
        }
        Some(Mag(f))
    }

    /// One unit in the last place of `x` at its own precision: `2^(exp-prec)`.
    /// This is what a faithful midpoint operation can lose to rounding.
    /// For a zero or non-finite `x` there is no meaningful ulp; returns
    /// `+inf` so soundness is never lost silently.
    pub fn ulp_of(x: &Float) -> Self {
        match x.get_exp() {
            Some(e) if x.is_finite() => Mag::two_pow(e - x.prec() as i32),
            _ => Mag::inf(),
        }
    }

    fn sanitize(f: Float) -> Self {
        if f.is_nan() {
            Mag::inf()
        } else {
            debug_assert!(f >= 0u32);
            Mag(f)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add_up(&self, other: &Mag) -> Mag {
        let (f, _) = Float::with_val_round(MAG_PREC, &self.0 + &other.0, Round::Up);
        Mag(f)
    }

    pub fn mul_up(&self, other: &Mag) -> Mag {
        // inf * 0 is indeterminate in MPFR (NaN); treat as inf here since an
        // infinite magnitude already means "no information".
        let (f, _) = Float::with_val_round(MAG_PREC, &self.0 * &other.0, Round::Up);
        Mag::sanitize(f)
    }

    pub fn mul_down(&self, other: &Mag) -> Mag {
        let (f, _) = Float::with_val_round(MAG_PREC, &self.0 * &other.0, Round::Down);
        Mag::sanitize(f)
    }

    /// Exact scaling by `2^e`.
    pub fn mul_2exp(&self, e: i32) -> Mag {
        Mag(self.0.clone() << e)
    }

    pub fn half(&self) -> Mag {
        self.mul_2exp(-1)
    }

    pub fn maximum(&self, other: &Mag) -> Mag {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn minimum(&self, other: &Mag) -> Mag {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `self^e` rounded up.
    pub fn pow_up(&self, e: u32) -> Mag {
        let mut acc = Mag(Float::with_val(MAG_PREC, 1));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_up(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_up(&base);
            }
        }
        acc
    }

    /// Upper bound of `1/m` given that `self` is a **lower** bound `m`.
    /// Returns `+inf` when `self` is zero.
    pub fn recip_up(&self) -> Mag {
        if self.is_zero() {
            return Mag::inf();
        }
        let (f, _) = Float::with_val_round(MAG_PREC, self.0.recip_ref(), Round::Up);
        Mag::sanitize(f)
    }

    /// Upper bound of `sqrt(self^2 + other^2)` (valid for upper-bound inputs).
    pub fn hypot_up(&self, other: &Mag) -> Mag {
        let (f, _) =
            Float::with_val_round(MAG_PREC, self.0.hypot_ref(&other.0), Round::Up);
        Mag::sanitize(f)
    }

    /// Lower bound of `sqrt(self^2 + other^2)` (valid for lower-bound inputs).
    pub fn hypot_down(&self, other: &Mag) -> Mag {
        let (f, _) =
            Float::with_val_round(MAG_PREC, self.0.hypot_ref(&other.0), Round::Down);
        Mag::sanitize(f)
    }

    /// Upper bound of the square root (valid when `self` is an upper bound).
    pub fn sqrt_up(&self) -> Mag {
        let (f, _) = Float::with_val_round(MAG_PREC, self.0.sqrt_ref(), Round::Up);
        Mag::sanitize(f)
    }

    /// Lower bound of the square root (valid when `self` is a lower bound).
    pub fn sqrt_down(&self) -> Mag {
        let (f, _) = Float::with_val_round(MAG_PREC, self.0.sqrt_ref(), Round::Down);
        Mag::sanitize(f)
    }

    pub(crate) fn as_float(&self) -> &Float {
        &self.0
    }

    pub(crate) fn from_raw(f: Float) -> Self {
        Mag::sanitize(f)
    }

    /// `f64` upper bound (`+inf` when out of range).
    pub fn to_f64_up(&self) -> f64 {
        self.0.to_f64_round(Round::Up)
    }
}

impl PartialEq for Mag {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Mag {}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        // No NaNs by construction.
        self.0.partial_cmp(&other.0).expect("Mag is never NaN")
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if !self.is_finite() {
            return write!(f, "inf");
        }
        // Three digits, rounded up so the printed radius still covers.
        write!(f, "{}", self.0.to_string_radix_round(10, Some(3), Round::Up))
    }
}
