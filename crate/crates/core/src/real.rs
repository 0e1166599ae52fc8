//! Real balls: arbitrary-precision midpoint, coarse upward-rounded radius.

use crate::mag::{Mag, MAG_PREC};
use crate::prec::Precision;
use rug::float::{Constant, Round, Special};
use rug::Float;
use std::cmp::Ordering;

/// A real number known to lie in `[mid - rad, mid + rad]`.
///
/// Every operation returns a ball containing the exact image of its input
/// sets (inclusion isotonicity). Midpoints are rounded to the precision the
/// operation was asked for; whatever that rounding loses is added to the
/// radius, so tightness is a quality-of-implementation matter while
/// containment never is.
///
/// A ball can be *indeterminate* (NaN midpoint, infinite radius): it
/// represents "any real number" and absorbs domain errors (division by a
/// ball containing zero, log of a ball reaching 0, ...). Indeterminate
/// inputs propagate to indeterminate outputs.
#[derive(Clone, Debug)]
pub struct RealBall {
    mid: Float,
    rad: Mag,
}

impl RealBall {
    pub fn indeterminate() -> Self {
        RealBall {
            mid: Float::with_val(MAG_PREC, Special::Nan),
            rad: Mag::inf(),
        }
    }

    /// Exact zero, `[0 +/- 0]`.
    pub fn zero() -> Self {
        RealBall {
            mid: Float::with_val(MAG_PREC, 0),
            rad: Mag::zero(),
        }
    }

    /// Exact integer (any `i64` fits in 64 bits of midpoint).
    pub fn from_i64(v: i64) -> Self {
        RealBall {
            mid: Float::with_val(64, v),
            rad: Mag::zero(),
        }
    }

    /// Exact `f64` value (every finite double is representable).
    pub fn from_f64(v: f64) -> Self {
        if !v.is_finite() {
            return RealBall::indeterminate();
        }
        RealBall {
            mid: Float::with_val(53, v),
            rad: Mag::zero(),
        }
    }

    /// Exact power of two.
    pub fn two_pow(e: i32) -> Self {
        RealBall {
            mid: Float::with_val(16, 1) << e,
            rad: Mag::zero(),
        }
    }

    /// Exact midpoint taken as-is; non-finite input gives an indeterminate ball.
    pub fn from_float(mid: Float) -> Self {
        if !mid.is_finite() {
            return RealBall::indeterminate();
        }
        RealBall {
            mid,
            rad: Mag::zero(),
        }
    }

    pub fn from_midrad(mid: Float, rad: Mag) -> Self {
        if !mid.is_finite() || !rad.is_finite() {
            return RealBall::indeterminate();
        }
        RealBall { mid, rad }
    }

    /// Ball covering `[lo, hi]`.
    pub fn from_endpoints(lo: &Float, hi: &Float, prec: Precision) -> Self {
        if !lo.is_finite() || !hi.is_finite() {
            return RealBall::indeterminate();
        }
        debug_assert!(lo <= hi);
        let (mid, _) = Float::with_val_round(prec.bits(), lo + hi, Round::Nearest);
        let mid = mid >> 1;
        let (up, _) = Float::with_val_round(MAG_PREC, hi - &mid, Round::Up);
        let (dn, _) = Float::with_val_round(MAG_PREC, &mid - lo, Round::Up);
        let rad = Mag::from_float_up(&up).maximum(&Mag::from_float_up(&dn));
        RealBall::from_midrad(mid, rad)
    }

    /// Enclosure of pi at the given precision.
    pub fn pi(prec: Precision) -> Self {
        let (mid, _) = Float::with_val_round(prec.bits(), Constant::Pi, Round::Nearest);
        let rad = Mag::ulp_of(&mid).half();
        RealBall { mid, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Mag {
        &self.rad
    }

    /// Midpoint as `f64` (spec'd convenience; lossy for large precision).
    pub fn midpoint(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    pub fn is_indeterminate(&self) -> bool {
        !self.is_finite()
    }

    /// Exactly zero with zero radius.
    pub fn is_exact_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.is_finite() && self.rad.is_zero()
    }

    /// Whether the ball contains zero. Exact (MPFR comparisons do not round).
    pub fn contains_zero(&self) -> bool {
        if self.is_indeterminate() {
            return true;
        }
        match self.mid.cmp_abs(self.rad.as_float()) {
            Some(Ordering::Greater) => false,
            _ => true,
        }
    }

    /// `mid - rad` rounded down (`-inf` for an indeterminate ball).
    pub fn lower_bound(&self) -> Float {
        if self.is_indeterminate() {
            return Float::with_val(MAG_PREC, Special::NegInfinity);
        }
        let p = self.mid.prec().max(MAG_PREC);
        let (lo, _) = Float::with_val_round(p, &self.mid - self.rad.as_float(), Round::Down);
        lo
    }

    /// `mid + rad` rounded up (`+inf` for an indeterminate ball).
    pub fn upper_bound(&self) -> Float {
        if self.is_indeterminate() {
            return Float::with_val(MAG_PREC, Special::Infinity);
        }
        let p = self.mid.prec().max(MAG_PREC);
        let (hi, _) = Float::with_val_round(p, &self.mid + self.rad.as_float(), Round::Up);
        hi
    }

    /// Upper bound of `|x|` over the ball.
    pub fn mag_upper(&self) -> Mag {
        if self.is_indeterminate() {
            return Mag::inf();
        }
        Mag::from_float_up(&self.mid).add_up(&self.rad)
    }

    /// Lower bound of `|x|` over the ball (zero when the ball straddles 0).
    pub fn mag_lower(&self) -> Mag {
        if self.is_indeterminate() || self.contains_zero() {
            return Mag::zero();
        }
        let a = self.mid.clone().abs();
        let (t, _) = Float::with_val_round(MAG_PREC, &a - self.rad.as_float(), Round::Down);
        if t < 0u32 {
            Mag::zero()
        } else {
            Mag::from_raw(t)
        }
    }

    /// Whether the ball certainly contains the exact point `x`.
    /// May answer `false` within a sliver of rounding slack at the boundary.
    pub fn contains_point(&self, x: &Float) -> bool {
        if self.is_indeterminate() {
            return true;
        }
        if !x.is_finite() {
            return false;
        }
        let p = self.mid.prec().max(x.prec()) + 64;
        let (d, _) = Float::with_val_round(p, &self.mid - x, Round::Up);
        let (d2, _) = Float::with_val_round(p, x - &self.mid, Round::Up);
        d <= *self.rad.as_float() && d2 <= *self.rad.as_float()
    }

    /// Whether the balls certainly intersect (no false positives).
    pub fn overlaps(&self, other: &RealBall) -> bool {
        if self.is_indeterminate() || other.is_indeterminate() {
            return true;
        }
        let p = self.mid.prec().max(other.mid.prec()) + 64;
        let (d, _) = Float::with_val_round(p, &self.mid - &other.mid, Round::Up);
        let d = d.abs();
        let (s, _) = Float::with_val_round(
            MAG_PREC,
            self.rad.as_float() + other.rad.as_float(),
            Round::Down,
        );
        d <= s
    }

    /// Whether `other` certainly lies inside `self`.
    pub fn contains_ball(&self, other: &RealBall) -> bool {
        if self.is_indeterminate() {
            return true;
        }
        if other.is_indeterminate() {
            return false;
        }
        let p = self.mid.prec().max(other.mid.prec()) + 64;
        let (d, _) = Float::with_val_round(p, &self.mid - &other.mid, Round::Up);
        let d = Mag::from_float_up(&d);
        d.add_up(&other.rad) <= self.rad
    }

    /// Smallest ball (up to rounding) containing both inputs.
    pub fn hull(&self, other: &RealBall, prec: Precision) -> RealBall {
        if self.is_indeterminate() || other.is_indeterminate() {
            return RealBall::indeterminate();
        }
        let (mid, _) = Float::with_val_round(prec.bits(), &self.mid + &other.mid, Round::Nearest);
        let mid = mid >> 1;
        let r1 = dist_up(&mid, &self.mid).add_up(&self.rad);
        let r2 = dist_up(&mid, &other.mid).add_up(&other.rad);
        RealBall::from_midrad(mid, r1.maximum(&r2))
    }

    /// Round the midpoint to `prec` bits, absorbing the rounding error
    /// into the radius.
    pub fn round_to(&self, prec: Precision) -> RealBall {
        if self.is_indeterminate() {
            return RealBall::indeterminate();
        }
        let (mid, ord) = Float::with_val_round(prec.bits(), &self.mid, Round::Nearest);
        let mut rad = self.rad.clone();
        if ord != Ordering::Equal {
            rad = rad.add_up(&Mag::ulp_of(&mid));
        }
        RealBall::from_midrad(mid, rad)
    }

    pub fn neg(&self) -> RealBall {
        RealBall {
            mid: -self.mid.clone(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &RealBall, prec: Precision) -> RealBall {
        if self.is_indeterminate() || other.is_indeterminate() {
            return RealBall::indeterminate();
        }
        let (mid, ord) =
            Float::with_val_round(prec.bits(), &self.mid + &other.mid, Round::Nearest);
        let mut rad = self.rad.add_up(&other.rad);
        if ord != Ordering::Equal {
            rad = rad.add_up(&Mag::ulp_of(&mid));
        }
        RealBall::from_midrad(mid, rad)
    }

    pub fn sub(&self, other: &RealBall, prec: Precision) -> RealBall {
        if self.is_indeterminate() || other.is_indeterminate() {
            return RealBall::indeterminate();
        }
        let (mid, ord) =
            Float::with_val_round(prec.bits(), &self.mid - &other.mid, Round::Nearest);
        let mut rad = self.rad.add_up(&other.rad);
        if ord != Ordering::Equal {
            rad = rad.add_up(&Mag::ulp_of(&mid));
        }
        RealBall::from_midrad(mid, rad)
    }

    pub fn mul(&self, other: &RealBall, prec: Precision) -> RealBall {
        if self.is_indeterminate() || other.is_indeterminate() {
            return RealBall::indeterminate();
        }
        let (mid, ord) =
            Float::with_val_round(prec.bits(), &self.mid * &other.mid, Round::Nearest);
        // |x y - mx my| <= |mx| ry + |my| rx + rx ry
        let xm = Mag::from_float_up(&self.mid);
        let ym = Mag::from_float_up(&other.mid);
        let mut rad = xm
            .mul_up(&other.rad)
            .add_up(&ym.mul_up(&self.rad))
            .add_up(&self.rad.mul_up(&other.rad));
        if ord != Ordering::Equal {
            rad = rad.add_up(&Mag::ulp_of(&mid));
        }
        RealBall::from_midrad(mid, rad)
    }

    pub fn div(&self, other: &RealBall, prec: Precision) -> RealBall {
        if self.is_indeterminate() || other.is_indeterminate() || other.contains_zero() {
            return RealBall::indeterminate();
        }
        let (mid, ord) =
            Float::with_val_round(prec.bits(), &self.mid / &other.mid, Round::Nearest);
        // |x/y - mx/my| <= (|my| rx + |mx| ry) / (|my| (|my| - ry))
        let num = Mag::from_float_up(&other.mid)
            .mul_up(&self.rad)
            .add_up(&Mag::from_float_up(&self.mid).mul_up(&other.rad));
        let oabs = other.mid.clone().abs();
        let (gap, _) =
            Float::with_val_round(MAG_PREC, &oabs - other.rad.as_float(), Round::Down);
        let (den, _) = Float::with_val_round(MAG_PREC, &oabs * &gap, Round::Down);
        if !(den > 0u32) {
            return RealBall::indeterminate();
        }
        let (r, _) = Float::with_val_round(MAG_PREC, num.as_float() / &den, Round::Up);
        let mut rad = Mag::from_raw(r);
        if ord != Ordering::Equal {
            rad = rad.add_up(&Mag::ulp_of(&mid));
        }
        RealBall::from_midrad(mid, rad)
    }

    /// Exact scaling by `2^e`.
    pub fn mul_2exp(&self, e: i32) -> RealBall {
        if self.is_indeterminate() {
            return RealBall::indeterminate();
        }
        RealBall {
            mid: Float::with_val(self.mid.prec(), &self.mid << e),
            rad: self.rad.mul_2exp(e),
        }
    }

    /// Enclosure of `|x|` over the ball.
    pub fn abs_ball(&self, prec: Precision) -> RealBall {
        if self.is_indeterminate() {
            return RealBall::indeterminate();
        }
        if !self.contains_zero() {
            return if self.mid.is_sign_negative() {
                self.neg()
            } else {
                self.clone()
            };
        }
        let hi = self.mag_upper();
        let zero = Float::with_val(MAG_PREC, 0);
        RealBall::from_endpoints(&zero, hi.as_float(), prec)
    }

    /// Monotone-increasing map applied to both endpoints with directed
    /// rounding; `f` must be nondecreasing on the ball's interval.
    fn monotone(
        &self,
        prec: Precision,
        f: impl Fn(&Float, Round) -> Float,
    ) -> RealBall {
        if self.is_indeterminate() {
            return RealBall::indeterminate();
        }
        let lo = f(&self.lower_bound(), Round::Down);
        let hi = f(&self.upper_bound(), Round::Up);
        RealBall::from_endpoints(&lo, &hi, prec)
    }

    pub fn exp(&self, prec: Precision) -> RealBall {
        let p = prec.bits();
        self.monotone(prec, |x, r| Float::with_val_round(p, x.exp_ref(), r).0)
    }

    /// Natural log; indeterminate when the ball reaches 0 or below.
    pub fn log(&self, prec: Precision) -> RealBall {
        if self.is_indeterminate() || !(self.lower_bound() > 0u32) {
            return RealBall::indeterminate();
        }
        let p = prec.bits();
        self.monotone(prec, |x, r| Float::with_val_round(p, x.ln_ref(), r).0)
    }

    /// Real square root; indeterminate when the ball extends below 0.
    pub fn sqrt(&self, prec: Precision) -> RealBall {
        if self.is_indeterminate() || self.lower_bound() < 0u32 {
            return RealBall::indeterminate();
        }
        let p = prec.bits();
        self.monotone(prec, |x, r| Float::with_val_round(p, x.sqrt_ref(), r).0)
    }

    pub fn sinh(&self, prec: Precision) -> RealBall {
        let p = prec.bits();
        self.monotone(prec, |x, r| Float::with_val_round(p, x.sinh_ref(), r).0)
    }

    pub fn tanh(&self, prec: Precision) -> RealBall {
        let p = prec.bits();
        self.monotone(prec, |x, r| Float::with_val_round(p, x.tanh_ref(), r).0)
    }

    pub fn atan(&self, prec: Precision) -> RealBall {
        let p = prec.bits();
        self.monotone(prec, |x, r| Float::with_val_round(p, x.atan_ref(), r).0)
    }

    pub fn cosh(&self, prec: Precision) -> RealBall {
        if self.is_indeterminate() {
            return RealBall::indeterminate();
        }
        let p = prec.bits();
        let lo = self.lower_bound();
        let hi = self.upper_bound();
        let (clo, _) = Float::with_val_round(p, lo.cosh_ref(), Round::Up);
        let (chi, _) = Float::with_val_round(p, hi.cosh_ref(), Round::Up);
        let top = if clo > chi { clo } else { chi };
        let bottom = if self.contains_zero() {
            Float::with_val(p, 1)
        } else {
            let nearer = if lo.is_sign_negative() { &hi } else { &lo };
            Float::with_val_round(p, nearer.cosh_ref(), Round::Down).0
        };
        RealBall::from_endpoints(&bottom, &top, prec)
    }

    pub fn sin(&self, prec: Precision) -> RealBall {
        self.periodic(prec, |x, p| Float::with_val_round(p, x.sin_ref(), Round::Nearest))
    }

    pub fn cos(&self, prec: Precision) -> RealBall {
        self.periodic(prec, |x, p| Float::with_val_round(p, x.cos_ref(), Round::Nearest))
    }

    /// sin/cos evaluation: midpoint value plus a Lipschitz (|f'| <= 1) term,
    /// clamped to [-1, 1]; wide balls short-circuit to `[0 +/- 1]`.
    fn periodic(
        &self,
        prec: Precision,
        f: impl Fn(&Float, u32) -> (Float, Ordering),
    ) -> RealBall {
        if self.is_indeterminate() {
            return RealBall::indeterminate();
        }
        let wide = Mag::from_f64_up(1.5);
        if self.rad > wide {
            return RealBall::from_midrad(Float::with_val(prec.bits(), 0), Mag::from_f64_up(1.0));
        }
        let (val, ord) = f(&self.mid, prec.bits());
        let mut rad = self.rad.clone();
        if ord != Ordering::Equal {
            rad = rad.add_up(&Mag::ulp_of(&val));
        }
        let ball = RealBall::from_midrad(val, rad);
        // Clamp into the global range when the ball pokes out of it.
        if ball.mag_upper() > Mag::from_f64_up(1.0) {
            let one = Float::with_val(MAG_PREC, 1);
            let neg_one = Float::with_val(MAG_PREC, -1);
            let lo = ball.lower_bound();
            let hi = ball.upper_bound();
            let lo = if lo < neg_one { neg_one } else { lo };
            let hi = if hi > one { one } else { hi };
            return RealBall::from_endpoints(&lo, &hi, prec);
        }
        ball
    }
}

/// `|a - b|` rounded up, at radius precision.
pub(crate) fn dist_up(a: &Float, b: &Float) -> Mag {
    let (d, _) = Float::with_val_round(MAG_PREC, a - b, Round::Up);
    let (d2, _) = Float::with_val_round(MAG_PREC, b - a, Round::Up);
    Mag::from_float_up(&d).maximum(&Mag::from_float_up(&d2))
}
