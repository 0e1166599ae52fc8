//! Complex boxes: rectangular enclosures `re + im*i` built from two real balls.

use crate::mag::{Mag, MAG_PREC};
use crate::prec::Precision;
use crate::real::RealBall;
use rug::float::Round;
use rug::Float;

/// A complex number known to lie in the axis-aligned rectangle
/// `[re.mid +/- re.rad] + [im.mid +/- im.rad] i`.
///
/// The same containment contract as [`RealBall`] holds componentwise, giving
/// inclusion isotonicity for all operations. Elementary functions with branch
/// cuts (`sqrt`, `log`, and `atan` built from `log`) return the principal
/// branch; a box that meets a cut yields a both-branch hull, and a box that
/// meets a singularity yields an indeterminate result.
#[derive(Clone, Debug)]
pub struct ComplexBox {
    re: RealBall,
    im: RealBall,
}

impl ComplexBox {
    pub fn new(re: RealBall, im: RealBall) -> Self {
        ComplexBox { re, im }
    }

    pub fn from_real(re: RealBall) -> Self {
        ComplexBox {
            re,
            im: RealBall::zero(),
        }
    }

    pub fn from_f64s(re: f64, im: f64) -> Self {
        ComplexBox::new(RealBall::from_f64(re), RealBall::from_f64(im))
    }

    pub fn from_i64(v: i64) -> Self {
        ComplexBox::from_real(RealBall::from_i64(v))
    }

    pub fn zero() -> Self {
        ComplexBox::from_real(RealBall::zero())
    }

    pub fn one() -> Self {
        ComplexBox::from_i64(1)
    }

    pub fn indeterminate() -> Self {
        ComplexBox {
            re: RealBall::indeterminate(),
            im: RealBall::indeterminate(),
        }
    }

    pub fn re(&self) -> &RealBall {
        &self.re
    }

    pub fn im(&self) -> &RealBall {
        &self.im
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_indeterminate(&self) -> bool {
        !self.is_finite()
    }

    /// Whether the imaginary part is exactly `[0 +/- 0]`.
    pub fn is_real(&self) -> bool {
        self.im.is_exact_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    pub fn contains_origin(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Midpoint as a pair of `f64` (lossy).
    pub fn midpoint(&self) -> (f64, f64) {
        (self.re.midpoint(), self.im.midpoint())
    }

    /// Larger of the two component radii: the width measure used for
    /// tolerance decisions.
    pub fn rad_max(&self) -> Mag {
        self.re.rad().maximum(self.im.rad())
    }

    /// Rigorous `(lower, upper)` bounds on `|z|` over the box.
    pub fn magnitude_interval(&self) -> (Mag, Mag) {
        if self.is_indeterminate() {
            return (Mag::zero(), Mag::inf());
        }
        let upper = self.re.mag_upper().hypot_up(&self.im.mag_upper());
        let lower = if self.contains_origin() {
            Mag::zero()
        } else {
            self.re.mag_lower().hypot_down(&self.im.mag_lower())
        };
        (lower, upper)
    }

    pub fn contains_point(&self, re: &Float, im: &Float) -> bool {
        self.re.contains_point(re) && self.im.contains_point(im)
    }

    pub fn contains_box(&self, other: &ComplexBox) -> bool {
        self.re.contains_ball(&other.re) && self.im.contains_ball(&other.im)
    }

    pub fn overlaps(&self, other: &ComplexBox) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn hull(&self, other: &ComplexBox, prec: Precision) -> ComplexBox {
        ComplexBox {
            re: self.re.hull(&other.re, prec),
            im: self.im.hull(&other.im, prec),
        }
    }

    pub fn round_to(&self, prec: Precision) -> ComplexBox {
        ComplexBox {
            re: self.re.round_to(prec),
            im: self.im.round_to(prec),
        }
    }

    pub fn neg(&self) -> ComplexBox {
        ComplexBox {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> ComplexBox {
        ComplexBox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Exact multiplication by `i`.
    pub fn mul_i(&self) -> ComplexBox {
        ComplexBox {
            re: self.im.neg(),
            im: self.re.clone(),
        }
    }

    pub fn add(&self, other: &ComplexBox, prec: Precision) -> ComplexBox {
        ComplexBox {
            re: self.re.add(&other.re, prec),
            im: self.im.add(&other.im, prec),
        }
    }

    pub fn sub(&self, other: &ComplexBox, prec: Precision) -> ComplexBox {
        ComplexBox {
            re: self.re.sub(&other.re, prec),
            im: self.im.sub(&other.im, prec),
        }
    }

    pub fn mul(&self, other: &ComplexBox, prec: Precision) -> ComplexBox {
        let (a, b) = (&self.re, &self.im);
        let (c, d) = (&other.re, &other.im);
        ComplexBox {
            re: a.mul(c, prec).sub(&b.mul(d, prec), prec),
            im: a.mul(d, prec).add(&b.mul(c, prec), prec),
        }
    }

    pub fn scale(&self, s: &RealBall, prec: Precision) -> ComplexBox {
        ComplexBox {
            re: self.re.mul(s, prec),
            im: self.im.mul(s, prec),
        }
    }

    /// Exact scaling by `2^e`.
    pub fn mul_2exp(&self, e: i32) -> ComplexBox {
        ComplexBox {
            re: self.re.mul_2exp(e),
            im: self.im.mul_2exp(e),
        }
    }

    /// Division via `z * conj(w) / |w|^2`; indeterminate when `w` may
    /// vanish.
    ///
    /// `|w|^2` is assembled from interval squares of the parts rather than
    /// from centered ball products: re-centering each square is what lets a
    /// denominator like `([1.25 +/- 0.75])^2` stay away from zero.
    pub fn div(&self, other: &ComplexBox, prec: Precision) -> ComplexBox {
        if self.is_indeterminate() || other.is_indeterminate() {
            return ComplexBox::indeterminate();
        }
        let den = interval_square(&other.re, prec).add(&interval_square(&other.im, prec), prec);
        if den.contains_zero() || !den.is_finite() {
            return ComplexBox::indeterminate();
        }
        let num = self.mul(&other.conj(), prec);
        ComplexBox {
            re: num.re.div(&den, prec),
            im: num.im.div(&den, prec),
        }
    }

    pub fn pow_int(&self, e: u32, prec: Precision) -> ComplexBox {
        let mut acc = ComplexBox::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        acc
    }

    pub fn exp(&self, prec: Precision) -> ComplexBox {
        let r = self.re.exp(prec);
        ComplexBox {
            re: r.mul(&self.im.cos(prec), prec),
            im: r.mul(&self.im.sin(prec), prec),
        }
    }

    pub fn sin(&self, prec: Precision) -> ComplexBox {
        ComplexBox {
            re: self.re.sin(prec).mul(&self.im.cosh(prec), prec),
            im: self.re.cos(prec).mul(&self.im.sinh(prec), prec),
        }
    }

    pub fn cos(&self, prec: Precision) -> ComplexBox {
        ComplexBox {
            re: self.re.cos(prec).mul(&self.im.cosh(prec), prec),
            im: self.re.sin(prec).mul(&self.im.sinh(prec), prec).neg(),
        }
    }

    pub fn sinh(&self, prec: Precision) -> ComplexBox {
        ComplexBox {
            re: self.re.sinh(prec).mul(&self.im.cos(prec), prec),
            im: self.re.cosh(prec).mul(&self.im.sin(prec), prec),
        }
    }

    pub fn cosh(&self, prec: Precision) -> ComplexBox {
        ComplexBox {
            re: self.re.cosh(prec).mul(&self.im.cos(prec), prec),
            im: self.re.sinh(prec).mul(&self.im.sin(prec), prec),
        }
    }

    /// Hyperbolic secant `1/cosh`.
    ///
    /// Away from the imaginary axis this uses the identity
    /// `sech z = 2 e^{-|z|}/(1 + e^{-2|z|})` (with `|.|` meaning the sign
    /// flip that makes the real part positive), whose exponentials decay.
    /// The naive quotient first forms `cosh z`, and for a wide box that
    /// rectangle spuriously straddles zero as soon as `im` spans more than
    /// a period — even when `|cosh|` is huge — turning the result
    /// indeterminate; the decaying form keeps the denominator pinned near 1.
    pub fn sech(&self, prec: Precision) -> ComplexBox {
        if self.is_indeterminate() {
            return ComplexBox::indeterminate();
        }
        let flipped;
        let z = if self.re.lower_bound() > 0u32 {
            self
        } else if self.re.upper_bound() < 0u32 {
            flipped = self.neg();
            &flipped
        } else {
            return ComplexBox::one().div(&self.cosh(prec), prec);
        };
        let num = z.neg().exp(prec).mul_2exp(1);
        let den = ComplexBox::one().add(&z.mul_2exp(1).neg().exp(prec), prec);
        num.div(&den, prec)
    }

    /// Whether the box meets the branch cut `(-inf, 0]` of `sqrt`/`log`.
    pub fn meets_principal_cut(&self) -> bool {
        if self.is_indeterminate() {
            return true;
        }
        self.im.contains_zero() && !(self.re.lower_bound() > 0u32)
    }

    /// Principal square root.
    ///
    /// Boxes that meet the branch cut get a both-branch hull (re in
    /// `[0, sqrt|z|max]`, im in `[+/- sqrt|z|max]`): valid around a cut
    /// crossing, at the price of no longer being tight.
    pub fn sqrt(&self, prec: Precision) -> ComplexBox {
        if self.is_indeterminate() {
            return ComplexBox::indeterminate();
        }
        if self.meets_principal_cut() {
            let (_, hi) = self.magnitude_interval();
            let s = hi.sqrt_up();
            let zero = Float::with_val(MAG_PREC, 0);
            return ComplexBox {
                re: RealBall::from_endpoints(&zero, s.as_float(), prec),
                im: RealBall::from_midrad(Float::with_val(prec.bits(), 0), s),
            };
        }
        let wp = prec.plus(16);
        let mre = RealBall::from_float(self.re.mid().clone());
        let mim = RealBall::from_float(self.im.mid().clone());
        let r = mre
            .mul(&mre, wp)
            .add(&mim.mul(&mim, wp), wp)
            .sqrt(wp);
        // Stable half-angle formulas, branch picked by sign of Re(mid).
        let (a, b) = if !self.re.mid().is_sign_negative() {
            let a = r.add(&mre, wp).mul_2exp(-1).sqrt(wp);
            let b = mim.div(&a.mul_2exp(1), wp);
            (a, b)
        } else {
            let babs = r.sub(&mre, wp).mul_2exp(-1).sqrt(wp);
            let b = if self.im.mid().is_sign_negative() {
                babs.neg()
            } else {
                babs
            };
            let a = mim.div(&b.mul_2exp(1), wp);
            (a, b)
        };
        self.inflate_by_derivative(a, b, &self.sqrt_deriv_bound(), prec)
    }

    /// Upper bound of `|sqrt'| = 1/(2 sqrt|z|)` over a box avoiding the cut.
    fn sqrt_deriv_bound(&self) -> Mag {
        let (lo, _) = self.magnitude_interval();
        lo.sqrt_down().mul_2exp(1).recip_up()
    }

    /// Principal natural logarithm.
    ///
    /// A box meeting the cut (but not 0) gets re in `[log |z|min, log |z|max]`
    /// and im in `[+/- pi]`; a box containing 0 is indeterminate.
    pub fn log(&self, prec: Precision) -> ComplexBox {
        if self.is_indeterminate() {
            return ComplexBox::indeterminate();
        }
        if self.meets_principal_cut() {
            let (lo, hi) = self.magnitude_interval();
            if lo.is_zero() {
                return ComplexBox::indeterminate();
            }
            let p = prec.bits();
            let (llo, _) = Float::with_val_round(p, lo.as_float().ln_ref(), Round::Down);
            let (lhi, _) = Float::with_val_round(p, hi.as_float().ln_ref(), Round::Up);
            let (pi_hi, _) =
                Float::with_val_round(MAG_PREC, rug::float::Constant::Pi, Round::Up);
            return ComplexBox {
                re: RealBall::from_endpoints(&llo, &lhi, prec),
                im: RealBall::from_midrad(
                    Float::with_val(p, 0),
                    Mag::from_float_up(&pi_hi),
                ),
            };
        }
        let wp = prec.plus(16);
        let mre = RealBall::from_float(self.re.mid().clone());
        let mim = RealBall::from_float(self.im.mid().clone());
        let modulus = mre
            .mul(&mre, wp)
            .add(&mim.mul(&mim, wp), wp)
            .sqrt(wp);
        let a = modulus.log(wp);
        // Principal argument of the exact midpoint by directed atan2.
        let (arg_lo, _) = Float::with_val_round(
            wp.bits(),
            self.im.mid().atan2_ref(self.re.mid()),
            Round::Down,
        );
        let (arg_hi, _) = Float::with_val_round(
            wp.bits(),
            self.im.mid().atan2_ref(self.re.mid()),
            Round::Up,
        );
        let b = RealBall::from_endpoints(&arg_lo, &arg_hi, wp);
        let (maglo, _) = self.magnitude_interval();
        self.inflate_by_derivative(a, b, &maglo.recip_up(), prec)
    }

    /// `atan(z) = (i/2) (log(1 - iz) - log(1 + iz))` on the principal branch.
    pub fn atan(&self, prec: Precision) -> ComplexBox {
        let wp = prec.plus(16);
        let one = ComplexBox::one();
        let iz = self.mul_i();
        let l1 = one.sub(&iz, wp).log(wp);
        let l2 = one.add(&iz, wp).log(wp);
        l1.sub(&l2, wp).mul_i().mul_2exp(-1).round_to(prec)
    }

    /// Mean-value inflation: midpoint image `(a, b)` plus
    /// `sup |f'| * (distance from midpoint to box corner)` on each component.
    fn inflate_by_derivative(
        &self,
        a: RealBall,
        b: RealBall,
        deriv_bound: &Mag,
        prec: Precision,
    ) -> ComplexBox {
        let dev = self.re.rad().hypot_up(self.im.rad());
        let pad = dev.mul_up(deriv_bound);
        let a = a.round_to(prec);
        let b = b.round_to(prec);
        if !pad.is_finite() {
            return ComplexBox::indeterminate();
        }
        ComplexBox {
            re: RealBall::from_midrad(a.mid().clone(), a.rad().add_up(&pad)),
            im: RealBall::from_midrad(b.mid().clone(), b.rad().add_up(&pad)),
        }
    }
}

/// Enclosure of the exact range of `x^2` over the ball, from directed
/// endpoint squares. Unlike the centered product `x * x`, the result touches
/// zero only when `x` itself may vanish.
fn interval_square(x: &RealBall, prec: Precision) -> RealBall {
    if !x.is_finite() {
        return RealBall::indeterminate();
    }
    let lo = x.lower_bound();
    let hi = x.upper_bound();
    let wb = prec.bits().max(MAG_PREC);
    let (alo, ahi) = if lo >= 0u32 {
        (lo, hi)
    } else if hi <= 0u32 {
        (-hi, -lo)
    } else {
        let neg = -lo;
        let big = if neg > hi { neg } else { hi };
        (Float::new(wb), big)
    };
    let (lo2, _) = Float::with_val_round(wb, &alo * &alo, Round::Down);
    let (hi2, _) = Float::with_val_round(wb, &ahi * &ahi, Round::Up);
    RealBall::from_endpoints(&lo2, &hi2, prec)
}
