//! Piecewise extensions of non-analytic real functions to complex boxes.
//!
//! Each function here extends a real, piecewise-analytic function to the
//! complex plane by continuing each analytic piece into a vertical strip or
//! half-plane keyed on the real part. The `analytic` flag follows the
//! integrand contract ([`crate::integrate::Integrand`]):
//!
//! * `analytic = false`: always return an enclosure of all extension values
//!   over the box, hulling across pieces when the box straddles a boundary;
//! * `analytic = true`: return a finite box only when the box lies strictly
//!   inside a single piece (where the extension is analytic); otherwise
//!   return an indeterminate box.
//!
//! The adaptive integrator then isolates piece boundaries by bisection: the
//! `analytic = true` probes refuse every straddling ellipse, while the plain
//! hulls still shrink linearly, so accepted subintervals near a boundary
//! converge by direct enclosures.

use crate::complex::ComplexBox;
use crate::prec::Precision;
use crate::real::RealBall;

/// Strip classification of the real part used by `floor`/`ceil`.
fn strip_bounds(z: &ComplexBox) -> Option<(rug::Float, rug::Float)> {
    if z.is_indeterminate() {
        return None;
    }
    Some((z.re().lower_bound(), z.re().upper_bound()))
}

/// `floor(Re z)`, continued as the constant `k` on the strip
/// `k <= Re z < k + 1`.
pub fn floor_ext(z: &ComplexBox, analytic: bool, prec: Precision) -> ComplexBox {
    let Some((lo, hi)) = strip_bounds(z) else {
        return ComplexBox::indeterminate();
    };
    let fl = lo.clone().floor();
    let fh = hi.clone().floor();
    if fl == fh {
        if analytic && lo == fl {
            // The box touches the jump at Re = k.
            return ComplexBox::indeterminate();
        }
        return ComplexBox::from_real(RealBall::from_float(fl));
    }
    if analytic {
        return ComplexBox::indeterminate();
    }
    ComplexBox::from_real(RealBall::from_endpoints(&fl, &fh, prec))
}

/// `ceil(Re z)`, continued as the constant `k` on the strip
/// `k - 1 < Re z <= k`.
pub fn ceil_ext(z: &ComplexBox, analytic: bool, prec: Precision) -> ComplexBox {
    let Some((lo, hi)) = strip_bounds(z) else {
        return ComplexBox::indeterminate();
    };
    let cl = lo.clone().ceil();
    let ch = hi.clone().ceil();
    if cl == ch {
        if analytic && hi == ch {
            return ComplexBox::indeterminate();
        }
        return ComplexBox::from_real(RealBall::from_float(cl));
    }
    if analytic {
        return ComplexBox::indeterminate();
    }
    ComplexBox::from_real(RealBall::from_endpoints(&cl, &ch, prec))
}

/// Sign of the real part: `+1` on the right half-plane, `-1` on the left.
pub fn sgn_ext(z: &ComplexBox, analytic: bool, _prec: Precision) -> ComplexBox {
    if z.is_indeterminate() {
        return ComplexBox::indeterminate();
    }
    if z.re().lower_bound() > 0u32 {
        return ComplexBox::one();
    }
    if z.re().upper_bound() < 0u32 {
        return ComplexBox::from_i64(-1);
    }
    if analytic {
        return ComplexBox::indeterminate();
    }
    ComplexBox::from_real(RealBall::from_midrad(
        rug::Float::with_val(2, 0),
        crate::mag::Mag::from_f64_up(1.0),
    ))
}

/// `|z|` continued by half-planes: `z` for `Re z > 0`, `-z` for `Re z < 0`.
pub fn abs_ext(z: &ComplexBox, analytic: bool, prec: Precision) -> ComplexBox {
    if z.is_indeterminate() {
        return ComplexBox::indeterminate();
    }
    if z.re().lower_bound() > 0u32 {
        return z.clone();
    }
    if z.re().upper_bound() < 0u32 {
        return z.neg();
    }
    if analytic {
        return ComplexBox::indeterminate();
    }
    z.hull(&z.neg(), prec)
}

/// `max(f, g) = (f + g + |f - g|) / 2` with `|.|` from [`abs_ext`].
pub fn max_ext(f: &ComplexBox, g: &ComplexBox, analytic: bool, prec: Precision) -> ComplexBox {
    let d = abs_ext(&f.sub(g, prec), analytic, prec);
    f.add(g, prec).add(&d, prec).mul_2exp(-1)
}

/// `min(f, g) = (f + g - |f - g|) / 2` with `|.|` from [`abs_ext`].
pub fn min_ext(f: &ComplexBox, g: &ComplexBox, analytic: bool, prec: Precision) -> ComplexBox {
    let d = abs_ext(&f.sub(g, prec), analytic, prec);
    f.add(g, prec).sub(&d, prec).mul_2exp(-1)
}

/// Principal square root with the piecewise contract: under `analytic = true`
/// a box meeting the branch cut `(-inf, 0]` is indeterminate rather than a
/// both-branch hull.
pub fn sqrt_analytic(z: &ComplexBox, analytic: bool, prec: Precision) -> ComplexBox {
    if analytic && z.meets_principal_cut() {
        return ComplexBox::indeterminate();
    }
    z.sqrt(prec)
}

/// Principal logarithm with the piecewise contract (see [`sqrt_analytic`]).
pub fn log_analytic(z: &ComplexBox, analytic: bool, prec: Precision) -> ComplexBox {
    if analytic && z.meets_principal_cut() {
        return ComplexBox::indeterminate();
    }
    z.log(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mag::Mag;
    use rug::Float;

    fn p(bits: u32) -> Precision {
        Precision::new(bits)
    }

    fn pt(v: f64) -> Float {
        Float::with_val(53, v)
    }

    fn rball(mid: f64, rad: f64) -> RealBall {
        RealBall::from_midrad(pt(mid), Mag::from_f64_up(rad))
    }

    fn rbox(mid: f64, rad: f64) -> ComplexBox {
        ComplexBox::from_real(rball(mid, rad))
    }

    #[test]
    fn floor_strip_interior_is_constant_and_analytic() {
        for analytic in [false, true] {
            let v = floor_ext(&rbox(2.3, 0.1), analytic, p(64));
            assert!(v.contains_point(&pt(2.0), &pt(0.0)));
            assert!(v.is_exact());
        }
        // The imaginary part is irrelevant to the strip.
        let z = ComplexBox::new(rball(2.5, 0.2), rball(1.0, 0.0));
        let v = floor_ext(&z, true, p(64));
        assert!(v.contains_point(&pt(2.0), &pt(0.0)));
        assert!(v.is_real());
    }

    #[test]
    fn floor_across_jump() {
        let v = floor_ext(&rbox(3.0, 0.1), false, p(64));
        assert!(v.contains_point(&pt(2.0), &pt(0.0)));
        assert!(v.contains_point(&pt(3.0), &pt(0.0)));
        assert!(floor_ext(&rbox(3.0, 0.1), true, p(64)).is_indeterminate());
        // An exact integer point: well-defined value, but no analyticity.
        let exact = ComplexBox::from_i64(3);
        let v = floor_ext(&exact, false, p(64));
        assert!(v.contains_point(&pt(3.0), &pt(0.0)));
        assert!(v.is_exact());
        assert!(floor_ext(&exact, true, p(64)).is_indeterminate());
    }

    #[test]
    fn ceil_mirrors_floor() {
        for analytic in [false, true] {
            let v = ceil_ext(&rbox(2.3, 0.1), analytic, p(64));
            assert!(v.contains_point(&pt(3.0), &pt(0.0)));
        }
        let v = ceil_ext(&rbox(3.0, 0.1), false, p(64));
        assert!(v.contains_point(&pt(3.0), &pt(0.0)));
        assert!(v.contains_point(&pt(4.0), &pt(0.0)));
        assert!(ceil_ext(&rbox(3.0, 0.1), true, p(64)).is_indeterminate());
        let exact = ComplexBox::from_i64(3);
        let v = ceil_ext(&exact, false, p(64));
        assert!(v.contains_point(&pt(3.0), &pt(0.0)));
        assert!(ceil_ext(&exact, true, p(64)).is_indeterminate());
    }

    #[test]
    fn sgn_half_planes() {
        assert!(sgn_ext(&rbox(5.0, 1.0), true, p(64)).contains_point(&pt(1.0), &pt(0.0)));
        assert!(sgn_ext(&rbox(-5.0, 1.0), true, p(64)).contains_point(&pt(-1.0), &pt(0.0)));
        let s = sgn_ext(&rbox(0.5, 1.0), false, p(64));
        for v in [-1.0, 0.0, 1.0] {
            assert!(s.contains_point(&pt(v), &pt(0.0)));
        }
        assert!(sgn_ext(&rbox(0.5, 1.0), true, p(64)).is_indeterminate());
    }

    #[test]
    fn abs_half_planes() {
        let pos = abs_ext(&rbox(1.0, 0.5), true, p(64));
        assert!(pos.contains_point(&pt(1.0), &pt(0.0)));
        assert!(pos.contains_point(&pt(1.5), &pt(0.0)));
        let neg = abs_ext(&rbox(-2.0, 0.5), true, p(64));
        assert!(neg.contains_point(&pt(2.0), &pt(0.0)));
        assert!(neg.contains_point(&pt(1.5), &pt(0.0)));
        // Complex input keeps its imaginary part (sign flipped on the left).
        let z = ComplexBox::new(rball(-2.0, 0.1), rball(3.0, 0.1));
        let a = abs_ext(&z, true, p(64));
        assert!(a.contains_point(&pt(2.0), &pt(-3.0)));
        // Straddle: hull under d=0, indeterminate under d=1.
        let st = abs_ext(&rbox(0.1, 0.5), false, p(64));
        assert!(st.contains_point(&pt(0.6), &pt(0.0)));
        assert!(st.contains_point(&pt(-0.6), &pt(0.0)));
        assert!(abs_ext(&rbox(0.1, 0.5), true, p(64)).is_indeterminate());
    }

    #[test]
    fn max_min_exact_and_straddling() {
        let three = ComplexBox::from_i64(3);
        let four = ComplexBox::from_i64(4);
        let mx = max_ext(&three, &four, true, p(64));
        assert!(mx.contains_point(&pt(4.0), &pt(0.0)));
        let mn = min_ext(&three, &four, true, p(64));
        assert!(mn.contains_point(&pt(3.0), &pt(0.0)));

        let wide = rbox(0.0, 2.0);
        let one = ComplexBox::one();
        let mx = max_ext(&wide, &one, false, p(64));
        // Contains the true range {max(x, 1) : x in [-2, 2]} = [1, 2].
        assert!(mx.contains_point(&pt(1.0), &pt(0.0)));
        assert!(mx.contains_point(&pt(2.0), &pt(0.0)));
        assert!(max_ext(&wide, &one, true, p(64)).is_indeterminate());
        let mn = min_ext(&wide, &one, false, p(64));
        assert!(mn.contains_point(&pt(-2.0), &pt(0.0)));
        assert!(mn.contains_point(&pt(1.0), &pt(0.0)));
    }

    #[test]
    fn sqrt_log_cut_contract() {
        let off_cut = ComplexBox::from_f64s(4.0, 0.0);
        let s = sqrt_analytic(&off_cut, true, p(64));
        assert!(s.contains_point(&pt(2.0), &pt(0.0)));
        let on_cut = ComplexBox::from_f64s(-1.0, 0.0);
        assert!(sqrt_analytic(&on_cut, true, p(64)).is_indeterminate());
        // d=0 still returns a (both-branch) enclosure on the cut.
        let h = sqrt_analytic(&on_cut, false, p(64));
        assert!(h.contains_point(&pt(0.0), &pt(1.0)));
        assert!(h.contains_point(&pt(0.0), &pt(-1.0)));

        let l = log_analytic(&ComplexBox::from_f64s(1.0, 0.0), true, p(64));
        assert!(l.contains_point(&pt(0.0), &pt(0.0)));
        assert!(log_analytic(&on_cut, true, p(64)).is_indeterminate());
        let lh = log_analytic(&on_cut, false, p(64));
        let pi = Float::with_val(80, rug::float::Constant::Pi);
        assert!(lh.contains_point(&pt(0.0), &pi));
    }
}
