//! Independent reference enclosures for the benchmark cases.
//!
//! Everything here is computed from closed forms or piecewise
//! antiderivatives in plain ball arithmetic — never by the adaptive
//! integrator whose output it checks.

use ballquad::{ComplexBox, Mag, Precision, RealBall};
use rug::Float;

/// 94 correct digits of the oscillatory case I5.
const I5_DIGITS: &str = "0.3474001726572478078795121591198931246574562548661801838854927136167482139887853205296851043466";

const D0_COEFFS: [i64; 5] = [1, 10, 19, -6, -6];
const D0_DCOEFFS: [i64; 4] = [4, 30, 38, -6];
/// `q = p - p' + p'' - p''' + p''''`, so that `(e^x q)' = e^x p`.
const D0_QCOEFFS: [i64; 5] = [1, 6, 1, -8, 2];

pub fn quarter_pi(rp: Precision) -> RealBall {
    RealBall::pi(rp).mul_2exp(-2)
}

/// Sum of `10^{-k} [G_k(tanh u)]` over the three sech powers, where
/// `G_k' (tanh u) = sech^{2k} u`.
pub fn i1_value(rp: Precision) -> RealBall {
    let mut acc = RealBall::zero();
    for k in 1..=3i64 {
        let scale = RealBall::from_i64(10i64.pow(k as u32));
        let c = RealBall::from_i64(k).div(&RealBall::from_i64(5), rp);
        let t1 = RealBall::from_i64(1).sub(&c, rp).mul(&scale, rp).tanh(rp);
        let t0 = c.neg().mul(&scale, rp).tanh(rp);
        let g1 = sech_power_anti(k, &t1, rp);
        let g0 = sech_power_anti(k, &t0, rp);
        acc = acc.add(&g1.sub(&g0, rp).div(&scale, rp), rp);
    }
    acc
}

/// Antiderivative of `sech^{2k} u` as a polynomial in `t = tanh u`:
/// `t`, `t - t^3/3`, `t - 2t^3/3 + t^5/5` for `k = 1, 2, 3`.
fn sech_power_anti(k: i64, t: &RealBall, rp: Precision) -> RealBall {
    let t3 = t.mul(t, rp).mul(t, rp);
    let third = RealBall::from_i64(3);
    match k {
        1 => t.clone(),
        2 => t.sub(&t3.div(&third, rp), rp),
        _ => {
            let t5 = t3.mul(t, rp).mul(t, rp);
            t.sub(&t3.mul_2exp(1).div(&third, rp), rp)
                .add(&t5.div(&RealBall::from_i64(5), rp), rp)
        }
    }
}

pub fn i2_value(rp: Precision) -> RealBall {
    let pi = RealBall::pi(rp);
    pi.mul(&pi, rp).mul_2exp(-2)
}

pub fn i4_value(rp: Precision) -> RealBall {
    RealBall::from_i64(1).sub(&RealBall::from_i64(100).cos(rp), rp)
}

pub fn i5_value() -> RealBall {
    let b: RealBall = I5_DIGITS.parse().expect("reference digits parse");
    let slack = Mag::parse_up("1e-93").unwrap();
    RealBall::from_midrad(b.mid().clone(), b.rad().add_up(&slack))
}

pub fn e1_value(prec: Precision, rp: Precision) -> RealBall {
    RealBall::two_pow(prec.bits() as i32).atan(rp)
}

/// `-pi^2/12`, widened by the omitted head `|∫_0^eps log x/(1+x) dx| <=
/// eps (1 - ln eps)` with `eps = 2^{-p}`.
pub fn e2_value(prec: Precision, rp: Precision) -> RealBall {
    let pi = RealBall::pi(rp);
    let v = pi.mul(&pi, rp).div(&RealBall::from_i64(-12), rp);
    let head = Mag::two_pow(-(prec.bits() as i32)).mul_up(&Mag::from_f64_up(
        1.0 + prec.bits() as f64 * std::f64::consts::LN_2,
    ));
    RealBall::from_midrad(v.mid().clone(), v.rad().add_up(&head))
}

/// `∫_0^n sech x dx = 2 atan(tanh(n/2))`.
pub fn e3_value(n: i64, rp: Precision) -> RealBall {
    RealBall::from_i64(n).mul_2exp(-1).tanh(rp).atan(rp).mul_2exp(1)
}

pub fn d0_poly_box(z: &ComplexBox, p: Precision) -> ComplexBox {
    horner_box(&D0_COEFFS, z, p)
}

/// The certified simple root of `x^4 + 10x^3 + 19x^2 - 6x - 6` in (0, 1).
pub fn d0_root(rp: Precision) -> RealBall {
    let wb = rp.bits() + 32;
    let mut x = Float::with_val(wb, 0.6);
    for _ in 0..40 {
        let fx = horner_float(&D0_COEFFS, &x, wb);
        let dx = horner_float(&D0_DCOEFFS, &x, wb);
        x -= fx / dx;
    }
    // Interval Newton: N(X) = x - p(x)/p'(X) inside X certifies a unique
    // root in X and yields the tighter enclosure N(X).
    let wide = RealBall::from_midrad(x.clone(), Mag::two_pow(-((rp.bits() / 2) as i32)));
    let xhat = RealBall::from_float(x);
    let refined = xhat.sub(
        &horner_ball(&D0_COEFFS, &xhat, rp).div(&horner_ball(&D0_DCOEFFS, &wide, rp), rp),
        rp,
    );
    assert!(
        wide.contains_ball(&refined),
        "interval Newton failed on the D0 sign-change root"
    );
    refined
}

/// Split antiderivative of `|p| e^x`: with `F = e^x q` and `r` the sign
/// change, the integral is `F(0) + F(1) - 2 F(r) = 2 + 2e - 2 e^r q(r)`.
pub fn d0_value(rp: Precision) -> RealBall {
    let r = d0_root(rp);
    let e = RealBall::from_i64(1).exp(rp);
    let qr = horner_ball(&D0_QCOEFFS, &r, rp);
    let corner = r.exp(rp).mul(&qr, rp).mul_2exp(1);
    RealBall::from_i64(2).add(&e.mul_2exp(1), rp).sub(&corner, rp)
}

/// `(2/3) (2i + (-1+i)^{3/2} - (-1-i)^{3/2})`: the principal antiderivative
/// `(2/3) z^{3/2}` evaluated on each side of the branch cut, plus the two
/// one-sided limits at the crossing point `z = -1`.
pub fn d2_value(rp: Precision) -> ComplexBox {
    let upper = ComplexBox::from_f64s(-1.0, 1.0);
    let lower = ComplexBox::from_f64s(-1.0, -1.0);
    let au = upper.mul(&upper.sqrt(rp), rp);
    let al = lower.mul(&lower.sqrt(rp), rp);
    let two_i = ComplexBox::from_i64(2).mul_i();
    let factor = RealBall::from_i64(2).div(&RealBall::from_i64(3), rp);
    two_i.add(&au.sub(&al, rp), rp).scale(&factor, rp)
}

/// Breakpoints of the D3 integrand: integers and odd multiples of pi/4.
enum Bp {
    Int(i64),
    QuarterPi(i64),
}

enum Trig {
    Sin,
    Cos,
}

/// Maximal pieces of `(x - floor(x) - 1/2) max(sin x, cos x)` on [0, 10]:
/// (left, right, floor value, active branch).
const D3_PIECES: [(Bp, Bp, i64, Trig); 13] = [
    (Bp::Int(0), Bp::QuarterPi(1), 0, Trig::Cos),
    (Bp::QuarterPi(1), Bp::Int(1), 0, Trig::Sin),
    (Bp::Int(1), Bp::Int(2), 1, Trig::Sin),
    (Bp::Int(2), Bp::Int(3), 2, Trig::Sin),
    (Bp::Int(3), Bp::QuarterPi(5), 3, Trig::Sin),
    (Bp::QuarterPi(5), Bp::Int(4), 3, Trig::Cos),
    (Bp::Int(4), Bp::Int(5), 4, Trig::Cos),
    (Bp::Int(5), Bp::Int(6), 5, Trig::Cos),
    (Bp::Int(6), Bp::Int(7), 6, Trig::Cos),
    (Bp::Int(7), Bp::QuarterPi(9), 7, Trig::Cos),
    (Bp::QuarterPi(9), Bp::Int(8), 7, Trig::Sin),
    (Bp::Int(8), Bp::Int(9), 8, Trig::Sin),
    (Bp::Int(9), Bp::Int(10), 9, Trig::Sin),
];

fn bp_ball(bp: &Bp, rp: Precision) -> RealBall {
    match bp {
        Bp::Int(k) => RealBall::from_i64(*k),
        Bp::QuarterPi(m) => RealBall::pi(rp).mul(&RealBall::from_i64(*m), rp).mul_2exp(-2),
    }
}

/// Antiderivative of `(x - k - 1/2) trig(x)` on one piece.
fn d3_anti(x: &RealBall, k: i64, trig: &Trig, rp: Precision) -> RealBall {
    let center = RealBall::from_i64(k).add(&RealBall::from_f64(0.5), rp);
    let shift = x.sub(&center, rp);
    match trig {
        Trig::Sin => x.sin(rp).sub(&shift.mul(&x.cos(rp), rp), rp),
        Trig::Cos => shift.mul(&x.sin(rp), rp).add(&x.cos(rp), rp),
    }
}

pub fn d3_value(rp: Precision) -> RealBall {
    let mut acc = RealBall::zero();
    for (a, b, k, t) in D3_PIECES.iter() {
        let xa = bp_ball(a, rp);
        let xb = bp_ball(b, rp);
        acc = acc.add(&d3_anti(&xb, *k, t, rp).sub(&d3_anti(&xa, *k, t, rp), rp), rp);
    }
    acc
}

/// `∫_0^1 e^{c+x} sin(10x) dx = e^c (e (sin 10 - 10 cos 10) + 10) / 101`.
pub fn x_value(c: i64, rp: Precision) -> RealBall {
    let e = RealBall::from_i64(1).exp(rp);
    let ten = RealBall::from_i64(10);
    let inner = e
        .mul(&ten.sin(rp).sub(&ten.mul(&ten.cos(rp), rp), rp), rp)
        .add(&ten, rp);
    RealBall::from_i64(c)
        .exp(rp)
        .mul(&inner, rp)
        .div(&RealBall::from_i64(101), rp)
}

fn horner_float(c: &[i64], x: &Float, wb: u32) -> Float {
    let mut acc = Float::with_val(wb, c[0]);
    for &k in &c[1..] {
        acc = Float::with_val(wb, &acc * x) + k;
    }
    acc
}

fn horner_ball(c: &[i64], x: &RealBall, p: Precision) -> RealBall {
    let mut acc = RealBall::from_i64(c[0]);
    for &k in &c[1..] {
        acc = acc.mul(x, p).add(&RealBall::from_i64(k), p);
    }
    acc
}

fn horner_box(c: &[i64], z: &ComplexBox, p: Precision) -> ComplexBox {
    let mut acc = ComplexBox::from_i64(c[0]);
    for &k in &c[1..] {
        acc = acc.mul(z, p).add(&ComplexBox::from_i64(k), p);
    }
    acc
}
