//! Benchmark case registry.
//!
//! Each case pairs an integrand over a straight-line complex path with a
//! reference enclosure computed by an independent route (closed forms,
//! antiderivatives split at the breakpoints, or a higher-precision rerun),
//! so a run can be checked without trusting the integrator under test.

use ballquad::{
    abs_ext, ceil_ext, floor_ext, log_analytic, max_ext, sqrt_analytic, ComplexBox,
    IntegrationOptions, Mag, Precision, RealBall,
};
use rug::Float;

use crate::reference;

/// Integrand closure: `f(z, analytic, prec)` with enclosure semantics.
pub type IntegrandFn = Box<dyn Fn(&ComplexBox, bool, Precision) -> ComplexBox + Send + Sync>;

/// How a case's result is checked.
pub enum Reference {
    /// Real-valued oracle enclosure.
    Real(RealBall),
    /// Complex-valued oracle enclosure.
    Complex(ComplexBox),
    /// No closed form: rerun the case at twice the precision and compare.
    SelfCheck,
}

/// A fully instantiated benchmark run: path, integrand, options, oracle.
pub struct CasePlan {
    pub id: &'static str,
    pub a: ComplexBox,
    pub b: ComplexBox,
    pub integrand: IntegrandFn,
    pub opts: IntegrationOptions,
    pub reference: Reference,
}

/// Canonical case order for reports.
pub const ALL_CASES: [&str; 16] = [
    "I0", "I1", "I2", "I4", "I5", "E0", "E1", "E2", "E3", "E4", "D0", "D1", "D2", "D3", "X-neg",
    "X-pos",
];

fn real_point(v: i64) -> ComplexBox {
    ComplexBox::from_i64(v)
}

fn real_ball(b: RealBall) -> ComplexBox {
    ComplexBox::from_real(b)
}

/// Truncation length for the sech tail: `2 sech x < 2 e^{-x} <= 2^{-p-1}` at
/// `x >= (p + 2) ln 2`.
fn sech_cutoff(prec: Precision) -> i64 {
    ((prec.bits() as f64 + 2.0) * std::f64::consts::LN_2).ceil() as i64
}

/// Truncation length for the Gaussian tail: `e^{-x^2} <= 2^{-p-2}` at
/// `x >= sqrt((p + 2) ln 2)`, floored at 10.
fn gauss_cutoff(prec: Precision) -> i64 {
    let n = ((prec.bits() as f64 + 2.0) * std::f64::consts::LN_2).sqrt().ceil() as i64;
    n.max(10)
}

/// Build the named case at working precision `prec`, or `None` if unknown.
pub fn plan(id: &str, prec: Precision) -> Option<CasePlan> {
    let opts = IntegrationOptions::new(prec);
    // Constants captured by integrands outlive any single evaluation, so give
    // them enough headroom that their own radii never dominate.
    let cp = prec.plus(80);
    let rp = Precision::new(2 * prec.bits() + 16);
    let plan = match id {
        "I0" => CasePlan {
            id: "I0",
            a: real_point(0),
            b: real_point(1),
            integrand: Box::new(|z, _, p| {
                let one = ComplexBox::one();
                one.div(&one.add(&z.mul(z, p), p), p)
            }),
            opts,
            reference: Reference::Real(reference::quarter_pi(rp)),
        },
        "I1" => {
            let centers: Vec<ComplexBox> = (1..=3)
                .map(|k| real_ball(RealBall::from_i64(k).div(&RealBall::from_i64(5), cp)))
                .collect();
            CasePlan {
                id: "I1",
                a: real_point(0),
                b: real_point(1),
                integrand: Box::new(move |z, _, p| {
                    let mut acc = ComplexBox::zero();
                    for k in 1..=3u32 {
                        let scale = RealBall::from_i64(10i64.pow(k));
                        let w = z.sub(&centers[(k - 1) as usize], p).scale(&scale, p);
                        let sech = w.sech(p);
                        acc = acc.add(&sech.mul(&sech, p).pow_int(k, p), p);
                    }
                    acc
                }),
                opts,
                reference: Reference::Real(reference::i1_value(rp)),
            }
        }
        "I2" => CasePlan {
            id: "I2",
            a: real_point(0),
            b: real_ball(RealBall::pi(cp)),
            integrand: Box::new(|z, _, p| {
                let c = z.cos(p);
                z.mul(&z.sin(p), p)
                    .div(&ComplexBox::one().add(&c.mul(&c, p), p), p)
            }),
            opts,
            reference: Reference::Real(reference::i2_value(rp)),
        },
        "I4" => CasePlan {
            id: "I4",
            a: real_point(0),
            b: real_point(100),
            integrand: Box::new(|z, _, p| z.sin(p)),
            opts,
            reference: Reference::Real(reference::i4_value(rp)),
        },
        "I5" => CasePlan {
            id: "I5",
            a: real_point(0),
            b: real_point(8),
            integrand: Box::new(|z, _, p| z.add(&z.exp(p), p).sin(p)),
            opts,
            reference: Reference::Real(reference::i5_value()),
        },
        "E0" => CasePlan {
            id: "E0",
            a: real_point(0),
            b: real_point(1),
            integrand: Box::new(|z, d, p| {
                sqrt_analytic(&ComplexBox::one().sub(&z.mul(z, p), p), d, p)
            }),
            opts,
            reference: Reference::Real(reference::quarter_pi(rp)),
        },
        "E1" => CasePlan {
            id: "E1",
            a: real_point(0),
            b: real_ball(RealBall::two_pow(prec.bits() as i32)),
            integrand: Box::new(|z, _, p| {
                let one = ComplexBox::one();
                one.div(&one.add(&z.mul(z, p), p), p)
            }),
            opts,
            reference: Reference::Real(reference::e1_value(prec, rp)),
        },
        "E2" => CasePlan {
            id: "E2",
            a: real_ball(RealBall::two_pow(-(prec.bits() as i32))),
            b: real_point(1),
            integrand: Box::new(|z, d, p| {
                log_analytic(z, d, p).div(&ComplexBox::one().add(z, p), p)
            }),
            opts,
            reference: Reference::Real(reference::e2_value(prec, rp)),
        },
        "E3" => {
            let n = sech_cutoff(prec);
            CasePlan {
                id: "E3",
                a: real_point(0),
                b: real_point(n),
                integrand: Box::new(|z, _, p| z.sech(p)),
                opts,
                reference: Reference::Real(reference::e3_value(n, rp)),
            }
        }
        "E4" => {
            let n = gauss_cutoff(prec);
            CasePlan {
                id: "E4",
                a: real_point(0),
                b: real_point(n),
                integrand: Box::new(|z, _, p| z.mul(z, p).neg().add(&z.mul_i(), p).exp(p)),
                opts,
                reference: Reference::SelfCheck,
            }
        }
        "D0" => CasePlan {
            id: "D0",
            a: real_point(0),
            b: real_point(1),
            integrand: Box::new(|z, d, p| {
                abs_ext(&reference::d0_poly_box(z, p), d, p).mul(&z.exp(p), p)
            }),
            opts,
            reference: Reference::Real(reference::d0_value(rp)),
        },
        "D1" => CasePlan {
            id: "D1",
            a: real_point(0),
            b: real_point(100),
            integrand: Box::new(|z, d, p| ceil_ext(z, d, p)),
            opts,
            reference: Reference::Real(RealBall::from_i64(5050)),
        },
        "D2" => CasePlan {
            id: "D2",
            a: ComplexBox::from_f64s(-1.0, -1.0),
            b: ComplexBox::from_f64s(-1.0, 1.0),
            integrand: Box::new(|z, d, p| sqrt_analytic(z, d, p)),
            opts,
            reference: Reference::Complex(reference::d2_value(rp)),
        },
        "D3" => {
            let mut opts = opts;
            opts.eval_limit = opts.eval_limit.saturating_mul(50);
            let half = ComplexBox::from_real(RealBall::from_f64(0.5));
            CasePlan {
                id: "D3",
                a: real_point(0),
                b: real_point(10),
                integrand: Box::new(move |z, d, p| {
                    let u = z.sub(&floor_ext(z, d, p), p).sub(&half, p);
                    let v = max_ext(&z.sin(p), &z.cos(p), d, p);
                    u.mul(&v, p)
                }),
                opts,
                reference: Reference::Real(reference::d3_value(rp)),
            }
        }
        "X-neg" => CasePlan {
            id: "X-neg",
            a: real_point(0),
            b: real_point(1),
            integrand: oscillator_integrand(-1000),
            opts,
            reference: Reference::Real(reference::x_value(-1000, rp)),
        },
        "X-pos" => {
            let mut opts = opts;
            // The integrand tops out near e^{1001}; an absolute tolerance in
            // that scale keeps the degree bounds attainable.  `--abs-tol`
            // still overrides this default.
            let e1000 = Float::with_val(64, 1000).exp();
            opts.abs_tol = Mag::from_float_up(&e1000).mul_2exp(-(prec.bits() as i32));
            CasePlan {
                id: "X-pos",
                a: real_point(0),
                b: real_point(1),
                integrand: oscillator_integrand(1000),
                opts,
                reference: Reference::Real(reference::x_value(1000, rp)),
            }
        }
        _ => return None,
    };
    Some(plan)
}

/// `e^{c+z} sin(10 z)`.
fn oscillator_integrand(c: i64) -> IntegrandFn {
    Box::new(move |z, _, p| {
        let shift = ComplexBox::from_i64(c);
        let osc = z.scale(&RealBall::from_i64(10), p).sin(p);
        shift.add(z, p).exp(p).mul(&osc, p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_covers_every_listed_case() {
        let p = Precision::new(32);
        for id in ALL_CASES {
            let plan = plan(id, p).expect(id);
            assert_eq!(plan.id, id);
            assert!(plan.opts.validate().is_ok(), "{id}");
        }
        assert!(plan("I3", p).is_none());
        assert!(plan("", p).is_none());
    }

    #[test]
    fn truncation_lengths_match_hand_values() {
        assert_eq!(sech_cutoff(Precision::new(64)), 46);
        assert_eq!(gauss_cutoff(Precision::new(64)), 10);
        assert_eq!(gauss_cutoff(Precision::new(333)), 16);
    }

    #[test]
    fn integrands_enclose_spot_values() {
        let p = Precision::new(128);
        let z = ComplexBox::from_real(RealBall::from_f64(0.5));
        let atan_kernel = plan("I0", p).unwrap();
        let v = (atan_kernel.integrand)(&z, false, p);
        let four_fifths = Float::with_val(256, 4) / 5;
        assert!(v.re().contains_point(&four_fifths));
        let staircase = plan("D1", p).unwrap();
        let v = (staircase.integrand)(&z, false, p);
        assert!(v.re().contains_point(&Float::with_val(64, 1)));
    }
}
