//! Sequential case execution with optional reference verification.

use std::time::Instant;

use ballquad::{integrate, ComplexBox, Mag, Precision, RuleCache};

use crate::cases::{self, CasePlan, Reference};

/// User-level knobs layered over each case's own defaults.
#[derive(Clone, Debug)]
pub struct Overrides {
    pub abs_tol: Option<Mag>,
    pub rel_tol: Option<Mag>,
    pub deg_limit: Option<u32>,
    pub eval_limit: Option<u64>,
    pub depth_limit: Option<u32>,
    pub use_heap: bool,
    pub verify: bool,
}

impl Default for Overrides {
    fn default() -> Self {
        Overrides {
            abs_tol: None,
            rel_tol: None,
            deg_limit: None,
            eval_limit: None,
            depth_limit: None,
            use_heap: false,
            verify: true,
        }
    }
}

/// Outcome of one (case, precision) run.
pub struct CaseReport {
    pub id: &'static str,
    pub prec: u32,
    pub value: ComplexBox,
    pub converged: bool,
    pub evaluations: u64,
    pub subintervals: u64,
    pub ms: f64,
    /// `None` when verification was not requested.
    pub verified: Option<bool>,
}

fn apply_overrides(plan: &mut CasePlan, ov: &Overrides) {
    if let Some(m) = &ov.abs_tol {
        plan.opts.abs_tol = m.clone();
    }
    if let Some(m) = &ov.rel_tol {
        plan.opts.rel_tol = m.clone();
    }
    if let Some(n) = ov.deg_limit {
        plan.opts.deg_limit = n;
    }
    if let Some(n) = ov.eval_limit {
        plan.opts.eval_limit = n;
    }
    if let Some(n) = ov.depth_limit {
        plan.opts.depth_limit = n;
    }
    if ov.use_heap {
        plan.opts.use_heap = true;
    }
}

/// Run one case at one precision, verifying against its reference unless
/// disabled.
pub fn run_case(
    id: &str,
    prec: u32,
    ov: &Overrides,
    cache: &RuleCache,
) -> Result<CaseReport, String> {
    if prec < 2 {
        return Err(format!("precision {prec} is below the minimum of 2"));
    }
    let p = Precision::new(prec);
    let mut plan = cases::plan(id, p).ok_or_else(|| format!("unknown case id: {id}"))?;
    apply_overrides(&mut plan, ov);
    let start = Instant::now();
    let res = integrate(&plan.integrand, &plan.a, &plan.b, &plan.opts, cache)
        .map_err(|e| format!("{id}: {e}"))?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let verified = if ov.verify {
        Some(check(&plan, &res.value, cache))
    } else {
        None
    };
    Ok(CaseReport {
        id: plan.id,
        prec,
        value: res.value,
        converged: res.converged,
        evaluations: res.stats.evaluations,
        subintervals: res.stats.subintervals,
        ms,
        verified,
    })
}

/// An enclosure passes when it overlaps the reference enclosure: both
/// contain the true value, so disjointness proves a bug somewhere.
fn check(plan: &CasePlan, value: &ComplexBox, cache: &RuleCache) -> bool {
    match &plan.reference {
        Reference::Real(r) => value.overlaps(&ComplexBox::from_real(r.clone())),
        Reference::Complex(c) => value.overlaps(c),
        Reference::SelfCheck => {
            let doubled = Precision::new(plan.opts.prec.bits() * 2);
            match cases::plan(plan.id, doubled) {
                Some(again) => {
                    match integrate(&again.integrand, &again.a, &again.b, &again.opts, cache) {
                        Ok(res) => value.overlaps(&res.value),
                        Err(_) => false,
                    }
                }
                None => false,
            }
        }
    }
}
