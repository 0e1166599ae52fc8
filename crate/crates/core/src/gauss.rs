//! Certified Gauss-Legendre quadrature rules.
//!
//! Nodes are approximated by Newton refinement at doubling precision from
//! Chebyshev initial guesses, then *certified* by an interval Newton step:
//! for the candidate interval `X` around an approximation `x`, if
//! `N(X) = x - P(x)/P'(X)` lands inside `X`, then `X` (indeed `N(X)`)
//! contains exactly one true root. Nodes and weights are stored as balls, so
//! quadrature sums inherit the containment guarantee no matter how the rule
//! was computed.
//!
//! Degrees are restricted to a geometrically sparse sequence so that the
//! cache stays small while degree adaptation loses at most a factor ~sqrt(2).

use crate::error::Error;
use crate::mag::Mag;
use crate::prec::Precision;
use crate::real::RealBall;
use rug::Float;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

/// The degrees the integrator is allowed to use: `1, 2, 3, 5, 8, 12, 17,
/// 25, ...`, each next degree `ceil(sqrt(2) * previous)`, up to `n_max`.
pub fn allowed_degrees(n_max: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut t: u32 = 1;
    while t <= n_max {
        out.push(t);
        let next = ((t as f64) * std::f64::consts::SQRT_2).ceil() as u32;
        debug_assert!(next > t);
        t = next;
    }
    out
}

/// `(P_n(x), P_n'(x))` as balls, by the three-term recurrence.
pub fn legendre_eval(n: u32, x: &RealBall, prec: Precision) -> (RealBall, RealBall) {
    let one = RealBall::from_i64(1);
    if n == 0 {
        return (one, RealBall::zero());
    }
    let mut p_prev = one; // P_0
    let mut p_cur = x.clone(); // P_1
    let mut d_prev = RealBall::zero(); // P_0'
    let mut d_cur = RealBall::from_i64(1); // P_1'
    for k in 2..=n {
        // k P_k = (2k-1) x P_{k-1} - (k-1) P_{k-2}
        let t = x
            .mul(&p_cur, prec)
            .mul(&RealBall::from_i64(2 * k as i64 - 1), prec)
            .sub(&p_prev.mul(&RealBall::from_i64(k as i64 - 1), prec), prec)
            .div(&RealBall::from_i64(k as i64), prec);
        // P_k' = P_{k-2}' + (2k-1) P_{k-1}
        let d = d_prev.add(
            &p_cur.mul(&RealBall::from_i64(2 * k as i64 - 1), prec),
            prec,
        );
        p_prev = p_cur;
        p_cur = t;
        d_prev = d_cur;
        d_cur = d;
    }
    (p_cur, d_cur)
}

/// The same ball with `extra` added to its radius.
fn widen_by(b: &RealBall, extra: &Mag) -> RealBall {
    RealBall::from_midrad(b.mid().clone(), b.rad().add_up(extra))
}

/// `(P_n(x), P_n'(x))` as plain floats (Newton iteration workhorse).
fn legendre_eval_float(n: u32, x: &Float, wp: u32) -> (Float, Float) {
    let mut p_prev = Float::with_val(wp, 1);
    let mut p_cur = Float::with_val(wp, x);
    let mut d_prev = Float::with_val(wp, 0);
    let mut d_cur = Float::with_val(wp, 1);
    if n == 0 {
        return (p_prev, d_prev);
    }
    for k in 2..=n {
        let mut t = Float::with_val(wp, &p_cur * x);
        t *= 2 * k - 1;
        let mut s = Float::with_val(wp, &p_prev * (k - 1));
        t -= &s;
        t /= k;
        s = Float::with_val(wp, &p_cur * (2 * k - 1));
        s += &d_prev;
        p_prev = p_cur;
        p_cur = t;
        d_prev = d_cur;
        d_cur = s;
    }
    (p_cur, d_cur)
}

/// A degree-`n` Gauss-Legendre rule on `[-1, 1]` with certified node and
/// weight enclosures, valid at any working precision up to [`Self::prec`].
#[derive(Debug)]
pub struct QuadratureRule {
    degree: u32,
    prec: Precision,
    nodes: Vec<RealBall>,
    weights: Vec<RealBall>,
    newton_certifications: u32,
}

impl QuadratureRule {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn prec(&self) -> Precision {
        self.prec
    }

    /// Nodes in strictly increasing order.
    pub fn nodes(&self) -> &[RealBall] {
        &self.nodes
    }

    pub fn weights(&self) -> &[RealBall] {
        &self.weights
    }

    /// Number of interval Newton certifications performed while computing
    /// this rule (the zero node of odd degrees is exact by symmetry and
    /// needs none).
    pub fn newton_certifications(&self) -> u32 {
        self.newton_certifications
    }
}

/// Compute a certified rule of exact degree `n` usable at precision `prec`.
pub fn compute_rule(n: u32, prec: Precision) -> Result<QuadratureRule, Error> {
    assert!(n >= 1, "degree must be at least 1");
    // Ball evaluation of the three-term recurrence loses ~1.3 bits per
    // degree (the radii cannot cancel), so the working margin must scale
    // with n or certification fails spuriously.
    let extra = 48 + 2 * n;
    let mut attempt = 0u32;
    loop {
        let wp = prec.plus(extra << attempt);
        match try_compute_rule(n, prec, wp) {
            Ok(rule) => return Ok(rule),
            Err(e) if attempt >= 2 => return Err(e),
            Err(_) => attempt += 1,
        }
    }
}

fn try_compute_rule(n: u32, prec: Precision, wp: Precision) -> Result<QuadratureRule, Error> {
    let wb = wp.bits();
    let half = (n / 2) as usize;
    // Small enough that [x +/- cert_rad] stays inside (-1, 1) even next to
    // the outermost root (1 - x_0 ~ 2.9/n^2), which the Markov widening
    // below requires.
    let cert_rad = Mag::two_pow(-((prec.bits() as i32) + 8).max(40));
    // sup |P_n''| <= n^2 (n^2 - 1)/3 <= n^4 on [-1, 1]: turns a point
    // evaluation of P_n' into an interval one without the exponential
    // radius growth of running the recurrence on a wide input.
    let m2 = Mag::from_f64_up((n as f64).powi(4));
    // Storage precision for nodes and weights. The weight error inherits a
    // factor ~n^4 / |P_n'(x_k)| ~ n^3.5 from the Markov widening, so burn
    // 4 log2(n) extra stored bits to keep weights accurate to ~prec + 16.
    let store = prec.plus(16 + 4 * (32 - n.leading_zeros()));
    let cert_err = |k: usize| Error::Certification {
        degree: n,
        node: k as u32,
    };
    let mut pos_nodes: Vec<RealBall> = Vec::with_capacity(half);
    let mut pos_weights: Vec<RealBall> = Vec::with_capacity(half);
    let mut certs = 0u32;

    for k in 0..half {
        // Chebyshev-flavored initial guess for the k-th largest root.
        let theta = std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5);
        let mut x = Float::with_val(64, theta.cos());
        // Newton at doubling precision.
        let mut lvl: u32 = 64;
        loop {
            let steps = if lvl == 64 { 5 } else { 2 };
            for _ in 0..steps {
                let (p, d) = legendre_eval_float(n, &x, lvl);
                let dx = p / d;
                x -= dx;
            }
            if lvl >= wb {
                break;
            }
            lvl = (lvl * 2).min(wb.max(lvl + 1));
            x = Float::with_val(lvl, &x);
        }
        // Interval Newton certification around the approximation:
        // N(X) = x - P(x)/P'(X) inside X proves a unique root in N(X).
        let xhat = RealBall::from_float(x.clone());
        let wide = RealBall::from_midrad(x.clone(), cert_rad.clone());
        if !(wide.upper_bound() < 1u32 && wide.lower_bound() > -1i32) {
            return Err(cert_err(k));
        }
        let (pv, dv_point) = legendre_eval(n, &xhat, wp);
        let dv = widen_by(&dv_point, &m2.mul_up(&cert_rad));
        let refined = xhat.sub(&pv.div(&dv, wp), wp);
        if !wide.contains_ball(&refined) {
            return Err(cert_err(k));
        }
        certs += 1;
        let node = refined.round_to(store);
        // w = 2 / ((1 - x^2) P_n'(x)^2) over the certified enclosure, with
        // P_n' again evaluated at the midpoint and Markov-widened.
        let (_, dn_point) = legendre_eval(n, &RealBall::from_float(node.mid().clone()), wp);
        let dn = widen_by(&dn_point, &m2.mul_up(node.rad()));
        let one = RealBall::from_i64(1);
        let w = RealBall::from_i64(2)
            .div(
                &one.sub(&node.mul(&node, wp), wp).mul(&dn.mul(&dn, wp), wp),
                wp,
            )
            .round_to(store);
        if !(node.is_finite() && w.is_finite()) {
            return Err(cert_err(k));
        }
        pos_nodes.push(node);
        pos_weights.push(w);
    }

    let mut nodes = Vec::with_capacity(n as usize);
    let mut weights = Vec::with_capacity(n as usize);
    for k in 0..half {
        nodes.push(pos_nodes[k].neg());
        weights.push(pos_weights[k].clone());
    }
    if n % 2 == 1 {
        // The middle node is exactly zero by symmetry.
        let zero = RealBall::zero();
        let (_, d0) = legendre_eval(n, &zero, wp);
        let w0 = RealBall::from_i64(2)
            .div(&d0.mul(&d0, wp), wp)
            .round_to(store);
        nodes.push(zero);
        weights.push(w0);
    }
    for k in (0..half).rev() {
        nodes.push(pos_nodes[k].clone());
        weights.push(pos_weights[k].clone());
    }

    Ok(QuadratureRule {
        degree: n,
        prec,
        nodes,
        weights,
        newton_certifications: certs,
    })
}

/// Cumulative cache counters (monotone over the cache's lifetime).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RuleCacheStats {
    pub hits: u64,
    pub misses: u64,
    pub rules_computed: u64,
    pub nodes_certified: u64,
}

/// Thread-safe cache of quadrature rules, keyed by degree.
///
/// A stored rule computed at precision `q` serves any request at precision
/// `p <= q` (its enclosures are simply reused); a request at higher precision
/// recomputes and replaces the entry, so the highest precision wins.
#[derive(Default)]
pub struct RuleCache {
    rules: Mutex<HashMap<u32, Arc<QuadratureRule>>>,
    hits: AtomicU64,
    misses: AtomicU64,
    computed: AtomicU64,
    certified: AtomicU64,
}

impl RuleCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> RuleCacheStats {
        RuleCacheStats {
            hits: self.hits.load(AtomicOrdering::Relaxed),
            misses: self.misses.load(AtomicOrdering::Relaxed),
            rules_computed: self.computed.load(AtomicOrdering::Relaxed),
            nodes_certified: self.certified.load(AtomicOrdering::Relaxed),
        }
    }

    /// Fetch (or compute and insert) the degree-`n` rule for precision `prec`.
    pub fn get_rule(&self, n: u32, prec: Precision) -> Result<Arc<QuadratureRule>, Error> {
        {
            let rules = self.rules.lock().unwrap();
            if let Some(rule) = rules.get(&n) {
                if rule.prec() >= prec {
                    self.hits.fetch_add(1, AtomicOrdering::Relaxed);
                    return Ok(rule.clone());
                }
            }
        }
        self.misses.fetch_add(1, AtomicOrdering::Relaxed);
        let rule = Arc::new(compute_rule(n, prec)?);
        self.computed.fetch_add(1, AtomicOrdering::Relaxed);
        self.certified.fetch_add(
            rule.newton_certifications() as u64,
            AtomicOrdering::Relaxed,
        );
        let mut rules = self.rules.lock().unwrap();
        match rules.get(&n) {
            // Lost a race to an even better rule: serve that one.
            Some(existing) if existing.prec() >= rule.prec() => Ok(existing.clone()),
            _ => {
                rules.insert(n, rule.clone());
                Ok(rule)
            }
        }
    }
}
