//! Adaptive rigorous integration along straight-line complex paths.
//!
//! The integral over `[alpha, beta]` is processed as a work queue of
//! subintervals. Each popped subinterval is either
//!
//! 1. accepted outright when its *direct enclosure* (interval width times an
//!    evaluation of the integrand on the hull of the endpoints) is already
//!    tight enough, when its endpoints have collapsed, or when the
//!    evaluation budget is spent (then flagged as unconverged);
//! 2. dispatched by Gauss-Legendre quadrature when a Bernstein-ellipse
//!    search certifies, from ball evaluations of the integrand alone, an
//!    error bound below the tolerance; or
//! 3. bisected at the exact midpoint, the halves re-queued.
//!
//! Every accepted piece is a valid enclosure no matter which path produced
//! it, so the final sum is one too: tolerances and limits tune tightness and
//! cost, never correctness.

use crate::complex::ComplexBox;
use crate::error::Error;
use crate::gauss::{allowed_degrees, RuleCache};
use crate::mag::{Mag, MAG_PREC};
use crate::prec::Precision;
use crate::real::RealBall;
use rug::float::Round;
use rug::Float;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// The integrand: evaluated on complex boxes at a requested precision.
///
/// When `analytic` is true the evaluation must yield a finite box **only if**
/// the function is analytic on the whole input box; returning an
/// indeterminate box is always allowed. Plain compositions of entire/ball
/// operations satisfy this automatically (their singularities surface as
/// indeterminate arithmetic); piecewise extensions (see [`crate::piecewise`])
/// consult the flag explicitly.
pub trait Integrand {
    fn eval(&self, z: &ComplexBox, analytic: bool, prec: Precision) -> ComplexBox;
}

impl<F> Integrand for F
where
    F: Fn(&ComplexBox, bool, Precision) -> ComplexBox,
{
    fn eval(&self, z: &ComplexBox, analytic: bool, prec: Precision) -> ComplexBox {
        self(z, analytic, prec)
    }
}

/// Knobs for one integration. Defaults follow the working precision.
#[derive(Clone, Debug)]
pub struct IntegrationOptions {
    pub prec: Precision,
    /// Absolute tolerance (a goal, not a promise).
    pub abs_tol: Mag,
    /// Relative tolerance, applied to magnitude lower bounds of accepted
    /// enclosures as they accumulate.
    pub rel_tol: Mag,
    /// Largest Gauss-Legendre degree the ellipse search may select.
    pub deg_limit: u32,
    /// Soft cap on integrand evaluations; once spent, remaining subintervals
    /// are finalized with their direct enclosures and the result is flagged
    /// unconverged.
    pub eval_limit: u64,
    /// Work queue capacity; a push beyond it force-finalizes the incoming
    /// subinterval (unconverged result).
    pub depth_limit: u32,
    /// Pop the globally largest estimated error first instead of LIFO order.
    pub use_heap: bool,
    /// Per-subinterval trace on stderr.
    pub verbose: bool,
}

impl IntegrationOptions {
    pub fn new(prec: Precision) -> Self {
        let p = prec.bits();
        IntegrationOptions {
            prec,
            abs_tol: Mag::two_pow(-(p as i32)),
            rel_tol: Mag::two_pow(-(p as i32)),
            deg_limit: p / 2 + 60,
            eval_limit: 1000 * p as u64 + (p as u64) * (p as u64),
            depth_limit: 2 * p,
            use_heap: false,
            verbose: false,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.deg_limit < 1 {
            return Err(Error::InvalidOptions("deg_limit must be >= 1".into()));
        }
        if self.eval_limit < 1 {
            return Err(Error::InvalidOptions("eval_limit must be >= 1".into()));
        }
        if self.depth_limit < 1 {
            return Err(Error::InvalidOptions("depth_limit must be >= 1".into()));
        }
        if !self.abs_tol.is_finite() || !self.rel_tol.is_finite() {
            return Err(Error::InvalidOptions("tolerances must be finite".into()));
        }
        Ok(())
    }
}

/// Work counters for one integration run.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegrationStats {
    /// Integrand evaluations (direct enclosures, ellipse probes, nodes).
    pub evaluations: u64,
    /// Terminal subintervals whose enclosures were summed.
    pub subintervals: u64,
    /// High-water mark of the work queue.
    pub max_queue: usize,
    /// Subintervals finalized early because the queue was full.
    pub forced: u64,
}

#[derive(Debug)]
pub struct IntegrationResult {
    /// Guaranteed enclosure of the integral.
    pub value: ComplexBox,
    /// False when an evaluation/queue limit cut adaptation short; the value
    /// is then typically wide but still an enclosure.
    pub converged: bool,
    pub stats: IntegrationStats,
}

/// A queued subinterval, carrying the direct enclosure computed when it was
/// created (one integrand evaluation each) and its radius as error estimate.
#[derive(Debug)]
pub struct SubIntervalTask {
    pub alpha: ComplexBox,
    pub beta: ComplexBox,
    pub direct: ComplexBox,
    pub est_error: Mag,
    pub depth: u32,
}

impl SubIntervalTask {
    pub fn new(alpha: ComplexBox, beta: ComplexBox, direct: ComplexBox, depth: u32) -> Self {
        let est_error = direct.rad_max();
        SubIntervalTask {
            alpha,
            beta,
            direct,
            est_error,
            depth,
        }
    }
}

impl PartialEq for SubIntervalTask {
    fn eq(&self, other: &Self) -> bool {
        self.est_error == other.est_error
    }
}

impl Eq for SubIntervalTask {}

impl PartialOrd for SubIntervalTask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubIntervalTask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est_error.cmp(&other.est_error)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueueMode {
    /// LIFO; with the larger-error half pushed last, drills depth-first.
    Stack,
    /// Max-heap on estimated error: globally worst subinterval first.
    Heap,
}

/// Bounded work queue of subintervals.
pub struct WorkQueue {
    mode: QueueMode,
    cap: usize,
    stack: Vec<SubIntervalTask>,
    heap: BinaryHeap<SubIntervalTask>,
}

impl WorkQueue {
    pub fn new(mode: QueueMode, cap: usize) -> Self {
        WorkQueue {
            mode,
            cap,
            stack: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    pub fn len(&self) -> usize {
        match self.mode {
            QueueMode::Stack => self.stack.len(),
            QueueMode::Heap => self.heap.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Push a task; a full queue rejects and returns the incoming task so
    /// the caller can finalize it.
    pub fn push(&mut self, task: SubIntervalTask) -> Option<SubIntervalTask> {
        if self.len() >= self.cap {
            return Some(task);
        }
        match self.mode {
            QueueMode::Stack => self.stack.push(task),
            QueueMode::Heap => self.heap.push(task),
        }
        None
    }

    pub fn pop(&mut self) -> Option<SubIntervalTask> {
        match self.mode {
            QueueMode::Stack => self.stack.pop(),
            QueueMode::Heap => self.heap.pop(),
        }
    }
}

/// `(beta - alpha) * f(hull(alpha, beta))`: the cheapest valid enclosure of
/// the integral over the segment. Costs exactly one integrand evaluation.
pub fn direct_enclosure<F: Integrand + ?Sized>(
    f: &F,
    alpha: &ComplexBox,
    beta: &ComplexBox,
    prec: Precision,
) -> ComplexBox {
    let hull = alpha.hull(beta, prec);
    let v = f.eval(&hull, false, prec);
    beta.sub(alpha, prec).mul(&v, prec)
}

/// Upper bound for the Gauss-Legendre tail on a Bernstein ellipse:
/// `|delta| M C(rho) rho^(-2n)` with `C(rho) = (64/15) / (1 - rho^(-2))`,
/// valid whenever the integrand is bounded by `M` on the ellipse with
/// parameter `rho > 1` (sum of semiaxes) for the degree-`n` rule.
///
/// All roundings are upward, so the return is a true bound; `rho` is taken
/// exactly as given (pass a lower bound of the intended parameter).
pub fn tail_bound(m: &Mag, rho: &Float, n: u32, delta_mag: &Mag) -> Mag {
    if !(rho.clone() > 1u32) {
        return Mag::inf();
    }
    let (inv, _) = Float::with_val_round(MAG_PREC, rho.recip_ref(), Round::Up);
    let (inv2, _) = Float::with_val_round(MAG_PREC, inv.square_ref(), Round::Up);
    let (den, _) = Float::with_val_round(MAG_PREC, 1 - &inv2, Round::Down);
    if !(den > 0u32) {
        return Mag::inf();
    }
    let (c64_15, _) = Float::with_val_round(MAG_PREC, 64f64 / 15f64, Round::Up);
    let (c, _) = Float::with_val_round(MAG_PREC, c64_15 / den, Round::Up);
    let decay = Mag::from_float_up(&inv).pow_up(2 * n);
    m.mul_up(delta_mag)
        .mul_up(&Mag::from_raw(c))
        .mul_up(&decay)
}

/// One candidate from the ellipse schedule `rho_j = 2^(j/4)`.
struct Candidate {
    /// Lower bound of `rho_j`: the parameter the tail bound is charged at.
    rho_lo: Float,
    /// Upper bounds of the ellipse semiaxes: the evaluated box covers the
    /// rectangle `[-x, x] + [-y, y] i` around the standardized interval.
    x_up: Mag,
    y_up: Mag,
}

impl Candidate {
    fn new(j: u32) -> Self {
        let quarter = Float::with_val(53, j) / 4u32;
        let (rho_lo, _) = Float::with_val_round(53, quarter.exp2_ref(), Round::Down);
        let (rho_hi, _) = Float::with_val_round(53, quarter.exp2_ref(), Round::Up);
        let (inv_up, _) = Float::with_val_round(53, rho_lo.recip_ref(), Round::Up);
        let (inv_lo, _) = Float::with_val_round(53, rho_hi.recip_ref(), Round::Down);
        let (x2, _) = Float::with_val_round(53, &rho_hi + &inv_up, Round::Up);
        let (y2, _) = Float::with_val_round(53, &rho_hi - &inv_lo, Round::Up);
        Candidate {
            rho_lo,
            x_up: Mag::from_float_up(&x2).half(),
            y_up: Mag::from_float_up(&y2).half(),
        }
    }
}

/// Largest ellipse index ever probed; the improvement-stall rule exits far
/// earlier in practice.
const MAX_RHO_INDEX: u32 = 200;

/// Midpoint and half-difference of the segment, as boxes absorbing any
/// endpoint uncertainty. Exact endpoints give exact parameters.
fn segment_params(alpha: &ComplexBox, beta: &ComplexBox) -> (ComplexBox, ComplexBox) {
    let avg = |a: &RealBall, b: &RealBall, sub: bool| -> RealBall {
        let (mid, err) = exact_affine_half(b.mid(), a.mid(), sub);
        let rad = a.rad().add_up(b.rad()).half().add_up(&err);
        RealBall::from_midrad(mid, rad)
    };
    let m = ComplexBox::new(
        avg(alpha.re(), beta.re(), false),
        avg(alpha.im(), beta.im(), false),
    );
    let d = ComplexBox::new(
        avg(alpha.re(), beta.re(), true),
        avg(alpha.im(), beta.im(), true),
    );
    (m, d)
}

/// `(b +/- a) / 2` computed exactly when feasible (error radius otherwise).
fn exact_affine_half(b: &Float, a: &Float, sub: bool) -> (Float, Mag) {
    let base = a.prec().max(b.prec());
    for extra in [8u32, 64, 512, 4096] {
        let (s, ord) = if sub {
            Float::with_val_round(base + extra, b - a, Round::Nearest)
        } else {
            Float::with_val_round(base + extra, b + a, Round::Nearest)
        };
        if ord == Ordering::Equal {
            return (s >> 1, Mag::zero());
        }
        if extra == 4096 {
            let s = s >> 1;
            let ulp = Mag::ulp_of(&s);
            return (s, ulp);
        }
    }
    unreachable!()
}

/// Exact bisection point of the segment (midpoints averaged exactly).
fn bisection_point(alpha: &ComplexBox, beta: &ComplexBox) -> ComplexBox {
    let avg = |a: &Float, b: &Float| -> RealBall {
        let (mid, err) = exact_affine_half(b, a, false);
        RealBall::from_midrad(mid, err)
    };
    ComplexBox::new(
        avg(alpha.re().mid(), beta.re().mid()),
        avg(alpha.im().mid(), beta.im().mid()),
    )
}

/// Attempt Gauss-Legendre quadrature on one subinterval.
///
/// Walks the ellipse schedule, bounding the integrand on each candidate via
/// a single `analytic = true` box evaluation; a finite bound plus the tail
/// estimate picks the cheapest allowed degree meeting `tol / 2`. Returns the
/// quadrature enclosure (node sum plus tail) or `None` when no candidate
/// qualifies within the limits — the caller then bisects.
pub fn try_gauss<F: Integrand + ?Sized>(
    f: &F,
    alpha: &ComplexBox,
    beta: &ComplexBox,
    tol: &Mag,
    opts: &IntegrationOptions,
    cache: &RuleCache,
    stats: &mut IntegrationStats,
) -> Result<Option<ComplexBox>, Error> {
    let prec = opts.prec;
    let (m, delta) = segment_params(alpha, beta);
    if !(m.is_finite() && delta.is_finite()) {
        return Ok(None);
    }
    let delta_mag = delta.magnitude_interval().1;
    let half_tol = tol.half();
    let allowed = allowed_degrees(opts.deg_limit);
    if allowed.is_empty() {
        return Ok(None);
    }

    let mut best: Option<(Candidate, u32, Mag)> = None;
    let mut stall = 0u32;
    for j in 1..=MAX_RHO_INDEX {
        if stats.evaluations >= opts.eval_limit {
            break;
        }
        let cand = Candidate::new(j);
        let rect = ComplexBox::new(
            RealBall::from_midrad(Float::with_val(MAG_PREC, 0), cand.x_up.clone()),
            RealBall::from_midrad(Float::with_val(MAG_PREC, 0), cand.y_up.clone()),
        );
        let bx = m.add(&delta.mul(&rect, prec), prec);
        let v = f.eval(&bx, true, prec);
        stats.evaluations += 1;
        if !v.is_finite() {
            // The integrand just proved it cannot be bounded here; larger
            // ellipses only contain this one.
            break;
        }
        let bound = v.magnitude_interval().1;
        let pick = allowed
            .iter()
            .copied()
            .find(|&n| tail_bound(&bound, &cand.rho_lo, n, &delta_mag) <= half_tol);
        let improved = match (&pick, &best) {
            (Some(_), None) => true,
            (Some(n), Some((_, bn, _))) => n < bn,
            _ => false,
        };
        if improved {
            best = Some((cand, pick.unwrap(), bound));
            stall = 0;
        } else if best.is_some() {
            // Only a qualifying candidate arms the stall rule: before one
            // exists, a small ellipse failing to qualify says nothing about
            // larger ones (the required degree drops as rho grows).
            stall += 1;
            if stall >= 2 {
                break;
            }
        }
    }

    let Some((cand, n, bound)) = best else {
        return Ok(None);
    };
    if stats.evaluations.saturating_add(n as u64) > opts.eval_limit {
        return Ok(None);
    }
    let rule = cache.get_rule(n, prec)?;
    // The node map and summation run above the target precision so their
    // rounding stays below the tail term even on long segments.
    let sprec = prec.plus(16);
    let mut acc = ComplexBox::zero();
    for k in 0..n as usize {
        let z = m.add(&delta.scale(&rule.nodes()[k], sprec), sprec);
        let v = f.eval(&z, false, sprec);
        stats.evaluations += 1;
        if !v.is_finite() {
            return Ok(None);
        }
        acc = acc.add(&v.scale(&rule.weights()[k], sprec), sprec);
    }
    let jval = delta.mul(&acc, sprec);
    let tail = tail_bound(&bound, &cand.rho_lo, n, &delta_mag);
    let re = RealBall::from_midrad(jval.re().mid().clone(), jval.re().rad().add_up(&tail));
    let im = RealBall::from_midrad(jval.im().mid().clone(), jval.im().rad().add_up(&tail));
    Ok(Some(ComplexBox::new(re, im).round_to(prec)))
}

/// Integrate `f` along the straight segment from `a` to `b`.
///
/// The returned enclosure is valid for every choice of endpoints within the
/// endpoint boxes. Errors are reserved for invalid options and for the
/// (precision-starved) failure to certify a needed quadrature rule;
/// non-convergence is reported through [`IntegrationResult::converged`],
/// never as an error.
pub fn integrate<F: Integrand + ?Sized>(
    f: &F,
    a: &ComplexBox,
    b: &ComplexBox,
    opts: &IntegrationOptions,
    cache: &RuleCache,
) -> Result<IntegrationResult, Error> {
    opts.validate()?;
    let prec = opts.prec;
    let mut stats = IntegrationStats::default();

    // A path of exactly zero length integrates to zero, whatever f does.
    let diff = b.sub(a, prec.plus(8));
    if diff.re().is_exact_zero() && diff.im().is_exact_zero() {
        return Ok(IntegrationResult {
            value: ComplexBox::zero(),
            converged: true,
            stats,
        });
    }

    let mode = if opts.use_heap {
        QueueMode::Heap
    } else {
        QueueMode::Stack
    };
    let mut queue = WorkQueue::new(mode, opts.depth_limit as usize);
    let mut sum = ComplexBox::zero();
    let mut converged = true;
    let mut scale_lo = Mag::zero();

    let root_direct = direct_enclosure(f, a, b, prec);
    stats.evaluations += 1;
    if let Some(rejected) = queue.push(SubIntervalTask::new(a.clone(), b.clone(), root_direct, 0))
    {
        // Queue capacity zero is rejected by validate(); keep the compiler
        // and the invariant honest anyway.
        stats.forced += 1;
        stats.subintervals += 1;
        return Ok(IntegrationResult {
            value: rejected.direct,
            converged: false,
            stats,
        });
    }
    stats.max_queue = stats.max_queue.max(queue.len());

    let accept = |enclosure: &ComplexBox,
                      sum: &mut ComplexBox,
                      scale_lo: &mut Mag,
                      stats: &mut IntegrationStats| {
        *sum = sum.add(enclosure, prec);
        stats.subintervals += 1;
        *scale_lo = scale_lo
            .maximum(&enclosure.magnitude_interval().0)
            .maximum(&sum.magnitude_interval().0);
    };

    while let Some(task) = queue.pop() {
        let tol = opts.abs_tol.maximum(&opts.rel_tol.mul_down(&scale_lo));
        let budget_spent = stats.evaluations >= opts.eval_limit;
        let tight = task.est_error <= tol;
        let collapsed = task.alpha.overlaps(&task.beta);
        if tight || collapsed || budget_spent {
            if budget_spent && !tight && !collapsed {
                converged = false;
            }
            if opts.verbose {
                trace(&task, "accept direct", &tol);
            }
            accept(&task.direct, &mut sum, &mut scale_lo, &mut stats);
            continue;
        }

        if let Some(j) = try_gauss(f, &task.alpha, &task.beta, &tol, opts, cache, &mut stats)? {
            if opts.verbose {
                trace(&task, "gauss", &tol);
            }
            accept(&j, &mut sum, &mut scale_lo, &mut stats);
            continue;
        }

        if opts.verbose {
            trace(&task, "bisect", &tol);
        }
        let mid = bisection_point(&task.alpha, &task.beta);
        let dl = direct_enclosure(f, &task.alpha, &mid, prec);
        let dr = direct_enclosure(f, &mid, &task.beta, prec);
        stats.evaluations += 2;
        let depth = task.depth + 1;
        let left = SubIntervalTask::new(task.alpha, mid.clone(), dl, depth);
        let right = SubIntervalTask::new(mid, task.beta, dr, depth);
        let (first, second) = if left.est_error <= right.est_error {
            (left, right)
        } else {
            (right, left)
        };
        for t in [first, second] {
            if let Some(rejected) = queue.push(t) {
                converged = false;
                stats.forced += 1;
                if opts.verbose {
                    trace(&rejected, "forced (queue full)", &tol);
                }
                accept(&rejected.direct, &mut sum, &mut scale_lo, &mut stats);
            }
        }
        stats.max_queue = stats.max_queue.max(queue.len());
    }

    Ok(IntegrationResult {
        value: sum.round_to(prec),
        converged,
        stats,
    })
}

fn trace(task: &SubIntervalTask, action: &str, tol: &Mag) {
    let (ar, ai) = task.alpha.midpoint();
    let (br, bi) = task.beta.midpoint();
    eprintln!(
        "ballquad: depth {:3} [{:e}]..[{:e}] est {} tol {} -> {}",
        task.depth,
        ComplexF64 { re: ar, im: ai },
        ComplexF64 { re: br, im: bi },
        task.est_error,
        tol,
        action
    );
}

struct ComplexF64 {
    re: f64,
    im: f64,
}

impl std::fmt::LowerExp for ComplexF64 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im == 0.0 {
            write!(f, "{:.6e}", self.re)
        } else {
            write!(f, "{:.6e}{:+.6e}i", self.re, self.im)
        }
    }
}
