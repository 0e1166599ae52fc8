//! Command-line benchmark driver.

use std::process::ExitCode;

use ballquad::{Mag, RuleCache};
use clap::Parser;

use ballquad_cli::cases::ALL_CASES;
use ballquad_cli::runner::{self, CaseReport, Overrides};

#[derive(Parser)]
#[command(
    name = "ballquad",
    version,
    about = "Rigorous integration benchmark driver: every result is a verified enclosure",
    after_help = "Cases: I0 I1 I2 I4 I5 (smooth/oscillatory), E0 E1 E2 E3 E4 (endpoint \
                  singularities and truncated infinite tails), D0 D1 D2 D3 (piecewise), \
                  X-neg X-pos (extreme scale)."
)]
struct Args {
    /// Comma-separated case ids (default: all cases).
    #[arg(long, value_delimiter = ',')]
    cases: Vec<String>,

    /// Comma-separated working precisions in bits.
    #[arg(long, value_delimiter = ',', default_value = "64")]
    prec: Vec<u32>,

    /// Absolute tolerance: a decimal like 1e-30, or 2^-k.
    #[arg(long)]
    abs_tol: Option<String>,

    /// Relative tolerance: a decimal like 1e-30, or 2^-k.
    #[arg(long)]
    rel_tol: Option<String>,

    /// Highest quadrature degree the ellipse search may select.
    #[arg(long)]
    deg_limit: Option<u32>,

    /// Integrand evaluation budget per run.
    #[arg(long)]
    eval_limit: Option<u64>,

    /// Work-queue capacity (bisection depth bound).
    #[arg(long)]
    depth_limit: Option<u32>,

    /// Pop the largest-error interval first instead of depth-first order.
    #[arg(long)]
    heap: bool,

    /// Emit one JSON object per run instead of human-readable lines.
    #[arg(long)]
    json: bool,

    /// Check each enclosure against its reference oracle.
    #[arg(
        long,
        num_args = 0..=1,
        default_value_t = true,
        default_missing_value = "true",
        action = clap::ArgAction::Set
    )]
    verify: bool,
}

fn parse_tol(s: &str) -> Result<Mag, String> {
    if let Some(rest) = s.strip_prefix("2^") {
        let e: i32 = rest
            .parse()
            .map_err(|_| format!("bad exponent in tolerance `{s}`"))?;
        return Ok(Mag::two_pow(e));
    }
    match Mag::parse_up(s) {
        Some(m) if m.is_finite() => Ok(m),
        _ => Err(format!("cannot parse tolerance `{s}`")),
    }
}

fn emit_human(rep: &CaseReport) {
    let mut line = format!(
        "{:<6} p={:<4} {}  evals={} subs={} time={:.3}ms",
        rep.id, rep.prec, rep.value, rep.evaluations, rep.subintervals, rep.ms
    );
    if !rep.converged {
        line.push_str(" UNCONVERGED");
    }
    match rep.verified {
        Some(true) => line.push_str(" verify=ok"),
        Some(false) => line.push_str(" verify=FAIL"),
        None => {}
    }
    println!("{line}");
}

fn emit_json(rep: &CaseReport) {
    let mut obj = serde_json::json!({
        "id": rep.id,
        "prec": rep.prec,
        "value": rep.value.to_string(),
        "rad": rep.value.rad_max().to_string(),
        "converged": rep.converged,
        "evals": rep.evaluations,
        "subs": rep.subintervals,
        "ms": (rep.ms * 1000.0).round() / 1000.0,
    });
    if let Some(v) = rep.verified {
        obj["verified"] = serde_json::Value::Bool(v);
    }
    println!("{obj}");
}

fn main() -> ExitCode {
    let args = Args::parse();
    let ids: Vec<String> = if args.cases.is_empty() {
        ALL_CASES.iter().map(|s| s.to_string()).collect()
    } else {
        args.cases.clone()
    };
    for id in &ids {
        if !ALL_CASES.contains(&id.as_str()) {
            eprintln!("unknown case id `{id}`; known: {}", ALL_CASES.join(","));
            return ExitCode::from(2);
        }
    }
    let (abs_tol, rel_tol) = match (
        args.abs_tol.as_deref().map(parse_tol).transpose(),
        args.rel_tol.as_deref().map(parse_tol).transpose(),
    ) {
        (Ok(a), Ok(r)) => (a, r),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let ov = Overrides {
        abs_tol,
        rel_tol,
        deg_limit: args.deg_limit,
        eval_limit: args.eval_limit,
        depth_limit: args.depth_limit,
        use_heap: args.heap,
        verify: args.verify,
    };
    let cache = RuleCache::new();
    let mut all_ok = true;
    for id in &ids {
        for &pr in &args.prec {
            match runner::run_case(id, pr, &ov, &cache) {
                Ok(rep) => {
                    if args.json {
                        emit_json(&rep);
                    } else {
                        emit_human(&rep);
                    }
                    if rep.verified == Some(false) {
                        all_ok = false;
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    all_ok = false;
                }
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
