//! Command implementations for the `adenewton` binary, kept as a library
//! so the integration tests can drive them in-process.

pub mod config;
pub mod parse;
pub mod reports;

use adenewton_core::ade::{Ade, CutChain};
use adenewton_core::dominant::EConstraint;
use adenewton_core::newton;
use adenewton_core::series::{check_asymptotic, check_small_derivation};
use adenewton_core::solver::{self, BranchStatus};
use adenewton_core::valgroup::GroupElement;
use adenewton_core::{parse_rat, rat_str, Error};

use config::{Config, Format};

pub enum Command {
    Analyze {
        equation: String,
    },
    Solve {
        equation: String,
        target: Option<String>,
        branch_bound: Option<usize>,
        depth: Option<usize>,
    },
    Equalizer {
        p: String,
        q: String,
    },
    Diagram {
        poly: String,
        constraint: Option<String>,
    },
    CheckField {
        samples: usize,
    },
    ChainDdeg {
        poly: String,
        chain: String,
    },
}

/// Runs a command; returns the exit code and the rendered report.
/// Exit codes: 0 success, 2 when the outcome is stuck-only, 1 for errors
/// (errors surface as `Err`).
pub fn run(cmd: &Command, cfg: &Config) -> Result<(i32, String), Error> {
    match cmd {
        Command::Analyze { equation } => analyze(equation, cfg),
        Command::Solve {
            equation,
            target,
            branch_bound,
            depth,
        } => solve(equation, target.as_deref(), *branch_bound, *depth, cfg),
        Command::Equalizer { p, q } => equalizer(p, q, cfg),
        Command::Diagram { poly, constraint } => diagram(poly, constraint.as_deref(), cfg),
        Command::CheckField { samples } => check_field(*samples, cfg),
        Command::ChainDdeg { poly, chain } => chain_ddeg(poly, chain, cfg),
    }
}

fn parse_constraint_opt(src: Option<&str>, cfg: &Config) -> Result<EConstraint, Error> {
    match src {
        None => Ok(EConstraint::All),
        Some(s) => {
            let t = s.trim();
            if t == "all" || t == "K*" || t == "K^*" {
                Ok(EConstraint::All)
            } else {
                let spelled = if t.starts_with('Y') {
                    t.to_string()
                } else {
                    format!("Y {t}")
                };
                parse::parse_constraint(&spelled, cfg.preset, cfg.max_order)
            }
        }
    }
}

fn analyze(equation: &str, cfg: &Config) -> Result<(i32, String), Error> {
    let (poly, constraint) = parse::parse_ade(equation, cfg.preset, cfg.max_order)?;
    let eq = Ade::new(poly, constraint);
    let complexity = eq.poly.complexity()?;
    let ddeg = eq.ddeg()?;
    let en = eq.enumerate_approx_solutions(1)?;
    let unravelled = if ddeg >= 1 {
        Some(eq.is_unravelled()?.unravelled)
    } else {
        None
    };
    let unravel = if ddeg >= 1 {
        Some(reports::UnravelSummary::from_outcome(&eq.unravel(cfg.depth)?))
    } else {
        None
    };
    let report = reports::AnalyzeReport {
        preset: cfg.preset.name().to_string(),
        equation: format!("{} = 0 where {}", eq.poly, eq.constraint),
        complexity: (complexity.order, complexity.top_degree, complexity.degree),
        mul: eq.poly.mul_at_zero()?,
        ddeg,
        quasilinear: ddeg == 1,
        unravelled,
        starting_monomials: newton::algebraic_starting_monomials(&eq.poly, &eq.constraint)?
            .iter()
            .map(|e| format!("t^({})", rat_str(e)))
            .collect(),
        approximate_solutions: en
            .solutions
            .iter()
            .map(|a| reports::ApproxEntry {
                monomial: format!("t^({})", rat_str(&a.exponent)),
                root: a.root.to_string(),
                multiplicity: a.multiplicity,
            })
            .collect(),
        obstructions: en
            .obstructions
            .iter()
            .map(|o| format!("t^({}): {}", rat_str(&o.exponent), o.reason))
            .collect(),
        unravel,
    };
    let out = match cfg.format {
        Format::Json => reports::to_json(&report),
        Format::Text => reports::analyze_text(&report),
    };
    Ok((0, out))
}

fn solve(
    equation: &str,
    target: Option<&str>,
    branch_bound: Option<usize>,
    depth: Option<usize>,
    cfg: &Config,
) -> Result<(i32, String), Error> {
    let (poly, constraint) = parse::parse_ade(equation, cfg.preset, cfg.max_order)?;
    let eq = Ade::new(poly, constraint);
    let target = match target {
        Some(t) => parse_rat(t)?,
        None => cfg.default_target.clone(),
    };
    let target = GroupElement::rank1(target);
    let branches = solver::solve(
        &eq,
        &target,
        branch_bound.unwrap_or(cfg.branch_bound),
        depth.unwrap_or(cfg.depth),
    )?;
    let solved = branches.iter().any(|b| !is_stuck(b.status));
    let report = reports::SolveReport {
        preset: cfg.preset.name().to_string(),
        equation: format!("{} = 0 where {}", eq.poly, eq.constraint),
        target: target.to_string(),
        branches: branches.iter().map(reports::BranchReport::from_branch).collect(),
    };
    let out = match cfg.format {
        Format::Json => reports::to_json(&report),
        Format::Text => reports::solve_text(&report),
    };
    let code = if solved { 0 } else { 2 };
    Ok((code, out))
}

fn equalizer(p: &str, q: &str, cfg: &Config) -> Result<(i32, String), Error> {
    let pp = parse::parse_poly(p, cfg.preset, cfg.max_order)?;
    let qq = parse::parse_poly(q, cfg.preset, cfg.max_order)?;
    let e = newton::equalizer(&pp, &qq)?;
    let expo = e.as_rat()?.clone();
    let report = reports::EqualizerReport {
        preset: cfg.preset.name().to_string(),
        p: pp.to_string(),
        q: qq.to_string(),
        exponent: rat_str(&expo),
        monomial: format!("t^({})", rat_str(&expo)),
    };
    let out = match cfg.format {
        Format::Json => reports::to_json(&report),
        Format::Text => reports::equalizer_text(&report),
    };
    Ok((0, out))
}

fn diagram(poly: &str, constraint: Option<&str>, cfg: &Config) -> Result<(i32, String), Error> {
    let p = parse::parse_poly(poly, cfg.preset, cfg.max_order)?;
    let e = parse_constraint_opt(constraint, cfg)?;
    let d = newton::newton_diagram(&p, &e)?;
    let report = reports::DiagramReport::new(
        cfg.preset.name(),
        p.to_string(),
        e.to_string(),
        &d,
    );
    let out = match cfg.format {
        Format::Json => reports::to_json(&report),
        Format::Text => reports::diagram_text(&report),
    };
    Ok((0, out))
}

fn check_field(samples: usize, cfg: &Config) -> Result<(i32, String), Error> {
    let checks = vec![
        check_small_derivation(cfg.preset, samples, cfg.seed),
        check_asymptotic(cfg.preset, samples, cfg.seed),
    ];
    let passed = checks.iter().all(|c| c.passed);
    let report = reports::CheckFieldReport {
        preset: cfg.preset.name().to_string(),
        dim: cfg.preset.dim,
        samples,
        seed: cfg.seed,
        passed,
        checks,
    };
    let out = match cfg.format {
        Format::Json => reports::to_json(&report),
        Format::Text => reports::check_field_text(&report),
    };
    Ok((if passed { 0 } else { 2 }, out))
}

fn chain_ddeg(poly: &str, chain: &str, cfg: &Config) -> Result<(i32, String), Error> {
    let p = parse::parse_poly(poly, cfg.preset, cfg.max_order)?;
    let points = parse::parse_chain(chain, cfg.preset, cfg.max_order)?;
    let chain = CutChain::new(points)?;
    let r = newton::ddeg_along_chain(&p, &chain)?;
    let report = reports::ChainReport::new(
        cfg.preset.name(),
        p.to_string(),
        chain.points().iter().map(|s| s.to_string()).collect(),
        chain.step_valuations().iter().map(|g| g.to_string()).collect(),
        &r,
    );
    let out = match cfg.format {
        Format::Json => reports::to_json(&report),
        Format::Text => reports::chain_text(&report),
    };
    Ok((0, out))
}

/// Exit code used by this binary for solver runs whose every branch is
/// stuck (`StuckResidue`, `StuckNoStartingMonomial`, `DepthExhausted`,
/// `NonQuasilinearUnravelled`).
pub fn is_stuck(status: BranchStatus) -> bool {
    !matches!(
        status,
        BranchStatus::SolvedToPrecision | BranchStatus::ExactRoot
    )
}
