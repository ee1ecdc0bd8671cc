//! Report types for every command, rendering to JSON (schemas under docs/)
//! or plain text. Output is deterministic: same input, same bytes.

use adenewton_core::ade::{UnravelOutcome, UnravelStatus};
use adenewton_core::newton::{ChainDdeg, NewtonDiagram};
use adenewton_core::series::FieldCheckReport;
use adenewton_core::solver::{BranchStatus, SolutionBranch};
use adenewton_core::valgroup::ExtGroupElement;
use adenewton_core::rat_str;
use serde::Serialize;

fn ext_str(v: &ExtGroupElement) -> String {
    match v {
        ExtGroupElement::Finite(g) => g.to_string(),
        ExtGroupElement::Infinity => "inf".to_string(),
    }
}

pub fn status_str(s: BranchStatus) -> &'static str {
    match s {
        BranchStatus::SolvedToPrecision => "SolvedToPrecision",
        BranchStatus::ExactRoot => "ExactRoot",
        BranchStatus::StuckResidue => "StuckResidue",
        BranchStatus::StuckNoStartingMonomial => "StuckNoStartingMonomial",
        BranchStatus::NonQuasilinearUnravelled => "NonQuasilinearUnravelled",
        BranchStatus::DepthExhausted => "DepthExhausted",
    }
}

#[derive(Serialize)]
pub struct TraceEntry {
    pub exponent: String,
    pub root: String,
}

#[derive(Serialize)]
pub struct BranchReport {
    pub y: String,
    pub status: String,
    pub residual_valuation: String,
    pub trace: Vec<TraceEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BranchReport {
    pub fn from_branch(b: &SolutionBranch) -> Self {
        BranchReport {
            y: b.y.to_string(),
            status: status_str(b.status).to_string(),
            residual_valuation: ext_str(&b.residual_valuation),
            trace: b
                .trace
                .iter()
                .map(|t| TraceEntry {
                    exponent: rat_str(&t.exponent),
                    root: t.root.to_string(),
                })
                .collect(),
            note: b.note.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct SolveReport {
    pub preset: String,
    pub equation: String,
    pub target: String,
    pub branches: Vec<BranchReport>,
}

#[derive(Serialize)]
pub struct DiagramReport {
    pub preset: String,
    pub poly: String,
    pub constraint: String,
    pub i_sequence: Vec<usize>,
    pub equalizers: Vec<String>,
    pub starting_monomials: Vec<String>,
}

impl DiagramReport {
    pub fn new(preset: &str, poly: String, constraint: String, d: &NewtonDiagram) -> Self {
        DiagramReport {
            preset: preset.to_string(),
            poly,
            constraint,
            i_sequence: d.i_sequence.clone(),
            equalizers: d.equalizer_exponents.iter().map(rat_str).collect(),
            starting_monomials: d
                .starting_exponents()
                .iter()
                .map(|e| format!("t^({})", rat_str(e)))
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ApproxEntry {
    pub monomial: String,
    pub root: String,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub preset: String,
    pub equation: String,
    pub complexity: (usize, usize, usize),
    pub mul: usize,
    pub ddeg: usize,
    pub quasilinear: bool,
    pub unravelled: Option<bool>,
    pub starting_monomials: Vec<String>,
    pub approximate_solutions: Vec<ApproxEntry>,
    pub obstructions: Vec<String>,
    pub unravel: Option<UnravelSummary>,
}

#[derive(Serialize)]
pub struct UnravelSummary {
    pub status: String,
    pub shift: String,
    pub constraint: String,
    pub steps: Vec<TraceEntry>,
}

impl UnravelSummary {
    pub fn from_outcome(o: &UnravelOutcome) -> Self {
        let status = match o.status {
            UnravelStatus::Unravelled => "Unravelled",
            UnravelStatus::DepthExceeded => "DepthExceeded",
            UnravelStatus::ResidueUnsolvable => "ResidueUnsolvable",
            UnravelStatus::ExactMultiplicityHit => "ExactMultiplicityHit",
        };
        UnravelSummary {
            status: status.to_string(),
            shift: o.shift.to_string(),
            constraint: o.constraint.to_string(),
            steps: o
                .steps
                .iter()
                .map(|(e, r)| TraceEntry {
                    exponent: rat_str(e),
                    root: r.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct EqualizerReport {
    pub preset: String,
    pub p: String,
    pub q: String,
    pub exponent: String,
    pub monomial: String,
}

#[derive(Serialize)]
pub struct ChainReport {
    pub preset: String,
    pub poly: String,
    pub points: Vec<String>,
    pub step_valuations: Vec<String>,
    pub values: Vec<usize>,
    pub stabilized: bool,
    pub value: usize,
}

impl ChainReport {
    pub fn new(
        preset: &str,
        poly: String,
        points: Vec<String>,
        steps: Vec<String>,
        r: &ChainDdeg,
    ) -> Self {
        ChainReport {
            preset: preset.to_string(),
            poly,
            points,
            step_valuations: steps,
            values: r.values.clone(),
            stabilized: r.stabilized,
            value: r.value,
        }
    }
}

#[derive(Serialize)]
pub struct CheckFieldReport {
    pub preset: String,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<FieldCheckReport>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn solve_text(r: &SolveReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "equation: {}\npreset: {}\ntarget valuation: {}\n",
        r.equation, r.preset, r.target
    ));
    if r.branches.is_empty() {
        out.push_str("no branches\n");
    }
    for (i, b) in r.branches.iter().enumerate() {
        out.push_str(&format!(
            "branch {}: [{}] y = {}\n  residual valuation: {}\n",
            i + 1,
            b.status,
            b.y,
            b.residual_valuation
        ));
        if !b.trace.is_empty() {
            let steps: Vec<String> = b
                .trace
                .iter()
                .map(|t| format!("({} at t^({}))", t.root, t.exponent))
                .collect();
            out.push_str(&format!("  trace: {}\n", steps.join(" -> ")));
        }
        if let Some(n) = &b.note {
            out.push_str(&format!("  note: {n}\n"));
        }
    }
    out
}

pub fn diagram_text(r: &DiagramReport) -> String {
    format!(
        "poly: {}\nconstraint: {}\ni-sequence: {:?}\nequalizer exponents: [{}]\nstarting monomials: [{}]\n",
        r.poly,
        r.constraint,
        r.i_sequence,
        r.equalizers.join(", "),
        r.starting_monomials.join(", ")
    )
}

pub fn analyze_text(r: &AnalyzeReport) -> String {
    let mut out = format!(
        "equation: {}\npreset: {}\ncomplexity: {:?}\nmul: {}\nddeg: {}\nquasilinear: {}\n",
        r.equation, r.preset, r.complexity, r.mul, r.ddeg, r.quasilinear
    );
    if let Some(u) = r.unravelled {
        out.push_str(&format!("unravelled: {u}\n"));
    }
    out.push_str(&format!(
        "starting monomials: [{}]\n",
        r.starting_monomials.join(", ")
    ));
    for a in &r.approximate_solutions {
        out.push_str(&format!(
            "approximate solution at {}: root {} (multiplicity {})\n",
            a.monomial, a.root, a.multiplicity
        ));
    }
    for o in &r.obstructions {
        out.push_str(&format!("obstruction: {o}\n"));
    }
    if let Some(u) = &r.unravel {
        out.push_str(&format!(
            "unravel: {} with shift {} and {}\n",
            u.status, u.shift, u.constraint
        ));
    }
    out
}

pub fn equalizer_text(r: &EqualizerReport) -> String {
    format!(
        "P: {}\nQ: {}\nequalizer exponent: {}\nequalizer monomial: {}\n",
        r.p, r.q, r.exponent, r.monomial
    )
}

pub fn chain_text(r: &ChainReport) -> String {
    format!(
        "poly: {}\nchain: [{}]\nstep valuations: [{}]\nddeg values: {:?}\nstabilized: {} (value {})\n",
        r.poly,
        r.points.join("; "),
        r.step_valuations.join(", "),
        r.values,
        r.stabilized,
        r.value
    )
}

pub fn check_field_text(r: &CheckFieldReport) -> String {
    let mut out = format!(
        "preset: {} (dim {})\nsamples: {} (seed {})\n",
        r.preset, r.dim, r.samples, r.seed
    );
    for c in &r.checks {
        out.push_str(&format!(
            "check `{}`: {}\n",
            c.law,
            if c.passed { "pass" } else { "FAIL" }
        ));
        for f in &c.failures {
            out.push_str(&format!("  counterexample: {f}\n"));
        }
    }
    out.push_str(if r.passed { "pass\n" } else { "FAIL\n" });
    out
}
