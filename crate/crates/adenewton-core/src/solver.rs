//! Solution machinery: residue-field sub-solvers, quasilinear lifting (the
//! constructive half of d-henselian zero finding), the Newton-diagram
//! branching solver, best approximation, and the quasilinear companion.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use crate::ade::Ade;
use crate::diffpoly::{DiffPoly, MultiIndex};
use crate::dominant::{ddeg_at, dominant_part, EConstraint, ResiduePoly};
use crate::error::Error;
use crate::newton::algebraic_starting_monomials;
use crate::qpoly::QPoly;
use crate::ratfunc::RatFunc;
use crate::series::{PresetKind, ResidueElem, Series, ValInfo};
use crate::valgroup::{ExtGroupElement, GroupElement};
use crate::Rat;

/// Which sub-solver handled (or rejected) a residue equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Fragment {
    AlgebraicRationalRoots,
    Linear,
    FirstOrderLinearAnsatz,
    Unsupported,
}

/// Roots of a residue d-polynomial within the implemented fragment.
/// `complete` asserts that the list contains every root in the residue
/// field; when it is false, `reason` says what was not searched.
#[derive(Debug, Clone)]
pub struct RootsOutcome {
    pub roots: Vec<ResidueElem>,
    pub complete: bool,
    pub fragment: Fragment,
    pub reason: Option<String>,
}

impl RootsOutcome {
    fn complete(roots: Vec<ResidueElem>, fragment: Fragment) -> Self {
        RootsOutcome { roots, complete: true, fragment, reason: None }
    }

    fn partial(roots: Vec<ResidueElem>, fragment: Fragment, reason: impl Into<String>) -> Self {
        RootsOutcome {
            roots,
            complete: false,
            fragment,
            reason: Some(reason.into()),
        }
    }
}

/// Report of a single-root residue solve, as used by the lifting loop.
#[derive(Debug, Clone)]
pub struct ResidueSolverReport {
    pub solved: Option<ResidueElem>,
    pub fragment: Fragment,
    pub reason: Option<String>,
}

/// Deterministic order on residue elements (rationals numerically, rational
/// functions by coefficient data).
pub fn residue_cmp(a: &ResidueElem, b: &ResidueElem) -> Ordering {
    match (a, b) {
        (ResidueElem::Q(x), ResidueElem::Q(y)) => x.cmp(y),
        (ResidueElem::Fz(x), ResidueElem::Fz(y)) => {
            let key = |f: &RatFunc| {
                (
                    f.num().coeffs().to_vec(),
                    f.den().coeffs().to_vec(),
                )
            };
            key(x).cmp(&key(y))
        }
        (ResidueElem::Q(_), ResidueElem::Fz(_)) => Ordering::Less,
        (ResidueElem::Fz(_), ResidueElem::Q(_)) => Ordering::Greater,
    }
}

/// All roots of `D` in the residue field, within the implemented fragment.
///
/// Evaluation uses the induced derivation, so for the h-type preset only
/// the derivative-free part of `D` constrains the root.
pub fn residue_roots(d: &ResiduePoly) -> RootsOutcome {
    match d.kind() {
        PresetKind::HType => htype_roots(d),
        PresetKind::Monotone => monotone_roots(d),
    }
}

fn htype_roots(d: &ResiduePoly) -> RootsOutcome {
    let alg: Vec<Rat> = d
        .algebraic_coeffs()
        .iter()
        .map(|c| c.as_rat().expect("h-type residues are rational"))
        .collect();
    let g = QPoly::from_coeffs(alg);
    if g.is_zero() {
        return RootsOutcome::partial(
            Vec::new(),
            Fragment::Unsupported,
            "derivative-dominant residue equation: every residue point vanishes",
        );
    }
    if g.is_constant() {
        let reason = if d.has_derivative_monomials() {
            Some("derivative-dominant residue equation".to_string())
        } else {
            None
        };
        return RootsOutcome {
            roots: Vec::new(),
            complete: true,
            fragment: Fragment::AlgebraicRationalRoots,
            reason,
        };
    }
    if g.degree() == Some(1) && !d.has_derivative_monomials() {
        let root = -g.coeff(0) / g.coeff(1);
        return RootsOutcome::complete(vec![ResidueElem::Q(root)], Fragment::Linear);
    }
    match g.rational_roots() {
        Some(rs) => RootsOutcome::complete(
            rs.into_iter().map(|(r, _)| ResidueElem::Q(r)).collect(),
            Fragment::AlgebraicRationalRoots,
        ),
        None => RootsOutcome::partial(
            Vec::new(),
            Fragment::AlgebraicRationalRoots,
            "coefficients too large for rational-root search",
        ),
    }
}

fn monotone_roots(d: &ResiduePoly) -> RootsOutcome {
    let fz = |c: &ResidueElem| match c {
        ResidueElem::Fz(f) => f.clone(),
        ResidueElem::Q(_) => unreachable!("monotone residues are rational functions"),
    };
    if !d.has_derivative_monomials() {
        let coeffs: Vec<RatFunc> = d.algebraic_coeffs().iter().map(fz).collect();
        return qz_polynomial_roots(&coeffs);
    }
    // first-order linear: c0 + c1 Y + c2 Y'
    let linear_shape = d
        .terms()
        .all(|(i, _)| i.degree() <= 1 && i.order() <= 1);
    if linear_shape {
        let c0 = fz(&d.coeff(&MultiIndex::empty()));
        let c1 = fz(&d.coeff(&MultiIndex::unit(0)));
        let c2 = fz(&d.coeff(&MultiIndex::unit(1)));
        return first_order_linear_roots(&c0, &c1, &c2);
    }
    RootsOutcome::partial(
        Vec::new(),
        Fragment::Unsupported,
        "residue equation outside implemented fragment (nonlinear with derivatives)",
    )
}

/// Roots in Q(z) of a derivative-free polynomial with Q(z) coefficients.
fn qz_polynomial_roots(coeffs: &[RatFunc]) -> RootsOutcome {
    let mut lo = 0;
    while lo < coeffs.len() && coeffs[lo].is_zero() {
        lo += 1;
    }
    let mut hi = coeffs.len();
    while hi > lo && coeffs[hi - 1].is_zero() {
        hi -= 1;
    }
    let mut roots = Vec::new();
    if lo > 0 {
        roots.push(ResidueElem::Fz(RatFunc::zero()));
    }
    let c = &coeffs[lo..hi];
    if c.len() <= 1 {
        return RootsOutcome::complete(roots, Fragment::AlgebraicRationalRoots);
    }
    if c.iter().all(|f| f.as_constant().is_some()) {
        // constant coefficients: every root in Q(z) is a constant
        let g = QPoly::from_coeffs(c.iter().map(|f| f.as_constant().unwrap()).collect());
        return match g.rational_roots() {
            Some(rs) => {
                roots.extend(
                    rs.into_iter()
                        .map(|(r, _)| ResidueElem::Fz(RatFunc::constant(r))),
                );
                RootsOutcome::complete(roots, Fragment::AlgebraicRationalRoots)
            }
            None => RootsOutcome::partial(
                roots,
                Fragment::AlgebraicRationalRoots,
                "coefficients too large for rational-root search",
            ),
        };
    }
    match c.len() {
        2 => {
            let r = c[0].div(&c[1]).expect("leading coefficient nonzero").neg();
            roots.push(ResidueElem::Fz(r));
            RootsOutcome::complete(roots, Fragment::Linear)
        }
        3 => {
            // quadratic formula; a root exists in Q(z) iff the discriminant
            // is a square there
            let disc = c[1].mul(&c[1]).sub(&c[0].mul(&c[2]).scale(&crate::rat_int(4)));
            if let Some(s) = disc.sqrt() {
                let two_lead = c[2].scale(&crate::rat_int(2));
                for sign in [s.clone(), s.neg()] {
                    let r = c[1].neg().add(&sign).div(&two_lead).expect("c2 nonzero");
                    let re = ResidueElem::Fz(r);
                    if !roots.iter().any(|x| *x == re) {
                        roots.push(re);
                    }
                }
            }
            RootsOutcome::complete(roots, Fragment::AlgebraicRationalRoots)
        }
        _ => {
            let found = constant_roots(c);
            roots.extend(found.into_iter().map(|r| ResidueElem::Fz(RatFunc::constant(r))));
            RootsOutcome::partial(
                roots,
                Fragment::AlgebraicRationalRoots,
                "degree >= 3 over Q(z): only constant roots searched",
            )
        }
    }
}

/// Constant roots of `sum c_i(z) Y^i`: common rational roots of the
/// per-z-power coefficient polynomials in the unknown.
fn constant_roots(coeffs: &[RatFunc]) -> Vec<Rat> {
    let mut den = QPoly::one();
    for c in coeffs {
        den = den.mul(c.den());
    }
    let cleared: Vec<QPoly> = coeffs
        .iter()
        .map(|c| c.num().mul(&den.div_rem(c.den()).0))
        .collect();
    let max_zdeg = cleared.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let mut g = QPoly::zero();
    for k in 0..=max_zdeg {
        let row = QPoly::from_coeffs(cleared.iter().map(|p| p.coeff(k)).collect());
        g = if g.is_zero() { row } else { g.gcd(&row) };
    }
    if g.is_zero() || g.is_constant() {
        return Vec::new();
    }
    g.rational_roots()
        .map(|rs| rs.into_iter().map(|(r, _)| r).collect())
        .unwrap_or_default()
}

/// Polynomial-ansatz solutions of `c0 + c1 y + c2 y' = 0` over Q(z), with
/// degree bound `max deg + 2` after clearing denominators.
fn first_order_linear_roots(c0: &RatFunc, c1: &RatFunc, c2: &RatFunc) -> RootsOutcome {
    // clear denominators
    let den = c0.den().mul(&c1.den().mul(c2.den()));
    let clear = |c: &RatFunc| c.num().mul(&den.div_rem(c.den()).0);
    let (h0, h1, h2) = (clear(c0), clear(c1), clear(c2));
    if h1.is_zero() && h2.is_zero() {
        return RootsOutcome::partial(Vec::new(), Fragment::Unsupported, "degenerate linear form");
    }
    let bound = [&h0, &h1, &h2]
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0)
        + 2;
    let rows = [
        h0.degree().unwrap_or(0),
        h1.degree().unwrap_or(0) + bound,
        h2.degree().unwrap_or(0) + bound,
    ]
    .into_iter()
    .max()
    .unwrap()
        + 1;
    let cols = bound + 1;
    let mut mat = vec![vec![Rat::zero(); cols]; rows];
    let mut rhs = vec![Rat::zero(); rows];
    for m in 0..rows {
        rhs[m] = -h0.coeff(m);
        for (k, cell) in mat[m].iter_mut().enumerate() {
            let mut v = Rat::zero();
            if m >= k {
                v += h1.coeff(m - k);
            }
            if k >= 1 && m + 1 >= k {
                v += h2.coeff(m + 1 - k) * crate::rat_int(k as i64);
            }
            *cell = v;
        }
    }
    match solve_linear(mat, rhs) {
        Some((sol, free)) => {
            let y = RatFunc::from_poly(QPoly::from_coeffs(sol));
            debug_assert!(c0
                .add(&c1.mul(&y))
                .add(&c2.mul(&y.derivative()))
                .is_zero());
            if free == 0 {
                RootsOutcome::partial(
                    vec![ResidueElem::Fz(y)],
                    Fragment::FirstOrderLinearAnsatz,
                    "polynomial ansatz: rational solutions with poles not searched",
                )
            } else {
                RootsOutcome::partial(
                    vec![ResidueElem::Fz(y)],
                    Fragment::FirstOrderLinearAnsatz,
                    "affine family of residue solutions; one representative returned",
                )
            }
        }
        None => RootsOutcome::partial(
            Vec::new(),
            Fragment::FirstOrderLinearAnsatz,
            "no polynomial solution within the ansatz degree bound",
        ),
    }
}

/// Gaussian elimination; returns a particular solution and the number of
/// free variables, or `None` when inconsistent.
fn solve_linear(mut mat: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<(Vec<Rat>, usize)> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        rhs.swap(r, p);
        let inv = Rat::new(1.into(), 1.into()) / mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let sub = &mat[r][j] * &f;
                    mat[i][j] -= sub;
                }
                let sub = &rhs[r] * &f;
                rhs[i] -= sub;
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistent rows
    for i in r..rows {
        if mat[i].iter().all(|x| x.is_zero()) && !rhs[i].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); cols];
    let mut free = 0;
    for c in 0..cols {
        match pivot_of_col[c] {
            Some(p) => sol[c] = rhs[p].clone(),
            None => free += 1,
        }
    }
    Some((sol, free))
}

/// What the caller requires of a residue root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootRequirement {
    Any,
    /// Only units lift to solution terms: the residue of `u ≍ 1` is nonzero.
    NonZero,
}

/// One-root interface over `residue_roots`, used by the lifting loop.
pub fn residue_solve(d: &ResiduePoly, require: RootRequirement) -> ResidueSolverReport {
    let outcome = residue_roots(d);
    let mut roots = outcome.roots;
    roots.sort_by(residue_cmp);
    let solved = roots
        .into_iter()
        .find(|r| require == RootRequirement::Any || !r.is_zero());
    let reason = if solved.is_none() && outcome.reason.is_none() {
        Some("no residue-field root".to_string())
    } else {
        outcome.reason
    };
    ResidueSolverReport {
        solved,
        fragment: outcome.fragment,
        reason,
    }
}

/// `ddeg_E P = 1`.
pub fn is_quasilinear(eq: &Ade) -> Result<bool, Error> {
    Ok(eq.ddeg()? == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BranchStatus {
    SolvedToPrecision,
    ExactRoot,
    /// A starting monomial's residue equation has no root in the
    /// implemented residue fragment (this includes the derivative-dominant
    /// degeneracy of the h-type preset).
    StuckResidue,
    StuckNoStartingMonomial,
    /// Reserved for unravelled equations of dominant degree >= 2 once a
    /// degree-reduction pass exists; the present search descends through
    /// every residue root instead, so rootless nodes surface as
    /// StuckResidue.
    NonQuasilinearUnravelled,
    DepthExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub exponent: Rat,
    pub root: ResidueElem,
}

/// One leaf of the solution search: an accumulated truncated solution with
/// a status, the residual valuation, and the replayable choice trace.
#[derive(Debug, Clone)]
pub struct SolutionBranch {
    pub y: Series,
    pub status: BranchStatus,
    pub residual_valuation: ExtGroupElement,
    pub trace: Vec<TraceStep>,
    pub note: Option<String>,
}

impl SolutionBranch {
    pub fn is_solved(&self) -> bool {
        matches!(
            self.status,
            BranchStatus::SolvedToPrecision | BranchStatus::ExactRoot
        )
    }

    fn trace_key(&self) -> (Vec<(Rat, String)>, BranchStatus) {
        (
            self.trace
                .iter()
                .map(|s| (s.exponent.clone(), s.root.to_string()))
                .collect(),
            self.status,
        )
    }
}

struct StepOutcome {
    exponent: Rat,
    root: ResidueElem,
}

/// Computes the next starting-monomial exponent of a refined equation, used
/// as the honest precision of a truncated solution.
fn next_monomial_exponent(poly: &DiffPoly, e: &EConstraint) -> Option<Rat> {
    algebraic_starting_monomials(poly, e)
        .ok()
        .and_then(|v| v.into_iter().min())
}

/// Quasilinear d-Hensel lifting: repeatedly take the unique starting
/// monomial, solve the (degree-1 dominant) residue equation, and refine,
/// until the residual reaches the target or vanishes exactly.
pub fn lift_quasilinear(eq: &Ade, target: &GroupElement) -> Result<SolutionBranch, Error> {
    if !is_quasilinear(eq)? {
        return Err(Error::NotQuasilinear);
    }
    let preset = eq.poly.preset();
    let mut current = eq.clone();
    let mut y = Series::zero(preset);
    let mut trace = Vec::new();
    let mut prev_residual: Option<ExtGroupElement> = None;
    for _ in 0..512 {
        let residual = eq.poly.evaluate(&y)?;
        let rv = match residual.val_info() {
            ValInfo::Zero => ExtGroupElement::Infinity,
            ValInfo::Known(v) => ExtGroupElement::Finite(v),
            ValInfo::Unknown(p) => ExtGroupElement::Finite(p),
        };
        if let Some(prev) = &prev_residual {
            assert!(&rv > prev, "residual valuation must strictly increase");
        }
        prev_residual = Some(rv.clone());
        if residual.is_exact_zero() {
            return Ok(SolutionBranch {
                y,
                status: BranchStatus::ExactRoot,
                residual_valuation: ExtGroupElement::Infinity,
                trace,
                note: None,
            });
        }
        if let ValInfo::Known(v) | ValInfo::Unknown(v) = residual.val_info() {
            if &v >= target {
                // stop only once the next solution term would fall at or
                // beyond the target, so the truncation is term-complete
                let next = next_monomial_exponent(&current.poly, &current.constraint);
                let complete = match &next {
                    Some(a) => &GroupElement::rank1(a.clone()) >= target,
                    None => true,
                };
                if complete {
                    let prec = next
                        .map(|a| ExtGroupElement::Finite(GroupElement::rank1(a)))
                        .unwrap_or(ExtGroupElement::Infinity);
                    return Ok(SolutionBranch {
                        y: y.truncate_to(&prec),
                        status: BranchStatus::SolvedToPrecision,
                        residual_valuation: ExtGroupElement::Finite(v),
                        trace,
                        note: None,
                    });
                }
            }
        }
        let monomials = algebraic_starting_monomials(&current.poly, &current.constraint)?;
        let Some(alpha) = monomials.into_iter().min() else {
            return Ok(SolutionBranch {
                y,
                status: BranchStatus::StuckNoStartingMonomial,
                residual_valuation: rv,
                trace,
                note: Some("no starting monomial in the constraint".into()),
            });
        };
        let at = GroupElement::rank1(alpha.clone());
        let conj = current
            .poly
            .mul_conjugate(&Series::monomial(preset, ResidueElem::one(preset.kind), at.clone()))?;
        let dom = dominant_part(&conj)?.poly;
        let report = residue_solve(&dom, RootRequirement::NonZero);
        let Some(root) = report.solved else {
            return Ok(SolutionBranch {
                y,
                status: BranchStatus::StuckResidue,
                residual_valuation: rv,
                trace,
                note: report.reason,
            });
        };
        let step = Series::monomial(preset, root.clone(), at.clone());
        y = y.add(&step)?;
        current = current.refine(&step, EConstraint::ValGT(at))?;
        trace.push(TraceStep { exponent: alpha, root });
    }
    Err(Error::PrecisionExhausted(
        "lifting did not reach the target within the step bound".into(),
    ))
}

/// Breadth-bounded tree search over starting monomials and residue roots.
/// Leaves are verified by substitution and returned in deterministic trace
/// order.
pub fn solve(
    eq: &Ade,
    target: &GroupElement,
    branch_bound: usize,
    depth: usize,
) -> Result<Vec<SolutionBranch>, Error> {
    let preset = eq.poly.preset();
    struct Node {
        eq: Ade,
        y: Series,
        trace: Vec<TraceStep>,
        depth_left: usize,
        note: Option<String>,
    }
    let mut stack = vec![Node {
        eq: eq.clone(),
        y: Series::zero(preset),
        trace: Vec::new(),
        depth_left: depth,
        note: None,
    }];
    let mut leaves: Vec<SolutionBranch> = Vec::new();
    while let Some(node) = stack.pop() {
        if leaves.len() >= branch_bound {
            break;
        }
        let residual = eq.poly.evaluate(&node.y)?;
        let nonzero_y = !node.trace.is_empty();
        if residual.is_exact_zero() {
            if nonzero_y {
                let leaf = SolutionBranch {
                    y: node.y.clone(),
                    status: BranchStatus::ExactRoot,
                    residual_valuation: ExtGroupElement::Infinity,
                    trace: node.trace.clone(),
                    note: node.note.clone(),
                };
                assert!(verify_solution(&eq.poly, &leaf.y, &eq.constraint, target));
                leaves.push(leaf);
            }
        } else if let ValInfo::Known(v) | ValInfo::Unknown(v) = residual.val_info() {
            if &v >= target && nonzero_y {
                let next = next_monomial_exponent(&node.eq.poly, &node.eq.constraint);
                let complete = match &next {
                    Some(a) => &GroupElement::rank1(a.clone()) >= target,
                    None => true,
                };
                if complete {
                    let prec = next
                        .map(|a| ExtGroupElement::Finite(GroupElement::rank1(a)))
                        .unwrap_or(ExtGroupElement::Infinity);
                    let leaf = SolutionBranch {
                        y: node.y.truncate_to(&prec),
                        status: BranchStatus::SolvedToPrecision,
                        residual_valuation: ExtGroupElement::Finite(v),
                        trace: node.trace,
                        note: node.note,
                    };
                    assert!(verify_solution(&eq.poly, &leaf.y, &eq.constraint, target));
                    leaves.push(leaf);
                    continue;
                }
            }
        }
        let d_cur = node.eq.ddeg()?;
        if d_cur == 0 {
            if !residual.is_exact_zero() {
                leaves.push(SolutionBranch {
                    y: node.y,
                    status: BranchStatus::StuckNoStartingMonomial,
                    residual_valuation: val_lower_bound(&residual),
                    trace: node.trace,
                    note: Some("dominant degree 0: no solutions in the constraint".into()),
                });
            }
            continue;
        }
        if node.depth_left == 0 {
            if !residual.is_exact_zero() {
                leaves.push(SolutionBranch {
                    y: node.y,
                    status: BranchStatus::DepthExhausted,
                    residual_valuation: val_lower_bound(&residual),
                    trace: node.trace,
                    note: node.note,
                });
            }
            continue;
        }
        let en = node.eq.enumerate_approx_solutions(1)?;
        let mut children: Vec<StepOutcome> = en
            .solutions
            .iter()
            .map(|s| StepOutcome {
                exponent: s.exponent.clone(),
                root: s.root.clone(),
            })
            .collect();
        if children.is_empty() {
            if !en.obstructions.is_empty() {
                // unknown residue roots: say so instead of stopping quietly
                let reason = en
                    .obstructions
                    .iter()
                    .map(|o| format!("t^({}): {}", crate::rat_str(&o.exponent), o.reason))
                    .collect::<Vec<_>>()
                    .join("; ");
                leaves.push(SolutionBranch {
                    y: node.y,
                    status: BranchStatus::StuckResidue,
                    residual_valuation: val_lower_bound(&residual),
                    trace: node.trace,
                    note: Some(reason),
                });
                continue;
            }
            if residual.is_exact_zero() || node.eq.poly.mul_at_zero()? >= 1 {
                // y itself is an exact root: emitted above when nonzero;
                // the zero root is excluded from solutions and said so
                if !nonzero_y {
                    leaves.push(SolutionBranch {
                        y: node.y,
                        status: BranchStatus::StuckNoStartingMonomial,
                        residual_valuation: val_lower_bound(&residual),
                        trace: node.trace,
                        note: Some(
                            "Y = 0 solves the polynomial but 0 is not a solution".into(),
                        ),
                    });
                }
                continue;
            }
            leaves.push(SolutionBranch {
                y: node.y,
                status: BranchStatus::StuckResidue,
                residual_valuation: val_lower_bound(&residual),
                trace: node.trace,
                note: Some("no residue-field roots at the starting monomials".into()),
            });
            continue;
        }
        // note obstructed monomials on the children they may shadow
        let incomplete_note = if en.obstructions.is_empty() {
            None
        } else {
            Some(
                en.obstructions
                    .iter()
                    .map(|o| format!("t^({}): {}", crate::rat_str(&o.exponent), o.reason))
                    .collect::<Vec<_>>()
                    .join("; "),
            )
        };
        // deterministic: ascending (exponent, root); push reversed for DFS
        children.sort_by(|a, b| {
            a.exponent
                .cmp(&b.exponent)
                .then_with(|| residue_cmp(&a.root, &b.root))
        });
        for child in children.into_iter().rev() {
            let at = GroupElement::rank1(child.exponent.clone());
            let step = Series::monomial(preset, child.root.clone(), at.clone());
            let refined = node.eq.refine(&step, EConstraint::ValGT(at))?;
            let mut trace = node.trace.clone();
            trace.push(TraceStep {
                exponent: child.exponent,
                root: child.root,
            });
            stack.push(Node {
                eq: refined,
                y: node.y.add(&step)?,
                trace,
                depth_left: node.depth_left - 1,
                note: incomplete_note.clone().or_else(|| node.note.clone()),
            });
        }
    }
    leaves.sort_by(|a, b| a.trace_key().cmp(&b.trace_key()));
    Ok(leaves)
}

fn val_lower_bound(s: &Series) -> ExtGroupElement {
    match s.val_info() {
        ValInfo::Zero => ExtGroupElement::Infinity,
        ValInfo::Known(v) | ValInfo::Unknown(v) => ExtGroupElement::Finite(v),
    }
}

/// The branch whose solution best approximates `f` (maximal `v(y - f)`),
/// ties broken by trace order. This is the argmax over the supplied list.
pub fn best_approx<'a>(
    branches: &'a [SolutionBranch],
    f: &Series,
) -> Result<&'a SolutionBranch, Error> {
    if branches.is_empty() {
        return Err(Error::Invalid("best_approx needs at least one branch".into()));
    }
    let mut best: Option<(&SolutionBranch, ExtGroupElement)> = None;
    for b in branches {
        let d = b.y.sub(f)?;
        let key = val_lower_bound(&d);
        match &best {
            Some((_, k)) if key <= *k => {}
            _ => best = Some((b, key)),
        }
    }
    Ok(best.unwrap().0)
}

/// The quasilinear companion: picks the lex-least degree-d multi-index `j`
/// carrying the dominant coefficient of `P_{×t^gamma}`, drops one unit from
/// its last nonzero slot to get `i`, and returns `(∂^i)_{×t^gamma} P`
/// together with `i`. The companion has `ddeg (ΔP)_{×t^gamma} = 1`.
pub fn delta_companion(
    p: &DiffPoly,
    exponent: &GroupElement,
) -> Result<(DiffPoly, MultiIndex), Error> {
    let preset = p.preset();
    let conj = p.mul_conjugate(&Series::monomial(
        preset,
        ResidueElem::one(preset.kind),
        exponent.clone(),
    ))?;
    let d = crate::dominant::ddeg(&conj)?;
    if d == 0 {
        return Err(Error::DominantDegreeZero);
    }
    let v = conj.val()?;
    let j = conj
        .terms()
        .filter(|(idx, c)| idx.degree() == d && c.val().map(|w| w == v).unwrap_or(false))
        .map(|(idx, _)| idx.clone())
        .min()
        .expect("ddeg = d guarantees a dominant degree-d coefficient");
    let last = j.order();
    debug_assert!(j.get(last) >= 1);
    let i = j.checked_sub(&MultiIndex::unit(last)).unwrap();
    let companion = p.partial_mult_conjugated(&i, exponent)?;
    assert_eq!(
        ddeg_at(&companion, exponent)?,
        1,
        "companion must be quasilinear at the chosen monomial"
    );
    Ok((companion, i))
}

/// `y ∈ E` and the residual of `P` at `y` has valuation at least `target`
/// (or vanishes exactly).
pub fn verify_solution(
    p: &DiffPoly,
    y: &Series,
    e: &EConstraint,
    target: &GroupElement,
) -> bool {
    // membership requires a certified nonzero valuation
    let member = match y.val_info() {
        ValInfo::Known(v) => e.contains_val(&v),
        _ => false,
    };
    if !member {
        return false;
    }
    let Ok(residual) = p.evaluate(y) else {
        return false;
    };
    match residual.val_info() {
        ValInfo::Zero => true,
        ValInfo::Known(v) | ValInfo::Unknown(v) => &v >= target,
    }
}
