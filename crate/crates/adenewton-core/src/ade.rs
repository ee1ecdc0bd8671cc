//! Asymptotic differential equations `P(Y) = 0, Y ∈ E`: refinements,
//! approximate solutions and their multiplicities, unravelling, and the
//! vanishing test along finite cut chains.

use serde::Serialize;

use crate::diffpoly::DiffPoly;
use crate::dominant::{ddeg_on, dmul_at, dominant_part, EConstraint};
use crate::error::Error;
use crate::newton::algebraic_starting_monomials;
use crate::series::{ResidueElem, Series, ValInfo};
use crate::solver::{residue_roots, residue_cmp};
use crate::valgroup::GroupElement;
use crate::Rat;

/// An asymptotic differential equation: a differential polynomial together
/// with a ≼-closed constraint on solutions.
#[derive(Debug, Clone)]
pub struct Ade {
    pub poly: DiffPoly,
    pub constraint: EConstraint,
}

impl Ade {
    pub fn new(poly: DiffPoly, constraint: EConstraint) -> Self {
        Ade { poly, constraint }
    }

    /// The dominant degree of the equation.
    pub fn ddeg(&self) -> Result<usize, Error> {
        ddeg_on(&self.poly, &self.constraint)
    }

    /// The refinement `(P_{+f}, E')` with `E' ⊆ E` and `f ∈ E ∪ {0}`.
    pub fn refine(&self, f: &Series, constraint: EConstraint) -> Result<Ade, Error> {
        if !constraint.subset_of(&self.constraint) {
            return Err(Error::ConstraintNotContained);
        }
        if !f.is_exact_zero() && !self.constraint.contains(f)? {
            return Err(Error::NotInConstraint);
        }
        Ok(Ade {
            poly: self.poly.add_conjugate(f)?,
            constraint,
        })
    }

    /// Whether `y` is an approximate solution, and its multiplicity
    /// `ddeg_{≺y} P_{+y}` (0 when it is not one).
    pub fn is_approx_solution(&self, y: &Series) -> Result<(bool, usize), Error> {
        if y.is_exact_zero() {
            return Err(Error::ZeroInput("approximate solution"));
        }
        if !self.constraint.contains(y)? {
            return Err(Error::NotInConstraint);
        }
        let (gamma, unit) = y.dominant_split()?;
        let conj = self.poly.mul_conjugate(&t_monomial(&self.poly, &gamma))?;
        let dom = dominant_part(&conj)?.poly;
        let u_bar = unit.residue()?;
        if !dom.evaluate(&u_bar).is_zero() {
            return Ok((false, 0));
        }
        let mult = dom
            .add_conjugate(&u_bar)
            .mul_at_zero()
            .expect("conjugate of nonzero dominant part");
        // cross-check against the dominant-multiplicity route:
        debug_assert_eq!(
            mult,
            dmul_at(&self.poly.add_conjugate(y).unwrap(), &gamma).unwrap()
        );
        Ok((mult >= 1, mult))
    }

    /// All approximate solutions of multiplicity at least `min_mult`
    /// reachable through algebraic starting monomials, plus per-monomial
    /// reports where the residue equation left the implemented fragment.
    pub fn enumerate_approx_solutions(&self, min_mult: usize) -> Result<Enumeration, Error> {
        let mut solutions = Vec::new();
        let mut obstructions = Vec::new();
        for alpha in algebraic_starting_monomials(&self.poly, &self.constraint)? {
            let at = GroupElement::rank1(alpha.clone());
            let conj = self.poly.mul_conjugate(&t_monomial(&self.poly, &at))?;
            let dom = dominant_part(&conj)?.poly;
            let outcome = residue_roots(&dom);
            let mut roots = outcome.roots.clone();
            roots.sort_by(residue_cmp);
            for root in roots {
                if root.is_zero() {
                    continue;
                }
                let mult = dom
                    .add_conjugate(&root)
                    .mul_at_zero()
                    .expect("conjugate of nonzero dominant part");
                debug_assert!(mult >= 1, "reported root must vanish in D");
                if mult >= min_mult {
                    solutions.push(ApproxSolution {
                        exponent: alpha.clone(),
                        root,
                        multiplicity: mult,
                    });
                }
            }
            if !outcome.complete {
                obstructions.push(ResidueObstruction {
                    exponent: alpha.clone(),
                    residue_degree: dom.degree().unwrap_or(0),
                    reason: outcome
                        .reason
                        .unwrap_or_else(|| "residue roots incomplete".into()),
                });
            }
        }
        Ok(Enumeration { solutions, obstructions })
    }

    /// No approximate solution of full multiplicity `d = ddeg`; unknown
    /// residue roots at monomials that could carry multiplicity `d` force a
    /// conservative `false` with a warning.
    pub fn is_unravelled(&self) -> Result<UnravelledCheck, Error> {
        let d = self.ddeg()?;
        if d == 0 {
            return Err(Error::DominantDegreeZero);
        }
        let en = self.enumerate_approx_solutions(d)?;
        let mut warnings = Vec::new();
        for ob in &en.obstructions {
            if ob.residue_degree >= d {
                warnings.push(format!(
                    "roots unknown at t^({}): {}",
                    crate::rat_str(&ob.exponent),
                    ob.reason
                ));
            }
        }
        Ok(UnravelledCheck {
            unravelled: en.solutions.is_empty() && warnings.is_empty(),
            warnings,
        })
    }

    /// Iteratively refines away full-multiplicity approximate solutions
    /// (the successor step of the unraveller construction), up to `depth`
    /// steps. Limit stages are out of reach at finite precision, hence the
    /// explicit bound.
    pub fn unravel(&self, depth: usize) -> Result<UnravelOutcome, Error> {
        let d = self.ddeg()?;
        if d == 0 {
            return Err(Error::DominantDegreeZero);
        }
        let mut shift = Series::zero(self.poly.preset());
        let mut current = self.clone();
        let mut steps: Vec<(Rat, ResidueElem)> = Vec::new();
        let mut warnings = Vec::new();
        for round in 0..=depth {
            if current.poly.mul_at_zero()? == d {
                // the accumulated shift (possibly 0) is an exact root of
                // full multiplicity: the unraveller hypothesis fails
                return Ok(UnravelOutcome {
                    shift,
                    constraint: current.constraint,
                    status: UnravelStatus::ExactMultiplicityHit,
                    steps,
                    warnings,
                });
            }
            let check = current.is_unravelled()?;
            warnings.extend(check.warnings.iter().cloned());
            if !check.warnings.is_empty() {
                return Ok(UnravelOutcome {
                    shift,
                    constraint: current.constraint,
                    status: UnravelStatus::ResidueUnsolvable,
                    steps,
                    warnings,
                });
            }
            if check.unravelled {
                return Ok(UnravelOutcome {
                    shift,
                    constraint: current.constraint,
                    status: UnravelStatus::Unravelled,
                    steps,
                    warnings,
                });
            }
            if round == depth {
                break;
            }
            let en = current.enumerate_approx_solutions(d)?;
            // largest approximate solution first (already sorted by
            // ascending exponent = descending monomial)
            let pick = en.solutions.first().expect("not unravelled").clone();
            let at = GroupElement::rank1(pick.exponent.clone());
            let step = Series::monomial(self.poly.preset(), pick.root.clone(), at.clone());
            shift = shift.add(&step)?;
            current = current.refine(&step, EConstraint::ValGT(at))?;
            // every stage stays a partial unraveller
            assert_eq!(current.ddeg()?, d, "refinement must preserve ddeg");
            steps.push((pick.exponent, pick.root));
        }
        Ok(UnravelOutcome {
            shift,
            constraint: current.constraint,
            status: UnravelStatus::DepthExceeded,
            steps,
            warnings,
        })
    }

    /// The multiplicatively shifted equation `(P_{×a^{-1}}, aE)`.
    ///
    /// For a monomial `a` this is exact; otherwise the inverse is expanded
    /// with a working margin beyond the coefficient spread.
    pub fn shift_multiplicative(&self, a: &Series) -> Result<Ade, Error> {
        let va = a.val()?;
        let inv = if a.term_count() == 1 && a.is_exact() {
            a.invert(&va.neg())?
        } else {
            // product bound 12: the inverse is kept to 12 - v(a)
            let margin = GroupElement::unit(a.preset().dim, 0).scale_int(12);
            a.invert(&margin)?
        };
        Ok(Ade {
            poly: self.poly.mul_conjugate(&inv)?,
            constraint: self.constraint.shift(&va),
        })
    }
}

fn t_monomial(p: &DiffPoly, g: &GroupElement) -> Series {
    Series::monomial(p.preset(), ResidueElem::one(p.preset().kind), g.clone())
}

/// An approximate solution `root * t^exponent` with its multiplicity.
#[derive(Debug, Clone)]
pub struct ApproxSolution {
    pub exponent: Rat,
    pub root: ResidueElem,
    pub multiplicity: usize,
}

/// A starting monomial whose residue equation left the implemented solver
/// fragment.
#[derive(Debug, Clone)]
pub struct ResidueObstruction {
    pub exponent: Rat,
    pub residue_degree: usize,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub solutions: Vec<ApproxSolution>,
    pub obstructions: Vec<ResidueObstruction>,
}

#[derive(Debug, Clone)]
pub struct UnravelledCheck {
    pub unravelled: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnravelStatus {
    Unravelled,
    DepthExceeded,
    ResidueUnsolvable,
    /// Some accumulated shift is an exact root of full multiplicity, which
    /// the unraveller construction explicitly excludes.
    ExactMultiplicityHit,
}

/// The result of bounded-depth unravelling: `(shift, constraint)` is a
/// partial unraveller at every stage, and an unraveller when the status
/// says `Unravelled`.
#[derive(Debug, Clone)]
pub struct UnravelOutcome {
    pub shift: Series,
    pub constraint: EConstraint,
    pub status: UnravelStatus,
    pub steps: Vec<(Rat, ResidueElem)>,
    pub warnings: Vec<String>,
}

/// A finite prefix of a pc-sequence: points whose consecutive differences
/// have strictly increasing valuation.
#[derive(Debug, Clone)]
pub struct CutChain {
    points: Vec<Series>,
    steps: Vec<GroupElement>,
}

impl CutChain {
    pub fn new(points: Vec<Series>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::Invalid("cut chain needs at least one point".into()));
        }
        let mut steps = Vec::with_capacity(points.len().saturating_sub(1));
        for w in points.windows(2) {
            let diff = w[1].sub(&w[0])?;
            let v = diff.val().map_err(|_| Error::ChainNotIncreasing)?;
            if let Some(prev) = steps.last() {
                if &v <= prev {
                    return Err(Error::ChainNotIncreasing);
                }
            }
            steps.push(v);
        }
        Ok(CutChain { points, steps })
    }

    pub fn points(&self) -> &[Series] {
        &self.points
    }

    pub fn last(&self) -> &Series {
        self.points.last().expect("nonempty")
    }

    pub fn step_valuations(&self) -> &[GroupElement] {
        &self.steps
    }
}

/// Per-witness outcome of the vanishing test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WitnessOutcome {
    Vanishes,
    FailsToVanish,
    Uncertifiable(String),
}

/// For each witness `(a, v)` with `a - l ≺ v` certified against the chain's
/// last point, reports whether `ddeg_{≺v} P_{+a} >= 1`.
pub fn vanishes_along(
    p: &DiffPoly,
    chain: &CutChain,
    witnesses: &[(Series, Series)],
) -> Result<Vec<WitnessOutcome>, Error> {
    let mut out = Vec::with_capacity(witnesses.len());
    for (a, v_mon) in witnesses {
        let vv = match v_mon.val() {
            Ok(v) => v,
            Err(e) => {
                out.push(WitnessOutcome::Uncertifiable(e.to_string()));
                continue;
            }
        };
        let diff = a.sub(chain.last())?;
        let certified = match diff.val_info() {
            ValInfo::Zero => true,
            ValInfo::Known(d) => d > vv,
            ValInfo::Unknown(prec) => prec > vv,
        };
        if !certified {
            out.push(WitnessOutcome::Uncertifiable(format!(
                "cannot certify a - l prec {v_mon} at chain precision"
            )));
            continue;
        }
        let shifted = p.add_conjugate(a)?;
        let d = dmul_at(&shifted, &vv)?;
        out.push(if d >= 1 {
            WitnessOutcome::Vanishes
        } else {
            WitnessOutcome::FailsToVanish
        });
    }
    Ok(out)
}
