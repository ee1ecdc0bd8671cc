//! The differential Newton diagram over Gamma = Q: valuation-vs-conjugation
//! functions of homogeneous parts, equalizers, the diagram descent, and the
//! dmul/ddeg profile it predicts.

use serde::Serialize;

use crate::ade::CutChain;
use crate::diffpoly::DiffPoly;
use crate::dominant::{ddeg_at, dmul_at, ddeg_on, EConstraint};
use crate::error::Error;
use crate::valgroup::GroupElement;
use crate::{rat_str, Rat};

/// The function `gamma -> v(P_{×t^gamma})` of a homogeneous `P`, stored as
/// affine pieces (slope = degree, one intercept per coefficient exponent).
///
/// In both presets every derivation step shifts exponents strictly upward,
/// so the zero-shift layer of the conjugate reproduces `P`'s own
/// coefficients and no cancellation can reach the minimal exponent: the
/// active piece is always `deg·gamma + v(P)` and the exceptional set is
/// empty. Evaluation is still cross-checked against direct conjugation in
/// the test suites.
#[derive(Debug, Clone)]
pub struct VpFunction {
    pub degree: usize,
    pub intercept: Rat,
    pub pieces: Vec<(usize, Rat)>,
    pub exceptional: Vec<Rat>,
}

impl VpFunction {
    pub fn eval(&self, gamma: &Rat) -> Rat {
        self.pieces
            .iter()
            .map(|(slope, e)| Rat::from_integer((*slope as i64).into()) * gamma + e)
            .min()
            .expect("at least one piece")
    }
}

fn rank1_exponent(g: &GroupElement) -> Result<Rat, Error> {
    Ok(g.as_rat()?.clone())
}

/// Builds the exact piecewise description for homogeneous `P`.
pub fn vp_function(p: &DiffPoly) -> Result<VpFunction, Error> {
    if p.preset().dim != 1 {
        return Err(Error::RequiresDimOne);
    }
    let degree = p.degree()?;
    if p.mul_at_zero()? != degree {
        return Err(Error::NotHomogeneous);
    }
    let mut pieces = Vec::new();
    for (_, c) in p.terms() {
        for (g, _) in c.terms() {
            let e = rank1_exponent(g)?;
            if !pieces.contains(&(degree, e.clone())) {
                pieces.push((degree, e));
            }
        }
    }
    pieces.sort_by(|a, b| a.1.cmp(&b.1));
    let intercept = rank1_exponent(&p.val()?)?;
    Ok(VpFunction {
        degree,
        intercept,
        pieces,
        exceptional: Vec::new(),
    })
}

/// The unique exponent where two homogeneous d-polynomials of distinct
/// degrees acquire equal valuation under multiplicative conjugation.
pub fn equalizer(pm: &DiffPoly, pn: &DiffPoly) -> Result<GroupElement, Error> {
    let fm = vp_function(pm)?;
    let fn_ = vp_function(pn)?;
    if fm.degree == fn_.degree {
        return Err(Error::EqualDegrees);
    }
    let m = crate::rat_int(fm.degree as i64);
    let n = crate::rat_int(fn_.degree as i64);
    let alpha = (fn_.intercept.clone() - &fm.intercept) / (m - n);
    let g = GroupElement::rank1(alpha.clone());
    // re-verify by direct conjugation at alpha and nearby
    let va = pm.mul_conjugate(&t_monomial(pm, &g))?.val()?;
    let vb = pn.mul_conjugate(&t_monomial(pn, &g))?.val()?;
    assert_eq!(va, vb, "equalizer verification failed");
    let eps = Rat::new(1.into(), 7.into());
    for s in [alpha.clone() + &eps, alpha.clone() - &eps] {
        let gs = GroupElement::rank1(s);
        let va = pm.mul_conjugate(&t_monomial(pm, &gs))?.val()?;
        let vb = pn.mul_conjugate(&t_monomial(pn, &gs))?.val()?;
        assert_ne!(va, vb, "equalizer is not isolated");
    }
    Ok(g)
}

fn t_monomial(p: &DiffPoly, g: &GroupElement) -> crate::series::Series {
    crate::series::Series::monomial(
        p.preset(),
        crate::series::ResidueElem::one(p.preset().kind),
        g.clone(),
    )
}

/// The Newton diagram of `P` on a ≼-closed set: the increasing sequence of
/// reachable dominant degrees together with the equalizer exponents
/// separating them (strictly decreasing, i.e. the monomials increase).
#[derive(Debug, Clone, Serialize)]
pub struct NewtonDiagram {
    pub i_sequence: Vec<usize>,
    #[serde(serialize_with = "ser_rats")]
    pub equalizer_exponents: Vec<Rat>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rat_str))
}

impl NewtonDiagram {
    /// Starting-monomial exponents in ascending order.
    pub fn starting_exponents(&self) -> Vec<Rat> {
        let mut v = self.equalizer_exponents.clone();
        v.sort();
        v
    }
}

/// Computes the diagram by descent:
/// repeatedly pick the largest equalizer against the current top degree,
/// record it, and recurse strictly below it.
pub fn newton_diagram(p: &DiffPoly, e: &EConstraint) -> Result<NewtonDiagram, Error> {
    if p.preset().dim != 1 {
        return Err(Error::RequiresDimOne);
    }
    let degrees = p.degrees();
    let mul = p.mul_at_zero()?;
    let d = ddeg_on(p, e)?;
    if d == mul {
        return Ok(NewtonDiagram {
            i_sequence: vec![d],
            equalizer_exponents: Vec::new(),
        });
    }
    let mut seq = vec![d];
    let mut eqs: Vec<Rat> = Vec::new();
    let mut top = d;
    while top > mul {
        let ptop = p.homogeneous_part(top);
        let mut best: Option<Rat> = None;
        for &j in degrees.iter().filter(|&&j| j < top) {
            let pj = p.homogeneous_part(j);
            let alpha = rank1_exponent(&equalizer(&pj, &ptop)?)?;
            if best.as_ref().is_none_or(|b| alpha < *b) {
                best = Some(alpha);
            }
        }
        let alpha = best.expect("top > mul guarantees a lower part");
        let at = GroupElement::rank1(alpha.clone());
        assert!(
            e.contains_val(&at),
            "diagram descent left the constraint set"
        );
        let i = dmul_at(p, &at)?;
        assert_eq!(ddeg_at(p, &at)?, top, "structure invariant: ddeg at equalizer");
        assert!(i < top, "structure invariant: dmul drops at equalizer");
        if let Some(prev) = eqs.last() {
            assert!(alpha > *prev, "equalizer exponents must increase in the descent");
        }
        seq.push(i);
        eqs.push(alpha);
        top = i;
    }
    assert_eq!(top, mul);
    seq.reverse();
    eqs.reverse();
    Ok(NewtonDiagram {
        i_sequence: seq,
        equalizer_exponents: eqs,
    })
}

/// The algebraic starting monomials of `P` in the set: exactly the diagram's
/// equalizers, returned as ascending exponents.
pub fn algebraic_starting_monomials(p: &DiffPoly, e: &EConstraint) -> Result<Vec<Rat>, Error> {
    let diag = newton_diagram(p, e)?;
    let mut v = diag.equalizer_exponents;
    v.sort();
    let bound = p.degree()? - p.mul_at_zero()?;
    assert!(v.len() <= bound, "more starting monomials than deg - mul");
    Ok(v)
}

/// `(dmul P_{×t^gamma}, ddeg P_{×t^gamma})` read off the full diagram, then
/// cross-checked against the direct dominant-part computation.
pub fn ddeg_profile(p: &DiffPoly, gamma: &GroupElement) -> Result<(usize, usize), Error> {
    let diag = newton_diagram(p, &EConstraint::All)?;
    let g = rank1_exponent(gamma)?;
    let is = &diag.i_sequence;
    let es = &diag.equalizer_exponents; // decreasing: e_1 > e_2 > ... > e_n
    let n = es.len();
    let predicted = if n == 0 {
        (is[0], is[0])
    } else {
        // dmul = i_0 iff g >= e_1; = i_m iff e_m > g >= e_{m+1}; = i_n iff g < e_n
        let dmul = if g >= es[0] {
            is[0]
        } else {
            let mut val = is[n];
            for m in 1..n {
                if es[m - 1] > g && g >= es[m] {
                    val = is[m];
                    break;
                }
            }
            val
        };
        // ddeg = i_0 iff g > e_1; = i_m iff e_m >= g > e_{m+1}; = i_n iff g <= e_n
        let ddeg = if g > es[0] {
            is[0]
        } else {
            let mut val = is[n];
            for m in 1..n {
                if es[m - 1] >= g && g > es[m] {
                    val = is[m];
                    break;
                }
            }
            val
        };
        (dmul, ddeg)
    };
    let direct = (dmul_at(p, gamma)?, ddeg_at(p, gamma)?);
    assert_eq!(predicted, direct, "profile disagrees with dominant parts");
    Ok(predicted)
}

/// The dominant-degree trace along a finite cut chain.
#[derive(Debug, Clone, Serialize)]
pub struct ChainDdeg {
    pub values: Vec<usize>,
    pub stabilized: bool,
    pub value: usize,
}

/// For each chain point `a_r`, computes `ddeg_{>= gamma_r} P_{+a_r}` where
/// `gamma_r` is the step valuation. The last point has no outgoing step;
/// it is assigned the previous step plus one (or 0 for a single point),
/// a finite-prefix surrogate for "the chain keeps going".
pub fn ddeg_along_chain(p: &DiffPoly, chain: &CutChain) -> Result<ChainDdeg, Error> {
    if p.preset().dim != 1 {
        return Err(Error::RequiresDimOne);
    }
    let steps = chain.step_valuations();
    let points = chain.points();
    let mut values = Vec::with_capacity(points.len());
    for (idx, a) in points.iter().enumerate() {
        let gamma = if idx < steps.len() {
            steps[idx].clone()
        } else if idx == 0 {
            GroupElement::zero(p.preset().dim)
        } else {
            steps[idx - 1].add(&GroupElement::unit(p.preset().dim, 0))
        };
        let shifted = p.add_conjugate(a)?;
        values.push(ddeg_at(&shifted, &gamma)?);
    }
    let stabilized = values.len() >= 2 && values[values.len() - 1] == values[values.len() - 2];
    let value = *values.last().expect("chain has at least one point");
    Ok(ChainDdeg {
        values,
        stabilized,
        value,
    })
}
