//! Dominant parts of differential polynomials and the dominant degree,
//! including its relativization to ≼-closed constraint sets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diffpoly::{DiffPoly, MultiIndex};
use crate::error::Error;
use crate::series::{FieldPreset, PresetKind, ResidueElem, Series, ValInfo};
use crate::valgroup::GroupElement;
use crate::Rat;

/// A differential polynomial over the residue field k{Y}; evaluation sends
/// `Y^{(j)}` to the j-th residue derivative of the argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResiduePoly {
    kind: PresetKind,
    coeffs: BTreeMap<MultiIndex, ResidueElem>,
}

impl ResiduePoly {
    pub fn zero(kind: PresetKind) -> Self {
        ResiduePoly { kind, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(
        kind: PresetKind,
        terms: impl IntoIterator<Item = (MultiIndex, ResidueElem)>,
    ) -> Self {
        let mut p = ResiduePoly::zero(kind);
        for (i, c) in terms {
            p.insert_add(i, c);
        }
        p
    }

    fn insert_add(&mut self, idx: MultiIndex, c: ResidueElem) {
        debug_assert_eq!(c.kind(), self.kind);
        let merged = match self.coeffs.remove(&idx) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.coeffs.insert(idx, merged);
        }
    }

    pub fn kind(&self) -> PresetKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ResidueElem)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> ResidueElem {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| ResidueElem::zero(self.kind))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|i| i.degree()).max()
    }

    pub fn mul_at_zero(&self) -> Option<usize> {
        self.coeffs.keys().map(|i| i.degree()).min()
    }

    pub fn order(&self) -> usize {
        self.coeffs.keys().map(|i| i.order()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.mul_at_zero()
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        ResiduePoly {
            kind: self.kind,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(i, _)| i.degree() == d)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.insert_add(i.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ResiduePoly {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|(i, c)| (i.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ResiduePoly::zero(self.kind);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.insert_add(i.add(j), a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: &ResidueElem) -> Self {
        if c.is_zero() {
            return ResiduePoly::zero(self.kind);
        }
        ResiduePoly {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|(i, x)| (i.clone(), x.mul(c))).collect(),
        }
    }

    pub fn partial(&self, i: &MultiIndex) -> Self {
        let mut out = ResiduePoly::zero(self.kind);
        for (j, c) in &self.coeffs {
            if let Some(rest) = j.checked_sub(i) {
                let fall = j.falling_product(i);
                out.insert_add(rest, c.scale_rat(&Rat::from_integer(fall)));
            }
        }
        out
    }

    /// Evaluates at `u` in the residue field, substituting the iterated
    /// residue derivative for `Y^{(j)}`.
    pub fn evaluate(&self, u: &ResidueElem) -> ResidueElem {
        let width = self.coeffs.keys().map(|i| i.width()).max().unwrap_or(0);
        let mut derivs = Vec::with_capacity(width);
        if width > 0 {
            derivs.push(u.clone());
            for _ in 1..width {
                derivs.push(derivs.last().unwrap().delta());
            }
        }
        let mut acc = ResidueElem::zero(self.kind);
        for (idx, c) in &self.coeffs {
            let mut term = c.clone();
            for j in 0..idx.width() {
                let e = idx.get(j);
                if e > 0 {
                    term = term.mul(&derivs[j].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Additive conjugation inside k{Y}: substitutes `u + Y` for `Y`.
    pub fn add_conjugate(&self, u: &ResidueElem) -> Self {
        let width = self.coeffs.keys().map(|i| i.width()).max().unwrap_or(0);
        let mut derivs = Vec::with_capacity(width);
        if width > 0 {
            derivs.push(u.clone());
            for _ in 1..width {
                derivs.push(derivs.last().unwrap().delta());
            }
        }
        let mut out = ResiduePoly::zero(self.kind);
        for (j, c) in &self.coeffs {
            for i in j.sub_indices() {
                let rest = j.checked_sub(&i).unwrap();
                let mut coeff = c.scale_rat(&Rat::from_integer(j.binom_product(&i)));
                for m in 0..rest.width() {
                    let e = rest.get(m);
                    if e > 0 {
                        coeff = coeff.mul(&derivs[m].pow(e));
                    }
                }
                out.insert_add(i, coeff);
            }
        }
        out
    }

    /// Derivation of k{Y}: delta_k on coefficients, `Y^{(j)} -> Y^{(j+1)}`
    /// by the product rule.
    pub fn derive_poly(&self) -> Self {
        let mut out = ResiduePoly::zero(self.kind);
        for (idx, c) in &self.coeffs {
            out.insert_add(idx.clone(), c.delta());
            for j in 0..idx.width() {
                let e = idx.get(j);
                if e == 0 {
                    continue;
                }
                let stepped = idx
                    .checked_sub(&MultiIndex::unit(j))
                    .unwrap()
                    .add(&MultiIndex::unit(j + 1));
                out.insert_add(stepped, c.scale_rat(&Rat::from_integer((e as i64).into())));
            }
        }
        out
    }

    /// Multiplicative conjugation inside k{Y}: substitutes `(uY)^{(j)}`.
    pub fn mul_conjugate(&self, u: &ResidueElem) -> Self {
        let width = self.coeffs.keys().map(|i| i.width()).max().unwrap_or(0);
        let mut rows: Vec<ResiduePoly> = Vec::with_capacity(width);
        if width > 0 {
            rows.push(ResiduePoly::from_terms(
                self.kind,
                [(MultiIndex::unit(0), u.clone())],
            ));
            for _ in 1..width {
                rows.push(rows.last().unwrap().derive_poly());
            }
        }
        let mut out = ResiduePoly::zero(self.kind);
        for (idx, c) in &self.coeffs {
            let mut term = ResiduePoly::from_terms(self.kind, [(MultiIndex::empty(), c.clone())]);
            for j in 0..idx.width() {
                for _ in 0..idx.get(j) {
                    term = term.mul(&rows[j]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Dense coefficients of the purely algebraic monomials `Y^d`
    /// (derivative-free), lowest degree first.
    pub fn algebraic_coeffs(&self) -> Vec<ResidueElem> {
        let top = self
            .coeffs
            .keys()
            .filter(|i| i.order() == 0 || i.is_empty())
            .map(|i| i.degree())
            .max();
        let Some(top) = top else {
            return Vec::new();
        };
        (0..=top)
            .map(|d| {
                if d == 0 {
                    self.coeff(&MultiIndex::empty())
                } else {
                    self.coeff(&MultiIndex::new(vec![d as u32]))
                }
            })
            .collect()
    }

    /// True when some monomial involves a derivative of Y.
    pub fn has_derivative_monomials(&self) -> bool {
        self.coeffs.keys().any(|i| i.order() > 0)
    }
}

impl std::fmt::Display for ResiduePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&MultiIndex, &ResidueElem)> = self.coeffs.iter().collect();
        ordered.sort_by(|x, y| crate::diffpoly::render_order(x.0, y.0));
        let mut first = true;
        for (idx, c) in ordered {
            let (neg, text) = c.signed_text();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if idx.is_empty() {
                write!(f, "{text}")?;
            } else if text == "1" {
                write!(f, "{idx}")?;
            } else {
                write!(f, "{text}*{idx}")?;
            }
        }
        Ok(())
    }
}

/// A ≼-closed constraint set: all of K^×, `v >= gamma` (Y ≼ g), or
/// `v > gamma` (Y ≺ g).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EConstraint {
    All,
    ValGE(GroupElement),
    ValGT(GroupElement),
}

impl EConstraint {
    pub fn contains_val(&self, v: &GroupElement) -> bool {
        match self {
            EConstraint::All => true,
            EConstraint::ValGE(g) => v >= g,
            EConstraint::ValGT(g) => v > g,
        }
    }

    /// Membership of a series (which must be detectably nonzero).
    pub fn contains(&self, y: &Series) -> Result<bool, Error> {
        match y.val_info() {
            ValInfo::Known(v) => Ok(self.contains_val(&v)),
            ValInfo::Zero => Ok(false),
            ValInfo::Unknown(p) => {
                // everything hidden is deeper than p; that can still decide
                // membership for upward-closed sets
                if self.contains_val(&p) {
                    Ok(true)
                } else {
                    Err(Error::BelowPrecision { bound: p.to_string() })
                }
            }
        }
    }

    pub fn subset_of(&self, other: &EConstraint) -> bool {
        match (self, other) {
            (_, EConstraint::All) => true,
            (EConstraint::All, _) => false,
            (EConstraint::ValGE(a), EConstraint::ValGE(b)) => a >= b,
            (EConstraint::ValGE(a), EConstraint::ValGT(b)) => a > b,
            (EConstraint::ValGT(a), EConstraint::ValGT(b)) => a >= b,
            (EConstraint::ValGT(a), EConstraint::ValGE(b)) => a >= b,
        }
    }

    /// The shifted set `a * E` for `v(a) = gamma`.
    pub fn shift(&self, gamma: &GroupElement) -> EConstraint {
        match self {
            EConstraint::All => EConstraint::All,
            EConstraint::ValGE(g) => EConstraint::ValGE(g.add(gamma)),
            EConstraint::ValGT(g) => EConstraint::ValGT(g.add(gamma)),
        }
    }
}

impl std::fmt::Display for EConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EConstraint::All => write!(f, "Y in K*"),
            EConstraint::ValGE(g) => write!(f, "Y preceq t^({g})"),
            EConstraint::ValGT(g) => write!(f, "Y prec t^({g})"),
        }
    }
}

impl Serialize for EConstraint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Dominant part of `P` together with a provenance flag recording whether
/// any coefficient information was dropped below a finite precision.
#[derive(Debug, Clone)]
pub struct DominantPart {
    pub poly: ResiduePoly,
    pub from_truncated: bool,
}

/// Exponent of the dominant monomial: v(P) for detectably nonzero P.
pub fn dominant_monomial(p: &DiffPoly) -> Result<GroupElement, Error> {
    p.val()
}

/// `D_P`: residue image of `d_P^{-1} P`.
pub fn dominant_part(p: &DiffPoly) -> Result<DominantPart, Error> {
    let v = p.val()?;
    let kind = p.preset().kind;
    let mut terms = Vec::new();
    for (idx, c) in p.terms() {
        let res = c.coeff_at(&v);
        if !res.is_zero() {
            terms.push((idx.clone(), res));
        }
    }
    Ok(DominantPart {
        poly: ResiduePoly::from_terms(kind, terms),
        from_truncated: !p.floor().is_infinite(),
    })
}

/// Dominant degree `ddeg P = deg D_P`.
pub fn ddeg(p: &DiffPoly) -> Result<usize, Error> {
    Ok(dominant_part(p)?.poly.degree().expect("D_P is nonzero"))
}

/// Dominant multiplicity `dmul P = mul D_P`.
pub fn dmul(p: &DiffPoly) -> Result<usize, Error> {
    Ok(dominant_part(p)?.poly.mul_at_zero().expect("D_P is nonzero"))
}

fn conj_by_t_pow(p: &DiffPoly, gamma: &GroupElement) -> Result<DiffPoly, Error> {
    let m = Series::monomial(
        p.preset(),
        ResidueElem::one(p.preset().kind),
        gamma.clone(),
    );
    p.mul_conjugate(&m)
}

fn require_dim_one(preset: FieldPreset) -> Result<(), Error> {
    if preset.dim == 1 {
        Ok(())
    } else {
        Err(Error::RequiresDimOne)
    }
}

/// `ddeg P_{×t^gamma}` (= ddeg on `{v >= gamma}`).
pub fn ddeg_at(p: &DiffPoly, gamma: &GroupElement) -> Result<usize, Error> {
    ddeg(&conj_by_t_pow(p, gamma)?)
}

/// `dmul P_{×t^gamma}` (= ddeg on `{v > gamma}` when Gamma is dense).
pub fn dmul_at(p: &DiffPoly, gamma: &GroupElement) -> Result<usize, Error> {
    dmul(&conj_by_t_pow(p, gamma)?)
}

/// Dominant degree on a ≼-closed set.
///
/// `ValGE(g)` is `ddeg P_{×t^g}`; `ValGT(g)` is `dmul P_{×t^g}` (the set has
/// no smallest valuation, so dominant multiplicity takes over); `All` is
/// `deg P` (the top homogeneous part dominates for large negative
/// valuations).
pub fn ddeg_on(p: &DiffPoly, e: &EConstraint) -> Result<usize, Error> {
    require_dim_one(p.preset())?;
    match e {
        EConstraint::All => p.degree(),
        EConstraint::ValGE(g) => ddeg_at(p, g),
        EConstraint::ValGT(g) => dmul_at(p, g),
    }
}

/// Multiplicity of the residue point `u ≍ 1` in the dominant part of `P`:
/// `mul (D_P)_{+res(u)}`.
pub fn residue_multiplicity_at(p: &DiffPoly, u: &Series) -> Result<usize, Error> {
    let v = u.val()?;
    if !v.is_zero() {
        return Err(Error::Invalid("residue point must have valuation 0".into()));
    }
    let d = dominant_part(p)?;
    let shifted = d.poly.add_conjugate(&u.residue()?);
    Ok(shifted.mul_at_zero().expect("conjugate of a nonzero dominant part"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::FieldPreset;

    fn ht() -> FieldPreset {
        FieldPreset::h_type()
    }

    fn t_pow(q: i64) -> Series {
        Series::t_pow(ht(), crate::rat_int(q))
    }

    fn running() -> DiffPoly {
        DiffPoly::from_terms(
            ht(),
            [
                (MultiIndex::new(vec![2]), Series::one(ht())),
                (MultiIndex::new(vec![1]), t_pow(1)),
                (MultiIndex::empty(), t_pow(3)),
            ],
        )
    }

    fn conj(p: &DiffPoly, q: i64) -> DiffPoly {
        p.mul_conjugate(&t_pow(q)).unwrap()
    }

    #[test]
    fn dominant_monomial_examples() {
        assert_eq!(dominant_monomial(&running()).unwrap(), GroupElement::from_int(0));
        let p = DiffPoly::from_terms(
            ht(),
            [
                (MultiIndex::new(vec![0, 1]), t_pow(2)),
                (MultiIndex::empty(), t_pow(5)),
            ],
        );
        assert_eq!(dominant_monomial(&p).unwrap(), GroupElement::from_int(2));
        let q = DiffPoly::from_terms(ht(), [(MultiIndex::new(vec![1]), t_pow(-1))]);
        assert_eq!(dominant_monomial(&q).unwrap(), GroupElement::from_int(-1));
    }

    #[test]
    fn dominant_part_examples() {
        // D of the running example is Y^2
        let d = dominant_part(&running()).unwrap().poly;
        assert!(!d.has_derivative_monomials());
        assert_eq!(d.degree(), Some(2));
        assert_eq!(d.mul_at_zero(), Some(2));
        // t^2 (Y^2 + Y + t): divide by t^2 and take residues -> Y^2 + Y
        let p = DiffPoly::from_terms(
            ht(),
            [
                (MultiIndex::new(vec![2]), t_pow(2)),
                (MultiIndex::new(vec![1]), t_pow(2)),
                (MultiIndex::empty(), t_pow(3)),
            ],
        );
        let d = dominant_part(&p).unwrap().poly;
        assert_eq!(d.degree(), Some(2));
        assert_eq!(d.mul_at_zero(), Some(1));
        assert_eq!(d.coeff(&MultiIndex::new(vec![1])), ResidueElem::from_int(PresetKind::HType, 1));
    }

    #[test]
    fn ddeg_dmul_under_conjugation() {
        let p = running();
        assert_eq!((ddeg(&p).unwrap(), dmul(&p).unwrap()), (2, 2));
        let p1 = conj(&p, 1);
        assert_eq!((ddeg(&p1).unwrap(), dmul(&p1).unwrap()), (2, 1));
        let p2 = conj(&p, 2);
        assert_eq!((ddeg(&p2).unwrap(), dmul(&p2).unwrap()), (1, 0));
    }

    #[test]
    fn ddeg_on_constraints() {
        let p = running();
        assert_eq!(ddeg_on(&p, &EConstraint::ValGE(GroupElement::from_int(1))).unwrap(), 2);
        assert_eq!(ddeg_on(&p, &EConstraint::ValGT(GroupElement::from_int(1))).unwrap(), 1);
        assert_eq!(ddeg_on(&p, &EConstraint::All).unwrap(), 2);
        // spot check the All rule against a very negative conjugation
        assert_eq!(ddeg_at(&p, &GroupElement::from_int(-50)).unwrap(), 2);
    }

    #[test]
    fn residue_multiplicities() {
        // D = Y^2 + Y at u = -1 + t: mul (Y^2+Y)_{+(-1)} = 1
        let p = conj(&running(), 1);
        let u = Series::from_int(ht(), -1).add(&t_pow(1)).unwrap();
        assert_eq!(residue_multiplicity_at(&p, &u).unwrap(), 1);
        // D = Y^2 at u = 1: constant term 1, multiplicity 0
        let y2 = DiffPoly::from_terms(ht(), [(MultiIndex::new(vec![2]), Series::one(ht()))]);
        assert_eq!(residue_multiplicity_at(&y2, &Series::one(ht())).unwrap(), 0);
        // and at u = -1 likewise (constant term (-1)^2 = 1)
        assert_eq!(
            residue_multiplicity_at(&y2, &Series::from_int(ht(), -1)).unwrap(),
            0
        );
        assert!(residue_multiplicity_at(&y2, &t_pow(1)).is_err());
    }

    #[test]
    fn constraint_algebra() {
        let ge1 = EConstraint::ValGE(GroupElement::from_int(1));
        let gt1 = EConstraint::ValGT(GroupElement::from_int(1));
        let ge2 = EConstraint::ValGE(GroupElement::from_int(2));
        assert!(gt1.subset_of(&ge1));
        assert!(!ge1.subset_of(&gt1));
        assert!(ge2.subset_of(&gt1));
        assert!(ge1.subset_of(&EConstraint::All));
        assert!(gt1.contains(&t_pow(2)).unwrap());
        assert!(!gt1.contains(&t_pow(1)).unwrap());
        assert!(!EConstraint::All.contains(&Series::zero(ht())).unwrap());
        assert_eq!(
            ge1.shift(&GroupElement::from_int(2)),
            EConstraint::ValGE(GroupElement::from_int(3))
        );
    }
}
