//! Truncated Hahn series over an exact residue field, with a configurable
//! small derivation.
//!
//! Every series carries a precision certificate: all stored exponents lie
//! strictly below `precision`, and nothing is claimed about the tail at or
//! beyond it. Exact series have infinite precision and are closed under the
//! ring operations.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;

use crate::ratfunc::RatFunc;
use crate::valgroup::{ExtGroupElement, GroupElement};
use crate::{rat_str, Rat};

/// Which residue field and derivation the ambient field uses.
///
/// * `HType`: k = Q with trivial induced derivation and
///   `(c t^q)' = -q c t^(q+1)`; asymptotic with few constants.
/// * `Monotone`: k = Q(z) with induced derivation d/dz and
///   `(c t^q)' = (dc/dz) t^q`; monotone with many constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PresetKind {
    HType,
    Monotone,
}

/// A field preset: residue kind plus the lexicographic group dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FieldPreset {
    pub kind: PresetKind,
    pub dim: usize,
}

impl FieldPreset {
    pub fn new(kind: PresetKind, dim: usize) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::Invalid("group dimension must be >= 1".into()));
        }
        if kind == PresetKind::HType && dim != 1 {
            return Err(Error::HTypeDimension);
        }
        Ok(FieldPreset { kind, dim })
    }

    pub fn h_type() -> Self {
        FieldPreset { kind: PresetKind::HType, dim: 1 }
    }

    pub fn monotone() -> Self {
        FieldPreset { kind: PresetKind::Monotone, dim: 1 }
    }

    /// The n-dimensional monotone variant used to exercise coarsening.
    pub fn monotone_n(dim: usize) -> Result<Self, Error> {
        FieldPreset::new(PresetKind::Monotone, dim)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            PresetKind::HType => "h-type",
            PresetKind::Monotone => "monotone",
        }
    }

    pub fn zero_exp(&self) -> GroupElement {
        GroupElement::zero(self.dim)
    }

    /// The exponent shift of a single derivation step (h-type only).
    fn derive_shift(&self) -> GroupElement {
        GroupElement::unit(self.dim, self.dim - 1)
    }
}

/// An element of the residue field: a rational for h-type, a rational
/// function of z for monotone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ResidueElem {
    Q(Rat),
    Fz(RatFunc),
}

impl ResidueElem {
    pub fn zero(kind: PresetKind) -> Self {
        match kind {
            PresetKind::HType => ResidueElem::Q(Rat::zero()),
            PresetKind::Monotone => ResidueElem::Fz(RatFunc::zero()),
        }
    }

    pub fn one(kind: PresetKind) -> Self {
        match kind {
            PresetKind::HType => ResidueElem::Q(Rat::one()),
            PresetKind::Monotone => ResidueElem::Fz(RatFunc::one()),
        }
    }

    pub fn from_rat(kind: PresetKind, r: Rat) -> Self {
        match kind {
            PresetKind::HType => ResidueElem::Q(r),
            PresetKind::Monotone => ResidueElem::Fz(RatFunc::constant(r)),
        }
    }

    pub fn from_int(kind: PresetKind, n: i64) -> Self {
        Self::from_rat(kind, crate::rat_int(n))
    }

    pub fn kind(&self) -> PresetKind {
        match self {
            ResidueElem::Q(_) => PresetKind::HType,
            ResidueElem::Fz(_) => PresetKind::Monotone,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ResidueElem::Q(r) => r.is_zero(),
            ResidueElem::Fz(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ResidueElem::Q(r) => r.is_one(),
            ResidueElem::Fz(f) => *f == RatFunc::one(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ResidueElem::Q(a), ResidueElem::Q(b)) => ResidueElem::Q(a + b),
            (ResidueElem::Fz(a), ResidueElem::Fz(b)) => ResidueElem::Fz(a.add(b)),
            _ => panic!("residue field mismatch"),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            ResidueElem::Q(a) => ResidueElem::Q(-a.clone()),
            ResidueElem::Fz(a) => ResidueElem::Fz(a.neg()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (ResidueElem::Q(a), ResidueElem::Q(b)) => ResidueElem::Q(a * b),
            (ResidueElem::Fz(a), ResidueElem::Fz(b)) => ResidueElem::Fz(a.mul(b)),
            _ => panic!("residue field mismatch"),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        match self {
            ResidueElem::Q(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(ResidueElem::Q(Rat::one() / a))
                }
            }
            ResidueElem::Fz(a) => a.recip().map(ResidueElem::Fz),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        match self {
            ResidueElem::Q(a) => ResidueElem::Q(a * c),
            ResidueElem::Fz(a) => ResidueElem::Fz(a.scale(c)),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        match self {
            ResidueElem::Q(a) => {
                let mut acc = Rat::one();
                for _ in 0..e {
                    acc *= a;
                }
                ResidueElem::Q(acc)
            }
            ResidueElem::Fz(a) => ResidueElem::Fz(a.pow(e)),
        }
    }

    /// The induced residue-field derivation: 0 on Q, d/dz on Q(z).
    pub fn delta(&self) -> Self {
        match self {
            ResidueElem::Q(_) => ResidueElem::Q(Rat::zero()),
            ResidueElem::Fz(a) => ResidueElem::Fz(a.derivative()),
        }
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match self {
            ResidueElem::Q(a) => Some(a.clone()),
            ResidueElem::Fz(a) => a.as_constant(),
        }
    }

    /// Splits off a leading sign for display and returns the magnitude text.
    pub(crate) fn signed_text(&self) -> (bool, String) {
        match self {
            ResidueElem::Q(r) => (r.is_negative(), rat_str(&r.abs())),
            ResidueElem::Fz(f) => {
                if let Some(c) = f.as_constant() {
                    (c.is_negative(), rat_str(&c.abs()))
                } else if f.is_polynomial() && f.num().coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
                    let d = f.num().degree().unwrap();
                    let c = f.num().coeff(d);
                    let var = if d == 1 { "z".to_string() } else { format!("z^{d}") };
                    if c.abs().is_one() {
                        (c.is_negative(), var)
                    } else {
                        (c.is_negative(), format!("{}*{}", rat_str(&c.abs()), var))
                    }
                } else if f.is_polynomial() {
                    (false, format!("({})", f.num()))
                } else {
                    (false, format!("({})", f))
                }
            }
        }
    }
}

impl std::fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResidueElem::Q(r) => write!(f, "{}", rat_str(r)),
            ResidueElem::Fz(r) => write!(f, "{r}"),
        }
    }
}

/// What is known about the valuation of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValInfo {
    /// Nonzero with this exact valuation.
    Known(GroupElement),
    /// Exactly zero.
    Zero,
    /// No terms stored but only finite precision: indistinguishable from
    /// zero below the bound.
    Unknown(GroupElement),
}

/// How `a` relates to `b` in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DominanceRel {
    /// a is strictly smaller: `a ≺ b`.
    Precedes,
    /// a is strictly larger: `a ≻ b`.
    Succeeds,
    /// same valuation but not asymptotically equal: `a ≍ b`.
    Asymp,
    /// asymptotically equal: `a ∼ b` (difference below b).
    Sim,
    /// truncation hides the answer.
    IncomparableAtPrecision,
}

impl std::fmt::Display for DominanceRel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DominanceRel::Precedes => "prec",
            DominanceRel::Succeeds => "succ",
            DominanceRel::Asymp => "asymp",
            DominanceRel::Sim => "sim",
            DominanceRel::IncomparableAtPrecision => "incomparable-at-precision",
        };
        write!(f, "{s}")
    }
}

/// Coarsened dominance relative to `Gamma_phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoarseRel {
    PrecPhi,
    SuccPhi,
    AsympPhi,
}

/// A finite-support Hahn series with an explicit precision bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    preset: FieldPreset,
    terms: BTreeMap<GroupElement, ResidueElem>,
    precision: ExtGroupElement,
}

impl Series {
    fn normalized(
        preset: FieldPreset,
        terms: BTreeMap<GroupElement, ResidueElem>,
        precision: ExtGroupElement,
    ) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(g, c)| {
                !c.is_zero()
                    && match &precision {
                        ExtGroupElement::Finite(p) => g < p,
                        ExtGroupElement::Infinity => true,
                    }
            })
            .collect();
        Series { preset, terms, precision }
    }

    pub fn zero(preset: FieldPreset) -> Self {
        Series {
            preset,
            terms: BTreeMap::new(),
            precision: ExtGroupElement::Infinity,
        }
    }

    pub fn one(preset: FieldPreset) -> Self {
        Series::constant(preset, ResidueElem::one(preset.kind))
    }

    pub fn constant(preset: FieldPreset, c: ResidueElem) -> Self {
        assert_eq!(c.kind(), preset.kind, "residue kind mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(preset.zero_exp(), c);
        }
        Series { preset, terms, precision: ExtGroupElement::Infinity }
    }

    pub fn from_int(preset: FieldPreset, n: i64) -> Self {
        Series::constant(preset, ResidueElem::from_int(preset.kind, n))
    }

    /// The exact monomial `c * t^gamma`.
    pub fn monomial(preset: FieldPreset, c: ResidueElem, gamma: GroupElement) -> Self {
        assert_eq!(c.kind(), preset.kind, "residue kind mismatch");
        assert_eq!(gamma.dim(), preset.dim, "exponent dimension mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(gamma, c);
        }
        Series { preset, terms, precision: ExtGroupElement::Infinity }
    }

    /// `t^q` in the rank-1 group.
    pub fn t_pow(preset: FieldPreset, q: Rat) -> Self {
        Series::monomial(preset, ResidueElem::one(preset.kind), GroupElement::rank1(q))
    }

    pub fn from_terms(
        preset: FieldPreset,
        terms: impl IntoIterator<Item = (GroupElement, ResidueElem)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (g, c) in terms {
            assert_eq!(g.dim(), preset.dim);
            assert_eq!(c.kind(), preset.kind);
            let entry = map.remove(&g).map_or(c.clone(), |old: ResidueElem| old.add(&c));
            if !entry.is_zero() {
                map.insert(g, entry);
            }
        }
        Series { preset, terms: map, precision: ExtGroupElement::Infinity }
    }

    pub fn preset(&self) -> FieldPreset {
        self.preset
    }

    pub fn precision(&self) -> &ExtGroupElement {
        &self.precision
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &ResidueElem)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_infinite()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    /// No stored terms: either exactly zero or zero-at-this-precision.
    pub fn is_vacuous(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_at(&self, g: &GroupElement) -> ResidueElem {
        self.terms
            .get(g)
            .cloned()
            .unwrap_or_else(|| ResidueElem::zero(self.preset.kind))
    }

    pub fn val_info(&self) -> ValInfo {
        match self.terms.keys().next() {
            Some(g) => ValInfo::Known(g.clone()),
            None => match &self.precision {
                ExtGroupElement::Infinity => ValInfo::Zero,
                ExtGroupElement::Finite(p) => ValInfo::Unknown(p.clone()),
            },
        }
    }

    /// The valuation; `Infinity` for exact zero, an error sentinel when the
    /// series has no terms but only finite precision.
    pub fn valuation(&self) -> Result<ExtGroupElement, Error> {
        match self.val_info() {
            ValInfo::Known(g) => Ok(ExtGroupElement::Finite(g)),
            ValInfo::Zero => Ok(ExtGroupElement::Infinity),
            ValInfo::Unknown(p) => Err(Error::BelowPrecision { bound: p.to_string() }),
        }
    }

    /// The valuation of a detectably nonzero series.
    pub fn val(&self) -> Result<GroupElement, Error> {
        match self.val_info() {
            ValInfo::Known(g) => Ok(g),
            ValInfo::Zero => Err(Error::ZeroInput("valuation of nonzero element")),
            ValInfo::Unknown(p) => Err(Error::BelowPrecision { bound: p.to_string() }),
        }
    }

    fn check_preset(&self, other: &Self) -> Result<(), Error> {
        if self.preset == other.preset {
            Ok(())
        } else {
            Err(Error::PresetMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_preset(other)?;
        let precision = self.precision.clone().min(other.precision.clone());
        let mut terms = self.terms.clone();
        for (g, c) in &other.terms {
            let entry = terms.remove(g).map_or(c.clone(), |old| old.add(c));
            if !entry.is_zero() {
                terms.insert(g.clone(), entry);
            }
        }
        Ok(Series::normalized(self.preset, terms, precision))
    }

    pub fn neg(&self) -> Self {
        Series {
            preset: self.preset,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c.neg())).collect(),
            precision: self.precision.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_preset(other)?;
        // error-term bookkeeping: v(a)+prec(b), v(b)+prec(a), prec(a)+prec(b)
        let va = self.terms.keys().next();
        let vb = other.terms.keys().next();
        let mut precision = self.precision.clone().add(&other.precision);
        if let Some(vb) = vb {
            precision = precision.min(self.precision.clone().add_finite(vb));
        }
        if let Some(va) = va {
            precision = precision.min(other.precision.clone().add_finite(va));
        }
        let mut terms: BTreeMap<GroupElement, ResidueElem> = BTreeMap::new();
        for (g1, c1) in &self.terms {
            for (g2, c2) in &other.terms {
                let g = g1.add(g2);
                let c = c1.mul(c2);
                let entry = terms.remove(&g).map_or(c.clone(), |old| old.add(&c));
                if !entry.is_zero() {
                    terms.insert(g, entry);
                }
            }
        }
        Ok(Series::normalized(self.preset, terms, precision))
    }

    pub fn scale(&self, c: &ResidueElem) -> Self {
        assert_eq!(c.kind(), self.preset.kind);
        if c.is_zero() {
            // scaling by zero keeps no information problem: exact zero
            return Series::zero(self.preset);
        }
        Series {
            preset: self.preset,
            terms: self
                .terms
                .iter()
                .map(|(g, x)| (g.clone(), x.mul(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
            precision: self.precision.clone(),
        }
    }

    /// Multiplication by the exact monomial `c * t^gamma` (no precision loss
    /// beyond the exponent shift).
    pub fn mul_monomial(&self, c: &ResidueElem, gamma: &GroupElement) -> Self {
        let shifted = Series {
            preset: self.preset,
            terms: self
                .terms
                .iter()
                .map(|(g, x)| (g.add(gamma), x.mul(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
            precision: self.precision.add_finite(gamma),
        };
        if c.is_zero() {
            Series::zero(self.preset)
        } else {
            shifted
        }
    }

    /// Intersects the precision with `p`, dropping terms at or beyond it.
    pub fn truncate_to(&self, p: &ExtGroupElement) -> Self {
        let precision = self.precision.clone().min(p.clone());
        Series::normalized(self.preset, self.terms.clone(), precision)
    }

    /// Termwise derivation per the preset.
    pub fn derive(&self) -> Self {
        match self.preset.kind {
            PresetKind::HType => {
                let shift = self.preset.derive_shift();
                let terms = self
                    .terms
                    .iter()
                    .map(|(g, c)| {
                        let q = &g.coords()[self.preset.dim - 1];
                        (g.add(&shift), c.scale_rat(&-q.clone()))
                    })
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                let precision = self.precision.add_finite(&shift);
                Series::normalized(self.preset, terms, precision)
            }
            PresetKind::Monotone => {
                let terms = self
                    .terms
                    .iter()
                    .map(|(g, c)| (g.clone(), c.delta()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                Series::normalized(self.preset, terms, self.precision.clone())
            }
        }
    }

    /// Splits a detectably nonzero `f` as `t^v(f) * u` with `u ≍ 1`.
    pub fn dominant_split(&self) -> Result<(GroupElement, Series), Error> {
        let gamma = self.val()?;
        let unit = self.mul_monomial(&ResidueElem::one(self.preset.kind), &gamma.neg());
        Ok((gamma, unit))
    }

    /// The image in the residue field (requires v >= 0).
    pub fn residue(&self) -> Result<ResidueElem, Error> {
        let zero_exp = self.preset.zero_exp();
        if let Some(g) = self.terms.keys().next() {
            if *g < zero_exp {
                return Err(Error::NegativeValuation);
            }
        }
        if let Some(c) = self.terms.get(&zero_exp) {
            return Ok(c.clone());
        }
        match &self.precision {
            ExtGroupElement::Finite(p) if *p <= zero_exp => Err(Error::BelowPrecision {
                bound: p.to_string(),
            }),
            _ => Ok(ResidueElem::zero(self.preset.kind)),
        }
    }

    /// Multiplicative inverse, accurate below `out_precision`.
    pub fn invert(&self, out_precision: &GroupElement) -> Result<Self, Error> {
        let gamma = match self.val_info() {
            ValInfo::Known(g) => g,
            ValInfo::Zero => return Err(Error::ZeroInput("invert")),
            ValInfo::Unknown(p) => {
                return Err(Error::BelowPrecision { bound: p.to_string() })
            }
        };
        let lead = self.terms.get(&gamma).unwrap().clone();
        let lead_inv = lead.recip().expect("leading coefficient is a unit");
        if self.terms.len() == 1 && self.is_exact() {
            return Ok(Series::monomial(self.preset, lead_inv, gamma.neg()));
        }
        // self = lead * t^gamma * (1 + e) with v(e) > 0. The contract is on
        // the product: self * result = 1 + O(t^out), so the Neumann sum for
        // (1+e)^{-1} runs until (-e)^K reaches out_precision and the result
        // is kept to out_precision - gamma.
        let unit = self.mul_monomial(&lead_inv, &gamma.neg());
        let e = unit.sub(&Series::one(self.preset))?;
        let tail_target = out_precision.clone();
        let mut acc = Series::one(self.preset);
        let mut power = Series::one(self.preset);
        let neg_e = e.neg();
        let mut reached = false;
        for _ in 0..4096 {
            power = power.mul(&neg_e)?;
            match power.val_info() {
                ValInfo::Known(v) => {
                    if v >= tail_target {
                        reached = true;
                        break;
                    }
                    acc = acc.add(&power)?;
                }
                // nothing visible anymore: record the precision cap and stop
                ValInfo::Unknown(_) => {
                    acc = acc.add(&power)?;
                    reached = true;
                    break;
                }
                ValInfo::Zero => {
                    reached = true;
                    break;
                }
            }
        }
        if !reached {
            return Err(Error::PrecisionExhausted(format!(
                "inverse tail did not reach {out_precision} within the iteration bound"
            )));
        }
        let inv = acc.mul_monomial(&lead_inv, &gamma.neg());
        Ok(inv.truncate_to(&ExtGroupElement::Finite(out_precision.sub(&gamma))))
    }

    /// Strongest certain dominance relation between `self` and `other`.
    ///
    /// Comparisons involving a series with no visible terms and finite
    /// precision are reported incomparable rather than guessed.
    pub fn dominance(&self, other: &Self) -> DominanceRel {
        let a = self.val_info();
        let b = other.val_info();
        if matches!(a, ValInfo::Unknown(_)) || matches!(b, ValInfo::Unknown(_)) {
            return DominanceRel::IncomparableAtPrecision;
        }
        match (a, b) {
            (ValInfo::Zero, ValInfo::Zero) => DominanceRel::Asymp,
            (ValInfo::Zero, ValInfo::Known(_)) => DominanceRel::Precedes,
            (ValInfo::Known(_), ValInfo::Zero) => DominanceRel::Succeeds,
            (ValInfo::Known(va), ValInfo::Known(vb)) => {
                if va > vb {
                    DominanceRel::Precedes
                } else if va < vb {
                    DominanceRel::Succeeds
                } else {
                    let d = self.sub(other).expect("same preset");
                    match d.val_info() {
                        ValInfo::Zero => DominanceRel::Sim,
                        ValInfo::Known(vd) => {
                            if vd > vb {
                                DominanceRel::Sim
                            } else {
                                DominanceRel::Asymp
                            }
                        }
                        // both operands have a term at vb below their
                        // precision, so the difference is certified there
                        ValInfo::Unknown(p) => {
                            debug_assert!(p > vb);
                            DominanceRel::Sim
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn preceq(&self, other: &Self) -> bool {
        matches!(
            self.dominance(other),
            DominanceRel::Precedes | DominanceRel::Asymp | DominanceRel::Sim
        )
    }

    pub fn prec(&self, other: &Self) -> bool {
        self.dominance(other) == DominanceRel::Precedes
    }

    /// Dominance coarsened by the convex subgroup `Gamma_phi`.
    pub fn coarse_dominance(
        &self,
        other: &Self,
        v_phi: &GroupElement,
    ) -> Result<CoarseRel, Error> {
        let va = self.val()?;
        let vb = other.val()?;
        Ok(coarse_rel(&va, &vb, v_phi)?)
    }
}

/// Coarsened relation on valuations: `a ≍_phi b` iff va - vb lies in
/// `Gamma_phi`, otherwise the sign of the difference decides.
pub fn coarse_rel(
    va: &GroupElement,
    vb: &GroupElement,
    v_phi: &GroupElement,
) -> Result<CoarseRel, Error> {
    if v_phi.is_zero() {
        return Err(Error::InvalidCoarsening);
    }
    let d = va.sub(vb);
    if d.in_gamma_phi(v_phi)? {
        Ok(CoarseRel::AsympPhi)
    } else if d > GroupElement::zero(d.dim()) {
        Ok(CoarseRel::PrecPhi)
    } else {
        Ok(CoarseRel::SuccPhi)
    }
}

/// `va >=_phi vb` in the coarsened order (i.e. a preceq_phi b).
pub fn coarse_preceq(
    va: &GroupElement,
    vb: &GroupElement,
    v_phi: &GroupElement,
) -> Result<bool, Error> {
    Ok(!matches!(coarse_rel(va, vb, v_phi)?, CoarseRel::SuccPhi))
}

/// `a ≺_phi b` on valuations.
pub fn coarse_prec(
    va: &GroupElement,
    vb: &GroupElement,
    v_phi: &GroupElement,
) -> Result<bool, Error> {
    Ok(matches!(coarse_rel(va, vb, v_phi)?, CoarseRel::PrecPhi))
}

impl std::fmt::Display for Series {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        for (g, c) in &self.terms {
            let (neg, mag) = c.signed_text();
            if !wrote {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            wrote = true;
            let is_zero_exp = g.is_zero();
            let coeff_is_one = mag == "1";
            if !coeff_is_one || is_zero_exp {
                write!(f, "{mag}")?;
            }
            if !is_zero_exp {
                if !coeff_is_one {
                    write!(f, "*")?;
                }
                write!(f, "{}", t_pow_str(g))?;
            }
        }
        match &self.precision {
            ExtGroupElement::Finite(p) => {
                if wrote {
                    write!(f, " + ")?;
                }
                write!(f, "O({})", t_pow_str_forced(p))?;
            }
            ExtGroupElement::Infinity => {
                if !wrote {
                    write!(f, "0")?;
                }
            }
        }
        Ok(())
    }
}

fn t_pow_str(g: &GroupElement) -> String {
    if g.dim() == 1 {
        let q = &g.coords()[0];
        if q.is_one() {
            "t".to_string()
        } else if q.denom().is_one() && !q.is_negative() {
            format!("t^{}", q.numer())
        } else {
            format!("t^({})", rat_str(q))
        }
    } else {
        format!("t^{g}")
    }
}

fn t_pow_str_forced(g: &GroupElement) -> String {
    if g.is_zero() {
        return "t^0".to_string();
    }
    t_pow_str(g)
}

/// Outcome of a randomized field-law check.
#[derive(Debug, Clone, Serialize)]
pub struct FieldCheckReport {
    pub preset: String,
    pub dim: usize,
    pub law: String,
    pub samples: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Samples f in the maximal ideal and checks v(f') > 0.
pub fn check_small_derivation(preset: FieldPreset, samples: usize, seed: u64) -> FieldCheckReport {
    let mut sampler = crate::sampling::Sampler::new(preset, seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let f = sampler.small_series();
        let fp = f.derive();
        let ok = match fp.val_info() {
            ValInfo::Known(v) => v > GroupElement::zero(preset.dim),
            ValInfo::Zero => true,
            ValInfo::Unknown(_) => false,
        };
        if !ok && failures.len() < 5 {
            failures.push(format!("f = {f}, f' = {fp}"));
        }
    }
    FieldCheckReport {
        preset: preset.name().to_string(),
        dim: preset.dim,
        law: "small derivation".to_string(),
        samples,
        passed: failures.is_empty(),
        failures,
    }
}

/// For h-type, samples f, g in the maximal ideal and checks
/// `f ≺ g ⟺ f' ≺ g'` in both directions; for monotone, checks the
/// monotonicity law `v(f') >= v(f)` instead.
pub fn check_asymptotic(preset: FieldPreset, samples: usize, seed: u64) -> FieldCheckReport {
    let mut sampler = crate::sampling::Sampler::new(preset, seed.wrapping_add(1));
    let mut failures = Vec::new();
    let law = match preset.kind {
        PresetKind::HType => "asymptotic (f prec g iff f' prec g')",
        PresetKind::Monotone => "monotone (v(f') >= v(f))",
    };
    for _ in 0..samples {
        match preset.kind {
            PresetKind::HType => {
                let f = sampler.small_series();
                let g = sampler.small_series();
                let lhs = f.prec(&g);
                let rhs = f.derive().prec(&g.derive());
                if lhs != rhs && failures.len() < 5 {
                    failures.push(format!("f = {f}, g = {g}"));
                }
            }
            PresetKind::Monotone => {
                let f = sampler.small_series();
                let fp = f.derive();
                let ok = match (fp.val_info(), f.val_info()) {
                    (ValInfo::Zero, _) => true,
                    (ValInfo::Known(a), ValInfo::Known(b)) => a >= b,
                    _ => false,
                };
                if !ok && failures.len() < 5 {
                    failures.push(format!("f = {f}, f' = {fp}"));
                }
            }
        }
    }
    FieldCheckReport {
        preset: preset.name().to_string(),
        dim: preset.dim,
        law: law.to_string(),
        samples,
        passed: failures.is_empty(),
        failures,
    }
}
