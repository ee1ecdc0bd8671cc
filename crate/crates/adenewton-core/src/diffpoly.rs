//! Differential polynomials over the series field, stored by multi-index:
//! `Y^i = Y^{i_0} (Y')^{i_1} ... (Y^{(r)})^{i_r}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::series::{FieldPreset, ResidueElem, Series, ValInfo};
use crate::valgroup::{ExtGroupElement, GroupElement};

/// Exponent vector of a differential monomial, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        MultiIndex(v)
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// The monomial `(Y^{(j)})^1`.
    pub fn unit(j: usize) -> Self {
        let mut v = vec![0; j + 1];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// Total degree |i|.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    /// Order of the monomial: highest derivative actually present.
    pub fn order(&self) -> usize {
        if self.0.is_empty() {
            0
        } else {
            self.0.len() - 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        MultiIndex::new((0..n).map(|j| self.get(j) + other.get(j)).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = Vec::with_capacity(self.0.len());
        for j in 0..self.0.len() {
            let (a, b) = (self.get(j), other.get(j));
            if b > a {
                return None;
            }
            v.push(a - b);
        }
        Some(MultiIndex::new(v))
    }

    /// `i!` = product of coordinate factorials.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &x in &self.0 {
            for k in 2..=x {
                acc *= BigInt::from(k);
            }
        }
        acc
    }

    /// `prod_m C(j_m, i_m)` for `self = j`, `i = sub`.
    pub fn binom_product(&self, sub: &Self) -> BigInt {
        let mut acc = BigInt::one();
        for j in 0..self.0.len().max(sub.0.len()) {
            acc *= binom(self.get(j), sub.get(j));
        }
        acc
    }

    /// Falling factorial product `prod_m j_m (j_m - 1) ... (j_m - i_m + 1)`.
    pub fn falling_product(&self, sub: &Self) -> BigInt {
        let mut acc = BigInt::one();
        for j in 0..self.0.len().max(sub.0.len()) {
            let (n, k) = (self.get(j), sub.get(j));
            if k > n {
                return BigInt::ZERO;
            }
            for x in (n - k + 1)..=n {
                acc *= BigInt::from(x);
            }
        }
        acc
    }

    /// All indices `i <= self` componentwise, in ascending lex order.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for &cap in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (cap as usize + 1));
            for prefix in &out {
                for x in 0..=cap {
                    let mut p = prefix.clone();
                    p.push(x);
                    next.push(p);
                }
            }
            out = next;
        }
        let mut res: Vec<MultiIndex> = out.into_iter().map(MultiIndex::new).collect();
        res.sort();
        res
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::ZERO;
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    /// Lexicographic with implicit zero padding.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let n = self.0.len().max(other.0.len());
        for j in 0..n {
            match self.get(j).cmp(&other.get(j)) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let base = format!("Y{}", "'".repeat(j));
            if e == 1 {
                write!(f, "{base}")?;
            } else if j == 0 {
                write!(f, "{base}^{e}")?;
            } else {
                write!(f, "({base})^{e}")?;
            }
        }
        Ok(())
    }
}

/// `(order, degree in Y^{(order)}, total degree)`, ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct Complexity {
    pub order: usize,
    pub top_degree: usize,
    pub degree: usize,
}

/// A differential polynomial with series coefficients.
///
/// `floor` records the finest precision at which a coefficient was dropped
/// as zero-at-that-precision; valuations at or beyond the floor are
/// reported as unknown rather than guessed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffPoly {
    preset: FieldPreset,
    coeffs: BTreeMap<MultiIndex, Series>,
    floor: ExtGroupElement,
}

impl DiffPoly {
    pub fn zero(preset: FieldPreset) -> Self {
        DiffPoly {
            preset,
            coeffs: BTreeMap::new(),
            floor: ExtGroupElement::Infinity,
        }
    }

    pub fn from_terms(
        preset: FieldPreset,
        terms: impl IntoIterator<Item = (MultiIndex, Series)>,
    ) -> Self {
        let mut p = DiffPoly::zero(preset);
        for (idx, s) in terms {
            p.insert_add(idx, s);
        }
        p
    }

    pub fn constant(c: Series) -> Self {
        DiffPoly::from_terms(c.preset(), [(MultiIndex::empty(), c)])
    }

    /// The variable `Y^{(j)}`.
    pub fn y_derivative(preset: FieldPreset, j: usize) -> Self {
        DiffPoly::from_terms(preset, [(MultiIndex::unit(j), Series::one(preset))])
    }

    pub fn y(preset: FieldPreset) -> Self {
        DiffPoly::y_derivative(preset, 0)
    }

    fn insert_add(&mut self, idx: MultiIndex, s: Series) {
        debug_assert_eq!(s.preset(), self.preset);
        let merged = match self.coeffs.remove(&idx) {
            Some(old) => old.add(&s).expect("same preset"),
            None => s,
        };
        if merged.is_vacuous() {
            if let ExtGroupElement::Finite(p) = merged.precision() {
                self.floor = self.floor.clone().min(ExtGroupElement::Finite(p.clone()));
            }
        } else {
            self.coeffs.insert(idx, merged);
        }
    }

    pub fn preset(&self) -> FieldPreset {
        self.preset
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Series {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Series::zero(self.preset))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Series)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.coeffs.keys()
    }

    pub fn floor(&self) -> &ExtGroupElement {
        &self.floor
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.floor.is_infinite()
    }

    /// No visible coefficients (possibly only because of truncation).
    pub fn is_vacuous(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Storage width: 1 + the order bound implied by the support.
    pub fn width(&self) -> usize {
        self.coeffs.keys().map(|i| i.width()).max().unwrap_or(0)
    }

    pub fn order(&self) -> usize {
        self.coeffs.keys().map(|i| i.order()).max().unwrap_or(0)
    }

    pub fn degree(&self) -> Result<usize, Error> {
        self.coeffs
            .keys()
            .map(|i| i.degree())
            .max()
            .ok_or(Error::ZeroInput("degree"))
    }

    /// Least degree with a nonzero homogeneous part (`mul P`).
    pub fn mul_at_zero(&self) -> Result<usize, Error> {
        self.coeffs
            .keys()
            .map(|i| i.degree())
            .min()
            .ok_or(Error::ZeroInput("mul"))
    }

    pub fn complexity(&self) -> Result<Complexity, Error> {
        if self.coeffs.is_empty() {
            return Err(Error::ZeroInput("complexity"));
        }
        let order = self.order();
        let top_degree = self
            .coeffs
            .keys()
            .filter(|i| i.order() == order && !i.is_empty())
            .map(|i| i.get(order) as usize)
            .max()
            .unwrap_or(0);
        Ok(Complexity {
            order,
            top_degree,
            degree: self.degree()?,
        })
    }

    /// Degrees d with `P_d != 0`.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.coeffs.keys().map(|i| i.degree()).collect()
    }

    pub fn homogeneous_part(&self, d: usize) -> DiffPoly {
        DiffPoly {
            preset: self.preset,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(i, _)| i.degree() == d)
                .map(|(i, s)| (i.clone(), s.clone()))
                .collect(),
            floor: self.floor.clone(),
        }
    }

    /// `P_{<= d}`.
    pub fn truncate_deg(&self, d: usize) -> DiffPoly {
        DiffPoly {
            preset: self.preset,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(i, _)| i.degree() <= d)
                .map(|(i, s)| (i.clone(), s.clone()))
                .collect(),
            floor: self.floor.clone(),
        }
    }

    /// Minimum coefficient valuation, with truncation honestly reported.
    pub fn v_of(&self) -> ValInfo {
        let min = self
            .coeffs
            .values()
            .map(|s| s.val().expect("stored coefficients are nonempty"))
            .min();
        match (min, &self.floor) {
            (None, ExtGroupElement::Infinity) => ValInfo::Zero,
            (None, ExtGroupElement::Finite(p)) => ValInfo::Unknown(p.clone()),
            (Some(g), ExtGroupElement::Finite(p)) if &g >= p => ValInfo::Unknown(p.clone()),
            (Some(g), _) => ValInfo::Known(g),
        }
    }

    /// The valuation of a detectably nonzero polynomial.
    pub fn val(&self) -> Result<GroupElement, Error> {
        match self.v_of() {
            ValInfo::Known(g) => Ok(g),
            ValInfo::Zero => Err(Error::ZeroInput("v(P)")),
            ValInfo::Unknown(p) => Err(Error::BelowPrecision { bound: p.to_string() }),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.preset != other.preset {
            return Err(Error::PresetMismatch);
        }
        let mut out = DiffPoly {
            preset: self.preset,
            coeffs: BTreeMap::new(),
            floor: self.floor.clone().min(other.floor.clone()),
        };
        for (i, s) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.insert_add(i.clone(), s.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        DiffPoly {
            preset: self.preset,
            coeffs: self.coeffs.iter().map(|(i, s)| (i.clone(), s.neg())).collect(),
            floor: self.floor.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.preset != other.preset {
            return Err(Error::PresetMismatch);
        }
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(DiffPoly::zero(self.preset));
        }
        let mut out = DiffPoly {
            preset: self.preset,
            coeffs: BTreeMap::new(),
            // a dropped-coefficient floor scales with the partner's valuation
            floor: mul_floor(self, other),
        };
        for (i, s) in &self.coeffs {
            for (j, t) in &other.coeffs {
                out.insert_add(i.add(j), s.mul(t)?);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Series) -> Result<Self, Error> {
        self.mul(&DiffPoly::constant(c.clone()))
    }

    pub fn scale_residue(&self, c: &ResidueElem) -> Self {
        DiffPoly {
            preset: self.preset,
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, s)| (i.clone(), s.scale(c)))
                .filter(|(_, s)| !s.is_vacuous())
                .collect(),
            floor: self.floor.clone(),
        }
    }

    /// Applies the derivation of the field: coefficients derive and each
    /// `Y^{(j)}` steps to `Y^{(j+1)}` by the product rule.
    pub fn derive_poly(&self) -> Self {
        let mut out = DiffPoly {
            preset: self.preset,
            coeffs: BTreeMap::new(),
            floor: derive_floor(self),
        };
        for (idx, c) in &self.coeffs {
            out.insert_add(idx.clone(), c.derive());
            for j in 0..idx.width() {
                let e = idx.get(j);
                if e == 0 {
                    continue;
                }
                let stepped = idx
                    .checked_sub(&MultiIndex::unit(j))
                    .unwrap()
                    .add(&MultiIndex::unit(j + 1));
                let coeff = c.scale(&ResidueElem::from_int(self.preset.kind, e as i64));
                out.insert_add(stepped, coeff);
            }
        }
        out
    }

    /// Formal partial derivative `∂^i P`.
    pub fn partial(&self, i: &MultiIndex) -> Self {
        let mut out = DiffPoly {
            preset: self.preset,
            coeffs: BTreeMap::new(),
            floor: self.floor.clone(),
        };
        for (j, c) in &self.coeffs {
            if let Some(rest) = j.checked_sub(i) {
                let fall = j.falling_product(i);
                let coeff = c.scale(&ResidueElem::from_rat(
                    self.preset.kind,
                    crate::Rat::from_integer(fall),
                ));
                out.insert_add(rest, coeff);
            }
        }
        out
    }

    /// Substitutes the series `y` for `Y`.
    pub fn evaluate(&self, y: &Series) -> Result<Series, Error> {
        if y.preset() != self.preset {
            return Err(Error::PresetMismatch);
        }
        let width = self.width();
        let mut derivs = Vec::with_capacity(width);
        if width > 0 {
            derivs.push(y.clone());
            for _ in 1..width {
                derivs.push(derivs.last().unwrap().derive());
            }
        }
        let mut pow_cache: HashMap<(usize, u32), Series> = HashMap::new();
        let mut acc = Series::zero(self.preset);
        for (idx, c) in &self.coeffs {
            let mut term = c.clone();
            for j in 0..idx.width() {
                let e = idx.get(j);
                if e == 0 {
                    continue;
                }
                let p = series_pow(&mut pow_cache, &derivs, j, e)?;
                term = term.mul(&p)?;
            }
            acc = acc.add(&term)?;
        }
        // dropped coefficients evaluated at y ≼ max(1, y-ish): cap honesty
        if let ExtGroupElement::Finite(fl) = &self.floor {
            let cap = match y.val_info() {
                ValInfo::Known(v) if v < GroupElement::zero(self.preset.dim) => {
                    // negative-valuation y can amplify hidden coefficients;
                    // degree-many copies is enough at our scale
                    fl.add(&v.scale_int(self.degree().unwrap_or(0) as i64))
                }
                _ => fl.clone(),
            };
            acc = acc.truncate_to(&ExtGroupElement::Finite(cap));
        }
        Ok(acc)
    }

    /// Floor after conjugating by `a`: coefficients dropped at the floor
    /// multiply powers of `a` (or its derivatives, which are no smaller),
    /// so negative-valuation conjugation deepens the uncertainty by up to
    /// degree-many copies of v(a).
    fn conj_floor(&self, a: &Series) -> ExtGroupElement {
        match (&self.floor, a.val_info()) {
            (ExtGroupElement::Finite(fl), ValInfo::Known(v))
                if v < GroupElement::zero(self.preset.dim) =>
            {
                ExtGroupElement::Finite(
                    fl.add(&v.scale_int(self.degree().unwrap_or(0) as i64)),
                )
            }
            (fl, _) => fl.clone(),
        }
    }

    /// Additive conjugate `P_{+a}(Y) = P(a + Y)`, exact (binomial/Taylor
    /// expansion; division-free in this direction).
    pub fn add_conjugate(&self, a: &Series) -> Result<Self, Error> {
        if a.preset() != self.preset {
            return Err(Error::PresetMismatch);
        }
        let width = self.width();
        let mut derivs = Vec::with_capacity(width);
        if width > 0 {
            derivs.push(a.clone());
            for _ in 1..width {
                derivs.push(derivs.last().unwrap().derive());
            }
        }
        let mut pow_cache: HashMap<(usize, u32), Series> = HashMap::new();
        let mut out = DiffPoly {
            preset: self.preset,
            coeffs: BTreeMap::new(),
            floor: self.conj_floor(a),
        };
        for (j, c) in &self.coeffs {
            for i in j.sub_indices() {
                let rest = j.checked_sub(&i).unwrap();
                let mut coeff = c.scale(&ResidueElem::from_rat(
                    self.preset.kind,
                    crate::Rat::from_integer(j.binom_product(&i)),
                ));
                for m in 0..rest.width() {
                    let e = rest.get(m);
                    if e == 0 {
                        continue;
                    }
                    let p = series_pow(&mut pow_cache, &derivs, m, e)?;
                    coeff = coeff.mul(&p)?;
                }
                out.insert_add(i, coeff);
            }
        }
        Ok(out)
    }

    /// Multiplicative conjugate `P_{×a}(Y) = P(aY)`, expanded by Leibniz.
    pub fn mul_conjugate(&self, a: &Series) -> Result<Self, Error> {
        if a.preset() != self.preset {
            return Err(Error::PresetMismatch);
        }
        if a.is_vacuous() {
            return Err(Error::ZeroInput("mul_conjugate"));
        }
        let width = self.width();
        // rows: (aY)^{(j)} as linear homogeneous d-polynomials
        let mut rows: Vec<DiffPoly> = Vec::with_capacity(width);
        if width > 0 {
            rows.push(DiffPoly::y(self.preset).scale(a)?);
            for _ in 1..width {
                rows.push(rows.last().unwrap().derive_poly());
            }
        }
        let mut pow_cache: HashMap<(usize, u32), DiffPoly> = HashMap::new();
        let mut out = DiffPoly {
            preset: self.preset,
            coeffs: BTreeMap::new(),
            floor: self.conj_floor(a),
        };
        for (idx, c) in &self.coeffs {
            let mut term = DiffPoly::constant(c.clone());
            for j in 0..idx.width() {
                let e = idx.get(j);
                if e == 0 {
                    continue;
                }
                let p = poly_pow(&mut pow_cache, &rows, j, e)?;
                term = term.mul(&p)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// The conjugated partial operator `(∂^i)_{×t^gamma}` applied to `P`,
    /// i.e. `(∂^i (P_{×t^gamma}))_{×t^{-gamma}}`.
    pub fn partial_mult_conjugated(
        &self,
        i: &MultiIndex,
        gamma: &GroupElement,
    ) -> Result<Self, Error> {
        let m = Series::monomial(
            self.preset,
            ResidueElem::one(self.preset.kind),
            gamma.clone(),
        );
        let m_inv = Series::monomial(
            self.preset,
            ResidueElem::one(self.preset.kind),
            gamma.neg(),
        );
        self.mul_conjugate(&m)?.partial(i).mul_conjugate(&m_inv)
    }
}

fn series_pow(
    cache: &mut HashMap<(usize, u32), Series>,
    derivs: &[Series],
    j: usize,
    e: u32,
) -> Result<Series, Error> {
    if e == 1 {
        return Ok(derivs[j].clone());
    }
    if let Some(p) = cache.get(&(j, e)) {
        return Ok(p.clone());
    }
    let lower = series_pow(cache, derivs, j, e - 1)?;
    let p = lower.mul(&derivs[j])?;
    cache.insert((j, e), p.clone());
    Ok(p)
}

fn poly_pow(
    cache: &mut HashMap<(usize, u32), DiffPoly>,
    rows: &[DiffPoly],
    j: usize,
    e: u32,
) -> Result<DiffPoly, Error> {
    if e == 1 {
        return Ok(rows[j].clone());
    }
    if let Some(p) = cache.get(&(j, e)) {
        return Ok(p.clone());
    }
    let lower = poly_pow(cache, rows, j, e - 1)?;
    let p = lower.mul(&rows[j])?;
    cache.insert((j, e), p.clone());
    Ok(p)
}

fn mul_floor(a: &DiffPoly, b: &DiffPoly) -> ExtGroupElement {
    let shift = |fl: &ExtGroupElement, other: &DiffPoly| match (fl, other.v_of()) {
        (ExtGroupElement::Finite(p), ValInfo::Known(v)) => ExtGroupElement::Finite(p.add(&v)),
        (ExtGroupElement::Finite(p), _) => ExtGroupElement::Finite(p.clone()),
        (ExtGroupElement::Infinity, _) => ExtGroupElement::Infinity,
    };
    shift(&a.floor, b).min(shift(&b.floor, a))
}

fn derive_floor(p: &DiffPoly) -> ExtGroupElement {
    match (&p.floor, p.preset().kind) {
        (ExtGroupElement::Finite(fl), crate::series::PresetKind::HType) => {
            ExtGroupElement::Finite(fl.add(&GroupElement::unit(p.preset().dim, p.preset().dim - 1)))
        }
        (fl, _) => fl.clone(),
    }
}

/// Render order: descending total degree, then higher derivatives first.
pub(crate) fn render_order(a: &MultiIndex, b: &MultiIndex) -> std::cmp::Ordering {
    let rev_sig = |i: &MultiIndex| {
        let n = i.width();
        (0..n).rev().map(|j| i.get(j)).collect::<Vec<u32>>()
    };
    b.degree()
        .cmp(&a.degree())
        .then_with(|| {
            let (ra, rb) = (rev_sig(a), rev_sig(b));
            let pad = ra.len().max(rb.len());
            let get = |v: &[u32], k: usize| if k < v.len() { v[k] } else { 0 };
            for k in 0..pad {
                match get(&rb, k).cmp(&get(&ra, k)) {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            std::cmp::Ordering::Equal
        })
}

impl std::fmt::Display for DiffPoly {
    /// Canonical text form: graded order (higher derivatives first within a
    /// degree), coefficients in the series grammar, multi-term coefficients
    /// parenthesized.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            match &self.floor {
                ExtGroupElement::Finite(p) => return write!(f, "O(t^({p}))"),
                ExtGroupElement::Infinity => return write!(f, "0"),
            }
        }
        let mut ordered: Vec<(&MultiIndex, &Series)> = self.coeffs.iter().collect();
        ordered.sort_by(|x, y| render_order(x.0, y.0));
        let mut first = true;
        for (idx, c) in ordered {
            let (neg, text) = coeff_text(c);
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
        if let ExtGroupElement::Finite(p) = &self.floor {
            write!(f, " + O(t^({p}))")?;
        }
        Ok(())
    }
}

/// Sign-split text of a coefficient series; multi-term series are
/// parenthesized (and keep their own signs inside).
fn coeff_text(c: &Series) -> (bool, String) {
    if c.term_count() == 1 && c.is_exact() {
        let s = c.to_string();
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else {
        (false, format!("({c})"))
    }
}
