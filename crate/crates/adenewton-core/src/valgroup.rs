//! The divisible value group Q^n with lexicographic order, its archimedean
//! classes, and the convex subgroups used for coarsening.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::{rat_int, Rat};

/// An element of the value group Q^n (lexicographic order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<Rat>,
}

impl GroupElement {
    pub fn new(coords: Vec<Rat>) -> Self {
        assert!(!coords.is_empty(), "value group dimension must be >= 1");
        GroupElement { coords }
    }

    pub fn zero(dim: usize) -> Self {
        GroupElement::new(vec![Rat::zero(); dim])
    }

    /// Embeds a rational into the rank-1 group Q.
    pub fn rank1(q: Rat) -> Self {
        GroupElement::new(vec![q])
    }

    pub fn from_int(n: i64) -> Self {
        GroupElement::rank1(rat_int(n))
    }

    /// The standard basis vector e_idx.
    pub fn unit(dim: usize, idx: usize) -> Self {
        let mut c = vec![Rat::zero(); dim];
        c[idx] = Rat::from_integer(1.into());
        GroupElement::new(c)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The single coordinate, for the rank-1 group.
    pub fn as_rat(&self) -> Result<&Rat, Error> {
        if self.dim() == 1 {
            Ok(&self.coords[0])
        } else {
            Err(Error::RequiresDimOne)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        GroupElement::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GroupElement::new(self.coords.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale_int(&self, m: i64) -> Self {
        let m = rat_int(m);
        GroupElement::new(self.coords.iter().map(|c| c * &m).collect())
    }

    /// Exact division by a positive integer: divisibility of Q^n.
    pub fn div_nat(&self, m: u32) -> Self {
        assert!(m > 0);
        let m = rat_int(m as i64);
        GroupElement::new(self.coords.iter().map(|c| c / &m).collect())
    }

    pub fn scale_rat(&self, m: &Rat) -> Self {
        GroupElement::new(self.coords.iter().map(|c| c * m).collect())
    }

    /// Index of the first nonzero coordinate; `None` for 0.
    fn leading_index(&self) -> Option<usize> {
        self.coords.iter().position(|c| !c.is_zero())
    }

    /// Archimedean class of a nonzero element.
    pub fn arch_class(&self) -> Result<ArchClass, Error> {
        self.leading_index()
            .map(|leading_index| ArchClass { leading_index })
            .ok_or(Error::ZeroInput("arch_class"))
    }

    /// `self = o(beta)`, i.e. [self] < [beta]; 0 counts as little-o of
    /// everything nonzero.
    pub fn is_little_o(&self, beta: &Self) -> Result<bool, Error> {
        let b = beta.arch_class().map_err(|_| Error::ZeroInput("is_little_o bound"))?;
        match self.leading_index() {
            None => Ok(true),
            Some(i) => Ok(ArchClass { leading_index: i } < b),
        }
    }

    /// Membership in the convex subgroup `Gamma_phi = { g : [g] < [v(phi)] }`.
    pub fn in_gamma_phi(&self, v_phi: &Self) -> Result<bool, Error> {
        if v_phi.is_zero() {
            return Err(Error::InvalidCoarsening);
        }
        self.is_little_o(v_phi)
    }
}

/// Checked lexicographic comparison (the only total order used here).
pub fn lex_compare(a: &GroupElement, b: &GroupElement) -> Result<Ordering, Error> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(a.cmp(b))
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.coords.cmp(&other.coords)
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.dim() == 1 {
            write!(f, "{}", crate::rat_str(&self.coords[0]))
        } else {
            write!(f, "(")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", crate::rat_str(c))?;
            }
            write!(f, ")")
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.dim() == 1 {
            s.serialize_str(&crate::rat_str(&self.coords[0]))
        } else {
            s.collect_seq(self.coords.iter().map(crate::rat_str))
        }
    }
}

/// The archimedean class [g] of a nonzero g, identified by the first
/// nonzero coordinate. Classes with larger leading index are *smaller*:
/// n*(0,1) < (1,0) for every n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArchClass {
    leading_index: usize,
}

impl ArchClass {
    pub fn leading_index(&self) -> usize {
        self.leading_index
    }
}

impl PartialOrd for ArchClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ArchClass {
    fn cmp(&self, other: &Self) -> Ordering {
        other.leading_index.cmp(&self.leading_index)
    }
}

/// Gamma extended by a top element, housing v(0) = infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtGroupElement {
    Finite(GroupElement),
    Infinity,
}

impl ExtGroupElement {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtGroupElement::Infinity)
    }

    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            ExtGroupElement::Finite(g) => Some(g),
            ExtGroupElement::Infinity => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtGroupElement::Finite(a), ExtGroupElement::Finite(b)) => {
                ExtGroupElement::Finite(a.add(b))
            }
            _ => ExtGroupElement::Infinity,
        }
    }

    pub fn add_finite(&self, g: &GroupElement) -> Self {
        match self {
            ExtGroupElement::Finite(a) => ExtGroupElement::Finite(a.add(g)),
            ExtGroupElement::Infinity => ExtGroupElement::Infinity,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for ExtGroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtGroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtGroupElement::Infinity, ExtGroupElement::Infinity) => Ordering::Equal,
            (ExtGroupElement::Infinity, _) => Ordering::Greater,
            (_, ExtGroupElement::Infinity) => Ordering::Less,
            (ExtGroupElement::Finite(a), ExtGroupElement::Finite(b)) => a.cmp(b),
        }
    }
}

impl std::fmt::Display for ExtGroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtGroupElement::Finite(g) => write!(f, "{g}"),
            ExtGroupElement::Infinity => write!(f, "inf"),
        }
    }
}
