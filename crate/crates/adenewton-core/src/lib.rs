//! Exact computer algebra for asymptotic differential equations over
//! truncated Hahn-series fields with small derivation.
//!
//! The crate is organized around the pipeline
//! value group -> series field -> differential polynomials -> dominant
//! parts -> Newton diagrams -> asymptotic differential equations ->
//! solver. All arithmetic is exact (big rationals everywhere); truncated
//! series carry an explicit precision certificate so that every answer
//! either is exact or says where knowledge stops.
//!
//! ```
//! use adenewton_core::diffpoly::{DiffPoly, MultiIndex};
//! use adenewton_core::dominant::EConstraint;
//! use adenewton_core::series::{FieldPreset, Series};
//! use adenewton_core::valgroup::GroupElement;
//! use adenewton_core::{ade::Ade, rat_int, solver};
//!
//! // Y^2 + t*Y + t^3 = 0 with Y preceq 1 over the h-type preset
//! let ht = FieldPreset::h_type();
//! let p = DiffPoly::from_terms(ht, [
//!     (MultiIndex::new(vec![2]), Series::one(ht)),
//!     (MultiIndex::new(vec![1]), Series::t_pow(ht, rat_int(1))),
//!     (MultiIndex::empty(), Series::t_pow(ht, rat_int(3))),
//! ]);
//! let eq = Ade::new(p, EConstraint::ValGE(GroupElement::from_int(0)));
//! let branches = solver::solve(&eq, &GroupElement::from_int(4), 16, 32).unwrap();
//! assert_eq!(branches.len(), 2);
//! assert_eq!(branches[0].y.to_string(), "-t + t^2 + t^3 + O(t^4)");
//! assert_eq!(branches[1].y.to_string(), "-t^2 - t^3 + O(t^4)");
//! ```

pub mod ade;
pub mod diffpoly;
pub mod dominant;
pub mod error;
pub mod newton;
pub mod qpoly;
pub mod ratfunc;
pub mod sampling;
pub mod series;
pub mod solver;
pub mod valgroup;

pub use ade::{Ade, ApproxSolution, CutChain, UnravelOutcome, UnravelStatus};
pub use diffpoly::{Complexity, DiffPoly, MultiIndex};
pub use dominant::{EConstraint, ResiduePoly};
pub use error::Error;
pub use newton::{NewtonDiagram, VpFunction};
pub use series::{DominanceRel, FieldPreset, PresetKind, ResidueElem, Series};
pub use solver::{BranchStatus, SolutionBranch};
pub use valgroup::{ArchClass, ExtGroupElement, GroupElement};

/// Exact rational scalar used throughout: arbitrary-precision `p/q`.
pub type Rat = num_rational::BigRational;

/// Embeds an integer into the exact rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(num_bigint::BigInt::from(n))
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 1,
        col: 1,
        msg: format!("malformed rational `{s}`"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => num_bigint::BigInt::from(1),
    };
    if d == num_bigint::BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Renders a rational as "p/q" ("p" when the denominator is 1).
pub fn rat_str(r: &Rat) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
