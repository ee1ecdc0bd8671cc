//! Shared instance builders for the benchmarks.

use adenewton_core::ade::Ade;
use adenewton_core::diffpoly::{DiffPoly, MultiIndex};
use adenewton_core::dominant::EConstraint;
use adenewton_core::series::{FieldPreset, Series};
use adenewton_core::valgroup::GroupElement;
use adenewton_core::Rat;

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn running_poly() -> DiffPoly {
    let ht = FieldPreset::h_type();
    DiffPoly::from_terms(
        ht,
        [
            (MultiIndex::new(vec![2]), Series::one(ht)),
            (MultiIndex::new(vec![1]), Series::t_pow(ht, rat(1))),
            (MultiIndex::empty(), Series::t_pow(ht, rat(3))),
        ],
    )
}

pub fn running_eq() -> Ade {
    Ade::new(
        running_poly(),
        EConstraint::ValGE(GroupElement::from_int(0)),
    )
}
