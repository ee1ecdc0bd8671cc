//! Shared builders and independent oracles for the integration suites.
#![allow(dead_code)] // each test binary uses its own subset

use adenewton_core::diffpoly::{DiffPoly, MultiIndex};
use adenewton_core::series::{FieldPreset, PresetKind, ResidueElem, Series};
use adenewton_core::valgroup::GroupElement;
use adenewton_core::{newton, Rat};
use num_bigint::BigInt;

pub fn ht() -> FieldPreset {
    FieldPreset::h_type()
}

pub fn mo() -> FieldPreset {
    FieldPreset::monotone()
}

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn t_pow(preset: FieldPreset, e: i64) -> Series {
    Series::t_pow(preset, q(e, 1))
}

pub fn ge(n: i64) -> GroupElement {
    GroupElement::from_int(n)
}

/// Y^2 + t*Y + t^3 over the h-type preset.
pub fn running_poly() -> DiffPoly {
    DiffPoly::from_terms(
        ht(),
        [
            (MultiIndex::new(vec![2]), Series::one(ht())),
            (MultiIndex::new(vec![1]), t_pow(ht(), 1)),
            (MultiIndex::empty(), t_pow(ht(), 3)),
        ],
    )
}

/// Catalan numbers by the convolution recurrence (independent arithmetic).
pub fn catalan(n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(1)];
    for k in 1..=n {
        let mut acc = BigInt::from(0);
        for i in 0..k {
            acc += &c[i] * &c[k - 1 - i];
        }
        c.push(acc);
    }
    c
}

/// The two quadratic-formula expansions of Y^2 + tY + t^3 = 0 up to (not
/// including) exponent `bound`: coefficient tables exponent -> coefficient.
///
/// y = t(-1 ± sqrt(1 - 4t))/2, i.e. one branch -t + sum Cat_{k-2} t^k and
/// one branch -sum Cat_{k-2} t^k (k >= 2).
pub fn quadratic_oracle(bound: i64) -> (Vec<(i64, Rat)>, Vec<(i64, Rat)>) {
    let cats = catalan(bound.max(2) as usize);
    let mut plus = vec![(1, q(-1, 1))];
    let mut minus = Vec::new();
    for k in 2..bound {
        let c = Rat::from_integer(cats[(k - 2) as usize].clone());
        plus.push((k, c.clone()));
        minus.push((k, -c));
    }
    (plus, minus)
}

/// Brute-force equalizer oracle: evaluates v(P_{×t^g}) - v(Q_{×t^g}) by
/// direct conjugation on the candidate-breakpoint lattice (all pairwise
/// intersections of coefficient-exponent pieces) and returns the unique
/// sign-change point.
pub fn equalizer_oracle(p: &DiffPoly, qq: &DiffPoly) -> Rat {
    let m = p.degree().unwrap() as i64;
    let n = qq.degree().unwrap() as i64;
    assert_ne!(m, n);
    let exps = |poly: &DiffPoly| -> Vec<Rat> {
        let mut v = Vec::new();
        for (_, c) in poly.terms() {
            for (g, _) in c.terms() {
                v.push(g.as_rat().unwrap().clone());
            }
        }
        v
    };
    let mut candidates: Vec<Rat> = Vec::new();
    for ep in exps(p) {
        for eq in exps(qq) {
            let alpha = (eq - &ep) / q(m - n, 1);
            if !candidates.contains(&alpha) {
                candidates.push(alpha);
            }
        }
    }
    candidates.sort();
    let sign_at = |gamma: &Rat| -> std::cmp::Ordering {
        let conj = |poly: &DiffPoly| {
            poly.mul_conjugate(&Series::t_pow(poly.preset(), gamma.clone()))
                .unwrap()
                .val()
                .unwrap()
        };
        conj(p).cmp(&conj(qq))
    };
    let mut zero = None;
    for c in &candidates {
        if sign_at(c) == std::cmp::Ordering::Equal {
            assert!(zero.is_none(), "two lattice zeros");
            zero = Some(c.clone());
        }
    }
    let alpha = zero.expect("sign change must occur on the lattice");
    // difference is strictly monotone in gamma: signs flip around alpha
    let eps = q(1, 97);
    let lo = sign_at(&(alpha.clone() - &eps));
    let hi = sign_at(&(alpha.clone() + &eps));
    assert_ne!(lo, std::cmp::Ordering::Equal);
    assert_ne!(hi, std::cmp::Ordering::Equal);
    assert_ne!(lo, hi, "no sign change around the zero");
    alpha
}

/// Direct-computation check that `newton::equalizer` and the oracle agree
/// and that both polynomials have equal valuation there.
pub fn check_equalizer_instance(p: &DiffPoly, qq: &DiffPoly) {
    let alpha = newton::equalizer(p, qq).unwrap().as_rat().unwrap().clone();
    let oracle = equalizer_oracle(p, qq);
    assert_eq!(alpha, oracle);
    let conj = |poly: &DiffPoly| {
        poly.mul_conjugate(&Series::t_pow(poly.preset(), alpha.clone()))
            .unwrap()
            .val()
            .unwrap()
    };
    assert_eq!(conj(p), conj(qq));
}

/// An exact finite series with the given terms (rank-1 exponents).
pub fn series_from(preset: FieldPreset, terms: &[(Rat, i64)]) -> Series {
    let mut s = Series::zero(preset);
    for (e, c) in terms {
        let m = Series::monomial(
            preset,
            ResidueElem::from_int(preset.kind, *c),
            GroupElement::rank1(e.clone()),
        );
        s = s.add(&m).unwrap();
    }
    s
}

#[allow(dead_code)]
pub fn residue_int(kind: PresetKind, n: i64) -> ResidueElem {
    ResidueElem::from_int(kind, n)
}
