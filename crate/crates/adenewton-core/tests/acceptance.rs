//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use std::time::Instant;

use adenewton_core::ade::{Ade, CutChain, UnravelStatus};
use adenewton_core::diffpoly::{DiffPoly, MultiIndex};
use adenewton_core::dominant::{self, ddeg_at, dmul_at, dominant_part, EConstraint};
use adenewton_core::newton;
use adenewton_core::sampling::Sampler;
use adenewton_core::series::{coarse_prec, coarse_preceq, FieldPreset, ResidueElem, Series, ValInfo};
use adenewton_core::solver::{self, BranchStatus};
use adenewton_core::valgroup::GroupElement;
use adenewton_core::Rat;
use common::*;

fn pass(name: &str, start: Instant, budget_s: u64) {
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < budget_s,
        "{name} exceeded its {budget_s}s budget: {elapsed:?}"
    );
    println!("acceptance {name}: PASS ({elapsed:?})");
}

#[test]
fn criterion_1_newton_diagram_reproduction() {
    let start = Instant::now();
    let p = running_poly();
    let diag = newton::newton_diagram(&p, &EConstraint::All).unwrap();
    assert_eq!(diag.i_sequence, vec![0, 1, 2]);
    assert_eq!(diag.equalizer_exponents, vec![q(2, 1), q(1, 1)]);
    let cases = [
        (q(3, 1), (0, 0)),
        (q(2, 1), (0, 1)),
        (q(3, 2), (1, 1)),
        (q(1, 1), (1, 2)),
        (q(1, 2), (2, 2)),
        (q(0, 1), (2, 2)),
    ];
    for (gamma, expect) in cases {
        let got = newton::ddeg_profile(&p, &GroupElement::rank1(gamma.clone())).unwrap();
        assert_eq!(got, expect, "profile at gamma = {gamma}");
    }
    pass("1 (newton diagram reproduction)", start, 1);
}

#[test]
fn criterion_2_equalizer_against_brute_force() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x0E01);
    for _ in 0..200 {
        let da = s.usize_below(5);
        let db = loop {
            let d = s.usize_below(5);
            if d != da {
                break d;
            }
        };
        let p = s.homogeneous(da, 2, 3);
        let qq = s.homogeneous(db, 2, 3);
        check_equalizer_instance(&p, &qq);
    }
    pass("2 (equalizer vs brute-force oracle, 200 pairs)", start, 30);
}

#[test]
fn criterion_3_solver_end_to_end() {
    let start = Instant::now();
    let eq = Ade::new(running_poly(), EConstraint::ValGE(ge(0)));
    let target = ge(6);
    let branches = solver::solve(&eq, &target, 16, 32).unwrap();
    assert_eq!(branches.len(), 2, "exactly two branches");
    let (plus, minus) = quadratic_oracle(6);
    let check = |branch: &solver::SolutionBranch, table: &[(i64, Rat)]| {
        // term-for-term below v = 6, both directions
        for (e, c) in table {
            assert_eq!(
                branch.y.coeff_at(&ge(*e)),
                ResidueElem::from_rat(ht().kind, c.clone()),
                "coefficient at t^{e}"
            );
        }
        for (g, c) in branch.y.terms() {
            if g < &ge(6) {
                let e = g.as_rat().unwrap();
                assert!(
                    table.iter().any(|(k, v)| &q(*k, 1) == e
                        && ResidueElem::from_rat(ht().kind, v.clone())
                            == c.clone()),
                    "unexpected term at t^({e})"
                );
            }
        }
        assert!(solver::verify_solution(
            &eq.poly,
            &branch.y,
            &eq.constraint,
            &target
        ));
    };
    check(&branches[0], &plus);
    check(&branches[1], &minus);
    pass("3 (solver end-to-end vs quadratic-formula oracle)", start, 1);
}

#[test]
fn criterion_4_dhensel_lifting_nontrivial_residue_derivation() {
    let start = Instant::now();
    let z = Series::constant(mo(), ResidueElem::Fz(adenewton_core::ratfunc::RatFunc::var()));
    let p = DiffPoly::from_terms(
        mo(),
        [
            (MultiIndex::unit(1), Series::one(mo())),
            (MultiIndex::unit(0), Series::one(mo())),
            (MultiIndex::empty(), z.neg().sub(&t_pow(mo(), 1)).unwrap()),
        ],
    );
    let eq = Ade::new(p.clone(), EConstraint::ValGE(ge(0)));
    let branch = solver::lift_quasilinear(&eq, &ge(5)).unwrap();
    assert_eq!(branch.status, BranchStatus::ExactRoot);
    let expect = z.sub(&Series::one(mo())).unwrap().add(&t_pow(mo(), 1)).unwrap();
    assert_eq!(branch.y, expect);
    assert!(p.evaluate(&branch.y).unwrap().is_exact_zero());
    pass("4 (d-Hensel lifting, monotone preset)", start, 1);
}

#[test]
fn criterion_5_unravelling() {
    let start = Instant::now();
    // Y^2 - 2tY + (t^2 - t^3)
    let p = DiffPoly::from_terms(
        ht(),
        [
            (MultiIndex::new(vec![2]), Series::one(ht())),
            (
                MultiIndex::new(vec![1]),
                t_pow(ht(), 1).scale(&ResidueElem::from_int(ht().kind, -2)),
            ),
            (MultiIndex::empty(), t_pow(ht(), 2).sub(&t_pow(ht(), 3)).unwrap()),
        ],
    );
    let eq = Ade::new(p, EConstraint::ValGE(ge(0)));
    let out = eq.unravel(8).unwrap();
    assert_eq!(out.status, UnravelStatus::Unravelled);
    assert_eq!(out.shift, t_pow(ht(), 1));
    assert_eq!(out.constraint, EConstraint::ValGT(ge(1)));
    let refined = eq.refine(&out.shift, out.constraint.clone()).unwrap();
    let check = refined.is_unravelled().unwrap();
    assert!(check.unravelled && check.warnings.is_empty());
    pass("5 (unravelling)", start, 1);
}

#[test]
fn criterion_6_delta_companion_quasilinearity() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x0E06);
    let mut produced = 0;
    while produced < 100 {
        let p = s.diffpoly(2, 4, 4);
        let Ok(diag) = newton::newton_diagram(&p, &EConstraint::All) else {
            continue;
        };
        if diag.equalizer_exponents.is_empty() {
            continue;
        }
        for alpha in &diag.equalizer_exponents {
            let at = GroupElement::rank1(alpha.clone());
            let (companion, _idx) = solver::delta_companion(&p, &at).unwrap();
            assert_eq!(ddeg_at(&companion, &at).unwrap(), 1);
        }
        produced += 1;
    }
    pass("6 (delta-companion quasilinearity, 100 instances)", start, 30);
}

// ---- criterion 7: law suites (>= 200 randomized instances each) ----

const N: usize = 200;

#[test]
fn criterion_7a_valuation_under_conjugation() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x071A);
    for _ in 0..N {
        let p = s.diffpoly(2, 4, 4);
        // (i) f preceq 1 keeps v(P); f prec 1 moreover leaves P_{+f} ~ P
        let f = if s.bool() { s.unit_series() } else { s.small_series() };
        let shifted = p.add_conjugate(&f).unwrap();
        assert_eq!(shifted.val().unwrap(), p.val().unwrap());
        let small = s.small_series();
        let moved = p.add_conjugate(&small).unwrap().sub(&p).unwrap();
        match moved.v_of() {
            ValInfo::Zero => {}
            ValInfo::Known(v) => assert!(v > p.val().unwrap()),
            ValInfo::Unknown(_) => panic!("exact arithmetic expected"),
        }
        // (ii) v(P_{×f}) depends only on v(f)
        let g = s.nonzero_series(3);
        let dom = Series::t_pow(ht(), g.val().unwrap().as_rat().unwrap().clone());
        assert_eq!(
            p.mul_conjugate(&g).unwrap().val().unwrap(),
            p.mul_conjugate(&dom).unwrap().val().unwrap()
        );
    }
    pass("7 (valuation under additive and multiplicative conjugation)", start, 20);
}

#[test]
fn criterion_7b_dominant_part_algebra() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x071B);
    for _ in 0..N {
        let p = s.diffpoly(2, 3, 3);
        let qq = s.diffpoly(2, 3, 3);
        let vp = p.val().unwrap();
        let vq = qq.val().unwrap();
        // (i) P succ Q: rescale Q strictly above P
        let lift = vp.sub(&vq).add(&ge(1));
        let q_small = qq
            .mul(&DiffPoly::constant(Series::monomial(
                ht(),
                ResidueElem::one(ht().kind),
                lift,
            )))
            .unwrap();
        let sum = p.add(&q_small).unwrap();
        assert_eq!(
            dominant_part(&sum).unwrap().poly,
            dominant_part(&p).unwrap().poly
        );
        // (ii) P asymp Q and P + Q asymp P
        let q_level = qq
            .mul(&DiffPoly::constant(Series::monomial(
                ht(),
                ResidueElem::one(ht().kind),
                vp.sub(&vq),
            )))
            .unwrap();
        let sum = p.add(&q_level).unwrap();
        if sum.v_of() == ValInfo::Known(vp.clone()) {
            let dl = dominant_part(&p).unwrap().poly;
            let dr = dominant_part(&q_level).unwrap().poly;
            assert_eq!(dominant_part(&sum).unwrap().poly, dl.add(&dr));
        }
        // (iii) D_{PQ} = D_P D_Q
        let prod = p.mul(&qq).unwrap();
        assert_eq!(
            dominant_part(&prod).unwrap().poly,
            dominant_part(&p)
                .unwrap()
                .poly
                .mul(&dominant_part(&qq).unwrap().poly)
        );
    }
    pass("7 (dominant parts of sums and products)", start, 20);
}

#[test]
fn criterion_7c_dominant_part_conjugation() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x071C);
    for _ in 0..N {
        let p = s.diffpoly(2, 4, 4);
        // (i) a preceq 1
        let a = if s.bool() { s.unit_series() } else { s.small_series() };
        let shifted = p.add_conjugate(&a).unwrap();
        let expect = dominant_part(&p)
            .unwrap()
            .poly
            .add_conjugate(&a.residue().unwrap());
        assert_eq!(dominant_part(&shifted).unwrap().poly, expect);
        assert_eq!(
            dominant::ddeg(&shifted).unwrap(),
            dominant::ddeg(&p).unwrap()
        );
        // (ii) a asymp 1
        let u = s.unit_series();
        let conj = p.mul_conjugate(&u).unwrap();
        let expect = dominant_part(&p)
            .unwrap()
            .poly
            .mul_conjugate(&u.residue().unwrap());
        assert_eq!(dominant_part(&conj).unwrap().poly, expect);
        // (iii) a prec 1
        let small = s.small_series();
        let conj = p.mul_conjugate(&small).unwrap();
        assert!(dominant::ddeg(&conj).unwrap() <= dominant::dmul(&p).unwrap());
    }
    pass("7 (dominant parts under conjugation)", start, 20);
}

#[test]
fn criterion_7d_ddeg_additive_stability() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x071D);
    for _ in 0..N {
        let p = s.diffpoly(2, 3, 3);
        // f - g preceq h forces equal ddeg after conjugating by h
        let h = s.nonzero_series(2);
        let g = s.nonzero_series(2);
        let vh = h.val().unwrap();
        let delta = Series::monomial(ht(), s.nonzero_residue_elem(), vh.add(&ge(s.usize_below(3) as i64)));
        let f = g.add(&delta).unwrap();
        let left = dominant::ddeg(&p.add_conjugate(&f).unwrap().mul_conjugate(&h).unwrap()).unwrap();
        let right = dominant::ddeg(&p.add_conjugate(&g).unwrap().mul_conjugate(&h).unwrap()).unwrap();
        assert_eq!(left, right);
    }
    pass("7 (ddeg stable under bounded additive shifts)", start, 20);
}

#[test]
fn criterion_7e_monotone_chain() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x071E);
    for _ in 0..N {
        let p = s.diffpoly(2, 4, 4);
        let g = s.nonzero_series(2);
        let f = g
            .mul(&Series::monomial(
                ht(),
                s.nonzero_residue_elem(),
                ge(1 + s.usize_below(3) as i64),
            ))
            .unwrap();
        // mul P = mul P_{×f} <= ddeg P_{×f}
        let pf = p.mul_conjugate(&f).unwrap();
        let pg = p.mul_conjugate(&g).unwrap();
        assert_eq!(p.mul_at_zero().unwrap(), pf.mul_at_zero().unwrap());
        let (dmf, ddf) = (dominant::dmul(&pf).unwrap(), dominant::ddeg(&pf).unwrap());
        let (dmg, ddg) = (dominant::dmul(&pg).unwrap(), dominant::ddeg(&pg).unwrap());
        assert!(p.mul_at_zero().unwrap() <= ddf);
        assert!(dmf <= ddf && ddf <= dmg && dmg <= ddg);
    }
    pass("7 (dmul/ddeg monotone chain)", start, 20);
}

#[test]
fn criterion_7f_ddeg_on_open_sets() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x071F);
    for _ in 0..N {
        let p = s.diffpoly(2, 4, 4);
        let gamma = s.exponent(4);
        let at = GroupElement::rank1(gamma.clone());
        let rule = dmul_at(&p, &at).unwrap();
        // sampled f in {v > gamma} never exceed the closed-form value
        for _ in 0..4 {
            let f = Series::monomial(
                ht(),
                s.nonzero_residue_elem(),
                at.add(&GroupElement::rank1(q(1 + s.usize_below(6) as i64, 7))),
            );
            assert!(dominant::dmul(&p.mul_conjugate(&f).unwrap()).unwrap() <= rule);
        }
        // and a diagram-guided point attains it
        let diag = newton::newton_diagram(&p, &EConstraint::All).unwrap();
        let next = diag
            .equalizer_exponents
            .iter()
            .filter(|e| **e > gamma)
            .min();
        let eps = match next {
            Some(e) => (e.clone() - &gamma) / q(2, 1),
            None => q(1, 1),
        };
        assert_eq!(dmul_at(&p, &GroupElement::rank1(gamma + eps)).unwrap(), rule);
    }
    pass("7 (ddeg on sets with no least valuation)", start, 20);
}

#[test]
fn criterion_7g_ddeg_invariant_under_in_set_shifts() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x0720);
    for _ in 0..N {
        let p = s.diffpoly(2, 4, 4);
        let gamma = GroupElement::rank1(s.exponent(4));
        let (constraint, f) = match s.usize_below(3) {
            0 => (
                EConstraint::All,
                s.nonzero_series(2),
            ),
            1 => (
                EConstraint::ValGE(gamma.clone()),
                Series::monomial(ht(), s.nonzero_residue_elem(), gamma.add(&ge(s.usize_below(3) as i64))),
            ),
            _ => (
                EConstraint::ValGT(gamma.clone()),
                Series::monomial(ht(), s.nonzero_residue_elem(), gamma.add(&ge(1 + s.usize_below(3) as i64))),
            ),
        };
        let left = dominant::ddeg_on(&p.add_conjugate(&f).unwrap(), &constraint).unwrap();
        let right = dominant::ddeg_on(&p, &constraint).unwrap();
        assert_eq!(left, right);
    }
    pass("7 (ddeg invariant under shifts from the set)", start, 20);
}

#[test]
fn criterion_7h_quasilinear_solutions_stay_simple() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x0721);
    for round in 0..N {
        // P = A (Y - y0)(Y - z0) with v(z0) < v(y0): quasilinear on
        // { v > v(z0) } with exact solution y0
        let a = s.nonzero_series(2);
        let vz = s.usize_below(3) as i64;
        let vy = vz + 1 + s.usize_below(3) as i64;
        let y0 = series_from(ht(), &[(q(vy, 1), 1 + s.usize_below(5) as i64), (q(vy + 1, 1), s.usize_below(7) as i64)]);
        let z0 = series_from(ht(), &[(q(vz, 1), 1 + s.usize_below(5) as i64)]);
        let y_lin = DiffPoly::y(ht()).sub(&DiffPoly::constant(y0.clone())).unwrap();
        let z_lin = DiffPoly::y(ht()).sub(&DiffPoly::constant(z0.clone())).unwrap();
        let p = DiffPoly::constant(a).mul(&y_lin).unwrap().mul(&z_lin).unwrap();
        let constraint = EConstraint::ValGT(ge(vz));
        let eq = Ade::new(p.clone(), constraint.clone());
        assert_eq!(eq.ddeg().unwrap(), 1, "factor-built instance is quasilinear");
        // at an exact solution of a quasilinear equation, mul = dmul =
        // ddeg = 1 for every in-set multiplicative window
        let shifted = p.add_conjugate(&y0).unwrap();
        for _ in 0..3 {
            let g = Series::monomial(
                ht(),
                s.nonzero_residue_elem(),
                ge(vz).add(&GroupElement::rank1(q(1 + s.usize_below(5) as i64, 3))),
            );
            let conj = shifted.mul_conjugate(&g).unwrap();
            assert_eq!(conj.mul_at_zero().unwrap(), 1);
            assert_eq!(dominant::dmul(&conj).unwrap(), 1);
            assert_eq!(dominant::ddeg(&conj).unwrap(), 1);
        }
        // every so often, let the solver reproduce the root end to end
        if round % 10 == 0 {
            let branches = solver::solve(&eq, &ge(vy + 4), 8, 24).unwrap();
            assert!(
                branches
                    .iter()
                    .any(|b| b.status == BranchStatus::ExactRoot && b.y == y0),
                "solver must recover the planted exact root"
            );
        }
    }
    pass("7 (solved quasilinear equations stay simple everywhere)", start, 30);
}

#[test]
fn criterion_7i_coarsening_laws_n2() {
    let start = Instant::now();
    let p2 = FieldPreset::monotone_n(2).unwrap();
    let mut s = Sampler::new(p2, 0x0722);
    let zero2 = GroupElement::zero(2);
    for _ in 0..N {
        let vf = s.nonzero_group_elem(4);
        let vg = s.nonzero_group_elem(4);
        let mut vp1 = s.nonzero_group_elem(4);
        let mut vp2 = s.nonzero_group_elem(4);
        if vp1.arch_class().unwrap() > vp2.arch_class().unwrap() {
            std::mem::swap(&mut vp1, &mut vp2);
        }
        // twocoarsen
        if coarse_preceq(&vf, &vg, &vp1).unwrap() {
            assert!(coarse_preceq(&vf, &vg, &vp2).unwrap());
        }
        if coarse_prec(&vf, &vg, &vp2).unwrap() {
            assert!(coarse_prec(&vf, &vg, &vp1).unwrap());
        }
        // precgprecf: f prec_g g implies f prec_f g (f, g not asymp 1)
        if vf != zero2 && vg != zero2 && coarse_prec(&vf, &vg, &vg).unwrap() {
            assert!(coarse_prec(&vf, &vg, &vf).unwrap());
        }
    }
    pass("7 (twocoarsen and precgprecf on the n=2 variant)", start, 20);
}

#[test]
fn criterion_7j_lifting_residual_growth() {
    let start = Instant::now();
    let mut s = Sampler::new(ht(), 0x0723);
    let mut lifted = 0;
    while lifted < N {
        // A (Y - y0) is quasilinear wherever y0 lives
        let a = s.nonzero_series(2);
        let y0 = {
            let y = s.nonzero_series(3);
            if y.is_vacuous() {
                continue;
            }
            y
        };
        let p = DiffPoly::constant(a)
            .mul(&DiffPoly::y(ht()).sub(&DiffPoly::constant(y0.clone())).unwrap())
            .unwrap();
        let eq = Ade::new(p, EConstraint::ValGE(y0.val().unwrap()));
        // lift_quasilinear asserts strict residual growth internally
        let branch = solver::lift_quasilinear(&eq, &ge(14)).unwrap();
        assert_eq!(branch.status, BranchStatus::ExactRoot);
        assert_eq!(branch.y, y0);
        lifted += 1;
    }
    pass("7 (strict residual growth across 200 lifts)", start, 30);
}

#[test]
fn criterion_8_cut_chain_behavior() {
    let start = Instant::now();
    let p = running_poly();
    let chain = CutChain::new(vec![
        Series::zero(ht()),
        t_pow(ht(), 1).neg(),
        t_pow(ht(), 1).neg().add(&t_pow(ht(), 2)).unwrap(),
    ])
    .unwrap();
    let r = newton::ddeg_along_chain(&p, &chain).unwrap();
    assert_eq!(r.values, vec![2, 1, 1]);
    assert!(r.stabilized);
    assert_eq!(r.value, 1);
    pass("8 (cut-chain dominant degree)", start, 1);
}

#[test]
fn criterion_9_out_of_scope_theorems_documented() {
    let start = Instant::now();
    // The isomorphism theorems quantify over infinite immediate extensions
    // and are not desk-scale computations; the README records this and
    // points at the computational surrogates (criteria 5 and 8).
    let readme = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../README.md"
    ))
    .expect("README.md present at the workspace root");
    assert!(
        readme.contains("not computed here"),
        "README must state the scope limitation"
    );
    pass("9 (scope limitation documented)", start, 1);
}

// supporting check used by criterion 1's profile: keep the diagram honest
// against a direct dominant-part computation on a fresh instance
#[test]
fn profile_cross_check_on_random_instances() {
    let mut s = Sampler::new(ht(), 0x0901);
    for _ in 0..50 {
        let p = s.diffpoly(2, 4, 4);
        let gamma = GroupElement::rank1(s.exponent(5));
        // ddeg_profile asserts agreement with dominant parts internally
        let _ = newton::ddeg_profile(&p, &gamma).unwrap();
    }
}
