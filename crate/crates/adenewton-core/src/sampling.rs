//! Deterministic random generators for series, group elements, and
//! differential polynomials. Used by the `check-field` command and by the
//! randomized law suites; everything is seeded, so runs reproduce exactly.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diffpoly::{DiffPoly, MultiIndex};
use crate::qpoly::QPoly;
use crate::ratfunc::RatFunc;
use crate::series::{FieldPreset, PresetKind, ResidueElem, Series};
use crate::valgroup::GroupElement;
use crate::Rat;

pub struct Sampler {
    rng: ChaCha8Rng,
    pub preset: FieldPreset,
}

impl Sampler {
    pub fn new(preset: FieldPreset, seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            preset,
        }
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn bool(&mut self) -> bool {
        self.rng.gen()
    }

    /// A small rational with |numerator| <= 9 and denominator <= 4.
    pub fn rat(&mut self) -> Rat {
        let n = self.rng.gen_range(-9i64..=9);
        let d = self.rng.gen_range(1i64..=4);
        Rat::new(n.into(), d.into())
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.rat();
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }

    /// An exponent with the given denominator bound.
    pub fn exponent(&mut self, den_bound: u32) -> Rat {
        let d = self.rng.gen_range(1..=den_bound.max(1)) as i64;
        let n = self.rng.gen_range(-6 * d..=6 * d);
        Rat::new(n.into(), d.into())
    }

    pub fn group_elem(&mut self, den_bound: u32) -> GroupElement {
        let dim = self.preset.dim;
        GroupElement::new((0..dim).map(|_| self.exponent(den_bound)).collect())
    }

    pub fn nonzero_group_elem(&mut self, den_bound: u32) -> GroupElement {
        loop {
            let g = self.group_elem(den_bound);
            if !g.is_zero() {
                return g;
            }
        }
    }

    /// A residue-field element; for the monotone preset a small polynomial
    /// in z (so the text form stays inside the CLI grammar).
    pub fn residue_elem(&mut self) -> ResidueElem {
        match self.preset.kind {
            PresetKind::HType => ResidueElem::Q(self.rat()),
            PresetKind::Monotone => {
                let deg = self.rng.gen_range(0..=2);
                let coeffs = (0..=deg).map(|_| self.rat()).collect();
                ResidueElem::Fz(RatFunc::from_poly(QPoly::from_coeffs(coeffs)))
            }
        }
    }

    pub fn nonzero_residue_elem(&mut self) -> ResidueElem {
        loop {
            let c = self.residue_elem();
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// An exact series with up to `max_terms` terms, first-coordinate
    /// exponents drawn from [lo, lo + 12].
    pub fn series_with(&mut self, max_terms: usize, lo: i64, den_bound: u32) -> Series {
        let n = self.rng.gen_range(0..=max_terms);
        let mut s = Series::zero(self.preset);
        for _ in 0..n {
            let d = self.rng.gen_range(1..=den_bound.max(1)) as i64;
            let num = self.rng.gen_range(lo * d..=(lo + 12) * d);
            let dim = self.preset.dim;
            let mut coords = vec![Rat::new(num.into(), d.into())];
            for _ in 1..dim {
                coords.push(self.exponent(den_bound));
            }
            let g = GroupElement::new(coords);
            let m = Series::monomial(self.preset, self.nonzero_residue_elem(), g);
            s = s.add(&m).expect("same preset");
        }
        s
    }

    pub fn nonzero_series(&mut self, max_terms: usize) -> Series {
        loop {
            let s = self.series_with(max_terms.max(1), -6, 4);
            if !s.is_vacuous() {
                return s;
            }
        }
    }

    /// A nonzero exact series whose exponents share one denominator, so
    /// exponent gaps stay coarse (for inversion-heavy checks).
    pub fn nonzero_series_common_den(&mut self, max_terms: usize, lo: i64, den: u32) -> Series {
        let d = self.rng.gen_range(1..=den.max(1)) as i64;
        loop {
            let n = self.rng.gen_range(1..=max_terms.max(1));
            let mut s = Series::zero(self.preset);
            for _ in 0..n {
                let num = self.rng.gen_range(lo * d..=(lo + 8) * d);
                let mut coords = vec![Rat::new(num.into(), d.into())];
                for _ in 1..self.preset.dim {
                    coords.push(self.exponent(den));
                }
                let m = Series::monomial(
                    self.preset,
                    self.nonzero_residue_elem(),
                    GroupElement::new(coords),
                );
                s = s.add(&m).expect("same preset");
            }
            if !s.is_vacuous() {
                return s;
            }
        }
    }

    /// A nonzero element of the maximal ideal (v > 0).
    pub fn small_series(&mut self) -> Series {
        loop {
            let mut s = Series::zero(self.preset);
            let n = self.rng.gen_range(1..=3);
            for _ in 0..n {
                let dim = self.preset.dim;
                let mut coords: Vec<Rat> = (0..dim).map(|_| self.exponent(4)).collect();
                // force positivity in the lex order via the first coordinate
                let d = coords[0].denom().clone();
                let num = self.rng.gen_range(1i64..=12);
                coords[0] = Rat::new(num.into(), d);
                let g = GroupElement::new(coords);
                s = s
                    .add(&Series::monomial(self.preset, self.nonzero_residue_elem(), g))
                    .expect("same preset");
            }
            if !s.is_vacuous() {
                return s;
            }
        }
    }

    /// A unit of the valuation ring (v = 0).
    pub fn unit_series(&mut self) -> Series {
        let tail = self.small_series();
        let head = Series::constant(self.preset, self.nonzero_residue_elem());
        if self.bool() {
            head
        } else {
            head.add(&tail).expect("same preset")
        }
    }

    /// An exact monomial `c * t^gamma` with nonzero c.
    pub fn monomial(&mut self, den_bound: u32) -> Series {
        Series::monomial(
            self.preset,
            self.nonzero_residue_elem(),
            self.group_elem(den_bound),
        )
    }

    /// A nonzero differential polynomial.
    pub fn diffpoly(&mut self, max_order: usize, max_degree: usize, max_terms: usize) -> DiffPoly {
        loop {
            let n = self.rng.gen_range(1..=max_terms.max(1));
            let mut terms = Vec::with_capacity(n);
            for _ in 0..n {
                let idx = self.multi_index(max_order, max_degree);
                let coeff = self.nonzero_series(2);
                terms.push((idx, coeff));
            }
            let p = DiffPoly::from_terms(self.preset, terms);
            if !p.is_vacuous() {
                return p;
            }
        }
    }

    /// A nonzero homogeneous polynomial of exactly the given degree.
    pub fn homogeneous(&mut self, degree: usize, max_order: usize, max_terms: usize) -> DiffPoly {
        loop {
            let n = self.rng.gen_range(1..=max_terms.max(1));
            let mut terms = Vec::with_capacity(n);
            for _ in 0..n {
                let idx = self.multi_index_of_degree(degree, max_order);
                terms.push((idx, self.nonzero_series(2)));
            }
            let p = DiffPoly::from_terms(self.preset, terms);
            if !p.is_vacuous() {
                return p;
            }
        }
    }

    pub fn multi_index(&mut self, max_order: usize, max_degree: usize) -> MultiIndex {
        let deg = self.rng.gen_range(0..=max_degree);
        self.multi_index_of_degree(deg, max_order)
    }

    pub fn multi_index_of_degree(&mut self, degree: usize, max_order: usize) -> MultiIndex {
        let mut v = vec![0u32; max_order + 1];
        for _ in 0..degree {
            let j = self.rng.gen_range(0..=max_order);
            v[j] += 1;
        }
        MultiIndex::new(v)
    }
}
