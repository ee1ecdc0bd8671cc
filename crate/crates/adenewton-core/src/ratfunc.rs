//! The residue field Q(z) of the "monotone" preset: reduced rational
//! functions with monic denominator, plus the exact square root used by the
//! quadratic residue solver.

use num_traits::{One, Signed, Zero};

use crate::qpoly::QPoly;
use crate::Rat;

/// A rational function num/den in z, coprime with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut num = num;
        let mut den = den;
        if num.is_zero() {
            return RatFunc {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        if g.degree().unwrap_or(0) > 0 {
            num = num.div_rem(&g).0;
            den = den.div_rem(&g).0;
        }
        let lead = den.leading();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(QPoly::constant(c))
    }

    pub fn zero() -> Self {
        RatFunc::constant(Rat::zero())
    }

    pub fn one() -> Self {
        RatFunc::constant(Rat::one())
    }

    pub fn var() -> Self {
        RatFunc::from_poly(QPoly::var())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The constant value when this is an element of Q, else `None`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self.mul(&r))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    /// d/dz via the quotient rule.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFunc::new(n, self.den.mul(&self.den))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc::new(self.num.pow(e), self.den.pow(e))
    }

    /// Exact square root in Q(z), if one exists.
    ///
    /// Since num and den are coprime and den is monic, a square root exists
    /// iff den is a square of a monic polynomial and num is a rational
    /// square times the square of a monic polynomial.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(RatFunc::zero());
        }
        let lead = self.num.leading();
        if lead.is_negative() {
            return None;
        }
        let s = rat_sqrt(&lead)?;
        let num_monic = self.num.monic();
        let u = num_monic.monic_sqrt()?;
        let w = self.den.monic_sqrt()?;
        Some(RatFunc::new(u.scale(&s), w))
    }
}

/// Square root of a nonnegative rational, if it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c.iter().map(|&x| rat_int(x)).collect())
    }

    #[test]
    fn reduction_is_canonical() {
        let a = RatFunc::new(p(&[0, 2]), p(&[0, 0, 4]));
        let b = RatFunc::new(p(&[1]), p(&[0, 2]));
        assert_eq!(a, b);
        assert!(a.den().leading().is_one());
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dz (1/z) = -1/z^2
        let f = RatFunc::new(p(&[1]), p(&[0, 1]));
        let expect = RatFunc::new(p(&[-1]), p(&[0, 0, 1]));
        assert_eq!(f.derivative(), expect);
    }

    #[test]
    fn sqrt_detects_squares() {
        // (4 z^2 (z+1)^2) / (z^2+2z+1) -> simplifies; use 9(z+1)^2 / z^4
        let f = RatFunc::new(p(&[9, 18, 9]), p(&[0, 0, 0, 0, 1]));
        let s = f.sqrt().unwrap();
        assert_eq!(s.mul(&s), f);
        let g = RatFunc::from_poly(p(&[0, 1])); // z is not a square
        assert!(g.sqrt().is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn ratfunc() -> impl Strategy<Value = RatFunc> {
            let poly = || {
                proptest::collection::vec(-6i64..=6, 0..4)
                    .prop_map(|v| QPoly::from_coeffs(v.into_iter().map(crate::rat_int).collect()))
            };
            (poly(), poly())
                .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
                .prop_map(|(n, d)| RatFunc::new(n, d))
        }

        proptest! {
            #[test]
            fn field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
                prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
                if let Some(inv) = a.recip() {
                    prop_assert_eq!(a.mul(&inv), RatFunc::one());
                }
            }

            #[test]
            fn squares_have_square_roots(a in ratfunc()) {
                let sq = a.mul(&a);
                let r = sq.sqrt().expect("a square must admit a root");
                prop_assert_eq!(r.mul(&r), sq);
            }

            #[test]
            fn leibniz_on_derivatives(a in ratfunc(), b in ratfunc()) {
                let left = a.mul(&b).derivative();
                let right = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
                prop_assert_eq!(left, right);
            }
        }
    }
}
