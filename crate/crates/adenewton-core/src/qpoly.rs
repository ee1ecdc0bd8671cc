//! Dense univariate polynomials over Q: the coefficient workhorse behind
//! the rational-function residue field and the exact root finders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{rat_int, Rat};

/// A polynomial over Q, stored densely with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPoly(Vec<Rat>);

impl QPoly {
    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    pub fn var() -> Self {
        QPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with deg 0 for nonzero constants; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn leading(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return QPoly::zero();
        }
        let mut out = Vec::with_capacity(self.0.len() - 1);
        for (i, c) in self.0.iter().enumerate().skip(1) {
            out.push(c * rat_int(i as i64));
        }
        QPoly::from_coeffs(out)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division; panics on zero divisor.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.0.len();
        if self.0.len() < dd {
            return (QPoly::zero(), self.clone());
        }
        let mut rem = self.0.clone();
        let mut quo = vec![Rat::zero(); self.0.len() - dd + 1];
        let lead = div.leading();
        for k in (0..quo.len()).rev() {
            let c = rem[k + dd - 1].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            quo[k] = c.clone();
            for (j, d) in div.0.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
        }
        (QPoly::from_coeffs(quo), QPoly::from_coeffs(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let l = self.leading();
        self.scale(&(Rat::one() / l))
    }

    /// Monic gcd via the primitive pseudo-remainder sequence over Z[z]
    /// (plain Euclid over Q suffers exponential coefficient swell).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return QPoly::one();
        }
        let mut a = primitive_int(self);
        let mut b = primitive_int(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = prem(&a, &b);
            a = b;
            b = primitive_part(r);
        }
        QPoly::from_coeffs(a.into_iter().map(Rat::from_integer).collect()).monic()
    }

    /// The squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() || self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// All rational roots with multiplicities, via the rational root theorem
    /// applied to the squarefree part. Returns `None` when the coefficients
    /// are too large for divisor enumeration.
    pub fn rational_roots(&self) -> Option<Vec<(Rat, usize)>> {
        if self.is_zero() || self.is_constant() {
            return Some(Vec::new());
        }
        let mut p = self.clone();
        let mut roots = Vec::new();
        // strip roots at 0 first
        let mut zero_mult = 0usize;
        while p.coeff(0).is_zero() && !p.is_zero() {
            p = p.div_rem(&QPoly::var()).0;
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Rat::zero(), zero_mult));
        }
        if p.is_constant() {
            return Some(roots);
        }
        let sf = p.squarefree_part();
        let (c0, cn) = integerized_ends(&sf)?;
        let ps = small_divisors(&c0)?;
        let qs = small_divisors(&cn)?;
        let mut found: Vec<Rat> = Vec::new();
        for pp in &ps {
            for qq in &qs {
                for sign in [1i64, -1] {
                    let cand = Rat::new(BigInt::from(sign) * pp, qq.clone());
                    if found.contains(&cand) {
                        continue;
                    }
                    if sf.eval(&cand).is_zero() {
                        found.push(cand);
                    }
                }
            }
        }
        for r in found {
            let lin = QPoly::from_coeffs(vec![-r.clone(), Rat::one()]);
            let mut m = 0usize;
            let mut q = p.clone();
            loop {
                let (quo, rem) = q.div_rem(&lin);
                if rem.is_zero() {
                    m += 1;
                    q = quo;
                } else {
                    break;
                }
            }
            debug_assert!(m >= 1);
            roots.push((r, m));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Some(roots)
    }

    /// Exact square root of a monic polynomial, if one exists (monic result).
    pub fn monic_sqrt(&self) -> Option<QPoly> {
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        if !self.leading().is_one() {
            return None;
        }
        let deg = self.degree().unwrap();
        if deg % 2 != 0 {
            return None;
        }
        let half = deg / 2;
        // determine coefficients top-down from (sum r_i x^i)^2 = self
        let mut r = vec![Rat::zero(); half + 1];
        r[half] = Rat::one();
        for k in (0..half).rev() {
            // coefficient of x^(half+k) in r^2 is 2*r[half]*r[k] + known terms
            let mut acc = Rat::zero();
            for i in (k + 1)..half {
                let j = half + k - i;
                if j > i {
                    continue;
                }
                if j == i {
                    acc += &r[i] * &r[i];
                } else {
                    acc += rat_int(2) * &r[i] * &r[j];
                }
            }
            r[k] = (self.coeff(half + k) - acc) / rat_int(2);
        }
        let cand = QPoly::from_coeffs(r);
        if cand.mul(&cand) == *self {
            Some(cand)
        } else {
            None
        }
    }
}

impl std::fmt::Display for QPoly {
    /// Renders in the CLI grammar, e.g. `2*z^2 - 1/3*z + 4`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.0.len()).rev() {
            let c = &self.0[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
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
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", crate::rat_str(&mag))?;
            }
            if i >= 1 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "z")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Clears denominators and strips content: the primitive integer form.
fn primitive_int(p: &QPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * &lcm / c.denom())
        .collect();
    primitive_part(ints)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if g > BigInt::one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

/// Pseudo-remainder of integer polynomials: `lc(b)^(da-db+1) * a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db {
        let da = r.len() - 1;
        let coef = r[da].clone();
        for x in r.iter_mut() {
            *x *= &lead;
        }
        for j in 0..=db {
            r[da - db + j] -= &coef * &b[j];
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Clears denominators and common numerator factors; returns |constant| and
/// |leading| of the primitive integer form (constant term must be nonzero).
fn integerized_ends(p: &QPoly) -> Option<(BigInt, BigInt)> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * &lcm / c.denom()).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return None;
    }
    let first = &ints[0] / &g;
    let last = ints.last().unwrap() / &g;
    Some((first.abs(), last.abs()))
}

/// All positive divisors by trial division; `None` when the value is too big
/// to enumerate honestly.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n: u128 = n.abs().try_into().ok()?;
    if n == 0 {
        return None;
    }
    if n > 1_000_000_000_000u128 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            divs.push(BigInt::from(d));
            if d != n / d {
                divs.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    divs.sort();
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c.iter().map(|&x| rat_int(x)).collect())
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[1, 0, -3, 2, 5]);
        let b = p(&[2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = p(&[-1, 1]); // z - 1
        let a = f.mul(&p(&[1, 1]));
        let b = f.mul(&p(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (z - 1/2)^2 (z + 3) z
        let f = p(&[0, 1])
            .mul(&p(&[3, 1]))
            .mul(&QPoly::from_coeffs(vec![Rat::new((-1).into(), 2.into()), Rat::one()]).pow(2));
        let roots = f.rational_roots().unwrap();
        assert_eq!(
            roots,
            vec![
                (rat_int(-3), 1),
                (Rat::zero(), 1),
                (Rat::new(1.into(), 2.into()), 2)
            ]
        );
    }

    #[test]
    fn no_rational_roots() {
        let f = p(&[1, 0, 1]); // z^2 + 1
        assert!(f.rational_roots().unwrap().is_empty());
    }

    #[test]
    fn monic_sqrt_exists() {
        let f = p(&[1, 2, 1]); // (z+1)^2
        assert_eq!(f.monic_sqrt().unwrap(), p(&[1, 1]));
        let g = p(&[2, 2, 1]);
        assert!(g.monic_sqrt().is_none());
    }

    #[test]
    fn squarefree_part_strips_powers() {
        let f = p(&[-1, 1]).pow(3).mul(&p(&[1, 1]));
        assert_eq!(f.squarefree_part(), p(&[-1, 1]).mul(&p(&[1, 1])).monic());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn qpoly() -> impl Strategy<Value = QPoly> {
            proptest::collection::vec((-9i64..=9, 1i64..=4), 0..6)
                .prop_map(|v| QPoly::from_coeffs(v.into_iter().map(|(n, d)| Rat::new(n.into(), d.into())).collect()))
        }

        proptest! {
            #[test]
            fn gcd_divides_both(a in qpoly(), b in qpoly()) {
                prop_assume!(!a.is_zero() || !b.is_zero());
                let g = a.gcd(&b);
                prop_assert!(g.divides(&a) && g.divides(&b));
                prop_assert!(g.leading().is_one());
            }

            #[test]
            fn division_reconstructs(a in qpoly(), b in qpoly()) {
                prop_assume!(!b.is_zero());
                let (quo, rem) = a.div_rem(&b);
                prop_assert_eq!(quo.mul(&b).add(&rem), a);
                prop_assert!(rem.is_zero() || rem.degree() < b.degree());
            }

            #[test]
            fn reported_roots_vanish(a in qpoly()) {
                if let Some(roots) = a.rational_roots() {
                    for (r, m) in roots {
                        prop_assert!(a.eval(&r).is_zero());
                        prop_assert!(m >= 1);
                    }
                }
            }
        }
    }
}
