//! Univariate polynomials over Q: arithmetic, gcd, Sturm sequences and
//! complete rational root extraction.
//!
//! Rational roots are found without integer factorization: real roots are
//! isolated with Sturm sequences, each isolating interval is narrowed below
//! the 1/lc^2 separation bound for denominators dividing the leading
//! coefficient, and the simplest rational in the interval is tested.

use crate::rat::{gcd_all, simplest_in_interval, Q, Z};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of t^i.
/// Trailing zeros are always trimmed; the zero polynomial has an empty list.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Q>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Q) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// t - r
    pub fn linear_root(r: &Q) -> Self {
        UniPoly::from_coeffs(vec![-r.clone(), Q::one()])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Q::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Q) -> Self {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(Z::from(i)))
                .collect(),
        )
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading();
        let mut rem = self.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading() / &lead;
            let shift = rd - dd;
            quot[shift] = c.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let v = &c * dc;
                rem.coeffs[shift + i] -= v;
            }
            rem.trim();
        }
        (UniPoly::from_coeffs(quot), rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Monic gcd (1 for coprime, 0 only if both inputs are 0).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
            // keep coefficients small
            b = b.primitive_scaled();
        }
        a.monic()
    }

    /// Extended gcd: (g, s, t) with s*self + t*other = g, g monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::constant(Q::one());
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::constant(Q::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let ns = s0.sub(&q.mul(&s1));
            let nt = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.leading();
        let inv = lead.recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// Positive rational rescaling to an integer polynomial with content 1.
    /// Sign of the leading coefficient is preserved.
    pub fn primitive_scaled(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let ints = self.to_integer_coeffs();
        let g = gcd_all(&ints);
        UniPoly::from_coeffs(ints.iter().map(|n| Q::new(n.clone(), g.clone())).collect())
    }

    /// Clears denominators: integer coefficient list of lcm(denoms) * self.
    pub fn to_integer_coeffs(&self) -> Vec<Z> {
        let mut lcm = Z::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        self.coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect()
    }

    /// f / gcd(f, f'): same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) <= 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.divrem(&g).0
    }

    /// Substitute t -> t + c.
    pub fn translate(&self, c: &Q) -> Self {
        // Horner-style: p(t + c)
        let mut acc = UniPoly::zero();
        let shift = UniPoly::from_coeffs(vec![c.clone(), Q::one()]);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&UniPoly::constant(coeff.clone()));
        }
        acc
    }

    /// All rational roots with multiplicities.
    pub fn rational_roots(&self) -> Vec<(Q, usize)> {
        assert!(!self.is_zero(), "rational_roots of the zero polynomial");
        let mut out = Vec::new();
        for root in rational_roots_distinct(self) {
            let lin = UniPoly::linear_root(&root);
            let mut mult = 0;
            let mut f = self.clone();
            loop {
                let (q2, r) = f.divrem(&lin);
                if !r.is_zero() {
                    break;
                }
                mult += 1;
                f = q2;
            }
            debug_assert!(mult >= 1);
            out.push((root, mult));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// The polynomial remaining after dividing out every rational root;
    /// nonconstant exactly when irrational (or complex) roots exist.
    pub fn irrational_part(&self) -> Self {
        let mut f = self.clone();
        for (root, mult) in self.rational_roots() {
            let lin = UniPoly::linear_root(&root);
            for _ in 0..mult {
                f = f.divrem(&lin).0;
            }
        }
        f
    }
}

/// Distinct rational roots of f (no multiplicities).
fn rational_roots_distinct(f: &UniPoly) -> Vec<Q> {
    let sf = f.squarefree_part().primitive_scaled();
    let deg = match sf.degree() {
        None | Some(0) => return vec![],
        Some(1) => {
            return vec![-&sf.coeffs[0] / &sf.coeffs[1]];
        }
        Some(d) => d,
    };
    // Quadratic shortcut: discriminant square test.
    if deg == 2 {
        return crate::rat::quadratic_rational_roots(&sf.coeffs[2], &sf.coeffs[1], &sf.coeffs[0]);
    }
    let ints = sf.to_integer_coeffs();
    let lc = ints.last().unwrap().abs();
    // any rational root p/q in lowest terms has q | lc
    let sep = Q::new(Z::one(), &lc * &lc) / Q::from_integer(Z::from(2));
    let sturm = sturm_sequence(&sf);
    let bound = cauchy_bound(&sf);
    let mut roots = Vec::new();
    for (mut lo, mut hi) in isolate_real_roots(&sf, &sturm, &bound) {
        // narrow until only one rational with denominator ≤ lc can fit
        loop {
            if &hi - &lo < sep {
                break;
            }
            let mid = (&lo + &hi) / Q::from_integer(Z::from(2));
            let v = sf.eval(&mid);
            if v.is_zero() {
                roots.push(mid);
                lo = hi.clone(); // mark done
                break;
            }
            if count_roots(&sturm, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if lo >= hi {
            continue; // root found exactly at a midpoint
        }
        let cand = simplest_in_interval(&lo, &hi);
        if sf.eval(&cand).is_zero() {
            roots.push(cand);
        }
    }
    roots
}

/// Sturm chain of a squarefree polynomial.
fn sturm_sequence(f: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).neg().primitive_scaled();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_variations(seq: &[UniPoly], x: &Q) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in seq {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Number of distinct real roots in the half-open interval (lo, hi].
fn count_roots(seq: &[UniPoly], lo: &Q, hi: &Q) -> usize {
    sign_variations(seq, lo) - sign_variations(seq, hi)
}

fn cauchy_bound(f: &UniPoly) -> Q {
    let lead = f.leading();
    let mut m = Q::zero();
    for c in &f.coeffs[..f.coeffs.len() - 1] {
        let v = (c / &lead).abs();
        if v > m {
            m = v;
        }
    }
    m + Q::one()
}

/// Disjoint intervals (lo, hi] each containing exactly one real root, with
/// endpoints that are not roots.
fn isolate_real_roots(f: &UniPoly, sturm: &[UniPoly], bound: &Q) -> Vec<(Q, Q)> {
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(sturm, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push((lo, hi));
            continue;
        }
        let mut mid = (&lo + &hi) / Q::from_integer(Z::from(2));
        // perturb until the midpoint is not a root, so intervals stay clean
        while f.eval(&mid).is_zero() {
            mid = (&lo + &mid) / Q::from_integer(Z::from(2));
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qr};

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn arithmetic_and_divrem() {
        let f = poly(&[-6, 11, -6, 1]); // (t-1)(t-2)(t-3)
        let g = poly(&[-1, 1]);
        let (quot, rem) = f.divrem(&g);
        assert!(rem.is_zero());
        assert_eq!(quot, poly(&[6, -5, 1]));
        assert_eq!(f.eval(&q(2)), q(0));
        assert_eq!(f.eval(&q(4)), q(6));
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = poly(&[1, 2, 1]); // (t+1)^2
        let g = poly(&[1, 1]);
        assert_eq!(f.gcd(&g), g.monic());
        assert_eq!(f.squarefree_part().monic(), g.monic());
    }

    #[test]
    fn rational_roots_complete() {
        // roots 1/2, -3, 5 with multiplicities 2,1,1; plus irreducible t^2+1
        let f = poly(&[-1, 2])
            .mul(&poly(&[-1, 2]))
            .mul(&poly(&[3, 1]))
            .mul(&poly(&[-5, 1]))
            .mul(&poly(&[1, 0, 1]));
        let roots = f.rational_roots();
        assert_eq!(
            roots,
            vec![(q(-3), 1), (qr(1, 2), 2), (q(5), 1)]
        );
        let rest = f.irrational_part();
        assert_eq!(rest.degree(), Some(2));
    }

    #[test]
    fn rational_roots_with_large_denominator() {
        // 97 t^3 - t^2 - 97 t + 1 = (97t - 1)(t-1)(t+1)
        let f = poly(&[1, -97, -1, 97]);
        let roots: Vec<Q> = f.rational_roots().into_iter().map(|r| r.0).collect();
        assert_eq!(roots, vec![q(-1), qr(1, 97), q(1)]);
    }

    #[test]
    fn no_rational_roots_for_irreducibles() {
        let f = poly(&[-2, 0, 1]); // t^2 - 2
        assert!(f.rational_roots().is_empty());
        let g = poly(&[1, 1, 0, 0, 1]); // t^4 + t + 1 (no real rational roots)
        assert!(g.rational_roots().is_empty());
        // t^3 - 2: irrational real root
        let h = poly(&[-2, 0, 0, 1]);
        assert!(h.rational_roots().is_empty());
        assert_eq!(h.irrational_part().degree(), Some(3));
    }

    #[test]
    fn translate_shifts_roots() {
        let f = poly(&[-6, 11, -6, 1]); // roots 1,2,3
        let g = f.translate(&q(1)); // roots 0,1,2
        assert_eq!(g.eval(&q(0)), q(0));
        assert_eq!(g.eval(&q(2)), q(0));
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = poly(&[-1, 0, 1]); // t^2-1
        let g = poly(&[2, 1]); // t+2
        let (d, s, t) = f.extended_gcd(&g);
        assert_eq!(d.degree(), Some(0));
        let combo = s.mul(&f).add(&t.mul(&g));
        assert_eq!(combo, d);
    }
}
