//! Homogeneous polynomials in X0, X1, X2 with rational coefficients.
//!
//! Canonical term order is graded lexicographic on the exponent triple
//! (all stored terms share the total degree, so this is lex on (i,j,k)).

use crate::poly::bi::BiPoly;
use crate::rat::{Q, Z};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Chart of the projective plane, X_chart = 1.
///
/// Affine coordinates per chart, in order (x, y):
/// chart 0: (X1, X2); chart 1: (X0, X2); chart 2: (X0, X1).
pub type Chart = u8;

/// Sparse homogeneous polynomial. The zero polynomial is the empty term map
/// with whatever degree it was declared at; equality ignores the degree of
/// zero.
#[derive(Clone, Eq)]
pub struct HPoly {
    degree: u32,
    terms: BTreeMap<(u32, u32, u32), Q>,
}

impl PartialEq for HPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        self.degree == other.degree && self.terms == other.terms
    }
}

impl HPoly {
    pub fn zero(degree: u32) -> Self {
        HPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(i: u32, j: u32, k: u32, c: Q) -> Self {
        let mut p = HPoly::zero(i + j + k);
        if !c.is_zero() {
            p.terms.insert((i, j, k), c);
        }
        p
    }

    pub fn variable(idx: u8) -> Self {
        match idx {
            0 => HPoly::monomial(1, 0, 0, Q::one()),
            1 => HPoly::monomial(0, 1, 0, Q::one()),
            2 => HPoly::monomial(0, 0, 1, Q::one()),
            _ => panic!("variable index out of range"),
        }
    }

    /// Build from (i, j, k, coefficient) terms; all exponent triples must
    /// sum to the same degree.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, u32, Q)>) -> Result<Self, String> {
        let mut map: BTreeMap<(u32, u32, u32), Q> = BTreeMap::new();
        let mut degree: Option<u32> = None;
        for (i, j, k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let d = i + j + k;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(format!(
                        "inhomogeneous terms: degree {} monomial in a degree {} polynomial",
                        d, d0
                    ))
                }
                _ => {}
            }
            let e = map.entry((i, j, k)).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                map.remove(&(i, j, k));
            }
        }
        Ok(HPoly {
            degree: degree.unwrap_or(0),
            terms: map,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term in the canonical (graded lex) order.
    pub fn leading(&self) -> Option<((u32, u32, u32), Q)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c.clone()))
    }

    pub fn coefficient(&self, key: (u32, u32, u32)) -> Q {
        self.terms.get(&key).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, key: (u32, u32, u32), c: &Q) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(key.0 + key.1 + key.2, self.degree);
        let e = self.terms.entry(key).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch in addition");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        HPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = HPoly::zero(self.degree + other.degree);
        for ((i1, j1, k1), c1) in &self.terms {
            for ((i2, j2, k2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2, k1 + k2), &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return HPoly::zero(self.degree);
        }
        HPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = HPoly::monomial(0, 0, 0, Q::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, var: u8) -> Self {
        let mut out = HPoly::zero(self.degree.saturating_sub(1));
        for (&(i, j, k), c) in &self.terms {
            let (e, key) = match var {
                0 if i > 0 => (i, (i - 1, j, k)),
                1 if j > 0 => (j, (i, j - 1, k)),
                2 if k > 0 => (k, (i, j, k - 1)),
                _ => continue,
            };
            out.add_term(key, &(c * Q::from_integer(Z::from(e))));
        }
        out
    }

    pub fn eval(&self, x0: &Q, x1: &Q, x2: &Q) -> Q {
        let mut acc = Q::zero();
        for (&(i, j, k), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t *= x0;
            }
            for _ in 0..j {
                t *= x1;
            }
            for _ in 0..k {
                t *= x2;
            }
            acc += t;
        }
        acc
    }

    /// Restriction to the affine chart X_chart = 1.
    pub fn dehomogenize(&self, chart: Chart) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j, k), c) in &self.terms {
            let key = match chart {
                0 => (j, k),
                1 => (i, k),
                2 => (i, j),
                _ => panic!("chart out of range"),
            };
            out.add_term(key, c);
        }
        out
    }

    /// Inverse of `dehomogenize`: lift an affine polynomial into the
    /// homogeneous polynomial of the given total degree.
    pub fn homogenize(p: &BiPoly, chart: Chart, degree: u32) -> Result<Self, String> {
        let mut out = HPoly::zero(degree);
        for (&(a, b), c) in &p.terms {
            if a + b > degree {
                return Err("degree too small to homogenize".into());
            }
            let rest = degree - a - b;
            let key = match chart {
                0 => (rest, a, b),
                1 => (a, rest, b),
                2 => (a, b, rest),
                _ => panic!("chart out of range"),
            };
            out.add_term(key, c);
        }
        Ok(out)
    }

    /// Largest power of the given variable dividing self.
    pub fn variable_order(&self, var: u8) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j, k)| match var {
                0 => i,
                1 => j,
                2 => k,
                _ => panic!("variable index out of range"),
            })
            .min()
            .unwrap_or(0)
    }

    /// Exact division attempt by leading-term reduction in the canonical
    /// order; None when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(HPoly::zero(0));
        }
        if self.degree < divisor.degree {
            return None;
        }
        let (dk, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = HPoly::zero(self.degree - divisor.degree);
        while let Some((rk, rc)) = rem.leading() {
            if rk.0 < dk.0 || rk.1 < dk.1 || rk.2 < dk.2 {
                return None;
            }
            let qk = (rk.0 - dk.0, rk.1 - dk.1, rk.2 - dk.2);
            let qc = &rc / &dc;
            quot.add_term(qk, &qc);
            let t = HPoly::monomial(qk.0, qk.1, qk.2, qc);
            rem = rem.sub(&t.mul(divisor));
        }
        Some(quot)
    }

    /// gcd of homogeneous polynomials (primitive, positive leading
    /// coefficient). Reduces to a bivariate gcd on the X0-free parts.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let a0 = self.variable_order(0);
        let b0 = other.variable_order(0);
        let x0 = HPoly::variable(0);
        let f = self
            .div_exact(&x0.pow(a0))
            .expect("X0 power divides by construction");
        let g = other
            .div_exact(&x0.pow(b0))
            .expect("X0 power divides by construction");
        // X0 does not divide f or g, so deg of the chart-0 image equals the
        // homogeneous degree and the gcd lifts back exactly.
        let fb = f.dehomogenize(0);
        let gb = g.dehomogenize(0);
        let h = fb.gcd(&gb);
        let hd = h.total_degree().unwrap_or(0);
        let lifted = HPoly::homogenize(&h, 0, hd).expect("gcd degree fits");
        let common = a0.min(b0);
        let mut out = lifted.mul(&x0.pow(common));
        // normalize: primitive integer coefficients, positive leading term
        let mut lcm = Z::one();
        for c in out.terms.values() {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<Z> = out
            .terms
            .values()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g0 = crate::rat::gcd_all(&ints);
        let mut scale = Q::new(lcm, g0);
        if let Some((_, lead)) = out.leading() {
            if (lead * &scale).is_negative() {
                scale = -scale;
            }
        }
        out = out.scale(&scale);
        out
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (i, j, k) == (0, 0, 0) {
                factors.push(if mag.is_integer() {
                    mag.numer().to_string()
                } else {
                    format!("({})", mag)
                });
            }
            for (var, e) in [("X0", i), ("X1", j), ("X2", k)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{}^{}", var, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn xv(i: u8) -> HPoly {
        HPoly::variable(i)
    }

    #[test]
    fn construction_rejects_inhomogeneous() {
        assert!(HPoly::from_terms(vec![(1, 0, 0, q(1)), (0, 2, 0, q(1))]).is_err());
        let p = HPoly::from_terms(vec![(1, 1, 0, q(1)), (0, 0, 2, q(-1))]).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn zero_cancellation_keeps_invariant() {
        let p = HPoly::from_terms(vec![(1, 0, 0, q(2)), (1, 0, 0, q(-2))]).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn exact_division() {
        // (X0^2 X1) / X0 = X0 X1
        let n = HPoly::monomial(2, 1, 0, q(1));
        let d = xv(0);
        assert_eq!(n.div_exact(&d), Some(HPoly::monomial(1, 1, 0, q(1))));
        // X0^2 + X1^2 not divisible by X0 + X1
        let n2 = HPoly::monomial(2, 0, 0, q(1)).add(&HPoly::monomial(0, 2, 0, q(1)));
        let d2 = xv(0).add(&xv(1));
        assert_eq!(n2.div_exact(&d2), None);
        // but X0^2 - X1^2 is
        let n3 = HPoly::monomial(2, 0, 0, q(1)).sub(&HPoly::monomial(0, 2, 0, q(1)));
        assert_eq!(n3.div_exact(&d2), Some(xv(0).sub(&xv(1))));
    }

    #[test]
    fn gcd_homogeneous() {
        let f = xv(1).mul(&xv(2)).mul(&xv(0).add(&xv(1)));
        let g = xv(1).mul(&xv(0)).mul(&xv(0).add(&xv(1)));
        let d = f.gcd(&g);
        assert_eq!(d, xv(1).mul(&xv(0).add(&xv(1))));
        // gcd with X0-powers on both sides
        let f2 = xv(0).pow(3).mul(&xv(1));
        let g2 = xv(0).pow(2).mul(&xv(2));
        assert_eq!(f2.gcd(&g2), xv(0).pow(2));
    }

    #[test]
    fn dehomogenize_roundtrip() {
        let p = HPoly::from_terms(vec![(0, 5, 0, q(1)), (3, 0, 2, q(-1))]).unwrap();
        for chart in 0..3u8 {
            let affine = p.dehomogenize(chart);
            let back = HPoly::homogenize(&affine, chart, 5).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn display_readable() {
        // canonical order: descending lex on (i, j, k)
        let p = HPoly::from_terms(vec![(0, 5, 0, q(1)), (3, 0, 2, q(-1))]).unwrap();
        assert_eq!(format!("{}", p), "-X0^3*X2^2 + X1^5");
        let one = HPoly::monomial(0, 0, 0, q(1));
        assert_eq!(format!("{}", one), "1");
        let m = HPoly::monomial(1, 1, 0, q(-2));
        assert_eq!(format!("{}", m), "-2*X0*X1");
    }
}
