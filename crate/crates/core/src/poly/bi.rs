//! Sparse bivariate polynomials over Q.
//!
//! These are the local objects of the resolution process: affine 1-form
//! coefficients, blow-up substitutions and strict/virtual transforms all live
//! in Q[x, y]. Resultants in y are computed with fraction-free Bareiss
//! elimination on the Sylvester matrix, which stays exact over Q[x].

use crate::poly::uni::UniPoly;
use crate::rat::{Q, Z};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse bivariate polynomial; keys are (x-exponent, y-exponent).
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    pub terms: BTreeMap<(u32, u32), Q>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})x^{}y^{}", c, i, j)?;
        }
        Ok(())
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = BiPoly::zero();
        if !c.is_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn monomial(i: u32, j: u32, c: Q) -> Self {
        let mut p = BiPoly::zero();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn var_x() -> Self {
        BiPoly::monomial(1, 0, Q::one())
    }

    pub fn var_y() -> Self {
        BiPoly::monomial(0, 1, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn add_term(&mut self, key: (u32, u32), c: &Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiPoly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = BiPoly::constant(Q::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Order of vanishing at the origin (minimal total degree of a term).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        // Horner in y over Horner in x would be faster; direct sum is fine
        // at the degrees met here.
        let mut xp: Vec<Q> = vec![Q::one()];
        let mut yp: Vec<Q> = vec![Q::one()];
        let mut acc = Q::zero();
        for ((i, j), c) in &self.terms {
            while xp.len() <= *i as usize {
                let last = xp.last().unwrap() * x;
                xp.push(last);
            }
            while yp.len() <= *j as usize {
                let last = yp.last().unwrap() * y;
                yp.push(last);
            }
            acc += c * &xp[*i as usize] * &yp[*j as usize];
        }
        acc
    }

    pub fn partial_x(&self) -> Self {
        let mut out = BiPoly::zero();
        for ((i, j), c) in &self.terms {
            if *i > 0 {
                out.add_term((i - 1, *j), &(c * Q::from_integer(Z::from(*i))));
            }
        }
        out
    }

    pub fn partial_y(&self) -> Self {
        let mut out = BiPoly::zero();
        for ((i, j), c) in &self.terms {
            if *j > 0 {
                out.add_term((*i, j - 1), &(c * Q::from_integer(Z::from(*j))));
            }
        }
        out
    }

    /// Substitute x -> sx, y -> sy for generic polynomials: p(sub_x, sub_y).
    pub fn compose(&self, sub_x: &BiPoly, sub_y: &BiPoly) -> Self {
        // cache powers of the substitutions
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut xp: Vec<BiPoly> = Vec::with_capacity(max_i as usize + 1);
        let mut yp: Vec<BiPoly> = Vec::with_capacity(max_j as usize + 1);
        xp.push(BiPoly::constant(Q::one()));
        yp.push(BiPoly::constant(Q::one()));
        for i in 1..=max_i {
            let next = xp[i as usize - 1].mul(sub_x);
            xp.push(next);
        }
        for j in 1..=max_j {
            let next = yp[j as usize - 1].mul(sub_y);
            yp.push(next);
        }
        let mut out = BiPoly::zero();
        for ((i, j), c) in &self.terms {
            let t = xp[*i as usize].mul(&yp[*j as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Substitute (x, y) -> (x + a, y + b).
    pub fn translate(&self, a: &Q, b: &Q) -> Self {
        if a.is_zero() && b.is_zero() {
            return self.clone();
        }
        let sx = BiPoly::var_x().add(&BiPoly::constant(a.clone()));
        let sy = BiPoly::var_y().add(&BiPoly::constant(b.clone()));
        self.compose(&sx, &sy)
    }

    /// Largest k with x^k dividing self (0 for zero polynomial).
    pub fn x_order(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).min().unwrap_or(0)
    }

    pub fn y_order(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).min().unwrap_or(0)
    }

    pub fn divide_x_power(&self, k: u32) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        debug_assert!(self.x_order() >= k);
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i - k, j), c.clone()))
                .collect(),
        }
    }

    pub fn divide_y_power(&self, k: u32) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        debug_assert!(self.y_order() >= k);
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j - k), c.clone()))
                .collect(),
        }
    }

    /// Exact division; None when the divisor does not divide exactly.
    /// Leading-term reduction in lex order, valid for a single divisor.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dk, dc) = divisor.terms.iter().next_back().map(|(k, c)| (*k, c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((&rk, rc)) = rem.terms.iter().next_back() {
            if rk.0 < dk.0 || rk.1 < dk.1 {
                return None;
            }
            let qk = (rk.0 - dk.0, rk.1 - dk.1);
            let qc = rc / &dc;
            quot.add_term(qk, &qc);
            let t = BiPoly::monomial(qk.0, qk.1, qc);
            rem = rem.sub(&t.mul(divisor));
        }
        Some(quot)
    }

    /// Restriction to x = 0 as a polynomial in y.
    pub fn restrict_x0(&self) -> UniPoly {
        let deg = self
            .terms
            .iter()
            .filter(|(&(i, _), _)| i == 0)
            .map(|(&(_, j), _)| j)
            .max();
        let Some(deg) = deg else { return UniPoly::zero() };
        let mut coeffs = vec![Q::zero(); deg as usize + 1];
        for ((i, j), c) in &self.terms {
            if *i == 0 {
                coeffs[*j as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Restriction to y = 0 as a polynomial in x.
    pub fn restrict_y0(&self) -> UniPoly {
        let deg = self
            .terms
            .iter()
            .filter(|(&(_, j), _)| j == 0)
            .map(|(&(i, _), _)| i)
            .max();
        let Some(deg) = deg else { return UniPoly::zero() };
        let mut coeffs = vec![Q::zero(); deg as usize + 1];
        for ((i, j), c) in &self.terms {
            if *j == 0 {
                coeffs[*i as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Substitute a rational value for x, leaving a polynomial in y.
    pub fn eval_x(&self, x: &Q) -> UniPoly {
        let mut xp: Vec<Q> = vec![Q::one()];
        let deg = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut coeffs = vec![Q::zero(); deg as usize + 1];
        for ((i, j), c) in &self.terms {
            while xp.len() <= *i as usize {
                let last = xp.last().unwrap() * x;
                xp.push(last);
            }
            coeffs[*j as usize] += c * &xp[*i as usize];
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Coefficients as polynomials in x, indexed by y-exponent.
    pub fn y_coefficients(&self) -> Vec<UniPoly> {
        let deg = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut out = vec![UniPoly::zero(); deg as usize + 1];
        for ((i, j), c) in &self.terms {
            let target = &mut out[*j as usize];
            let mut coeffs = std::mem::take(&mut target.coeffs);
            if coeffs.len() <= *i as usize {
                coeffs.resize(*i as usize + 1, Q::zero());
            }
            coeffs[*i as usize] = c.clone();
            *target = UniPoly::from_coeffs(coeffs);
        }
        out
    }

    pub fn from_y_coefficients(coeffs: &[UniPoly]) -> Self {
        let mut out = BiPoly::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.coeffs.iter().enumerate() {
                out.add_term((i as u32, j as u32), c);
            }
        }
        out
    }

    /// gcd, primitive with positive leading coefficient in lex order.
    pub fn gcd(&self, other: &Self) -> Self {
        bi_gcd(self, other)
    }

    /// Resultant with respect to y, an element of Q[x].
    pub fn resultant_y(&self, other: &Self) -> UniPoly {
        let a = self.y_coefficients();
        let b = other.y_coefficients();
        let m = a.len() - 1;
        let n = b.len() - 1;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        if m == 0 && n == 0 {
            return UniPoly::constant(Q::one());
        }
        if m == 0 {
            // res(a, b) = a^deg_y(b)
            let mut acc = UniPoly::constant(Q::one());
            for _ in 0..n {
                acc = acc.mul(&a[0]);
            }
            return acc;
        }
        if n == 0 {
            let mut acc = UniPoly::constant(Q::one());
            for _ in 0..m {
                acc = acc.mul(&b[0]);
            }
            return acc;
        }
        // Sylvester matrix over Q[x], determinant by Bareiss elimination.
        let size = m + n;
        let mut mat: Vec<Vec<UniPoly>> = vec![vec![UniPoly::zero(); size]; size];
        for row in 0..n {
            for (k, c) in a.iter().enumerate() {
                mat[row][row + (m - k)] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in b.iter().enumerate() {
                mat[n + row][row + (n - k)] = c.clone();
            }
        }
        poly_matrix_determinant(mat)
    }
}

/// Determinant of a matrix over Q[x] by fraction-free Bareiss elimination.
/// All interior divisions are exact.
fn poly_matrix_determinant(mut mat: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = mat.len();
    if n == 0 {
        return UniPoly::constant(Q::one());
    }
    let mut sign = false;
    let mut prev = UniPoly::constant(Q::one());
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            // pivot search
            let Some(swap) = (k + 1..n).find(|&r| !mat[r][k].is_zero()) else {
                return UniPoly::zero();
            };
            mat.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = mat[k][k].mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                let (q2, r) = num.divrem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                mat[i][j] = q2;
            }
            mat[i][k] = UniPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Content of p as a polynomial in y over Q[x]: gcd of its y-coefficients.
fn content_y(p: &BiPoly) -> UniPoly {
    let mut g = UniPoly::zero();
    for c in p.y_coefficients() {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c } else { g.gcd(&c) };
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

fn divide_content_y(p: &BiPoly, cont: &UniPoly) -> BiPoly {
    if cont.degree() == Some(0) {
        let inv = cont.leading().recip();
        return p.scale(&inv);
    }
    let coeffs: Vec<UniPoly> = p
        .y_coefficients()
        .iter()
        .map(|c| {
            if c.is_zero() {
                UniPoly::zero()
            } else {
                let (q2, r) = c.divrem(cont);
                debug_assert!(r.is_zero());
                q2
            }
        })
        .collect();
    BiPoly::from_y_coefficients(&coeffs)
}

/// Pseudo-remainder of a by b in y (lc(b)^(da-db+1) * a mod b).
fn pseudo_rem_y(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let db = b.terms.keys().map(|&(_, j)| j).max().unwrap();
    let lead_b = leading_coeff_y(b, db);
    let lead_b_bi = BiPoly::from_y_coefficients(&{
        let mut v = vec![UniPoly::zero(); 1];
        v[0] = lead_b;
        v
    });
    let mut r = a.clone();
    loop {
        let dr = match r.terms.keys().map(|&(_, j)| j).max() {
            None => return r,
            Some(d) => d,
        };
        if dr < db {
            return r;
        }
        let lead_r = leading_coeff_y(&r, dr);
        let lead_r_bi = BiPoly::from_y_coefficients(&{
            let mut v = vec![UniPoly::zero(); 1];
            v[0] = lead_r;
            v
        });
        // r := lc(b) * r - lc(r) * y^(dr-db) * b
        let shift = BiPoly::monomial(0, dr - db, Q::one());
        r = lead_b_bi.mul(&r).sub(&lead_r_bi.mul(&shift).mul(b));
    }
}

fn leading_coeff_y(p: &BiPoly, deg_y: u32) -> UniPoly {
    let mut coeffs: Vec<Q> = Vec::new();
    for ((i, j), c) in &p.terms {
        if *j == deg_y {
            if coeffs.len() <= *i as usize {
                coeffs.resize(*i as usize + 1, Q::zero());
            }
            coeffs[*i as usize] = c.clone();
        }
    }
    UniPoly::from_coeffs(coeffs)
}

fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return normalize_gcd(b.clone());
    }
    if b.is_zero() {
        return normalize_gcd(a.clone());
    }
    let da = a.terms.keys().map(|&(_, j)| j).max().unwrap();
    let db = b.terms.keys().map(|&(_, j)| j).max().unwrap();
    if da == 0 && db == 0 {
        // both live in Q[x]
        let g = a.restrict_y_free().gcd(&b.restrict_y_free());
        return normalize_gcd(BiPoly::from_y_coefficients(&[g]));
    }
    let (hi, lo) = if da >= db { (a, b) } else { (b, a) };
    let cont_hi = content_y(hi);
    let cont_lo = content_y(lo);
    let cont_gcd = cont_hi.gcd(&cont_lo);
    let mut p = divide_content_y(hi, &cont_hi);
    let mut q2 = divide_content_y(lo, &cont_lo);
    // primitive PRS
    loop {
        if q2.is_zero() {
            break;
        }
        let dq = q2.terms.keys().map(|&(_, j)| j).max().unwrap();
        if dq == 0 {
            // primitive parts coprime in y
            q2 = BiPoly::constant(Q::one());
            break;
        }
        let r = pseudo_rem_y(&p, &q2);
        p = q2;
        q2 = if r.is_zero() {
            BiPoly::zero()
        } else {
            let c = content_y(&r);
            divide_content_y(&r, &c)
        };
    }
    let prim_gcd = if q2.is_zero() { p } else { q2 };
    let cont_bi = BiPoly::from_y_coefficients(&[cont_gcd]);
    normalize_gcd(prim_gcd.mul(&cont_bi))
}

impl BiPoly {
    /// Interpret a y-free polynomial as an element of Q[x].
    fn restrict_y_free(&self) -> UniPoly {
        debug_assert!(self.terms.keys().all(|&(_, j)| j == 0));
        self.restrict_y0()
    }
}

/// Scale a gcd representative: primitive integer coefficients, positive
/// leading (lex-largest) coefficient.
fn normalize_gcd(p: BiPoly) -> BiPoly {
    if p.is_zero() {
        return p;
    }
    let mut lcm = Z::one();
    for c in p.terms.values() {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<Z> = p
        .terms
        .values()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let g = crate::rat::gcd_all(&ints);
    let mut scale = Q::new(lcm, g);
    if p.terms.iter().next_back().unwrap().1 * &scale < Q::zero() {
        scale = -scale;
    }
    p.scale(&scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn x() -> BiPoly {
        BiPoly::var_x()
    }
    fn y() -> BiPoly {
        BiPoly::var_y()
    }
    fn c(n: i64) -> BiPoly {
        BiPoly::constant(q(n))
    }

    #[test]
    fn arithmetic_compose() {
        // (x + y)^2 = x^2 + 2xy + y^2
        let f = x().add(&y()).pow(2);
        assert_eq!(f.terms.len(), 3);
        assert_eq!(f.eval(&q(2), &q(3)), q(25));
        // composing with (x, x*y) sends y -> xy
        let g = f.compose(&x(), &x().mul(&y()));
        // x^2 (1 + y)^2
        let expect = x().pow(2).mul(&c(1).add(&y()).pow(2));
        assert_eq!(g, expect);
    }

    #[test]
    fn division_and_orders() {
        let f = x().pow(2).mul(&y()).add(&x().pow(3));
        assert_eq!(f.x_order(), 2);
        let g = f.divide_x_power(2);
        assert_eq!(g, y().add(&x()));
        let product = x().add(&y()).mul(&x().sub(&y()));
        assert_eq!(product.div_exact(&x().add(&y())), Some(x().sub(&y())));
        assert_eq!(x().pow(2).add(&y().pow(2)).div_exact(&x().add(&y())), None);
    }

    #[test]
    fn gcd_bivariate() {
        let common = x().add(&y().pow(2)); // x + y^2
        let f = common.mul(&x().sub(&c(1)));
        let g = common.mul(&y().add(&c(2)));
        let d = f.gcd(&g);
        // gcd is x + y^2 up to sign/scale (normalized primitive)
        assert_eq!(d, common);
        let f2 = x().mul(&y()).add(&c(1));
        let g2 = x().sub(&y());
        assert!(f2.gcd(&g2).is_constant());
    }

    #[test]
    fn resultant_detects_common_roots() {
        // a = y - x^2, b = y - 2x: common zeros at x=0 and x=2
        let a = y().sub(&x().pow(2));
        let b = y().sub(&x().scale(&q(2)));
        let r = a.resultant_y(&b);
        // res = (2x - x^2) up to sign
        let roots: Vec<Q> = r.rational_roots().into_iter().map(|p| p.0).collect();
        assert_eq!(roots, vec![q(0), q(2)]);
    }

    #[test]
    fn resultant_matches_direct_elimination() {
        // a = x^2 - 2, b = y (no y in a): res_y(a, b) with deg_y b = 1 is a
        let a = x().pow(2).sub(&c(2));
        let b = y();
        let r = a.resultant_y(&b);
        assert_eq!(r.degree(), Some(2));
        assert!(r.rational_roots().is_empty());
    }

    #[test]
    fn translate_moves_origin() {
        let f = x().pow(2).add(&y());
        let g = f.translate(&q(1), &q(-1));
        assert_eq!(g.eval(&q(0), &q(0)), f.eval(&q(1), &q(-1)));
        assert_eq!(g.eval(&q(2), &q(5)), f.eval(&q(3), &q(4)));
    }
}
