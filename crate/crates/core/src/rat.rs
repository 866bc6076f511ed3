//! Exact rational scalar helpers shared across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

/// Shorthand for a rational from an integer literal.
pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// Shorthand for a rational n/d.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

/// Exact square root of an integer if it is a perfect square.
pub fn integer_sqrt_exact(n: &Z) -> Option<Z> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a non-negative rational if it is a square in Q.
pub fn rational_sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let num = integer_sqrt_exact(x.numer())?;
    let den = integer_sqrt_exact(x.denom())?;
    Some(Q::new(num, den))
}

/// The unique rational of smallest denominator (then smallest numerator
/// magnitude) in the closed interval [lo, hi].
///
/// Classical continued-fraction walk; used to recognize rational roots
/// inside isolating intervals without factoring any integers.
pub fn simplest_in_interval(lo: &Q, hi: &Q) -> Q {
    assert!(lo <= hi, "empty interval");
    if lo.is_negative() && !hi.is_negative() {
        return Q::zero();
    }
    if hi.is_negative() {
        return -simplest_in_interval(&-hi.clone(), &-lo.clone());
    }
    // now 0 < lo ≤ hi
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Q, hi: &Q) -> Q {
    let fl = lo.ceil();
    if &fl <= hi {
        return fl;
    }
    let n = lo.floor();
    // lo, hi in (n, n+1); recurse on reciprocals of the fractional parts
    let inv_hi = (lo - &n).recip();
    let inv_lo = (hi - &n).recip();
    n + simplest_positive(&inv_lo, &inv_hi).recip()
}

/// Rational roots of a*x^2 + b*x + c with rational coefficients, a != 0.
/// Returns 0, 1 or 2 distinct roots. Exact: the discriminant must be a
/// rational square for roots to be reported.
pub fn quadratic_rational_roots(a: &Q, b: &Q, c: &Q) -> Vec<Q> {
    assert!(!a.is_zero());
    let disc = b * b - Q::from_integer(Z::from(4)) * a * c;
    match rational_sqrt_exact(&disc) {
        None => vec![],
        Some(s) => {
            let two_a = Q::from_integer(Z::from(2)) * a;
            if s.is_zero() {
                vec![-b / &two_a]
            } else {
                vec![(-b + &s) / &two_a, (-b - &s) / &two_a]
            }
        }
    }
}

/// gcd of a slice of integers (non-negative result; 0 for empty/all-zero).
pub fn gcd_all(values: &[Z]) -> Z {
    let mut g = Z::zero();
    for v in values {
        g = num_integer::gcd(g, v.abs());
        if g.is_one() {
            break;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_rational_finds_unique_bounded_denominator() {
        // 1/3 is the simplest rational in [0.32, 0.34]
        let lo = qr(32, 100);
        let hi = qr(34, 100);
        assert_eq!(simplest_in_interval(&lo, &hi), qr(1, 3));
        // negative interval
        assert_eq!(simplest_in_interval(&qr(-34, 100), &qr(-32, 100)), qr(-1, 3));
        // interval containing zero
        assert_eq!(simplest_in_interval(&qr(-1, 10), &qr(1, 10)), Q::zero());
        // integer inside
        assert_eq!(simplest_in_interval(&qr(19, 10), &qr(21, 10)), q(2));
    }

    #[test]
    fn quadratic_roots_exact() {
        // x^2 - 5x + 6 = (x-2)(x-3)
        let r = quadratic_rational_roots(&q(1), &q(-5), &q(6));
        assert_eq!(r.len(), 2);
        assert!(r.contains(&q(2)) && r.contains(&q(3)));
        // x^2 - 2: irrational
        assert!(quadratic_rational_roots(&q(1), &q(0), &q(-2)).is_empty());
        // x^2 + 1: complex
        assert!(quadratic_rational_roots(&q(1), &q(0), &q(1)).is_empty());
        // 4x^2 - 4x + 1 = (2x-1)^2
        assert_eq!(quadratic_rational_roots(&q(4), &q(-4), &q(1)), vec![qr(1, 2)]);
    }

    #[test]
    fn sqrt_tests() {
        assert_eq!(integer_sqrt_exact(&Z::from(144)), Some(Z::from(12)));
        assert_eq!(integer_sqrt_exact(&Z::from(145)), None);
        assert_eq!(rational_sqrt_exact(&qr(9, 4)), Some(qr(3, 2)));
        assert_eq!(rational_sqrt_exact(&qr(2, 1)), None);
    }
}
