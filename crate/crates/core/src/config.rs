//! Configurations of infinitely-near points and the Picard lattice of the
//! blown-up surface.
//!
//! Classes are written in the basis B = ([L*], [E_1*], ..., [E_n*]) where L
//! is a general line and E_i* the total transforms of the exceptional
//! divisors. The intersection form is hyperbolic: (L*)^2 = 1,
//! (E_i*)^2 = -1, mixed products 0.

use crate::rat::{Q, Z};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

pub type PointId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("divisor class lengths differ")]
    LengthMismatch,
    #[error("no primitive representative with positive first coordinate exists")]
    ZeroLeadingCoefficient,
}

/// Where a configuration point lives.
///
/// Roots are points of the projective plane located in one of the three
/// standard affine charts. An infinitely-near point sits on the exceptional
/// divisor of its parent's blow-up: `First { slope }` is the point of the
/// chart (x, y) -> (x, x(y + slope)) at the origin, `Second` is the origin
/// of the complementary chart (x, y) -> (xy, y), i.e. the slope-infinity
/// point of the exceptional line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Position {
    Root { chart: u8, x: Q, y: Q },
    First { slope: Q },
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigPoint {
    pub parent: Option<PointId>,
    pub proximate_to: BTreeSet<PointId>,
    /// Chart data; None for file-supplied configurations without coordinates.
    pub position: Option<Position>,
    pub nu: u32,
    pub eps: u8,
    pub dicritical: bool,
}

/// Ordered configuration of infinitely-near points (parents precede
/// children).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Configuration {
    pub points: Vec<ConfigPoint>,
}

impl Configuration {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of dicritical exceptional divisors.
    pub fn dic_count(&self) -> usize {
        self.points.iter().filter(|p| p.dicritical).count()
    }

    pub fn dicritical_points(&self) -> Vec<PointId> {
        (0..self.len()).filter(|&i| self.points[i].dicritical).collect()
    }

    /// Checks every structural invariant; empty list means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n = self.len();
        for (i, p) in self.points.iter().enumerate() {
            match p.parent {
                None => {
                    if !p.proximate_to.is_empty() {
                        bad.push(format!("point {}: root with nonempty proximity set", i));
                    }
                    if let Some(Position::First { .. }) | Some(Position::Second) = p.position {
                        bad.push(format!("point {}: root carries a blow-up position", i));
                    }
                }
                Some(par) => {
                    if par >= i {
                        bad.push(format!("point {}: parent {} does not precede it", i, par));
                    }
                    if !p.proximate_to.contains(&par) {
                        bad.push(format!("point {}: not proximate to its parent", i));
                    }
                    if p.proximate_to.is_empty() || p.proximate_to.len() > 2 {
                        bad.push(format!(
                            "point {}: proximate to {} points (must be 1 or 2)",
                            i,
                            p.proximate_to.len()
                        ));
                    }
                    if let Some(Position::Root { .. }) = p.position {
                        bad.push(format!("point {}: near point carries a root position", i));
                    }
                    for &t in &p.proximate_to {
                        if t >= i {
                            bad.push(format!("point {}: proximate to later point {}", i, t));
                        } else if t != par && !self.is_ancestor(t, i) {
                            bad.push(format!("point {}: proximate to non-ancestor {}", i, t));
                        }
                    }
                    // satellite coherence: the second target must also see the
                    // parent as proximate
                    for &t in &p.proximate_to {
                        if t != par && !self.points[par].proximate_to.contains(&t) {
                            bad.push(format!(
                                "point {}: satellite target {} is not proximate to parent {}",
                                i, t, par
                            ));
                        }
                    }
                }
            }
            if (p.eps == 1) != p.dicritical {
                bad.push(format!("point {}: eps and dicritical flag disagree", i));
            }
            if p.eps > 1 {
                bad.push(format!("point {}: eps must be 0 or 1", i));
            }
            if !p.dicritical && !self.subtree_has_dicritical(i) {
                bad.push(format!(
                    "point {}: no dicritical divisor at or above it",
                    i
                ));
            }
        }
        let _ = n;
        bad
    }

    fn is_ancestor(&self, anc: PointId, mut p: PointId) -> bool {
        while let Some(par) = self.points[p].parent {
            if par == anc {
                return true;
            }
            p = par;
        }
        false
    }

    fn subtree_has_dicritical(&self, root: PointId) -> bool {
        if self.points[root].dicritical {
            return true;
        }
        (root + 1..self.len())
            .any(|i| self.points[i].dicritical && self.is_ancestor(root, i))
    }

    pub fn children(&self, p: PointId) -> Vec<PointId> {
        (p + 1..self.len())
            .filter(|&i| self.points[i].parent == Some(p))
            .collect()
    }

    /// Points proximate to p (the reverse of `proximate_to`).
    pub fn proximate_of(&self, p: PointId) -> Vec<PointId> {
        (p + 1..self.len())
            .filter(|&i| self.points[i].proximate_to.contains(&p))
            .collect()
    }
}

/// Divisor class in the basis B; entry 0 is the L* coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass(pub Vec<Q>);

impl DivisorClass {
    pub fn from_integers(v: &[i64]) -> Self {
        DivisorClass(v.iter().map(|&x| Q::from_integer(Z::from(x))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Hyperbolic intersection product a0*b0 - sum_i ai*bi.
    pub fn intersect(&self, other: &Self) -> Result<Q, LatticeError> {
        if self.len() != other.len() {
            return Err(LatticeError::LengthMismatch);
        }
        let mut acc = &self.0[0] * &other.0[0];
        for i in 1..self.len() {
            acc -= &self.0[i] * &other.0[i];
        }
        Ok(acc)
    }

    pub fn self_intersection(&self) -> Q {
        self.intersect(self).expect("same length")
    }

    /// Primitive lattice representative: integer entries, gcd 1, positive
    /// first coordinate.
    pub fn primitive_representative(&self) -> Result<DivisorClass, LatticeError> {
        assert!(!self.is_zero(), "zero class has no representative");
        if self.0[0].is_zero() {
            return Err(LatticeError::ZeroLeadingCoefficient);
        }
        let mut lcm = Z::one();
        for c in &self.0 {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<Z> = self.0.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut g = Z::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        let sign = if ints[0].is_negative() { -Z::one() } else { Z::one() };
        let g = g * sign;
        Ok(DivisorClass(
            ints.into_iter()
                .map(|v| Q::from_integer(v / &g))
                .collect(),
        ))
    }
}

/// Class of the strict transform of E_p: [E_p*] minus the total transforms
/// of the points proximate to p.
pub fn exceptional_strict_class(cfg: &Configuration, p: PointId) -> DivisorClass {
    let n = cfg.len();
    let mut v = vec![Q::zero(); n + 1];
    v[p + 1] = Q::one();
    for q in cfg.proximate_of(p) {
        v[q + 1] = -Q::one();
    }
    DivisorClass(v)
}

/// Canonical class of the blown-up surface: -3 L* + sum_p E_p*.
pub fn canonical_class(cfg: &Configuration) -> DivisorClass {
    let n = cfg.len();
    let mut v = vec![Q::one(); n + 1];
    v[0] = -Q::from_integer(Z::from(3));
    DivisorClass(v)
}

/// The class K_tilde - K_Z of the foliation relative to the surface:
/// (r+2) L* - sum_p (nu_p + eps_p) E_p*.
pub fn delta_class(cfg: &Configuration, r: u32) -> DivisorClass {
    let mut v = Vec::with_capacity(cfg.len() + 1);
    v.push(Q::from_integer(Z::from(r + 2)));
    for p in &cfg.points {
        v.push(-Q::from_integer(Z::from(p.nu + p.eps as u32)));
    }
    DivisorClass(v)
}
