//! Linear systems of plane curves with virtual multiplicities at the
//! infinitely-near points of a configuration.
//!
//! Sections of the pushed-forward sheaf of dL* - sum m_p E_p* are computed
//! as the kernel of a matrix of coefficient-extraction functionals: the
//! virtual multiplicity conditions at a point q are the vanishing of the
//! coefficients of s^(a+A) t^(b+B), a + b < m_q, of the pull-back of the
//! unknown curve through the blow-up substitutions, where (A, B) are the
//! accumulated exceptional exponents along the path to q. No division by
//! exceptional coordinates is performed, so every condition stays linear in
//! the unknown coefficients.

use crate::config::{Configuration, Position};
use crate::linalg::QMatrix;
use crate::poly::bi::BiPoly;
use crate::poly::homog::HPoly;
use crate::rat::Q;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinSysError {
    #[error("configuration point {0} carries no coordinates")]
    MissingCoordinates(usize),
    #[error("multiplicity vector length {0} does not match configuration size {1}")]
    WrongLength(usize, usize),
}

/// Degree-d curves with virtual multiplicities m_p at the points of `cfg`.
#[derive(Clone, Debug)]
pub struct VirtualConditions<'a> {
    pub cfg: &'a Configuration,
    pub degree: u32,
    pub mult: Vec<u32>,
}

/// Basis of a linear system, reduced echelon with respect to the canonical
/// monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystemBasis {
    pub degree: u32,
    pub basis: Vec<HPoly>,
}

/// Monomials of total degree d in descending canonical (lex) order.
pub fn monomials_of_degree(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push((i, j, d - i - j));
        }
    }
    out
}

fn truncated_mul(p: &BiPoly, q: &BiPoly, smax: u32, tmax: u32) -> BiPoly {
    let mut out = BiPoly::zero();
    for ((i1, j1), c1) in &p.terms {
        if *i1 > smax || *j1 > tmax {
            continue;
        }
        for ((i2, j2), c2) in &q.terms {
            let (i, j) = (i1 + i2, j1 + j2);
            if i > smax || j > tmax {
                continue;
            }
            out.add_term((i, j), &(c1 * c2));
        }
    }
    out
}

/// Substitution frame of a configuration point: polynomial map from its
/// local chart coordinates to the affine coordinates of the root chart.
struct Frame {
    sub_x: BiPoly,
    sub_y: BiPoly,
    root_chart: u8,
}

/// Reusable solver for a fixed configuration (the substitution frames do
/// not depend on degree or multiplicities).
pub struct LinearSystemSolver<'a> {
    cfg: &'a Configuration,
    frames: Vec<Frame>,
}

impl<'a> LinearSystemSolver<'a> {
    pub fn new(cfg: &'a Configuration) -> Result<Self, LinSysError> {
        let mut frames: Vec<Frame> = Vec::with_capacity(cfg.len());
        for (i, p) in cfg.points.iter().enumerate() {
            let pos = p
                .position
                .as_ref()
                .ok_or(LinSysError::MissingCoordinates(i))?;
            let frame = match pos {
                Position::Root { chart, x, y } => Frame {
                    sub_x: BiPoly::var_x().add(&BiPoly::constant(x.clone())),
                    sub_y: BiPoly::var_y().add(&BiPoly::constant(y.clone())),
                    root_chart: *chart,
                },
                Position::First { slope } => {
                    let parent = p.parent.expect("near point has a parent");
                    let pf = &frames[parent];
                    // (s, t) -> (s, s (t + slope)) into the parent frame
                    let s = BiPoly::var_x();
                    let t_shift = BiPoly::var_y().add(&BiPoly::constant(slope.clone()));
                    let new_v = s.mul(&t_shift);
                    Frame {
                        sub_x: pf.sub_x.compose(&s, &new_v),
                        sub_y: pf.sub_y.compose(&s, &new_v),
                        root_chart: pf.root_chart,
                    }
                }
                Position::Second => {
                    let parent = p.parent.expect("near point has a parent");
                    let pf = &frames[parent];
                    // (s, t) -> (s t, t)
                    let st = BiPoly::var_x().mul(&BiPoly::var_y());
                    let t = BiPoly::var_y();
                    Frame {
                        sub_x: pf.sub_x.compose(&st, &t),
                        sub_y: pf.sub_y.compose(&st, &t),
                        root_chart: pf.root_chart,
                    }
                }
            };
            frames.push(frame);
        }
        Ok(LinearSystemSolver { cfg, frames })
    }

    /// Accumulated exceptional exponents (A_q, B_q) for every point, given
    /// the virtual multiplicities.
    fn exponents(&self, mult: &[u32]) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(self.cfg.len());
        for (i, p) in self.cfg.points.iter().enumerate() {
            let e = match p.position.as_ref().unwrap() {
                Position::Root { .. } => (0, 0),
                Position::First { slope } => {
                    let parent = p.parent.unwrap();
                    let (ap, bp) = out[parent];
                    let a = ap + bp + mult[parent];
                    let b = if slope.is_zero() { bp } else { 0 };
                    (a, b)
                }
                Position::Second => {
                    let parent = p.parent.unwrap();
                    let (ap, bp) = out[parent];
                    (ap, ap + bp + mult[parent])
                }
            };
            out.push(e);
            let _ = i;
        }
        out
    }

    /// Matrix of the virtual multiplicity conditions on the coefficient
    /// space of degree-d forms (columns in descending canonical order).
    pub fn condition_matrix(&self, degree: u32, mult: &[u32]) -> Result<QMatrix, LinSysError> {
        if mult.len() != self.cfg.len() {
            return Err(LinSysError::WrongLength(mult.len(), self.cfg.len()));
        }
        let mons = monomials_of_degree(degree);
        let exps = self.exponents(mult);
        let n_rows: usize = mult.iter().map(|&m| (m as usize * (m as usize + 1)) / 2).sum();
        let mut mat = QMatrix::zero(n_rows, mons.len());
        let mut row = 0;
        for (pt, &m) in mult.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let frame = &self.frames[pt];
            let (ea, eb) = exps[pt];
            let smax = ea + m - 1;
            let tmax = eb + m - 1;
            // truncated powers of the substitution components
            let one = BiPoly::constant(Q::one());
            let mut xs: Vec<BiPoly> = vec![one.clone()];
            let mut ys: Vec<BiPoly> = vec![one];
            for i in 1..=degree as usize {
                let nx = truncated_mul(&xs[i - 1], &frame.sub_x, smax, tmax);
                let ny = truncated_mul(&ys[i - 1], &frame.sub_y, smax, tmax);
                xs.push(nx);
                ys.push(ny);
            }
            for (col, &(i, j, k)) in mons.iter().enumerate() {
                let (dx, dy) = match frame.root_chart {
                    0 => (j, k),
                    1 => (i, k),
                    2 => (i, j),
                    _ => unreachable!(),
                };
                let composed = truncated_mul(&xs[dx as usize], &ys[dy as usize], smax, tmax);
                for a in 0..m {
                    for b in 0..m - a {
                        let r = row + condition_offset(m, a, b);
                        let key = (ea + a, eb + b);
                        if let Some(c) = composed.terms.get(&key) {
                            mat.set(r, col, c.clone());
                        }
                    }
                }
            }
            row += (m as usize * (m as usize + 1)) / 2;
        }
        Ok(mat)
    }

    /// Reduced echelon basis of the space of sections.
    pub fn global_sections(&self, degree: u32, mult: &[u32]) -> Result<LinearSystemBasis, LinSysError> {
        let mat = self.condition_matrix(degree, mult)?;
        let kernel = mat.kernel_basis();
        let basis = if kernel.is_empty() {
            Vec::new()
        } else {
            let mut km = QMatrix::from_rows(kernel);
            km.rref();
            let mons = monomials_of_degree(degree);
            (0..km.rows)
                .map(|r| {
                    HPoly::from_terms(
                        mons.iter()
                            .enumerate()
                            .map(|(c, &(i, j, k))| (i, j, k, km.at(r, c).clone())),
                    )
                    .expect("homogeneous by construction")
                })
                .filter(|p| !p.is_zero())
                .collect()
        };
        Ok(LinearSystemBasis { degree, basis })
    }

    /// Projective dimension of the system: h^0 - 1 (so -1 for empty).
    pub fn projective_dimension(&self, degree: u32, mult: &[u32]) -> Result<i64, LinSysError> {
        let mat = self.condition_matrix(degree, mult)?;
        let n_cols = mat.cols as i64;
        let rank = mat.rank() as i64;
        Ok(n_cols - rank - 1)
    }
}

/// Row offset of condition (a, b) within a point's block, rows ordered by
/// a then b.
fn condition_offset(m: u32, a: u32, b: u32) -> usize {
    let mut off = 0usize;
    for aa in 0..a {
        off += (m - aa) as usize;
    }
    off + b as usize
}

/// One-shot wrappers matching the specification operations.
pub fn condition_matrix(vc: &VirtualConditions) -> Result<QMatrix, LinSysError> {
    LinearSystemSolver::new(vc.cfg)?.condition_matrix(vc.degree, &vc.mult)
}

pub fn global_sections(vc: &VirtualConditions) -> Result<LinearSystemBasis, LinSysError> {
    LinearSystemSolver::new(vc.cfg)?.global_sections(vc.degree, &vc.mult)
}

pub fn projective_dimension(vc: &VirtualConditions) -> Result<i64, LinSysError> {
    LinearSystemSolver::new(vc.cfg)?.projective_dimension(vc.degree, &vc.mult)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ConfigPoint, Configuration};
    use crate::rat::q;
    use std::collections::BTreeSet;

    fn root_point(chart: u8, x: i64, y: i64) -> ConfigPoint {
        ConfigPoint {
            parent: None,
            proximate_to: BTreeSet::new(),
            position: Some(Position::Root {
                chart,
                x: q(x),
                y: q(y),
            }),
            nu: 1,
            eps: 1,
            dicritical: true,
        }
    }

    fn config_of_roots(pts: &[(i64, i64)]) -> Configuration {
        Configuration {
            points: pts.iter().map(|&(x, y)| root_point(2, x, y)).collect(),
        }
    }

    #[test]
    fn lines_through_one_point() {
        let cfg = config_of_roots(&[(1, 2)]);
        let vc = VirtualConditions {
            cfg: &cfg,
            degree: 1,
            mult: vec![1],
        };
        let m = condition_matrix(&vc).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(projective_dimension(&vc).unwrap(), 1);
        let basis = global_sections(&vc).unwrap();
        assert_eq!(basis.basis.len(), 2);
        for f in &basis.basis {
            assert_eq!(f.eval(&q(1), &q(2), &q(1)), q(0));
        }
    }

    #[test]
    fn no_conditions_full_space() {
        let cfg = Configuration::default();
        let vc = VirtualConditions {
            cfg: &cfg,
            degree: 1,
            mult: vec![],
        };
        let basis = global_sections(&vc).unwrap();
        assert_eq!(basis.basis.len(), 3);
        // canonical echelon: X0, X1, X2
        assert_eq!(basis.basis[0], HPoly::variable(0));
        assert_eq!(basis.basis[1], HPoly::variable(1));
        assert_eq!(basis.basis[2], HPoly::variable(2));
    }

    #[test]
    fn five_general_points_unique_conic() {
        let cfg = config_of_roots(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 3)]);
        let vc = VirtualConditions {
            cfg: &cfg,
            degree: 2,
            mult: vec![1; 5],
        };
        let m = condition_matrix(&vc).unwrap();
        assert_eq!(m.rank(), 5);
        assert_eq!(projective_dimension(&vc).unwrap(), 0);
        let basis = global_sections(&vc).unwrap();
        assert_eq!(basis.basis.len(), 1);
        let conic = &basis.basis[0];
        for (x, y) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 3)] {
            assert_eq!(conic.eval(&q(x), &q(y), &q(1)), q(0));
        }
    }

    #[test]
    fn no_singular_line() {
        let cfg = config_of_roots(&[(0, 0)]);
        let vc = VirtualConditions {
            cfg: &cfg,
            degree: 1,
            mult: vec![2],
        };
        let m = condition_matrix(&vc).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(projective_dimension(&vc).unwrap(), -1);
        assert!(global_sections(&vc).unwrap().basis.is_empty());
    }

    #[test]
    fn two_points_unique_line() {
        let cfg = config_of_roots(&[(0, 0), (2, 1)]);
        let vc = VirtualConditions {
            cfg: &cfg,
            degree: 1,
            mult: vec![1, 1],
        };
        assert_eq!(projective_dimension(&vc).unwrap(), 0);
    }

    #[test]
    fn infinitely_near_point_tangency_condition() {
        // root at origin of chart 2 plus the slope-0 point of its blow-up:
        // conics through the origin tangent to the x-axis
        let mut cfg = config_of_roots(&[(0, 0)]);
        cfg.points.push(ConfigPoint {
            parent: Some(0),
            proximate_to: [0].into_iter().collect(),
            position: Some(Position::First { slope: q(0) }),
            nu: 1,
            eps: 0,
            dicritical: false,
        });
        cfg.points[0].eps = 0;
        cfg.points[0].dicritical = false;
        cfg.points[1].eps = 1;
        cfg.points[1].dicritical = true;
        let vc = VirtualConditions {
            cfg: &cfg,
            degree: 2,
            mult: vec![1, 1],
        };
        let basis = global_sections(&vc).unwrap();
        // chart-2 coordinates are (X0, X1); the slope-0 direction is the
        // line X1 = 0, so the X0*X2 coefficient must vanish: dimension 4
        assert_eq!(basis.basis.len(), 4);
        for f in &basis.basis {
            // passes through origin
            assert_eq!(f.eval(&q(0), &q(0), &q(1)), q(0));
            // tangent to X1 = 0 at the origin
            assert_eq!(f.coefficient((1, 0, 1)), q(0));
        }
        // with multiplicity 2 at the near point, the conic must contain the
        // x-axis direction doubly: y^2, xy, x^2 survive? compute dimension
        let vc2 = VirtualConditions {
            cfg: &cfg,
            degree: 2,
            mult: vec![2, 1],
        };
        let dim2 = projective_dimension(&vc2).unwrap();
        assert!(dim2 < 4);
    }

    #[test]
    fn missing_coordinates_reported() {
        let mut cfg = config_of_roots(&[(0, 0)]);
        cfg.points[0].position = None;
        let vc = VirtualConditions {
            cfg: &cfg,
            degree: 2,
            mult: vec![1],
        };
        assert_eq!(
            projective_dimension(&vc).unwrap_err(),
            LinSysError::MissingCoordinates(0)
        );
    }
}
