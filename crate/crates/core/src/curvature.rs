//! Levi-Civita connection and curvature of a left-invariant metric given by
//! constant structure constants on an orthonormal frame.
//!
//! Sign convention: `R(X,Y) = nabla_[X,Y] - [nabla_X, nabla_Y]`, and
//! `rho(X,Y) = sum_i g(R(X,E_i)Y, E_i)`.

use nalgebra::Matrix6;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::frame::{Bivector, Endo4, Vec4, PAIRS};
use crate::tolerance::Tolerance;

/// `c[i][j][k] = c^k_{ij}` with `[E_i, E_j] = sum_k c^k_{ij} E_k`.
pub type StructureConstants = [[[f64; 4]; 4]; 4];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameManifold {
    pub name: String,
    c: StructureConstants,
}

impl FrameManifold {
    pub fn new(name: impl Into<String>, c: StructureConstants, tol: &Tolerance) -> Result<Self> {
        let m = Self {
            name: name.into(),
            c,
        };
        let scale = m.scale();
        for i in 0..4 {
            for j in 0..4 {
                let defect = (0..4).map(|k| (c[i][j][k] + c[j][i][k]).abs()).fold(0.0, f64::max);
                if defect > tol.threshold(scale) {
                    return Err(GeometryError::NotAntisymmetric { i: i + 1, j: j + 1, defect });
                }
            }
        }
        let defect = m.jacobi_defect();
        if defect > tol.jacobi * (1.0 + scale * scale) {
            return Err(GeometryError::NotALieAlgebra { defect });
        }
        Ok(m)
    }

    /// Builds the constants from brackets `[E_i, E_j] = v` (zero-based), filling
    /// the antisymmetric partner. Later entries overwrite earlier ones.
    pub fn from_brackets(
        name: impl Into<String>,
        brackets: &[(usize, usize, [f64; 4])],
        tol: &Tolerance,
    ) -> Result<Self> {
        let mut c = [[[0.0; 4]; 4]; 4];
        for &(i, j, v) in brackets {
            for k in 0..4 {
                c[i][j][k] = v[k];
                c[j][i][k] = -v[k];
            }
        }
        Self::new(name, c, tol)
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.c
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[i][j][k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec4 {
        Vec4::from(self.c[i][j])
    }

    /// Bracket of two left-invariant fields with constant frame components.
    pub fn bracket(&self, x: &Vec4, y: &Vec4) -> Vec4 {
        let mut out = Vec4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let w = x[i] * y[j];
                if w != 0.0 {
                    out += self.bracket_basis(i, j) * w;
                }
            }
        }
        out
    }

    /// Largest `|c^k_{ij}|`; the scale used by the zero predicates.
    pub fn scale(&self) -> f64 {
        self.c.iter().flatten().flatten().fold(0.0, |m: f64, x| m.max(x.abs()))
    }

    /// Max component of `[[E_i,E_j],E_l] + cyclic` over all triples.
    pub fn jacobi_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                for l in 0..4 {
                    let e = |n: usize| crate::frame::basis_vector(n);
                    let v = self.bracket(&self.bracket_basis(i, j), &e(l))
                        + self.bracket(&self.bracket_basis(j, l), &e(i))
                        + self.bracket(&self.bracket_basis(l, i), &e(j));
                    worst = worst.max(v.amax());
                }
            }
        }
        worst
    }

    /// The same Lie algebra written in the orthonormal frame `F_a = sum_i q[(i,a)] E_i`.
    ///
    /// `q` must be orthogonal; the result is validated again.
    pub fn in_frame(&self, q: &Endo4, tol: &Tolerance) -> Result<Self> {
        let mut c = [[[0.0; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let br = self.bracket(&q.column(a).into(), &q.column(b).into());
                let coords = q.transpose() * br;
                c[a][b] = [coords[0], coords[1], coords[2], coords[3]];
            }
        }
        Self::new(self.name.clone(), c, tol)
    }
}

/// `gamma[i][j][k] = Gamma^k_{ij}` with `nabla_{E_i} E_j = sum_k Gamma^k_{ij} E_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Connection {
    gamma: [[[f64; 4]; 4]; 4],
}

/// Koszul formula on an orthonormal frame with constant structure constants:
/// `2 Gamma^k_{ij} = c^k_{ij} - c^i_{jk} + c^j_{ki}`.
pub fn levi_civita(m: &FrameManifold) -> Connection {
    let c = m.constants();
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                gamma[i][j][k] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
            }
        }
    }
    Connection { gamma }
}

impl Connection {
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[i][j][k]
    }

    /// `nabla_{E_i}` acting on fields with constant frame components:
    /// column `j` holds the components of `nabla_{E_i} E_j`.
    pub fn matrix(&self, i: usize) -> Endo4 {
        Endo4::from_fn(|k, j| self.gamma[i][j][k])
    }

    pub fn along(&self, x: &Vec4) -> Endo4 {
        (0..4).map(|i| self.matrix(i) * x[i]).sum()
    }

    pub fn nabla(&self, x: &Vec4, y: &Vec4) -> Vec4 {
        self.along(x) * y
    }

    /// Max of `|Gamma^k_{ij} + Gamma^j_{ik}|`.
    pub fn metric_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    worst = worst.max((self.gamma[i][j][k] + self.gamma[i][k][j]).abs());
                }
            }
        }
        worst
    }

    /// Max of `|Gamma^k_{ij} - Gamma^k_{ji} - c^k_{ij}|`.
    pub fn torsion_defect(&self, m: &FrameManifold) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let t = self.gamma[i][j][k] - self.gamma[j][i][k] - m.c(i, j, k);
                    worst = worst.max(t.abs());
                }
            }
        }
        worst
    }
}

/// `r[i][j][k][l]`: coefficient of `E_l` in `R(E_i, E_j) E_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curvature {
    r: [[[[f64; 4]; 4]; 4]; 4],
}

pub fn curvature(m: &FrameManifold, conn: &Connection) -> Curvature {
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            // nabla_[Ei,Ej] - nabla_Ei nabla_Ej + nabla_Ej nabla_Ei on constant fields
            let bracket = conn.along(&m.bracket_basis(i, j));
            let ni = conn.matrix(i);
            let nj = conn.matrix(j);
            let q = bracket - ni * nj + nj * ni;
            for k in 0..4 {
                for l in 0..4 {
                    r[i][j][k][l] = q[(l, k)];
                }
            }
        }
    }
    Curvature { r }
}

impl Curvature {
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.r[i][j][k][l]
    }

    /// `R(E_i, E_j)` as a matrix acting on frame components.
    pub fn endo(&self, i: usize, j: usize) -> Endo4 {
        Endo4::from_fn(|l, k| self.r[i][j][k][l])
    }

    pub fn apply(&self, x: &Vec4, y: &Vec4, z: &Vec4) -> Vec4 {
        let mut q = Endo4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let w = x[i] * y[j];
                if w != 0.0 {
                    q += self.endo(i, j) * w;
                }
            }
        }
        q * z
    }

    /// `R(a) = sum_{i<j} a^{ij} R(E_i, E_j)` as an endomorphism of the tangent space.
    pub fn endo_of(&self, a: &Bivector) -> Endo4 {
        PAIRS
            .iter()
            .zip(a.0)
            .map(|(&(i, j), w)| self.endo(i, j) * w)
            .sum()
    }

    /// Curvature operator on bivector components, `g(R(X^Y), Z^T) = g(R(X,Y)Z, T)`.
    ///
    /// Entry `((k,l),(i,j))` is `2 R_{ijkl}`; the factor 2 undoes the 1/2 in the
    /// bivector metric, so self-adjointness is plain matrix symmetry.
    pub fn operator(&self) -> Matrix6<f64> {
        Matrix6::from_fn(|row, col| {
            let (k, l) = PAIRS[row];
            let (i, j) = PAIRS[col];
            2.0 * self.r[i][j][k][l]
        })
    }

    pub fn apply_operator(&self, a: &Bivector) -> Bivector {
        let v = self.operator() * nalgebra::Vector6::from(a.0);
        Bivector([v[0], v[1], v[2], v[3], v[4], v[5]])
    }

    /// `rho(E_x, E_y) = sum_i g(R(E_x, E_i) E_y, E_i)`.
    pub fn ricci(&self) -> Endo4 {
        Endo4::from_fn(|x, y| (0..4).map(|i| self.r[x][i][y][i]).sum())
    }

    /// `rho*(X, Y) = trace{Z -> R(JZ, X) JY}`; `j` is the operator matrix of J.
    pub fn star_ricci(&self, j: &Endo4) -> Endo4 {
        Endo4::from_fn(|x, y| {
            let jy: Vec4 = j.column(y).into();
            (0..4)
                .map(|i| {
                    let jei: Vec4 = j.column(i).into();
                    self.apply(&jei, &crate::frame::basis_vector(x), &jy)[i]
                })
                .sum()
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.r.iter().flatten().flatten().flatten().fold(0.0, |m: f64, x| m.max(x.abs()))
    }

    /// Largest violations of antisymmetry in `(i,j)`, pair symmetry and the
    /// first Bianchi identity, in that order.
    pub fn symmetry_defects(&self) -> [f64; 3] {
        let r = &self.r;
        let mut d = [0.0_f64; 3];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        d[0] = d[0].max((r[i][j][k][l] + r[j][i][k][l]).abs());
                        d[1] = d[1].max((r[i][j][k][l] - r[k][l][i][j]).abs());
                        d[2] = d[2].max((r[i][j][k][l] + r[j][k][i][l] + r[k][i][j][l]).abs());
                    }
                }
            }
        }
        d
    }
}

pub fn ricci(r: &Curvature) -> Endo4 {
    r.ricci()
}

pub fn star_ricci(r: &Curvature, j: &Endo4) -> Endo4 {
    r.star_ricci(j)
}

pub fn curvature_endo(r: &Curvature, a: &Bivector) -> Endo4 {
    r.endo_of(a)
}

pub fn curvature_operator(r: &Curvature) -> Matrix6<f64> {
    r.operator()
}

/// Curvature together with its Ricci-type contractions for a given J.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureData {
    pub curvature: Curvature,
    pub ricci: Endo4,
    pub star_ricci: Endo4,
    pub scalar: f64,
    pub star_scalar: f64,
}

impl CurvatureData {
    pub fn new(curvature: Curvature, j: &Endo4) -> Self {
        let ricci = curvature.ricci();
        let star_ricci = curvature.star_ricci(j);
        Self {
            scalar: ricci.trace(),
            star_scalar: star_ricci.trace(),
            curvature,
            ricci,
            star_ricci,
        }
    }
}
