//! Almost complex structures compatible with the frame metric and the tensors
//! derived from them.
//!
//! A structure is entered as the table `a[i][j] = g(J E_i, E_j)`, i.e. row `i`
//! lists the frame components of `J E_i`. The operator matrix (columns are the
//! images `J E_i`) is the transpose of that table.

use serde::{Deserialize, Serialize};

use crate::curvature::{Connection, CurvatureData, FrameManifold};
use crate::error::{GeometryError, Result};
use crate::frame::{basis_vector, Bivector, Endo4, Vec4, PAIRS};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexStructure {
    table: Endo4,
    op: Endo4,
    frak_j: Bivector,
}

impl ComplexStructure {
    /// Validates `J^2 = -Id`, orthogonality and orientation, in that order.
    pub fn new(table: Endo4, tol: f64) -> Result<Self> {
        let op = table.transpose();
        let defect = (op * op + Endo4::identity()).amax();
        if defect > tol {
            return Err(GeometryError::NotAComplexStructure { defect });
        }
        let defect = (op.transpose() * op - Endo4::identity()).amax();
        if defect > tol {
            return Err(GeometryError::NotOrthogonal { defect });
        }
        let frak_j = Bivector::from_matrix(&table);
        let defect = frak_j.self_duality_defect();
        if defect > tol {
            return Err(GeometryError::WrongOrientation { defect });
        }
        Ok(Self { table, op, frak_j })
    }

    /// `J E1 = E2`, `J E3 = E4`.
    pub fn standard() -> Self {
        let mut table = Endo4::zeros();
        table[(0, 1)] = 1.0;
        table[(1, 0)] = -1.0;
        table[(2, 3)] = 1.0;
        table[(3, 2)] = -1.0;
        Self::new(table, 1e-12).expect("standard structure is valid")
    }

    pub fn table(&self) -> &Endo4 {
        &self.table
    }

    pub fn op(&self) -> &Endo4 {
        &self.op
    }

    pub fn apply(&self, x: &Vec4) -> Vec4 {
        self.op * x
    }

    /// `Omega(X, Y) = g(JX, Y)`.
    pub fn omega(&self) -> Endo4 {
        self.table
    }

    /// The unit self-dual bivector with `g(frakJ, X^Y) = 1/2 g(JX, Y)`.
    pub fn frak_j(&self) -> Bivector {
        self.frak_j
    }

    /// The same structure written in the orthonormal frame `F_a = sum_i q[(i,a)] E_i`.
    pub fn in_frame(&self, q: &Endo4, tol: f64) -> Result<Self> {
        Self::new(q.transpose() * self.table * q, tol)
    }
}

pub fn validate_j(table: &Endo4, tol: &Tolerance) -> Result<ComplexStructure> {
    ComplexStructure::new(*table, tol.numeric * 10.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureClass {
    Kahler,
    Hermitian,
    AlmostKahler,
    Generic,
}

impl StructureClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Kahler => "Kahler",
            Self::Hermitian => "Hermitian",
            Self::AlmostKahler => "AlmostKahler",
            Self::Generic => "Generic",
        }
    }

    pub fn is_integrable(&self) -> bool {
        matches!(self, Self::Kahler | Self::Hermitian)
    }
}

/// `(nabla_{E_i} J)` as operator matrices, `[nabla_i, J]`.
pub fn nabla_j(conn: &Connection, j: &ComplexStructure) -> [Endo4; 4] {
    std::array::from_fn(|i| {
        let n = conn.matrix(i);
        n * j.op() - j.op() * n
    })
}

/// `nabla_{E_i} frakJ` through the connection induced on bivectors.
pub fn nabla_frak_j(conn: &Connection, frak_j: &Bivector) -> [Bivector; 4] {
    std::array::from_fn(|i| frak_j.transformed(&conn.matrix(i)))
}

/// `N(E_i, E_j) = -[Y,Z] + [JY,JZ] - J[Y,JZ] - J[JY,Z]` on frame pairs.
pub fn nijenhuis(m: &FrameManifold, j: &ComplexStructure) -> [[Vec4; 4]; 4] {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let y = basis_vector(a);
            let z = basis_vector(b);
            let (jy, jz) = (j.apply(&y), j.apply(&z));
            -m.bracket(&y, &z) + m.bracket(&jy, &jz)
                - j.apply(&m.bracket(&y, &jz))
                - j.apply(&m.bracket(&jy, &z))
        })
    })
}

/// The induced map on bivectors, `N(a) = sum_{i<j} a^{ij} N(E_i, E_j)`.
pub fn nijenhuis_bivector(n: &[[Vec4; 4]; 4], a: &Bivector) -> Vec4 {
    PAIRS.iter().zip(a.0).map(|(&(i, j), w)| n[i][j] * w).sum()
}

/// Lee form `theta = -delta(Omega) o J` and its dual vector `B`.
///
/// `delta Omega (X) = -sum_i (nabla_{E_i} Omega)(E_i, X)`. On an orthonormal
/// frame `B` has the same components as `theta`.
pub fn lee_form(conn: &Connection, omega: &Endo4, j: &ComplexStructure) -> (Vec4, Vec4) {
    let nabla_omega: [Endo4; 4] = std::array::from_fn(|i| {
        let n = conn.matrix(i);
        -(n.transpose() * omega + omega * n)
    });
    let delta = Vec4::from_fn(|x, _| -(0..4).map(|i| nabla_omega[i][(i, x)]).sum::<f64>());
    let theta = Vec4::from_fn(|x, _| -delta.dot(&j.op().column(x)));
    (theta, theta)
}

/// `d theta(E_i, E_j) = -theta([E_i, E_j])` for a form with constant components.
pub fn d_theta(m: &FrameManifold, theta: &Vec4) -> Endo4 {
    Endo4::from_fn(|i, j| -theta.dot(&m.bracket_basis(i, j)))
}

/// Max of `|dtheta(JX,JY) - dtheta(X,Y)|` over frame pairs.
pub fn one_one_defect(dtheta: &Endo4, j: &ComplexStructure) -> f64 {
    (j.op().transpose() * dtheta * j.op() - dtheta).amax()
}

pub fn is_one_one(dtheta: &Endo4, j: &ComplexStructure, threshold: f64) -> bool {
    one_one_defect(dtheta, j) < threshold
}

/// `dOmega(X,Y,Z) = -Omega([X,Y],Z) - Omega([Y,Z],X) - Omega([Z,X],Y)`.
pub fn d_omega(m: &FrameManifold, omega: &Endo4) -> [[[f64; 4]; 4]; 4] {
    let om = |v: &Vec4, z: usize| (0..4).map(|k| v[k] * omega[(k, z)]).sum::<f64>();
    std::array::from_fn(|x| {
        std::array::from_fn(|y| {
            std::array::from_fn(|z| {
                -om(&m.bracket_basis(x, y), z)
                    - om(&m.bracket_basis(y, z), x)
                    - om(&m.bracket_basis(z, x), y)
            })
        })
    })
}

fn max3(t: &[[[f64; 4]; 4]; 4]) -> f64 {
    t.iter().flatten().flatten().fold(0.0, |m: f64, x| m.max(x.abs()))
}

fn max_vecs(n: &[[Vec4; 4]; 4]) -> f64 {
    n.iter().flatten().fold(0.0, |m: f64, v| m.max(v.amax()))
}

/// Everything derived from `J` on a given frame manifold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianData {
    pub j: ComplexStructure,
    pub omega: Endo4,
    pub frak_j: Bivector,
    pub nabla_j: [Endo4; 4],
    pub nabla_frak_j: [Bivector; 4],
    pub nijenhuis: [[Vec4; 4]; 4],
    pub theta: Vec4,
    pub b: Vec4,
    pub dtheta: Endo4,
    pub domega: [[[f64; 4]; 4]; 4],
    /// `L(X,Y) = (nabla_X theta)(Y) + 1/2 theta(X) theta(Y)`.
    pub l: Endo4,
    pub class: StructureClass,
    pub integrable: bool,
    pub symplectic: bool,
    pub kahler: bool,
    /// Magnitude scale of the input (largest structure constant).
    pub scale: f64,
}

impl HermitianData {
    pub fn compute(m: &FrameManifold, conn: &Connection, j: ComplexStructure, tol: &Tolerance) -> Self {
        let omega = j.omega();
        let frak_j = j.frak_j();
        let nabla_j = nabla_j(conn, &j);
        let nabla_frak_j = nabla_frak_j(conn, &frak_j);
        let nijenhuis = nijenhuis(m, &j);
        let (theta, b) = lee_form(conn, &omega, &j);
        let dtheta = d_theta(m, &theta);
        let domega = d_omega(m, &omega);
        let l = Endo4::from_fn(|x, y| {
            let nabla_theta = -(0..4).map(|k| conn.gamma(x, y, k) * theta[k]).sum::<f64>();
            nabla_theta + 0.5 * theta[x] * theta[y]
        });

        let scale = m.scale();
        let thr = tol.threshold(scale);
        let kahler = nabla_j.iter().all(|d| d.amax() < thr);
        let integrable = max_vecs(&nijenhuis) < thr;
        let symplectic = max3(&domega) < thr;
        let class = classify_structure(kahler, integrable, symplectic);

        Self {
            j,
            omega,
            frak_j,
            nabla_j,
            nabla_frak_j,
            nijenhuis,
            theta,
            b,
            dtheta,
            domega,
            l,
            class,
            integrable,
            symplectic,
            kahler,
            scale,
        }
    }

    pub fn nabla_j_along(&self, x: &Vec4) -> Endo4 {
        (0..4).map(|i| self.nabla_j[i] * x[i]).sum()
    }

    pub fn nabla_frak_j_along(&self, x: &Vec4) -> Bivector {
        (0..4).map(|i| self.nabla_frak_j[i] * x[i]).sum()
    }

    pub fn n(&self, x: &Vec4, y: &Vec4) -> Vec4 {
        let mut out = Vec4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out += self.nijenhuis[i][j] * (x[i] * y[j]);
            }
        }
        out
    }

    pub fn n_of(&self, a: &Bivector) -> Vec4 {
        nijenhuis_bivector(&self.nijenhuis, a)
    }

    pub fn n_max(&self) -> f64 {
        max_vecs(&self.nijenhuis)
    }

    pub fn domega_max(&self) -> f64 {
        max3(&self.domega)
    }

    pub fn nabla_j_max(&self) -> f64 {
        self.nabla_j.iter().fold(0.0, |m: f64, d| m.max(d.amax()))
    }

    pub fn domega_at(&self, x: &Vec4, y: &Vec4, z: &Vec4) -> f64 {
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    s += self.domega[a][b][c] * x[a] * y[b] * z[c];
                }
            }
        }
        s
    }

    pub fn one_one_defect(&self) -> f64 {
        one_one_defect(&self.dtheta, &self.j)
    }

    /// Gray's criterion `(nabla_X J)Y = (nabla_{JX} J)(JY)`; zero iff integrable.
    pub fn gray_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for x in 0..4 {
            for y in 0..4 {
                let ex = basis_vector(x);
                let ey = basis_vector(y);
                let lhs = self.nabla_j_along(&ex) * ey;
                let rhs = self.nabla_j_along(&self.j.apply(&ex)) * self.j.apply(&ey);
                worst = worst.max((lhs - rhs).amax());
            }
        }
        worst
    }

    /// Max residual over frame pairs of
    /// `rho - rho* = 1/2 [L(JX,JY) - L(X,Y)] + (s - s*)/4 g`.
    ///
    /// Only defined for integrable structures.
    pub fn remark2_check(&self, curv: &CurvatureData) -> Result<f64> {
        if !self.class.is_integrable() {
            return Err(GeometryError::NotIntegrable { defect: self.n_max() });
        }
        Ok(remark2_residual(
            &curv.ricci,
            &curv.star_ricci,
            &self.l,
            curv.scalar,
            curv.star_scalar,
            &self.j,
        ))
    }
}

pub fn classify_structure(kahler: bool, integrable: bool, symplectic: bool) -> StructureClass {
    if kahler {
        StructureClass::Kahler
    } else if integrable {
        StructureClass::Hermitian
    } else if symplectic {
        StructureClass::AlmostKahler
    } else {
        StructureClass::Generic
    }
}

pub fn remark2_residual(
    ricci: &Endo4,
    star_ricci: &Endo4,
    l: &Endo4,
    s: f64,
    s_star: f64,
    j: &ComplexStructure,
) -> f64 {
    let jt = j.op().transpose() * l * j.op();
    let rhs = (jt - l) * 0.5 + Endo4::identity() * ((s - s_star) / 4.0);
    (ricci - star_ricci - rhs).amax()
}
