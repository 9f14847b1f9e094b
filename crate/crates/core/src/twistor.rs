//! Tangent calculus of the twistor space at the points of the section `frakJ`.
//!
//! A tangent vector at `frakJ(p)` is stored extrinsically as a pair
//! (horizontal vector, vertical bivector). The metric is
//! `h_t = g(X,Y) + t g(V,W)`.

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::curvature::{Connection, Curvature};
use crate::error::{GeometryError, Result};
use crate::frame::{basis_vector, cross_unchecked, Bivector, SelfDualTriple, Vec4};

/// Pivot below which the tangent span is treated as singular.
pub const SPAN_PIVOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwistorContext {
    pub t: f64,
    pub basepoint: Bivector,
    pub tol: f64,
}

impl TwistorContext {
    pub fn new(t: f64, basepoint: Bivector, tol: f64) -> Result<Self> {
        if t <= 0.0 || !t.is_finite() {
            return Err(GeometryError::NonPositiveScale(t));
        }
        Ok(Self { t, basepoint, tol })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwistorVec {
    pub basepoint: Bivector,
    pub horizontal: Vec4,
    pub vertical: Bivector,
}

impl TwistorVec {
    /// Checks that `vertical` is self-dual and orthogonal to the basepoint.
    pub fn new(basepoint: Bivector, horizontal: Vec4, vertical: Bivector, tol: f64) -> Result<Self> {
        let defect = vertical
            .self_duality_defect()
            .max(vertical.inner(&basepoint).abs());
        if defect > tol {
            return Err(GeometryError::NotVertical { defect });
        }
        Ok(Self { basepoint, horizontal, vertical })
    }

    pub fn horizontal(basepoint: Bivector, x: Vec4) -> Self {
        Self { basepoint, horizontal: x, vertical: Bivector::zero() }
    }

    pub fn is_zero(&self, threshold: f64) -> bool {
        self.horizontal.amax() < threshold && self.vertical.max_abs() < threshold
    }

    fn combine(&self, other: &Self, a: f64) -> Self {
        Self {
            basepoint: self.basepoint,
            horizontal: self.horizontal + other.horizontal * a,
            vertical: self.vertical + other.vertical * a,
        }
    }
}

pub fn h_t(ctx: &TwistorContext, u: &TwistorVec, v: &TwistorVec) -> Result<f64> {
    if u.basepoint != v.basepoint || u.basepoint != ctx.basepoint {
        return Err(GeometryError::BasepointMismatch);
    }
    Ok(raw_h(ctx.t, u, v))
}

fn raw_h(t: f64, u: &TwistorVec, v: &TwistorVec) -> f64 {
    u.horizontal.dot(&v.horizontal) + t * u.vertical.inner(&v.vertical)
}

pub fn h_norm(ctx: &TwistorContext, v: &TwistorVec) -> Result<f64> {
    Ok(h_t(ctx, v, v)?.max(0.0).sqrt())
}

/// Fibre velocity of the horizontal lift of `x` at `sigma`, in the
/// coordinates `y_k = g(tau, s_k)` of the given local frame of `Lambda^2_+`.
pub fn horizontal_lift_coeffs(
    conn: &Connection,
    frame: &SelfDualTriple,
    x: &Vec4,
    sigma: &Bivector,
) -> [f64; 3] {
    let along = conn.along(x);
    let y = frame.coords(sigma);
    let ds: [Bivector; 3] = std::array::from_fn(|j| frame.s[j].transformed(&along));
    std::array::from_fn(|k| -(0..3).map(|j| y[j] * ds[j].inner(&frame.s[k])).sum::<f64>())
}

/// The section `frakJ` with its first and second covariant derivatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistorSection {
    pub ctx: TwistorContext,
    pub frak_j: Bivector,
    /// `nabla_{E_i} frakJ`.
    pub first: [Bivector; 4],
    /// `nabla^2_{E_i E_j} frakJ`.
    pub second: [[Bivector; 4]; 4],
    /// `frakJ x nabla_{E_i} frakJ`.
    pub twist: [Bivector; 4],
    /// `R(frakJ x nabla_{E_i} frakJ) E_j`, indexed `[i][j]`.
    pub curv_terms: [[Vec4; 4]; 4],
}

impl TwistorSection {
    pub fn new(
        ctx: TwistorContext,
        conn: &Connection,
        curv: &Curvature,
        frak_j: Bivector,
        first: [Bivector; 4],
    ) -> Self {
        let second = std::array::from_fn(|i| {
            let g = conn.matrix(i);
            std::array::from_fn(|j| {
                let mut out = first[j].transformed(&g);
                for m in 0..4 {
                    out -= first[m] * conn.gamma(i, j, m);
                }
                out
            })
        });
        let twist: [Bivector; 4] = std::array::from_fn(|i| cross_unchecked(&frak_j, &first[i]));
        let curv_terms = std::array::from_fn(|i| {
            let r = curv.endo_of(&twist[i]);
            std::array::from_fn(|j| r.column(j).into_owned())
        });
        Self { ctx, frak_j, first, second, twist, curv_terms }
    }

    pub fn t(&self) -> f64 {
        self.ctx.t
    }

    /// `a - g(a, frakJ) frakJ`.
    pub fn vertical_part(&self, a: &Bivector) -> Bivector {
        *a - self.frak_j * a.inner(&self.frak_j)
    }

    /// `frakJ_* E_i = (E_i)^h + nabla_{E_i} frakJ`.
    pub fn differential(&self, i: usize) -> TwistorVec {
        TwistorVec {
            basepoint: self.frak_j,
            horizontal: basis_vector(i),
            vertical: self.first[i],
        }
    }

    pub fn differential_along(&self, x: &Vec4) -> TwistorVec {
        TwistorVec {
            basepoint: self.frak_j,
            horizontal: *x,
            vertical: (0..4).map(|i| self.first[i] * x[i]).sum(),
        }
    }

    pub fn second_cov(&self, i: usize, j: usize) -> Bivector {
        self.second[i][j]
    }

    pub fn trace_second(&self) -> Bivector {
        (0..4).map(|i| self.second[i][i]).sum()
    }

    /// Second fundamental quantity `tilde-nabla frakJ_*(E_i, E_j)`.
    pub fn tilde_nabla(&self, i: usize, j: usize) -> TwistorVec {
        let vertical =
            self.vertical_part(&((self.second[i][j] + self.second[j][i]) * 0.5));
        let horizontal = (self.curv_terms[i][j] + self.curv_terms[j][i]) * (-0.5 * self.t());
        TwistorVec { basepoint: self.frak_j, horizontal, vertical }
    }

    /// Bilinear extension of [`Self::tilde_nabla`] to arbitrary vectors.
    pub fn tilde_nabla_along(&self, x: &Vec4, y: &Vec4) -> TwistorVec {
        let mut out = TwistorVec::horizontal(self.frak_j, Vec4::zeros());
        for i in 0..4 {
            for j in 0..4 {
                let w = x[i] * y[j];
                if w != 0.0 {
                    out = out.combine(&self.tilde_nabla(i, j), w);
                }
            }
        }
        out
    }

    /// `sum_i R(frakJ x nabla_{E_i} frakJ) E_i`.
    pub fn curvature_trace(&self) -> Vec4 {
        (0..4).map(|i| self.curv_terms[i][i]).sum()
    }

    /// Tension field: vertical part `V Trace nabla^2 frakJ`, horizontal part
    /// `-t sum_i R(frakJ x nabla_{E_i} frakJ) E_i`.
    pub fn tension(&self) -> TwistorVec {
        TwistorVec {
            basepoint: self.frak_j,
            horizontal: self.curvature_trace() * (-self.t()),
            vertical: self.vertical_part(&self.trace_second()),
        }
    }

    /// Gram matrix of the tangent span `{frakJ_* E_i}` under `h_t`.
    pub fn span_gram(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|a, b| raw_h(self.t(), &self.differential(a), &self.differential(b)))
    }

    /// `h_t`-norm of the component of `v` normal to `frakJ(M)`.
    pub fn normal_residual(&self, v: &TwistorVec) -> Result<f64> {
        if v.basepoint != self.frak_j {
            return Err(GeometryError::BasepointMismatch);
        }
        let gram = self.span_gram();
        let chol = nalgebra::Cholesky::new(gram)
            .ok_or(GeometryError::DegenerateSpan { pivot: 0.0 })?;
        let pivot = (0..4).map(|k| chol.l_dirty()[(k, k)]).fold(f64::INFINITY, f64::min);
        if pivot < SPAN_PIVOT_TOL {
            return Err(GeometryError::DegenerateSpan { pivot });
        }
        let rhs = Vector4::from_fn(|a, _| raw_h(self.t(), &self.differential(a), v));
        let c = chol.solve(&rhs);
        let mut normal = *v;
        for a in 0..4 {
            normal = normal.combine(&self.differential(a), -c[a]);
        }
        Ok(raw_h(self.t(), &normal, &normal).max(0.0).sqrt())
    }

    /// Largest `h_t`-norm of `tilde-nabla frakJ_*` over frame pairs.
    pub fn max_second_fundamental(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                let v = self.tilde_nabla(i, j);
                worst = worst.max(raw_h(self.t(), &v, &v).max(0.0).sqrt());
            }
        }
        worst
    }
}
