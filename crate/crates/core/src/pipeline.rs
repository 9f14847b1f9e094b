//! One-shot evaluation of every quantity for a frame manifold and a `J` table.

use serde::{Deserialize, Serialize};

use crate::curvature::{curvature, levi_civita, Connection, CurvatureData, FrameManifold};
use crate::error::{GeometryError, Result};
use crate::frame::{basis_vector, Bivector, Endo4, SelfDualTriple, Vec4};
use crate::hermitian::{validate_j, ComplexStructure, HermitianData};
use crate::tolerance::Tolerance;
use crate::twistor::{TwistorContext, TwistorSection};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub t: f64,
    pub tol: Tolerance,
}

impl Default for Settings {
    fn default() -> Self {
        Self { t: 1.0, tol: Tolerance::default() }
    }
}

impl Settings {
    pub fn with_t(t: f64) -> Self {
        Self { t, ..Self::default() }
    }
}

/// Orthonormal frame `(F1, JF1, F3, JF3)` and its self-dual triple; `s1 = frakJ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaptedFrame {
    pub vectors: [Vec4; 4],
    pub triple: SelfDualTriple,
}

impl AdaptedFrame {
    pub fn new(j: &ComplexStructure) -> Self {
        let f1 = basis_vector(0);
        let f2 = j.apply(&f1);
        // first standard vector with a sizeable component off span{F1, JF1}
        let f3 = (0..4)
            .map(|k| {
                let e = basis_vector(k);
                e - f1 * e.dot(&f1) - f2 * e.dot(&f2)
            })
            .find(|p| p.norm() > 0.5)
            .expect("a 2-plane misses some basis vector by more than 1/2")
            .normalize();
        let f4 = j.apply(&f3);
        let vectors = [f1, f2, f3, f4];
        Self { triple: SelfDualTriple::from_frame(&vectors), vectors }
    }

    /// Matrix whose columns are the adapted vectors.
    pub fn matrix(&self) -> Endo4 {
        Endo4::from_columns(&self.vectors)
    }

    /// `T(F_a, F_b)` for a bilinear form with frame matrix `t`.
    pub fn pull_back(&self, t: &Endo4) -> Endo4 {
        let q = self.matrix();
        q.transpose() * t * q
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub manifold: FrameManifold,
    pub settings: Settings,
    pub connection: Connection,
    pub curvature: CurvatureData,
    pub hermitian: HermitianData,
    pub adapted: AdaptedFrame,
    pub section: TwistorSection,
}

impl Analysis {
    pub fn run(m: &FrameManifold, j_table: &Endo4, settings: &Settings) -> Result<Self> {
        let tol = settings.tol;
        let j = validate_j(j_table, &tol)?;
        Self::with_structure(m, j, settings)
    }

    pub fn with_structure(m: &FrameManifold, j: ComplexStructure, settings: &Settings) -> Result<Self> {
        let tol = settings.tol;
        let ctx = TwistorContext::new(settings.t, j.frak_j(), tol.numeric)?;
        let connection = levi_civita(m);
        let curv = curvature(m, &connection);
        let curvature = CurvatureData::new(curv, j.op());
        let hermitian = HermitianData::compute(m, &connection, j, &tol);
        let adapted = AdaptedFrame::new(&hermitian.j);
        if (adapted.triple.s1() - hermitian.frak_j).max_abs() > 1e-9 {
            return Err(GeometryError::WrongOrientation {
                defect: (adapted.triple.s1() - hermitian.frak_j).max_abs(),
            });
        }
        let section = TwistorSection::new(
            ctx,
            &connection,
            &curvature.curvature,
            hermitian.frak_j,
            hermitian.nabla_frak_j,
        );
        Ok(Self {
            manifold: m.clone(),
            settings: *settings,
            connection,
            curvature,
            hermitian,
            adapted,
            section,
        })
    }

    /// Input magnitude used by all scale-free zero tests.
    pub fn scale(&self) -> f64 {
        self.manifold.scale()
    }

    pub fn threshold(&self) -> f64 {
        self.settings.tol.threshold(self.scale())
    }

    pub fn frak_j(&self) -> Bivector {
        self.hermitian.frak_j
    }

    /// `Trace{tau -> R(tau)(N(tau))}` over the orthonormal basis `{s2, s3}` of
    /// the complement of `frakJ` in `Lambda^2_+`.
    pub fn curvature_nijenhuis_trace(&self) -> Vec4 {
        let r = &self.curvature.curvature;
        [self.adapted.triple.s2(), self.adapted.triple.s3()]
            .iter()
            .map(|tau| r.endo_of(tau) * self.hermitian.n_of(tau))
            .sum()
    }

    pub fn star_ricci_asymmetry(&self) -> f64 {
        let rs = &self.curvature.star_ricci;
        (rs - rs.transpose()).amax()
    }
}
