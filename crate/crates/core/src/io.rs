//! Input documents and machine-readable reports.
//!
//! Input is a JSON document:
//!
//! ```json
//! {
//!   "name": "inoue",
//!   "structure_constants": [{"i": 1, "j": 2, "k": 1, "c": -1.0}],
//!   "J": [[0,1,0,0],[-1,0,0,0],[0,0,0,1],[0,0,-1,0]],
//!   "tolerance": {"numeric": 1e-9}
//! }
//! ```
//!
//! Each entry sets `[E_i, E_j] += c E_k` (frame indices 1..4); the opposite
//! ordering is filled in by antisymmetry. Row `i` of `J` lists the components
//! of `J E_i`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{EntryDiff, Preset};
use crate::classifier::{NSpace, Verdict};
use crate::curvature::{FrameManifold, StructureConstants};
use crate::error::GeometryError;
use crate::frame::{basis_vector, Endo4, PAIRS};
use crate::hermitian::{validate_j, StructureClass};
use crate::pipeline::Analysis;
use crate::tolerance::Tolerance;

pub const REPORT_SCHEMA: &str = "twistor-report/1";

/// Values below this are left out of the sparse tables of a report.
const REPORT_ZERO: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid input at `{location}`: {message}")]
    Invalid { location: String, message: String },
    #[error("invalid input at `{location}`: {source}")]
    Geometry {
        location: String,
        #[source]
        source: GeometryError,
    },
}

impl InputError {
    pub fn is_parse(&self) -> bool {
        matches!(self, Self::Parse { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub numeric: Option<f64>,
    pub jacobi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub structure_constants: Vec<BracketEntry>,
    #[serde(rename = "J")]
    pub j: [[f64; 4]; 4],
    #[serde(default)]
    pub tolerance: Option<ToleranceOverrides>,
}

/// A validated input: manifold, `J` table and effective tolerance.
#[derive(Debug, Clone)]
pub struct ValidatedInput {
    pub manifold: FrameManifold,
    pub j_table: Endo4,
    pub tol: Tolerance,
}

impl InputSpec {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Validates against `base`, applying any tolerance overrides in the document.
    pub fn validate(&self, base: Tolerance) -> Result<ValidatedInput, InputError> {
        let mut tol = base;
        if let Some(o) = self.tolerance {
            for (field, v) in [("numeric", o.numeric), ("jacobi", o.jacobi)] {
                if let Some(v) = v {
                    if !(v > 0.0 && v.is_finite()) {
                        return Err(InputError::Invalid {
                            location: format!("tolerance.{field}"),
                            message: format!("must be a positive number, got {v}"),
                        });
                    }
                }
            }
            tol.numeric = o.numeric.unwrap_or(tol.numeric);
            tol.jacobi = o.jacobi.unwrap_or(tol.jacobi);
        }

        let mut c: StructureConstants = [[[0.0; 4]; 4]; 4];
        let mut seen = [[[None::<usize>; 4]; 4]; 4];
        for (n, e) in self.structure_constants.iter().enumerate() {
            let at = |field: &str| format!("structure_constants[{n}].{field}");
            for (field, idx) in [("i", e.i), ("j", e.j), ("k", e.k)] {
                if !(1..=4).contains(&idx) {
                    return Err(InputError::Invalid {
                        location: at(field),
                        message: format!("frame index must be in 1..=4, got {idx}"),
                    });
                }
            }
            if !e.c.is_finite() {
                return Err(InputError::Invalid { location: at("c"), message: "must be finite".into() });
            }
            let (i, j, k) = (e.i - 1, e.j - 1, e.k - 1);
            if i == j {
                if e.c != 0.0 {
                    return Err(InputError::Invalid {
                        location: format!("structure_constants[{n}]"),
                        message: format!("[E{0},E{0}] must vanish", e.i),
                    });
                }
                continue;
            }
            // an entry may be given for (i,j) or (j,i), but not both
            let (a, b, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
            if let Some(prev) = seen[a][b][k] {
                return Err(InputError::Invalid {
                    location: format!("structure_constants[{n}]"),
                    message: format!("duplicates the bracket component of entry {prev}"),
                });
            }
            seen[a][b][k] = Some(n);
            c[a][b][k] = sign * e.c;
            c[b][a][k] = -sign * e.c;
        }
        let name = self.name.clone().unwrap_or_else(|| "input".to_string());
        let manifold = FrameManifold::new(name, c, &tol).map_err(|source| InputError::Geometry {
            location: "structure_constants".into(),
            source,
        })?;

        let j_table = Endo4::from_fn(|r, col| self.j[r][col]);
        if let Some((r, col)) = (0..16).map(|n| (n / 4, n % 4)).find(|&(r, col)| !self.j[r][col].is_finite()) {
            return Err(InputError::Invalid {
                location: format!("J[{}][{}]", r + 1, col + 1),
                message: "must be finite".into(),
            });
        }
        validate_j(&j_table, &tol)
            .map_err(|source| InputError::Geometry { location: "J".into(), source })?;
        Ok(ValidatedInput { manifold, j_table, tol })
    }

    /// The document describing an already-built manifold.
    pub fn from_parts(manifold: &FrameManifold, j_table: &Endo4) -> Self {
        Self {
            name: Some(manifold.name.clone()),
            structure_constants: bracket_entries(manifold),
            j: table_rows(j_table),
            tolerance: None,
        }
    }
}

fn bracket_entries(m: &FrameManifold) -> Vec<BracketEntry> {
    let mut out = Vec::new();
    for &(i, j) in &PAIRS {
        for k in 0..4 {
            let c = m.c(i, j, k);
            if c != 0.0 {
                out.push(BracketEntry { i: i + 1, j: j + 1, k: k + 1, c });
            }
        }
    }
    out
}

fn table_rows(t: &Endo4) -> [[f64; 4]; 4] {
    std::array::from_fn(|r| std::array::from_fn(|c| t[(r, c)]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedVector {
    pub index: Vec<usize>,
    pub value: [f64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportSettings {
    pub t: f64,
    pub tol: f64,
    pub jacobi_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensionReport {
    /// Coefficients of the vertical part on `s2`, `s3` of the adapted frame.
    pub vertical_s2: f64,
    pub vertical_s3: f64,
    pub horizontal: [f64; 4],
    pub normal_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub name: String,
    pub settings: ReportSettings,
    pub input: InputSpec,
    pub preset_params: Vec<(String, f64)>,
    /// Non-zero `nabla_{E_i} E_j`, index `[i, j]`.
    pub connection: Vec<IndexedVector>,
    /// Non-zero `R(E_i, E_j) E_k` for `i < j`, index `[i, j, k]`.
    pub curvature: Vec<IndexedVector>,
    pub ricci: [[f64; 4]; 4],
    pub star_ricci: [[f64; 4]; 4],
    pub scalar: f64,
    pub star_scalar: f64,
    pub theta: [f64; 4],
    pub b: [f64; 4],
    pub dtheta: [[f64; 4]; 4],
    pub dtheta_one_one: bool,
    /// Non-zero `N(E_i, E_j)` for `i < j`, index `[i, j]`.
    pub nijenhuis: Vec<IndexedVector>,
    pub n_space_dim: usize,
    pub class: StructureClass,
    pub integrable: bool,
    pub symplectic: bool,
    pub kahler: bool,
    pub tension: TensionReport,
    pub verdict: Verdict,
    pub expected: Option<Vec<EntryDiff>>,
    pub expected_verdict_match: Option<bool>,
}

fn arr(v: &crate::frame::Vec4) -> [f64; 4] {
    [v[0], v[1], v[2], v[3]]
}

impl Report {
    pub fn new(a: &Analysis, verdict: &Verdict, preset: Option<&Preset>) -> Self {
        let thr = a.threshold();
        let mut connection = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                let v = a.connection.nabla(&basis_vector(i), &basis_vector(j));
                if v.amax() > REPORT_ZERO {
                    connection.push(IndexedVector { index: vec![i + 1, j + 1], value: arr(&v) });
                }
            }
        }
        let mut curvature = Vec::new();
        let r = &a.curvature.curvature;
        for &(i, j) in &PAIRS {
            for k in 0..4 {
                let v = r.apply(&basis_vector(i), &basis_vector(j), &basis_vector(k));
                if v.amax() > REPORT_ZERO {
                    curvature.push(IndexedVector { index: vec![i + 1, j + 1, k + 1], value: arr(&v) });
                }
            }
        }
        let mut nijenhuis = Vec::new();
        for &(i, j) in &PAIRS {
            let v = a.hermitian.nijenhuis[i][j];
            if v.amax() > REPORT_ZERO {
                nijenhuis.push(IndexedVector { index: vec![i + 1, j + 1], value: arr(&v) });
            }
        }
        let tau = a.section.tension();
        let coords = a.adapted.triple.coords(&tau.vertical);
        let tension = TensionReport {
            vertical_s2: coords[1],
            vertical_s3: coords[2],
            horizontal: arr(&tau.horizontal),
            normal_residual: verdict.direct.normal_residual,
        };
        let (expected, expected_verdict_match) = match preset {
            Some(p) => (Some(p.compare(a)), Some(p.expected_verdict.matches(verdict.flags()))),
            None => (None, None),
        };
        Self {
            schema: REPORT_SCHEMA.to_string(),
            name: a.manifold.name.clone(),
            settings: ReportSettings {
                t: a.settings.t,
                tol: a.settings.tol.numeric,
                jacobi_tol: a.settings.tol.jacobi,
            },
            input: InputSpec::from_parts(&a.manifold, a.hermitian.j.table()),
            preset_params: preset.map(|p| p.params.clone()).unwrap_or_default(),
            connection,
            curvature,
            ricci: table_rows(&a.curvature.ricci),
            star_ricci: table_rows(&a.curvature.star_ricci),
            scalar: a.curvature.scalar,
            star_scalar: a.curvature.star_scalar,
            theta: arr(&a.hermitian.theta),
            b: arr(&a.hermitian.b),
            dtheta: table_rows(&a.hermitian.dtheta),
            dtheta_one_one: a.hermitian.one_one_defect() < thr,
            nijenhuis,
            n_space_dim: NSpace::from_analysis(a).dim(),
            class: a.hermitian.class,
            integrable: a.hermitian.integrable,
            symplectic: a.hermitian.symplectic,
            kahler: a.hermitian.kahler,
            tension,
            verdict: verdict.clone(),
            expected,
            expected_verdict_match,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// One grid point of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub preset: String,
    pub params: Vec<(String, f64)>,
    pub t: f64,
    pub class: StructureClass,
    pub harmonic_section: bool,
    pub harmonic_map: bool,
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub cross_check: bool,
    pub expected_verdict_match: bool,
}

impl SweepRow {
    pub fn new(preset: &Preset, a: &Analysis, v: &Verdict) -> Self {
        Self {
            preset: preset.name.clone(),
            params: preset.params.clone(),
            t: a.settings.t,
            class: v.class,
            harmonic_section: v.harmonic_section,
            harmonic_map: v.harmonic_map,
            minimal: v.minimal,
            totally_geodesic: v.totally_geodesic,
            cross_check: v.cross_check,
            expected_verdict_match: preset.expected_verdict.matches(v.flags()),
        }
    }
}
