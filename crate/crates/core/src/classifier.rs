//! Harmonicity verdicts for the section `frakJ`.
//!
//! Every run evaluates the direct route (tension field, normal component of
//! the tension, second fundamental quantity). When the structure is Kähler,
//! Hermitian or almost Kähler the curvature criteria are evaluated as well and
//! the two sets of booleans are compared.

use serde::{Deserialize, Serialize};

use crate::frame::{basis_vector, Endo4, Vec4};
use crate::hermitian::{ComplexStructure, StructureClass};
use crate::pipeline::Analysis;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Condition {
    fn below(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.to_string(), value, threshold, pass: value < threshold }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Kahler,
    HermitianCriteria,
    AlmostKahlerCriteria,
    Direct,
}

/// Booleans read straight off the tension field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectRoute {
    pub harmonic_section: bool,
    pub harmonic_map: bool,
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub vertical_tension: f64,
    pub horizontal_tension: f64,
    pub normal_residual: f64,
    pub second_fundamental: f64,
    pub threshold: f64,
}

/// `N_p = N(Lambda^2 T_pM)`, spanned by `N(s2), N(s3)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NSpace {
    pub basis: Vec<Vec4>,
    /// Rank seen before forcing the result to dimension 0 or 2.
    pub numerical_rank: usize,
}

impl NSpace {
    pub fn from_analysis(a: &Analysis) -> Self {
        let thr = a.threshold();
        let n2 = a.hermitian.n_of(&a.adapted.triple.s2());
        let n3 = a.hermitian.n_of(&a.adapted.triple.s3());
        let mut basis: Vec<Vec4> = Vec::new();
        for v in [n2, n3] {
            let mut w = v;
            for b in &basis {
                w -= b * b.dot(&w);
            }
            if w.norm() > thr {
                basis.push(w.normalize());
            }
        }
        let numerical_rank = basis.len();
        if numerical_rank == 1 {
            // dimension is 0 or 2; complete with the J image
            let jb = a.hermitian.j.apply(&basis[0]);
            basis.push(jb);
        }
        Self { basis, numerical_rank }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Distance from `v` to the span.
    pub fn residual(&self, v: &Vec4) -> f64 {
        let mut w = *v;
        for b in &self.basis {
            w -= b * b.dot(&w);
        }
        w.norm()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub harmonic_section: bool,
    pub harmonic_map: bool,
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub class: StructureClass,
    pub conditions: Vec<Condition>,
    pub method: Method,
    pub direct: DirectRoute,
    /// Criteria and direct route give the same three booleans.
    pub cross_check: bool,
    pub n_space_dim: Option<usize>,
    pub warnings: Vec<String>,
}

impl Verdict {
    /// `geodesic => map => section` and `map => minimal`.
    pub fn implications_hold(&self) -> bool {
        (!self.totally_geodesic || self.harmonic_map)
            && (!self.harmonic_map || self.harmonic_section)
            && (!self.harmonic_map || self.minimal)
    }

    pub fn flags(&self) -> [bool; 4] {
        [self.harmonic_section, self.harmonic_map, self.minimal, self.totally_geodesic]
    }
}

pub fn direct_route(a: &Analysis) -> DirectRoute {
    let thr = a.threshold();
    let tau = a.section.tension();
    let vertical_tension = tau.vertical.max_abs();
    let horizontal_tension = tau.horizontal.amax();
    let normal_residual = a
        .section
        .normal_residual(&tau)
        .expect("the tangent span of a section is never degenerate");
    let second_fundamental = a.section.max_second_fundamental();
    DirectRoute {
        harmonic_section: vertical_tension < thr,
        harmonic_map: vertical_tension < thr && horizontal_tension < thr,
        minimal: normal_residual < thr,
        totally_geodesic: second_fundamental < thr,
        vertical_tension,
        horizontal_tension,
        normal_residual,
        second_fundamental,
        threshold: thr,
    }
}

/// Whether `rho(JX, JY) = rho(X, Y)` on all frame pairs.
pub fn j_invariant_ricci_shortcut(ricci: &Endo4, j: &ComplexStructure, threshold: f64) -> bool {
    j_invariance_defect(ricci, j) < threshold
}

pub fn j_invariance_defect(form: &Endo4, j: &ComplexStructure) -> f64 {
    (j.op().transpose() * form * j.op() - form).amax()
}

/// Orthonormal basis of the complement of `{B, JB}` (all of `T_pM` when `B = 0`).
fn complement_of_b(b: &Vec4, j: &ComplexStructure, threshold: f64) -> Vec<Vec4> {
    let mut basis: Vec<Vec4> = Vec::new();
    if b.norm() >= threshold {
        let u = b.normalize();
        basis.push(u);
        basis.push(j.apply(&u));
    }
    let fixed = basis.len();
    for k in 0..4 {
        if basis.len() == 4 {
            break;
        }
        let mut w = basis_vector(k);
        for v in &basis {
            w -= v * v.dot(&w);
        }
        if w.norm() > 0.5 {
            basis.push(w.normalize());
        }
    }
    basis.split_off(fixed)
}

struct Criteria {
    section: bool,
    map: bool,
    minimal: bool,
    conditions: Vec<Condition>,
    n_space_dim: Option<usize>,
    warnings: Vec<String>,
}

fn hermitian_criteria(a: &Analysis, thr: f64) -> Criteria {
    let h = &a.hermitian;
    let diff = a.curvature.ricci - a.curvature.star_ricci;
    let along_b = diff * h.b;

    let one_one = Condition::below("dtheta is (1,1)", h.one_one_defect(), thr);
    let all_x = Condition::below("rho(X,B) = rho*(X,B), all X", along_b.amax(), thr);
    let perp = complement_of_b(&h.b, &h.j, thr);
    let perp_defect = perp.iter().map(|x| along_b.dot(x).abs()).fold(0.0, f64::max);
    let perp_x = Condition::below("rho(X,B) = rho*(X,B), X perp {B,JB}", perp_defect, thr);

    let mut warnings = Vec::new();
    let sym = Condition::below("rho* symmetric", a.star_ricci_asymmetry(), thr);
    if sym.pass != one_one.pass {
        warnings.push("dtheta (1,1) and rho* symmetric disagree".to_string());
    }
    let shortcut = j_invariant_ricci_shortcut(&a.curvature.ricci, &h.j, thr);
    if shortcut && !(one_one.pass && perp_x.pass) {
        warnings.push("Ricci is J-invariant but the minimality criteria fail".to_string());
    }

    let section = one_one.pass;
    let map = one_one.pass && all_x.pass;
    let minimal = one_one.pass && perp_x.pass;
    Criteria {
        section,
        map,
        minimal,
        conditions: vec![one_one, all_x, perp_x, sym],
        n_space_dim: None,
        warnings,
    }
}

fn almost_kahler_criteria(a: &Analysis, thr: f64) -> Criteria {
    let sym = Condition::below("rho* symmetric", a.star_ricci_asymmetry(), thr);
    let trace = a.curvature_nijenhuis_trace();
    let trace_zero = Condition::below("Trace R(tau)N(tau) = 0", trace.amax(), thr);
    let n_space = NSpace::from_analysis(a);
    let in_n = Condition::below("Trace R(tau)N(tau) in N_p", n_space.residual(&trace), thr);
    let mut warnings = Vec::new();
    if n_space.numerical_rank == 1 {
        warnings.push("N_p has numerical rank 1; completed with its J image".to_string());
    }
    Criteria {
        section: sym.pass,
        map: sym.pass && trace_zero.pass,
        minimal: sym.pass && in_n.pass,
        conditions: vec![sym, trace_zero, in_n],
        n_space_dim: Some(n_space.dim()),
        warnings,
    }
}

pub fn classify(a: &Analysis) -> Verdict {
    let thr = a.threshold();
    let direct = direct_route(a);
    let class = a.hermitian.class;

    let (method, criteria) = match class {
        StructureClass::Kahler => (
            Method::Kahler,
            Criteria {
                section: true,
                map: true,
                minimal: true,
                conditions: vec![Condition::below("nabla J = 0", a.hermitian.nabla_j_max(), thr)],
                n_space_dim: Some(0),
                warnings: Vec::new(),
            },
        ),
        StructureClass::Hermitian => (Method::HermitianCriteria, hermitian_criteria(a, thr)),
        StructureClass::AlmostKahler => (Method::AlmostKahlerCriteria, almost_kahler_criteria(a, thr)),
        StructureClass::Generic => (
            Method::Direct,
            Criteria {
                section: direct.harmonic_section,
                map: direct.harmonic_map,
                minimal: direct.minimal,
                conditions: Vec::new(),
                n_space_dim: None,
                warnings: vec!["no curvature criteria for this class; direct route only".to_string()],
            },
        ),
    };

    let mut conditions = criteria.conditions;
    conditions.push(Condition::below(
        "second fundamental form = 0",
        direct.second_fundamental,
        thr,
    ));
    let cross_check = criteria.section == direct.harmonic_section
        && criteria.map == direct.harmonic_map
        && criteria.minimal == direct.minimal;
    let mut warnings = criteria.warnings;
    if !cross_check {
        warnings.push("curvature criteria and tension field disagree".to_string());
    }

    Verdict {
        harmonic_section: criteria.section,
        harmonic_map: criteria.map,
        minimal: criteria.minimal,
        totally_geodesic: direct.totally_geodesic,
        class,
        conditions,
        method,
        direct,
        cross_check,
        n_space_dim: criteria.n_space_dim,
        warnings,
    }
}
