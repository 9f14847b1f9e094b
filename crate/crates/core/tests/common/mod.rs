//! Random valid inputs shared by the property suites and the acceptance harness.
#![allow(dead_code)]

pub mod identities;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistor_core::catalog;
use twistor_core::frame::{basis_vector, Bivector, PAIRS};
use twistor_core::{ComplexStructure, Endo4, FrameManifold, StructureClass, Tolerance, Vec4};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tol() -> Tolerance {
    Tolerance::default()
}

fn coef(rng: &mut Rng8) -> f64 {
    rng.random_range(-1.5..1.5)
}

pub fn random_vec(rng: &mut Rng8) -> Vec4 {
    Vec4::from_fn(|_, _| rng.random_range(-1.0..1.0))
}

pub fn random_bivector(rng: &mut Rng8) -> Bivector {
    Bivector(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

pub fn random_self_dual(rng: &mut Rng8) -> Bivector {
    random_bivector(rng).self_dual_part()
}

pub fn random_unit3(rng: &mut Rng8) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

/// A rotation in SO(4) from the QR factor of a random matrix.
pub fn random_rotation(rng: &mut Rng8) -> Endo4 {
    loop {
        let m = Endo4::from_fn(|_, _| rng.random_range(-1.0..1.0));
        if m.determinant().abs() < 1e-3 {
            continue;
        }
        let mut q = m.qr().q();
        if q.determinant() < 0.0 {
            q.column_mut(0).neg_mut();
        }
        return q;
    }
}

/// A random orthogonal `J` whose bivector is self-dual: a rotated standard one.
pub fn random_j(rng: &mut Rng8) -> ComplexStructure {
    let q = random_rotation(rng);
    ComplexStructure::standard().in_frame(&q, 1e-12).expect("rotation keeps J valid")
}

fn build(name: &str, brackets: &[(usize, usize, [f64; 4])]) -> FrameManifold {
    FrameManifold::from_brackets(name, brackets, &tol()).expect("family satisfies Jacobi")
}

/// `[E2, E1] = aE1 + bE3 + cE4`, `[E2, E3] = pE3 + qE4`, `[E2, E4] = -qE3 + pE4`:
/// the derivation is complex linear on span{E3, E4}, so the standard `J` is integrable.
pub fn hermitian_semidirect(a: f64, b: f64, c: f64, p: f64, q: f64) -> FrameManifold {
    build(
        "hermitian-semidirect",
        &[(1, 0, [a, 0.0, b, c]), (1, 2, [0.0, 0.0, p, q]), (1, 3, [0.0, 0.0, -q, p])],
    )
}

/// `D = ad E2` with `D E1 = aE1`, `D E3 = xE1 + pE3 + uE4`, `D E4 = yE1 + rE3 - pE4`:
/// trace-compatible with `dOmega = 0` for the standard `J`.
pub fn almost_kahler_semidirect(a: f64, x: f64, p: f64, u: f64, y: f64, r: f64) -> FrameManifold {
    build(
        "almost-kahler-semidirect",
        &[(1, 0, [a, 0.0, 0.0, 0.0]), (1, 2, [x, 0.0, p, u]), (1, 3, [y, 0.0, r, -p])],
    )
}

/// Lie algebras of several isomorphism types, with random parameters.
pub fn random_lie_algebra(rng: &mut Rng8) -> FrameManifold {
    let k = coef(rng);
    match rng.random_range(0..9) {
        0 => build("su2+r", &[(0, 1, [0.0, 0.0, k, 0.0]), (1, 2, [k, 0.0, 0.0, 0.0]), (2, 0, [0.0, k, 0.0, 0.0])]),
        1 => build("heisenberg+r", &[(0, 1, [0.0, 0.0, k, 0.0])]),
        2 => {
            let d = [coef(rng), coef(rng), coef(rng)];
            build(
                "diagonal",
                &[(3, 0, [d[0], 0.0, 0.0, 0.0]), (3, 1, [0.0, d[1], 0.0, 0.0]), (3, 2, [0.0, 0.0, d[2], 0.0])],
            )
        }
        3 => build("aff+aff", &[(0, 1, [0.0, k, 0.0, 0.0]), (2, 3, [0.0, 0.0, 0.0, coef(rng)])]),
        4 => hermitian_semidirect(coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)),
        5 => almost_kahler_semidirect(coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)),
        6 => catalog_algebra(rng).0,
        7 => catalog_algebra(rng).0,
        _ => build("sl2+r", &[(0, 1, [0.0, 0.0, k, 0.0]), (2, 0, [0.0, k, 0.0, 0.0]), (1, 2, [-k, 0.0, 0.0, 0.0])]),
    }
}

/// A catalog preset with randomized parameters, paired with its own `J`.
pub fn catalog_algebra(rng: &mut Rng8) -> (FrameManifold, ComplexStructure) {
    let sign = |rng: &mut Rng8| if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let preset = match rng.random_range(0..5) {
        0 => catalog::kodaira_hermitian(sign(rng), sign(rng)),
        1 => catalog::kodaira_almost_kahler(sign(rng), sign(rng), rng.random_range(0.0..std::f64::consts::TAU)),
        2 => {
            let t = rng.random_range(0.3..2.0) * sign(rng);
            catalog::lie_group_ak(coef(rng), t)
        }
        3 => Ok(catalog::inoue_s0()),
        _ => Ok(catalog::flat_torus()),
    }
    .expect("randomized parameters are in range");
    let j = ComplexStructure::new(preset.j_table, 1e-12).expect("preset J is valid");
    (preset.manifold, j)
}

/// Rewrites the pair in a random rotated orthonormal frame.
pub fn rotate(rng: &mut Rng8, m: &FrameManifold, j: &ComplexStructure) -> (FrameManifold, ComplexStructure) {
    let q = random_rotation(rng);
    (m.in_frame(&q, &tol()).expect("rotation keeps Jacobi"), j.in_frame(&q, 1e-10).expect("rotation keeps J valid"))
}

/// Any Lie algebra with any compatible `J`, usually of class Generic.
pub fn random_structure(seed: u64) -> (FrameManifold, ComplexStructure) {
    let mut r = rng(seed);
    let m = random_lie_algebra(&mut r);
    let j = random_j(&mut r);
    (m, j)
}

/// An integrable pair, written in a random rotated frame.
pub fn random_hermitian(seed: u64) -> (FrameManifold, ComplexStructure) {
    let mut r = rng(seed);
    let (m, j) = match r.random_range(0..4) {
        0 | 1 => {
            let v: [f64; 5] = std::array::from_fn(|_| coef(&mut r));
            (hermitian_semidirect(v[0], v[1], v[2], v[3], v[4]), ComplexStructure::standard())
        }
        2 => {
            // b = c = 0: dtheta vanishes, harmonic section but not a harmonic map;
            // p = a is hyperbolic space, whose Ricci tensor is J-invariant
            let v: [f64; 3] = std::array::from_fn(|_| coef(&mut r));
            let p = if r.random_bool(0.5) { v[0] } else { v[1] };
            (hermitian_semidirect(v[0], 0.0, 0.0, p, v[2]), ComplexStructure::standard())
        }
        _ => {
            let sign = |r: &mut Rng8| if r.random_bool(0.5) { 1.0 } else { -1.0 };
            let p = if r.random_bool(0.5) {
                catalog::kodaira_hermitian(sign(&mut r), sign(&mut r)).unwrap()
            } else {
                catalog::inoue_s0()
            };
            (p.manifold, ComplexStructure::new(p.j_table, 1e-12).unwrap())
        }
    };
    rotate(&mut r, &m, &j)
}

/// A symplectic pair, written in a random rotated frame.
pub fn random_almost_kahler(seed: u64) -> (FrameManifold, ComplexStructure) {
    let mut r = rng(seed);
    let (m, j) = match r.random_range(0..5) {
        0 | 1 => {
            let v: [f64; 6] = std::array::from_fn(|_| coef(&mut r));
            (almost_kahler_semidirect(v[0], v[1], v[2], v[3], v[4], v[5]), ComplexStructure::standard())
        }
        2 => {
            // x = u = 0, p = 2a: symmetric star-Ricci, harmonic section
            let (a, y, rr) = (coef(&mut r), coef(&mut r), coef(&mut r));
            (almost_kahler_semidirect(a, 0.0, 2.0 * a, 0.0, y, rr), ComplexStructure::standard())
        }
        3 => {
            let sign = |r: &mut Rng8| if r.random_bool(0.5) { 1.0 } else { -1.0 };
            let p = catalog::kodaira_almost_kahler(sign(&mut r), sign(&mut r), r.random_range(0.0..std::f64::consts::TAU))
                .unwrap();
            (p.manifold, ComplexStructure::new(p.j_table, 1e-12).unwrap())
        }
        _ => {
            let t = r.random_range(0.3..2.0) * if r.random_bool(0.5) { 1.0 } else { -1.0 };
            let p = catalog::lie_group_ak(coef(&mut r), t).unwrap();
            (p.manifold, ComplexStructure::new(p.j_table, 1e-12).unwrap())
        }
    };
    rotate(&mut r, &m, &j)
}

/// Mixture used by the route-agreement oracle, tagged with the class the
/// generator aimed for (`None` when unconstrained).
pub fn random_compatible(seed: u64) -> (FrameManifold, ComplexStructure, Option<StructureClass>) {
    match seed % 4 {
        0 => {
            let (m, j) = random_hermitian(seed);
            (m, j, Some(StructureClass::Hermitian))
        }
        1 => {
            let (m, j) = random_almost_kahler(seed);
            (m, j, Some(StructureClass::AlmostKahler))
        }
        2 => {
            let mut r = rng(seed);
            let (m, j) = catalog_algebra(&mut r);
            let (m, j) = rotate(&mut r, &m, &j);
            (m, j, None)
        }
        _ => {
            let (m, j) = random_structure(seed);
            (m, j, None)
        }
    }
}

/// `g(X,Y)`-matrix entries of a bilinear form evaluated on arbitrary vectors.
pub fn form(t: &Endo4, x: &Vec4, y: &Vec4) -> f64 {
    (x.transpose() * t * y)[(0, 0)]
}

pub fn frame() -> [Vec4; 4] {
    std::array::from_fn(basis_vector)
}

/// All basis bivectors `E_i ^ E_j`, `i < j`.
pub fn basis_bivectors() -> Vec<Bivector> {
    PAIRS.iter().map(|&(i, j)| Bivector::basis(i, j)).collect()
}
