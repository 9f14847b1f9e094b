//! Residuals of the structural identities, each evaluated independently of the
//! code path that the classifier relies on.

use super::{basis_bivectors, form, frame, random_bivector, random_self_dual, random_vec, Rng8};
use twistor_core::frame::{cross, k_op, wedge, Bivector};
use twistor_core::{Analysis, Endo4, Vec4};

/// `g(R(a)b, c) - g(Rop(b x c), a)` for `a` arbitrary and `b, c` self-dual,
/// with `R(a)` acting on bivectors as a derivation.
pub fn cross_product_curvature(a: &Analysis, rng: &mut Rng8) -> f64 {
    let r = &a.curvature.curvature;
    let mut worst = 0.0_f64;
    for _ in 0..4 {
        let x = random_bivector(rng);
        let b = random_self_dual(rng);
        let c = random_self_dual(rng);
        let lhs = b.transformed(&r.endo_of(&x)).inner(&c);
        let rhs = r.apply_operator(&cross(&b, &c, 1e-12).unwrap()).inner(&x);
        worst = worst.max((lhs - rhs).abs());
    }
    worst
}

/// `K_a K_b + g(a,b) Id - K_{a x b}` on random self-dual pairs.
pub fn k_composition(rng: &mut Rng8) -> f64 {
    let a = random_self_dual(rng);
    let b = random_self_dual(rng);
    let ab = cross(&a, &b, 1e-12).unwrap();
    (k_op(&a) * k_op(&b) + Endo4::identity() * a.inner(&b) - k_op(&ab)).amax()
}

/// `2g((nabla_X J)Y, Z) = dOmega(X,Y,Z) - dOmega(X,JY,JZ) + g(N(Y,Z), JX)`.
pub fn nabla_j_formula(a: &Analysis) -> f64 {
    let h = &a.hermitian;
    let e = frame();
    let mut worst = 0.0_f64;
    for x in &e {
        let nj = h.nabla_j_along(x);
        for y in &e {
            for z in &e {
                let lhs = 2.0 * z.dot(&(nj * y));
                let rhs = h.domega_at(x, y, z) - h.domega_at(x, &h.j.apply(y), &h.j.apply(z))
                    + h.n(y, z).dot(&h.j.apply(x));
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    worst
}

/// `rho*(JX, JY) = rho*(Y, X)`.
pub fn star_ricci_j_twist(a: &Analysis) -> f64 {
    let rs = &a.curvature.star_ricci;
    let j = a.hermitian.j.op();
    (j.transpose() * rs * j - rs.transpose()).amax()
}

/// `2g(Trace nabla^2 frakJ, X^Y) = rho(Y,JX) - rho(X,JY) + 2rho*(X,JY)`; almost Kähler only.
pub fn symplectic_rough_laplacian(a: &Analysis) -> f64 {
    let tr = a.section.trace_second();
    let (rho, rs) = (&a.curvature.ricci, &a.curvature.star_ricci);
    let j = &a.hermitian.j;
    let e = frame();
    let mut worst = 0.0_f64;
    for x in &e {
        for y in &e {
            let lhs = 2.0 * tr.inner(&wedge(x, y));
            let rhs = form(rho, y, &j.apply(x)) - form(rho, x, &j.apply(y)) + 2.0 * form(rs, x, &j.apply(y));
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// Vertical trace against star-Ricci in the adapted frame; almost Kähler only.
///
/// `g(Tr, s2) = rho*(F1,F4) - rho*(F4,F1)` and `g(Tr, s3) = -rho*(F1,F3) + rho*(F2,F4)`,
/// both antisymmetric parts of `rho*` once `rho*(JX,JY) = rho*(Y,X)` is used.
pub fn symplectic_vertical_trace(a: &Analysis) -> f64 {
    let (d2, d3) = vertical_trace_defects(a, 1.0);
    d2.max(d3)
}

/// Same check with the `s3` line written `-rho*(F1,F3) - rho*(F2,F4)`, the
/// symmetric combination; it only holds where that combination vanishes.
pub fn symplectic_vertical_trace_symmetric_sign(a: &Analysis) -> f64 {
    let (d2, d3) = vertical_trace_defects(a, -1.0);
    d2.max(d3)
}

fn vertical_trace_defects(a: &Analysis, s3_sign: f64) -> (f64, f64) {
    let tr = a.section.trace_second();
    let rs = a.adapted.pull_back(&a.curvature.star_ricci);
    let t = &a.adapted.triple;
    let d2 = tr.inner(&t.s2()) - (rs[(0, 3)] - rs[(3, 0)]);
    let d3 = tr.inner(&t.s3()) - (-rs[(0, 2)] + s3_sign * rs[(1, 3)]);
    (d2.abs(), d3.abs())
}

/// `N(JX,Y) = N(X,JY) = -J N(X,Y)`.
pub fn nijenhuis_j_linearity(a: &Analysis) -> f64 {
    let h = &a.hermitian;
    let e = frame();
    let mut worst = 0.0_f64;
    for x in &e {
        for y in &e {
            let n = h.n(x, y);
            let a1 = h.n(&h.j.apply(x), y);
            let a2 = h.n(x, &h.j.apply(y));
            worst = worst.max((a1 - a2).amax()).max((a1 + h.j.apply(&n)).amax());
        }
    }
    worst
}

/// `rho - rho* = 1/2 [L(JX,JY) - L(X,Y)] + (s - s*)/4 g`; integrable only.
pub fn ricci_difference(a: &Analysis) -> f64 {
    a.hermitian.remark2_check(&a.curvature).expect("integrable input")
}

/// Largest of the torsion and metric-compatibility defects of the connection.
pub fn levi_civita_defect(a: &Analysis) -> f64 {
    a.connection.torsion_defect(&a.manifold).max(a.connection.metric_defect())
}

/// `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y` on random vectors.
pub fn first_bianchi(a: &Analysis, rng: &mut Rng8) -> f64 {
    let r = &a.curvature.curvature;
    let mut worst = 0.0_f64;
    for _ in 0..4 {
        let (x, y, z) = (random_vec(rng), random_vec(rng), random_vec(rng));
        let s = r.apply(&x, &y, &z) + r.apply(&y, &z, &x) + r.apply(&z, &x, &y);
        worst = worst.max(s.amax());
    }
    worst
}

/// `4g(V Trace nabla^2 frakJ, X^Y) = -dtheta(JX,Y) - dtheta(X,JY)`; integrable only.
pub fn hermitian_vertical_trace(a: &Analysis) -> f64 {
    let v = a.section.vertical_part(&a.section.trace_second());
    let h = &a.hermitian;
    let e = frame();
    let mut worst = 0.0_f64;
    for x in &e {
        for y in &e {
            let lhs = 4.0 * v.inner(&wedge(x, y));
            let rhs = -form(&h.dtheta, &h.j.apply(x), y) - form(&h.dtheta, x, &h.j.apply(y));
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// Full trace version including the `|B|^2 g(X, JY)` term; integrable only.
pub fn hermitian_full_trace(a: &Analysis) -> f64 {
    let tr = a.section.trace_second();
    let h = &a.hermitian;
    let b2 = h.b.norm_squared();
    let e = frame();
    let mut worst = 0.0_f64;
    for x in &e {
        for y in &e {
            let lhs = 4.0 * tr.inner(&wedge(x, y));
            let rhs = -form(&h.dtheta, &h.j.apply(x), y) - form(&h.dtheta, x, &h.j.apply(y))
                + b2 * x.dot(&h.j.apply(y));
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// `2 sum_i g(R(frakJ x nabla_i frakJ) E_i, X) = -rho(X,B) + rho*(X,B)`; integrable only.
pub fn hermitian_horizontal_trace(a: &Analysis) -> f64 {
    let lhs = a.section.curvature_trace() * 2.0;
    let rhs = (a.curvature.star_ricci - a.curvature.ricci) * a.hermitian.b;
    (lhs - rhs).amax()
}

/// `2(nabla_X J)Y = g(JX,Y)B - g(B,Y)JX + g(X,Y)JB - g(JB,Y)X`; integrable only.
pub fn hermitian_nabla_j(a: &Analysis) -> f64 {
    let h = &a.hermitian;
    let (b, jb) = (h.b, h.j.apply(&h.b));
    let e = frame();
    let mut worst = 0.0_f64;
    for x in &e {
        let jx = h.j.apply(x);
        for y in &e {
            let lhs = h.nabla_j_along(x) * y * 2.0;
            let rhs = b * jx.dot(y) - jx * b.dot(y) + jb * x.dot(y) - x * jb.dot(y);
            worst = worst.max((lhs - rhs).amax());
        }
    }
    worst
}

/// `frakJ x nabla_X frakJ = +- nabla_{JX} frakJ`, `+` when integrable, `-` when symplectic.
pub fn twist_rotation(a: &Analysis, sign: f64) -> f64 {
    let h = &a.hermitian;
    let mut worst = 0.0_f64;
    for x in &frame() {
        let lhs = cross(&h.frak_j, &h.nabla_frak_j_along(x), 1e-9).unwrap();
        let rhs = h.nabla_frak_j_along(&h.j.apply(x)) * sign;
        worst = worst.max((lhs - rhs).max_abs());
    }
    worst
}

/// `g(nabla_X frakJ, a) = 1/4 g(N(a), JX)`; almost Kähler only.
pub fn symplectic_nabla_frak_j(a: &Analysis) -> f64 {
    let h = &a.hermitian;
    let mut worst = 0.0_f64;
    for x in &frame() {
        for b in basis_bivectors() {
            let lhs = h.nabla_frak_j_along(x).inner(&b);
            let rhs = 0.25 * h.n_of(&b).dot(&h.j.apply(x));
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// `4 sum_i R(frakJ x nabla_i frakJ) E_i = Trace{tau -> R(tau) N(tau)}`; almost Kähler only.
pub fn symplectic_horizontal_trace(a: &Analysis) -> f64 {
    (a.section.curvature_trace() * 4.0 - a.curvature_nijenhuis_trace()).amax()
}

/// `N` kills anti-self-dual bivectors and `frakJ`.
pub fn nijenhuis_kernel(a: &Analysis, rng: &mut Rng8) -> f64 {
    let h = &a.hermitian;
    let asd: Bivector = random_bivector(rng).anti_self_dual_part();
    h.n_of(&asd).amax().max(h.n_of(&h.frak_j).amax())
}

/// Trace of `rho` and `rho*` against the recorded scalars, and `rho*(X, JX) = 0`.
pub fn scalar_traces(a: &Analysis) -> f64 {
    let c = &a.curvature;
    let j = a.hermitian.j.op();
    let diag = (0..4)
        .map(|x| {
            let ex: Vec4 = twistor_core::frame::basis_vector(x);
            form(&c.star_ricci, &ex, &(j * ex)).abs()
        })
        .fold(0.0, f64::max);
    (c.ricci.trace() - c.scalar).abs().max((c.star_ricci.trace() - c.star_scalar).abs()).max(diag)
}
