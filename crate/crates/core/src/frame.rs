//! Linear algebra on an oriented Euclidean 4-space: tangent vectors,
//! bivectors with the half-determinant metric, the Hodge star, the self-dual
//! frame `(s1, s2, s3)` and the endomorphisms `K_a`.
//!
//! Bivectors are stored over ordered pairs `i < j` in the order
//! `(01, 02, 03, 12, 13, 23)` (zero-based frame indices). The metric is
//! `g(v1 ^ v2, v3 ^ v4) = 1/2 det[g(vi, vj)]`, so `|E_i ^ E_j|^2 = 1/2` and the
//! inner product of two bivectors is half the Euclidean dot product of their
//! components.

use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

pub type Vec4 = Vector4<f64>;
pub type Endo4 = Matrix4<f64>;

/// Index pairs `(i, j)`, `i < j`, in storage order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn basis_vector(i: usize) -> Vec4 {
    let mut v = Vec4::zeros();
    v[i] = 1.0;
    v
}

pub fn pair_index(i: usize, j: usize) -> Option<(usize, f64)> {
    if i == j {
        return None;
    }
    let (lo, hi, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
    PAIRS
        .iter()
        .position(|&p| p == (lo, hi))
        .map(|idx| (idx, sign))
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Bivector(pub [f64; 6]);

impl Bivector {
    pub fn zero() -> Self {
        Self([0.0; 6])
    }

    /// `E_i ^ E_j` for zero-based indices; zero when `i == j`.
    pub fn basis(i: usize, j: usize) -> Self {
        let mut b = Self::zero();
        if let Some((idx, sign)) = pair_index(i, j) {
            b.0[idx] = sign;
        }
        b
    }

    pub fn components(&self) -> [f64; 6] {
        self.0
    }

    /// Coefficient `a^{ij}` extended antisymmetrically to all `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        pair_index(i, j).map_or(0.0, |(idx, sign)| sign * self.0[idx])
    }

    /// Reads the upper triangle of an antisymmetric matrix `W[i][j] = a^{ij}`.
    pub fn from_matrix(w: &Endo4) -> Self {
        let mut b = Self::zero();
        for (idx, &(i, j)) in PAIRS.iter().enumerate() {
            b.0[idx] = w[(i, j)];
        }
        b
    }

    pub fn to_matrix(&self) -> Endo4 {
        let mut w = Endo4::zeros();
        for (idx, &(i, j)) in PAIRS.iter().enumerate() {
            w[(i, j)] = self.0[idx];
            w[(j, i)] = -self.0[idx];
        }
        w
    }

    pub fn inner(&self, other: &Self) -> f64 {
        0.5 * self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn hodge_star(&self) -> Self {
        let a = &self.0;
        Self([a[5], -a[4], a[3], a[2], -a[1], a[0]])
    }

    pub fn self_dual_part(&self) -> Self {
        (*self + self.hodge_star()) * 0.5
    }

    pub fn anti_self_dual_part(&self) -> Self {
        (*self - self.hodge_star()) * 0.5
    }

    /// Norm of `*a - a`; zero exactly on the self-dual bivectors.
    pub fn self_duality_defect(&self) -> f64 {
        (self.hodge_star() - *self).norm()
    }

    /// Action of a skew endomorphism `Q` of the tangent space, extended to
    /// bivectors as a derivation: `Q(X ^ Y) = QX ^ Y + X ^ QY`.
    pub fn transformed(&self, q: &Endo4) -> Self {
        let w = self.to_matrix();
        Self::from_matrix(&(q * w + w * q.transpose()))
    }
}

impl Add for Bivector {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Bivector {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Bivector {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for Bivector {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for Bivector {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for Bivector {
    type Output = Self;
    fn mul(mut self, k: f64) -> Self {
        self.0.iter_mut().for_each(|a| *a *= k);
        self
    }
}

impl Sum for Bivector {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Add::add)
    }
}

/// `(X ^ Y)^{ij} = X^i Y^j - X^j Y^i`.
pub fn wedge(x: &Vec4, y: &Vec4) -> Bivector {
    let mut b = Bivector::zero();
    for (idx, &(i, j)) in PAIRS.iter().enumerate() {
        b.0[idx] = x[i] * y[j] - x[j] * y[i];
    }
    b
}

pub fn hodge_star(a: &Bivector) -> Bivector {
    a.hodge_star()
}

/// Oriented orthonormal frame `(s1, s2, s3)` of the self-dual bivectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelfDualTriple {
    pub s: [Bivector; 3],
}

impl SelfDualTriple {
    /// `s1 = F1^F2 + F3^F4`, `s2 = F1^F3 + F4^F2`, `s3 = F1^F4 + F2^F3`.
    ///
    /// The frame is assumed orthonormal; orientation is not checked here.
    pub fn from_frame(f: &[Vec4; 4]) -> Self {
        Self {
            s: [
                wedge(&f[0], &f[1]) + wedge(&f[2], &f[3]),
                wedge(&f[0], &f[2]) + wedge(&f[3], &f[1]),
                wedge(&f[0], &f[3]) + wedge(&f[1], &f[2]),
            ],
        }
    }

    pub fn standard() -> Self {
        Self::from_frame(&[0, 1, 2, 3].map(basis_vector))
    }

    pub fn s1(&self) -> Bivector {
        self.s[0]
    }

    pub fn s2(&self) -> Bivector {
        self.s[1]
    }

    pub fn s3(&self) -> Bivector {
        self.s[2]
    }

    /// Fibre coordinates `y_k = g(a, s_k)`.
    pub fn coords(&self, a: &Bivector) -> [f64; 3] {
        self.s.map(|sk| a.inner(&sk))
    }

    pub fn combine(&self, y: [f64; 3]) -> Bivector {
        self.s[0] * y[0] + self.s[1] * y[1] + self.s[2] * y[2]
    }
}

fn permutation_parity(perm: &[usize; 4]) -> Result<bool> {
    let mut seen = [false; 4];
    for &p in perm {
        if p > 3 || seen[p] {
            return Err(GeometryError::NotAPermutation(*perm));
        }
        seen[p] = true;
    }
    let inversions = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    Ok(inversions % 2 == 0)
}

/// Self-dual frame built from the permuted standard frame `(E_{p0}, .., E_{p3})`.
///
/// Odd permutations reverse orientation and are rejected.
pub fn selfdual_basis(perm: [usize; 4]) -> Result<SelfDualTriple> {
    if !permutation_parity(&perm)? {
        return Err(GeometryError::Orientation(perm));
    }
    Ok(SelfDualTriple::from_frame(&perm.map(basis_vector)))
}

fn ensure_self_dual(a: &Bivector, tol: f64) -> Result<()> {
    let defect = a.self_duality_defect();
    if defect > tol * (1.0 + a.norm()) {
        return Err(GeometryError::NotSelfDual { defect });
    }
    Ok(())
}

/// Cross product on the oriented 3-space of self-dual bivectors.
pub fn cross(a: &Bivector, b: &Bivector, tol: f64) -> Result<Bivector> {
    ensure_self_dual(a, tol)?;
    ensure_self_dual(b, tol)?;
    Ok(cross_unchecked(a, b))
}

/// Cross product of the self-dual parts, without validating the inputs.
pub(crate) fn cross_unchecked(a: &Bivector, b: &Bivector) -> Bivector {
    let frame = SelfDualTriple::standard();
    let x = Vector3::from(frame.coords(a));
    let y = Vector3::from(frame.coords(b));
    let z = x.cross(&y);
    frame.combine([z[0], z[1], z[2]])
}

/// `K_a` defined by `g(K_a X, Y) = 2 g(a, X ^ Y)`.
pub fn k_op(a: &Bivector) -> Endo4 {
    a.to_matrix().transpose()
}

/// Standard metric `-1/2 Trace(PQ)` on skew endomorphisms.
pub fn endo_inner(p: &Endo4, q: &Endo4) -> f64 {
    -0.5 * (p * q).trace()
}

/// Gram matrix of a self-dual triple in the bivector metric; the identity for
/// an orthonormal triple.
pub fn triple_gram(t: &SelfDualTriple) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| t.s[i].inner(&t.s[j]))
}
