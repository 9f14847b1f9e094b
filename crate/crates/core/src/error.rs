use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("frame permutation {0:?} reverses orientation")]
    Orientation([usize; 4]),
    #[error("frame permutation {0:?} is not a permutation of (0,1,2,3)")]
    NotAPermutation([usize; 4]),
    #[error("bivector is not self-dual (|*a - a| = {defect:.3e})")]
    NotSelfDual { defect: f64 },
    #[error("structure constants are not antisymmetric at [E{i},E{j}] (defect {defect:.3e})")]
    NotAntisymmetric { i: usize, j: usize, defect: f64 },
    #[error("structure constants violate the Jacobi identity (defect {defect:.3e})")]
    NotALieAlgebra { defect: f64 },
    #[error("J^2 != -Id (defect {defect:.3e})")]
    NotAComplexStructure { defect: f64 },
    #[error("J is not g-orthogonal (defect {defect:.3e})")]
    NotOrthogonal { defect: f64 },
    #[error("J induces the opposite orientation: its bivector is not self-dual (defect {defect:.3e})")]
    WrongOrientation { defect: f64 },
    #[error("J is not integrable (|N| = {defect:.3e})")]
    NotIntegrable { defect: f64 },
    #[error("twistor vectors live at different basepoints")]
    BasepointMismatch,
    #[error("vertical component is not tangent to the fibre (defect {defect:.3e})")]
    NotVertical { defect: f64 },
    #[error("tangent span of the section is degenerate (min pivot {pivot:.3e})")]
    DegenerateSpan { pivot: f64 },
    #[error("fibre scale t must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("bad parameter `{name}`: {reason}")]
    BadParameter { name: String, reason: String },
}
