//! Twistor-space harmonicity checks for homogeneous almost Hermitian 4-manifolds.
//!
//! A manifold is given by constant structure constants on an orthonormal frame
//! together with a compatible almost complex structure `J`. From that data the
//! crate computes the Levi-Civita connection, curvature, Ricci and star-Ricci
//! tensors, the Lee form and Nijenhuis tensor, and the second fundamental
//! quantity of the map `p -> J(p)` into the twistor space `(Z, h_t)`. Verdicts
//! (harmonic section, harmonic map, minimal imbedding, totally geodesic) are
//! produced twice: once from the curvature criteria and once from the tension
//! field directly, and the two routes are cross-checked.
//!
//! ```
//! use twistor_core::{catalog, pipeline::{Analysis, Settings}, classifier};
//!
//! let preset = catalog::inoue_s0();
//! let analysis = Analysis::run(&preset.manifold, &preset.j_table, &Settings::default()).unwrap();
//! let verdict = classifier::classify(&analysis);
//! assert!(verdict.harmonic_section && verdict.minimal && !verdict.harmonic_map);
//! ```

// tensor code reads best with explicit frame indices
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod classifier;
pub mod curvature;
pub mod error;
pub mod frame;
pub mod hermitian;
pub mod io;
pub mod pipeline;
pub mod tolerance;
pub mod twistor;

pub use catalog::Preset;
pub use classifier::{classify, Verdict};
pub use curvature::{Connection, Curvature, FrameManifold};
pub use error::{GeometryError, Result};
pub use frame::{Bivector, Endo4, SelfDualTriple, Vec4};
pub use hermitian::{ComplexStructure, HermitianData, StructureClass};
pub use pipeline::{Analysis, Settings};
pub use tolerance::Tolerance;
pub use twistor::{TwistorContext, TwistorSection, TwistorVec};
