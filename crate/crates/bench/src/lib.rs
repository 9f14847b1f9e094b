//! Shared workloads for the criterion benches.

use twistor_core::{catalog, Preset};

/// One instance of every catalog preset, at representative parameters.
pub fn presets() -> Vec<Preset> {
    vec![
        catalog::kodaira_hermitian(1.0, -1.0).expect("valid signs"),
        catalog::kodaira_almost_kahler(1.0, 1.0, 0.7).expect("valid parameters"),
        catalog::lie_group_ak(1.0, 1.0).expect("t is non-zero"),
        catalog::inoue_s0(),
        catalog::flat_torus(),
    ]
}

/// The 32-point (eps1, eps2, phi) grid of the symplectic Kodaira family.
pub fn kodaira_ak_grid() -> Vec<Preset> {
    catalog::EPS_COMBINATIONS
        .iter()
        .flat_map(|&(e1, e2)| {
            catalog::phi_grid(8)
                .into_iter()
                .map(move |phi| catalog::kodaira_almost_kahler(e1, e2, phi).expect("valid parameters"))
        })
        .collect()
}
