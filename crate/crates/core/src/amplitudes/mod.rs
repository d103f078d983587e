//! Physical amplitudes: ratio functions, kernels, densities, kink and breather
//! scattering, and transmission through the defect.

#![allow(non_snake_case)]

mod breathers;
mod density;
mod kernels;
mod matrices;
mod ratios;
mod regime;
mod scalar;

pub use breathers::{breather_S, breather_S_integral, breather_T, breather_T_integral};
pub use density::{dispersion, ground_density, position_kernel, state_density, Excitation};
pub use kernels::{kernel_hat, Kernel, KernelName};
pub use matrices::{
    attractive_prefactor_identity, attractive_transmission_template, defect_block, s_matrix, s_matrix_entries,
    transmission_matrix, transmission_rep, PrefactorBranch, PrefactorIdentity, TransmissionTemplate,
};
pub use ratios::{elementary_log_derivative, elementary_ratio, RatioKind};
pub use regime::{physical_spin, repulsive_one_hole_spin, DefectRegimeData};
pub use scalar::{
    attractive_transmission_spec, defect_pair_arguments, defect_pair_form, kink_S_amplitude, kink_S_integral,
    kink_product_spec, rational_kink_terms, rational_second_eigenvalue, rational_transmission_terms,
    repulsive_transmission_spec, rho_d_spec, transmission_amplitude, transmission_integral, PRODUCT_TOL,
};
