//! Independent checks: an exact permutation sum, Schur–Weyl tensor traces,
//! and Monte Carlo integration over Haar-random edge variables.

mod haar;
mod mc;
mod perm_sum;
mod tensor;

pub use haar::{haar_unitary, unitary_eigenvalues};
pub use mc::{
    mc_driver_sengupta, mc_heat_kernel_normalization, mc_tensor_moment, run_chunks, McConfig, McEstimate, Welford, CHUNK,
};
pub use perm_sum::{flat_contribution_perm_sum, DEFAULT_BOUND, MAX_TUPLES};
pub use tensor::{
    char_trace_check, cs_integral_apply, CHAR_MAX_RANK, group_algebra_action, permutation_action, schur_trace_check, tensor_power,
    CS_MAX_N, TENSOR_MAX_RANK, TRACE_MAX_N,
};
