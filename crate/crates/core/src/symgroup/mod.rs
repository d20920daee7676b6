//! Symmetric-group representations in Young's orthogonal form.

mod character;
mod checks;
mod perm;
mod rep;
mod scalar;
mod tableau;

pub use character::{character, character_in, mn_character, projector, GroupAlgebraElement, PROJECTOR_MAX_N};
pub use checks::{
    check_branching, check_characters, check_coxeter, check_intertwiners, check_jucys_murphy, check_scalar_a, run_symcheck,
    CheckReport,
};
pub use perm::{all_perms, Perm};
pub use rep::{intertwiner, OrthogonalRep};
pub use scalar::{all_diamonds, scalar_a_closed, scalar_a_matrix, Diamond, ScalarA};
pub use tableau::{
    add_box, added_row, box_content, count_standard, from_weight, normalize, partition_size, partitions, remove_box,
    standard_tableaux, standard_tableaux_of, Partition, StandardTableau,
};
