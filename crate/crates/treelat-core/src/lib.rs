//! Planar rooted trees with all vertices of arity at least two, the name
//! coordinates that encode them, the lattice order those names carry, and
//! the tree algebras (dendriform-style products, groves, the coproduct)
//! built on top of the lattice.

pub mod error;
pub mod grove;
pub mod hopf;
pub mod lattice;
pub mod name;
pub mod tree;
pub mod trialgebra;
pub mod verify;

pub use error::{Error, Result};
pub use grove::{
    decompose_pair, dend_add, dend_add_tallied, dend_mul, grove_op, total_grove, Grove,
    GroveOpKind,
};
pub use hopf::{
    coproduct, coproduct_name, counit, ext_map, int_add, int_coproduct, int_tensor_add,
    int_times, is_primitive, primitive_combination, tensor_op, IntComb, IntTensorComb, LinComb,
    TensorComb,
};
pub use lattice::{
    atoms, bottom_name, characteristic_polynomial, covers, join, left_modular_chain, meet,
    moebius, moebius_closed, moves, top_name, CharPoly, MoebiusMode, Poset, PAIRWISE_CAP,
};
pub use name::{
    box_shift, compare_value, decode, encode, graft_names, involute_name, leq_name, name_table,
    over, parse_name, project_binary, tri_shift, under, Coordinate, Name,
};
pub use tree::{
    corolla, enumerate_trees, graft, graft_on_leaf, invariant_count, involution, parse_tree,
    recurrence_check, super_catalan, PlanarTree, DEFAULT_ENUMERATION_CAP,
};
pub use trialgebra::{
    eval_universal, star, star_names, star_sum, tri_op, tri_op_names, universal_expression,
    FormalSum, TriOpKind, TriOps, UniversalExpr,
};
pub use verify::{run_all, run_suite, CheckResult, Suite};
