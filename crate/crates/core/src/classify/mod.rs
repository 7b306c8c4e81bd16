//! Maximal orders, exact-ideal class enumeration, Picard groups, conductors
//! and the pr_F isomorphism.

mod classes;
mod conductor;
mod maximal;

pub use classes::{enumerate_exact_classes, ideal_class_reps_separable, picard, ClassTable, Picard};
pub use conductor::{
    conductor, faddeev_chain, index_formula_check, kernel_class_from_unit, prf_group_map, prf_lattice, prf_lift, suborder_pushforward,
    ConductorData, IndexFormulaReport, PrfIsomorphism,
};
pub use maximal::{maximal_order, p_maximal};
