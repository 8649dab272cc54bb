//! Character theory and the isotypic decomposition of Jacobians.

mod decomposition;
mod table;

pub use decomposition::{
    chevalley_weil, cyclic_subgroups, group_algebra_decomposition, quotient_dimension_from_factors, DecompositionReport,
    Factor, NamedSubgroup, PrymDim, QuotientDim,
};
pub use table::{character_table, rational_irreps, Character, CharacterTable, RationalIrrep};

#[cfg(test)]
mod tests;
