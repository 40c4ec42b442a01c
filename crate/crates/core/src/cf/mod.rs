//! Regular continued fractions: expansion, convergents, tail and backward
//! values, the error formula, and comparison.

mod compare;
mod convergents;
mod expansion;
mod source;
mod values;

pub use compare::{compare_expansions, compare_reals};
pub use convergents::{
    convergents, semiconvergents, ConvergentIter, ConvergentRow, ConvergentTable, FractionRecord,
    Origin,
};
pub use expansion::{cf_expand, CfExpansion, Periodicity, DEFAULT_COMPARISON_BUDGET};
pub use source::{AlphaSource, TermStream};
pub use values::{approx_error, back_value, p_quantity, tail_value, RealValue};

pub(crate) use expansion::solve_purely_periodic;
pub(crate) use values::abs_distance;
