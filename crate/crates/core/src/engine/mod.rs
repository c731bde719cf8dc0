//! Left Gröbner-basis machinery over the rational Weyl algebra
//! B = Q(x1..xn)<d1..dn>, for row modules of operators.

mod groebner;
mod module;
mod order;
mod row;

pub use groebner::{gb_compute, GbOutput, GroebnerBasis};
pub use module::{
    gb_of, left_factor, module_equal, op_rank, restrict_columns, row_left_mul, row_normal_form,
    rows_as_op, rows_of, syzygy_module,
};
pub use order::TermOrder;
pub use row::OpRow;
