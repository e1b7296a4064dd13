//! Phase sequences, shift operators, circulants and aperiodic correlation sums.

mod correlation;
mod sequence;
mod value;

pub use correlation::{
    aacf, accf, accf_float, auto_sum, cross_sum_adjacent, cross_sum_pointwise, dot,
};
pub(crate) use sequence::check_modulus;
pub use sequence::{
    circulant, kronecker, shift_forward, shift_right, truncate_columns, PhaseSequence,
    SequenceMatrix,
};
pub use value::{CorrelationValue, Gaussian, FLOAT_ZERO_TOL};
