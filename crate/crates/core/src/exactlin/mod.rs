//! Exact linear algebra over the rationals and prime fields.

mod elim;
mod field;
mod matrix;
mod rational;

pub use elim::{bareiss_rank, gauss_rank, kernel_basis, row_space_rank_of_stack, rref};
pub use field::{is_prime, Field, FractionFreeReducer, ModularReducer, PrimeField, Rationals, RowReducer};
pub use matrix::Matrix;
pub use rational::{common_denominator, primitive_integer_vector, Rational};

/// Rank of `m` over `field`, using the field's preferred elimination.
pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    field.rank(m)
}
