//! Field arithmetic, matrix inversion and witness-producing products.

mod field;
mod hitting;
mod matrix;
mod product;

pub use field::{Field, FieldElem, MERSENNE_61};
pub use hitting::greedy_hitting_set;
pub use matrix::FieldMatrix;
pub use product::{
    bool_product_witness, minplus_approx, minplus_bounded, BoolMatrix, WeightMatrix,
    WitnessMatrix,
};
