//! Fixtures shared by the benchmarks.

use logclass_core::numberfield::{maximal_order, FieldContext};
use logclass_core::ZPoly;

/// Benchmark fields with a prime of interest, from small to moderately large
/// discriminant.
pub const FIELDS: &[(&str, &[i64], u64)] = &[
    ("Q(sqrt(-521951))", &[521951, 0, 1], 2),
    ("Q(i,sqrt(11))", &[144, 0, -20, 0, 1], 5),
    ("Q(alpha)", &[52, -12, 13, 0, 1], 3),
    ("Q(i,sqrt(455))", &[207_936, 0, -908, 0, 1], 2),
];

pub fn field(poly: &[i64]) -> FieldContext {
    maximal_order(&ZPoly::from_i64(poly)).expect("benchmark field")
}
