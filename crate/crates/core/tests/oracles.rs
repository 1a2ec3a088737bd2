//! Class groups, regulators and p-adic logarithms against independent oracles.
//!
//! The default ranges keep `cargo test` quick; the `acceptance` target runs
//! the full ranges. `ORACLE_QUADRATIC_MAX` widens the class group sweep.

mod support;

use support::{checks, quadratic_class_group, quadratic_regulator};

#[test]
fn forms_oracle_known_values() {
    assert_eq!(quadratic_class_group(-23), vec![3]);
    assert_eq!(quadratic_class_group(-47), vec![5]);
    assert_eq!(quadratic_class_group(-5), vec![2]);
    assert_eq!(quadratic_class_group(-21), vec![2, 2]);
    assert_eq!(quadratic_class_group(-1), Vec::<u64>::new());
    assert_eq!(quadratic_class_group(-3), Vec::<u64>::new());
    assert_eq!(quadratic_class_group(10), vec![2]);
    assert_eq!(quadratic_class_group(79), vec![3]);
    assert_eq!(quadratic_class_group(34), vec![2]);
    assert_eq!(quadratic_class_group(3), Vec::<u64>::new());
    assert!((quadratic_regulator(2) - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12);
    assert!((quadratic_regulator(5) - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-12);
}

#[test]
fn quadratic_class_groups_match_forms() {
    let max: i64 = std::env::var("ORACLE_QUADRATIC_MAX").ok().and_then(|s| s.parse().ok()).unwrap_or(600);
    checks::quadratic_class_groups(max).unwrap();
}

#[test]
fn real_quadratic_regulators_match_continued_fractions() {
    checks::quadratic_regulators(300).unwrap();
}

#[test]
fn padic_log_matches_series() {
    checks::padic_logs(50).unwrap();
}
