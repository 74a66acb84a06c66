mod common;

use common::{random_matrix, rng};
use oracle_forge::kron::{
    apply_structured, embed_dense, naive_mul_count, speedup_predicted, structured_mul_count,
    StructuredOperator,
};
use oracle_forge::linalg::{mat_mul_naive, MulCounter};
use proptest::prelude::*;

fn pow2() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![1usize, 2, 4, 8])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn structured_equals_dense(m in pow2(), n in pow2(), k in pow2(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let op = StructuredOperator::new(m, random_matrix(n, &mut r), k).unwrap();
        let b = random_matrix(m * n * k, &mut r);

        let mut fast = MulCounter::new();
        let got = apply_structured(&op, &b, &mut fast).unwrap();
        let mut slow = MulCounter::new();
        let want = mat_mul_naive(&embed_dense(&op).unwrap(), &b, &mut slow).unwrap();

        prop_assert!(got.max_abs_diff(&want).unwrap() <= 1e-12);
        prop_assert_eq!(fast.count(), structured_mul_count(m, n, k));
        prop_assert_eq!(slow.count(), naive_mul_count(m, n, k));
        prop_assert_eq!(slow.count(), ((m * n * k) as u64).pow(3));
        prop_assert_eq!(fast.count(), (m * m * n * n * n * k * k) as u64);
    }
}

#[test]
fn reference_triple_ratio() {
    assert_eq!(structured_mul_count(8, 2, 8), 32_768);
    assert_eq!(naive_mul_count(8, 2, 8), 2_097_152);
    assert!(speedup_predicted(8, 2, 8));
}

#[test]
fn non_power_of_two_factors_are_rejected() {
    let g = oracle_forge::Matrix::identity(2);
    assert!(StructuredOperator::new(3, g.clone(), 1).is_err());
    assert!(StructuredOperator::new(1, g, 6).is_err());
    assert!(StructuredOperator::new(1, oracle_forge::Matrix::identity(3), 1).is_err());
}
