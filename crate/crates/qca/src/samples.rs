//! Bundled sample data: the quantized `SL_3` compatible pair (an 8×4
//! exchange matrix on ex = {3,4,5,6} with its skew form and grading), and
//! the rank-2 two-parameter family.

use crate::pairs::{check_compatible, CompatiblePair, ExchangeMatrix};
use crate::qtorus::{GradingMatrix, SkewForm};

/// The 8×4 exchange matrix of the quantized `SL_3` cluster structure.
pub fn sl3_btilde() -> ExchangeMatrix {
    ExchangeMatrix::new(
        8,
        vec![3, 4, 5, 6],
        vec![
            vec![-1, 0, 0, 0],
            vec![1, -1, 0, 0],
            vec![0, 1, -1, 0],
            vec![-1, 0, 1, -1],
            vec![1, -1, 0, 1],
            vec![0, 1, -1, 0],
            vec![0, -1, 0, 1],
            vec![0, 0, 0, -1],
        ],
    )
    .expect("sample matrix is well-formed")
}

/// The skew form compatible with [`sl3_btilde`]; the product `B̃^T Λ` is
/// `2` on the exchangeable diagonal and zero elsewhere.
pub fn sl3_lambda() -> SkewForm {
    SkewForm::new(vec![
        vec![0, 0, -1, -1, -1, 0, 0, 0],
        vec![0, 0, 0, -1, -1, -1, 0, 0],
        vec![1, 0, 0, 0, -1, 0, 1, 0],
        vec![1, 1, 0, 0, 0, 0, 1, 1],
        vec![1, 1, 1, 0, 0, 1, 1, 1],
        vec![0, 1, 0, 0, -1, 0, 0, 1],
        vec![0, 0, -1, -1, -1, 0, 0, 0],
        vec![0, 0, 0, -1, -1, -1, 0, 0],
    ])
    .expect("sample form is skew-symmetric")
}

/// The grading matrix for the `SL_3` sample: symmetric, with entries on
/// and below the diagonal equal to those of [`sl3_lambda`].
pub fn sl3_sigma() -> GradingMatrix {
    let lam = sl3_lambda();
    let m = lam.dim();
    let mut rows = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..=i {
            rows[i][j] = lam.entry(i, j);
            rows[j][i] = lam.entry(i, j);
        }
    }
    GradingMatrix::new(rows).expect("mirrored lower triangle is symmetric")
}

pub fn sl3_pair() -> CompatiblePair {
    check_compatible(sl3_lambda(), sl3_btilde()).expect("sample pair is compatible")
}

/// The double word generating the `SL_3` sample triple.
pub fn sl3_word() -> Vec<i64> {
    vec![1, 2, 1, 2, 1, -1, -2, -1]
}

/// The rank-2 family: `Λ = ((0,1),(-1,0))`, `B = ((0,b),(-c,0))` on
/// ex = {1,2}. Compatible with `d = (c, b)`.
pub fn rank2_data(b: i64, c: i64) -> (SkewForm, ExchangeMatrix) {
    let lambda = SkewForm::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
    let bt = ExchangeMatrix::new(2, vec![1, 2], vec![vec![0, b], vec![-c, 0]])
        .expect("rank-2 matrix is skew-symmetrizable");
    (lambda, bt)
}

pub fn rank2_pair(b: i64, c: i64) -> CompatiblePair {
    let (lambda, bt) = rank2_data(b, c);
    check_compatible(lambda, bt).expect("rank-2 pair is compatible")
}

/// Cartan matrices of the four sample types, with their minimal
/// symmetrizers.
pub fn cartan_a2() -> Vec<Vec<i64>> {
    vec![vec![2, -1], vec![-1, 2]]
}

pub fn cartan_b2() -> Vec<Vec<i64>> {
    vec![vec![2, -1], vec![-2, 2]]
}

pub fn cartan_g2() -> Vec<Vec<i64>> {
    vec![vec![2, -1], vec![-3, 2]]
}

/// The affine rank-2 Cartan matrix (singular, symmetric).
pub fn cartan_a1_affine() -> Vec<Vec<i64>> {
    vec![vec![2, -2], vec![-2, 2]]
}
