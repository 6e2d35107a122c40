//! Independent oracles for the acceptance suite. These deliberately avoid
//! the library's own linear-algebra paths: rank comes from a fraction-free
//! Bareiss elimination written here, and consistency checking from a
//! self-contained elimination over the coefficient fraction field.

use num_bigint::BigInt;
use num_traits::Zero;
use qca::qcoeff::{QLaurent, QRational};
use qca::qtorus::TorusElement;

/// Fraction-free (Bareiss) rank of an integer matrix.
pub fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..ncols {
        let pivot = (row..nrows).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        for r in 0..nrows {
            if r == row {
                continue;
            }
            for c in 0..ncols {
                if c == col {
                    continue;
                }
                let num = &a[row][col] * &a[r][c] - &a[r][col] * &a[row][c];
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Evaluate a coefficient at `q^{1/2} = 2`, clearing the denominator by a
/// per-row power of two supplied by the caller.
pub fn eval_coeff_at_two(c: &QLaurent, shift: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for (h, v) in c.iter() {
        let e = h + shift;
        assert!(e >= 0, "caller must clear negative exponents");
        acc += v * BigInt::from(2).pow(e as u32);
    }
    acc
}

/// Rank certificate for a family of torus elements: build the coefficient
/// matrix over the union of supports, evaluate at `q^{1/2} = 2` (row
/// scaling clears denominators), and return the Bareiss rank. Full column
/// rank at one point certifies independence over the function field.
pub fn evaluation_rank(columns: &[TorusElement]) -> usize {
    let mut support: Vec<Vec<i64>> = Vec::new();
    for col in columns {
        for (e, _) in col.iter() {
            if !support.contains(e) {
                support.push(e.clone());
            }
        }
    }
    support.sort();
    let mut big_rows: Vec<Vec<BigInt>> = Vec::new();
    for e in &support {
        let coeffs: Vec<QLaurent> = columns.iter().map(|c| c.coeff(e)).collect();
        let shift = -coeffs
            .iter()
            .filter_map(|c| c.min_half_exp())
            .min()
            .unwrap_or(0)
            .min(0);
        big_rows.push(coeffs.iter().map(|c| eval_coeff_at_two(c, shift)).collect());
    }
    bareiss_big_rank(big_rows)
}

fn bareiss_big_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..ncols {
        let pivot = (row..nrows).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        for r in 0..nrows {
            if r == row {
                continue;
            }
            for c in 0..ncols {
                if c == col {
                    continue;
                }
                let num = &a[row][col] * &a[r][c] - &a[r][col] * &a[row][c];
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Decide whether `target` lies in the left span of `columns` over the
/// coefficient fraction field, by plain Gaussian elimination on the
/// support-indexed system (independent of the division algorithm).
pub fn in_span(columns: &[TorusElement], target: &TorusElement) -> bool {
    let mut support: Vec<Vec<i64>> = Vec::new();
    for col in columns.iter().chain(std::iter::once(target)) {
        for (e, _) in col.iter() {
            if !support.contains(e) {
                support.push(e.clone());
            }
        }
    }
    support.sort();
    let ncols = columns.len();
    let mut m: Vec<Vec<QRational>> = support
        .iter()
        .map(|e| {
            let mut row: Vec<QRational> =
                columns.iter().map(|c| QRational::from(c.coeff(e))).collect();
            row.push(QRational::from(target.coeff(e)));
            row
        })
        .collect();
    let mut row = 0usize;
    for col in 0..ncols {
        let pivot = (row..m.len()).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = QRational::one().div(&m[row][col].clone()).unwrap();
        for c in 0..=ncols {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=ncols {
                    let d = f.mul(&m[row][c]);
                    m[r][c] = m[r][c].sub(&d);
                }
            }
        }
        row += 1;
        if row == m.len() {
            break;
        }
    }
    // consistent iff no row reduces to (0 ... 0 | nonzero)
    !m.iter().any(|r| r[..ncols].iter().all(|x| x.is_zero()) && !r[ncols].is_zero())
}
