//! Exact integer linear algebra on small dense matrices: column Hermite
//! reduction, kernel bases, and integer linear solving. Everything works
//! over `BigInt`-free `i64` entries; the matrices here are tiny (a few
//! dozen rows at most) and all intermediate values stay well inside range
//! because the reduction is gcd-driven.



/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl ZMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ZMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ZMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col[b] += f * col[a]
    fn add_col(&mut self, b: usize, a: usize, f: i64) {
        for i in 0..self.rows {
            let v = self[(i, a)];
            self[(i, b)] += f * v;
        }
    }

    fn scale_col(&mut self, j: usize, f: i64) {
        for i in 0..self.rows {
            self[(i, j)] *= f;
        }
    }
}

impl std::ops::Index<(usize, usize)> for ZMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Column echelon form by unimodular column operations: returns `(h, u)`
/// with `a * u = h`, `u` unimodular, and the nonzero columns of `h` in
/// echelon position. The zero columns of `h` mark a basis of the integer
/// kernel inside `u`.
pub fn column_echelon(a: &ZMat) -> (ZMat, ZMat) {
    let mut h = a.clone();
    let mut u = ZMat::identity(a.cols);
    let mut pivot_col = 0usize;
    for r in 0..h.rows {
        if pivot_col == h.cols {
            break;
        }
        // Clear row r to a single gcd entry among columns >= pivot_col via
        // the extended Euclidean column dance.
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..h.cols {
                if h[(r, j)] != 0 {
                    best = match best {
                        None => Some(j),
                        Some(b) if h[(r, j)].abs() < h[(r, b)].abs() => Some(j),
                        keep => keep,
                    };
                }
            }
            let Some(jmin) = best else { break };
            h.swap_cols(pivot_col, jmin);
            u.swap_cols(pivot_col, jmin);
            let p = h[(r, pivot_col)];
            let mut done = true;
            for j in pivot_col + 1..h.cols {
                let f = h[(r, j)].div_euclid(p);
                if f != 0 {
                    h.add_col(j, pivot_col, -f);
                    u.add_col(j, pivot_col, -f);
                }
                if h[(r, j)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, pivot_col)] != 0 {
            if h[(r, pivot_col)] < 0 {
                h.scale_col(pivot_col, -1);
                u.scale_col(pivot_col, -1);
            }
            pivot_col += 1;
        }
    }
    (h, u)
}

/// Rank over the rationals (= number of nonzero echelon columns).
pub fn rank(a: &ZMat) -> usize {
    let (h, _) = column_echelon(a);
    (0..h.cols).filter(|&j| h.col(j).iter().any(|&v| v != 0)).count()
}

/// A basis of the integer kernel `{x : a x = 0}`, one vector per entry.
/// The basis spans the full kernel lattice (saturated) since it comes from
/// a unimodular transform.
pub fn kernel_basis(a: &ZMat) -> Vec<Vec<i64>> {
    let (h, u) = column_echelon(a);
    (0..h.cols)
        .filter(|&j| h.col(j).iter().all(|&v| v == 0))
        .map(|j| u.col(j))
        .collect()
}

/// One integer solution of `a x = b`, if any exists.
pub fn solve(a: &ZMat, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows, b.len());
    let (h, u) = column_echelon(a);
    // h's nonzero columns are in echelon position: solve h y = b greedily
    // top-down, then x = u y.
    let mut y = vec![0i64; h.cols];
    let mut rem: Vec<i64> = b.to_vec();
    let mut col = 0usize;
    for _ in 0..h.cols {
        if col >= h.cols {
            break;
        }
        let lead = (0..h.rows).find(|&i| h[(i, col)] != 0);
        let Some(i) = lead else { break };
        let p = h[(i, col)];
        if rem[i] % p != 0 {
            // Any echelon column below cannot fix row i anymore.
            if rem[i] != 0 {
                return None;
            }
        }
        let f = rem[i] / p;
        y[col] = f;
        for r in 0..h.rows {
            rem[r] -= f * h[(r, col)];
        }
        col += 1;
    }
    if rem.iter().any(|&v| v != 0) {
        return None;
    }
    Some(u.mul_vec(&y))
}
