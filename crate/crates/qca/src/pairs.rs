//! Integer exchange matrices, matrix mutation, compatible pairs and their
//! mutations, gradings, and acyclicity.

use std::fmt;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::qtorus::json::{int_matrix_from_json, int_matrix_to_json};
use crate::qtorus::{GradingMatrix, SkewForm, TorusError};
use crate::zlinalg::{self, ZMat};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairError {
    InvalidDirection(usize),
    /// The product `B̃^T Λ` deviates from the diagonal-plus-zero block
    /// shape at the given (column label, row) position.
    NotCompatible { j: usize, i: usize, value: i64 },
    NonPositiveD { j: usize, value: i64 },
    NotSkewSymmetrizable,
    /// `B̃^T Σ ≠ 0`.
    NotGraded { j: usize, i: usize, value: i64 },
    RankDeficient { rank: usize, n: usize },
    NoSolution,
    BadShape(String),
    Torus(TorusError),
}

impl fmt::Display for PairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairError::InvalidDirection(k) => write!(f, "direction {k} is not exchangeable"),
            PairError::NotCompatible { j, i, value } => {
                write!(f, "pair not compatible: (B^T L)[{j},{i}] = {value}")
            }
            PairError::NonPositiveD { j, value } => {
                write!(f, "diagonal entry d_{j} = {value} is not positive")
            }
            PairError::NotSkewSymmetrizable => write!(f, "principal part is not skew-symmetrizable"),
            PairError::NotGraded { j, i, value } => {
                write!(f, "grading violated: (B^T S)[{j},{i}] = {value}")
            }
            PairError::RankDeficient { rank, n } => {
                write!(f, "exchange matrix has rank {rank} < {n}")
            }
            PairError::NoSolution => write!(f, "no integer skew form satisfies the constraints"),
            PairError::BadShape(msg) => write!(f, "{msg}"),
            PairError::Torus(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PairError {}

impl From<TorusError> for PairError {
    fn from(e: TorusError) -> Self {
        PairError::Torus(e)
    }
}

/// An `m × n` integer exchange matrix with rows labeled by `1..=m` and
/// columns labeled by an `n`-element subset `ex ⊂ 1..=m` of exchangeable
/// indices. The principal part (rows restricted to `ex`) must be
/// skew-symmetrizable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExchangeMatrix {
    m: usize,
    ex: Vec<usize>,
    entries: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(m: usize, ex: Vec<usize>, entries: Vec<Vec<i64>>) -> Result<Self, PairError> {
        let n = ex.len();
        if entries.len() != m || entries.iter().any(|r| r.len() != n) {
            return Err(PairError::BadShape(format!(
                "expected {m} rows of length {n}, got {} rows",
                entries.len()
            )));
        }
        if ex.windows(2).any(|w| w[0] >= w[1]) || ex.iter().any(|&k| k < 1 || k > m) {
            return Err(PairError::BadShape(
                "column labels must be a sorted subset of 1..=m".into(),
            ));
        }
        let bt = ExchangeMatrix { m, ex, entries };
        if is_skew_symmetrizable(&bt.principal_part()).is_none() {
            return Err(PairError::NotSkewSymmetrizable);
        }
        Ok(bt)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.ex.len()
    }

    pub fn ex(&self) -> &[usize] {
        &self.ex
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_exchangeable(&self, k: usize) -> bool {
        self.ex.binary_search(&k).is_ok()
    }

    fn col_index(&self, k: usize) -> Result<usize, PairError> {
        self.ex.binary_search(&k).map_err(|_| PairError::InvalidDirection(k))
    }

    /// Entry `b_{ik}` by row index `i ∈ 1..=m` and column label `k ∈ ex`.
    pub fn get(&self, i: usize, k: usize) -> i64 {
        let j = self.col_index(k).expect("column label");
        self.entries[i - 1][j]
    }

    /// The column `b^k ∈ Z^m`.
    pub fn column(&self, k: usize) -> Result<Vec<i64>, PairError> {
        let j = self.col_index(k)?;
        Ok(self.entries.iter().map(|r| r[j]).collect())
    }

    /// The `n × n` submatrix on rows `ex`, in `ex` order.
    pub fn principal_part(&self) -> Vec<Vec<i64>> {
        self.ex
            .iter()
            .map(|&i| self.entries[i - 1].clone())
            .collect()
    }

    pub fn to_zmat(&self) -> ZMat {
        ZMat::from_rows(self.entries.clone())
    }

    pub fn rank(&self) -> usize {
        zlinalg::rank(&self.to_zmat())
    }

    /// Matrix mutation in direction `k ∈ ex`: negate row and column `k`,
    /// and adjust the rest by `(|b_ik| b_kj + b_ik |b_kj|)/2`.
    pub fn mutate(&self, k: usize) -> Result<Self, PairError> {
        self.col_index(k)?;
        let mut out = self.entries.clone();
        for i in 1..=self.m {
            for (j, &l) in self.ex.iter().enumerate() {
                let b = self.entries[i - 1][j];
                out[i - 1][j] = if i == k || l == k {
                    -b
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, l);
                    b + (bik.abs() * bkj + bik * bkj.abs()) / 2
                };
            }
        }
        Ok(ExchangeMatrix { m: self.m, ex: self.ex.clone(), entries: out })
    }

    /// The involutive matrix `E_ε` attached to direction `k`: identity off
    /// column `k`, `-1` at `(k,k)`, and `max(0, -ε b_{ik})` above/below.
    pub fn e_matrix(&self, k: usize, eps: Sign) -> Result<ZMat, PairError> {
        self.col_index(k)?;
        let mut e = ZMat::identity(self.m);
        for i in 1..=self.m {
            e[(i - 1, k - 1)] = if i == k {
                -1
            } else {
                0.max(-eps.val() * self.get(i, k))
            };
        }
        Ok(e)
    }

    /// The involutive matrix `F_ε`, on `ex × ex`: identity off row `k`,
    /// `-1` at `(k,k)`, and `max(0, ε b_{kj})` along the row.
    pub fn f_matrix(&self, k: usize, eps: Sign) -> Result<ZMat, PairError> {
        let kpos = self.col_index(k)?;
        let n = self.n();
        let mut f = ZMat::identity(n);
        for (j, &l) in self.ex.iter().enumerate() {
            f[(kpos, j)] = if j == kpos {
                -1
            } else {
                0.max(eps.val() * self.get(k, l))
            };
        }
        Ok(f)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "n": self.n(),
            "ex": self.ex,
            "b": int_matrix_to_json(&self.entries),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, PairError> {
        let m = v["m"]
            .as_u64()
            .ok_or_else(|| PairError::BadShape("missing m".into()))? as usize;
        if let Some(n) = v.get("n").and_then(|x| x.as_u64()) {
            let ex_len = v["ex"].as_array().map_or(0, |a| a.len());
            if n as usize != ex_len {
                return Err(PairError::BadShape(format!(
                    "n = {n} disagrees with {ex_len} column labels"
                )));
            }
        }
        let ex: Vec<usize> = v["ex"]
            .as_array()
            .ok_or_else(|| PairError::BadShape("missing ex".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| PairError::BadShape("ex labels must be positive integers".into()))
            })
            .collect::<Result<_, _>>()?;
        let entries = int_matrix_from_json(&v["b"]).map_err(PairError::Torus)?;
        Self::new(m, ex, entries)
    }
}

/// Minimal positive diagonal `d` with `diag(d) · B` skew-symmetric, if one
/// exists. Entries are normalized per connected component of the nonzero
/// pattern graph.
pub fn is_skew_symmetrizable(b: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = b.len();
    if b.iter().any(|r| r.len() != n) {
        return None;
    }
    for i in 0..n {
        if b[i][i] != 0 {
            return None;
        }
        for j in 0..n {
            if (b[i][j] == 0) != (b[j][i] == 0) {
                return None;
            }
            if b[i][j] * b[j][i] > 0 {
                return None;
            }
        }
    }
    // Propagate d along edges as positive rationals d_i = num/den.
    let mut frac: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for root in 0..n {
        if frac[root].is_some() {
            continue;
        }
        frac[root] = Some((1, 1));
        let mut comp = vec![root];
        let mut queue = vec![root];
        while let Some(i) = queue.pop() {
            let (ni, di) = frac[i].unwrap();
            for j in 0..n {
                if b[i][j] == 0 {
                    continue;
                }
                // d_i b_ij = -d_j b_ji  =>  d_j = d_i * b_ij / (-b_ji)
                let mut nj = ni * b[i][j];
                let mut dj = di * -b[j][i];
                if dj < 0 {
                    nj = -nj;
                    dj = -dj;
                }
                let g = nj.gcd(&dj);
                nj /= g;
                dj /= g;
                match frac[j] {
                    None => {
                        frac[j] = Some((nj, dj));
                        comp.push(j);
                        queue.push(j);
                    }
                    Some(existing) => {
                        if existing != (nj, dj) {
                            return None;
                        }
                    }
                }
            }
        }
        components.push(comp);
    }
    let mut d = vec![0i64; n];
    for comp in components {
        let lcm_den = comp.iter().fold(1i64, |acc, &i| acc.lcm(&frac[i].unwrap().1));
        let scaled: Vec<i64> = comp
            .iter()
            .map(|&i| {
                let (num, den) = frac[i].unwrap();
                num * (lcm_den / den)
            })
            .collect();
        let g = scaled.iter().fold(0i64, |acc, &v| acc.gcd(&v));
        for (&i, &v) in comp.iter().zip(&scaled) {
            d[i] = v / g;
        }
    }
    if d.iter().any(|&v| v <= 0) {
        return None;
    }
    Some(d)
}

/// A compatible pair: a skew-symmetric `Λ` and an exchange matrix `B̃` with
/// `B̃^T Λ = (D | 0)`, `D` a positive diagonal on the exchangeable block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatiblePair {
    lambda: SkewForm,
    btilde: ExchangeMatrix,
    /// `d[j]` for each `j ∈ ex`, aligned with `btilde.ex()`.
    d: Vec<i64>,
}

impl CompatiblePair {
    pub fn lambda(&self) -> &SkewForm {
        &self.lambda
    }

    pub fn btilde(&self) -> &ExchangeMatrix {
        &self.btilde
    }

    pub fn m(&self) -> usize {
        self.btilde.rows()
    }

    pub fn ex(&self) -> &[usize] {
        self.btilde.ex()
    }

    /// The compatibility diagonal entry for label `k ∈ ex`.
    pub fn d_of(&self, k: usize) -> Result<i64, PairError> {
        let j = self.btilde.col_index(k)?;
        Ok(self.d[j])
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    /// Mutation in direction `k`: `Λ' = E_ε^T Λ E_ε`, `B̃' = μ_k(B̃)`.
    /// The result is compatible with the same diagonal, for either sign.
    pub fn mutate(&self, k: usize, eps: Sign) -> Result<Self, PairError> {
        let e = self.btilde.e_matrix(k, eps)?;
        let lambda = e.transpose().mul(&self.lambda.to_zmat()).mul(&e);
        let btilde = self.btilde.mutate(k)?;
        let lambda = SkewForm::new(lambda.to_rows())?;
        let out = check_compatible(lambda, btilde)?;
        debug_assert_eq!(out.d, self.d, "mutation must preserve the diagonal");
        Ok(out)
    }
}

/// Verify `B̃^T Λ = (D | 0)` and extract the positive diagonal.
pub fn check_compatible(
    lambda: SkewForm,
    btilde: ExchangeMatrix,
) -> Result<CompatiblePair, PairError> {
    if lambda.dim() != btilde.rows() {
        return Err(PairError::BadShape(format!(
            "skew form is {}-dimensional but the exchange matrix has {} rows",
            lambda.dim(),
            btilde.rows()
        )));
    }
    let mut d = Vec::with_capacity(btilde.n());
    for &j in btilde.ex() {
        let bj = btilde.column(j)?;
        let row = lambda.pair_row(&bj); // Λ(b^j, e_i) for each i
        for (i0, &value) in row.iter().enumerate() {
            let i = i0 + 1;
            if i == j {
                if value <= 0 {
                    return Err(PairError::NonPositiveD { j, value });
                }
                d.push(value);
            } else if value != 0 {
                return Err(PairError::NotCompatible { j, i, value });
            }
        }
    }
    Ok(CompatiblePair { lambda, btilde, d })
}

/// Mutate a grading matrix: requires `B̃^T Σ = 0`, returns `E_ε^T Σ E_ε`.
pub fn sigma_mutate(
    sigma: &GradingMatrix,
    btilde: &ExchangeMatrix,
    k: usize,
    eps: Sign,
) -> Result<GradingMatrix, PairError> {
    check_graded(sigma, btilde)?;
    let e = btilde.e_matrix(k, eps)?;
    let out = e.transpose().mul(&ZMat::from_rows(sigma.rows().to_vec())).mul(&e);
    Ok(GradingMatrix::new(out.to_rows())?)
}

/// Verify the grading condition `B̃^T Σ = 0`.
pub fn check_graded(sigma: &GradingMatrix, btilde: &ExchangeMatrix) -> Result<(), PairError> {
    if sigma.dim() != btilde.rows() {
        return Err(PairError::BadShape(format!(
            "grading matrix is {}-dimensional but the exchange matrix has {} rows",
            sigma.dim(),
            btilde.rows()
        )));
    }
    for &j in btilde.ex() {
        let bj = btilde.column(j).expect("ex label");
        for i in 1..=btilde.rows() {
            let value: i64 = (0..btilde.rows()).map(|p| bj[p] * sigma.entry(p, i - 1)).sum();
            if value != 0 {
                return Err(PairError::NotGraded { j, i, value });
            }
        }
    }
    Ok(())
}

/// Cycle check of the digraph on `ex` with an edge `i -> j` when
/// `b_{ij} > 0`. Returns `Ok(())` or the vertices of one oriented cycle.
pub fn is_acyclic(btilde: &ExchangeMatrix) -> Result<(), Vec<usize>> {
    let ex = btilde.ex();
    let n = ex.len();
    let b = btilde.principal_part();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();

    fn dfs(
        v: usize,
        b: &[Vec<i64>],
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for w in 0..b.len() {
            if b[v][w] > 0 {
                if state[w] == 1 {
                    let start = stack.iter().position(|&x| x == w).unwrap();
                    return Some(stack[start..].to_vec());
                }
                if state[w] == 0 {
                    if let Some(c) = dfs(w, b, state, stack) {
                        return Some(c);
                    }
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }

    for v in 0..n {
        if state[v] == 0 {
            if let Some(cycle) = dfs(v, &b, &mut state, &mut stack) {
                return Err(cycle.into_iter().map(|i| ex[i]).collect());
            }
        }
    }
    Ok(())
}

/// Search for a skew-symmetric integer `Λ` making `(Λ, B̃)` compatible with
/// the prescribed diagonal `d` (aligned with `ex`). Among integer solutions
/// a greedy descent over the solution lattice minimizes `max|entry|`, then
/// the lexicographic order of the flattened matrix, for deterministic
/// output.
pub fn find_compatible_lambda(
    btilde: &ExchangeMatrix,
    d: &[i64],
) -> Result<SkewForm, PairError> {
    let m = btilde.rows();
    let n = btilde.n();
    if d.len() != n || d.iter().any(|&v| v <= 0) {
        return Err(PairError::BadShape("d must be positive, one entry per ex label".into()));
    }
    let rank = btilde.rank();
    if rank != n {
        return Err(PairError::RankDeficient { rank, n });
    }
    // Unknowns: λ_{ij} for i < j (0-based pairs), row-major.
    let mut index = vec![vec![usize::MAX; m]; m];
    let mut unknowns = 0usize;
    for i in 0..m {
        for j in (i + 1)..m {
            index[i][j] = unknowns;
            unknowns += 1;
        }
    }
    let sign_of = |i: usize, j: usize| -> Option<(usize, i64)> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => Some((index[i][j], 1)),
            Greater => Some((index[j][i], -1)),
            Equal => None,
        }
    };
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<i64> = Vec::new();
    for (jpos, &j) in btilde.ex().iter().enumerate() {
        let bj = btilde.column(j)?;
        for i in 1..=m {
            // Σ_k b_{kj} λ_{ki} = δ_{ij} d_j
            let mut row = vec![0i64; unknowns];
            for (k0, &bk) in bj.iter().enumerate() {
                if bk == 0 {
                    continue;
                }
                if let Some((idx, s)) = sign_of(k0, i - 1) {
                    row[idx] += bk * s;
                }
            }
            rows.push(row);
            rhs.push(if i == j { d[jpos] } else { 0 });
        }
    }
    let a = ZMat::from_rows(rows);
    let x0 = zlinalg::solve(&a, &rhs).ok_or(PairError::NoSolution)?;
    let kernel = zlinalg::kernel_basis(&a);

    let build = |x: &[i64]| -> Vec<Vec<i64>> {
        let mut lam = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in (i + 1)..m {
                lam[i][j] = x[index[i][j]];
                lam[j][i] = -x[index[i][j]];
            }
        }
        lam
    };
    let key = |x: &[i64]| -> (i64, Vec<i64>) {
        let lam = build(x);
        let maxabs = lam.iter().flatten().map(|v| v.abs()).max().unwrap_or(0);
        (maxabs, lam.into_iter().flatten().collect())
    };

    let mut best = x0;
    let mut best_key = key(&best);
    loop {
        let mut improved = false;
        for v in &kernel {
            for s in [1i64, -1] {
                let cand: Vec<i64> = best.iter().zip(v).map(|(a, b)| a + s * b).collect();
                let k = key(&cand);
                if k < best_key {
                    best = cand;
                    best_key = k;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }

    let lambda = SkewForm::new(build(&best))?;
    Ok(lambda)
}

/// JSON for a full pair document `{"m","n","ex","b","lambda","sigma"?}`.
pub fn pair_to_json(pair: &CompatiblePair, sigma: Option<&GradingMatrix>) -> Value {
    let mut v = pair.btilde().to_json();
    v["lambda"] = int_matrix_to_json(pair.lambda().rows());
    if let Some(s) = sigma {
        v["sigma"] = int_matrix_to_json(s.rows());
    }
    v
}

/// Decode `{"m","n","ex","b","lambda"}` and re-verify compatibility.
pub fn pair_from_json(v: &Value) -> Result<(CompatiblePair, Option<GradingMatrix>), PairError> {
    let btilde = ExchangeMatrix::from_json(v)?;
    let lambda = SkewForm::new(int_matrix_from_json(&v["lambda"]).map_err(PairError::Torus)?)?;
    let pair = check_compatible(lambda, btilde)?;
    let sigma = match v.get("sigma") {
        None | Some(Value::Null) => None,
        Some(sv) => {
            let s = GradingMatrix::new(int_matrix_from_json(sv).map_err(PairError::Torus)?)?;
            check_graded(&s, pair.btilde())?;
            Some(s)
        }
    };
    Ok((pair, sigma))
}
