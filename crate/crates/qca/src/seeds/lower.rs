//! Lower-bound machinery over an initial seed: the normal form of
//! quasi-commutators of adjacent cluster variables, standard monomials,
//! and windowed linear-independence testing over the ground ring.

use serde_json::{json, Value};

use super::{QuantumSeed, SeedError};
use crate::qcoeff::{QLaurent, QRational};
use crate::qtorus::{basis_elem, TorusElement};

/// Outcome of the quasi-commutator normal form for a pair of adjacent
/// variables `X'_j, X'_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prop71Outcome {
    /// `X'_j X'_k = q^{r/2} X'_k X'_j` (exactly when `b_jk = 0`).
    QuasiCommute { r: i64 },
    /// `X'_j X'_k - q^{r/2} X'_k X'_j = (q^{s/2} - q^{t/2}) X^e` with
    /// `e ∈ Z^m_{≥0}`, after possibly swapping the pair into the
    /// orientation with `b_jk < 0` (recorded in `swapped`).
    NormalForm { r: i64, s: i64, t: i64, e: Vec<i64>, swapped: bool },
}

impl Prop71Outcome {
    pub fn to_json(&self) -> Value {
        match self {
            Prop71Outcome::QuasiCommute { r } => json!({"quasi_commute": true, "r": r}),
            Prop71Outcome::NormalForm { r, s, t, e, swapped } => json!({
                "quasi_commute": false,
                "r": r, "s": s, "t": t, "e": e, "swapped": swapped,
            }),
        }
    }
}

/// The adjacent variable `X'_t` of an initial seed, as the two-monomial
/// sum `X^{-e_t + v⁺} + X^{-e_t + v⁻}`.
fn adjacent_variable(seed: &QuantumSeed, t: usize) -> Result<(TorusElement, Vec<i64>, Vec<i64>), SeedError> {
    let m = seed.m();
    let bt = seed.pair().btilde().column(t)?;
    let mut plus = vec![0i64; m];
    let mut minus = vec![0i64; m];
    plus[t - 1] = -1;
    minus[t - 1] = -1;
    for (i, &b) in bt.iter().enumerate() {
        if b > 0 {
            plus[i] += b;
        } else if b < 0 {
            minus[i] += -b;
        }
    }
    let x = basis_elem(seed.initial_form(), &plus)?
        .add(&basis_elem(seed.initial_form(), &minus)?)?;
    Ok((x, plus, minus))
}

/// Compute and *verify* the quasi-commutator normal form of `X'_j, X'_k`
/// over an initial seed.
pub fn prop71_check(seed: &QuantumSeed, j: usize, k: usize) -> Result<Prop71Outcome, SeedError> {
    if !seed.is_initial() {
        return Err(SeedError::InitialSeedRequired);
    }
    if j == k {
        return Err(SeedError::ShapeViolation("indices must differ".into()));
    }
    let bt = seed.pair().btilde();
    if !bt.is_exchangeable(j) {
        return Err(SeedError::InvalidDirection(j));
    }
    if !bt.is_exchangeable(k) {
        return Err(SeedError::InvalidDirection(k));
    }
    // Work in the orientation with b_jk <= 0.
    let swapped = bt.get(j, k) > 0;
    let (j, k) = if swapped { (k, j) } else { (j, k) };

    let lam = seed.pair().lambda();
    let bj = bt.column(j)?;
    let bk = bt.column(k)?;
    let (xj, ej_plus, _) = adjacent_variable(seed, j)?;
    let (xk, _, ek_minus) = adjacent_variable(seed, k)?;
    // e'_j = -e_j + v⁺_j carries the X^{e'_j} + X^{e'_j - b^j} presentation;
    // e'_k = -e_k + v⁻_k the X^{e'_k} + X^{e'_k + b^k} one.
    let ej = ej_plus;
    let ek = ek_minus;
    let ej_m_bj: Vec<i64> = ej.iter().zip(&bj).map(|(a, b)| a - b).collect();
    let ek_p_bk: Vec<i64> = ek.iter().zip(&bk).map(|(a, b)| a + b).collect();
    let a = lam.eval(&ej_m_bj, &ek_p_bk);
    let lbb = lam.eval(&bj, &bk);
    // sanity: Λ(b^j, b^k) = d_j b_jk
    debug_assert_eq!(lbb, seed.pair().d_of(j)? * bt.get(j, k));

    let r = 2 * a;
    let s = a - lbb;
    let t = a + lbb;
    let e: Vec<i64> = ej.iter().zip(&ek).map(|(x, y)| x + y).collect();

    // verify: X'_j X'_k - q^{r/2} X'_k X'_j = (q^{s/2} - q^{t/2}) X^e
    let lhs = xj
        .mul(&xk)?
        .sub(&xk.mul(&xj)?.scale(&QLaurent::q_half_pow(r)))?;
    let rhs_coeff = &QLaurent::q_half_pow(s) - &QLaurent::q_half_pow(t);
    let rhs = basis_elem(seed.initial_form(), &e)?.scale(&rhs_coeff);
    if lhs != rhs {
        return Err(SeedError::ShapeViolation(format!(
            "commutator of adjacent variables at ({j},{k}) has unexpected shape"
        )));
    }
    if bt.get(j, k) == 0 {
        return Ok(Prop71Outcome::QuasiCommute { r });
    }
    if e.iter().any(|&x| x < 0) {
        return Err(SeedError::ShapeViolation(format!(
            "witness exponent {e:?} leaves the nonnegative cone"
        )));
    }
    Ok(Prop71Outcome::NormalForm { r, s, t, e, swapped })
}

/// All standard monomials
/// `X_1^{a_1}···X_n^{a_n}(X'_1)^{a'_1}···(X'_n)^{a'_n}` with exponents in
/// `[0, bound]` and `a_i a'_i = 0`, expanded in the initial torus, in the
/// written order (cluster part first, primed part second, both by
/// ascending exchangeable label).
pub fn standard_monomials(
    seed: &QuantumSeed,
    bound: u32,
) -> Result<Vec<TorusElement>, SeedError> {
    if !seed.is_initial() {
        return Err(SeedError::InitialSeedRequired);
    }
    let ex = seed.ex().to_vec();
    let primed: Vec<TorusElement> = ex
        .iter()
        .map(|&t| adjacent_variable(seed, t).map(|(x, _, _)| x))
        .collect::<Result<_, _>>()?;
    // per-index exponent choices (a, a') with a·a' = 0
    let mut choices: Vec<(u32, u32)> = vec![(0, 0)];
    for a in 1..=bound {
        choices.push((a, 0));
        choices.push((0, a));
    }
    let mut out = Vec::new();
    let n = ex.len();
    let mut stack: Vec<usize> = vec![0; n];
    loop {
        let mut acc = TorusElement::one(seed.initial_form().clone());
        // cluster part
        for (pos, &t) in ex.iter().enumerate() {
            let (a, _) = choices[stack[pos]];
            if a > 0 {
                acc = acc.mul(&seed.frame_entry(t).pow(a as i64)?)?;
            }
        }
        // primed part
        for (pos, x) in primed.iter().enumerate() {
            let (_, ap) = choices[stack[pos]];
            if ap > 0 {
                acc = acc.mul(&x.pow(ap as i64)?)?;
            }
        }
        out.push(acc);
        // odometer
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out);
            }
            stack[pos] += 1;
            if stack[pos] < choices.len() {
                break;
            }
            stack[pos] = 0;
            pos += 1;
        }
    }
}

/// A finite window of ground-ring monomials: exponent vectors supported on
/// the frozen coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    vectors: Vec<Vec<i64>>,
}

impl Window {
    /// The zero window: coefficients in `Z[q^{±1/2}]` only.
    pub fn zero(m: usize) -> Self {
        Window { vectors: vec![vec![0; m]] }
    }

    /// A box `lo..=hi` in each listed frozen coordinate (1-based indices).
    pub fn frozen_box(m: usize, frozen: &[usize], lo: i64, hi: i64) -> Self {
        let mut vectors = vec![vec![0i64; m]];
        for &i in frozen {
            let mut next = Vec::new();
            for v in &vectors {
                for val in lo..=hi {
                    let mut w = v.clone();
                    w[i - 1] = val;
                    next.push(w);
                }
            }
            vectors = next;
        }
        Window { vectors }
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }
}

/// Verdict of the windowed independence test.
#[derive(Clone, Debug)]
pub enum Independence {
    /// No relation with coefficients drawn from the window exists. A larger
    /// window could still reveal one; the verdict is relative.
    IndependentWithinWindow,
    /// A nontrivial relation `Σ p_i · mons_i = 0`; the witness lists the
    /// ground-ring coefficients `p_i` as torus elements.
    Dependent { witness: Vec<TorusElement> },
}

/// Decide whether the given monomials admit a nontrivial left linear
/// relation with coefficients of the form
/// `Σ_{w ∈ window} c_w X^w`, `c_w ∈ Z[q^{±1/2}]`, by exact elimination
/// over the fraction field.
pub fn independence_test(
    mons: &[TorusElement],
    window: &Window,
) -> Result<Independence, SeedError> {
    if mons.is_empty() {
        return Ok(Independence::IndependentWithinWindow);
    }
    let form = mons[0].form().clone();
    // columns: (monomial index, window vector index)
    let mut columns: Vec<TorusElement> = Vec::new();
    let mut labels: Vec<(usize, usize)> = Vec::new();
    for (i, mon) in mons.iter().enumerate() {
        for (wi, w) in window.vectors().iter().enumerate() {
            let xw = basis_elem(&form, w)?;
            columns.push(xw.mul(mon)?);
            labels.push((i, wi));
        }
    }
    // rows: torus basis exponents in the union of supports
    let mut support: Vec<Vec<i64>> = Vec::new();
    for col in &columns {
        for (e, _) in col.iter() {
            if !support.contains(e) {
                support.push(e.clone());
            }
        }
    }
    support.sort();
    let ncols = columns.len();
    let mut matrix: Vec<Vec<QRational>> = support
        .iter()
        .map(|e| {
            columns
                .iter()
                .map(|col| QRational::from(col.coeff(e)))
                .collect()
        })
        .collect();

    // exact Gaussian elimination, tracking pivot columns
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0usize;
    for col in 0..ncols {
        let pivot = (row..matrix.len()).find(|&r| !matrix[r][col].is_zero());
        let Some(p) = pivot else { continue };
        matrix.swap(row, p);
        let inv = QRational::one().div(&matrix[row][col].clone()).expect("pivot nonzero");
        for c in 0..ncols {
            matrix[row][c] = matrix[row][c].mul(&inv);
        }
        for r in 0..matrix.len() {
            if r != row && !matrix[r][col].is_zero() {
                let f = matrix[r][col].clone();
                for c in 0..ncols {
                    let delta = f.mul(&matrix[row][c]);
                    matrix[r][c] = matrix[r][c].sub(&delta);
                }
            }
        }
        pivot_of_col[col] = Some(row);
        pivot_rows.push((row, col));
        row += 1;
        if row == matrix.len() {
            break;
        }
    }
    let free_col = (0..ncols).find(|&c| pivot_of_col[c].is_none());
    let Some(free) = free_col else {
        return Ok(Independence::IndependentWithinWindow);
    };
    // kernel vector: free column = 1, pivots read off the eliminated matrix
    let mut kernel: Vec<QRational> = vec![QRational::zero(); ncols];
    kernel[free] = QRational::one();
    for &(r, c) in &pivot_rows {
        kernel[c] = matrix[r][free].neg();
    }
    // clear denominators
    let mut scale = QLaurent::one();
    for k in &kernel {
        if !k.is_zero() {
            let den = k.den();
            let g = crate::qcoeff::rational::laurent_gcd(&scale, den);
            scale = scale.mul(&den.exact_div(&g).expect("gcd divides"));
        }
    }
    let mut witness: Vec<TorusElement> = Vec::new();
    for i in 0..mons.len() {
        let mut p = TorusElement::zero(form.clone());
        for (wi, w) in window.vectors().iter().enumerate() {
            let idx = labels.iter().position(|&l| l == (i, wi)).unwrap();
            let coeff = kernel[idx]
                .mul(&QRational::from(scale.clone()))
                .to_laurent()
                .expect("denominators cleared");
            if !coeff.is_zero() {
                p = p.add(&TorusElement::monomial(form.clone(), w.clone(), coeff)?)?;
            }
        }
        witness.push(p);
    }
    // verify the relation before reporting it
    let mut total = TorusElement::zero(form.clone());
    for (p, mon) in witness.iter().zip(mons) {
        total = total.add(&p.mul(mon)?)?;
    }
    if !total.is_zero() {
        return Err(SeedError::ShapeViolation("kernel vector fails re-verification".into()));
    }
    Ok(Independence::Dependent { witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::{check_compatible, find_compatible_lambda, ExchangeMatrix};
    use crate::samples;
    use crate::seeds::initial_seed;

    fn rank2_seed(b: i64, c: i64) -> QuantumSeed {
        initial_seed(samples::rank2_pair(b, c), None).unwrap()
    }

    #[test]
    fn rank2_normal_form_is_constant() {
        let seed = rank2_seed(1, 1);
        // b_12 = 1 > 0, so the pair swaps into (2,1) orientation where the
        // witness exponent is (−b_21−1, b_12−1) = (0, 0)
        match prop71_check(&seed, 1, 2).unwrap() {
            Prop71Outcome::NormalForm { e, swapped, .. } => {
                assert_eq!(e, vec![0, 0]);
                assert!(swapped);
            }
            other => panic!("expected a normal form, got {other:?}"),
        }
    }

    #[test]
    fn quasi_commute_iff_orthogonal() {
        // two disconnected copies: b_jk = 0 between them
        let bt = ExchangeMatrix::new(
            4,
            vec![1, 2],
            vec![vec![0, 0], vec![0, 0], vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let lam = find_compatible_lambda(&bt, &[1, 1]).unwrap();
        let pair = check_compatible(lam, bt).unwrap();
        let seed = initial_seed(pair, None).unwrap();
        match prop71_check(&seed, 1, 2).unwrap() {
            Prop71Outcome::QuasiCommute { .. } => {}
            other => panic!("expected quasi-commutation, got {other:?}"),
        }
    }

    #[test]
    fn sl3_pairs_all_take_shape() {
        let seed = initial_seed(samples::sl3_pair(), Some(samples::sl3_sigma())).unwrap();
        for &j in seed.ex() {
            for &k in seed.ex() {
                if j == k {
                    continue;
                }
                let outcome = prop71_check(&seed, j, k).unwrap();
                let b_jk = seed.pair().btilde().get(j, k);
                match outcome {
                    Prop71Outcome::QuasiCommute { .. } => assert_eq!(b_jk, 0),
                    Prop71Outcome::NormalForm { e, .. } => {
                        assert_ne!(b_jk, 0);
                        assert!(e.iter().all(|&x| x >= 0));
                    }
                }
            }
        }
    }

    #[test]
    fn non_initial_seed_is_rejected() {
        let seed = rank2_seed(1, 1).mutate(1).unwrap();
        assert_eq!(prop71_check(&seed, 1, 2).unwrap_err(), SeedError::InitialSeedRequired);
        assert_eq!(standard_monomials(&seed, 1).unwrap_err(), SeedError::InitialSeedRequired);
    }

    #[test]
    fn standard_monomial_enumeration() {
        let seed = rank2_seed(1, 1);
        assert_eq!(standard_monomials(&seed, 0).unwrap().len(), 1);
        // per index: (0,0),(1,0),(0,1) -> 3 choices each, 9 total
        let mons = standard_monomials(&seed, 1).unwrap();
        assert_eq!(mons.len(), 9);
        assert!(mons[0].is_one());
        // bound 2: 5 choices per index
        assert_eq!(standard_monomials(&seed, 2).unwrap().len(), 25);
    }

    #[test]
    fn duplicate_monomials_are_dependent() {
        let seed = rank2_seed(1, 1);
        let x = seed.frame_entry(1).clone();
        let verdict = independence_test(&[x.clone(), x], &Window::zero(2)).unwrap();
        match verdict {
            Independence::Dependent { witness } => {
                assert_eq!(witness.len(), 2);
                assert!(!witness[0].is_zero() || !witness[1].is_zero());
            }
            _ => panic!("equal monomials must be dependent"),
        }
    }

    #[test]
    fn acyclic_standard_monomials_independent() {
        let seed = rank2_seed(1, 1);
        let mons = standard_monomials(&seed, 1).unwrap();
        match independence_test(&mons, &Window::zero(2)).unwrap() {
            Independence::IndependentWithinWindow => {}
            _ => panic!("bound-1 standard monomials of an acyclic seed are independent"),
        }
    }

    #[test]
    fn cyclic_seed_independence_is_exploratory() {
        // A full-rank extension of the oriented 3-cycle: dependence of the
        // standard monomials is expected over the full ground ring, but a
        // finite window may miss the relation, so the verdict is only
        // printed, not asserted.
        let entries = vec![
            vec![0, 1, -1],
            vec![-1, 0, 1],
            vec![1, -1, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ];
        let bt = ExchangeMatrix::new(6, vec![1, 2, 3], entries).unwrap();
        let lam = find_compatible_lambda(&bt, &[1, 1, 1])
            .or_else(|_| find_compatible_lambda(&bt, &[2, 2, 2]))
            .unwrap();
        let pair = check_compatible(lam, bt).unwrap();
        assert!(crate::pairs::is_acyclic(pair.btilde()).is_err(), "seed is cyclic");
        let seed = initial_seed(pair, None).unwrap();
        let mons = standard_monomials(&seed, 1).unwrap();
        let window = Window::frozen_box(6, &[4], 0, 1);
        match independence_test(&mons, &window).unwrap() {
            Independence::IndependentWithinWindow => {
                println!("cyclic seed: independent within the probed window");
            }
            Independence::Dependent { witness } => {
                println!("cyclic seed: dependent, witness found");
                assert_eq!(witness.len(), mons.len());
            }
        }
    }

    #[test]
    fn window_enumeration() {
        let w = Window::frozen_box(4, &[3, 4], -1, 1);
        assert_eq!(w.vectors().len(), 9);
        assert!(w.vectors().iter().all(|v| v[0] == 0 && v[1] == 0));
        let z = Window::zero(3);
        assert_eq!(z.vectors(), &[vec![0, 0, 0]]);
    }
}
