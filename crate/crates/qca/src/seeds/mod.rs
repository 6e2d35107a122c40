//! Quantum seeds: a compatible pair together with an explicit toric frame,
//! i.e. the `m` cluster and frozen variables expanded in the *initial*
//! quantum torus. Mutation replaces one cluster variable through the
//! quantum exchange relation, dividing exactly inside the torus.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::cartan::{self, CartanData, CartanError, DoubleWord};
use crate::pairs::{
    check_graded, pair_from_json, pair_to_json, sigma_mutate, CompatiblePair, PairError,
};
use crate::qcoeff::{gauss_binom, QLaurent};
use crate::qtorus::json::int_matrix_from_json;
use crate::qtorus::{basis_elem, solve_left, GradingMatrix, SkewForm, TorusElement, TorusError};
use crate::Sign;

mod explore;
mod lower;

pub use explore::{
    canonical_key, classical_shadow_size, explore, explore_pair, newton_hull_survives_q1,
    ExchangeGraph,
};
pub use lower::{
    independence_test, prop71_check, standard_monomials, Independence, Prop71Outcome, Window,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedError {
    InvalidDirection(usize),
    /// Exchange-relation division failed. Signals a bug or data corruption:
    /// the Laurent phenomenon guarantees the division succeeds on genuine
    /// seeds.
    LaurentViolation(TorusError),
    /// A multi-term frame entry was raised to a negative power.
    NonInvertibleEntry(usize),
    NotGraded,
    BarViolation(usize),
    DegreeMismatch { index: usize, got: i64, expected: i64 },
    Inhomogeneous { index: usize, degrees: Vec<i64> },
    QuasiCommutationViolation { i: usize, j: usize },
    /// The two factorizations of the exchange product disagree.
    ExchangeInconsistency(usize),
    /// The operation needs a seed whose frame is the initial monomial one.
    InitialSeedRequired,
    /// No normal form of the expected shape exists.
    ShapeViolation(String),
    Pair(PairError),
    Torus(TorusError),
    Cartan(CartanError),
    Json(String),
}

impl fmt::Display for SeedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedError::InvalidDirection(k) => write!(f, "direction {k} is not exchangeable"),
            SeedError::LaurentViolation(e) => write!(f, "Laurent phenomenon violated: {e}"),
            SeedError::NonInvertibleEntry(i) => {
                write!(f, "frame entry {i} is not invertible in the torus")
            }
            SeedError::NotGraded => write!(f, "seed carries no grading"),
            SeedError::BarViolation(i) => write!(f, "frame entry {i} is not bar-invariant"),
            SeedError::DegreeMismatch { index, got, expected } => {
                write!(f, "frame entry {index} has degree {got}, expected {expected}")
            }
            SeedError::Inhomogeneous { index, degrees } => {
                write!(f, "frame entry {index} is inhomogeneous: degrees {degrees:?}")
            }
            SeedError::QuasiCommutationViolation { i, j } => {
                write!(f, "frame entries {i} and {j} do not quasi-commute as required")
            }
            SeedError::ExchangeInconsistency(k) => {
                write!(f, "exchange factorizations disagree in direction {k}")
            }
            SeedError::InitialSeedRequired => write!(f, "operation requires the initial seed"),
            SeedError::ShapeViolation(msg) => write!(f, "no normal form: {msg}"),
            SeedError::Pair(e) => write!(f, "{e}"),
            SeedError::Torus(e) => write!(f, "{e}"),
            SeedError::Cartan(e) => write!(f, "{e}"),
            SeedError::Json(msg) => write!(f, "json: {msg}"),
        }
    }
}

impl std::error::Error for SeedError {}

impl From<PairError> for SeedError {
    fn from(e: PairError) -> Self {
        SeedError::Pair(e)
    }
}

impl From<TorusError> for SeedError {
    fn from(e: TorusError) -> Self {
        SeedError::Torus(e)
    }
}

impl From<CartanError> for SeedError {
    fn from(e: CartanError) -> Self {
        SeedError::Cartan(e)
    }
}

/// A quantum seed. The frame entries are expansions of the current cluster
/// (and frozen) variables in the initial torus; the pair `(Λ, B̃)` and the
/// optional grading `Σ` are the current, mutated ones.
///
/// The mutation history is carried for debugging and edge labeling and
/// never takes part in equality.
#[derive(Clone, Debug)]
pub struct QuantumSeed {
    pair: CompatiblePair,
    initial_form: Arc<SkewForm>,
    initial_sigma: Option<GradingMatrix>,
    frame: Vec<TorusElement>,
    sigma: Option<GradingMatrix>,
    history: Vec<usize>,
}

impl PartialEq for QuantumSeed {
    fn eq(&self, other: &Self) -> bool {
        self.pair == other.pair
            && self.initial_form == other.initial_form
            && self.initial_sigma == other.initial_sigma
            && self.frame == other.frame
            && self.sigma == other.sigma
    }
}

impl Eq for QuantumSeed {}

impl QuantumSeed {
    pub fn pair(&self) -> &CompatiblePair {
        &self.pair
    }

    pub fn m(&self) -> usize {
        self.pair.m()
    }

    pub fn ex(&self) -> &[usize] {
        self.pair.ex()
    }

    pub fn initial_form(&self) -> &Arc<SkewForm> {
        &self.initial_form
    }

    pub fn initial_sigma(&self) -> Option<&GradingMatrix> {
        self.initial_sigma.as_ref()
    }

    pub fn sigma(&self) -> Option<&GradingMatrix> {
        self.sigma.as_ref()
    }

    /// The variable at 1-based index `i`, expanded in the initial torus.
    pub fn frame_entry(&self, i: usize) -> &TorusElement {
        &self.frame[i - 1]
    }

    pub fn frame(&self) -> &[TorusElement] {
        &self.frame
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// True when every frame entry is the plain basis monomial `X^{e_i}`.
    pub fn is_initial(&self) -> bool {
        self.frame.iter().enumerate().all(|(i0, x)| {
            x.as_monomial().map_or(false, |(e, c)| {
                c.is_one() && e.iter().enumerate().all(|(j, &v)| v == (j == i0) as i64)
            })
        })
    }
}

/// The seed whose frame is `X^{e_1}, ..., X^{e_m}` over the pair's own
/// skew form.
pub fn initial_seed(
    pair: CompatiblePair,
    sigma: Option<GradingMatrix>,
) -> Result<QuantumSeed, SeedError> {
    if let Some(s) = &sigma {
        check_graded(s, pair.btilde())?;
    }
    let form = Arc::new(pair.lambda().clone());
    let m = pair.m();
    let frame = (0..m)
        .map(|i| {
            let mut e = vec![0i64; m];
            e[i] = 1;
            basis_elem(&form, &e).expect("basis vector has the right dimension")
        })
        .collect();
    Ok(QuantumSeed {
        pair,
        initial_form: form,
        initial_sigma: sigma.clone(),
        frame,
        sigma,
        history: Vec::new(),
    })
}

impl QuantumSeed {
    /// Evaluate the toric frame at an exponent vector:
    /// `M(c) = q^{(1/2)·Σ_{l<k} c_k c_l λ_{kl}} · frame[1]^{c_1} ··· frame[m]^{c_m}`
    /// with `λ` from the *current* pair. Multi-term entries admit only
    /// nonnegative exponents.
    pub fn frame_eval(&self, c: &[i64]) -> Result<TorusElement, SeedError> {
        let m = self.m();
        if c.len() != m {
            return Err(SeedError::Torus(TorusError::DimensionMismatch {
                expected: m,
                got: c.len(),
            }));
        }
        let lam = self.pair.lambda();
        let mut h = 0i64;
        for k in 1..m {
            for l in 0..k {
                h += c[k] * c[l] * lam.entry(k, l);
            }
        }
        let mut acc = TorusElement::monomial(
            self.initial_form.clone(),
            vec![0; m],
            QLaurent::q_half_pow(h),
        )?;
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let power = self.frame[i].pow(ci).map_err(|e| match e {
                TorusError::NonInvertible => SeedError::NonInvertibleEntry(i + 1),
                other => SeedError::Torus(other),
            })?;
            acc = acc.mul(&power)?;
        }
        Ok(acc)
    }

    /// The exponent `t` with `a·b = q^{t/2}·b·a`, when the two products are
    /// unit-proportional.
    pub fn quasi_commutation_exponent(a: &TorusElement, b: &TorusElement) -> Option<i64> {
        quasi_commutation_exponent(a, b)
    }

    /// Mutation in direction `k ∈ ex`. The new variable is
    /// `solve_left(frame[k], N)` for the two-monomial exchange product `N`,
    /// and the pair and grading mutate alongside. The result is checked:
    /// both factorizations of the exchange product, bar-invariance of the
    /// new variable, quasi-commutation against the mutated `Λ`, and (when
    /// graded) homogeneity of the new variable.
    pub fn mutate(&self, k: usize) -> Result<QuantumSeed, SeedError> {
        if !self.pair.btilde().is_exchangeable(k) {
            return Err(SeedError::InvalidDirection(k));
        }
        let m = self.m();
        let bk = self.pair.btilde().column(k)?;
        let mut v_plus = vec![0i64; m];
        let mut v_minus = vec![0i64; m];
        for (i, &b) in bk.iter().enumerate() {
            if b > 0 {
                v_plus[i] = b;
            } else if b < 0 {
                v_minus[i] = -b;
            }
        }
        let lam = self.pair.lambda();
        let mut e_k = vec![0i64; m];
        e_k[k - 1] = 1;
        let h_plus = lam.eval(&e_k, &v_plus);
        let h_minus = lam.eval(&e_k, &v_minus);
        let m_plus = self.frame_eval(&v_plus)?;
        let m_minus = self.frame_eval(&v_minus)?;
        // X_k · X'_k carries q^{+Λ(e_k,v±)/2}; the reversed product
        // X'_k · X_k carries q^{-Λ(e_k,v±)/2}.
        let n_left = m_plus
            .scale(&QLaurent::q_half_pow(h_plus))
            .add(&m_minus.scale(&QLaurent::q_half_pow(h_minus)))?;
        let n_right = m_plus
            .scale(&QLaurent::q_half_pow(-h_plus))
            .add(&m_minus.scale(&QLaurent::q_half_pow(-h_minus)))?;
        let old_var = &self.frame[k - 1];
        let new_var = solve_left(old_var, &n_left).map_err(SeedError::LaurentViolation)?;
        if new_var.mul(old_var)? != n_right {
            return Err(SeedError::ExchangeInconsistency(k));
        }

        let pair = self.pair.mutate(k, Sign::Plus)?;
        let sigma = match &self.sigma {
            None => None,
            Some(s) => Some(sigma_mutate(s, self.pair.btilde(), k, Sign::Plus)?),
        };
        let mut frame = self.frame.clone();
        frame[k - 1] = new_var;
        let mut history = self.history.clone();
        history.push(k);
        let out = QuantumSeed {
            pair,
            initial_form: self.initial_form.clone(),
            initial_sigma: self.initial_sigma.clone(),
            frame,
            sigma,
            history,
        };
        out.verify_direction(k)?;
        Ok(out)
    }

    /// Re-verify the seed invariants touched by a mutation at `k`: the new
    /// entry is bar-invariant and homogeneous, and quasi-commutes with
    /// every other entry with the mutated exponents.
    fn verify_direction(&self, k: usize) -> Result<(), SeedError> {
        let new_var = &self.frame[k - 1];
        if new_var.bar() != *new_var {
            return Err(SeedError::BarViolation(k));
        }
        let lam = self.pair.lambda();
        for i in 1..=self.m() {
            if i == k {
                continue;
            }
            // X_i X_k = q^{λ_ik} X_k X_i, i.e. a half-exponent of 2λ_ik
            let t = quasi_commutation_exponent(&self.frame[i - 1], new_var);
            if t != Some(2 * lam.entry(i - 1, k - 1)) {
                return Err(SeedError::QuasiCommutationViolation { i, j: k });
            }
        }
        if let (Some(init_sigma), Some(cur_sigma)) = (&self.initial_sigma, &self.sigma) {
            let mut e_k = vec![0i64; self.m()];
            e_k[k - 1] = 1;
            let expected = cur_sigma.quad(&e_k);
            match new_var.deg_sigma(init_sigma) {
                Ok(got) if got == expected => {}
                Ok(got) => {
                    return Err(SeedError::DegreeMismatch { index: k, got, expected })
                }
                Err(TorusError::Inhomogeneous(degrees)) => {
                    return Err(SeedError::Inhomogeneous { index: k, degrees })
                }
                Err(e) => return Err(SeedError::Torus(e)),
            }
        }
        Ok(())
    }

    /// Apply a sequence of mutations left to right.
    pub fn mutate_seq(&self, ks: &[usize]) -> Result<QuantumSeed, SeedError> {
        let mut s = self.clone();
        for &k in ks {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// The mutated frame map evaluated through the binomial expansion
    ///
    /// `M'(c) = Σ_{p=0}^{c_k} binom(c_k,p)_{q^{d_k/2}} M(E_ε c + ε p b^k)`,
    ///
    /// for either sign. Defined whenever the frame evaluations exist (in
    /// particular for monomial frames); used to cross-check mutation
    /// against the sign-independent presentation.
    pub fn frame_map_mutated(
        &self,
        k: usize,
        eps: Sign,
        c: &[i64],
    ) -> Result<TorusElement, SeedError> {
        if !self.pair.btilde().is_exchangeable(k) {
            return Err(SeedError::InvalidDirection(k));
        }
        let m = self.m();
        if c.len() != m {
            return Err(SeedError::Torus(TorusError::DimensionMismatch {
                expected: m,
                got: c.len(),
            }));
        }
        let ck = c[k - 1];
        if ck < 0 {
            return Err(SeedError::ShapeViolation(
                "binomial route needs a nonnegative mutation coordinate".into(),
            ));
        }
        let bk = self.pair.btilde().column(k)?;
        let e = self.pair.btilde().e_matrix(k, eps)?;
        let ec = e.mul_vec(c);
        let dk = self.pair.d_of(k)?;
        let mut acc = TorusElement::zero(self.initial_form.clone());
        for p in 0..=ck {
            let exp: Vec<i64> = ec
                .iter()
                .zip(&bk)
                .map(|(x, b)| x + eps.val() * p * b)
                .collect();
            let term = self.frame_eval(&exp)?;
            acc = acc.add(&term.scale(&gauss_binom(ck as u32, p, dk)))?;
        }
        Ok(acc)
    }
}

/// The exponent `t` with `a·b = q^{t/2}·b·a`, if the products are
/// proportional by a unit; `None` otherwise (including zero inputs).
pub fn quasi_commutation_exponent(a: &TorusElement, b: &TorusElement) -> Option<i64> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let ab = a.mul(b).ok()?;
    let ba = b.mul(a).ok()?;
    let (e, c_ab) = ab.iter().next()?;
    let c_ba = ba.coeff(e);
    if c_ba.is_zero() || c_ab.num_terms() != c_ba.num_terms() {
        return None;
    }
    let t = c_ab.min_half_exp()? - c_ba.min_half_exp()?;
    if ab == ba.scale(&QLaurent::q_half_pow(t)) {
        Some(t)
    } else {
        None
    }
}

/// Assert that every frame entry is invariant under the initial
/// bar-involution.
pub fn bar_check(seed: &QuantumSeed) -> Result<(), SeedError> {
    for i in 1..=seed.m() {
        let x = seed.frame_entry(i);
        if x.bar() != *x {
            return Err(SeedError::BarViolation(i));
        }
    }
    Ok(())
}

/// For a graded seed, check that every frame entry is homogeneous for the
/// *initial* grading with degree `Σ_current(e_i, e_i)`; returns the
/// degrees.
pub fn grading_check(seed: &QuantumSeed) -> Result<Vec<i64>, SeedError> {
    let (init_sigma, cur_sigma) = match (seed.initial_sigma(), seed.sigma()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(SeedError::NotGraded),
    };
    let m = seed.m();
    let mut degrees = Vec::with_capacity(m);
    for i in 1..=m {
        let mut e_i = vec![0i64; m];
        e_i[i - 1] = 1;
        let expected = cur_sigma.quad(&e_i);
        match seed.frame_entry(i).deg_sigma(init_sigma) {
            Ok(got) if got == expected => degrees.push(got),
            Ok(got) => return Err(SeedError::DegreeMismatch { index: i, got, expected }),
            Err(TorusError::Inhomogeneous(ds)) => {
                return Err(SeedError::Inhomogeneous { index: i, degrees: ds })
            }
            Err(e) => return Err(SeedError::Torus(e)),
        }
    }
    Ok(degrees)
}

/// Build the graded initial seed attached to a Cartan matrix and a double
/// word, after verifying the defining identities.
pub fn seed_from_cartan(cd: &CartanData, dw: &DoubleWord) -> Result<QuantumSeed, SeedError> {
    let triple = cartan::verify_theorem_identities(cd, dw)?;
    initial_seed(triple.pair, Some(triple.sigma))
}

impl QuantumSeed {
    pub fn to_json(&self) -> Value {
        json!({
            "pair": pair_to_json(&self.pair, self.sigma.as_ref()),
            "initial_lambda": crate::qtorus::json::int_matrix_to_json(self.initial_form.rows()),
            "initial_sigma": match &self.initial_sigma {
                Some(s) => crate::qtorus::json::int_matrix_to_json(s.rows()),
                None => Value::Null,
            },
            "frame": Value::Array(self.frame.iter().map(|x| x.terms_to_json()).collect()),
            "history": self.history,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, SeedError> {
        let (pair, sigma) = pair_from_json(&v["pair"])?;
        let initial_form = Arc::new(SkewForm::new(
            int_matrix_from_json(&v["initial_lambda"]).map_err(SeedError::Torus)?,
        )?);
        let initial_sigma = match v.get("initial_sigma") {
            None | Some(Value::Null) => None,
            Some(sv) => Some(GradingMatrix::new(
                int_matrix_from_json(sv).map_err(SeedError::Torus)?,
            )?),
        };
        let frame_arr = v["frame"]
            .as_array()
            .ok_or_else(|| SeedError::Json("missing frame".into()))?;
        if frame_arr.len() != pair.m() {
            return Err(SeedError::Json(format!(
                "frame must have {} entries, found {}",
                pair.m(),
                frame_arr.len()
            )));
        }
        let frame = frame_arr
            .iter()
            .map(|t| TorusElement::from_json_terms(t, &initial_form))
            .collect::<Result<Vec<_>, _>>()?;
        let history = match v.get("history") {
            None | Some(Value::Null) => Vec::new(),
            Some(h) => h
                .as_array()
                .ok_or_else(|| SeedError::Json("history must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|u| u as usize)
                        .ok_or_else(|| SeedError::Json("history entries must be indices".into()))
                })
                .collect::<Result<_, _>>()?,
        };
        Ok(QuantumSeed {
            pair,
            initial_form,
            initial_sigma,
            frame,
            sigma,
            history,
        })
    }
}
