//! Exact computation in quantum cluster algebras.
//!
//! The crate is organized around the objects the quantum theory is built
//! from, bottom up:
//!
//! - [`qcoeff`]: the coefficient ring `Z[q^{±1/2}]` and its fraction field,
//!   with centered Gaussian binomials.
//! - [`qtorus`]: the based quantum torus `T(Λ)` of skew-commuting Laurent
//!   monomials `X^e`, `e ∈ Z^m`, with bar-involutions, gradings, exact left
//!   division, and its center.
//! - [`pairs`]: integer exchange matrices, matrix mutation, compatible
//!   pairs `(Λ, B̃)` and their mutations, gradings `Σ`, and acyclicity.
//! - [`seeds`]: quantum seeds with explicit toric frames, mutation through
//!   the quantum exchange relation, exchange-graph exploration, and the
//!   lower-bound machinery (standard monomials, quasi-commutators).
//! - [`cartan`]: symmetrizable Cartan matrices, formal weight arithmetic
//!   under simple reflections, double words, and the compatible triple
//!   `(Λ(i), B̃(i), Σ(i))` they induce.
//! - [`corpus`] and [`verify`]: deterministic randomized test corpora and
//!   the named property suites the CLI exposes.

pub mod cartan;
pub mod corpus;
pub mod pairs;
pub mod qcoeff;
pub mod qtorus;
pub mod samples;
pub mod seeds;
pub mod verify;
pub mod zlinalg;

/// A sign `ε ∈ {+1, -1}` selecting one of the two equivalent mutation
/// presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn val(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}
