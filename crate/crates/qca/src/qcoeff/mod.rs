//! Exact arithmetic in `Z[q^{±1/2}]`, the ring of integer Laurent
//! polynomials in a square root of the quantum parameter `q`.
//!
//! Every exponent is stored as an integer number of *half* steps, so the
//! monomial `q^{h/2}` is represented by the key `h`. This keeps all the
//! structure constants of the quantum torus integral.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub mod binomial;
pub mod rational;

pub use binomial::gauss_binom;
pub use rational::QRational;

/// Errors from coefficient-ring operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    DivisionByZero,
    Parse(String),
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::DivisionByZero => write!(f, "division by zero"),
            CoeffError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for CoeffError {}

/// An integer Laurent polynomial in `q^{1/2}`.
///
/// The map sends a half-exponent `h` (meaning `q^{h/2}`) to its integer
/// coefficient. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::term(0, BigInt::one())
    }

    /// The monomial `c * q^{h/2}`.
    pub fn term(h: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(h, c);
        }
        QLaurent { terms }
    }

    /// The unit `q^{h/2}`.
    pub fn q_half_pow(h: i64) -> Self {
        Self::term(h, 1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::term(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// `Some((h, c))` if this is the single monomial `c * q^{h/2}`.
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            let (h, c) = self.terms.iter().next().unwrap();
            Some((*h, c))
        } else {
            None
        }
    }

    /// `Some(h)` if this is `+q^{h/2}` or `-q^{h/2}`, i.e. a unit.
    pub fn as_unit(&self) -> Option<(i64, bool)> {
        self.as_monomial().and_then(|(h, c)| {
            if c.magnitude().is_one() {
                Some((h, c.is_negative()))
            } else {
                None
            }
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(h, c)| (*h, c))
    }

    pub fn coeff(&self, h: i64) -> BigInt {
        self.terms.get(&h).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_add(terms: &mut BTreeMap<i64, BigInt>, h: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(h) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (h, c) in &other.terms {
            Self::insert_add(&mut terms, *h, c.clone());
        }
        QLaurent { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (h, c) in &other.terms {
            Self::insert_add(&mut terms, *h, -c.clone());
        }
        QLaurent { terms }
    }

    pub fn neg(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(h, c)| (*h, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ha, ca) in &self.terms {
            for (hb, cb) in &other.terms {
                Self::insert_add(&mut terms, ha + hb, ca * cb);
            }
        }
        QLaurent { terms }
    }

    /// Multiply by the unit `q^{h/2}`.
    pub fn shifted(&self, h: i64) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(k, c)| (k + h, c.clone())).collect(),
        }
    }

    /// The bar-involution on coefficients: `q^{1/2} -> q^{-1/2}`.
    pub fn bar(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(h, c)| (-h, c.clone())).collect(),
        }
    }

    /// Specialization at `q = 1` (the sum of all coefficients).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact division: `Some(c)` with `self = d * c`, or `None` if no such
    /// quotient exists over the integers.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        let (dh, dc) = {
            let (h, c) = d.terms.iter().next_back().unwrap();
            (*h, c.clone())
        };
        while !rem.is_zero() {
            let (rh, rc) = {
                let (h, c) = rem.terms.iter().next_back().unwrap();
                (*h, c.clone())
            };
            if &rc % &dc != BigInt::zero() {
                return None;
            }
            let qh = rh - dh;
            let qc = rc / &dc;
            // Bound the loop: the quotient's lowest exponent cannot drop
            // below min(self) - min(d).
            let low_bound = self.min_half_exp().unwrap() - d.min_half_exp().unwrap();
            if qh < low_bound {
                return None;
            }
            rem = rem.sub(&d.mul(&Self::term(qh, qc.clone())));
            quot.insert(qh, qc);
        }
        Some(QLaurent { terms: quot })
    }

    fn fmt_term(f: &mut fmt::Formatter<'_>, h: i64, c: &BigInt) -> fmt::Result {
        let a = c.magnitude();
        if h == 0 {
            return write!(f, "{a}");
        }
        if !a.is_one() {
            write!(f, "{a}*")?;
        }
        if h % 2 == 0 {
            let e = h / 2;
            if e == 1 {
                write!(f, "q")
            } else {
                write!(f, "q^{e}")
            }
        } else {
            write!(f, "q^({h}/2)")
        }
    }
}

/// Dispatch operation for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Ring arithmetic dispatched on an operation selector.
pub fn arith(a: &QLaurent, b: &QLaurent, op: RingOp) -> QLaurent {
    match op {
        RingOp::Add => a.add(b),
        RingOp::Sub => a.sub(b),
        RingOp::Mul => a.mul(b),
    }
}

impl std::ops::Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: Self) -> QLaurent {
        QLaurent::add(self, rhs)
    }
}

impl std::ops::Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: Self) -> QLaurent {
        QLaurent::sub(self, rhs)
    }
}

impl std::ops::Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: Self) -> QLaurent {
        QLaurent::mul(self, rhs)
    }
}

impl std::ops::Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent::neg(self)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest power first.
        for (i, (h, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            Self::fmt_term(f, *h, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

impl FromStr for QLaurent {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(CoeffError::Parse("empty input".into()));
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut result = Self::zero();
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut sign = BigInt::one();
        if bytes[0] == b'-' {
            sign = -sign;
            pos = 1;
        } else if bytes[0] == b'+' {
            pos = 1;
        }
        while pos < bytes.len() {
            let (term, next) = parse_term(&s, pos)?;
            result = result.add(&QLaurent::term(term.0, term.1 * &sign));
            pos = next;
            if pos == bytes.len() {
                break;
            }
            match bytes[pos] {
                b'+' => sign = BigInt::one(),
                b'-' => sign = -BigInt::one(),
                c => {
                    return Err(CoeffError::Parse(format!(
                        "expected + or - at byte {pos}, found {:?}",
                        c as char
                    )))
                }
            }
            pos += 1;
        }
        Ok(result)
    }
}

/// Parse one term `[int][*]?[q[^exp]]?` starting at `pos`; returns
/// `((half_exp, coeff), next_pos)`.
fn parse_term(s: &str, pos: usize) -> Result<((i64, BigInt), usize), CoeffError> {
    let bytes = s.as_bytes();
    let mut p = pos;
    let digits_start = p;
    while p < bytes.len() && bytes[p].is_ascii_digit() {
        p += 1;
    }
    let coeff = if p > digits_start {
        s[digits_start..p]
            .parse::<BigInt>()
            .map_err(|e| CoeffError::Parse(e.to_string()))?
    } else {
        BigInt::one()
    };
    if p < bytes.len() && bytes[p] == b'*' {
        p += 1;
    }
    if p >= bytes.len() || bytes[p] != b'q' {
        if p == digits_start {
            return Err(CoeffError::Parse(format!("expected term at byte {pos}")));
        }
        return Ok(((0, coeff), p));
    }
    p += 1; // consume 'q'
    if p >= bytes.len() || bytes[p] != b'^' {
        return Ok(((2, coeff), p));
    }
    p += 1; // consume '^'
    if p < bytes.len() && bytes[p] == b'(' {
        // q^(h/2)
        let close = s[p..]
            .find(')')
            .ok_or_else(|| CoeffError::Parse("unclosed parenthesis".into()))?
            + p;
        let inner = &s[p + 1..close];
        let h = inner
            .strip_suffix("/2")
            .ok_or_else(|| CoeffError::Parse(format!("expected h/2 exponent, got {inner:?}")))?
            .parse::<i64>()
            .map_err(|e| CoeffError::Parse(e.to_string()))?;
        Ok(((h, coeff), close + 1))
    } else {
        let exp_start = p;
        if p < bytes.len() && (bytes[p] == b'-' || bytes[p] == b'+') {
            p += 1;
        }
        while p < bytes.len() && bytes[p].is_ascii_digit() {
            p += 1;
        }
        let e = s[exp_start..p]
            .parse::<i64>()
            .map_err(|e| CoeffError::Parse(e.to_string()))?;
        Ok(((2 * e, coeff), p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ql(s: &str) -> QLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn half_power_sum() {
        let a = QLaurent::q_half_pow(1);
        let b = QLaurent::q_half_pow(-1);
        let s = a.add(&b);
        assert_eq!(s, ql("q^(1/2) + q^(-1/2)"));
        assert_eq!(s.coeff(1), BigInt::one());
        assert_eq!(s.coeff(-1), BigInt::one());
    }

    #[test]
    fn difference_of_squares() {
        let a = ql("q^(1/2) - q^(-1/2)");
        let b = ql("q^(1/2) + q^(-1/2)");
        assert_eq!(a.mul(&b), ql("q - q^-1"));
    }

    #[test]
    fn mul_by_zero() {
        let a = ql("1 + q");
        assert!(a.mul(&QLaurent::zero()).is_zero());
    }

    #[test]
    fn bar_negates_half_exponents() {
        assert_eq!(ql("q^(1/2) + 1").bar(), ql("q^(-1/2) + 1"));
        let sym = ql("q + 1 + q^-1");
        assert_eq!(sym.bar(), sym);
    }

    #[test]
    fn exact_division() {
        let n = ql("q - q^-1");
        let d = ql("q^(1/2) - q^(-1/2)");
        assert_eq!(n.exact_div(&d).unwrap(), ql("q^(1/2) + q^(-1/2)"));
        // 1 + q does not divide 1 + q^2 over Z[q^{±1/2}]
        assert!(ql("1 + q^2").exact_div(&ql("1 + q")).is_none());
        assert!(ql("q").exact_div(&ql("2")).is_none());
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "0",
            "1",
            "-1",
            "q",
            "-q^(1/2)",
            "3*q^2 - 2*q + 7",
            "q^(3/2) + q^(-1/2) - 4*q^(-7/2)",
            "1 + 12345678901234567890*q^-5",
        ] {
            let v = ql(s);
            assert_eq!(v.to_string(), s, "canonical rendering of {s}");
            assert_eq!(ql(&v.to_string()), v);
        }
    }

    #[test]
    fn arith_dispatch() {
        let a = ql("q + 1");
        let b = ql("q - 1");
        assert_eq!(arith(&a, &b, RingOp::Add), ql("2*q"));
        assert_eq!(arith(&a, &b, RingOp::Sub), ql("2"));
        assert_eq!(arith(&a, &b, RingOp::Mul), ql("q^2 - 1"));
    }
}
