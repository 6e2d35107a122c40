//! Fractions of Laurent polynomials in `q^{1/2}`, kept in a reduced normal
//! form. These only appear as intermediate values (coefficient division
//! during torus division); results that matter are always checked back into
//! `Z[q^{±1/2}]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{CoeffError, QLaurent};

/// Greatest common divisor in `Z[q^{±1/2}]`, normalized so that the lowest
/// half-exponent is 0 and the leading (highest-power) coefficient is
/// positive. Computed as content times primitive-part gcd, the latter by a
/// primitive pseudo-remainder sequence.
pub fn laurent_gcd(a: &QLaurent, b: &QLaurent) -> QLaurent {
    if a.is_zero() {
        return normalize_unit_free(b);
    }
    if b.is_zero() {
        return normalize_unit_free(a);
    }
    let (ca, pa) = dense_primitive(a);
    let (cb, pb) = dense_primitive(b);
    let content = ca.gcd(&cb);
    let prim = poly_gcd_primitive(pa, pb);
    let mut out = QLaurent::zero();
    for (i, c) in prim.iter().enumerate() {
        out = out.add(&QLaurent::term(i as i64, c * &content));
    }
    out
}

/// Strip the unit factor `±q^{h/2}`: lowest half-exponent becomes 0, leading
/// coefficient positive.
fn normalize_unit_free(a: &QLaurent) -> QLaurent {
    if a.is_zero() {
        return QLaurent::zero();
    }
    let shift = -a.min_half_exp().unwrap();
    let mut out = a.shifted(shift);
    let lead = out.coeff(out.max_half_exp().unwrap());
    if lead.is_negative() {
        out = out.neg();
    }
    out
}

/// Dense coefficient vector (constant term first) of `a` shifted to lowest
/// exponent 0, split into integer content and primitive part.
fn dense_primitive(a: &QLaurent) -> (BigInt, Vec<BigInt>) {
    let lo = a.min_half_exp().unwrap();
    let hi = a.max_half_exp().unwrap();
    let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
    let mut content = BigInt::zero();
    for (h, c) in a.iter() {
        content = content.gcd(c);
        dense[(h - lo) as usize] = c.clone();
    }
    for c in dense.iter_mut() {
        *c = &*c / &content;
    }
    (content, dense)
}

fn deg(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn make_primitive(p: &mut Vec<BigInt>) {
    let d = match deg(p) {
        Some(d) => d,
        None => {
            p.clear();
            return;
        }
    };
    p.truncate(d + 1);
    let mut content = BigInt::zero();
    for c in p.iter() {
        content = content.gcd(c);
    }
    if p[d].is_negative() {
        content = -content;
    }
    for c in p.iter_mut() {
        *c = &*c / &content;
    }
}

/// Pseudo-remainder of `a` by `b` (both nonzero, deg a >= deg b).
fn pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = deg(b).unwrap();
    let lb = b[db].clone();
    while let Some(da) = deg(&a) {
        if da < db {
            break;
        }
        let la = a[da].clone();
        for c in a.iter_mut() {
            *c = &*c * &lb;
        }
        for j in 0..=db {
            a[da - db + j] = &a[da - db + j] - &la * &b[j];
        }
        a.truncate(da); // the leading entry is now zero
    }
    a
}

/// Gcd of two primitive polynomials over Z, primitive with positive lead.
fn poly_gcd_primitive(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    make_primitive(&mut a);
    make_primitive(&mut b);
    while deg(&b).is_some() {
        let mut r = pseudo_rem(a, &b);
        make_primitive(&mut r);
        a = b;
        b = r;
    }
    a
}

/// A reduced fraction `num / den` of Laurent polynomials in `q^{1/2}`.
///
/// Normal form: numerator and denominator share no non-unit factor, the
/// denominator's lowest half-exponent is 0 and its leading integer
/// coefficient is positive. The ring embeds via `den = 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QRational {
    num: QLaurent,
    den: QLaurent,
}

impl QRational {
    pub fn new(num: QLaurent, den: QLaurent) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: QLaurent, den: QLaurent) -> Self {
        if num.is_zero() {
            return QRational { num, den: QLaurent::one() };
        }
        let g = laurent_gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        // Clear the remaining unit: shift den to start at exponent 0 and
        // make its leading coefficient positive.
        let shift = -den.min_half_exp().unwrap();
        num = num.shifted(shift);
        den = den.shifted(shift);
        if den.coeff(den.max_half_exp().unwrap()).is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QRational { num, den }
    }

    pub fn zero() -> Self {
        QRational { num: QLaurent::zero(), den: QLaurent::one() }
    }

    pub fn one() -> Self {
        QRational { num: QLaurent::one(), den: QLaurent::one() }
    }

    pub fn num(&self) -> &QLaurent {
        &self.num
    }

    pub fn den(&self) -> &QLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the fraction lies in `Z[q^{±1/2}]`.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Extract the underlying Laurent polynomial when integral.
    pub fn to_laurent(&self) -> Option<QLaurent> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::reduced(
            &self.num.mul(&other.den) + &other.num.mul(&self.den),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::reduced(
            &self.num.mul(&other.den) - &other.num.mul(&self.den),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        QRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        if other.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduced(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    /// Divide by the torus structure unit `±q^{h/2}`.
    pub fn div_unit(&self, h: i64, negate: bool) -> Self {
        let num = self.num.shifted(-h);
        QRational {
            num: if negate { num.neg() } else { num },
            den: self.den.clone(),
        }
    }
}

impl From<QLaurent> for QRational {
    fn from(num: QLaurent) -> Self {
        QRational { num, den: QLaurent::one() }
    }
}

impl std::fmt::Display for QRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl std::fmt::Debug for QRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QRational({self})")
    }
}

/// Reduced fraction `a / b`; errors when `b = 0`.
pub fn qrational_divide(a: &QLaurent, b: &QLaurent) -> Result<QRational, CoeffError> {
    QRational::new(a.clone(), b.clone())
}
