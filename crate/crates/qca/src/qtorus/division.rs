//! Exact left division in the quantum torus.

use std::collections::BTreeMap;

use crate::qcoeff::{QLaurent, QRational};

use super::{TorusElement, TorusError};

/// Solve `a · x = n` exactly in the torus.
///
/// The divisor's lex-maximal term is cancelled against the lex-maximal
/// remainder term; coefficient division happens in the fraction field and
/// every quotient coefficient must come back integral. Laurent supports are
/// unbounded below, so termination is forced geometrically: any exact
/// quotient exponent must lie in the box `hull(supp n) - maxterm(a)`
/// expanded by the width of `hull(supp a)`, and a step leaving that box
/// aborts the division.
pub fn solve_left(a: &TorusElement, n: &TorusElement) -> Result<TorusElement, TorusError> {
    if a.is_zero() {
        return Err(TorusError::ZeroDivisor);
    }
    if !std::sync::Arc::ptr_eq(a.form(), n.form()) && a.form() != n.form() {
        return Err(TorusError::FormMismatch);
    }
    let form = a.form().clone();
    let m = form.dim();
    if n.is_zero() {
        return Ok(TorusElement::zero(form));
    }

    let (alpha, lead_coeff) = {
        let (e, c) = a.iter().next_back().unwrap();
        (e.clone(), c.clone())
    };

    // Component-wise bounding box for quotient exponents.
    let mut lo = vec![i64::MAX; m];
    let mut hi = vec![i64::MIN; m];
    for (e, _) in n.iter() {
        for i in 0..m {
            lo[i] = lo[i].min(e[i]);
            hi[i] = hi[i].max(e[i]);
        }
    }
    let mut a_lo = vec![i64::MAX; m];
    let mut a_hi = vec![i64::MIN; m];
    for (e, _) in a.iter() {
        for i in 0..m {
            a_lo[i] = a_lo[i].min(e[i]);
            a_hi[i] = a_hi[i].max(e[i]);
        }
    }
    for i in 0..m {
        let width = a_hi[i] - a_lo[i];
        lo[i] = lo[i] - alpha[i] - width;
        hi[i] = hi[i] - alpha[i] + width;
    }

    let mut rem: BTreeMap<Vec<i64>, QRational> = n
        .iter()
        .map(|(e, c)| (e.clone(), QRational::from(c.clone())))
        .collect();
    let mut quotient: Vec<(Vec<i64>, QRational)> = Vec::new();

    while let Some((rho, r_coeff)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let xi: Vec<i64> = rho.iter().zip(&alpha).map(|(r, a)| r - a).collect();
        if xi.iter().enumerate().any(|(i, &x)| x < lo[i] || x > hi[i]) {
            return Err(TorusError::NotDivisible);
        }
        // a's lead contributes lead_coeff * q^{Λ(α,ξ)/2} * c at exponent ρ.
        let twist = form.eval(&alpha, &xi);
        let divisor = QRational::from(lead_coeff.shifted(twist));
        let c = r_coeff.div(&divisor).expect("nonzero leading coefficient");
        // rem -= a · (c X^ξ)
        for (e, ae) in a.iter() {
            let exp: Vec<i64> = e.iter().zip(&xi).map(|(x, y)| x + y).collect();
            let h = form.eval(e, &xi);
            let contrib = c.mul(&QRational::from(ae.shifted(h)));
            use std::collections::btree_map::Entry;
            match rem.entry(exp) {
                Entry::Vacant(slot) => {
                    if !contrib.is_zero() {
                        slot.insert(contrib.neg());
                    }
                }
                Entry::Occupied(mut slot) => {
                    let next = slot.get().sub(&contrib);
                    if next.is_zero() {
                        slot.remove();
                    } else {
                        *slot.get_mut() = next;
                    }
                }
            }
        }
        quotient.push((xi, c));
    }

    let mut out = TorusElement::zero(form.clone());
    for (xi, c) in quotient {
        let coeff: QLaurent = c.to_laurent().ok_or(TorusError::NonIntegralQuotient)?;
        out = out.add(&TorusElement::monomial(form.clone(), xi, coeff)?)?;
    }
    // Exactness is re-checked before returning.
    if a.mul(&out)? != *n {
        return Err(TorusError::NotDivisible);
    }
    Ok(out)
}
