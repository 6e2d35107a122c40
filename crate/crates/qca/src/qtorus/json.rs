//! JSON encoding of torus elements:
//! `{"m": int, "lambda": [[int]], "terms": [{"e": [int], "coeff": [[h, "c"]]}]}`
//! with exponent vectors in lexicographic order and coefficients as
//! `(half-exponent, decimal-string)` pairs.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::qcoeff::QLaurent;

use super::{SkewForm, TorusElement, TorusError};

pub fn coeff_to_json(c: &QLaurent) -> Value {
    Value::Array(
        c.iter()
            .map(|(h, v)| json!([h, v.to_string()]))
            .collect(),
    )
}

pub fn coeff_from_json(v: &Value) -> Result<QLaurent, TorusError> {
    let arr = v.as_array().ok_or_else(|| TorusError::Json("coeff must be an array".into()))?;
    let mut c = QLaurent::zero();
    for pair in arr {
        let pair = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| TorusError::Json("coeff entry must be [h, \"c\"]".into()))?;
        let h = pair[0]
            .as_i64()
            .ok_or_else(|| TorusError::Json("half-exponent must be an integer".into()))?;
        let s = pair[1]
            .as_str()
            .ok_or_else(|| TorusError::Json("coefficient must be a decimal string".into()))?;
        let big = BigInt::from_str(s).map_err(|e| TorusError::Json(e.to_string()))?;
        c = c.add(&QLaurent::term(h, big));
    }
    Ok(c)
}

pub fn int_matrix_to_json(rows: &[Vec<i64>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|&v| json!(v)).collect()))
            .collect(),
    )
}

pub fn int_matrix_from_json(v: &Value) -> Result<Vec<Vec<i64>>, TorusError> {
    let rows = v.as_array().ok_or_else(|| TorusError::Json("expected a matrix".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| TorusError::Json("expected a matrix row".into()))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| TorusError::Json("expected an integer".into())))
                .collect()
        })
        .collect()
}

impl TorusElement {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.dim(),
            "lambda": int_matrix_to_json(self.form().rows()),
            "terms": Value::Array(
                self.iter()
                    .map(|(e, c)| json!({"e": e, "coeff": coeff_to_json(c)}))
                    .collect(),
            ),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, TorusError> {
        let m = v["m"]
            .as_u64()
            .ok_or_else(|| TorusError::Json("missing dimension m".into()))? as usize;
        let lambda = int_matrix_from_json(&v["lambda"])?;
        let form = Arc::new(SkewForm::new(lambda)?);
        if form.dim() != m {
            return Err(TorusError::DimensionMismatch { expected: m, got: form.dim() });
        }
        Self::from_json_terms(&v["terms"], &form)
    }

    /// Decode just the `terms` array against an already-known form.
    pub fn from_json_terms(terms: &Value, form: &Arc<SkewForm>) -> Result<Self, TorusError> {
        let arr = terms
            .as_array()
            .ok_or_else(|| TorusError::Json("terms must be an array".into()))?;
        let mut out = TorusElement::zero(form.clone());
        for t in arr {
            let e: Vec<i64> = t["e"]
                .as_array()
                .ok_or_else(|| TorusError::Json("term must carry an exponent vector".into()))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| TorusError::Json("exponent must be an integer".into())))
                .collect::<Result<_, _>>()?;
            let c = coeff_from_json(&t["coeff"])?;
            out = out.add(&TorusElement::monomial(form.clone(), e, c)?)?;
        }
        Ok(out)
    }

    /// Just the terms, for embedding into larger documents.
    pub fn terms_to_json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|(e, c)| json!({"e": e, "coeff": coeff_to_json(c)}))
                .collect(),
        )
    }
}
