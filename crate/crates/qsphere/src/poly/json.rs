//! JSON interchange for exact polynomials.
//!
//! Format: `{"arity": k, "terms": [{"exp": [e...], "num": "...", "den": "..."}]}`
//! with decimal-string integers. Terms are emitted in ascending lexicographic
//! exponent order so identical polynomials serialize to identical bytes.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{MultiPoly, PolyError, MAX_ARITY, MIN_ARITY};
use crate::Rat;

impl MultiPoly<Rat> {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| {
                json!({
                    "exp": e[..self.arity()].to_vec(),
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect();
        json!({ "arity": self.arity(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, PolyError> {
        let bad = |msg: &str| PolyError::Json(msg.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let arity = obj
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field 'arity'"))? as usize;
        if !(MIN_ARITY..=MAX_ARITY).contains(&arity) {
            return Err(PolyError::ArityOutOfRange(arity));
        }
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field 'terms'"))?;
        let mut poly = MultiPoly::zero(arity);
        for t in terms {
            let t = t.as_object().ok_or_else(|| bad("term must be an object"))?;
            let exp = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term missing 'exp'"))?;
            if exp.len() != arity {
                return Err(bad("term 'exp' length does not match arity"));
            }
            let mut e = [0u16; 4];
            for (i, x) in exp.iter().enumerate() {
                let x = x.as_u64().ok_or_else(|| bad("exponents must be nonnegative integers"))?;
                e[i] = u16::try_from(x).map_err(|_| bad("exponent too large"))?;
            }
            let num = parse_bigint(t.get("num"), "num")?;
            let den = parse_bigint(t.get("den"), "den")?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            let c = Rat::new(num, den);
            if c.is_zero() {
                return Err(bad("stored term with zero coefficient"));
            }
            if poly.coefficient(&e).is_some() {
                return Err(bad("duplicate exponent tuple"));
            }
            poly.add_term(e, c);
        }
        Ok(poly)
    }
}

fn parse_bigint(v: Option<&Value>, field: &str) -> Result<BigInt, PolyError> {
    let s = v
        .and_then(Value::as_str)
        .ok_or_else(|| PolyError::Json(format!("missing string field '{field}'")))?;
    BigInt::from_str(s).map_err(|_| PolyError::Json(format!("'{field}' is not a decimal integer")))
}

/// Rational parsing for CLI flags and envelopes: accepts `a/b`, integers and
/// plain decimals like `2.5`.
pub fn parse_rational(s: &str) -> Result<Rat, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Json(format!("'{s}' is not a rational (use a/b, integer or decimal)"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int = BigInt::from_str(if int.is_empty() { "0" } else { int }).map_err(|_| bad())?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num = BigInt::from_str(frac).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Rat::new(num, den);
        let int_part = Rat::from_integer(int);
        return Ok(if neg || int_part.is_negative() {
            int_part - frac_part
        } else {
            int_part + frac_part
        });
    }
    Ok(Rat::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
}
