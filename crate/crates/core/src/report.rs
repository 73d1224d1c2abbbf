//! JSON encodings of exact values and the base-change L-function input file.
//!
//! Rationals are `"p/q"` strings. A cyclotomic number is
//! `{"order": N, "coefficients": [...], "sqrt_q": q, "sqrt_q_coefficients": [...]}`
//! in the basis `1, z, ..., z^{phi(N)-1}` with `z = exp(2 pi i / N)`; the
//! `sqrt_q` keys appear only when a formal `sqrt(q)` part is present, and a
//! `"rational"` key is added when the number lies in `Q`.

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{parse_rational, rational_string, CycNumber, ExpFraction, ExpPoly, Rational};
use crate::degrees::{BCLInput, DegreeResult};
use crate::error::{Error, Result};

pub fn rational_json(r: &Rational) -> Value {
    Value::String(rational_string(r))
}

pub fn cyc_json(c: &CycNumber) -> Value {
    let strings = |v: &[Rational]| v.iter().map(rational_string).collect::<Vec<_>>();
    let mut obj = json!({
        "order": c.order(),
        "coefficients": strings(c.base()),
    });
    if let Some(q) = c.q() {
        if c.root().iter().any(|x| !num_traits::Zero::is_zero(x)) {
            obj["sqrt_q"] = json!(q);
            obj["sqrt_q_coefficients"] = json!(strings(c.root()));
        }
    }
    if let Ok(r) = c.as_rational() {
        obj["rational"] = rational_json(&r);
    }
    obj
}

/// `{"q": q, "terms": [[exponent, coefficient], ...]}`, exponents ascending.
pub fn poly_json(p: &ExpPoly) -> Value {
    let terms: Vec<Value> = p.terms().map(|(k, c)| json!([k, cyc_json(c)])).collect();
    json!({ "q": p.q(), "terms": terms, "display": p.to_string() })
}

pub fn fraction_json(f: &ExpFraction) -> Value {
    match f.to_poly() {
        Some(p) => poly_json(&p),
        None => json!({ "numerator": poly_json(f.num()), "denominator": poly_json(f.den()), "display": f.to_string() }),
    }
}

pub fn degree_json(d: &DegreeResult) -> Value {
    json!({ "path": d.path.name(), "value": rational_json(&d.value), "r": d.r })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoefficientText {
    Integer(i64),
    Rational(String),
    Cyclotomic {
        order: u32,
        coefficients: Vec<String>,
        #[serde(default)]
        sqrt_q_coefficients: Vec<String>,
    },
}

impl CoefficientText {
    fn decode(&self, q: u64) -> Result<CycNumber> {
        let list = |v: &[String]| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>();
        Ok(match self {
            CoefficientText::Integer(n) => CycNumber::from_int(*n),
            CoefficientText::Rational(s) => CycNumber::from_rational(parse_rational(s)?),
            CoefficientText::Cyclotomic { order, coefficients, sqrt_q_coefficients } => {
                let root = list(sqrt_q_coefficients)?;
                let q = (!root.is_empty()).then_some(q);
                CycNumber::from_parts(*order, q, list(coefficients)?, root)?
            }
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BclFile {
    q: Option<u64>,
    lpoly: Vec<(i64, CoefficientText)>,
    f_coefficient: CoefficientText,
}

/// Parse a base-change input file:
///
/// ```json
/// {"q": 5, "lpoly": [[0, "1"], [1, "-2/5"]], "f_coefficient": {"order": 4, "coefficients": ["0", "1"]}}
/// ```
///
/// `q` is optional; when present it must match the workspace.
pub fn parse_bcl(text: &str, q: u64) -> Result<BCLInput> {
    let file: BclFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("base-change input: {e}")))?;
    if let Some(fq) = file.q {
        if fq != q {
            return Err(Error::Parse(format!("base-change input is over F_{fq}, the curve over F_{q}")));
        }
    }
    let mut terms = Vec::with_capacity(file.lpoly.len());
    for (k, c) in &file.lpoly {
        terms.push((*k, c.decode(q)?));
    }
    Ok(BCLInput { lpoly: ExpPoly::from_terms(q, terms), f_coefficient: file.f_coefficient.decode(q)? })
}

pub fn load_bcl(path: impl AsRef<Path>, q: u64) -> Result<BCLInput> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_bcl(&text, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bcl_round_trip() {
        let bc = parse_bcl(r#"{"lpoly": [[0, 1], [2, "-1/3"]], "f_coefficient": {"order": 4, "coefficients": ["0", "1"]}}"#, 5).unwrap();
        assert_eq!(bc.lpoly.coeff(2), CycNumber::from_rational(crate::algebra::ratio(-1, 3)));
        assert_eq!(bc.f_coefficient, CycNumber::root_of_unity(4, 1));
        assert!(parse_bcl(r#"{"q": 7, "lpoly": [], "f_coefficient": 1}"#, 5).is_err());
        assert!(parse_bcl(r#"{"lpoly": [], "f_coefficient": 1, "extra": 0}"#, 5).is_err());
    }

    #[test]
    fn json_shapes() {
        let v = cyc_json(&CycNumber::q_power_half(5, 3));
        assert_eq!(v["sqrt_q"], json!(5));
        assert!(v.get("rational").is_none());
        let v = cyc_json(&CycNumber::from_rational(crate::algebra::ratio(3, 4)));
        assert_eq!(v["rational"], json!("3/4"));
        let p = ExpPoly::from_ints(5, -1, &[1, 0, 2]);
        assert_eq!(poly_json(&p)["terms"][1][0], json!(1));
    }
}
