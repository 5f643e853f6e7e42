use std::path::PathBuf;

use endoatlas::exactmath::{BigRat, UniPoly};
use endoatlas::quatorder::Quaternion;
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

/// Parameters shared by every subcommand. Command-line flags and job files
/// both end up here.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Little-endian coefficient list, integers or decimal strings.
    pub coeffs: Option<Value>,
    #[serde(rename = "D")]
    pub disc: Option<u64>,
    pub m: Option<u64>,
    pub d: Option<i64>,
    pub g: Option<u64>,
    pub p: Option<u64>,
    pub base_d: Option<i64>,
    pub candidate: Option<Value>,
    /// Four rational coordinates `[a, b, c, d]` of `a + b i + c j + d k`.
    pub mu: Option<Value>,
    pub order: Option<String>,
    pub assert_galois: Option<bool>,
    pub budget: Option<usize>,
    pub seed: Option<u64>,
}

/// A batch-mode request read from a JSON file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: String,
    #[serde(default)]
    pub params: Params,
    pub output: Option<PathBuf>,
}

pub fn parse_json_arg(flag: &str, text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("--{flag}: not a JSON list: {e}")))
}

fn big_of(v: &Value, what: &str) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer literal")),
        Value::String(s) => {
            s.trim().parse().map_err(|_| CliError::Invalid(format!("{what}: {s:?} is not a decimal integer")))
        }
        other => Err(CliError::Invalid(format!("{what}: expected an integer, got {other}"))),
    }
}

fn rat_of(v: &Value, what: &str) -> Result<BigRat, CliError> {
    match v {
        Value::String(s) if s.contains('/') => {
            let (n, d) = s.split_once('/').expect("contains /");
            let n: BigInt = n.trim().parse().map_err(|_| CliError::Invalid(format!("{what}: bad numerator in {s:?}")))?;
            let d: BigInt =
                d.trim().parse().map_err(|_| CliError::Invalid(format!("{what}: bad denominator in {s:?}")))?;
            if d == BigInt::from(0) {
                return Err(CliError::Invalid(format!("{what}: zero denominator")));
            }
            Ok(BigRat::new(n, d))
        }
        _ => Ok(BigRat::from_integer(big_of(v, what)?)),
    }
}

pub fn poly_of(v: &Value, what: &str) -> Result<UniPoly, CliError> {
    let Value::Array(items) = v else {
        return Err(CliError::Invalid(format!("{what}: expected a list of coefficients")));
    };
    if items.is_empty() {
        return Err(CliError::Invalid(format!("{what}: empty coefficient list")));
    }
    let coeffs = items.iter().map(|c| big_of(c, what)).collect::<Result<Vec<_>, _>>()?;
    let f = UniPoly::from_bigints(&coeffs);
    if f.is_zero() {
        return Err(CliError::Invalid(format!("{what}: zero polynomial")));
    }
    Ok(f)
}

pub fn quaternion_of(v: &Value, what: &str) -> Result<Quaternion, CliError> {
    match v {
        Value::Array(items) if items.len() == 4 => {
            let c = items.iter().map(|x| rat_of(x, what)).collect::<Result<Vec<_>, _>>()?;
            Ok(Quaternion::from_slice(&c))
        }
        _ => Err(CliError::Invalid(format!("{what}: expected four coordinates [a, b, c, d]"))),
    }
}

impl Params {
    pub fn require<T: Clone>(&self, value: &Option<T>, name: &str) -> Result<T, CliError> {
        value.clone().ok_or_else(|| CliError::Invalid(format!("missing parameter {name:?}")))
    }

    pub fn poly(&self) -> Result<UniPoly, CliError> {
        poly_of(&self.require(&self.coeffs, "coeffs")?, "coeffs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn coefficients_accept_integers_and_strings() {
        let f = poly_of(&json!([1, "-2", "123456789012345678901234567890"]), "coeffs").unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.to_strings()[2], "123456789012345678901234567890");
        assert!(poly_of(&json!([]), "coeffs").is_err());
        assert!(poly_of(&json!([0, 0]), "coeffs").is_err());
        assert!(poly_of(&json!([1.5]), "coeffs").is_err());
        assert!(poly_of(&json!("1,2"), "coeffs").is_err());
    }

    #[test]
    fn quaternions_accept_fractions() {
        let q = quaternion_of(&json!(["1/2", 0, "1/2", 0]), "mu").unwrap();
        assert_eq!(q, Quaternion::halves(2, 1, 0, 1, 0));
        assert!(quaternion_of(&json!([1, 2, 3]), "mu").is_err());
        assert!(quaternion_of(&json!(["1/0", 0, 0, 0]), "mu").is_err());
    }

    #[test]
    fn job_specs_reject_unknown_fields() {
        assert!(serde_json::from_str::<JobSpec>(r#"{"command":"x","params":{"D":6,"m":3}}"#).is_ok());
        assert!(serde_json::from_str::<JobSpec>(r#"{"command":"x","params":{"disc":6}}"#).is_err());
        assert!(serde_json::from_str::<JobSpec>(r#"{"command":"x","verbose":true}"#).is_err());
    }
}
