use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactlin::{is_prime, Field, PrimeField, Rational, Rationals};
use crate::forms::FormCollection;

/// Coefficient field named in an instance file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("rational"),
            FieldSpec::Prime(p) => write!(f, "gf({p})"),
        }
    }
}

impl FieldSpec {
    fn parse(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        let p = s
            .strip_prefix("gf(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("field: expected \"rational\" or \"gf(p)\", got {s:?}")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("field: invalid modulus in {s:?}")))?;
        if !is_prime(p) {
            return Err(Error::Parse(format!("field: {p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormSpec {
    pub coeffs: Vec<Rational>,
    pub mult: usize,
}

/// A validated instance file: a field, a number of variables and forms with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub field: FieldSpec,
    pub k: usize,
    pub forms: Vec<FormSpec>,
}

impl Serialize for InstanceFile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("InstanceFile", 3)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("forms", &self.forms)?;
        st.serialize_field("k", &self.k)?;
        st.end()
    }
}

/// A collection over whichever field the instance names.
#[derive(Clone, Debug)]
pub enum Instance {
    Rational(FormCollection<Rationals>),
    Prime(FormCollection<PrimeField>),
}

fn parse_err(path: &str, msg: impl fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| parse_err(path, format!("expected a nonnegative integer, got {v}")))
}

fn rational(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse().map_err(|e: Error| parse_err(path, e)),
        Value::Number(n) if n.is_i64() => Ok(Rational::from(n.as_i64().unwrap())),
        other => Err(parse_err(path, format!("expected a rational string such as \"3/4\", got {other}"))),
    }
}

/// Parses and validates instance JSON.
pub fn parse_instance(text: &[u8]) -> Result<InstanceFile> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))?;
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| parse_err("$", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "field" | "k" | "forms") {
            return Err(parse_err(key, "unknown key"));
        }
    }
    let field = match obj.get("field") {
        None => FieldSpec::Rational,
        Some(Value::String(s)) => FieldSpec::parse(s.trim())?,
        Some(other) => return Err(parse_err("field", format!("expected a string, got {other}"))),
    };
    let k = count(obj.get("k").ok_or_else(|| parse_err("k", "missing"))?, "k")?;
    if k == 0 {
        return Err(parse_err("k", "must be at least 1"));
    }
    let forms = obj
        .get("forms")
        .ok_or_else(|| parse_err("forms", "missing"))?
        .as_array()
        .ok_or_else(|| parse_err("forms", "expected an array"))?;
    if forms.is_empty() {
        return Err(parse_err("forms", "at least one form is required"));
    }
    let mut parsed = Vec::with_capacity(forms.len());
    for (i, form) in forms.iter().enumerate() {
        let path = format!("forms[{i}]");
        let obj = form.as_object().ok_or_else(|| parse_err(&path, "expected an object"))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "coeffs" | "mult") {
                return Err(parse_err(&format!("{path}.{key}"), "unknown key"));
            }
        }
        let coeffs = obj
            .get("coeffs")
            .ok_or_else(|| parse_err(&format!("{path}.coeffs"), "missing"))?
            .as_array()
            .ok_or_else(|| parse_err(&format!("{path}.coeffs"), "expected an array"))?;
        if coeffs.len() != k {
            return Err(parse_err(
                &format!("{path}.coeffs"),
                format!("form {i} has {} coefficients, expected k = {k}", coeffs.len()),
            ));
        }
        let coeffs = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| rational(c, &format!("{path}.coeffs[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        let mult = match obj.get("mult") {
            None => 1,
            Some(m) => count(m, &format!("{path}.mult"))?,
        };
        if mult == 0 {
            return Err(parse_err(&format!("{path}.mult"), "must be at least 1"));
        }
        if let FieldSpec::Prime(p) = field {
            let gf = PrimeField::new(p)?;
            for (j, c) in coeffs.iter().enumerate() {
                if gf.from_rational(c).is_none() {
                    return Err(parse_err(&format!("{path}.coeffs[{j}]"), format!("{c} has a denominator divisible by {p}")));
                }
            }
            if coeffs.iter().all(|c| gf.is_zero(&gf.from_rational(c).unwrap())) {
                return Err(parse_err(&path, format!("form {i} is zero modulo {p}")));
            }
        } else if coeffs.iter().all(Rational::is_zero) {
            return Err(parse_err(&path, format!("form {i} is zero")));
        }
        parsed.push(FormSpec { coeffs, mult });
    }
    Ok(InstanceFile { field, k, forms: parsed })
}

impl InstanceFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// Total number of forms counted with multiplicity.
    pub fn n(&self) -> usize {
        self.forms.iter().map(|f| f.mult).sum()
    }

    fn raw<F: Field>(&self, field: &F) -> Vec<(Vec<F::Elem>, usize)> {
        self.forms
            .iter()
            .map(|f| (f.coeffs.iter().map(|c| field.from_rational(c).expect("validated")).collect(), f.mult))
            .collect()
    }

    /// Builds the normalized collection over the named field.
    pub fn build(&self) -> Result<Instance> {
        Ok(match self.field {
            FieldSpec::Rational => Instance::Rational(FormCollection::normalize(Rationals, self.raw(&Rationals), self.k)?),
            FieldSpec::Prime(p) => {
                let gf = PrimeField::new(p)?;
                let raw = self.raw(&gf);
                Instance::Prime(FormCollection::normalize(gf, raw, self.k)?)
            }
        })
    }
}
