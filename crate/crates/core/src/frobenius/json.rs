//! Structured-text form of [`FrobeniusData`]:
//!
//! ```json
//! {"ring": "laurent_q", "basis": ["1"], "product": [[["q"]]],
//!  "pairing_product": [[["1"]]], "trace": ["1"], "unit": ["1"]}
//! ```
//!
//! `ring` is one of `Q`, `laurent_q`, `novikov` and defaults to `Q`. Coefficients are written in
//! the ring's own text form; `pairing_product` and `unit` are optional.

use serde_json::{json, Map, Value};

use super::{FrobError, FrobeniusData, StructureConstants};
use crate::exactalg::{Laurent, NovikovElement, Rational, Ring};

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, FrobError> {
    obj.get(key)
        .ok_or_else(|| FrobError::Json(format!("missing field '{key}'")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, FrobError> {
    v.as_array()
        .ok_or_else(|| FrobError::Json(format!("'{what}' must be an array")))
}

fn vector<R: Ring>(v: &Value, what: &str) -> Result<Vec<R>, FrobError> {
    array(v, what)?
        .iter()
        .map(|x| R::from_json(x).map_err(|e| FrobError::Json(format!("{what}: {e}"))))
        .collect()
}

fn tensor<R: Ring>(v: &Value, what: &str) -> Result<StructureConstants<R>, FrobError> {
    array(v, what)?
        .iter()
        .map(|row| array(row, what)?.iter().map(|c| vector(c, what)).collect())
        .collect()
}

fn tensor_json<R: Ring>(t: &StructureConstants<R>) -> Value {
    Value::Array(
        t.iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|c| Value::Array(c.iter().map(Ring::to_json).collect()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn ring_name(obj: &Map<String, Value>) -> Result<String, FrobError> {
    match obj.get("ring") {
        None => Ok(Rational::NAME.to_string()),
        Some(Value::String(s)) => Ok(s.clone()),
        Some(other) => Err(FrobError::Json(format!("'ring' must be a string, got {other}"))),
    }
}

impl<R: Ring> FrobeniusData<R> {
    pub fn from_json_value(v: &Value) -> Result<Self, FrobError> {
        let obj = v
            .as_object()
            .ok_or_else(|| FrobError::Json("expected a JSON object".into()))?;
        let found = ring_name(obj)?;
        if found != R::NAME {
            return Err(FrobError::RingMismatch { expected: R::NAME.into(), found });
        }
        let basis = array(field(obj, "basis")?, "basis")?
            .iter()
            .map(|b| {
                b.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| FrobError::Json("basis names must be strings".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let product = tensor(field(obj, "product")?, "product")?;
        let trace = vector(field(obj, "trace")?, "trace")?;
        let mut data = FrobeniusData::new(basis, product, trace)?;
        if let Some(p) = obj.get("pairing_product") {
            data = data.with_pairing_product(tensor(p, "pairing_product")?)?;
        }
        if let Some(u) = obj.get("unit") {
            data = data.with_unit(vector(u, "unit")?)?;
        }
        Ok(data)
    }

    pub fn from_json(src: &str) -> Result<Self, FrobError> {
        let v: Value = serde_json::from_str(src).map_err(|e| FrobError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn to_json_value(&self) -> Value {
        let mut v = json!({
            "ring": R::NAME,
            "basis": self.basis,
            "product": tensor_json(&self.product),
            "trace": self.trace.iter().map(Ring::to_json).collect::<Vec<_>>(),
        });
        if let Some(p) = &self.pairing_product {
            v["pairing_product"] = tensor_json(p);
        }
        if let Some(u) = &self.unit {
            v["unit"] = Value::Array(u.iter().map(Ring::to_json).collect());
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serialisable")
    }

    /// Parses an element given as a JSON array of coefficients.
    pub fn parse_element(&self, src: &str) -> Result<Vec<R>, FrobError> {
        let v: Value = serde_json::from_str(src).map_err(|e| FrobError::Json(e.to_string()))?;
        let x: Vec<R> = vector(&v, "element")?;
        if x.len() != self.rank() {
            return Err(FrobError::Shape(format!(
                "element has {} coordinates, rank is {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(x)
    }
}

/// Frobenius data over whichever coefficient ring the file declares.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyFrobenius {
    Rational(FrobeniusData<Rational>),
    Laurent(FrobeniusData<Laurent>),
    Novikov(FrobeniusData<NovikovElement>),
}

pub fn load_any(src: &str) -> Result<AnyFrobenius, FrobError> {
    let v: Value = serde_json::from_str(src).map_err(|e| FrobError::Json(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| FrobError::Json("expected a JSON object".into()))?;
    match ring_name(obj)?.as_str() {
        Rational::NAME => FrobeniusData::from_json_value(&v).map(AnyFrobenius::Rational),
        Laurent::NAME => FrobeniusData::from_json_value(&v).map(AnyFrobenius::Laurent),
        NovikovElement::NAME => FrobeniusData::from_json_value(&v).map(AnyFrobenius::Novikov),
        other => Err(FrobError::Json(format!(
            "unknown ring '{other}' (expected Q, laurent_q or novikov)"
        ))),
    }
}
