//! Parsing of `decompose` input: `{"u1": .., "u": .., "u2": ..}` or a
//! three-element array, each element a `{"dim": n, "coeffs": [..]}` object.

use std::fmt;

use octotriple::hyper::Hyper;
use serde_json::Value;

const FIELDS: [&str; 3] = ["u1", "u", "u2"];

#[derive(Debug, PartialEq)]
pub struct InputError {
    pub field: Option<String>,
    pub message: String,
}

impl InputError {
    fn at(field: impl Into<String>, message: impl fmt::Display) -> InputError {
        InputError { field: Some(field.into()), message: message.to_string() }
    }

    fn top(message: impl fmt::Display) -> InputError {
        InputError { field: None, message: message.to_string() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Some(field) => write!(f, "{field}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

pub fn parse_triple(text: &str) -> Result<[Hyper; 3], InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError::top(format!("malformed JSON: {e}")))?;
    let items: Vec<(String, Value)> = match value {
        Value::Object(mut map) => {
            if let Some(extra) = map.keys().find(|k| !FIELDS.contains(&k.as_str())) {
                return Err(InputError::at(extra.clone(), "unknown field, expected u1, u, u2"));
            }
            FIELDS
                .iter()
                .map(|f| map.remove(*f).map(|v| (f.to_string(), v)).ok_or_else(|| InputError::at(*f, "missing")))
                .collect::<Result<_, _>>()?
        }
        Value::Array(arr) if arr.len() == 3 => {
            arr.into_iter().enumerate().map(|(k, v)| (format!("[{k}]"), v)).collect()
        }
        Value::Array(arr) => {
            return Err(InputError::top(format!("expected 3 array elements, found {}", arr.len())))
        }
        _ => return Err(InputError::top("expected an object {u1, u, u2} or an array of 3 values")),
    };
    let mut out = Vec::with_capacity(3);
    for (field, v) in items {
        let h: Hyper = serde_json::from_value(v).map_err(|e| InputError::at(&field, e))?;
        if let Some(first) = out.first().map(|h: &Hyper| h.dim()) {
            if h.dim() != first {
                return Err(InputError::at(&field, format!("dimension {} does not match {}", h.dim(), first)));
            }
        }
        out.push(h);
    }
    Ok([out[0], out[1], out[2]])
}
