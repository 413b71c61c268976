//! JSON encoding of complex tensors and the fixed-width float format.

use std::io;

use hexaspinor::tensors::{ComplexTensor, C64};
use nalgebra::{SMatrix, SVector};
use serde_json::{json, Value};

use crate::CliError;

/// serde_json formatter printing every float with 17 significant digits.
#[derive(Debug, Clone, Copy, Default)]
pub struct Fixed17;

impl serde_json::ser::Formatter for Fixed17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// One-line JSON with the fixed float format.
pub fn to_line(v: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Fixed17);
    serde::Serialize::serialize(v, &mut ser).expect("Value serialises");
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn tensor(t: &ComplexTensor) -> Value {
    json!({
        "shape": t.shape(),
        "entries": t.entries().iter().map(|z| complex(*z)).collect::<Vec<_>>(),
    })
}

pub fn matrix<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> Value {
    tensor(&ComplexTensor::from_matrix(m))
}

pub fn vector<const N: usize>(v: &SVector<C64, N>) -> Value {
    tensor(&ComplexTensor::from_vector(v.as_slice()))
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// `[re, im]` or a bare real number.
pub fn parse_complex(v: &Value) -> Result<C64, CliError> {
    match v {
        Value::Number(n) => Ok(C64::new(n.as_f64().ok_or_else(|| bad("number out of range"))?, 0.0)),
        Value::Array(a) if a.len() == 2 => {
            let re = a[0].as_f64().ok_or_else(|| bad("real part is not a number"))?;
            let im = a[1].as_f64().ok_or_else(|| bad("imaginary part is not a number"))?;
            Ok(C64::new(re, im))
        }
        other => Err(bad(format!("expected [re, im], got {other}"))),
    }
}

/// `{"shape": [...], "entries": [[re, im], ...]}`, or a bare list of entries
/// read as a vector.
pub fn parse_tensor(v: &Value) -> Result<ComplexTensor, CliError> {
    let (shape, entries) = match v {
        Value::Array(a) => (vec![a.len()], a),
        Value::Object(o) => {
            let shape = o
                .get("shape")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing \"shape\""))?
                .iter()
                .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| bad("shape entries must be integers")))
                .collect::<Result<Vec<_>, _>>()?;
            let entries = o.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing \"entries\""))?;
            (shape, entries)
        }
        _ => return Err(bad("expected a tensor object")),
    };
    let entries = entries.iter().map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    ComplexTensor::new(shape, entries).map_err(|e| bad(e.to_string()))
}

pub fn parse_matrix<const R: usize, const C: usize>(v: &Value) -> Result<SMatrix<C64, R, C>, CliError> {
    parse_tensor(v)?.to_matrix().map_err(|e| bad(e.to_string()))
}

pub fn parse_vector<const N: usize>(v: &Value) -> Result<SVector<C64, N>, CliError> {
    let t = parse_tensor(v)?;
    if t.shape() != [N] {
        return Err(bad(format!("expected a vector of length {N}, got shape {:?}", t.shape())));
    }
    Ok(SVector::from_column_slice(t.entries()))
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| bad(format!("missing \"{key}\"")))
}
