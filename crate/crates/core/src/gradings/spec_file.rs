//! Quasitorus spec files.
//!
//! ```json
//! {"name": "mine", "generators": [
//!   {"kind": "torus", "values": [-1, 1, {"root": 3, "power": 1}, "1/2"]},
//!   {"kind": "torus-param", "exponents": [-1, 1, 0, 0]},
//!   {"kind": "lift", "index": 59, "twist": [1, 1, 1, 1]}
//! ]}
//! ```

use serde_json::Value;

use crate::autgroup::FamilyMember;
use crate::error::{Error, Result};
use crate::exact::{CycloScalar, Rational};

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Spec(format!("{path}: {msg}"))
}

fn scalar(v: &Value, path: &str) -> Result<CycloScalar> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(CycloScalar::from_int)
            .ok_or_else(|| err(path, "numbers must be integers; write fractions as \"p/q\"")),
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map(CycloScalar::from_rational)
            .map_err(|_| err(path, format!("cannot parse {s:?} as a rational"))),
        Value::Object(o) => {
            let d = o.get("root").and_then(Value::as_u64).ok_or_else(|| err(path, "expected integer \"root\""))?;
            let k = o.get("power").map_or(Some(1), Value::as_i64).ok_or_else(|| err(path, "\"power\" must be an integer"))?;
            let z = CycloScalar::root_of_unity(d as u32).map_err(|e| err(path, e))?;
            z.pow(k).map_err(|e| err(path, e))
        }
        _ => Err(err(path, "expected an integer, a rational string, or {\"root\": d, \"power\": k}")),
    }
}

fn four_scalars(v: Option<&Value>, path: &str) -> Result<Vec<CycloScalar>> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| err(path, "expected an array of 4 values"))?;
    if arr.len() != 4 {
        return Err(err(path, format!("expected 4 values, got {}", arr.len())));
    }
    arr.iter().enumerate().map(|(i, x)| scalar(x, &format!("{path}[{i}]"))).collect()
}

fn exponents(v: Option<&Value>, path: &str) -> Result<Vec<Vec<i64>>> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| err(path, "expected an array of 4 exponents"))?;
    if arr.len() != 4 {
        return Err(err(path, format!("expected 4 entries, got {}", arr.len())));
    }
    let rows = arr
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let p = format!("{path}[{i}]");
            match x {
                Value::Number(n) => n.as_i64().map(|e| vec![e]).ok_or_else(|| err(&p, "expected an integer")),
                Value::Array(a) => a
                    .iter()
                    .map(|e| e.as_i64().ok_or_else(|| err(&p, "expected integers")))
                    .collect(),
                _ => Err(err(&p, "expected an integer or an array of integers")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(err(path, "rows have different numbers of parameters"));
    }
    Ok(rows)
}

/// Parse a spec document into its name and generator family.
pub fn parse_spec_value(doc: &Value) -> Result<(Option<String>, Vec<FamilyMember>)> {
    let obj = doc.as_object().ok_or_else(|| err("$", "expected an object"))?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(err("$.name", "expected a string")),
    };
    let gens = match obj.get("generators") {
        None => return Ok((name, vec![])),
        Some(Value::Array(a)) => a,
        Some(_) => return Err(err("$.generators", "expected an array")),
    };
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let path = format!("$.generators[{i}]");
        let kind = g.get("kind").and_then(Value::as_str).ok_or_else(|| err(&path, "missing string \"kind\""))?;
        out.push(match kind {
            "torus" => FamilyMember::Torus(four_scalars(g.get("values"), &format!("{path}.values"))?),
            "torus-param" => FamilyMember::TorusParam(exponents(g.get("exponents"), &format!("{path}.exponents"))?),
            "lift" => {
                let index = g
                    .get("index")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| err(&format!("{path}.index"), "expected a positive integer"))?;
                let twist = match g.get("twist") {
                    None => vec![CycloScalar::one(); 4],
                    t => four_scalars(t, &format!("{path}.twist"))?,
                };
                FamilyMember::Lift { index: index as usize, twist }
            }
            other => return Err(err(&format!("{path}.kind"), format!("unknown kind {other:?}"))),
        });
    }
    Ok((name, out))
}

pub fn parse_spec_file(path: &std::path::Path) -> Result<(Option<String>, Vec<FamilyMember>)> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    parse_spec_value(&doc)
}
