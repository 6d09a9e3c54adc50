//! JSON algebra files.
//!
//! ```json
//! { "dim_v": 2, "dim_z": 1, "j": [ [ ["0", "1"], ["-1", "0"] ] ] }
//! { "dim_v": 2, "dim_z": 1, "brackets": [ { "a": 0, "b": 1, "z": ["1"] } ] }
//! ```
//!
//! Exactly one of `"j"` (m row-major n×n matrices) or `"brackets"` (nonzero
//! `[v_a, v_b]` entries; the mirrored entry is implied) must be present.
//! Rationals are strings `"p"` or `"p/q"`; plain JSON integers are accepted too.
//! Optional keys: `"name"` and `"lattice": {"M_scale": [..n], "L_scale": [..m]}`
//! describing diagonal lattices `⊕ Z·s_i e_i`.

use serde_json::{json, Map, Value};

use super::MetricTwoStepAlgebra;
use crate::error::SchemaError;
use crate::exact::{format_rational, parse_rational, rat, Matrix, Rational};

/// Diagonal lattice scales read from a file; missing entries fall back to defaults.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LatticeSpec {
    pub m_scale: Option<Vec<Rational>>,
    pub l_scale: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraFile {
    pub name: Option<String>,
    pub algebra: MetricTwoStepAlgebra,
    pub lattice: Option<LatticeSpec>,
}

pub fn parse_algebra_str(text: &str) -> Result<AlgebraFile, SchemaError> {
    let value: Value = serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
    parse_algebra_value(&value)
}

fn get_count(obj: &Map<String, Value>, key: &str) -> Result<usize, SchemaError> {
    let path = format!("$.{key}");
    match obj.get(key) {
        None => Err(SchemaError::at(path, "missing required key")),
        Some(v) => v
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| SchemaError::at(path, "expected a non-negative integer")),
    }
}

fn rational_at(v: &Value, path: &str) -> Result<Rational, SchemaError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| SchemaError::at(path, e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| SchemaError::at(path, "numbers must be integers; write fractions as \"p/q\"")),
        _ => Err(SchemaError::at(path, "expected a rational string \"p/q\"")),
    }
}

fn array_at<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a Vec<Value>, SchemaError> {
    let arr = v.as_array().ok_or_else(|| SchemaError::at(path, "expected an array"))?;
    if let Some(len) = len {
        if arr.len() != len {
            return Err(SchemaError::at(
                path,
                format!("expected {len} entries, found {}", arr.len()),
            ));
        }
    }
    Ok(arr)
}

fn rational_vec(v: &Value, path: &str, len: usize) -> Result<Vec<Rational>, SchemaError> {
    array_at(v, path, Some(len))?
        .iter()
        .enumerate()
        .map(|(i, x)| rational_at(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn parse_algebra_value(value: &Value) -> Result<AlgebraFile, SchemaError> {
    let obj = value
        .as_object()
        .ok_or_else(|| SchemaError::at("$", "expected a JSON object"))?;
    let n = get_count(obj, "dim_v")?;
    let m = get_count(obj, "dim_z")?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(SchemaError::at("$.name", "expected a string")),
    };

    let algebra = match (obj.get("j"), obj.get("brackets")) {
        (Some(_), Some(_)) => {
            return Err(SchemaError::at(
                "$",
                "exactly one of \"j\" or \"brackets\" may be present",
            ))
        }
        (None, None) => return Err(SchemaError::at("$", "one of \"j\" or \"brackets\" is required")),
        (Some(j), None) => {
            let mats = array_at(j, "$.j", Some(m))?;
            let mut j_maps = Vec::with_capacity(m);
            for (k, mat) in mats.iter().enumerate() {
                let p = format!("$.j[{k}]");
                let rows = array_at(mat, &p, Some(n))?;
                let rows = rows
                    .iter()
                    .enumerate()
                    .map(|(r, row)| rational_vec(row, &format!("{p}[{r}]"), n))
                    .collect::<Result<Vec<_>, _>>()?;
                j_maps.push(Matrix::from_fn(n, n, |a, b| rows[a][b].clone()));
            }
            MetricTwoStepAlgebra::from_j_maps(n, m, j_maps).map_err(|source| {
                let path = match &source {
                    crate::error::AlgebraError::NonSkew { index, row, col, .. } => {
                        format!("$.j[{index}][{row}][{col}]")
                    }
                    _ => "$.j".to_string(),
                };
                SchemaError::Algebra { path, source }
            })?
        }
        (None, Some(b)) => {
            let entries = array_at(b, "$.brackets", None)?;
            let mut table = vec![vec![vec![rat(0); m]; n]; n];
            let mut seen = vec![vec![false; n]; n];
            for (e, entry) in entries.iter().enumerate() {
                let p = format!("$.brackets[{e}]");
                let o = entry
                    .as_object()
                    .ok_or_else(|| SchemaError::at(&p, "expected an object {a, b, z}"))?;
                let idx = |key: &str| -> Result<usize, SchemaError> {
                    let ip = format!("{p}.{key}");
                    let i = o
                        .get(key)
                        .and_then(Value::as_u64)
                        .ok_or_else(|| SchemaError::at(&ip, "expected a basis index"))?
                        as usize;
                    if i >= n {
                        return Err(SchemaError::at(&ip, format!("index {i} out of range 0..{n}")));
                    }
                    Ok(i)
                };
                let (a, bb) = (idx("a")?, idx("b")?);
                let zp = format!("{p}.z");
                let z = rational_vec(
                    o.get("z").ok_or_else(|| SchemaError::at(&zp, "missing required key"))?,
                    &zp,
                    m,
                )?;
                let neg: Vec<Rational> = z.iter().map(|x| -x).collect();
                if a == bb {
                    if z.iter().any(|x| x != &rat(0)) {
                        return Err(SchemaError::at(&p, "[v_a, v_a] must vanish"));
                    }
                    continue;
                }
                if seen[a][bb] && table[a][bb] != z {
                    return Err(SchemaError::at(
                        &p,
                        format!("conflicts with an earlier entry for [v_{a}, v_{bb}]"),
                    ));
                }
                seen[a][bb] = true;
                seen[bb][a] = true;
                table[a][bb] = z;
                table[bb][a] = neg;
            }
            MetricTwoStepAlgebra::from_structure_constants(n, m, &table).map_err(|source| SchemaError::Algebra {
                path: "$.brackets".into(),
                source,
            })?
        }
    };

    let lattice = match obj.get("lattice") {
        None | Some(Value::Null) => None,
        Some(l) => {
            let lo = l
                .as_object()
                .ok_or_else(|| SchemaError::at("$.lattice", "expected an object"))?;
            let scales = |key: &str, len: usize| -> Result<Option<Vec<Rational>>, SchemaError> {
                let p = format!("$.lattice.{key}");
                lo.get(key)
                    .map(|v| {
                        let s = rational_vec(v, &p, len)?;
                        if let Some(i) = s.iter().position(|x| x == &rat(0)) {
                            return Err(SchemaError::at(format!("{p}[{i}]"), "lattice scale must be nonzero"));
                        }
                        Ok(s)
                    })
                    .transpose()
            };
            Some(LatticeSpec {
                m_scale: scales("M_scale", n)?,
                l_scale: scales("L_scale", m)?,
            })
        }
    };

    Ok(AlgebraFile { name, algebra, lattice })
}

/// Serializes in the `"j"` form.
pub fn algebra_to_json(algebra: &MetricTwoStepAlgebra, name: Option<&str>) -> Value {
    let j: Vec<Vec<Vec<String>>> = algebra
        .j_maps()
        .iter()
        .map(|mat| {
            mat.to_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect()
        })
        .collect();
    let mut v = json!({
        "dim_v": algebra.dim_v(),
        "dim_z": algebra.dim_z(),
        "j": j,
    });
    if let Some(name) = name {
        v["name"] = json!(name);
    }
    v
}
