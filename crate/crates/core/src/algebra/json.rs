//! The JSON algebra spec format.
//!
//! ```json
//! {"p": 3, "k": 1, "dim": 2, "unit": [1, 0],
//!  "mul": [[0, 0, [[0, 1]]], [0, 1, [[1, 1]]], [1, 0, [[1, 1]]]],
//!  "blocks": [{"idempotent": [1, 0], "degree": 1, "basis": [0]}],
//!  "radical_basis": [1]}
//! ```
//!
//! Coefficients are integers for prime fields and digit arrays `[c0, .., c_{k-1}]`
//! otherwise. An optional `"modulus"` array gives the lower coefficients of a
//! monic irreducible polynomial to use instead of the default one.

use serde_json::{json, Value};

use crate::error::{Error, Result, ValidationKind};
use crate::scalars::{Fe, Field};

/// One sparse entry `b_i b_j = sum c_l b_l` of the structure tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Fe)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBlock {
    pub idempotent: Vec<Fe>,
    pub degree: usize,
    pub basis: Vec<usize>,
}

/// An unvalidated algebra spec.
#[derive(Clone, Debug)]
pub struct RawAlgebra {
    pub field: Field,
    pub dim: usize,
    pub unit: Vec<Fe>,
    pub mul: Vec<MulEntry>,
    pub blocks: Vec<RawBlock>,
    pub radical_basis: Vec<usize>,
}

fn malformed(path: &str, detail: impl Into<String>) -> Error {
    Error::validation(ValidationKind::Malformed, path, detail)
}

fn field_of<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(path, format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().and_then(|n| usize::try_from(n).ok()).ok_or_else(|| malformed(path, "expected a nonnegative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| malformed(path, "expected an array"))
}

fn index_list(v: &Value, path: &str) -> Result<Vec<usize>> {
    as_array(v, path)?.iter().enumerate().map(|(n, x)| as_usize(x, &format!("{path}[{n}]"))).collect()
}

fn coefficient(field: &Field, v: &Value, path: &str) -> Result<Fe> {
    if field.k() == 1 {
        let n = v.as_i64().ok_or_else(|| malformed(path, "expected an integer coefficient"))?;
        if n < 0 || n >= field.p() as i64 {
            return Err(malformed(path, format!("coefficient {n} is not reduced mod {}", field.p())));
        }
        return Ok(Fe(n as u32));
    }
    let digits: Vec<u32> = as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(n, d)| {
            d.as_u64()
                .and_then(|d| u32::try_from(d).ok())
                .ok_or_else(|| malformed(&format!("{path}[{n}]"), "expected a digit"))
        })
        .collect::<Result<_>>()?;
    field
        .from_digits(&digits)
        .ok_or_else(|| malformed(path, format!("expected {} digits below {}", field.k(), field.p())))
}

fn coefficient_vector(field: &Field, v: &Value, path: &str) -> Result<Vec<Fe>> {
    as_array(v, path)?.iter().enumerate().map(|(n, c)| coefficient(field, c, &format!("{path}[{n}]"))).collect()
}

/// Parses a spec document; structural problems are reported as
/// `Malformed` with the offending JSON path.
pub fn parse_algebra_json(text: &str) -> Result<RawAlgebra> {
    let doc: Value = serde_json::from_str(text).map_err(|e| malformed("$", e.to_string()))?;
    RawAlgebra::from_json(&doc)
}

impl RawAlgebra {
    pub fn from_json(doc: &Value) -> Result<RawAlgebra> {
        if !doc.is_object() {
            return Err(malformed("$", "expected an object"));
        }
        let p = as_usize(field_of(doc, "$", "p")?, "$.p")?;
        let k = as_usize(field_of(doc, "$", "k")?, "$.k")?;
        let p = u32::try_from(p).map_err(|_| malformed("$.p", "too large"))?;
        let k = u32::try_from(k).map_err(|_| malformed("$.k", "too large"))?;
        let field = match doc.get("modulus") {
            None => Field::new(p, k),
            Some(m) => {
                let coeffs: Vec<u32> = index_list(m, "$.modulus")?.into_iter().map(|c| c as u32).collect();
                if coeffs.len() != k as usize {
                    return Err(malformed("$.modulus", format!("expected {k} lower coefficients")));
                }
                Field::with_modulus(p, &coeffs, None)
            }
        }
        .map_err(|e| match e {
            Error::DegreeTooLarge { .. } => e,
            other => malformed("$.p", other.to_string()),
        })?;

        let dim = as_usize(field_of(doc, "$", "dim")?, "$.dim")?;
        let unit = coefficient_vector(&field, field_of(doc, "$", "unit")?, "$.unit")?;

        let mut mul = Vec::new();
        for (n, entry) in as_array(field_of(doc, "$", "mul")?, "$.mul")?.iter().enumerate() {
            let path = format!("$.mul[{n}]");
            let parts = as_array(entry, &path)?;
            if parts.len() != 3 {
                return Err(malformed(&path, "expected [i, j, [[l, c], ...]]"));
            }
            let i = as_usize(&parts[0], &format!("{path}[0]"))?;
            let j = as_usize(&parts[1], &format!("{path}[1]"))?;
            let mut terms = Vec::new();
            for (t, term) in as_array(&parts[2], &format!("{path}[2]"))?.iter().enumerate() {
                let tpath = format!("{path}[2][{t}]");
                let pair = as_array(term, &tpath)?;
                if pair.len() != 2 {
                    return Err(malformed(&tpath, "expected [l, c]"));
                }
                let l = as_usize(&pair[0], &format!("{tpath}[0]"))?;
                let c = coefficient(&field, &pair[1], &format!("{tpath}[1]"))?;
                terms.push((l, c));
            }
            mul.push(MulEntry { i, j, terms });
        }

        let mut blocks = Vec::new();
        for (n, b) in as_array(field_of(doc, "$", "blocks")?, "$.blocks")?.iter().enumerate() {
            let path = format!("$.blocks[{n}]");
            let idempotent =
                coefficient_vector(&field, field_of(b, &path, "idempotent")?, &format!("{path}.idempotent"))?;
            let degree = as_usize(field_of(b, &path, "degree")?, &format!("{path}.degree"))?;
            let basis = index_list(field_of(b, &path, "basis")?, &format!("{path}.basis"))?;
            blocks.push(RawBlock { idempotent, degree, basis });
        }
        if blocks.is_empty() || blocks.len() > 63 {
            return Err(malformed("$.blocks", "expected between 1 and 63 blocks"));
        }
        let radical_basis = index_list(field_of(doc, "$", "radical_basis")?, "$.radical_basis")?;

        Ok(RawAlgebra { field, dim, unit, mul, blocks, radical_basis })
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let coeffs = |v: &[Fe]| Value::from(v.iter().map(|&c| f.to_json(c)).collect::<Vec<_>>());
        let mul: Vec<Value> = self
            .mul
            .iter()
            .map(|m| {
                let terms: Vec<Value> = m.terms.iter().map(|&(l, c)| json!([l, f.to_json(c)])).collect();
                json!([m.i, m.j, terms])
            })
            .collect();
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| json!({"idempotent": coeffs(&b.idempotent), "degree": b.degree, "basis": b.basis}))
            .collect();
        let mut doc = json!({
            "p": f.p(),
            "k": f.k(),
            "dim": self.dim,
            "unit": coeffs(&self.unit),
            "mul": mul,
            "blocks": blocks,
            "radical_basis": self.radical_basis,
        });
        if f.k() > 1 {
            doc["modulus"] = Value::from(f.modulus()[..f.k() as usize].to_vec());
        }
        doc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    const DUAL: &str = r#"{"p": 3, "k": 1, "dim": 2, "unit": [1, 0],
        "mul": [[0, 0, [[0, 1]]], [0, 1, [[1, 1]]], [1, 0, [[1, 1]]]],
        "blocks": [{"idempotent": [1, 0], "degree": 1, "basis": [0]}],
        "radical_basis": [1]}"#;

    #[test]
    fn parses_and_round_trips() {
        let raw = parse_algebra_json(DUAL).unwrap();
        let alg = Algebra::validate(raw.clone()).unwrap();
        assert_eq!(alg.nilpotency_class(), 2);
        let again = RawAlgebra::from_json(&raw.to_json()).unwrap();
        assert_eq!(again.mul, raw.mul);
        assert_eq!(again.blocks, raw.blocks);
    }

    #[test]
    fn errors_cite_paths() {
        let bad = DUAL.replace("[[1, 1]]]]", "[[1, 7]]]]");
        let err = parse_algebra_json(&bad).unwrap_err();
        assert!(err.to_string().contains("$.mul[2][2][0][1]"), "{err}");
        let bad = DUAL.replace("\"degree\": 1", "\"degree\": -1");
        let err = parse_algebra_json(&bad).unwrap_err();
        assert!(err.to_string().contains("$.blocks[0].degree"), "{err}");
        let err = parse_algebra_json("{\"p\": 4, \"k\": 1}").unwrap_err();
        assert!(err.to_string().contains("$.p"), "{err}");
    }
}
