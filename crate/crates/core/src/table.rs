//! Supercharacter tables and their CSV / JSON exports.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::{rational_string, CycloNumber, Rational};

/// Exact supercharacter values, rows indexed by supercharacters and columns
/// by superclasses (identity class first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub sizes: Vec<u128>,
    pub values: Vec<Vec<CycloNumber>>,
    pub group_order: u128,
    pub order_m: u32,
}

impl CharacterTable {
    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    /// `(1/|G|) sum_K |K| φ(K) conj(ψ(K))` for rows `i`, `j`.
    pub fn inner_product(&self, i: usize, j: usize) -> CycloNumber {
        inner_product(&self.sizes, self.group_order, &self.values[i], &self.values[j])
            .expect("rows share the column partition")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let io = |e: csv::Error| Error::LabelMismatch(format!("csv: {e}"));
        let mut header = vec!["label".to_string()];
        header.extend(self.col_labels.iter().cloned());
        w.write_record(&header).map_err(io)?;
        let mut sizes = vec!["size".to_string()];
        sizes.extend(self.sizes.iter().map(u128::to_string));
        w.write_record(&sizes).map_err(io)?;
        for (label, row) in self.row_labels.iter().zip(&self.values) {
            let mut rec = vec![label.clone()];
            rec.extend(row.iter().map(CycloNumber::to_string));
            w.write_record(&rec).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::LabelMismatch(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self) -> Value {
        let cell = |v: &CycloNumber| Value::from(v.coeffs().iter().map(rational_string).collect::<Vec<_>>());
        json!({
            "order_m": self.order_m,
            "group_order": self.group_order.to_string(),
            "columns": self.col_labels.iter().zip(&self.sizes)
                .map(|(l, s)| json!({"label": l, "size": s.to_string()}))
                .collect::<Vec<_>>(),
            "rows": self.row_labels.iter().zip(&self.values)
                .map(|(l, row)| json!({"label": l, "values": row.iter().map(cell).collect::<Vec<_>>()}))
                .collect::<Vec<_>>(),
        })
    }

    /// Every difference from `other`, one line each; empty iff identical.
    pub fn diff(&self, other: &CharacterTable) -> Vec<String> {
        let mut out = Vec::new();
        if self.order_m != other.order_m {
            out.push(format!("cyclotomic order {} vs {}", self.order_m, other.order_m));
        }
        if self.group_order != other.group_order {
            out.push(format!("group order {} vs {}", self.group_order, other.group_order));
        }
        if self.row_labels != other.row_labels {
            out.push(format!("row labels differ ({} vs {} rows)", self.rows(), other.rows()));
        }
        if self.col_labels != other.col_labels {
            out.push(format!("column labels differ ({} vs {} columns)", self.cols(), other.cols()));
        }
        if !out.is_empty() {
            return out;
        }
        for (k, (a, b)) in self.sizes.iter().zip(&other.sizes).enumerate() {
            if a != b {
                out.push(format!("size of {}: {a} vs {b}", self.col_labels[k]));
            }
        }
        for (i, (ra, rb)) in self.values.iter().zip(&other.values).enumerate() {
            for (j, (a, b)) in ra.iter().zip(rb).enumerate() {
                if a != b {
                    out.push(format!("{} at {}: {a} vs {b}", self.row_labels[i], self.col_labels[j]));
                }
            }
        }
        out
    }

    /// Adds 1 to one entry; a negative control for the axiom checks.
    pub fn perturb(&mut self, row: usize, col: usize) {
        let m = self.order_m;
        self.values[row][col] = &self.values[row][col] + &CycloNumber::one(m);
    }
}

/// Inner product of two class functions given by their superclass values.
pub fn inner_product(sizes: &[u128], group_order: u128, a: &[CycloNumber], b: &[CycloNumber]) -> Result<CycloNumber> {
    if a.len() != sizes.len() || b.len() != sizes.len() {
        return Err(Error::PartitionMismatch);
    }
    let m = a.first().map(CycloNumber::order).unwrap_or(1);
    let mut acc = CycloNumber::zero(m);
    for ((x, y), &s) in a.iter().zip(b).zip(sizes) {
        let term = x.checked_mul(&y.conj())?.scale(Rational::from_integer(s as i128));
        acc = acc.checked_add(&term)?;
    }
    Ok(acc.scale(Rational::new(1, group_order as i128)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> CharacterTable {
        let one = CycloNumber::one(2);
        let neg = CycloNumber::from_int(2, -1);
        CharacterTable {
            row_labels: vec!["a".into(), "b,c".into()],
            col_labels: vec!["1".into(), "x".into()],
            sizes: vec![1, 1],
            values: vec![vec![one.clone(), one.clone()], vec![one, neg]],
            group_order: 2,
            order_m: 2,
        }
    }

    #[test]
    fn csv_layout() {
        let csv = z2().to_csv().unwrap();
        assert_eq!(csv, "label,1,x\nsize,1,1\na,1,1\n\"b,c\",1,-1\n");
    }

    #[test]
    fn orthogonality_and_diff() {
        let mut t = z2();
        assert_eq!(t.inner_product(0, 1), CycloNumber::zero(2));
        assert_eq!(t.inner_product(1, 1), CycloNumber::one(2));
        let orig = t.clone();
        t.perturb(1, 1);
        assert_eq!(orig.diff(&t).len(), 1);
        assert!(orig.diff(&orig).is_empty());
        assert_eq!(t.to_json()["rows"][1]["values"][1], json!(["0"]));
    }
}
