//! Tables do not depend on the choice of field modulus or generator.

use supchar::algebra::Bounds;
use supchar::scalars::{Fe, Field};
use supchar::supercharacter::{InductionMode, Theory};
use supchar::table::CharacterTable;
use supchar::triangular::{brute_force_table, closed_form_table, make_triangular};

fn tables(field: &Field) -> (CharacterTable, CharacterTable) {
    let alg = make_triangular(2, field).unwrap();
    let th = Theory::build(&alg, &Bounds::default()).unwrap();
    (closed_form_table(&alg, 2).unwrap(), brute_force_table(&th, 2, InductionMode::Exhaustive).unwrap())
}

/// Rows and columns forgotten: each row as a sorted list of (size, value).
fn shape(t: &CharacterTable) -> Vec<Vec<(u128, String)>> {
    let mut rows: Vec<Vec<(u128, String)>> = t
        .values
        .iter()
        .map(|row| {
            let mut r: Vec<(u128, String)> = t.sizes.iter().copied().zip(row.iter().map(|v| v.to_string())).collect();
            r.sort();
            r
        })
        .collect();
    rows.sort();
    rows
}

#[test]
fn gf4_other_generator() {
    let std = Field::new(2, 2).unwrap();
    let alt = Field::with_modulus(2, &[1, 1], Some(Fe(3))).unwrap();
    assert_eq!(std.modulus(), alt.modulus());
    assert_ne!(std.generator(), alt.generator());
    let (c0, b0) = tables(&std);
    let (c1, b1) = tables(&alt);
    assert!(c0.diff(&b0).is_empty());
    assert!(c1.diff(&b1).is_empty());
    // same modulus, so columns match by label; rows are permuted
    assert_eq!(c0.col_labels, c1.col_labels);
    assert_eq!(c0.sizes, c1.sizes);
    let mut r0 = c0.values.clone();
    let mut r1 = c1.values.clone();
    let key = |v: &Vec<supchar::scalars::CycloNumber>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    r0.sort_by_key(key);
    r1.sort_by_key(key);
    assert_eq!(r0, r1);
    assert_ne!(c0.values, c1.values);
}

#[test]
fn gf9_other_modulus() {
    let std = Field::new(3, 2).unwrap();
    let alt = Field::with_modulus(3, &[2, 2], None).unwrap();
    assert_ne!(std.modulus(), alt.modulus());
    let (c0, b0) = tables(&std);
    let (c1, b1) = tables(&alt);
    assert!(c0.diff(&b0).is_empty());
    assert!(c1.diff(&b1).is_empty());
    assert_eq!(c0.rows(), 65);
    assert_eq!(shape(&c0), shape(&c1));
}
