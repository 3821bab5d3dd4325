//! Closed-form and brute-force supercharacter tables of `T(n, q)`, indexed
//! by the same triangular labels so they can be compared entry by entry.

use rayon::prelude::*;

use super::{cyclo_order, labels, value_with, Exponent, TriSupercharLabel, TriSuperclassLabel};
use crate::algebra::{Algebra, Idempotent};
use crate::error::{Error, Result};
use crate::scalars::{CycloNumber, Field};
use crate::supercharacter::{InductionMode, SupercharLabel, Theory};
use crate::superclass::superclass_size;
use crate::table::CharacterTable;

/// Which table `table` builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMode {
    Closed,
    Brute,
    Both,
}

/// `(c, D) ↦ (e, f, θ, λ_D)` with `e = sum_{row ∪ col(D)} E_ii` and `f` the
/// blocks where `c` is nonzero.
pub fn general_label_of_char(n: usize, chi: &TriSupercharLabel) -> SupercharLabel {
    SupercharLabel {
        e: Idempotent::from_blocks(chi.d.rows_and_cols().into_iter().map(|i| i - 1)),
        f: Idempotent::from_blocks((0..n).filter(|&i| chi.c[i] != 0)),
        theta: chi.c.iter().map(|&c| c as u64).collect(),
        lambda_rep: chi.d.element_coords(n),
    }
}

/// Index in the group of `g_{h,D'}` and its superclass.
pub fn general_label_of_class(th: &Theory<'_>, class: &TriSuperclassLabel) -> Result<(usize, usize)> {
    let g = th.group.index_of(th.alg, &class.element(th.alg))?;
    Ok((g, th.partition.class_of(g)))
}

fn group_order(n: usize, q: u32) -> u128 {
    (q as u128 - 1).pow(n as u32) * (q as u128).pow((n * (n - 1) / 2) as u32)
}

/// The table from the closed formula; superclass sizes come from stabilizer
/// counts, so nothing is enumerated.
pub fn closed_form_table(alg: &Algebra, n: usize) -> Result<CharacterTable> {
    closed_form_table_with(alg, n, Exponent::Torus)
}

pub fn closed_form_table_with(alg: &Algebra, n: usize, exponent: Exponent) -> Result<CharacterTable> {
    let field: &Field = alg.field();
    let m = cyclo_order(field);
    let (classes, chars) = labels(n, field);
    let sizes: Vec<u128> = classes.par_iter().map(|c| superclass_size(alg, &c.element(alg))).collect::<Result<_>>()?;
    let values: Vec<Vec<CycloNumber>> = chars
        .par_iter()
        .map(|chi| classes.iter().map(|c| value_with(field, chi, c, m, exponent)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(CharacterTable {
        row_labels: chars.iter().map(TriSupercharLabel::render).collect(),
        col_labels: classes.iter().map(|c| c.render(field)).collect(),
        sizes,
        values,
        group_order: group_order(n, field.q()),
        order_m: m,
    })
}

/// The table by literal induction over the enumerated group, with rows and
/// columns relabelled by the triangular labels.
pub fn brute_force_table(th: &Theory<'_>, n: usize, mode: InductionMode) -> Result<CharacterTable> {
    let alg = th.alg;
    let field = alg.field();
    let (classes, chars) = labels(n, field);
    let cols: Vec<usize> =
        classes.iter().map(|c| general_label_of_class(th, c).map(|(_, k)| k)).collect::<Result<_>>()?;
    let mut seen = vec![false; th.partition.len()];
    for &k in &cols {
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::PartitionMismatch);
        }
    }
    if cols.len() != th.partition.len() {
        return Err(Error::PartitionMismatch);
    }
    let values: Vec<Vec<CycloNumber>> = chars
        .iter()
        .map(|chi| {
            let f = th.induce(&general_label_of_char(n, chi), mode)?;
            Ok(cols.iter().map(|&k| f.values[k].clone()).collect())
        })
        .collect::<Result<_>>()?;
    let sizes = th.partition.sizes();
    Ok(CharacterTable {
        row_labels: chars.iter().map(TriSupercharLabel::render).collect(),
        col_labels: classes.iter().map(|c| c.render(field)).collect(),
        sizes: cols.iter().map(|&k| sizes[k]).collect(),
        values,
        group_order: th.group.order() as u128,
        order_m: th.order_m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Bounds;
    use crate::triangular::{degree, make_triangular};

    fn both(n: usize, p: u32, k: u32) -> (CharacterTable, CharacterTable) {
        let field = Field::new(p, k).unwrap();
        let alg = make_triangular(n, &field).unwrap();
        let th = Theory::build(&alg, &Bounds::default()).unwrap();
        (closed_form_table(&alg, n).unwrap(), brute_force_table(&th, n, InductionMode::Exhaustive).unwrap())
    }

    #[test]
    fn t22_and_t23() {
        let (c, b) = both(2, 2, 1);
        assert!(c.diff(&b).is_empty());
        assert_eq!(c.to_csv().unwrap(), "label,\"h=[1,1];D'={}\",\"h=[1,1];D'={(1,2)}\"\nsize,1,1\n\"c=[0,0];D={}\",1,1\n\"c=[0,0];D={(1,2)}\",1,-1\n");
        let (c, b) = both(2, 3, 1);
        assert_eq!(c.diff(&b), Vec::<String>::new());
        let big: Vec<String> = c.values[4].iter().map(|v| v.to_string()).collect();
        assert_eq!(big, ["4", "0", "0", "0", "-2"]);
    }

    #[test]
    fn gf4_and_t32() {
        let (c, b) = both(2, 2, 2);
        assert_eq!(c.diff(&b), Vec::<String>::new());
        let (c, b) = both(3, 2, 1);
        assert_eq!(c.diff(&b), Vec::<String>::new());
    }

    #[test]
    fn degrees_and_mapping() {
        let field = Field::new(3, 1).unwrap();
        let alg = make_triangular(3, &field).unwrap();
        let c = closed_form_table(&alg, 3).unwrap();
        let (_, chars) = labels(3, &field);
        for (row, chi) in c.values.iter().zip(&chars) {
            assert_eq!(row[0], CycloNumber::from_int(c.order_m, degree(3, &chi.d) as i128));
        }
        let th = Theory::build(&alg, &Bounds::default()).unwrap();
        let classifier = crate::superclass::Classifier::new(&alg);
        let (classes, _) = labels(3, &field);
        for cl in &classes {
            let (g, _) = general_label_of_class(&th, cl).unwrap();
            let label = classifier.classify(&alg, &th.group, &th.partition, g).unwrap();
            let e = Idempotent::from_blocks(cl.dprime.rows_and_cols().into_iter().map(|i| i - 1));
            assert_eq!(label.e, e, "{}", cl.render(&field));
        }
    }
}
