//! The algebra `t(n, q)` of upper triangular matrices, its combinatorial
//! labels (rook placements on positive roots) and the closed-form
//! supercharacter values.

mod tables;

use std::fmt;

use crate::algebra::{Algebra, MulEntry, RawAlgebra, RawBlock};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::{mult_exponent, CycloNumber, Fe, Field};

pub use tables::{
    brute_force_table, closed_form_table, closed_form_table_with, general_label_of_char, general_label_of_class,
    TableMode,
};

/// Index of `E_ij` (1-based, `i <= j`) in the basis
/// `E_11, .., E_nn, E_12, E_13, .., E_{n-1,n}`.
pub fn basis_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i <= j && j <= n);
    if i == j {
        return i - 1;
    }
    n + (1..i).map(|a| n - a).sum::<usize>() + (j - i - 1)
}

/// Builds `t(n, q)` as a validated algebra.
pub fn make_triangular(n: usize, field: &Field) -> Result<Algebra> {
    if !(2..=16).contains(&n) {
        return Err(Error::BadSize(n));
    }
    let dim = n * (n + 1) / 2;
    let mut mul = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            for k in j..=n {
                mul.push(MulEntry {
                    i: basis_index(n, i, j),
                    j: basis_index(n, j, k),
                    terms: vec![(basis_index(n, i, k), Fe::ONE)],
                });
            }
        }
    }
    let mut unit = vec![Fe::ZERO; dim];
    let mut blocks = Vec::with_capacity(n);
    for i in 0..n {
        unit[i] = Fe::ONE;
        let mut e = vec![Fe::ZERO; dim];
        e[i] = Fe::ONE;
        blocks.push(RawBlock { idempotent: e, degree: 1, basis: vec![i] });
    }
    Algebra::validate(RawAlgebra { field: field.clone(), dim, unit, mul, blocks, radical_basis: (n..dim).collect() })
}

/// A positive root `(i, j)`, `i < j`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Root {
        assert!(i < j, "a positive root needs i < j");
        Root { i, j }
    }
}

/// A rook placement on the positive roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicSubset {
    roots: Vec<Root>,
}

impl BasicSubset {
    /// Sorts the roots and checks the rook condition.
    pub fn new(mut roots: Vec<Root>) -> Option<BasicSubset> {
        roots.sort();
        roots.dedup();
        for (a, r) in roots.iter().enumerate() {
            if roots[a + 1..].iter().any(|s| s.i == r.i || s.j == r.j) {
                return None;
            }
        }
        Some(BasicSubset { roots })
    }

    pub fn empty() -> BasicSubset {
        BasicSubset { roots: Vec::new() }
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    /// `row(D) ∪ col(D)` as a sorted list.
    pub fn rows_and_cols(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.roots.iter().flat_map(|r| [r.i, r.j]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `x_D = sum E_ij` in J-coordinates of `t(n, q)`.
    pub fn element_coords(&self, n: usize) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; n * (n - 1) / 2];
        for r in &self.roots {
            v[basis_index(n, r.i, r.j) - n] = Fe::ONE;
        }
        v
    }
}

impl fmt::Display for BasicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(|r| format!("({},{})", r.i, r.j)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All basic subsets for `n`, by size and then by root list.
pub fn basic_subsets(n: usize) -> Vec<BasicSubset> {
    let roots: Vec<Root> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| Root { i, j })).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn place(
        roots: &[Root],
        from: usize,
        rows: &mut u64,
        cols: &mut u64,
        current: &mut Vec<Root>,
        out: &mut Vec<BasicSubset>,
    ) {
        out.push(BasicSubset { roots: current.clone() });
        for k in from..roots.len() {
            let r = roots[k];
            if *rows >> r.i & 1 == 1 || *cols >> r.j & 1 == 1 {
                continue;
            }
            *rows |= 1 << r.i;
            *cols |= 1 << r.j;
            current.push(r);
            place(roots, k + 1, rows, cols, current, out);
            current.pop();
            *rows &= !(1 << r.i);
            *cols &= !(1 << r.j);
        }
    }
    place(&roots, 0, &mut 0, &mut 0, &mut current, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.roots.cmp(&b.roots)));
    out
}

/// The combinatorial regularity criterion: `row(D) ∪ col(D) = [1, n]`.
pub fn is_regular_d(d: &BasicSubset, n: usize) -> bool {
    d.rows_and_cols().len() == n
}

/// A superclass label `(h, D')` with `h_i = 1` on `row(D') ∪ col(D')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriSuperclassLabel {
    pub h: Vec<Fe>,
    pub dprime: BasicSubset,
}

/// A supercharacter label `(c, D)` with `c_i = 0` on `row(D) ∪ col(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriSupercharLabel {
    pub c: Vec<u32>,
    pub d: BasicSubset,
}

impl TriSuperclassLabel {
    pub fn render(&self, field: &Field) -> String {
        let h: Vec<String> = self.h.iter().map(|&x| field.render(x)).collect();
        format!("h=[{}];D'={}", h.join(","), self.dprime)
    }

    /// `g_{h,D'} = h + x_{D'}` as an element of `t(n, q)`.
    pub fn element(&self, alg: &Algebra) -> crate::algebra::AlgebraElement {
        let n = self.h.len();
        let mut v = vec![Fe::ZERO; alg.dim()];
        v[..n].copy_from_slice(&self.h);
        for (k, c) in self.dprime.element_coords(n).into_iter().enumerate() {
            v[n + k] = c;
        }
        crate::algebra::AlgebraElement(v)
    }
}

impl TriSupercharLabel {
    pub fn render(&self) -> String {
        let c: Vec<String> = self.c.iter().map(u32::to_string).collect();
        format!("c=[{}];D={}", c.join(","), self.d)
    }
}

/// All vectors over `0..base` of length `len`, lexicographically, with the
/// positions in `fixed` held at 0.
fn free_vectors(len: usize, base: u32, fixed: &[usize]) -> Vec<Vec<u32>> {
    let free: Vec<usize> = (0..len).filter(|k| !fixed.contains(&(k + 1))).collect();
    let count = (base as usize).pow(free.len() as u32);
    (0..count)
        .map(|mut code| {
            let mut v = vec![0u32; len];
            for &k in free.iter().rev() {
                v[k] = (code % base as usize) as u32;
                code /= base as usize;
            }
            v
        })
        .collect()
}

/// Superclass and supercharacter labels of `T(n, q)` in canonical order.
pub fn labels(n: usize, field: &Field) -> (Vec<TriSuperclassLabel>, Vec<TriSupercharLabel>) {
    let q1 = field.q() - 1;
    let mut classes = Vec::new();
    let mut chars = Vec::new();
    for d in basic_subsets(n) {
        let fixed = d.rows_and_cols();
        for v in free_vectors(n, q1, &fixed) {
            // h runs over the nonzero field codes 1..q-1
            classes.push(TriSuperclassLabel { h: v.iter().map(|&x| Fe(x + 1)).collect(), dprime: d.clone() });
            chars.push(TriSupercharLabel { c: v, d: d.clone() });
        }
    }
    (classes, chars)
}

/// `sum_D (q - 1)^{n - |row(D) ∪ col(D)|}`.
pub fn label_count(n: usize, q: u32) -> u64 {
    basic_subsets(n).iter().map(|d| (q as u64 - 1).pow((n - d.rows_and_cols().len()) as u32)).sum()
}

/// `(δ', δ'', δ_0)`.
pub fn delta_factors(d: &BasicSubset, h: &[Fe], dprime: &BasicSubset) -> (bool, bool, bool) {
    let mut d1 = true;
    let mut d2 = true;
    for g in d.roots() {
        for gp in dprime.roots() {
            // Δ'(γ) = {(i, k) : i < k < j}
            if gp.i == g.i && g.i < gp.j && gp.j < g.j {
                d1 = false;
            }
            // Δ''(γ) = {(k, j) : i < k < j}
            if gp.j == g.j && g.i < gp.i && gp.i < g.j {
                d2 = false;
            }
        }
    }
    let d0 = d.rows_and_cols().iter().all(|&i| h[i - 1] == Fe::ONE);
    (d1, d2, d0)
}

/// `(m, s)`: `m` is the sum over `γ = (i, j) ∈ D` of the corank of the window
/// `[i+1, j-1]` of `g - 1`, where `g = h + x_{D'}`; `s = |D| + |D \ D'|`.
pub fn m_and_s(field: &Field, d: &BasicSubset, h: &[Fe], dprime: &BasicSubset) -> Result<(u32, u32)> {
    let n = h.len();
    let mut g1 = vec![vec![Fe::ZERO; n]; n];
    for i in 0..n {
        g1[i][i] = field.sub(h[i], Fe::ONE);
    }
    for r in dprime.roots() {
        g1[r.i - 1][r.j - 1] = Fe::ONE;
    }
    let mut m = 0u32;
    for g in d.roots() {
        let window: Vec<usize> = (g.i + 1..g.j).collect();
        let rows: Vec<Vec<Fe>> = window.iter().map(|&a| window.iter().map(|&b| g1[a - 1][b - 1]).collect()).collect();
        let zero_rows = rows.iter().filter(|row| row.iter().all(|c| c.is_zero())).count();
        let corank = window.len() - linalg::rank(field, &Matrix::from_rows(window.len(), &rows));
        if corank != zero_rows {
            return Err(Error::LabelMismatch(format!(
                "window of {:?} in g - 1 has corank {corank} but {zero_rows} zero rows",
                (g.i, g.j)
            )));
        }
        m += corank as u32;
    }
    let s = d.len() + d.roots().iter().filter(|r| !dprime.contains(r)).count();
    Ok((m, s as u32))
}

/// Exponent of `q - 1` in the closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    /// `|row(D) ∪ col(D)| - |D ∩ D'|`, one factor per torus coordinate
    /// on `row(D) ∪ col(D)`, less one per root shared with `D'`.
    Torus,
    /// `s(D, D') = |D| + |D \ D'|`, two factors per root. Agrees with
    /// [`Exponent::Torus`] unless some index is both a row and a column of `D`.
    Printed,
}

/// `|row(D) ∪ col(D)| - |D ∩ D'|`.
pub fn torus_exponent(d: &BasicSubset, dprime: &BasicSubset) -> u32 {
    (d.rows_and_cols().len() - d.roots().iter().filter(|r| dprime.contains(r)).count()) as u32
}

/// The closed-form supercharacter value at order `m_order`.
pub fn value(field: &Field, chi: &TriSupercharLabel, class: &TriSuperclassLabel, m_order: u32) -> Result<CycloNumber> {
    value_with(field, chi, class, m_order, Exponent::Torus)
}

pub fn value_with(
    field: &Field,
    chi: &TriSupercharLabel,
    class: &TriSuperclassLabel,
    m_order: u32,
    exponent: Exponent,
) -> Result<CycloNumber> {
    let (d1, d2, d0) = delta_factors(&chi.d, &class.h, &class.dprime);
    if !(d1 && d2 && d0) {
        return Ok(CycloNumber::zero(m_order));
    }
    let (m, s) = m_and_s(field, &chi.d, &class.h, &class.dprime)?;
    let s = match exponent {
        Exponent::Printed => s,
        Exponent::Torus => torus_exponent(&chi.d, &class.dprime),
    };
    let sign: i128 = if chi.d.roots().iter().filter(|r| class.dprime.contains(r)).count() % 2 == 0 { 1 } else { -1 };
    let q = field.q() as i128;
    let magnitude = sign * q.pow(m) * (q - 1).pow(s);
    let mut exp = 0u64;
    for (&c, &h) in chi.c.iter().zip(&class.h) {
        exp += mult_exponent(field, c, h, m_order)? as u64;
    }
    Ok(CycloNumber::root(m_order, exp).scale(magnitude.into()))
}

/// `q^{sum (j - i - 1)} (q - 1)^{|row(D) ∪ col(D)|}`.
pub fn degree(q: u32, d: &BasicSubset) -> u128 {
    let e: usize = d.roots().iter().map(|r| r.j - r.i - 1).sum();
    (q as u128).pow(e as u32) * (q as u128 - 1).pow(d.rows_and_cols().len() as u32)
}

/// `q^{sum (j - i - 1)} (q - 1)^{2|D|}`, the degree under [`Exponent::Printed`].
pub fn printed_degree(q: u32, d: &BasicSubset) -> u128 {
    let e: usize = d.roots().iter().map(|r| r.j - r.i - 1).sum();
    (q as u128).pow(e as u32) * (q as u128 - 1).pow(2 * d.len() as u32)
}

/// The common cyclotomic order `lcm(p, q - 1)`.
pub fn cyclo_order(field: &Field) -> u32 {
    num_integer::lcm(field.p(), field.q() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn d(roots: &[(usize, usize)]) -> BasicSubset {
        BasicSubset::new(roots.iter().map(|&(i, j)| Root::new(i, j)).collect()).unwrap()
    }

    #[test]
    fn triangular_algebra_shapes() {
        let a = make_triangular(2, &f(2)).unwrap();
        assert_eq!((a.dim(), a.nilpotency_class()), (3, 2));
        let a = make_triangular(4, &f(3)).unwrap();
        assert_eq!((a.dim(), a.nilpotency_class()), (10, 4));
        assert!(matches!(make_triangular(1, &f(2)), Err(Error::BadSize(1))));
        assert_eq!(basis_index(3, 1, 2), 3);
        assert_eq!(basis_index(3, 1, 3), 4);
        assert_eq!(basis_index(3, 2, 3), 5);
    }

    #[test]
    fn rook_counts() {
        assert_eq!(basic_subsets(2).len(), 2);
        assert_eq!(basic_subsets(3).len(), 5);
        assert_eq!(basic_subsets(4).len(), 15);
        assert_eq!(basic_subsets(5).len(), 52);
        assert!(BasicSubset::new(vec![Root::new(1, 2), Root::new(1, 3)]).is_none());
        assert_eq!(basic_subsets(3)[0], BasicSubset::empty());
    }

    #[test]
    fn regularity_criterion() {
        assert!(is_regular_d(&d(&[(1, 2)]), 2));
        assert!(!is_regular_d(&d(&[(1, 3)]), 3));
        assert!(is_regular_d(&d(&[(1, 2), (3, 4)]), 4));
    }

    #[test]
    fn label_counts() {
        for (n, p, count) in [(2, 2, 2), (2, 3, 5), (3, 2, 5), (3, 3, 15), (4, 2, 15), (4, 3, 52)] {
            let (cl, ch) = labels(n, &f(p));
            assert_eq!(cl.len(), count);
            assert_eq!(ch.len(), count);
            assert_eq!(label_count(n, p), count as u64);
        }
        let (cl, ch) = labels(2, &f(3));
        assert_eq!(cl[0].render(&f(3)), "h=[1,1];D'={}");
        assert_eq!(cl[4].render(&f(3)), "h=[1,1];D'={(1,2)}");
        assert_eq!(ch[4].render(), "c=[0,0];D={(1,2)}");
    }

    #[test]
    fn delta_examples() {
        let h = vec![Fe(1); 3];
        assert!(!delta_factors(&d(&[(1, 3)]), &h, &d(&[(1, 2)])).0);
        assert!(!delta_factors(&d(&[(1, 3)]), &h, &d(&[(2, 3)])).1);
        assert!(delta_factors(&d(&[(1, 2)]), &[Fe(1), Fe(1), Fe(2)], &BasicSubset::empty()).2);
    }

    #[test]
    fn m_and_s_examples() {
        let field = f(3);
        assert_eq!(m_and_s(&field, &BasicSubset::empty(), &[Fe(1); 2], &BasicSubset::empty()).unwrap(), (0, 0));
        assert_eq!(m_and_s(&field, &d(&[(1, 4)]), &[Fe(1); 4], &d(&[(2, 3)])).unwrap(), (1, 2));
        assert_eq!(m_and_s(&field, &d(&[(1, 2)]), &[Fe(1); 2], &d(&[(1, 2)])).unwrap(), (0, 1));
    }

    #[test]
    fn value_examples() {
        for p in [2u32, 3, 5] {
            let field = f(p);
            let m = cyclo_order(&field);
            let q = p as i128;
            let big = TriSupercharLabel { c: vec![0, 0], d: d(&[(1, 2)]) };
            let unip = TriSuperclassLabel { h: vec![Fe(1); 2], dprime: d(&[(1, 2)]) };
            assert_eq!(value(&field, &big, &unip, m).unwrap(), CycloNumber::from_int(m, -(q - 1)));
            let chi = TriSupercharLabel { c: vec![0; 4], d: d(&[(1, 4)]) };
            let one = TriSuperclassLabel { h: vec![Fe(1); 4], dprime: BasicSubset::empty() };
            assert_eq!(value(&field, &chi, &one, m).unwrap(), CycloNumber::from_int(m, q * q * (q - 1) * (q - 1)));
            assert_eq!(degree(p, &d(&[(1, 4)])), (q * q * (q - 1) * (q - 1)) as u128);
        }
        // D = ∅ gives θ(h)
        let field = f(5);
        let m = cyclo_order(&field);
        let chi = TriSupercharLabel { c: vec![2, 0], d: BasicSubset::empty() };
        let cls = TriSuperclassLabel { h: vec![Fe(2), Fe(1)], dprime: BasicSubset::empty() };
        assert_eq!(value(&field, &chi, &cls, m).unwrap(), CycloNumber::from_int(m, -1));
    }

    #[test]
    fn exponents_agree_off_chains() {
        let field = f(3);
        let m = cyclo_order(&field);
        let one = |dp: &[(usize, usize)]| TriSuperclassLabel { h: vec![Fe(1); 3], dprime: d(dp) };
        let chain = TriSupercharLabel { c: vec![0; 3], d: d(&[(1, 2), (2, 3)]) };
        // 2 | 216 but 16 does not: the chain shares the torus coordinate 2
        assert_eq!(value_with(&field, &chain, &one(&[]), m, Exponent::Printed).unwrap(), CycloNumber::from_int(m, 16));
        assert_eq!(value(&field, &chain, &one(&[]), m).unwrap(), CycloNumber::from_int(m, 8));
        assert_eq!(value(&field, &chain, &one(&[(1, 2), (2, 3)]), m).unwrap(), CycloNumber::from_int(m, 2));
        assert_eq!((degree(3, &chain.d), printed_degree(3, &chain.d)), (8, 16));
        let single = TriSupercharLabel { c: vec![0; 3], d: d(&[(1, 3)]) };
        for dp in [&[][..], &[(1, 3)], &[(1, 2)]] {
            assert_eq!(
                value(&field, &single, &one(dp), m).unwrap(),
                value_with(&field, &single, &one(dp), m, Exponent::Printed).unwrap()
            );
        }
    }
}
