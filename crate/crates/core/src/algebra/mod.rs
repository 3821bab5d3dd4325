//! Reduced finite-dimensional algebras `A = S + J` over GF(q), their unit
//! groups, the triple group acting on `J`, `J*` and `G`, and orbit
//! enumeration.

mod action;
mod group;
mod idempotent;
mod json;
mod orbit;

use crate::error::{Error, Result, ValidationKind};
use crate::linalg::{self, Matrix};
use crate::scalars::{Fe, Field};

pub use action::{r_act, rho, rho_dual, ActionSpace, Generators, TildeTriple};
pub use group::UnitGroup;
pub use idempotent::Idempotent;
pub use json::{parse_algebra_json, MulEntry, RawAlgebra, RawBlock};
pub(crate) use orbit::Peirce;
pub use orbit::{
    census, is_singular, is_singular_form, is_singular_form_in, is_singular_in, orbit_indices, orbit_of_element,
    orbit_of_form, OrbitCensus, OrbitRecord, SpaceTag,
};

/// Enumeration limits shared by every exhaustive computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Maximum number of group elements enumerated.
    pub group: u64,
    /// Maximum number of vectors in an enumerated space (`J` or `J*`).
    pub space: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { group: 1 << 17, space: 1 << 20 }
    }
}

impl Bounds {
    /// Defaults, with `SUPCHAR_BOUND` overriding the group bound (and
    /// raising the space bound if it is larger).
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        if let Some(v) = std::env::var("SUPCHAR_BOUND").ok().and_then(|s| s.trim().parse::<u64>().ok()) {
            b = b.with_group(v);
        }
        b
    }

    pub fn with_group(mut self, group: u64) -> Self {
        self.group = group;
        self.space = self.space.max(group);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement(pub Vec<Fe>);

impl AlgebraElement {
    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }
}

/// A linear form on `J`, stored by its values on the radical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualForm(pub Vec<Fe>);

impl DualForm {
    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }
}

/// An invertible element together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    element: AlgebraElement,
    inverse: AlgebraElement,
}

impl GroupElement {
    pub fn element(&self) -> &AlgebraElement {
        &self.element
    }

    pub fn inverse(&self) -> &AlgebraElement {
        &self.inverse
    }

    pub fn inverted(&self) -> GroupElement {
        GroupElement { element: self.inverse.clone(), inverse: self.element.clone() }
    }
}

/// One primitive block `k_i e_i` of S.
#[derive(Clone, Debug)]
pub struct Block {
    pub idempotent: AlgebraElement,
    pub basis: Vec<usize>,
    /// A generator of the cyclic group `k_i^*`, as an element of the block.
    pub generator: AlgebraElement,
    /// `|k_i^*| = q^{d_i} - 1`.
    pub unit_order: u64,
    dlog: Vec<u32>,
}

impl Block {
    pub fn degree(&self) -> usize {
        self.basis.len()
    }
}

/// Sparse products `(j, b_i b_j)` for one basis element `b_i`.
type ProductRow = Vec<(usize, Vec<(usize, Fe)>)>;

#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    /// `table[i]` lists `(j, b_i b_j)` for the nonzero basis products.
    table: Vec<ProductRow>,
    unit: AlgebraElement,
    blocks: Vec<Block>,
    radical: Vec<usize>,
    radical_pos: Vec<Option<usize>>,
    nilpotency_class: usize,
    raw: RawAlgebra,
}

impl Algebra {
    /// Checks every standing hypothesis on `A = S + J` and builds the
    /// validated algebra.
    pub fn validate(raw: RawAlgebra) -> Result<Algebra> {
        let field = raw.field.clone();
        let dim = raw.dim;
        let malformed = |path: String, detail: String| Error::validation(ValidationKind::Malformed, path, detail);

        if raw.unit.len() != dim {
            return Err(malformed("$.unit".into(), format!("expected {dim} coefficients")));
        }
        let mut table: Vec<ProductRow> = vec![Vec::new(); dim];
        for (n, entry) in raw.mul.iter().enumerate() {
            if entry.i >= dim || entry.j >= dim {
                return Err(malformed(format!("$.mul[{n}]"), "basis index out of range".into()));
            }
            if let Some((l, _)) = entry.terms.iter().find(|(l, _)| *l >= dim) {
                return Err(malformed(format!("$.mul[{n}]"), format!("result index {l} out of range")));
            }
            if table[entry.i].iter().any(|(j, _)| *j == entry.j) {
                return Err(malformed(format!("$.mul[{n}]"), format!("duplicate product ({}, {})", entry.i, entry.j)));
            }
            let mut dense = vec![Fe::ZERO; dim];
            for &(l, c) in &entry.terms {
                dense[l] = field.add(dense[l], c);
            }
            let terms: Vec<(usize, Fe)> = dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                table[entry.i].push((entry.j, terms));
            }
        }
        for row in table.iter_mut() {
            row.sort_by_key(|(j, _)| *j);
        }

        // S + J must split the basis
        let mut owner: Vec<Option<String>> = vec![None; dim];
        let mut claim = |idx: usize, path: String| -> Result<()> {
            if idx >= dim {
                return Err(Error::validation(ValidationKind::Malformed, path, format!("index {idx} out of range")));
            }
            if let Some(prev) = &owner[idx] {
                return Err(Error::validation(
                    ValidationKind::NotDirectSum,
                    path,
                    format!("basis index {idx} already used by {prev}"),
                ));
            }
            owner[idx] = Some(path);
            Ok(())
        };
        for (b, block) in raw.blocks.iter().enumerate() {
            if block.idempotent.len() != dim {
                return Err(malformed(format!("$.blocks[{b}].idempotent"), format!("expected {dim} coefficients")));
            }
            if block.degree != block.basis.len() || block.degree == 0 {
                return Err(malformed(
                    format!("$.blocks[{b}].degree"),
                    format!("degree {} does not match basis of length {}", block.degree, block.basis.len()),
                ));
            }
            for (t, &idx) in block.basis.iter().enumerate() {
                claim(idx, format!("$.blocks[{b}].basis[{t}]"))?;
            }
        }
        for (t, &idx) in raw.radical_basis.iter().enumerate() {
            claim(idx, format!("$.radical_basis[{t}]"))?;
        }
        if let Some(missing) = owner.iter().position(Option::is_none) {
            return Err(Error::validation(
                ValidationKind::NotDirectSum,
                "$.blocks",
                format!("basis index {missing} lies in neither S nor J"),
            ));
        }

        let mut radical_pos = vec![None; dim];
        for (t, &idx) in raw.radical_basis.iter().enumerate() {
            radical_pos[idx] = Some(t);
        }
        let mut alg = Algebra {
            field,
            dim,
            table,
            unit: AlgebraElement(raw.unit.clone()),
            blocks: Vec::new(),
            radical: raw.radical_basis.clone(),
            radical_pos,
            nilpotency_class: 0,
            raw: raw.clone(),
        };

        for i in 0..dim {
            for j in 0..dim {
                let bij = alg.mul(&alg.basis(i), &alg.basis(j));
                for l in 0..dim {
                    let left = alg.mul(&bij, &alg.basis(l));
                    let right = alg.mul(&alg.basis(i), &alg.mul(&alg.basis(j), &alg.basis(l)));
                    if left != right {
                        return Err(Error::validation(
                            ValidationKind::NotAssociative,
                            "$.mul",
                            format!("(b{i} b{j}) b{l} != b{i} (b{j} b{l})"),
                        ));
                    }
                }
            }
        }
        for i in 0..dim {
            let b = alg.basis(i);
            if alg.mul(&alg.unit, &b) != b || alg.mul(&b, &alg.unit) != b {
                return Err(Error::validation(
                    ValidationKind::BadUnit,
                    "$.unit",
                    format!("unit is not a two-sided identity on b{i}"),
                ));
            }
        }

        // J is a two-sided ideal and nilpotent
        for (t, &r) in alg.radical.iter().enumerate() {
            for i in 0..dim {
                let left = alg.mul(&alg.basis(i), &alg.basis(r));
                let right = alg.mul(&alg.basis(r), &alg.basis(i));
                if !alg.in_radical(&left) || !alg.in_radical(&right) {
                    return Err(Error::validation(
                        ValidationKind::RadicalNotIdeal,
                        format!("$.radical_basis[{t}]"),
                        format!("a product of b{r} with b{i} leaves J"),
                    ));
                }
            }
        }
        alg.nilpotency_class = alg.compute_nilpotency_class()?;

        // idempotents
        let mut sum = alg.zero();
        for (b, block) in raw.blocks.iter().enumerate() {
            let e = AlgebraElement(block.idempotent.clone());
            let path = format!("$.blocks[{b}].idempotent");
            if (0..dim).any(|i| !e.0[i].is_zero() && !block.basis.contains(&i)) {
                return Err(Error::validation(
                    ValidationKind::BadIdempotents,
                    path,
                    "idempotent lies outside its block",
                ));
            }
            if alg.mul(&e, &e) != e {
                return Err(Error::validation(ValidationKind::BadIdempotents, path, "e*e != e"));
            }
            for (c, other) in raw.blocks.iter().enumerate().filter(|(c, _)| *c != b) {
                let f = AlgebraElement(other.idempotent.clone());
                if !alg.is_zero(&alg.mul(&e, &f)) {
                    return Err(Error::validation(ValidationKind::BadIdempotents, path, format!("e_{b} e_{c} != 0")));
                }
            }
            for &i in &block.basis {
                let bi = alg.basis(i);
                if alg.mul(&e, &bi) != bi || alg.mul(&bi, &e) != bi {
                    return Err(Error::validation(
                        ValidationKind::BadIdempotents,
                        path,
                        format!("e_{b} is not the unit of its block (fails on b{i})"),
                    ));
                }
            }
            sum = alg.add(&sum, &e);
        }
        if sum != alg.unit {
            return Err(Error::validation(
                ValidationKind::BadIdempotents,
                "$.blocks",
                "block idempotents do not sum to the unit",
            ));
        }

        // S is a commutative subalgebra
        let s_basis: Vec<usize> = raw.blocks.iter().flat_map(|b| b.basis.iter().copied()).collect();
        for &i in &s_basis {
            for &j in &s_basis {
                let ij = alg.mul(&alg.basis(i), &alg.basis(j));
                if ij != alg.mul(&alg.basis(j), &alg.basis(i)) {
                    return Err(Error::validation(
                        ValidationKind::SNotCommutative,
                        "$.blocks",
                        format!("b{i} b{j} != b{j} b{i}"),
                    ));
                }
                if !alg.is_zero(&alg.j_part(&ij)) {
                    return Err(Error::validation(
                        ValidationKind::NotDirectSum,
                        "$.blocks",
                        format!("b{i} b{j} leaves S"),
                    ));
                }
            }
        }

        let mut blocks = Vec::with_capacity(raw.blocks.len());
        for (b, block) in raw.blocks.iter().enumerate() {
            blocks.push(alg.build_block(b, block)?);
        }
        alg.blocks = blocks;
        Ok(alg)
    }

    fn compute_nilpotency_class(&self) -> Result<usize> {
        if self.radical.is_empty() {
            return Ok(1);
        }
        let radical_vecs: Vec<Vec<Fe>> = self.radical.iter().map(|&r| self.basis(r).0).collect();
        let mut power = linalg::span_basis(&self.field, self.dim, &radical_vecs);
        let mut k = 1;
        while !power.is_empty() {
            let products: Vec<Vec<Fe>> = power
                .iter()
                .flat_map(|u| self.radical.iter().map(move |&r| self.mul(&AlgebraElement(u.clone()), &self.basis(r)).0))
                .collect();
            let next = linalg::span_basis(&self.field, self.dim, &products);
            if next.len() == power.len() {
                return Err(Error::validation(
                    ValidationKind::RadicalNotNilpotent,
                    "$.radical_basis",
                    format!("J^{} = J^{} != 0", k, k + 1),
                ));
            }
            power = next;
            k += 1;
        }
        Ok(k)
    }

    fn build_block(&self, b: usize, raw: &RawBlock) -> Result<Block> {
        let q = self.field.q() as u64;
        let d = raw.basis.len() as u32;
        let size = q.checked_pow(d).filter(|&s| s <= 1 << 20).ok_or_else(|| {
            Error::validation(ValidationKind::BlockNotField, format!("$.blocks[{b}]"), "block too large to tabulate")
        })?;
        let unit_order = size - 1;
        let e = AlgebraElement(raw.idempotent.clone());
        let candidates: Box<dyn Iterator<Item = AlgebraElement>> = if d == 1 {
            Box::new(std::iter::once(self.scale(self.field.generator(), &e)))
        } else {
            Box::new((1..size).map(|code| self.block_element(&raw.basis, code)))
        };
        let mut tmp_block = Block {
            idempotent: e.clone(),
            basis: raw.basis.clone(),
            generator: e.clone(),
            unit_order,
            dlog: Vec::new(),
        };
        for cand in candidates {
            let mut dlog = vec![u32::MAX; size as usize];
            let mut x = e.clone();
            let mut ok = true;
            for j in 0..unit_order {
                let code = self.block_code_of(&tmp_block, &x) as usize;
                if dlog[code] != u32::MAX || code == 0 {
                    ok = false;
                    break;
                }
                dlog[code] = j as u32;
                x = self.mul(&x, &cand);
            }
            if ok && x == e {
                tmp_block.generator = cand;
                tmp_block.dlog = dlog;
                return Ok(tmp_block);
            }
        }
        Err(Error::validation(
            ValidationKind::BlockNotField,
            format!("$.blocks[{b}]"),
            format!("block is not a field of size {size} with unit e_{b}"),
        ))
    }

    /// Element of a block from its packed coordinates (first basis vector
    /// most significant).
    fn block_element(&self, basis: &[usize], mut code: u64) -> AlgebraElement {
        let q = self.field.q() as u64;
        let mut v = vec![Fe::ZERO; self.dim];
        for &idx in basis.iter().rev() {
            v[idx] = Fe((code % q) as u32);
            code /= q;
        }
        AlgebraElement(v)
    }

    fn block_code_of(&self, block: &Block, x: &AlgebraElement) -> u64 {
        let q = self.field.q() as u64;
        block.basis.iter().fold(0, |acc, &idx| acc * q + x.0[idx].0 as u64)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn radical_basis(&self) -> &[usize] {
        &self.radical
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.len()
    }

    pub fn nilpotency_class(&self) -> usize {
        self.nilpotency_class
    }

    pub fn raw(&self) -> &RawAlgebra {
        &self.raw
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.raw.to_json()
    }

    pub fn unit(&self) -> &AlgebraElement {
        &self.unit
    }

    pub fn one(&self) -> AlgebraElement {
        self.unit.clone()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement(vec![Fe::ZERO; self.dim])
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        let mut v = vec![Fe::ZERO; self.dim];
        v[i] = Fe::ONE;
        AlgebraElement(v)
    }

    pub fn is_zero(&self, x: &AlgebraElement) -> bool {
        x.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().zip(&y.0).map(|(&a, &b)| self.field.add(a, b)).collect())
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().zip(&y.0).map(|(&a, &b)| self.field.sub(a, b)).collect())
    }

    pub fn neg(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().map(|&a| self.field.neg(a)).collect())
    }

    pub fn scale(&self, c: Fe, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().map(|&a| self.field.mul(c, a)).collect())
    }

    /// Bilinear product through the structure tensor.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.dim];
        for (i, &xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, terms) in &self.table[i] {
                let yj = y.0[*j];
                if yj.is_zero() {
                    continue;
                }
                let c = f.mul(xi, yj);
                for &(l, a) in terms {
                    out[l] = f.add(out[l], f.mul(c, a));
                }
            }
        }
        AlgebraElement(out)
    }

    pub fn mul3(&self, x: &AlgebraElement, y: &AlgebraElement, z: &AlgebraElement) -> AlgebraElement {
        self.mul(&self.mul(x, y), z)
    }

    /// Solves `g y = 1` and checks `y g = 1`.
    pub fn invert(&self, g: &AlgebraElement) -> Result<GroupElement> {
        let cols: Vec<Vec<Fe>> = (0..self.dim).map(|j| self.mul(g, &self.basis(j)).0).collect();
        let m = Matrix::from_columns(self.dim, &cols);
        let y = linalg::solve(&self.field, &m, &self.unit.0).ok_or(Error::NotInvertible)?;
        let y = AlgebraElement(y);
        if self.mul(&y, g) != self.unit {
            return Err(Error::NotInvertible);
        }
        Ok(GroupElement { element: g.clone(), inverse: y })
    }

    pub fn in_radical(&self, x: &AlgebraElement) -> bool {
        x.0.iter().enumerate().all(|(i, c)| c.is_zero() || self.radical_pos[i].is_some())
    }

    /// Component in S of the decomposition `A = S + J`.
    pub fn s_part(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(
            x.0.iter().enumerate().map(|(i, &c)| if self.radical_pos[i].is_some() { Fe::ZERO } else { c }).collect(),
        )
    }

    pub fn j_part(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(
            x.0.iter().enumerate().map(|(i, &c)| if self.radical_pos[i].is_some() { c } else { Fe::ZERO }).collect(),
        )
    }

    /// Coordinates of the J-component on the radical basis.
    pub fn j_coords(&self, x: &AlgebraElement) -> Vec<Fe> {
        self.radical.iter().map(|&r| x.0[r]).collect()
    }

    pub fn from_j_coords(&self, v: &[Fe]) -> AlgebraElement {
        let mut out = vec![Fe::ZERO; self.dim];
        for (&r, &c) in self.radical.iter().zip(v) {
            out[r] = c;
        }
        AlgebraElement(out)
    }

    /// Number of vectors in `J`, if it fits in `u128`.
    pub fn radical_size(&self) -> Option<u128> {
        (self.field.q() as u128).checked_pow(self.radical.len() as u32)
    }

    /// Packs coordinates over GF(q) so that numeric order equals
    /// lexicographic order of the coordinate vector.
    pub fn pack(&self, v: &[Fe]) -> usize {
        let q = self.field.q() as usize;
        v.iter().fold(0, |acc, c| acc * q + c.0 as usize)
    }

    pub fn unpack(&self, mut idx: usize, len: usize) -> Vec<Fe> {
        let q = self.field.q() as usize;
        let mut v = vec![Fe::ZERO; len];
        for c in v.iter_mut().rev() {
            *c = Fe((idx % q) as u32);
            idx /= q;
        }
        v
    }

    /// Evaluates a form on the J-component of `x`.
    pub fn eval_form(&self, form: &DualForm, x: &AlgebraElement) -> Fe {
        self.radical.iter().zip(&form.0).fold(Fe::ZERO, |acc, (&r, &c)| self.field.add(acc, self.field.mul(c, x.0[r])))
    }

    /// The dual basis form `b_t^*` for the `t`-th radical basis vector.
    pub fn dual_basis(&self, t: usize) -> DualForm {
        let mut v = vec![Fe::ZERO; self.radical.len()];
        v[t] = Fe::ONE;
        DualForm(v)
    }

    pub fn zero_form(&self) -> DualForm {
        DualForm(vec![Fe::ZERO; self.radical.len()])
    }

    /// Packed code of the component of `x` in block `i`.
    pub fn block_code(&self, i: usize, x: &AlgebraElement) -> u64 {
        self.block_code_of(&self.blocks[i], x)
    }

    /// Discrete log of the block-`i` component of `s` to the block
    /// generator, if that component is nonzero.
    pub fn block_dlog(&self, i: usize, s: &AlgebraElement) -> Option<u32> {
        let d = self.blocks[i].dlog[self.block_code(i, s) as usize];
        (d != u32::MAX).then_some(d)
    }

    /// Block-`i` component `s e_i` as a standalone element.
    pub fn block_component(&self, i: usize, s: &AlgebraElement) -> AlgebraElement {
        self.block_element(&self.blocks[i].basis, self.block_code(i, s))
    }

    pub fn block_element_from_code(&self, i: usize, code: u64) -> AlgebraElement {
        self.block_element(&self.blocks[i].basis, code)
    }

    /// Whether `s` lies in `H = S^*`.
    pub fn is_in_h(&self, s: &AlgebraElement) -> bool {
        self.is_zero(&self.j_part(s)) && (0..self.blocks.len()).all(|i| self.block_code(i, s) != 0)
    }

    /// `|H| = prod_i (q^{d_i} - 1)`.
    pub fn h_order(&self) -> u128 {
        self.blocks.iter().map(|b| b.unit_order as u128).product()
    }

    /// `|G| = |H| q^{dim J}`.
    pub fn group_order(&self) -> Option<u128> {
        self.radical_size()?.checked_mul(self.h_order())
    }

    /// The element `1 - e_i + g_i` generating `H_i`.
    pub fn h_generator(&self, i: usize) -> AlgebraElement {
        let b = &self.blocks[i];
        self.add(&self.sub(&self.unit, &b.idempotent), &b.generator)
    }

    /// `e x e`.
    pub fn corner(&self, e: &AlgebraElement, x: &AlgebraElement) -> AlgebraElement {
        self.mul3(e, x, e)
    }

    /// Whether `x` lies in `J_e = eJe`.
    pub fn in_corner(&self, e: Idempotent, x: &AlgebraElement) -> bool {
        let ee = e.element(self);
        self.in_radical(x) && self.corner(&ee, x) == *x
    }

    /// Whether the form vanishes off the `eJe` Peirce component.
    pub fn form_in_corner(&self, e: Idempotent, form: &DualForm) -> bool {
        let ee = e.element(self);
        (0..self.radical.len()).all(|t| {
            let bt = self.basis(self.radical[t]);
            self.eval_form(form, &self.corner(&ee, &bt)) == form.0[t]
        })
    }

    /// Basis of the subspace `eJe` in J-coordinates.
    pub fn corner_radical_basis(&self, e: Idempotent) -> Vec<Vec<Fe>> {
        let ee = e.element(self);
        let images: Vec<Vec<Fe>> =
            self.radical.iter().map(|&r| self.j_coords(&self.corner(&ee, &self.basis(r)))).collect();
        linalg::span_basis(&self.field, self.radical.len(), &images)
    }

    /// Matrix (on J-coordinates) of a linear map `J -> J`.
    pub fn j_matrix<F: Fn(&AlgebraElement) -> AlgebraElement>(&self, op: F) -> Matrix {
        let cols: Vec<Vec<Fe>> = self.radical.iter().map(|&r| self.j_coords(&op(&self.basis(r)))).collect();
        Matrix::from_columns(self.radical.len(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangular::make_triangular;

    fn t(n: usize, p: u32) -> Algebra {
        make_triangular(n, &Field::new(p, 1).unwrap()).unwrap()
    }

    /// Index of `E_ij` (1-based) in the triangular basis.
    fn e(alg: &Algebra, i: usize, j: usize) -> AlgebraElement {
        alg.basis(crate::triangular::basis_index(alg.blocks().len(), i, j))
    }

    #[test]
    fn products_of_matrix_units() {
        let a = t(3, 3);
        assert_eq!(a.mul(&e(&a, 1, 2), &e(&a, 2, 3)), e(&a, 1, 3));
        assert!(a.is_zero(&a.mul(&e(&a, 1, 2), &e(&a, 1, 2))));
        let x = a.add(&e(&a, 1, 2), &e(&a, 2, 3));
        assert_eq!(a.mul(&a.one(), &x), x);
        let a2 = t(2, 2);
        assert!(a2.is_zero(&a2.mul(&e(&a2, 1, 2), &e(&a2, 1, 2))));
    }

    #[test]
    fn inversion() {
        let a = t(2, 3);
        let one = a.invert(&a.one()).unwrap();
        assert_eq!(one.inverse(), &a.one());
        let g = a.add(&a.one(), &e(&a, 1, 2));
        let gi = a.invert(&g).unwrap();
        assert_eq!(gi.inverse(), &a.sub(&a.one(), &e(&a, 1, 2)));
        let d = a.add(&a.scale(Fe(2), &e(&a, 1, 1)), &e(&a, 2, 2));
        assert_eq!(a.invert(&d).unwrap().inverse(), &d);
        assert!(matches!(a.invert(&e(&a, 1, 1)), Err(Error::NotInvertible)));
    }

    #[test]
    fn triangular_is_valid() {
        assert_eq!(t(2, 2).nilpotency_class(), 2);
        assert_eq!(t(2, 2).dim(), 3);
        let a4 = t(4, 2);
        assert_eq!(a4.dim(), 10);
        assert_eq!(a4.nilpotency_class(), 4);
    }

    fn t2_raw(p: u32) -> RawAlgebra {
        make_triangular(2, &Field::new(p, 1).unwrap()).unwrap().raw().clone()
    }

    #[test]
    fn rejects_non_associative_tensor() {
        let mut raw = t2_raw(3);
        // make E11 * E12 = 0 instead of E12
        raw.mul.retain(|m| !(m.i == 0 && m.j == 2));
        let err = Algebra::validate(raw).unwrap_err();
        assert!(
            matches!(err, Error::Validation { kind: ValidationKind::NotAssociative | ValidationKind::BadUnit, .. }),
            "{err}"
        );
        let mut raw = t2_raw(3);
        // E12 * E22 = 2 E12 breaks (E12 E22) E22 = E12 (E22 E22)
        for m in raw.mul.iter_mut() {
            if m.i == 2 && m.j == 1 {
                m.terms = vec![(2, Fe(2))];
            }
        }
        let err = Algebra::validate(raw).unwrap_err();
        assert!(matches!(err, Error::Validation { kind: ValidationKind::NotAssociative, .. }), "{err}");
    }

    #[test]
    fn rejects_non_nilpotent_radical() {
        // A = GF(3) x GF(3) with basis 1 = (1,1), u = (1,0); declaring u radical
        let field = Field::new(3, 1).unwrap();
        let raw = RawAlgebra {
            field,
            dim: 2,
            unit: vec![Fe(1), Fe(0)],
            mul: vec![
                MulEntry { i: 0, j: 0, terms: vec![(0, Fe(1))] },
                MulEntry { i: 0, j: 1, terms: vec![(1, Fe(1))] },
                MulEntry { i: 1, j: 0, terms: vec![(1, Fe(1))] },
                MulEntry { i: 1, j: 1, terms: vec![(1, Fe(1))] },
            ],
            blocks: vec![RawBlock { idempotent: vec![Fe(1), Fe(0)], degree: 1, basis: vec![0] }],
            radical_basis: vec![1],
        };
        let err = Algebra::validate(raw).unwrap_err();
        assert!(matches!(err, Error::Validation { kind: ValidationKind::RadicalNotNilpotent, .. }), "{err}");
    }

    #[test]
    fn rejects_overlapping_split() {
        let mut raw = t2_raw(2);
        raw.radical_basis.push(0);
        let err = Algebra::validate(raw).unwrap_err();
        assert!(matches!(err, Error::Validation { kind: ValidationKind::NotDirectSum, .. }), "{err}");
    }

    #[test]
    fn block_logs_and_h_membership() {
        let a = t(3, 5);
        let h = a.add(&a.add(&a.scale(Fe(2), &e(&a, 1, 1)), &a.scale(Fe(4), &e(&a, 2, 2))), &e(&a, 3, 3));
        assert!(a.is_in_h(&h));
        assert_eq!(a.block_dlog(0, &h), Some(1));
        assert_eq!(a.block_dlog(1, &h), Some(2));
        assert_eq!(a.block_dlog(2, &h), Some(0));
        assert!(!a.is_in_h(&a.add(&h, &e(&a, 1, 2))));
        assert_eq!(a.h_order(), 64);
        assert_eq!(a.group_order(), Some(64 * 125));
    }

    #[test]
    fn pack_is_lexicographic() {
        let a = t(3, 3);
        let v1 = vec![Fe(0), Fe(2), Fe(2)];
        let v2 = vec![Fe(1), Fe(0), Fe(0)];
        assert!(a.pack(&v1) < a.pack(&v2));
        assert_eq!(a.unpack(a.pack(&v1), 3), v1);
    }
}
