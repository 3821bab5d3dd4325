use std::collections::VecDeque;

use crate::algebra::{Algebra, AlgebraElement, Bounds};
use crate::error::{Error, Result};

/// The unit group `G = H ⋉ N` enumerated as `index = h_code * |J| + j_index`,
/// where `h_code` is mixed-radix over the nonzero block codes.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    j_size: usize,
    h_radix: Vec<u64>,
    elements: Vec<AlgebraElement>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    identity_index: usize,
}

impl UnitGroup {
    pub fn new(alg: &Algebra, bounds: &Bounds) -> Result<UnitGroup> {
        let size = alg.group_order().unwrap_or(u128::MAX);
        if size > bounds.group as u128 {
            return Err(Error::GroupTooLarge { size, bound: bounds.group });
        }
        let j_size = alg.radical_size().expect("bounded by |G|") as usize;
        let h_radix: Vec<u64> = alg.blocks().iter().map(|b| b.unit_order).collect();
        let h_count: usize = h_radix.iter().product::<u64>() as usize;
        let r = alg.radical_dim();

        let mut h_elems = Vec::with_capacity(h_count);
        let mut h_invs = Vec::with_capacity(h_count);
        for code in 0..h_count {
            let h = Self::h_from_code(alg, &h_radix, code);
            h_invs.push(alg.invert(&h)?.inverse().clone());
            h_elems.push(h);
        }
        let mut elements = Vec::with_capacity(h_count * j_size);
        for h in &h_elems {
            for j in 0..j_size {
                elements.push(alg.add(h, &alg.from_j_coords(&alg.unpack(j, r))));
            }
        }
        let mut group =
            UnitGroup { j_size, h_radix, elements, inverses: Vec::new(), generators: Vec::new(), identity_index: 0 };
        group.identity_index = group.index_of(alg, &alg.one())?;

        // (h + x)^-1 = (1 + y)^-1 h^-1 with y = h^-1 x nilpotent
        let one = alg.one();
        let mut inverses = Vec::with_capacity(group.elements.len());
        for (idx, g) in group.elements.iter().enumerate() {
            let hinv = &h_invs[idx / j_size];
            let y = alg.mul(hinv, &alg.j_part(g));
            let mut term = one.clone();
            let mut series = one.clone();
            for _ in 1..alg.nilpotency_class() {
                term = alg.neg(&alg.mul(&term, &y));
                series = alg.add(&series, &term);
            }
            let inv = alg.mul(&series, hinv);
            debug_assert_eq!(alg.mul(g, &inv), one);
            inverses.push(group.index_of(alg, &inv)?);
        }
        group.inverses = inverses;

        let mut generators: Vec<usize> = Vec::new();
        for i in 0..alg.n_blocks() {
            generators.push(group.index_of(alg, &alg.h_generator(i))?);
        }
        for &r_idx in alg.radical_basis() {
            for c in alg.field().nonzero_elements() {
                generators.push(group.index_of(alg, &alg.add(&one, &alg.scale(c, &alg.basis(r_idx))))?);
            }
        }
        group.generators = generators;
        if group.closure(alg, group.identity()).len() != group.order() {
            return Err(Error::GeneratorsIncomplete);
        }
        Ok(group)
    }

    fn h_from_code(alg: &Algebra, radix: &[u64], mut code: usize) -> AlgebraElement {
        let mut h = alg.zero();
        for i in (0..radix.len()).rev() {
            let c = (code as u64 % radix[i]) + 1;
            code /= radix[i] as usize;
            h = alg.add(&h, &alg.block_element_from_code(i, c));
        }
        h
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn j_size(&self) -> usize {
        self.j_size
    }

    pub fn element(&self, idx: usize) -> &AlgebraElement {
        &self.elements[idx]
    }

    pub fn elements(&self) -> &[AlgebraElement] {
        &self.elements
    }

    pub fn inverse(&self, idx: usize) -> usize {
        self.inverses[idx]
    }

    pub fn identity(&self) -> usize {
        self.identity_index
    }

    /// Generators `h_i` and `1 + c b_r` as indices.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Index of an invertible element.
    pub fn index_of(&self, alg: &Algebra, g: &AlgebraElement) -> Result<usize> {
        let mut code = 0usize;
        for (i, &radix) in self.h_radix.iter().enumerate() {
            let c = alg.block_code(i, g);
            if c == 0 {
                return Err(Error::NotInvertible);
            }
            code = code * radix as usize + (c - 1) as usize;
        }
        Ok(code * self.j_size + alg.pack(&alg.j_coords(g)))
    }

    /// Index of the H-component.
    pub fn h_code(&self, idx: usize) -> usize {
        idx / self.j_size
    }

    pub fn j_index(&self, idx: usize) -> usize {
        idx % self.j_size
    }

    pub fn mul(&self, alg: &Algebra, a: usize, b: usize) -> usize {
        self.index_of(alg, &alg.mul(&self.elements[a], &self.elements[b])).expect("product of units is a unit")
    }

    /// `s^-1 g s`.
    pub fn conjugate(&self, alg: &Algebra, g: usize, s: usize) -> usize {
        let e = alg.mul3(&self.elements[self.inverses[s]], &self.elements[g], &self.elements[s]);
        self.index_of(alg, &e).expect("conjugate of a unit is a unit")
    }

    fn closure(&self, alg: &Algebra, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = vec![start];
        while let Some(g) = queue.pop_front() {
            for &s in &self.generators {
                let h = self.mul(alg, s, g);
                if !seen[h] {
                    seen[h] = true;
                    out.push(h);
                    queue.push_back(h);
                }
            }
        }
        out
    }

    /// Conjugacy classes, each sorted, in order of their least member.
    pub fn conjugacy_classes(&self, alg: &Algebra) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for g in 0..self.order() {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[g] = id;
            let mut members = vec![g];
            let mut queue = VecDeque::from([g]);
            while let Some(x) = queue.pop_front() {
                for &s in &self.generators {
                    let y = self.conjugate(alg, x, s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Dense conjugation table `table[s * |G| + g] = s^-1 g s`.
    pub fn conjugation_table(&self, alg: &Algebra) -> Vec<u32> {
        let n = self.order();
        let mut table = vec![0u32; n * n];
        for s in 0..n {
            for g in 0..n {
                table[s * n + g] = self.conjugate(alg, g, s) as u32;
            }
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;
    use crate::triangular::make_triangular;

    #[test]
    fn enumerates_triangular_groups() {
        for (n, p, order) in [(2, 2, 2), (2, 3, 12), (3, 2, 8), (3, 3, 216)] {
            let a = make_triangular(n, &Field::new(p, 1).unwrap()).unwrap();
            let g = UnitGroup::new(&a, &Bounds::default()).unwrap();
            assert_eq!(g.order(), order);
            for idx in 0..g.order() {
                assert_eq!(g.index_of(&a, g.element(idx)).unwrap(), idx);
                assert_eq!(g.mul(&a, idx, g.inverse(idx)), g.identity());
            }
            let classes = g.conjugacy_classes(&a);
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), order);
        }
    }

    #[test]
    fn class_counts() {
        // T(2,2) is Z/2; T(3,2) is the dihedral group of order 8 with 5 classes
        let a = make_triangular(3, &Field::new(2, 1).unwrap()).unwrap();
        let g = UnitGroup::new(&a, &Bounds::default()).unwrap();
        assert_eq!(g.conjugacy_classes(&a).len(), 5);
        let big = make_triangular(9, &Field::new(3, 1).unwrap()).unwrap();
        assert!(matches!(UnitGroup::new(&big, &Bounds::default()), Err(Error::GroupTooLarge { .. })));
    }
}
