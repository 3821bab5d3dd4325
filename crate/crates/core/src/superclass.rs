//! Superclasses: orbits of `R_τ(g) = 1 + t a (g - 1) b^-1 t^-1` on G, and
//! their quadruple labels `(e, f, h, ω)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    orbit_indices, Algebra, AlgebraElement, Generators, Idempotent, OrbitCensus, TildeTriple, UnitGroup,
};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::Fe;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperclassLabel {
    pub e: Idempotent,
    pub f: Idempotent,
    pub h: AlgebraElement,
    /// Canonical representative of ω in `J_e`, in J-coordinates.
    pub omega_rep: Vec<Fe>,
}

impl SuperclassLabel {
    pub fn render(&self, alg: &Algebra) -> String {
        let field = alg.field();
        let h: Vec<String> = (0..alg.n_blocks()).map(|i| render_block(alg, i, &self.h)).collect();
        let w: Vec<String> = self.omega_rep.iter().map(|&c| field.render(c)).collect();
        format!("e={};f={};h=[{}];omega=[{}]", self.e, self.f, h.join(","), w.join(","))
    }

    pub fn to_json(&self, alg: &Algebra) -> serde_json::Value {
        let field = alg.field();
        let h: Vec<serde_json::Value> = (0..alg.n_blocks())
            .map(|i| {
                let b = &alg.blocks()[i];
                if b.degree() == 1 {
                    field.to_json(self.h.0[b.basis[0]])
                } else {
                    serde_json::Value::from(b.basis.iter().map(|&k| field.to_json(self.h.0[k])).collect::<Vec<_>>())
                }
            })
            .collect();
        serde_json::json!({
            "e": self.e.block_list(),
            "f": self.f.block_list(),
            "h": h,
            "omega_rep": alg.from_j_coords(&self.omega_rep).0.iter().map(|&c| field.to_json(c)).collect::<Vec<_>>(),
        })
    }
}

/// Block-`i` component of `x`, rendered as one value (degree one) or a
/// coefficient tuple.
pub(crate) fn render_block(alg: &Algebra, i: usize, x: &AlgebraElement) -> String {
    let b = &alg.blocks()[i];
    let field = alg.field();
    if b.degree() == 1 {
        field.render(x.0[b.basis[0]])
    } else {
        let parts: Vec<String> = b.basis.iter().map(|&k| field.render(x.0[k])).collect();
        format!("({})", parts.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct SuperclassRecord {
    pub label: SuperclassLabel,
    /// Group indices, ascending.
    pub members: Vec<usize>,
}

impl SuperclassRecord {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

impl fmt::Display for SuperclassRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "superclass of size {} at g#{}", self.members.len(), self.members[0])
    }
}

/// The superclass partition of G, identity class first, the rest ordered by
/// least member.
#[derive(Clone, Debug)]
pub struct SuperclassPartition {
    pub records: Vec<SuperclassRecord>,
    class_of: Vec<u32>,
}

impl SuperclassPartition {
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g] as usize
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn sizes(&self) -> Vec<u128> {
        self.records.iter().map(|r| r.size() as u128).collect()
    }

    /// Position of the superclass with the given label.
    pub fn find(&self, label: &SuperclassLabel) -> Option<usize> {
        self.records.iter().position(|r| &r.label == label)
    }
}

/// `f = sum e_i` over the blocks where `h - 1` has a nonzero component.
pub fn associated_idempotent(alg: &Algebra, h: &AlgebraElement) -> Result<Idempotent> {
    if !alg.is_in_h(h) {
        return Err(Error::NotInH);
    }
    let s = alg.sub(h, &alg.one());
    Ok(Idempotent::from_blocks((0..alg.n_blocks()).filter(|&i| alg.block_code(i, &s) != 0)))
}

/// Orbits of the R-action by breadth-first search on group indices.
fn r_orbits(alg: &Algebra, group: &UnitGroup, gens: &Generators) -> Vec<Vec<usize>> {
    let one = alg.one();
    let step = |g: usize, m: &Matrix| -> usize {
        let z = alg.sub(group.element(g), &one);
        let w = AlgebraElement(m.apply(alg.field(), &z.0));
        group.index_of(alg, &alg.add(&one, &w)).expect("R preserves G")
    };
    let mut seen = vec![false; group.order()];
    let mut orbits = Vec::new();
    for start in 0..group.order() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(g) = queue.pop_front() {
            for m in &gens.a_maps {
                let h = step(g, m);
                if !seen[h] {
                    seen[h] = true;
                    members.push(h);
                    queue.push_back(h);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

/// Enumerates the superclasses and labels each of them.
pub fn superclass_partition(alg: &Algebra, group: &UnitGroup) -> Result<SuperclassPartition> {
    let gens = Generators::full(alg);
    let mut orbits = r_orbits(alg, group, &gens);
    let id = group.identity();
    orbits.sort_by_key(|o| (o[0] != id && !o.contains(&id), o[0]));
    let mut class_of = vec![u32::MAX; group.order()];
    for (k, o) in orbits.iter().enumerate() {
        for &g in o {
            class_of[g] = k as u32;
        }
    }

    // closure under randomly sampled full triples
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c1a55);
    for _ in 0..100 {
        let tau = gens.random_triple(alg, &mut rng);
        for (k, o) in orbits.iter().enumerate() {
            let g = crate::algebra::r_act(alg, &tau, group.element(o[0]));
            if class_of[group.index_of(alg, &g)?] as usize != k {
                return Err(Error::LabelMismatch(format!("superclass {k} is not closed under a sampled triple")));
            }
        }
    }

    let mut partition = SuperclassPartition {
        records: orbits
            .into_iter()
            .map(|members| SuperclassRecord {
                label: SuperclassLabel {
                    e: Idempotent::ZERO,
                    f: Idempotent::ZERO,
                    h: alg.zero(),
                    omega_rep: Vec::new(),
                },
                members,
            })
            .collect(),
        class_of,
    };
    let classifier = Classifier::new(alg);
    let mut seen: HashMap<SuperclassLabel, usize> = HashMap::new();
    for k in 0..partition.records.len() {
        let members = &partition.records[k].members;
        let picks = [members[0], members[members.len() / 2], members[members.len() - 1]];
        let label = classifier.classify(alg, group, &partition, picks[0])?;
        for &g in &picks[1..] {
            let other = classifier.classify(alg, group, &partition, g)?;
            if other != label {
                return Err(Error::LabelMismatch(format!(
                    "members of superclass {k} receive labels {} and {}",
                    label.render(alg),
                    other.render(alg)
                )));
            }
        }
        if let Some(prev) = seen.insert(label.clone(), k) {
            return Err(Error::LabelMismatch(format!(
                "superclasses {prev} and {k} share the label {}",
                label.render(alg)
            )));
        }
        partition.records[k].label = label;
    }
    Ok(partition)
}

/// Cached per-corner generator sets used by [`Classifier::classify`].
pub struct Classifier {
    corner_gens: HashMap<Idempotent, Generators>,
    peirce: crate::algebra::Peirce,
}

impl Classifier {
    pub fn new(alg: &Algebra) -> Classifier {
        let n = alg.n_blocks();
        let corner_gens = Idempotent::all(n).map(|e| (e, Generators::new(alg, e))).collect();
        Classifier { corner_gens, peirce: crate::algebra::Peirce::new(alg) }
    }

    /// Labels the superclass of `g` by reducing its radical part into
    /// `J_{f'}` with an explicit triple.
    pub fn classify(
        &self,
        alg: &Algebra,
        group: &UnitGroup,
        partition: &SuperclassPartition,
        g: usize,
    ) -> Result<SuperclassLabel> {
        let n = alg.n_blocks();
        let one = alg.one();
        let elem = group.element(g);
        let h = alg.s_part(elem);
        let x = alg.j_part(elem);
        let f = associated_idempotent(alg, &h)?;
        let fe = f.element(alg);
        let fp = f.complement(n);
        let fpe = fp.element(alg);

        // g - 1 = u (f + x~) with the S-unit u = (h - 1) + (1 - f)
        let s = alg.sub(&h, &one);
        let u = alg.invert(&alg.add(&s, &fpe))?;
        let xt = alg.mul(u.inverse(), &x);
        let a = alg.invert(&alg.add(&one, &xt))?;
        // a (f + x~) = f + w with w = w f'; right multiplication by 1 - f w
        // then leaves f + f' w
        let w = alg.sub(&alg.mul(a.inverse(), &alg.add(&fe, &xt)), &fe);
        let yt = alg.mul(&fpe, &w);
        let y = alg.mul(u.element(), &yt);

        let fail = |why: &str| Error::ReductionFailed(format!("g#{g}: {why}"));
        if !alg.in_radical(&w) || !alg.in_radical(&y) {
            return Err(fail("reduced element left J"));
        }
        if !alg.is_zero(&alg.mul(&fe, &y)) || !alg.is_zero(&alg.mul(&y, &fe)) {
            return Err(fail("reduced element is not in the corner of 1 - f"));
        }
        // the explicit triple (1, u a u^-1, (1 - f w)^-1) realises the reduction
        let fw = alg.mul(&fe, &w);
        let tau = TildeTriple::new(alg, &one, &alg.sub(&alg.mul3(u.element(), a.inverse(), u.inverse()), &one), &fw)?;
        let target = alg.add(&h, &y);
        let moved = crate::algebra::r_act(alg, &tau, elem);
        if moved != target {
            return Err(fail("explicit triple does not realise the reduction"));
        }
        if partition.class_of(group.index_of(alg, &target)?) != partition.class_of(g) {
            return Err(fail("h + y left the superclass"));
        }

        // ω: the G̃_{f'}-orbit of y inside J_{f'}, read off at its support
        let gens = &self.corner_gens[&fp];
        let start = alg.pack(&alg.j_coords(&y));
        let members = orbit_indices(alg, &gens.j_maps, start);
        let r = alg.radical_dim();
        let supports: Vec<Idempotent> =
            members.iter().map(|&m| self.peirce.vector_support(alg, &alg.unpack(m, r))).collect();
        let e = supports.iter().fold(fp, |acc, s| acc.product(*s));
        let rep = members
            .iter()
            .zip(&supports)
            .find(|(_, s)| **s == e)
            .map(|(&m, _)| m)
            .ok_or_else(|| fail("orbit has no least corner"))?;
        let omega_rep = alg.unpack(rep, r);
        let check = alg.add(&h, &alg.from_j_coords(&omega_rep));
        if partition.class_of(group.index_of(alg, &check)?) != partition.class_of(g) {
            return Err(fail("h + omega_rep is not in the superclass"));
        }
        Ok(SuperclassLabel { e, f, h, omega_rep })
    }
}

/// `prod_{e_i <= f} (|H_i| - 1)`.
pub fn m_of(alg: &Algebra, f: Idempotent) -> u128 {
    f.blocks().map(|i| alg.blocks()[i].unit_order as u128 - 1).product()
}

/// `sum_{e ⊥ f} n_E(J_e) m(f)`.
pub fn predicted_count(alg: &Algebra, j_census: &OrbitCensus) -> u128 {
    let n = alg.n_blocks();
    let mut total = 0u128;
    for e in Idempotent::all(n) {
        for f in Idempotent::all(n).filter(|f| f.is_orthogonal(e)) {
            total += j_census.n_regular_corner[e.0 as usize] as u128 * m_of(alg, f);
        }
    }
    total
}

/// Size of the superclass of an invertible `g`, by counting the stabilizer
/// of `g - 1` in G̃ with linear algebra (no enumeration of G).
pub fn superclass_size(alg: &Algebra, g: &AlgebraElement) -> Result<u128> {
    alg.invert(g)?;
    let one = alg.one();
    let c = alg.sub(g, &one);
    let r = alg.radical_dim();
    let q = alg.field().q() as u128;
    let radical: Vec<AlgebraElement> = alg.radical_basis().iter().map(|&k| alg.basis(k)).collect();
    let mut stab = 0u128;
    for t in h_elements(alg) {
        let t = alg.invert(&t)?;
        // (1 + u) c = c_t (1 + v), c_t = t^-1 c t
        let ct = alg.mul3(t.inverse(), &c, t.element());
        let mut cols: Vec<Vec<Fe>> = radical.iter().map(|b| alg.mul(b, &c).0).collect();
        cols.extend(radical.iter().map(|b| alg.neg(&alg.mul(&ct, b)).0));
        let m = Matrix::from_columns(alg.dim(), &cols);
        let rhs = alg.sub(&ct, &c);
        if linalg::solve(alg.field(), &m, &rhs.0).is_some() {
            let kernel = 2 * r - linalg::rank(alg.field(), &m);
            stab += q.pow(kernel as u32);
        }
    }
    let tilde = alg.h_order() * q.pow(2 * r as u32);
    if stab == 0 || !tilde.is_multiple_of(stab) {
        return Err(Error::LabelMismatch("stabilizer order does not divide |G̃|".into()));
    }
    Ok(tilde / stab)
}

/// All elements of `H = S^*`.
pub fn h_elements(alg: &Algebra) -> Vec<AlgebraElement> {
    let mut out = vec![alg.zero()];
    for i in 0..alg.n_blocks() {
        let order = alg.blocks()[i].unit_order;
        out = out
            .iter()
            .flat_map(|h| (1..=order).map(move |c| (h.clone(), c)))
            .map(|(h, c)| alg.add(&h, &alg.block_element_from_code(i, c)))
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{census, ActionSpace, Bounds};
    use crate::scalars::Field;
    use crate::triangular::{basis_index, make_triangular};

    fn tri(n: usize, p: u32) -> Algebra {
        make_triangular(n, &Field::new(p, 1).unwrap()).unwrap()
    }

    fn diag(alg: &Algebra, d: &[u32]) -> AlgebraElement {
        let mut v = alg.zero();
        for (i, &x) in d.iter().enumerate() {
            v.0[i] = Fe(x);
        }
        v
    }

    #[test]
    fn associated_idempotents() {
        let a = tri(3, 3);
        assert_eq!(associated_idempotent(&a, &a.one()).unwrap(), Idempotent::ZERO);
        assert_eq!(associated_idempotent(&a, &diag(&a, &[2, 1, 2])).unwrap(), Idempotent::from_blocks([0, 2]));
        let b = tri(2, 3);
        assert_eq!(associated_idempotent(&b, &diag(&b, &[1, 2])).unwrap(), Idempotent::block(1));
        assert!(matches!(associated_idempotent(&b, &b.basis(2)), Err(Error::NotInH)));
    }

    #[test]
    fn partitions_and_counts() {
        for (n, p, count) in [(2, 2, 2), (2, 3, 5), (3, 2, 5), (3, 3, 15)] {
            let a = tri(n, p);
            let g = UnitGroup::new(&a, &Bounds::default()).unwrap();
            let part = superclass_partition(&a, &g).unwrap();
            assert_eq!(part.len(), count);
            assert_eq!(part.records[0].members, vec![g.identity()]);
            assert_eq!(part.sizes().iter().sum::<u128>(), g.order() as u128);
            let c = census(&a, ActionSpace::J, &Bounds::default()).unwrap();
            assert_eq!(predicted_count(&a, &c), count as u128);
            for rec in &part.records {
                let size = superclass_size(&a, g.element(rec.representative())).unwrap();
                assert_eq!(size, rec.size() as u128);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let a = tri(2, 3);
        let g = UnitGroup::new(&a, &Bounds::default()).unwrap();
        let part = superclass_partition(&a, &g).unwrap();
        let cl = Classifier::new(&a);
        let id = cl.classify(&a, &g, &part, g.identity()).unwrap();
        assert_eq!((id.e, id.f, id.omega_rep.clone()), (Idempotent::ZERO, Idempotent::ZERO, vec![Fe(0)]));
        let u = g.index_of(&a, &a.add(&a.one(), &a.basis(basis_index(2, 1, 2)))).unwrap();
        let lab = cl.classify(&a, &g, &part, u).unwrap();
        assert_eq!(
            (lab.e, lab.f, lab.h.clone(), lab.omega_rep),
            (Idempotent::one(2), Idempotent::ZERO, a.one(), vec![Fe(1)])
        );
        let d = g.index_of(&a, &diag(&a, &[1, 2])).unwrap();
        let lab = cl.classify(&a, &g, &part, d).unwrap();
        assert_eq!((lab.e, lab.f), (Idempotent::ZERO, Idempotent::block(1)));
    }

    #[test]
    fn superclasses_are_unions_of_conjugacy_classes() {
        let a = tri(3, 3);
        let g = UnitGroup::new(&a, &Bounds::default()).unwrap();
        let part = superclass_partition(&a, &g).unwrap();
        for class in g.conjugacy_classes(&a) {
            let k = part.class_of(class[0]);
            assert!(class.iter().all(|&x| part.class_of(x) == k));
        }
    }
}
