use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ActionSpace, Algebra, AlgebraElement, Bounds, DualForm, Generators, Idempotent};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::Fe;

/// Which vector space an orbit was enumerated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceTag {
    J,
    Dual,
    G,
}

impl std::fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SpaceTag::J => "J",
            SpaceTag::Dual => "J*",
            SpaceTag::G => "G",
        })
    }
}

/// One G̃-orbit, members stored as packed coordinate indices in ascending
/// (lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub members: Vec<usize>,
    pub space: SpaceTag,
    /// Minimal idempotent `e` whose corner the orbit meets.
    pub support: Idempotent,
    /// Lexicographically least member inside the corner of `support`.
    pub support_rep: usize,
    pub singular: bool,
}

impl OrbitRecord {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }
}

/// All orbits of one space together with the counting data around them.
#[derive(Clone, Debug)]
pub struct OrbitCensus {
    pub space: SpaceTag,
    pub orbits: Vec<OrbitRecord>,
    /// `orbit_of[idx]` is the position in `orbits` of the orbit containing `idx`.
    pub orbit_of: Vec<u32>,
    /// `n(J_f)` indexed by the bitmask of `f`.
    pub n_corner: Vec<usize>,
    /// `n_E(J_e)`: regular G̃_e-orbits in the corner `J_e`, by bitmask of `e`.
    pub n_regular_corner: Vec<usize>,
    /// `n_E - sum_T (-1)^{|T|} n(J_{f_T})`.
    pub residual: i64,
}

impl OrbitCensus {
    pub fn n(&self) -> usize {
        self.orbits.len()
    }

    pub fn n_regular(&self) -> usize {
        *self.n_regular_corner.last().expect("at least one idempotent")
    }

    pub fn orbit_index(&self, idx: usize) -> usize {
        self.orbit_of[idx] as usize
    }
}

/// Peirce projections `x ↦ e_i x e_j` on J-coordinates and their duals.
#[derive(Clone, Debug)]
pub(crate) struct Peirce {
    blocks: usize,
    proj: Vec<Matrix>,
    proj_t: Vec<Matrix>,
}

impl Peirce {
    pub fn new(alg: &Algebra) -> Peirce {
        let n = alg.n_blocks();
        let mut proj = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let ei = &alg.blocks()[i].idempotent;
                let ej = &alg.blocks()[j].idempotent;
                proj.push(alg.j_matrix(|z| alg.mul3(ei, z, ej)));
            }
        }
        let proj_t = proj.iter().map(Matrix::transpose).collect();
        Peirce { blocks: n, proj, proj_t }
    }

    /// The least `e` with `x ∈ J_e`.
    pub fn vector_support(&self, alg: &Algebra, v: &[Fe]) -> Idempotent {
        let mut mask = 0u64;
        for i in 0..self.blocks {
            for j in 0..self.blocks {
                let p = &self.proj[i * self.blocks + j];
                if p.apply(alg.field(), v).iter().any(|c| !c.is_zero()) {
                    mask |= 1 << i | 1 << j;
                }
            }
        }
        Idempotent(mask)
    }

    /// The least `e` with `λ ∈ J_e^*` (λ vanishing off `eJe`).
    pub fn form_support(&self, alg: &Algebra, v: &[Fe]) -> Idempotent {
        let mut mask = 0u64;
        for i in 0..self.blocks {
            for j in 0..self.blocks {
                // λ restricted to e_i J e_j is λ ∘ P_ij, i.e. P_ij^T λ
                let p = &self.proj_t[i * self.blocks + j];
                if p.apply(alg.field(), v).iter().any(|c| !c.is_zero()) {
                    mask |= 1 << i | 1 << j;
                }
            }
        }
        Idempotent(mask)
    }

    pub fn support(&self, alg: &Algebra, space: ActionSpace, v: &[Fe]) -> Idempotent {
        match space {
            ActionSpace::J => self.vector_support(alg, v),
            ActionSpace::Dual => self.form_support(alg, v),
            ActionSpace::Group => unreachable!("group elements have no corner support"),
        }
    }
}

fn space_tag(space: ActionSpace) -> SpaceTag {
    match space {
        ActionSpace::J => SpaceTag::J,
        ActionSpace::Dual => SpaceTag::Dual,
        ActionSpace::Group => SpaceTag::G,
    }
}

/// Breadth-first closure of `start` (packed J-coordinates) under the
/// generator maps. Members are returned sorted.
pub fn orbit_indices(alg: &Algebra, maps: &[Matrix], start: usize) -> Vec<usize> {
    let r = alg.radical_dim();
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(idx) = queue.pop_front() {
        let v = alg.unpack(idx, r);
        for m in maps {
            let w = alg.pack(&m.apply(alg.field(), &v));
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    let mut members: Vec<usize> = seen.into_iter().collect();
    members.sort_unstable();
    members
}

fn check_space(alg: &Algebra, bounds: &Bounds) -> Result<usize> {
    let size = alg.radical_size().unwrap_or(u128::MAX);
    if size > bounds.space as u128 {
        return Err(Error::SpaceTooLarge { size, bound: bounds.space });
    }
    Ok(size as usize)
}

/// Orbit of a single element of J (as an [`OrbitRecord`] with support data).
pub fn orbit_of_element(alg: &Algebra, x: &AlgebraElement) -> Result<OrbitRecord> {
    if !alg.in_radical(x) {
        return Err(Error::NotInRadical);
    }
    let gens = Generators::full(alg);
    let peirce = Peirce::new(alg);
    Ok(record(alg, &peirce, ActionSpace::J, orbit_indices(alg, &gens.j_maps, alg.pack(&alg.j_coords(x)))))
}

/// Orbit of a single form on J.
pub fn orbit_of_form(alg: &Algebra, form: &DualForm) -> OrbitRecord {
    let gens = Generators::full(alg);
    let peirce = Peirce::new(alg);
    record(alg, &peirce, ActionSpace::Dual, orbit_indices(alg, &gens.dual_maps, alg.pack(&form.0)))
}

fn record(alg: &Algebra, peirce: &Peirce, space: ActionSpace, members: Vec<usize>) -> OrbitRecord {
    let r = alg.radical_dim();
    let supports: Vec<Idempotent> = members.iter().map(|&m| peirce.support(alg, space, &alg.unpack(m, r))).collect();
    // a least support exists iff the meet of all supports is attained
    let support = supports.iter().fold(Idempotent(u64::MAX), |acc, s| acc.product(*s));
    let support_rep = members
        .iter()
        .zip(&supports)
        .find(|(_, s)| **s == support)
        .map(|(&m, _)| m)
        .expect("corner supports of an orbit have a least element");
    let rep = alg.unpack(members[0], r);
    let singular = match space {
        ActionSpace::J => is_singular(alg, &alg.from_j_coords(&rep)),
        _ => is_singular_form(alg, &DualForm(rep)),
    };
    OrbitRecord { members, space: space_tag(space), support, support_rep, singular }
}

/// Enumerates all G̃-orbits in J or J*.
pub fn census(alg: &Algebra, space: ActionSpace, bounds: &Bounds) -> Result<OrbitCensus> {
    let size = check_space(alg, bounds)?;
    let gens = Generators::full(alg);
    let peirce = Peirce::new(alg);
    let maps = gens.maps(space);
    let mut orbit_of = vec![u32::MAX; size];
    let mut orbits = Vec::new();
    for idx in 0..size {
        if orbit_of[idx] != u32::MAX {
            continue;
        }
        let members = orbit_indices(alg, maps, idx);
        for &m in &members {
            orbit_of[m] = orbits.len() as u32;
        }
        orbits.push(record(alg, &peirce, space, members));
    }
    verify_closure(alg, &gens, space, &orbits, &orbit_of)?;

    let n = alg.n_blocks();
    let mut n_corner = vec![0usize; 1 << n];
    let mut n_regular_corner = vec![0usize; 1 << n];
    for o in &orbits {
        n_regular_corner[o.support.0 as usize] += 1;
        for f in Idempotent::all(n) {
            if o.support.le(f) {
                n_corner[f.0 as usize] += 1;
            }
        }
    }
    let full = Idempotent::one(n);
    let mut signed = 0i64;
    for t in Idempotent::all(n) {
        let f = t.complement(n);
        let sign = if t.count() % 2 == 0 { 1 } else { -1 };
        signed += sign * n_corner[f.0 as usize] as i64;
    }
    let residual = n_regular_corner[full.0 as usize] as i64 - signed;
    Ok(OrbitCensus { space: space_tag(space), orbits, orbit_of, n_corner, n_regular_corner, residual })
}

/// Checks that every orbit is closed under 100 random elements of G̃.
fn verify_closure(
    alg: &Algebra,
    gens: &Generators,
    space: ActionSpace,
    orbits: &[OrbitRecord],
    orbit_of: &[u32],
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let r = alg.radical_dim();
    for _ in 0..100 {
        let tau = gens.random_triple(alg, &mut rng);
        let m = match space {
            ActionSpace::J => tau.j_matrix(alg),
            _ => tau.inverse(alg).j_matrix(alg).transpose(),
        };
        for (k, o) in orbits.iter().enumerate() {
            for &idx in [o.members[0], *o.members.last().expect("nonempty")].iter() {
                let w = alg.pack(&m.apply(alg.field(), &alg.unpack(idx, r)));
                if orbit_of[w] as usize != k {
                    return Err(Error::LabelMismatch(format!(
                        "orbit of {idx} in {} is not closed under a sampled triple",
                        space_tag(space)
                    )));
                }
            }
        }
    }
    Ok(())
}

fn annihilator_is_singular(alg: &Algebra, domain: &[Vec<Fe>], image: impl Fn(&AlgebraElement) -> Vec<Fe>) -> bool {
    if domain.is_empty() {
        return false;
    }
    let cols: Vec<Vec<Fe>> = domain.iter().map(|c| image(&AlgebraElement(c.clone()))).collect();
    let rows = cols[0].len();
    let m = Matrix::from_columns(rows, &cols);
    let kernel = linalg::kernel(alg.field(), &m);
    // Ann(v) ⊄ J iff some annihilator has a nonzero S-component
    kernel.iter().any(|coeffs| {
        let mut c = alg.zero();
        for (w, d) in coeffs.iter().zip(domain) {
            c = alg.add(&c, &alg.scale(*w, &AlgebraElement(d.clone())));
        }
        !alg.is_zero(&alg.s_part(&c))
    })
}

fn corner_domain(alg: &Algebra, e: Idempotent) -> Vec<Vec<Fe>> {
    let ee = e.element(alg);
    let images: Vec<Vec<Fe>> = (0..alg.dim()).map(|i| alg.corner(&ee, &alg.basis(i)).0).collect();
    linalg::span_basis(alg.field(), alg.dim(), &images)
}

/// Annihilator test: `x ∈ J` is singular iff some `c ∉ J` has `cx = xc = 0`.
pub fn is_singular(alg: &Algebra, x: &AlgebraElement) -> bool {
    is_singular_in(alg, Idempotent::one(alg.n_blocks()), x)
}

/// The annihilator test inside the corner algebra `A_e = eAe`.
pub fn is_singular_in(alg: &Algebra, e: Idempotent, x: &AlgebraElement) -> bool {
    let domain = corner_domain(alg, e);
    annihilator_is_singular(alg, &domain, |c| {
        let mut v = alg.mul(c, x).0;
        v.extend(alg.mul(x, c).0);
        v
    })
}

/// Annihilator test for forms, with `(cλ)(y) = λ(yc)` and `(λc)(y) = λ(cy)`.
pub fn is_singular_form(alg: &Algebra, form: &DualForm) -> bool {
    is_singular_form_in(alg, Idempotent::one(alg.n_blocks()), form)
}

pub fn is_singular_form_in(alg: &Algebra, e: Idempotent, form: &DualForm) -> bool {
    let domain = corner_domain(alg, e);
    let basis: Vec<AlgebraElement> = alg.radical_basis().iter().map(|&r| alg.basis(r)).collect();
    annihilator_is_singular(alg, &domain, |c| {
        let mut v: Vec<Fe> = basis.iter().map(|b| alg.eval_form(form, &alg.mul(b, c))).collect();
        v.extend(basis.iter().map(|b| alg.eval_form(form, &alg.mul(c, b))));
        v
    })
}
