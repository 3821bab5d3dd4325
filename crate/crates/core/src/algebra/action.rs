use rand::Rng;

use crate::algebra::{Algebra, AlgebraElement, DualForm, GroupElement, Idempotent};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::Fe;

/// The space a G̃-orbit lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionSpace {
    J,
    Dual,
    Group,
}

/// An element `(t, a, b)` of G̃ = H × N × N with the twisted product
/// `(t1, a1, b1)(t2, a2, b2) = (t1 t2, t2^-1 a1 t2 a2, t2^-1 b1 t2 b2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeTriple {
    pub t: GroupElement,
    pub a: GroupElement,
    pub b: GroupElement,
}

impl TildeTriple {
    pub fn identity(alg: &Algebra) -> TildeTriple {
        let one = alg.invert(&alg.one()).expect("1 is invertible");
        TildeTriple { t: one.clone(), a: one.clone(), b: one }
    }

    /// Builds a triple from `t ∈ H` and `x, y ∈ J` as `(t, 1 + x, 1 + y)`.
    pub fn new(alg: &Algebra, t: &AlgebraElement, x: &AlgebraElement, y: &AlgebraElement) -> Result<TildeTriple> {
        if !alg.is_in_h(t) {
            return Err(Error::NotInH);
        }
        if !alg.in_radical(x) || !alg.in_radical(y) {
            return Err(Error::NotInRadical);
        }
        Ok(TildeTriple {
            t: alg.invert(t)?,
            a: alg.invert(&alg.add(&alg.one(), x))?,
            b: alg.invert(&alg.add(&alg.one(), y))?,
        })
    }

    pub fn compose(&self, alg: &Algebra, other: &TildeTriple) -> TildeTriple {
        let t2 = &other.t;
        let twist = |u: &GroupElement, v: &GroupElement| {
            let g = alg.mul(&alg.mul3(t2.inverse(), u.element(), t2.element()), v.element());
            let gi = alg.mul(&alg.mul3(v.inverse(), t2.inverse(), u.inverse()), t2.element());
            GroupElement { element: g, inverse: gi }
        };
        TildeTriple {
            t: GroupElement {
                element: alg.mul(self.t.element(), t2.element()),
                inverse: alg.mul(t2.inverse(), self.t.inverse()),
            },
            a: twist(&self.a, &other.a),
            b: twist(&self.b, &other.b),
        }
    }

    /// `τ^-1 = (t^-1, t a^-1 t^-1, t b^-1 t^-1)`.
    pub fn inverse(&self, alg: &Algebra) -> TildeTriple {
        let t = &self.t;
        let conj = |u: &GroupElement| GroupElement {
            element: alg.mul3(t.element(), u.inverse(), t.inverse()),
            inverse: alg.mul3(t.element(), u.element(), t.inverse()),
        };
        TildeTriple { t: t.inverted(), a: conj(&self.a), b: conj(&self.b) }
    }

    /// The linear map `z ↦ t a z b^-1 t^-1` on all of A.
    pub fn apply_linear(&self, alg: &Algebra, z: &AlgebraElement) -> AlgebraElement {
        let left = alg.mul(self.t.element(), self.a.element());
        let right = alg.mul(self.b.inverse(), self.t.inverse());
        alg.mul3(&left, z, &right)
    }

    /// Matrix of [`TildeTriple::apply_linear`] on A.
    pub fn a_matrix(&self, alg: &Algebra) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..alg.dim()).map(|i| self.apply_linear(alg, &alg.basis(i)).0).collect();
        Matrix::from_columns(alg.dim(), &cols)
    }

    /// Matrix of `ρ(τ)` on J-coordinates.
    pub fn j_matrix(&self, alg: &Algebra) -> Matrix {
        alg.j_matrix(|z| self.apply_linear(alg, z))
    }
}

/// `ρ(τ)(x) = t a x b^-1 t^-1` for `x ∈ J`.
pub fn rho(alg: &Algebra, tau: &TildeTriple, x: &AlgebraElement) -> Result<AlgebraElement> {
    if !alg.in_radical(x) {
        return Err(Error::NotInRadical);
    }
    Ok(tau.apply_linear(alg, x))
}

/// `ρ*(τ)λ = λ ∘ ρ(τ^-1)`, i.e. `x ↦ λ(a^-1 t^-1 x t b)`.
pub fn rho_dual(alg: &Algebra, tau: &TildeTriple, form: &DualForm) -> DualForm {
    let left = alg.mul(tau.a.inverse(), tau.t.inverse());
    let right = alg.mul(tau.t.element(), tau.b.element());
    DualForm(
        alg.radical_basis().iter().map(|&r| alg.eval_form(form, &alg.mul3(&left, &alg.basis(r), &right))).collect(),
    )
}

/// `R_τ(g) = 1 + t a (g - 1) b^-1 t^-1`.
pub fn r_act(alg: &Algebra, tau: &TildeTriple, g: &AlgebraElement) -> AlgebraElement {
    let one = alg.one();
    alg.add(&one, &tau.apply_linear(alg, &alg.sub(g, &one)))
}

/// The generating triples of G̃_e (or of G̃ when `e = 1`) and their
/// linear maps.
///
/// Generators are `(h_i, 1, 1)` for the block generators `h_i` with
/// `e_i <= e`, and `(1, 1 + c y, 1)`, `(1, 1, 1 + c y)` for `y` running over a
/// basis of `J_e` and `c ∈ GF(q)^*`. All maps act on the full J-, J*- or
/// A-coordinates; the subspaces attached to `e` are invariant.
#[derive(Clone, Debug)]
pub struct Generators {
    pub idempotent: Idempotent,
    pub triples: Vec<TildeTriple>,
    /// `ρ(τ)` on J-coordinates.
    pub j_maps: Vec<Matrix>,
    /// `ρ*(τ)` on J*-coordinates.
    pub dual_maps: Vec<Matrix>,
    /// `z ↦ t a z b^-1 t^-1` on A-coordinates.
    pub a_maps: Vec<Matrix>,
    corner_basis: Vec<Vec<Fe>>,
}

impl Generators {
    pub fn full(alg: &Algebra) -> Generators {
        Generators::new(alg, Idempotent::one(alg.n_blocks()))
    }

    pub fn new(alg: &Algebra, e: Idempotent) -> Generators {
        let field = alg.field();
        let corner_basis = alg.corner_radical_basis(e);
        let mut triples = Vec::new();
        let zero = alg.zero();
        for i in e.blocks() {
            let t = alg.h_generator(i);
            triples.push(TildeTriple::new(alg, &t, &zero, &zero).expect("block generator lies in H"));
        }
        let one = alg.one();
        for y in &corner_basis {
            let y = alg.from_j_coords(y);
            for c in field.nonzero_elements() {
                let cy = alg.scale(c, &y);
                triples.push(TildeTriple::new(alg, &one, &cy, &zero).expect("radical element"));
                triples.push(TildeTriple::new(alg, &one, &zero, &cy).expect("radical element"));
            }
        }
        let j_maps: Vec<Matrix> = triples.iter().map(|t| t.j_matrix(alg)).collect();
        // ρ*(τ) has matrix ρ(τ^-1)^T; the inverses generate the same group
        let dual_maps = triples.iter().map(|t| t.inverse(alg).j_matrix(alg).transpose()).collect();
        let a_maps = triples.iter().map(|t| t.a_matrix(alg)).collect();
        Generators { idempotent: e, triples, j_maps, dual_maps, a_maps, corner_basis }
    }

    /// Generators of `N × N` only, i.e. G̃ without the torus part.
    pub fn unipotent(alg: &Algebra) -> Generators {
        let mut g = Generators::full(alg);
        let k = g.idempotent.count() as usize;
        g.triples.drain(..k);
        g.j_maps.drain(..k);
        g.dual_maps.drain(..k);
        g.a_maps.drain(..k);
        g.idempotent = Idempotent::ZERO;
        g
    }

    pub fn maps(&self, space: ActionSpace) -> &[Matrix] {
        match space {
            ActionSpace::J => &self.j_maps,
            ActionSpace::Dual => &self.dual_maps,
            ActionSpace::Group => &self.a_maps,
        }
    }

    /// A uniformly random element of G̃_e.
    pub fn random_triple<R: Rng>(&self, alg: &Algebra, rng: &mut R) -> TildeTriple {
        let mut t = alg.one();
        for i in self.idempotent.blocks() {
            let k = rng.gen_range(0..alg.blocks()[i].unit_order);
            let gi = alg.h_generator(i);
            for _ in 0..k {
                t = alg.mul(&t, &gi);
            }
        }
        let q = alg.field().q();
        let mut random_corner = || {
            let mut v = vec![Fe::ZERO; alg.radical_dim()];
            for y in &self.corner_basis {
                let c = Fe(rng.gen_range(0..q));
                for (vi, &yi) in v.iter_mut().zip(y) {
                    *vi = alg.field().add(*vi, alg.field().mul(c, yi));
                }
            }
            alg.from_j_coords(&v)
        };
        let x = random_corner();
        let y = random_corner();
        TildeTriple::new(alg, &t, &x, &y).expect("random triple is well formed")
    }
}
