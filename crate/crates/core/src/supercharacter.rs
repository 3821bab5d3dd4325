//! Supercharacters `χ_{θ,λ} = ind(ξ_{θ,λ}, G_λ, G)` computed by literal
//! induction, and the checks that they form a supercharacter theory together
//! with the superclasses.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{
    census, is_singular_form_in, orbit_indices, ActionSpace, Algebra, AlgebraElement, Bounds, DualForm, Generators,
    Idempotent, OrbitCensus, UnitGroup,
};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::{additive_exponent, is_positive, CycloNumber, Fe, Rational};
use crate::superclass::{h_elements, predicted_count, render_block, superclass_partition, SuperclassPartition};
use crate::table::{inner_product, CharacterTable};

/// Groups up to this order get a dense conjugation table.
pub const CONJ_TABLE_LIMIT: usize = 2048;

/// Where induced values are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InductionMode {
    /// At every group element; constancy on superclasses is checked exhaustively.
    Exhaustive,
    /// At three members of each superclass.
    Representatives,
}

/// `α = (e, f, θ, ω*)`, with θ stored as one exponent per block and ω* by a
/// form in it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupercharLabel {
    pub e: Idempotent,
    pub f: Idempotent,
    /// Exponent of θ on block `i`, modulo `|H_i|`.
    pub theta: Vec<u64>,
    /// A form in the orbit ω* (the canonical one for enumerated labels).
    pub lambda_rep: Vec<Fe>,
}

impl SupercharLabel {
    pub fn lambda(&self) -> DualForm {
        DualForm(self.lambda_rep.clone())
    }

    pub fn render(&self, alg: &Algebra) -> String {
        let t: Vec<String> = self.theta.iter().map(u64::to_string).collect();
        let l: Vec<String> = self.lambda_rep.iter().map(|&c| alg.field().render(c)).collect();
        format!("e={};f={};theta=[{}];lambda=[{}]", self.e, self.f, t.join(","), l.join(","))
    }
}

/// `G_λ = H_{e'} (1 + J_{λ,right})`.
#[derive(Clone, Debug)]
pub struct StabilizerData {
    pub e: Idempotent,
    /// Basis of `J_{λ,right} = {u ∈ J : λ(u y) = 0 for all y ∈ J}`.
    pub j_right: Vec<Vec<Fe>>,
    right_test: Matrix,
    pub h_eprime: Vec<AlgebraElement>,
    /// `|G_λ|`.
    pub order: u128,
}

impl StabilizerData {
    pub fn in_h_eprime(&self, alg: &Algebra, h: &AlgebraElement) -> bool {
        alg.is_in_h(h) && self.e.blocks().all(|i| alg.block_component(i, h) == alg.blocks()[i].idempotent)
    }

    pub fn in_j_right(&self, alg: &Algebra, x: &AlgebraElement) -> bool {
        self.right_test.apply(alg.field(), &alg.j_coords(x)).iter().all(|c| c.is_zero())
    }

    pub fn contains(&self, alg: &Algebra, g: &AlgebraElement) -> bool {
        self.in_h_eprime(alg, &alg.s_part(g)) && self.in_j_right(alg, &alg.j_part(g))
    }
}

/// Matrix whose kernel is `J_{λ,right}`.
fn right_annihilator_test(alg: &Algebra, lambda: &DualForm) -> Matrix {
    let basis: Vec<AlgebraElement> = alg.radical_basis().iter().map(|&r| alg.basis(r)).collect();
    let cols: Vec<Vec<Fe>> =
        basis.iter().map(|u| basis.iter().map(|y| alg.eval_form(lambda, &alg.mul(u, y))).collect()).collect();
    Matrix::from_columns(basis.len(), &cols)
}

pub fn stabilizer_data(alg: &Algebra, lambda: &DualForm, e: Idempotent) -> Result<StabilizerData> {
    if !alg.form_in_corner(e, lambda) || is_singular_form_in(alg, e, lambda) {
        return Err(Error::NotRegular(format!("form {:?} in the corner {e}", lambda.0)));
    }
    let right_test = right_annihilator_test(alg, lambda);
    let j_right = linalg::kernel(alg.field(), &right_test);
    let h_eprime: Vec<AlgebraElement> = h_elements(alg)
        .into_iter()
        .filter(|h| e.blocks().all(|i| alg.block_component(i, h) == alg.blocks()[i].idempotent))
        .collect();
    let q = alg.field().q() as u128;
    let order = h_eprime.len() as u128 * q.pow(j_right.len() as u32);
    Ok(StabilizerData { e, j_right, right_test, h_eprime, order })
}

/// Whether `H_{e'} = H_{λ,right} ∩ H_{λ,left}`, where `H_{λ,right}` fixes
/// `x ↦ λ(h x)` and `H_{λ,left}` fixes `x ↦ λ(x h)`.
pub fn torus_stabilizer_agrees(alg: &Algebra, lambda: &DualForm, e: Idempotent) -> Result<bool> {
    let stab = stabilizer_data(alg, lambda, e)?;
    let basis: Vec<AlgebraElement> = alg.radical_basis().iter().map(|&r| alg.basis(r)).collect();
    let fixes = |h: &AlgebraElement| {
        basis.iter().all(|x| {
            let v = alg.eval_form(lambda, x);
            alg.eval_form(lambda, &alg.mul(h, x)) == v && alg.eval_form(lambda, &alg.mul(x, h)) == v
        })
    };
    let both: Vec<AlgebraElement> = h_elements(alg).into_iter().filter(|h| fixes(h)).collect();
    Ok(both == stab.h_eprime)
}

/// Root-of-unity exponent of `ξ_{θ,λ}(g) = θ(h) ε^{λ(x)}` at order `m`.
pub fn xi_exponent(
    alg: &Algebra,
    label: &SupercharLabel,
    stab: &StabilizerData,
    g: &AlgebraElement,
    m: u32,
) -> Result<u32> {
    if !stab.contains(alg, g) {
        return Err(Error::NotInStabilizer);
    }
    let h = alg.s_part(g);
    let mut exp = additive_exponent(alg.field(), alg.eval_form(&label.lambda(), g), m)? as u64;
    for (i, &t) in label.theta.iter().enumerate() {
        let order = alg.blocks()[i].unit_order;
        let l = alg.block_dlog(i, &h).ok_or(Error::NotInH)? as u64;
        exp += (t % order) * l % order * (m as u64 / order);
    }
    Ok((exp % m as u64) as u32)
}

pub fn xi(
    alg: &Algebra,
    label: &SupercharLabel,
    stab: &StabilizerData,
    g: &AlgebraElement,
    m: u32,
) -> Result<CycloNumber> {
    Ok(CycloNumber::root(m, xi_exponent(alg, label, stab, g, m)? as u64))
}

/// A class function by its values on the superclasses (identity first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CycloNumber>,
}

impl ClassFunction {
    pub fn degree(&self) -> &CycloNumber {
        &self.values[0]
    }
}

/// Pass/fail record of a single check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {} {}", self.name, if self.pass { "PASS" } else { "FAIL" }, self.details)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: &str, pass: bool, details: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), pass, details: details.into() });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Outcome of decomposing `Res_N χ` over the supercharacters of `N`.
#[derive(Clone, Debug)]
pub struct RestrictionResult {
    /// `(μ, c_μ)` for the nonzero coefficients.
    pub coefficients: Vec<(Vec<Fe>, Rational)>,
    pub nonnegative: bool,
    pub reconstructs: bool,
    pub supported_on_orbit: bool,
}

impl RestrictionResult {
    pub fn pass(&self) -> bool {
        self.nonnegative && self.reconstructs && self.supported_on_orbit
    }

    /// The coefficient multiset as sorted `value x count` pairs.
    pub fn multiset(&self) -> Vec<(Rational, usize)> {
        let mut counts: Vec<(Rational, usize)> = Vec::new();
        for (_, c) in &self.coefficients {
            match counts.iter_mut().find(|(v, _)| v == c) {
                Some(entry) => entry.1 += 1,
                None => counts.push((*c, 1)),
            }
        }
        counts.sort();
        counts
    }
}

/// Everything enumerated about one algebra: its unit group, the superclass
/// partition and both orbit censuses.
pub struct Theory<'a> {
    pub alg: &'a Algebra,
    pub bounds: Bounds,
    pub group: UnitGroup,
    pub partition: SuperclassPartition,
    pub j_census: OrbitCensus,
    pub dual_census: OrbitCensus,
    /// Common cyclotomic order `lcm(p, exponent of H)`.
    pub order_m: u32,
    conj_table: Option<Vec<u32>>,
    conj_rows: HashMap<usize, Vec<u32>>,
}

/// `lcm(p, |H_1|, .., |H_n|)`.
pub fn cyclo_order(alg: &Algebra) -> u32 {
    alg.blocks().iter().fold(alg.field().p() as u64, |acc, b| num_integer::lcm(acc, b.unit_order)) as u32
}

impl<'a> Theory<'a> {
    pub fn build(alg: &'a Algebra, bounds: &Bounds) -> Result<Theory<'a>> {
        let group = UnitGroup::new(alg, bounds)?;
        let j_census = census(alg, ActionSpace::J, bounds)?;
        let dual_census = census(alg, ActionSpace::Dual, bounds)?;
        let partition = superclass_partition(alg, &group)?;
        let n = group.order();
        let conj_table = (n <= CONJ_TABLE_LIMIT).then(|| {
            (0..n)
                .into_par_iter()
                .flat_map_iter(|g| (0..n).map(move |s| (g, s)))
                .map(|(g, s)| group.conjugate(alg, g, s) as u32)
                .collect()
        });
        let conj_rows = if conj_table.is_some() {
            HashMap::new()
        } else {
            Self::sample_points(&partition)
                .into_par_iter()
                .map(|g| (g, (0..n).map(|s| group.conjugate(alg, g, s) as u32).collect()))
                .collect()
        };
        Ok(Theory {
            alg,
            bounds: *bounds,
            order_m: cyclo_order(alg),
            group,
            partition,
            j_census,
            dual_census,
            conj_table,
            conj_rows,
        })
    }

    fn sample_points(partition: &SuperclassPartition) -> Vec<usize> {
        let mut pts: Vec<usize> = partition
            .records
            .iter()
            .flat_map(|r| [r.members[0], r.members[r.members.len() / 2], r.members[r.members.len() - 1]])
            .collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    /// `s^-1 g s` for all `s`, in the order of group indices.
    fn conjugates(&self, g: usize) -> std::borrow::Cow<'_, [u32]> {
        let n = self.group.order();
        if let Some(t) = &self.conj_table {
            return std::borrow::Cow::Borrowed(&t[g * n..(g + 1) * n]);
        }
        if let Some(row) = self.conj_rows.get(&g) {
            return std::borrow::Cow::Borrowed(row);
        }
        std::borrow::Cow::Owned((0..n).map(|s| self.group.conjugate(self.alg, g, s) as u32).collect())
    }

    /// `sum_{e ⊥ f} n_E(J_e) m(f)`.
    pub fn predicted_count(&self) -> u128 {
        predicted_count(self.alg, &self.j_census)
    }

    /// All supercharacter labels, sorted.
    pub fn labels(&self) -> Vec<SupercharLabel> {
        let alg = self.alg;
        let n = alg.n_blocks();
        let r = alg.radical_dim();
        let mut out = Vec::new();
        for o in &self.dual_census.orbits {
            let e = o.support;
            let lambda = alg.unpack(o.support_rep, r);
            for f in Idempotent::all(n).filter(|f| f.is_orthogonal(e)) {
                let mut thetas: Vec<Vec<u64>> = vec![Vec::new()];
                for i in 0..n {
                    let range: Vec<u64> =
                        if f.contains(i) { (1..alg.blocks()[i].unit_order).collect() } else { vec![0] };
                    thetas = thetas
                        .into_iter()
                        .flat_map(|t| {
                            range.iter().map(move |&x| {
                                let mut t = t.clone();
                                t.push(x);
                                t
                            })
                        })
                        .collect();
                }
                out.extend(thetas.into_iter().map(|theta| SupercharLabel { e, f, theta, lambda_rep: lambda.clone() }));
            }
        }
        out.sort();
        out
    }

    /// `χ(g) = (1/|G_λ|) sum_{s ∈ G, s^-1 g s ∈ G_λ} ξ(s^-1 g s)`.
    pub fn induce(&self, label: &SupercharLabel, mode: InductionMode) -> Result<ClassFunction> {
        let alg = self.alg;
        let m = self.order_m;
        let stab = stabilizer_data(alg, &label.lambda(), label.e)?;
        let xi_exp: Vec<u32> = self
            .group
            .elements()
            .par_iter()
            .map(|g| xi_exponent(alg, label, &stab, g, m).unwrap_or(u32::MAX))
            .collect();
        let points: Vec<usize> = match mode {
            InductionMode::Exhaustive => (0..self.group.order()).collect(),
            InductionMode::Representatives => Self::sample_points(&self.partition),
        };
        let scale = Rational::new(1, stab.order as i128);
        let values: Vec<CycloNumber> = points
            .par_iter()
            .map(|&g| {
                let mut counts = vec![0i64; m as usize];
                for &c in self.conjugates(g).iter() {
                    let x = xi_exp[c as usize];
                    if x != u32::MAX {
                        counts[x as usize] += 1;
                    }
                }
                CycloNumber::from_root_counts(m, &counts).scale(scale)
            })
            .collect();

        let mut per_class: Vec<Option<CycloNumber>> = vec![None; self.partition.len()];
        for (&g, v) in points.iter().zip(values) {
            let k = self.partition.class_of(g);
            match &per_class[k] {
                None => per_class[k] = Some(v),
                Some(prev) if *prev == v => {}
                Some(_) => {
                    return Err(Error::NotConstantOnSuperclass(format!(
                        "{} on superclass {}",
                        label.render(alg),
                        self.partition.records[k].label.render(alg)
                    )))
                }
            }
        }
        let values: Vec<CycloNumber> = per_class.into_iter().map(|v| v.expect("every class is sampled")).collect();
        let degree = Rational::new(self.group.order() as i128, stab.order as i128);
        if values[0] != CycloNumber::from_rational(m, degree) {
            return Err(Error::LabelMismatch(format!(
                "degree of {} is {} but |G|/|G_λ| = {degree}",
                label.render(alg),
                values[0]
            )));
        }
        Ok(ClassFunction { values })
    }

    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<CycloNumber> {
        inner_product(&self.partition.sizes(), self.group.order() as u128, &a.values, &b.values)
    }

    /// The supercharacter table, rows in label order.
    pub fn table(&self, mode: InductionMode) -> Result<(CharacterTable, Vec<SupercharLabel>)> {
        let labels = self.labels();
        let rows: Vec<ClassFunction> = labels.iter().map(|l| self.induce(l, mode)).collect::<Result<Vec<_>>>()?;
        let table = CharacterTable {
            row_labels: labels.iter().map(|l| l.render(self.alg)).collect(),
            col_labels: self.partition.records.iter().map(|r| r.label.render(self.alg)).collect(),
            sizes: self.partition.sizes(),
            values: rows.into_iter().map(|c| c.values).collect(),
            group_order: self.group.order() as u128,
            order_m: self.order_m,
        };
        Ok((table, labels))
    }

    /// Indices in G of the elements `1 + x` of N, by packed `x`.
    fn n_indices(&self) -> Vec<usize> {
        let base = self.group.h_code(self.group.identity()) * self.group.j_size();
        (0..self.group.j_size()).map(|j| base + j).collect()
    }

    /// `ind(ξ_μ, N_{μ,right}, N)` as values on N (indexed by packed `x`).
    pub fn n_supercharacter(&self, mu: &DualForm) -> Result<Vec<CycloNumber>> {
        let conj = self.n_conjugation()?;
        Ok(self.n_supercharacter_with(mu, &conj))
    }

    fn n_conjugation(&self) -> Result<Vec<u32>> {
        let n_idx = self.n_indices();
        let size = n_idx.len();
        let bound = self.bounds.group as u128;
        if (size as u128).pow(2) > bound.max(1 << 24) {
            return Err(Error::GroupTooLarge { size: (size as u128).pow(2), bound: bound.max(1 << 24) as u64 });
        }
        Ok((0..size)
            .into_par_iter()
            .flat_map_iter(|g| (0..size).map(move |s| (g, s)))
            .map(|(g, s)| self.group.j_index(self.group.conjugate(self.alg, n_idx[g], n_idx[s])) as u32)
            .collect())
    }

    fn n_supercharacter_with(&self, mu: &DualForm, conj: &[u32]) -> Vec<CycloNumber> {
        let alg = self.alg;
        let m = self.order_m;
        let size = self.group.j_size();
        let r = alg.radical_dim();
        let test = right_annihilator_test(alg, mu);
        let right_dim = linalg::kernel(alg.field(), &test).len();
        let exps: Vec<u32> = (0..size)
            .map(|j| {
                let x = alg.unpack(j, r);
                if test.apply(alg.field(), &x).iter().all(|c| c.is_zero()) {
                    let v = alg.eval_form(mu, &alg.from_j_coords(&x));
                    additive_exponent(alg.field(), v, m).expect("p divides m")
                } else {
                    u32::MAX
                }
            })
            .collect();
        let q = alg.field().q() as i128;
        let scale = Rational::new(1, q.pow(right_dim as u32));
        (0..size)
            .map(|g| {
                let mut counts = vec![0i64; m as usize];
                for &c in &conj[g * size..(g + 1) * size] {
                    let x = exps[c as usize];
                    if x != u32::MAX {
                        counts[x as usize] += 1;
                    }
                }
                CycloNumber::from_root_counts(m, &counts).scale(scale)
            })
            .collect()
    }

    /// Decomposes `Res_N χ` over the N-supercharacters `χ_μ`, one per
    /// `N × N`-orbit on J*.
    pub fn restriction_check(&self, label: &SupercharLabel, chi: &ClassFunction) -> Result<RestrictionResult> {
        let alg = self.alg;
        let m = self.order_m;
        let n_idx = self.n_indices();
        let size = n_idx.len();
        let res: Vec<CycloNumber> = n_idx.iter().map(|&g| chi.values[self.partition.class_of(g)].clone()).collect();
        let conj = self.n_conjugation()?;
        let unip = Generators::unipotent(alg);
        let mut seen = vec![false; size];
        let lambda_orbit = self.dual_census.orbit_index(alg.pack(&label.lambda_rep));
        let ip = |a: &[CycloNumber], b: &[CycloNumber]| -> CycloNumber {
            let mut acc = CycloNumber::zero(m);
            for (x, y) in a.iter().zip(b) {
                acc = &acc + &(x * &y.conj());
            }
            acc.scale(Rational::new(1, size as i128))
        };
        let mut recon = vec![CycloNumber::zero(m); size];
        let mut coefficients = Vec::new();
        let mut nonnegative = true;
        let mut supported = true;
        for start in 0..size {
            if seen[start] {
                continue;
            }
            for k in orbit_indices(alg, &unip.dual_maps, start) {
                seen[k] = true;
            }
            let mu = DualForm(alg.unpack(start, alg.radical_dim()));
            let chi_mu = self.n_supercharacter_with(&mu, &conj);
            let c = ip(&res, &chi_mu);
            let norm = ip(&chi_mu, &chi_mu);
            let (Some(c), Some(norm)) = (c.as_rational(), norm.as_rational()) else {
                nonnegative = false;
                continue;
            };
            let coeff = c / norm;
            if coeff < Rational::from_integer(0) {
                nonnegative = false;
            }
            if coeff != Rational::from_integer(0) {
                if self.dual_census.orbit_index(start) != lambda_orbit {
                    supported = false;
                }
                for (acc, v) in recon.iter_mut().zip(&chi_mu) {
                    *acc = &*acc + &v.scale(coeff);
                }
                coefficients.push((mu.0, coeff));
            }
        }
        Ok(RestrictionResult { coefficients, nonnegative, reconstructs: recon == res, supported_on_orbit: supported })
    }

    /// The supercharacter theory axioms and their consequences, read off a
    /// table whose columns are this partition.
    pub fn axioms_report(&self, table: &CharacterTable, constancy: &str) -> Report {
        let mut report = Report::default();
        report.push(
            "S1",
            table.rows() == table.cols(),
            format!("{} = {} (supercharacters, superclasses)", table.rows(), table.cols()),
        );
        let columns_match = table.sizes == self.partition.sizes() && table.cols() == self.partition.len();
        report.push("S2", columns_match, format!("constant on superclasses ({constancy})"));
        let id_ok = self.partition.records[0].members == vec![self.group.identity()];
        report.push("S3", id_ok, "{1} is a superclass");

        let classes = self.group.conjugacy_classes(self.alg);
        let refines =
            classes.iter().all(|c| c.iter().all(|&g| self.partition.class_of(g) == self.partition.class_of(c[0])));
        report.push(
            "conjugacy-refinement",
            refines,
            format!("{} conjugacy classes inside {} superclasses", classes.len(), self.partition.len()),
        );
        report.extend(table_report(table));
        report
    }
}

/// Checks that only need the table: principal row, degrees, pairwise
/// disjointness and the expansion of the regular character.
pub fn table_report(table: &CharacterTable) -> Report {
    let mut report = Report::default();
    let m = table.order_m;
    let one = CycloNumber::one(m);
    let principal = table.values.iter().any(|row| row.iter().all(|v| *v == one));
    report.push("principal", principal, "the trivial character is a supercharacter");

    let degrees_ok =
        table.values.iter().all(|row| row[0].as_rational().is_some_and(|d| d.is_integer() && is_positive(&d)));
    report.push("identity-column", degrees_ok, "values at 1 are positive integers");

    let rows = table.rows();
    let norms: Vec<CycloNumber> = (0..rows).into_par_iter().map(|i| table.inner_product(i, i)).collect();
    let off: Vec<(usize, usize)> = (0..rows)
        .into_par_iter()
        .flat_map_iter(|i| (i + 1..rows).map(move |j| (i, j)))
        .filter(|&(i, j)| !table.inner_product(i, j).is_zero())
        .collect();
    report.push(
        "disjointness",
        off.is_empty(),
        match off.first() {
            None => format!("all {} off-diagonal inner products are 0", rows * rows.saturating_sub(1) / 2),
            Some(&(i, j)) => format!("<{}, {}> != 0 ({} pairs)", table.row_labels[i], table.row_labels[j], off.len()),
        },
    );

    // ρ = sum a_α χ_α with a_α = χ_α(1) / <χ_α, χ_α>
    let mut coeffs = Vec::with_capacity(rows);
    let mut positive = true;
    for (i, norm) in norms.iter().enumerate() {
        match (table.values[i][0].as_rational(), norm.as_rational()) {
            (Some(d), Some(n)) if n != Rational::from_integer(0) => {
                let a = d / n;
                positive &= is_positive(&a);
                coeffs.push(a);
            }
            _ => {
                positive = false;
                coeffs.push(Rational::from_integer(0));
            }
        }
    }
    let mut reconstructs = true;
    for k in 0..table.cols() {
        let mut acc = CycloNumber::zero(m);
        for (row, a) in table.values.iter().zip(&coeffs) {
            acc = &acc + &row[k].scale(*a);
        }
        let expected = if k == 0 { table.group_order as i128 } else { 0 };
        reconstructs &= acc == CycloNumber::from_int(m, expected);
    }
    let shown: Vec<String> = coeffs.iter().take(8).map(|a| a.to_string()).collect();
    report.push(
        "regular-expansion",
        positive && reconstructs,
        format!(
            "coefficients [{}{}] {}",
            shown.join(","),
            if coeffs.len() > 8 { ",..." } else { "" },
            if reconstructs { "reconstruct the regular character" } else { "do not reconstruct the regular character" }
        ),
    );
    report
}

/// Block values of an element of H, rendered for label strings.
pub fn render_h(alg: &Algebra, h: &AlgebraElement) -> String {
    let parts: Vec<String> = (0..alg.n_blocks()).map(|i| render_block(alg, i, h)).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;
    use crate::triangular::{basis_index, make_triangular};

    fn tri(n: usize, p: u32) -> Algebra {
        make_triangular(n, &Field::new(p, 1).unwrap()).unwrap()
    }

    fn form(alg: &Algebra, n: usize, roots: &[(usize, usize)]) -> DualForm {
        let mut v = alg.zero_form();
        for &(i, j) in roots {
            v.0[basis_index(n, i, j) - n] = Fe(1);
        }
        v
    }

    #[test]
    fn stabilizer_examples() {
        let a = tri(2, 3);
        let s = stabilizer_data(&a, &a.zero_form(), Idempotent::ZERO).unwrap();
        assert_eq!(s.order, 12);
        let s = stabilizer_data(&a, &form(&a, 2, &[(1, 2)]), Idempotent::one(2)).unwrap();
        assert_eq!((s.j_right.len(), s.h_eprime.len(), s.order), (1, 1, 3));
        assert!(matches!(stabilizer_data(&a, &form(&a, 2, &[(1, 2)]), Idempotent::ZERO), Err(Error::NotRegular(_))));
        let b = tri(3, 3);
        assert!(torus_stabilizer_agrees(&b, &form(&b, 3, &[(1, 2), (2, 3)]), Idempotent::one(3)).unwrap());
        assert!(torus_stabilizer_agrees(&b, &form(&b, 3, &[(1, 3)]), Idempotent::from_blocks([0, 2])).unwrap());
    }

    #[test]
    fn xi_examples_and_multiplicativity() {
        let a = tri(2, 3);
        let m = cyclo_order(&a);
        let lambda = form(&a, 2, &[(1, 2)]);
        let label = SupercharLabel {
            e: Idempotent::one(2),
            f: Idempotent::ZERO,
            theta: vec![0, 0],
            lambda_rep: lambda.0.clone(),
        };
        let stab = stabilizer_data(&a, &lambda, label.e).unwrap();
        assert_eq!(xi(&a, &label, &stab, &a.one(), m).unwrap(), CycloNumber::one(m));
        let g = a.add(&a.one(), &a.basis(2));
        assert_eq!(xi(&a, &label, &stab, &g, m).unwrap(), CycloNumber::root(m, m as u64 / 3));
        let h = a.add(&a.scale(Fe(2), &a.basis(0)), &a.basis(1));
        assert!(matches!(xi(&a, &label, &stab, &h, m), Err(Error::NotInStabilizer)));

        let b = tri(3, 3);
        let m = cyclo_order(&b);
        let lambda = form(&b, 3, &[(1, 3)]);
        let e = Idempotent::from_blocks([0, 2]);
        let label = SupercharLabel { e, f: Idempotent::block(1), theta: vec![0, 1, 0], lambda_rep: lambda.0.clone() };
        let stab = stabilizer_data(&b, &lambda, e).unwrap();
        let group = UnitGroup::new(&b, &Bounds::default()).unwrap();
        let members: Vec<usize> = (0..group.order()).filter(|&g| stab.contains(&b, group.element(g))).collect();
        assert_eq!(members.len() as u128, stab.order);
        for &x in &members {
            for &y in &members {
                let xy = group.element(group.mul(&b, x, y)).clone();
                let lhs = xi(&b, &label, &stab, &xy, m).unwrap();
                let rhs = &xi(&b, &label, &stab, group.element(x), m).unwrap()
                    * &xi(&b, &label, &stab, group.element(y), m).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn small_tables() {
        let a = tri(2, 2);
        let th = Theory::build(&a, &Bounds::default()).unwrap();
        let (t, _) = th.table(InductionMode::Exhaustive).unwrap();
        let one = CycloNumber::one(2);
        let neg = CycloNumber::from_int(2, -1);
        assert_eq!(t.values, vec![vec![one.clone(), one.clone()], vec![one, neg]]);
        assert!(th.axioms_report(&t, "exhaustive").all_pass());

        let b = tri(2, 3);
        let th = Theory::build(&b, &Bounds::default()).unwrap();
        let (t, labels) = th.table(InductionMode::Exhaustive).unwrap();
        assert_eq!(t.rows(), 5);
        let report = th.axioms_report(&t, "exhaustive");
        assert!(report.all_pass(), "{report}");
        let big = labels.iter().position(|l| l.e == Idempotent::one(2)).unwrap();
        assert_eq!(t.values[big][0], CycloNumber::from_int(6, 4));
        let mut bad = t.clone();
        bad.perturb(1, 2);
        assert!(!th.axioms_report(&bad, "exhaustive").all_pass());
    }

    #[test]
    fn orbit_independence_and_inner_products() {
        let a = tri(3, 3);
        let th = Theory::build(&a, &Bounds::default()).unwrap();
        let mut tested = 0;
        for o in th.dual_census.orbits.iter().filter(|o| o.len() > 1) {
            let e = o.support;
            let corner: Vec<usize> =
                o.members.iter().copied().filter(|&k| a.form_in_corner(e, &DualForm(a.unpack(k, 3)))).collect();
            if corner.len() < 2 {
                continue;
            }
            let mk =
                |k: usize| SupercharLabel { e, f: Idempotent::ZERO, theta: vec![0; 3], lambda_rep: a.unpack(k, 3) };
            let x = th.induce(&mk(corner[0]), InductionMode::Exhaustive).unwrap();
            let y = th.induce(&mk(corner[corner.len() - 1]), InductionMode::Exhaustive).unwrap();
            assert_eq!(x, y);
            tested += 1;
        }
        assert!(tested >= 3);
        let labels = th.labels();
        let trivial = th.induce(&labels[0], InductionMode::Exhaustive).unwrap();
        assert!(trivial.values.iter().all(|v| *v == CycloNumber::one(th.order_m)));
        assert_eq!(th.inner_product(&trivial, &trivial).unwrap(), CycloNumber::one(th.order_m));
    }

    #[test]
    fn n_supercharacters() {
        let a = tri(2, 3);
        let th = Theory::build(&a, &Bounds::default()).unwrap();
        let m = th.order_m;
        let chi = th.n_supercharacter(&form(&a, 2, &[(1, 2)])).unwrap();
        assert_eq!(chi, vec![CycloNumber::one(m), CycloNumber::root(m, 2), CycloNumber::root(m, 4)]);
        let triv = th.n_supercharacter(&a.zero_form()).unwrap();
        assert!(triv.iter().all(|v| *v == CycloNumber::one(m)));

        let b = tri(3, 2);
        let th = Theory::build(&b, &Bounds::default()).unwrap();
        let chi = th.n_supercharacter(&form(&b, 3, &[(1, 3)])).unwrap();
        // UT(3,2) is dihedral of order 8; this is its faithful character of degree 2
        let idx13 = b.pack(&form(&b, 3, &[(1, 3)]).0);
        assert_eq!(chi[0], CycloNumber::from_int(2, 2));
        assert_eq!(chi[idx13], CycloNumber::from_int(2, -2));
        assert_eq!(chi.iter().filter(|v| v.is_zero()).count(), 6);
    }

    #[test]
    fn restriction_weak_form() {
        let a = tri(3, 3);
        let th = Theory::build(&a, &Bounds::default()).unwrap();
        for label in th.labels() {
            let chi = th.induce(&label, InductionMode::Exhaustive).unwrap();
            let r = th.restriction_check(&label, &chi).unwrap();
            assert!(r.pass(), "{} {:?}", label.render(&a), r);
        }
    }
}
