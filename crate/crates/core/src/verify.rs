//! Property suites behind `supchar verify`, each producing one [`Report`].

use rayon::prelude::*;

use crate::algebra::{
    census, is_singular, is_singular_form, ActionSpace, Algebra, Bounds, DualForm, OrbitCensus, SpaceTag,
};
use crate::error::{Error, Result};
use crate::scalars::CycloNumber;
use crate::supercharacter::{stabilizer_data, torus_stabilizer_agrees, InductionMode, Report, Theory};
use crate::triangular::{
    basic_subsets, brute_force_table, closed_form_table, degree, general_label_of_char, is_regular_d, label_count,
    labels,
};

fn census_line(c: &OrbitCensus) -> String {
    format!("n={} n_E={} residual={}", c.n(), c.n_regular(), c.residual)
}

/// Counting identity, residuals and singularity of orbit members. `n` is set
/// for `t(n, q)` and adds the rook-placement checks.
pub fn orbit_suite(alg: &Algebra, n: Option<usize>, bounds: &Bounds) -> Result<Report> {
    let j = census(alg, ActionSpace::J, bounds)?;
    let d = census(alg, ActionSpace::Dual, bounds)?;
    let mut report = Report::default();
    report.push(
        "orbits-regular",
        j.n_regular_corner == d.n_regular_corner,
        format!("n_E(J_e) = n_E(J*_e) for every e; J: {}; J*: {}", census_line(&j), census_line(&d)),
    );
    report.push(
        "orbits-residual",
        j.residual == 0 && d.residual == 0,
        format!("inclusion-exclusion residuals {} and {}", j.residual, d.residual),
    );
    let r = alg.radical_dim();
    let bad: usize = [&j, &d]
        .iter()
        .map(|c| {
            c.orbits
                .par_iter()
                .filter(|o| {
                    o.members.iter().any(|&m| {
                        let v = alg.unpack(m, r);
                        let s = match c.space {
                            SpaceTag::Dual => is_singular_form(alg, &DualForm(v)),
                            _ => is_singular(alg, &alg.from_j_coords(&v)),
                        };
                        s != o.singular
                    })
                })
                .count()
        })
        .sum();
    report.push(
        "orbits-singularity",
        bad == 0,
        format!("singularity constant on all {} orbits ({bad} exceptions)", j.n() + d.n()),
    );
    if let Some(n) = n {
        let subsets = basic_subsets(n);
        let mut mismatches = Vec::new();
        let mut oj = Vec::new();
        let mut od = Vec::new();
        for b in &subsets {
            let v = b.element_coords(n);
            let regular = is_regular_d(b, n);
            if is_singular(alg, &alg.from_j_coords(&v)) == regular
                || is_singular_form(alg, &DualForm(v.clone())) == regular
            {
                mismatches.push(b.to_string());
            }
            oj.push(j.orbit_index(alg.pack(&v)));
            od.push(d.orbit_index(alg.pack(&v)));
        }
        report.push(
            "orbits-rook",
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!("annihilator test agrees with row(D) ∪ col(D) = [1,{n}] on {} basic subsets", subsets.len())
            } else {
                format!("disagreement on {}", mismatches.join(" "))
            },
        );
        let distinct = |mut v: Vec<usize>| {
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        let (a, b) = (distinct(oj), distinct(od));
        report.push(
            "orbits-partition",
            a == j.n() && b == d.n() && a == subsets.len(),
            format!("{} basic subsets hit {a} of {} orbits in J and {b} of {} in J*", subsets.len(), j.n(), d.n()),
        );
    }
    Ok(report)
}

/// Predicted count, partition size and label count (and the rook formula on
/// `t(n, q)`) agree.
pub fn count_suite(th: &Theory<'_>, n: Option<usize>) -> Report {
    let predicted = th.predicted_count();
    let partition = th.partition.len() as u128;
    let chars = th.labels().len() as u128;
    let mut pass = predicted == partition && partition == chars;
    let mut details = format!("predicted {predicted} = partition {partition} = supercharacters {chars}");
    if let Some(n) = n {
        let formula = label_count(n, th.alg.field().q()) as u128;
        pass &= formula == partition;
        details.push_str(&format!(" = formula {formula}"));
    }
    let mut report = Report::default();
    report.push("counts", pass, details);
    report
}

/// The table by exhaustive induction, the axiom checks on it and the torus
/// stabilizer identity. `perturb` corrupts one entry before checking.
pub fn axiom_suite(th: &Theory<'_>, perturb: bool) -> Result<Report> {
    let mut report = Report::default();
    let (mut table, labels) = match th.table(InductionMode::Exhaustive) {
        Ok(t) => t,
        Err(e @ (Error::NotConstantOnSuperclass(_) | Error::LabelMismatch(_))) => {
            report.push("S2", false, e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    if perturb {
        let (r, c) = (table.rows() - 1, table.cols() - 1);
        table.perturb(r, c);
    }
    let constancy = format!("exhaustive over {} elements", th.group.order());
    report.extend(th.axioms_report(&table, &constancy));
    let bad: Vec<String> = labels
        .iter()
        .filter(|l| !torus_stabilizer_agrees(th.alg, &l.lambda(), l.e).unwrap_or(false))
        .map(|l| l.render(th.alg))
        .collect();
    report.push(
        "stabilizers",
        bad.is_empty(),
        if bad.is_empty() {
            format!("H_e' = H_right ∩ H_left for all {} labels", labels.len())
        } else {
            format!("fails for {}", bad.join(" "))
        },
    );
    Ok(report)
}

/// Closed formula against induction on `t(n, q)`, and the degree identity.
pub fn oracle_suite(th: &Theory<'_>, n: usize, mode: InductionMode) -> Result<Report> {
    let alg = th.alg;
    let q = alg.field().q();
    let closed = closed_form_table(alg, n)?;
    let mut report = Report::default();
    match brute_force_table(th, n, mode) {
        Ok(brute) => {
            let diff = closed.diff(&brute);
            report.push(
                "oracle",
                diff.is_empty(),
                if diff.is_empty() {
                    format!("{}x{} tables identical", closed.rows(), closed.cols())
                } else {
                    format!("{} differences, first: {}", diff.len(), diff[0])
                },
            );
        }
        Err(e) if !e.is_bound() => report.push("oracle", false, e.to_string()),
        Err(e) => return Err(e),
    }
    let (_, chars) = labels(n, alg.field());
    let group = th.group.order() as u128;
    let mut bad = Vec::new();
    for (row, chi) in closed.values.iter().zip(&chars) {
        let label = general_label_of_char(n, chi);
        let stab = stabilizer_data(alg, &label.lambda(), label.e)?;
        let formula = degree(q, &chi.d);
        let ok = row[0] == CycloNumber::from_int(closed.order_m, formula as i128)
            && group.is_multiple_of(stab.order)
            && group / stab.order == formula;
        if !ok {
            bad.push(chi.render());
        }
    }
    report.push(
        "degree-identity",
        bad.is_empty(),
        if bad.is_empty() {
            format!("chi(1) = |G|/|G_λ| = q^(sum(j-i-1)) (q-1)^(2|D|) for all {} rows", chars.len())
        } else {
            format!("fails for {}", bad.join(" "))
        },
    );
    Ok(report)
}

/// Every supercharacter restricts to N as a nonnegative combination of
/// N-supercharacters from its own orbit.
pub fn restriction_suite(th: &Theory<'_>) -> Result<Report> {
    let labels = th.labels();
    let results: Vec<(String, bool)> = labels
        .par_iter()
        .map(|l| {
            let chi = th.induce(l, InductionMode::Exhaustive)?;
            let r = th.restriction_check(l, &chi)?;
            Ok((l.render(th.alg), r.pass()))
        })
        .collect::<Result<_>>()?;
    let bad: Vec<&str> = results.iter().filter(|(_, ok)| !ok).map(|(l, _)| l.as_str()).collect();
    let mut report = Report::default();
    report.push(
        "restriction",
        bad.is_empty(),
        if bad.is_empty() {
            format!("all {} restrictions decompose nonnegatively inside their orbits", labels.len())
        } else {
            format!("fails for {}", bad.join(" "))
        },
    );
    Ok(report)
}
