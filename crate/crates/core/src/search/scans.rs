use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

use super::enumerate::{enumerate_closed_quipus, enumerate_open_quipus};
use super::report::{Role, SpecRow, VerificationReport};
use crate::error::{Error, Result};
use crate::graph::{
    build_dagger, classify_shape, diameter, encode_graph6, ClosedQuipuSpec, Graph, OpenQuipuSpec,
    ShapeClass,
};
use crate::spectral::{
    char_poly, edge_density_exceeds_threshold, exceeds_hoffman_limit, is_below_threshold,
    poly_below_threshold, spectral_radius, DEFAULT_TOL,
};

pub(crate) struct RowInput<'a> {
    pub g: &'a Graph,
    pub d: usize,
    pub spec: String,
    pub family: &'a str,
    pub role: Role,
    pub verdict: &'a str,
    pub note: String,
}

pub(crate) fn spec_row(input: RowInput<'_>) -> Result<SpecRow> {
    let rho = spectral_radius(input.g, DEFAULT_TOL)?;
    Ok(SpecRow {
        n: input.g.n(),
        d: input.d,
        rho_lo: rho.lo,
        rho_hi: rho.hi,
        verdict: input.verdict.to_string(),
        family: input.family.to_string(),
        spec: input.spec,
        role: input.role,
        note: input.note,
    })
}

fn empty_report(theorem: &str, range: String) -> VerificationReport {
    VerificationReport {
        theorem: theorem.into(),
        range,
        scanned: 0,
        below_threshold: 0,
        counterexamples: Vec::new(),
        cases: Vec::new(),
        expected_cases: Vec::new(),
        cases_match: true,
        notes: Vec::new(),
        passed: false,
        wall_time: Default::default(),
    }
}

fn same_set(found: &[SpecRow], expected: &[String]) -> bool {
    let a: BTreeSet<&str> = found.iter().map(|r| r.spec.as_str()).collect();
    let b: BTreeSet<&str> = expected.iter().map(String::as_str).collect();
    a == b && a.len() == found.len()
}

fn open_family(s: &OpenQuipuSpec) -> &'static str {
    if s.r() == 0 {
        "t_shape"
    } else {
        "open_quipu"
    }
}

/// Below-threshold members of `specs` with their diameters, in input order.
fn below_with_diameter<S: Sync + Clone + Send>(
    specs: &[S],
    build: impl Fn(&S) -> Graph + Sync,
) -> Vec<(S, Graph, usize)> {
    specs
        .par_iter()
        .filter_map(|s| {
            let g = build(s);
            if !is_below_threshold(&g).below {
                return None;
            }
            let d = diameter(&g).expect("quipus are connected");
            Some((s.clone(), g, d))
        })
        .collect()
}

/// The trees `P_{(1,m−2,m)}^{(1,m)}` of order `3m + 2` in `lo..=hi`.
pub fn theorem_1_1_equality_family(lo: usize, hi: usize) -> Vec<OpenQuipuSpec> {
    (2..)
        .map(|m| (m, 3 * m + 2))
        .take_while(|&(_, n)| n <= hi)
        .filter(|&(_, n)| n >= lo)
        .map(|(m, _)| {
            OpenQuipuSpec::new(vec![1, m - 2, m], vec![1, m])
                .expect("valid")
                .canonical()
        })
        .collect()
}

/// Every open quipu of order `6 ≤ n ≤ n_max` with `ρ < λ*` satisfies
/// `3D ≥ 2n − 4`, with equality exactly on `P_{(1,m−2,m)}^{(1,m)}`; daggers
/// of the same orders satisfy `3D > 2n − 4`.
pub fn verify_theorem_1_1(n_max: usize) -> Result<VerificationReport> {
    if n_max < 6 {
        return Err(Error::Config(format!("t1.1 needs n_max >= 6, got {n_max}")));
    }
    let started = Instant::now();
    let mut report = empty_report("t1.1", format!("open quipus, 6 <= n <= {n_max}"));
    let specs: Vec<OpenQuipuSpec> = (6..=n_max).flat_map(enumerate_open_quipus).collect();
    let below = below_with_diameter(&specs, OpenQuipuSpec::build);
    report.scanned = specs.len();
    report.below_threshold = below.len();
    for (s, g, d) in &below {
        let (lhs, rhs) = (3 * d, 2 * g.n() - 4);
        let role = match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => Role::Counterexample,
            std::cmp::Ordering::Equal => Role::Case,
            std::cmp::Ordering::Greater => continue,
        };
        let row = spec_row(RowInput {
            g,
            d: *d,
            spec: s.to_string(),
            family: open_family(s),
            role,
            verdict: "below",
            note: format!("3D = {lhs}, 2n-4 = {rhs}"),
        })?;
        match role {
            Role::Counterexample => report.counterexamples.push(row),
            _ => report.cases.push(row),
        }
    }
    report.expected_cases = theorem_1_1_equality_family(6, n_max)
        .iter()
        .map(|s| s.to_string())
        .collect();
    report.cases_match = same_set(&report.cases, &report.expected_cases);
    let mut daggers_ok = true;
    for t in 1..=n_max - 5 {
        let g = build_dagger(t);
        let d = diameter(&g)?;
        if 3 * d <= 2 * g.n() - 4 {
            daggers_ok = false;
            let below = is_below_threshold(&g).below;
            report.counterexamples.push(spec_row(RowInput {
                g: &g,
                d,
                spec: format!("dagger {t}"),
                family: "dagger",
                role: Role::Counterexample,
                verdict: if below { "below" } else { "above" },
                note: "dagger with 3D <= 2n-4".into(),
            })?);
        }
    }
    if daggers_ok {
        report.notes.push(format!(
            "daggers with 6 <= n <= {n_max} all satisfy 3D > 2n-4"
        ));
    }
    Ok(report.finish(started))
}

/// The exceptional closed quipus `C^{(m)}_{(2m+3)}` and `C^{(m)}_{(2m+5)}` of
/// order in `lo..=hi`.
pub fn theorem_1_2_exceptions(lo: usize, hi: usize) -> Vec<ClosedQuipuSpec> {
    let mut out = Vec::new();
    for m in 1..=hi {
        for (k, n) in [(2 * m + 3, 3 * m + 4), (2 * m + 5, 3 * m + 6)] {
            if (lo..=hi).contains(&n) {
                out.push(
                    ClosedQuipuSpec::new(vec![k], vec![m])
                        .expect("valid")
                        .canonical(),
                );
            }
        }
    }
    out
}

/// Every closed quipu of order `13 ≤ n ≤ n_max` with `ρ < λ*` satisfies
/// `n/3 < D ≤ (2n−2)/3`, and `3D ≤ 2n − 4` fails only on the two
/// exceptional families.
pub fn verify_theorem_1_2(n_max: usize) -> Result<VerificationReport> {
    if n_max < 13 {
        return Err(Error::Config(format!(
            "t1.2 needs n_max >= 13, got {n_max}"
        )));
    }
    let started = Instant::now();
    let mut report = empty_report("t1.2", format!("closed quipus, 13 <= n <= {n_max}"));
    let specs: Vec<ClosedQuipuSpec> = (13..=n_max).flat_map(enumerate_closed_quipus).collect();
    let below = below_with_diameter(&specs, ClosedQuipuSpec::build);
    report.scanned = specs.len();
    report.below_threshold = below.len();
    for (s, g, d) in &below {
        let n = g.n();
        let family = if s.is_cycle() {
            "cycle"
        } else {
            "closed_quipu"
        };
        let row = |role, note: String| {
            spec_row(RowInput {
                g,
                d: *d,
                spec: s.to_string(),
                family,
                role,
                verdict: "below",
                note,
            })
        };
        if 3 * d <= n || 3 * d > 2 * n - 2 {
            report.counterexamples.push(row(
                Role::Counterexample,
                format!("3D = {}, n = {n}, 2n-2 = {}", 3 * d, 2 * n - 2),
            )?);
        } else if 3 * d > 2 * n - 4 {
            report.cases.push(row(
                Role::Case,
                format!("3D = {}, 2n-4 = {}", 3 * d, 2 * n - 4),
            )?);
        }
    }
    report.expected_cases = theorem_1_2_exceptions(13, n_max)
        .iter()
        .map(|s| s.to_string())
        .collect();
    report.cases_match = same_set(&report.cases, &report.expected_cases);
    Ok(report.finish(started))
}

fn class_spec(class: &ShapeClass, g: &Graph) -> String {
    match class {
        ShapeClass::Path => format!("path {}", g.n()),
        ShapeClass::Cycle => format!("cycle {}", g.n()),
        ShapeClass::Dagger { tail } => format!("dagger {tail}"),
        ShapeClass::TShape(s) | ShapeClass::OpenQuipu(s) => s.to_string(),
        ShapeClass::ClosedQuipu(s) => s.to_string(),
        ShapeClass::Other => format!("g6:{}", encode_graph6(g)),
    }
}

/// Every connected graph in `graphs` with `√(2+√5) < ρ < λ*` must be a
/// dagger, an open quipu or a closed quipu. Disconnected input is skipped.
pub fn woo_neumaier_spotcheck(graphs: &[Graph]) -> Result<VerificationReport> {
    let started = Instant::now();
    let n_max = graphs.iter().map(Graph::n).max().unwrap_or(0);
    let mut report = empty_report(
        "woo-neumaier",
        format!("{} graphs, n <= {n_max}", graphs.len()),
    );
    // (connected, below, in window)
    let verdicts: Vec<(bool, bool, bool)> = graphs
        .par_iter()
        .map(|g| {
            if g.n() == 0 || !g.is_connected() {
                return (false, false, false);
            }
            if edge_density_exceeds_threshold(g) {
                return (true, false, false);
            }
            let p = char_poly(g);
            let below = poly_below_threshold(&p);
            (true, below, below && exceeds_hoffman_limit(&p))
        })
        .collect();
    report.scanned = verdicts.iter().filter(|v| v.0).count();
    report.below_threshold = verdicts.iter().filter(|v| v.1).count();
    let skipped = graphs.len() - report.scanned;
    if skipped > 0 {
        report
            .notes
            .push(format!("{skipped} disconnected graphs skipped"));
    }
    for (g, _) in graphs.iter().zip(&verdicts).filter(|(_, v)| v.2) {
        let class = classify_shape(g);
        let role = if class.in_trichotomy() {
            Role::Case
        } else {
            Role::Counterexample
        };
        let row = spec_row(RowInput {
            g,
            d: diameter(g)?,
            spec: class_spec(&class, g),
            family: class.tag(),
            role,
            verdict: "window",
            note: String::new(),
        })?;
        match role {
            Role::Counterexample => report.counterexamples.push(row),
            _ => report.cases.push(row),
        }
    }
    Ok(report.finish(started))
}
