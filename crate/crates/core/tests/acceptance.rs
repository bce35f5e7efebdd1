//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line.

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, Schur};
use rayon::prelude::*;
use spectral_join::eig::{eig_sym, eigenvalues_sym, multiset_distance, unmatched_in, SymMatrix};
use spectral_join::generate::{random_symmetric, seeded};
use spectral_join::join::{generalized_join, theorem1_verify, Hypothesis};
use spectral_join::quotient::{build_quotient, theorem2_spectrum, RegularFamily};
use spectral_join::search::{conjecture_check, graph_from_mask, labeled_graph_count};
use spectral_join::spread::{cycle_path_join, theorem6_family};
use spectral_join::verify::{bounds_suite, lemma1_suite, random_families, BoundsConfig, SuiteReport};
use spectral_join::{Graph, JoinPart, JoinSpec, VertexSet};

fn report(id: &str, pass: bool, elapsed: Duration, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id}: {verdict} ({:.2?}) {detail}", elapsed);
}

/// Star, path and K4-minus-an-edge on a path host, each constrained to a subset.
fn three_part_join() -> JoinSpec {
    let star = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
    let g3 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
    JoinSpec::new(
        Graph::path(3),
        vec![
            JoinPart::new(star, VertexSet::from_indices(3, &[0, 1]).unwrap()).unwrap(),
            JoinPart::new(Graph::path(3), VertexSet::from_indices(3, &[0, 2]).unwrap()).unwrap(),
            JoinPart::new(g3, VertexSet::from_indices(4, &[0, 2, 3]).unwrap()).unwrap(),
        ],
    )
    .unwrap()
}

#[test]
fn criterion_1_constrained_join_spectrum() {
    let start = Instant::now();
    let expected = [4.44999, 1.86239, 0.0, 0.0, 0.0, -1.0, -1.3822, -1.51442, -3.02546];
    let g = generalized_join(&three_part_join());
    let values = eigenvalues_sym(&SymMatrix::adjacency(&g)).unwrap();
    let missing = unmatched_in(&values, &expected, 5e-4);
    let extra = unmatched_in(&expected, &values, 5e-4);
    let elapsed = start.elapsed();
    let pass = missing.is_empty() && elapsed < Duration::from_secs(1);
    report(
        "1",
        pass,
        elapsed,
        &format!("computed {values:.5?}; listed values missing {missing:?}; unlisted computed values {extra:.5?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_2_inherited_eigenvalues() {
    let start = Instant::now();
    let r = theorem1_verify(&three_part_join()).unwrap();
    let elapsed = start.elapsed();
    let values = |i: usize| -> Vec<(f64, usize)> {
        r.parts[i].inherited.iter().map(|e| (e.value, e.multiplicity)).collect()
    };
    let near = |v: &[(f64, usize)], want: &[(f64, usize)]| {
        v.len() == want.len() && v.iter().zip(want).all(|(a, b)| (a.0 - b.0).abs() < 1e-9 && a.1 == b.1)
    };
    let first_excluded = matches!(r.parts[0].hypothesis, Hypothesis::Certified { k: 1, tau: 1, .. })
        && r.parts[0].inherited.is_empty()
        && r.parts[0].excluded.len() == 1
        && r.parts[0].excluded[0].abs() < 1e-9;
    let pass = r.pass
        && first_excluded
        && near(&values(1), &[(0.0, 1)])
        && near(&values(2), &[(-1.0, 1)])
        && elapsed < Duration::from_secs(1);
    report(
        "2",
        pass,
        elapsed,
        &format!(
            "part 1 excluded {:?}; part 2 inherits {:?}; part 3 inherits {:?}",
            r.parts[0].excluded,
            values(1),
            values(2)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_3_regular_join_spectrum_assembly() {
    let start = Instant::now();
    let pool = [
        Graph::cycle(3).unwrap(),
        Graph::cycle(4).unwrap(),
        Graph::cycle(5).unwrap(),
        Graph::complete(3),
        Graph::complete(4),
        Graph::null(3),
    ];
    let mut cases = Vec::new();
    for p in 1..=4usize {
        for mask in 0..labeled_graph_count(p) {
            let host = graph_from_mask(p, mask);
            for choice in 0..pool.len().pow(p as u32) {
                let mut c = choice;
                let parts: Vec<Graph> = (0..p)
                    .map(|_| {
                        let g = pool[c % pool.len()].clone();
                        c /= pool.len();
                        g
                    })
                    .collect();
                cases.push((host.clone(), parts));
            }
        }
    }
    let worst = cases
        .par_iter()
        .map(|(host, parts)| {
            let fam = RegularFamily::from_graphs(host.clone(), parts.clone()).unwrap();
            let assembled = theorem2_spectrum(&fam).unwrap().values;
            let direct = eigenvalues_sym(&SymMatrix::adjacency(&fam.join().unwrap())).unwrap();
            multiset_distance(&assembled, &direct).unwrap_or(f64::INFINITY)
        })
        .reduce(|| 0.0, f64::max);
    let elapsed = start.elapsed();
    let pass = cases.len() >= 500 && worst <= 1e-6 && elapsed < Duration::from_secs(60);
    report("3", pass, elapsed, &format!("{} families, worst deviation {worst:.2e}", cases.len()));
    assert!(pass);
}

#[test]
fn criterion_4_maximum_spread_search() {
    let mut pass = true;
    let mut detail = String::new();
    let start = Instant::now();
    let mut n7 = Duration::ZERO;
    for n in 3..=7 {
        let t = Instant::now();
        let r = conjecture_check(n, false).unwrap();
        if n == 7 {
            n7 = t.elapsed();
        }
        pass &= r.pass;
        detail.push_str(&format!(
            "n={n}: max {:.6} vs {:.6}, {} maximizers, spectra {}, bracket {}; ",
            r.max_spread,
            r.predicted,
            r.maximizers,
            if r.spectra_match { "match" } else { "differ" },
            if r.bracket_holds { "holds" } else { "fails" },
        ));
    }
    pass &= n7 < Duration::from_secs(600);
    report("4", pass, start.elapsed(), &detail);
    assert!(pass);
}

#[test]
fn criterion_5_cycle_family_with_spread_n() {
    let start = Instant::now();
    let mut members = 0;
    let mut regular_members = Vec::new();
    let mut spread_ok = true;
    for n in (12..=20).step_by(2) {
        for p in 3..=(n - 6) / 2 {
            let (_, r) = theorem6_family(n, p).unwrap();
            members += 1;
            if !r.nonregular {
                regular_members.push((n, p));
            }
            spread_ok &= (r.spread.spread - n as f64).abs() <= 1e-8;
        }
    }
    let mut probes = 0;
    let mut below_ok = true;
    for n in (13..=21).step_by(2) {
        for p in 3..n {
            for q in 3..n {
                if n < p + q + 3 {
                    continue;
                }
                let (_, r) = cycle_path_join(n, p, q).unwrap();
                probes += 1;
                below_ok &= r.spread.spread < n as f64 - 1e-9;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = regular_members.is_empty() && spread_ok && below_ok && elapsed < Duration::from_secs(5);
    report(
        "5",
        pass,
        elapsed,
        &format!(
            "{members} members with q = n/2: spread = n {}; regular members {regular_members:?}; \
             {probes} odd-n probes spread < n {}",
            if spread_ok { "holds" } else { "fails" },
            if below_ok { "holds" } else { "fails" },
        ),
    );
    assert!(pass);
}

fn bound_panel() -> &'static (SuiteReport, Duration) {
    static PANEL: std::sync::OnceLock<(SuiteReport, Duration)> = std::sync::OnceLock::new();
    PANEL.get_or_init(|| {
        let start = Instant::now();
        let r = bounds_suite(&BoundsConfig::default()).unwrap();
        (r, start.elapsed())
    })
}

fn violated_checks(r: &SuiteReport, keep: impl Fn(&str) -> bool) -> Vec<(String, String, u64)> {
    r.sections
        .iter()
        .flat_map(|s| {
            s.checks
                .iter()
                .filter(|(name, t)| t.violated > 0 && keep(name))
                .map(|(name, t)| (s.name.clone(), name.clone(), t.violated))
        })
        .collect()
}

const HOST_SPREAD_LOWER: &str = "host_spread_lower";

#[test]
fn criterion_6_bound_panel() {
    let (r, elapsed) = bound_panel();
    let violated = violated_checks(r, |name| name != HOST_SPREAD_LOWER);
    let cases: Vec<_> = r.sections.iter().map(|s| (s.name.as_str(), s.cases)).collect();
    let pass = violated.is_empty() && *elapsed < Duration::from_secs(300);
    report(
        "6 (panel)",
        pass,
        *elapsed,
        &format!("cases {cases:?}; violated {violated:?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_6_host_spread_lower_bound() {
    let (r, elapsed) = bound_panel();
    let families = r.section("regular_families").unwrap();
    let violated = families.violations_of(HOST_SPREAD_LOWER);
    let first = families
        .first_counterexample
        .as_ref()
        .filter(|c| c.check == HOST_SPREAD_LOWER);
    let pass = violated == 0;
    report(
        "6 (host spread lower bound)",
        pass,
        *elapsed,
        &format!(
            "{violated} of {} families violate s(G) >= bound; first {first:?}",
            families.cases
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_7_nonmain_criterion() {
    let start = Instant::now();
    let r = lemma1_suite(6, false).unwrap();
    let elapsed = start.elapsed();
    let certs = r.section("certificates").unwrap();
    let pass = r.pass && elapsed < Duration::from_secs(120);
    report(
        "7",
        pass,
        elapsed,
        &format!(
            "{} graphs, {} certified sets with tau > 0, {} failures",
            r.section("exhaustive_graphs").unwrap().cases,
            certs.cases,
            r.violations
        ),
    );
    assert!(pass);
}

/// Eigenvalues `(re, im)` of a general matrix. The Francis iteration stalls on
/// spectra symmetric about zero, so retry on diagonal shifts.
fn general_eigenvalues(m: &DMatrix<f64>) -> Option<Vec<(f64, f64)>> {
    [0.0, 0.618_034, 1.375_31, -2.625_17].iter().find_map(|&c| {
        let shifted = m + DMatrix::identity(m.nrows(), m.ncols()) * c;
        Schur::try_new(shifted, f64::EPSILON, 10_000)
            .map(|s| s.complex_eigenvalues().iter().map(|z| (z.re - c, z.im)).collect())
    })
}

#[test]
fn criterion_8_eigensolver_quality() {
    let start = Instant::now();
    let mut rng = seeded(8);
    let matrices: Vec<SymMatrix> = (0..1000)
        .map(|i| random_symmetric(1 + i % 60, &mut rng))
        .collect();
    let (residual, defect) = matrices
        .par_iter()
        .map(|a| {
            let e = eig_sym(a).unwrap();
            let scale = a.frobenius_norm().max(1.0);
            (e.reconstruction_residual(a) / scale, e.orthonormality_defect())
        })
        .reduce(|| (0.0, 0.0), |x, y| (x.0.max(y.0), x.1.max(y.1)));

    let families = random_families(500, &mut rng).unwrap();
    let similarity = families
        .iter()
        .map(|fam| {
            let q = build_quotient(fam).unwrap();
            let p = q.m.len();
            let m = DMatrix::from_fn(p, p, |i, j| q.m[i][j]);
            let Some(eigen) = general_eigenvalues(&m) else {
                return f64::INFINITY;
            };
            let mut oracle: Vec<f64> = eigen.iter().map(|z| z.0).collect();
            let imag = eigen.iter().map(|z| z.1.abs()).fold(0.0, f64::max);
            oracle.sort_by(|a, b| b.total_cmp(a));
            multiset_distance(&oracle, &q.eigenvalues).unwrap_or(f64::INFINITY).max(imag)
        })
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let pass = residual <= 1e-9 && defect <= 1e-9 && similarity <= 1e-8;
    report(
        "8",
        pass,
        elapsed,
        &format!("relative residual {residual:.2e}, orthonormality {defect:.2e}, quotient agreement {similarity:.2e}"),
    );
    assert!(pass);
}
