//! Batch invariant suites: run many instances, tally every check, keep the
//! first counterexample.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::eig::Spectrum;
use crate::error::{Error, Result};
use crate::generate::{random_graph, random_regular_any, seeded};
use crate::graph::Graph;
use crate::quotient::RegularFamily;
use crate::regular_sets::{enumerate_ktau, lemma1_nonmain_check};
use crate::search::{conjecture_check, fold_labeled_graphs, ConjectureReport};
use crate::spread::{
    pmatrix_upper_bound, sandwich_bound_check, spread, spread_join2, theorem5_spread, BoundCheck,
};

/// Largest exhaustive order for the bounds suite without `long`.
pub const BOUNDS_DESK_LIMIT: usize = 7;
/// Largest exhaustive order for the bounds suite with `long`.
pub const BOUNDS_LONG_LIMIT: usize = 8;
/// Largest exhaustive order for the non-main criterion suite without `long`.
pub const LEMMA1_DESK_LIMIT: usize = 6;
pub const LEMMA1_LONG_LIMIT: usize = 7;

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckTally {
    pub evaluated: u64,
    pub violated: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub case: String,
    pub lhs: f64,
    pub rhs: f64,
}

/// Tallies for one family of instances.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Section {
    pub name: String,
    pub cases: u64,
    pub checks: BTreeMap<String, CheckTally>,
    pub first_counterexample: Option<Counterexample>,
}

impl Section {
    fn named(name: &str) -> Self {
        Section {
            name: name.to_string(),
            ..Section::default()
        }
    }

    fn record(&mut self, checks: &[BoundCheck], case: impl FnOnce() -> String) {
        self.cases += 1;
        let mut case = Some(case);
        for c in checks {
            let tally = self.checks.entry(c.name.clone()).or_default();
            tally.evaluated += 1;
            if !c.satisfied {
                tally.violated += 1;
                if self.first_counterexample.is_none() {
                    self.first_counterexample = Some(Counterexample {
                        check: c.name.clone(),
                        case: case.take().map_or_else(String::new, |f| f()),
                        lhs: c.lhs,
                        rhs: c.rhs,
                    });
                }
            }
        }
    }

    fn merge(mut self, other: Section) -> Section {
        self.cases += other.cases;
        for (name, t) in other.checks {
            let mine = self.checks.entry(name).or_default();
            mine.evaluated += t.evaluated;
            mine.violated += t.violated;
        }
        if self.first_counterexample.is_none() {
            self.first_counterexample = other.first_counterexample;
        }
        self
    }

    pub fn violations(&self) -> u64 {
        self.checks.values().map(|t| t.violated).sum()
    }

    pub fn violations_of(&self, check: &str) -> u64 {
        self.checks.get(check).map_or(0, |t| t.violated)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub sections: Vec<Section>,
    pub violations: u64,
    pub pass: bool,
}

impl SuiteReport {
    fn from_sections(suite: &str, sections: Vec<Section>) -> Self {
        let violations = sections.iter().map(Section::violations).sum();
        SuiteReport {
            suite: suite.to_string(),
            sections,
            violations,
            pass: violations == 0,
        }
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn first_counterexample(&self) -> Option<&Counterexample> {
        self.sections.iter().find_map(|s| s.first_counterexample.as_ref())
    }
}

fn describe(g: &Graph) -> String {
    format!("n={} edges={:?}", g.order(), g.edges())
}

fn describe_family(fam: &RegularFamily) -> String {
    format!(
        "H: {}; orders={:?}; degrees={:?}",
        describe(fam.host()),
        fam.orders(),
        fam.degrees()
    )
}

fn capacity(what: &'static str, value: usize, limit: usize) -> Error {
    Error::Capacity { what, value, limit }
}

#[derive(Debug, Clone)]
pub struct BoundsConfig {
    /// Every labeled graph up to this order gets the full panel.
    pub exhaustive_max_n: usize,
    /// Every labeled regular graph up to this order gets the panel.
    pub regular_max_n: usize,
    pub random_graphs: usize,
    pub random_max_n: usize,
    pub join_pairs: usize,
    pub families: usize,
    pub seed: u64,
    pub long: bool,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            exhaustive_max_n: 6,
            regular_max_n: 8,
            random_graphs: 10_000,
            random_max_n: 40,
            join_pairs: 1_000,
            families: 2_000,
            seed: 42,
            long: false,
        }
    }
}

/// Runs the spread panel on every labeled graph of order `1..=max_n` accepted by `keep`.
fn exhaustive_section(
    name: &str,
    max_n: usize,
    keep: impl Fn(&crate::search::Cursor) -> bool + Sync + Send,
) -> Result<Section> {
    let mut section = Section::named(name);
    for n in 1..=max_n {
        let part = fold_labeled_graphs(
            n,
            || Section::named(name),
            |sec, cur| {
                if !keep(cur) {
                    return;
                }
                let g = cur.graph();
                let report = spread(&g).expect("non-empty graph");
                sec.record(&report.bounds, || describe(&g));
            },
            Section::merge,
        )?;
        section = section.merge(part);
    }
    Ok(section)
}

/// Spread bound panel over exhaustive, random, regular and joined instances.
pub fn bounds_suite(cfg: &BoundsConfig) -> Result<SuiteReport> {
    let exhaustive_limit = if cfg.long { BOUNDS_LONG_LIMIT } else { BOUNDS_DESK_LIMIT };
    if cfg.exhaustive_max_n > exhaustive_limit {
        return Err(capacity("exhaustive order for the bounds suite", cfg.exhaustive_max_n, exhaustive_limit));
    }
    if cfg.regular_max_n > BOUNDS_LONG_LIMIT {
        return Err(capacity("regular exhaustive order", cfg.regular_max_n, BOUNDS_LONG_LIMIT));
    }
    let mut rng = seeded(cfg.seed);
    let mut sections = vec![
        exhaustive_section("exhaustive_graphs", cfg.exhaustive_max_n, |_| true)?,
        exhaustive_section("exhaustive_regular_graphs", cfg.regular_max_n, |c| c.is_regular())?,
    ];

    let graphs: Vec<Graph> = (0..cfg.random_graphs)
        .map(|_| {
            let n = rng.gen_range(1..=cfg.random_max_n.max(1));
            let p = rng.gen_range(0.0..=1.0);
            random_graph(n, p, &mut rng)
        })
        .collect();
    sections.push(par_section("random_graphs", &graphs, |sec, g| {
        let report = spread(g)?;
        sec.record(&report.bounds, || describe(g));
        Ok(())
    })?);

    let pairs: Vec<(Graph, Graph)> = (0..cfg.join_pairs)
        .map(|_| {
            let n1 = rng.gen_range(1..=8);
            let n2 = rng.gen_range(1..=8);
            let g1 = random_regular_any(n1, &mut rng)?;
            Ok((g1, random_regular_any(n2, &mut rng)?))
        })
        .collect::<Result<_>>()?;
    sections.push(par_section("regular_pair_joins", &pairs, |sec, (g1, g2)| {
        let report = spread_join2(g1, g2)?;
        sec.record(&report.bounds, || format!("G1: {}; G2: {}", describe(g1), describe(g2)));
        Ok(())
    })?);

    let families = random_families(cfg.families, &mut rng)?;
    sections.push(par_section("regular_families", &families, |sec, fam| {
        let mut checks = theorem5_spread(fam)?.checks;
        let pm = pmatrix_upper_bound(fam)?;
        checks.push(BoundCheck::new("pmatrix_upper", pm.spread, crate::spread::Relation::AtMost, pm.value));
        if fam.host().edge_count() > 0 {
            let sw = sandwich_bound_check(fam)?;
            checks.push(sw.left);
            checks.push(sw.right);
            checks.push(BoundCheck::holds("sandwich_quotient_min_negative", sw.quotient_min_negative));
        }
        sec.record(&checks, || describe_family(fam));
        Ok(())
    })?);

    Ok(SuiteReport::from_sections("bounds", sections))
}

fn par_section<T: Sync>(
    name: &str,
    items: &[T],
    run: impl Fn(&mut Section, &T) -> Result<()> + Sync + Send,
) -> Result<Section> {
    items
        .par_iter()
        .map(|item| {
            let mut sec = Section::named(name);
            run(&mut sec, item)?;
            Ok(sec)
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().fold(Section::named(name), Section::merge))
}

/// Random `H`-joins of regular graphs: `H` on 1 to 4 vertices, component
/// orders 1 to 6.
pub fn random_families(count: usize, rng: &mut impl Rng) -> Result<Vec<RegularFamily>> {
    (0..count)
        .map(|_| {
            let p = rng.gen_range(1..=4);
            let host = random_graph(p, rng.gen_range(0.3..=1.0), rng);
            let parts = (0..p)
                .map(|_| {
                    let n = rng.gen_range(1..=6);
                    random_regular_any(n, rng)
                })
                .collect::<Result<Vec<_>>>()?;
            RegularFamily::from_graphs(host, parts)
        })
        .collect()
}

/// For every graph up to `max_n` and every `(k, tau)`-regular set with
/// `tau > 0`, the non-main classification matches the criterion.
pub fn lemma1_suite(max_n: usize, long: bool) -> Result<SuiteReport> {
    let limit = if long { LEMMA1_LONG_LIMIT } else { LEMMA1_DESK_LIMIT };
    if max_n > limit {
        return Err(capacity("exhaustive order for the non-main suite", max_n, limit));
    }
    let mut section = Section::named("exhaustive_graphs");
    let mut certificates = Section::named("certificates");
    for n in 1..=max_n {
        let (graphs, certs) = fold_labeled_graphs(
            n,
            || (Section::named("exhaustive_graphs"), Section::named("certificates")),
            |(graphs, certs), cur| {
                let g = cur.graph();
                let spec = Spectrum::of_graph(&g);
                let mut checks = Vec::new();
                for cert in enumerate_ktau(&g, n).expect("order within limit") {
                    if cert.tau == 0 {
                        continue;
                    }
                    let report = lemma1_nonmain_check(&g, &cert, &spec).expect("tau > 0");
                    let check = BoundCheck::holds("nonmain_iff_criterion", report.holds);
                    certs.record(std::slice::from_ref(&check), || {
                        format!("{}; S={:?} k={} tau={}", describe(&g), cert.set.to_vec(), cert.k, cert.tau)
                    });
                    checks.push(check);
                }
                let all = BoundCheck::holds("graph_consistent", checks.iter().all(|c| c.satisfied));
                graphs.record(&[all], || describe(&g));
            },
            |(a, b), (c, d)| (a.merge(c), b.merge(d)),
        )?;
        section = section.merge(graphs);
        certificates = certificates.merge(certs);
    }
    Ok(SuiteReport::from_sections("lemma1", vec![section, certificates]))
}

/// The exhaustive maximum-spread search for one order, as a suite.
pub fn conjecture_suite(n: usize, long: bool) -> Result<(SuiteReport, ConjectureReport)> {
    let report = conjecture_check(n, long)?;
    let mut section = Section::named("max_spread");
    let checks = [
        BoundCheck::new("max_spread_formula", report.max_spread, crate::spread::Relation::Equal, report.predicted),
        BoundCheck::holds("maximizer_spectra_match_gnk", report.spectra_match),
        BoundCheck::holds("bracket", report.bracket_holds),
    ];
    section.record(&checks, || format!("n={n} witness={:?}", report.witness_edges));
    Ok((SuiteReport::from_sections("conjecture", vec![section]), report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_suite_counts_cases() {
        let cfg = BoundsConfig {
            exhaustive_max_n: 4,
            regular_max_n: 5,
            random_graphs: 50,
            random_max_n: 10,
            join_pairs: 20,
            families: 0,
            seed: 1,
            long: false,
        };
        let r = bounds_suite(&cfg).unwrap();
        assert_eq!(r.section("exhaustive_graphs").unwrap().cases, 1 + 2 + 8 + 64);
        assert_eq!(r.section("random_graphs").unwrap().cases, 50);
        assert_eq!(r.section("regular_pair_joins").unwrap().cases, 20);
        assert!(r.pass, "{:?}", r.first_counterexample());
        // labeled regular graphs on 1..=5 vertices: 1, 2, 2, 8, 14
        assert_eq!(r.section("exhaustive_regular_graphs").unwrap().cases, 27);
    }

    #[test]
    fn suites_are_deterministic() {
        let cfg = BoundsConfig {
            exhaustive_max_n: 3,
            regular_max_n: 3,
            random_graphs: 30,
            families: 30,
            ..BoundsConfig::default()
        };
        let a = serde_json::to_string(&bounds_suite(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&bounds_suite(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn capacity_limits() {
        let cfg = BoundsConfig {
            exhaustive_max_n: 8,
            ..BoundsConfig::default()
        };
        assert!(matches!(bounds_suite(&cfg), Err(Error::Capacity { .. })));
        assert!(matches!(lemma1_suite(7, false), Err(Error::Capacity { .. })));
    }

    #[test]
    fn lemma1_small() {
        let r = lemma1_suite(4, false).unwrap();
        assert!(r.pass);
        assert_eq!(r.section("exhaustive_graphs").unwrap().cases, 1 + 2 + 8 + 64);
        assert!(r.section("certificates").unwrap().cases > 0);
    }

    #[test]
    fn conjecture_suite_small() {
        let (suite, report) = conjecture_suite(4, false).unwrap();
        assert!(suite.pass && report.pass);
    }
}
