//! Spread `s(G) = lambda_1 - lambda_n` of graphs, the classical bounds on it,
//! and closed forms for joins of regular graphs.

use serde::Serialize;

use crate::eig::{eigenvalues_sym, SymMatrix};
use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::join::{h_join, join2};
use crate::quotient::{build_quotient, RegularFamily};

/// Margin by which a strict inequality must hold.
pub const STRICT_MARGIN: f64 = 1e-9;
/// Strict inequalities that hold by less than this are flagged as marginal.
pub const MARGINAL_WARNING: f64 = 1e-6;
/// Relative tolerance for non-strict inequalities and equalities.
pub const BOUND_TOLERANCE: f64 = 1e-8;

fn tol(x: f64) -> f64 {
    BOUND_TOLERANCE * x.abs().max(1.0)
}

fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= tol(a.abs().max(b.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs <= rhs`
    AtMost,
    /// `lhs < rhs`
    Below,
    /// `lhs >= rhs`
    AtLeast,
    /// `lhs > rhs`
    Above,
    /// `lhs == rhs`
    Equal,
    /// A logical statement evaluated to `lhs != 0`; `rhs` unused.
    Holds,
}

/// One evaluated inequality or identity.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub satisfied: bool,
    /// Slack in the direction of the relation (`rhs - lhs` for upper bounds).
    pub gap: f64,
    /// A strict relation held by less than [`MARGINAL_WARNING`].
    pub marginal: bool,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64) -> Self {
        let (satisfied, gap) = match relation {
            Relation::AtMost => (lhs <= rhs + tol(rhs), rhs - lhs),
            Relation::Below => (lhs < rhs - STRICT_MARGIN, rhs - lhs),
            Relation::AtLeast => (lhs + tol(rhs) >= rhs, lhs - rhs),
            Relation::Above => (lhs > rhs + STRICT_MARGIN, lhs - rhs),
            Relation::Equal => (approx_eq(lhs, rhs), -(lhs - rhs).abs()),
            Relation::Holds => (lhs != 0.0, 0.0),
        };
        let strict = matches!(relation, Relation::Below | Relation::Above);
        BoundCheck {
            name: name.into(),
            lhs,
            relation,
            rhs,
            satisfied,
            gap,
            marginal: strict && satisfied && gap < MARGINAL_WARNING,
        }
    }

    pub fn holds(name: impl Into<String>, statement: bool) -> Self {
        BoundCheck::new(name, if statement { 1.0 } else { 0.0 }, Relation::Holds, 1.0)
    }
}

/// Which eigenvalue is smallest in the join of two regular graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Join2Case {
    /// `lambda_n(G) = beta_2`, the small root of the 2x2 quotient.
    QuotientRoot,
    /// `lambda_n(G) = lambda_min(G_1) = d_1 - s(G_1)`.
    FirstComponent,
    /// `lambda_n(G) = lambda_min(G_2) = d_2 - s(G_2)`.
    SecondComponent,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpreadReport {
    pub label: String,
    pub order: usize,
    pub edges: usize,
    pub spread: f64,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub regular_degree: Option<usize>,
    pub bounds: Vec<BoundCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub join_case: Option<Join2Case>,
}

impl SpreadReport {
    pub fn all_satisfied(&self) -> bool {
        self.bounds.iter().all(|b| b.satisfied)
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.bounds.iter().filter(|b| !b.satisfied)
    }

    pub fn bound(&self, name: &str) -> Option<&BoundCheck> {
        self.bounds.iter().find(|b| b.name == name)
    }
}

/// Extreme eigenvalues of `A(g)`; `(0, 0)` for the empty graph.
pub fn extreme_eigenvalues(g: &Graph) -> Result<(f64, f64)> {
    let values = eigenvalues_sym(&SymMatrix::adjacency(g))?;
    Ok(match (values.first(), values.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (0.0, 0.0),
    })
}

/// `s(g)` from a full eigensolve.
pub fn graph_spread(g: &Graph) -> Result<f64> {
    let (hi, lo) = extreme_eigenvalues(g)?;
    Ok(hi - lo)
}

/// Spread of `g` together with the standard upper-bound panel.
pub fn spread(g: &Graph) -> Result<SpreadReport> {
    spread_labeled(g, "graph")
}

pub fn spread_labeled(g: &Graph, label: &str) -> Result<SpreadReport> {
    let n = g.order();
    if n == 0 {
        return input("spread is undefined for the graph on zero vertices");
    }
    let values = eigenvalues_sym(&SymMatrix::adjacency(g))?;
    let (l1, ln) = (values[0], values[n - 1]);
    let s = l1 - ln;
    let e = g.edge_count() as f64;
    let nf = n as f64;
    let avg = g.average_degree();

    let mut bounds = vec![
        BoundCheck::new("mirsky_edges", s, Relation::AtMost, (4.0 * e).sqrt()),
        BoundCheck::new("mirsky_average_degree", s, Relation::AtMost, (2.0 * nf * avg).sqrt()),
        BoundCheck::holds("mirsky_equality_iff", {
            let equal = approx_eq(s, (4.0 * e).sqrt());
            equal == mirsky_equality_shape(&values)
        }),
        BoundCheck::holds("half_average_degree_implies_spread_at_most_order", {
            avg > nf / 2.0 || s <= nf + tol(nf)
        }),
    ];
    if n > 2 {
        bounds.push(BoundCheck::new(
            "mirsky_order",
            s,
            Relation::Below,
            (2.0 * nf * (nf - 1.0)).sqrt(),
        ));
    }
    let gregory = l1 + (2.0 * e - l1 * l1).max(0.0).sqrt();
    bounds.push(BoundCheck::new("gregory_first", s, Relation::AtMost, gregory));
    bounds.push(BoundCheck::new("gregory_second", gregory, Relation::AtMost, 2.0 * e.sqrt()));
    bounds.push(BoundCheck::holds("gregory_equality_iff", {
        approx_eq(s, 2.0 * e.sqrt()) == (g.edge_count() == 0 || is_complete_bipartite_plus_isolated(g))
    }));

    let regular_degree = g.regular_degree();
    if regular_degree.is_some() {
        bounds.push(BoundCheck::new("regular_spread_at_most_order", s, Relation::AtMost, nf));
        let complement_disconnected = !g.complement().is_connected();
        bounds.push(BoundCheck::holds(
            "regular_equality_iff_complement_disconnected",
            approx_eq(s, nf) == complement_disconnected,
        ));
    }

    Ok(SpreadReport {
        label: label.to_string(),
        order: n,
        edges: g.edge_count(),
        spread: s,
        lambda_max: l1,
        lambda_min: ln,
        regular_degree,
        bounds,
        join_case: None,
    })
}

/// `n - 2` eigenvalues equal the average of the remaining two (largest and smallest).
fn mirsky_equality_shape(values: &[f64]) -> bool {
    let n = values.len();
    if n <= 2 {
        return true;
    }
    let mid = (values[0] + values[n - 1]) / 2.0;
    values[1..n - 1].iter().all(|&v| approx_eq(v, mid))
}

/// The non-isolated vertices induce a complete bipartite graph `K_{p,q}`.
fn is_complete_bipartite_plus_isolated(g: &Graph) -> bool {
    let Some(start) = (0..g.order()).find(|&v| g.degree(v) > 0) else {
        return false;
    };
    let comp = g.component_of(start);
    if comp.len() != (0..g.order()).filter(|&v| g.degree(v) > 0).count() {
        return false;
    }
    let mut side = vec![None; g.order()];
    side[start] = Some(false);
    for &u in &comp {
        let su = side[u].expect("BFS order colors parents first");
        for w in g.neighbors(u) {
            match side[w] {
                None => side[w] = Some(!su),
                Some(sw) if sw == su => return false,
                Some(_) => {}
            }
        }
    }
    let a = comp.iter().filter(|&&v| side[v] == Some(false)).count();
    a * (comp.len() - a) == g.edge_count()
}

/// `R = sqrt((d1 - d2)^2 + 4 n1 n2)`.
pub fn join2_discriminant(n1: usize, d1: usize, n2: usize, d2: usize) -> f64 {
    let dd = d1 as f64 - d2 as f64;
    (dd * dd + 4.0 * (n1 * n2) as f64).sqrt()
}

/// Spread of `G1 v G2` for regular `G1`, `G2` by
/// `max{R, (d2 - d1 + R)/2 + s(G1), (d1 - d2 + R)/2 + s(G2)}`,
/// cross-checked against the eigensolved join.
pub fn spread_join2(g1: &Graph, g2: &Graph) -> Result<SpreadReport> {
    let d1 = g1
        .regular_degree()
        .ok_or_else(|| Error::Input("first join operand is not regular".into()))?;
    let d2 = g2
        .regular_degree()
        .ok_or_else(|| Error::Input("second join operand is not regular".into()))?;
    let (n1, n2) = (g1.order(), g2.order());
    if n1 == 0 || n2 == 0 {
        return input("join operands must be non-empty");
    }
    let (hi1, lo1) = extreme_eigenvalues(g1)?;
    let (hi2, lo2) = extreme_eigenvalues(g2)?;
    let (s1, s2) = (hi1 - lo1, hi2 - lo2);
    let r = join2_discriminant(n1, d1, n2, d2);
    let (d1f, d2f) = (d1 as f64, d2 as f64);
    let formula = r
        .max((d2f - d1f + r) / 2.0 + s1)
        .max((d1f - d2f + r) / 2.0 + s2);

    let joined = join2(g1, g2);
    let mut report = spread_labeled(&joined, "join2")?;
    let beta2 = (d1f + d2f - r) / 2.0;
    let candidates = [
        (Join2Case::QuotientRoot, Some(beta2)),
        (Join2Case::FirstComponent, (n1 >= 2).then_some(d1f - s1)),
        (Join2Case::SecondComponent, (n2 >= 2).then_some(d2f - s2)),
    ];
    report.join_case = candidates
        .iter()
        .find(|(_, v)| v.is_some_and(|v| (v - report.lambda_min).abs() <= 1e-7))
        .map(|(c, _)| *c);
    report.bounds.push(BoundCheck::new(
        "join2_formula",
        report.spread,
        Relation::Equal,
        formula,
    ));
    let case_value = match report.join_case {
        Some(Join2Case::QuotientRoot) => r,
        Some(Join2Case::FirstComponent) => (d2f - d1f + r) / 2.0 + s1,
        Some(Join2Case::SecondComponent) => (d1f - d2f + r) / 2.0 + s2,
        None => f64::NAN,
    };
    report.bounds.push(BoundCheck::new(
        "join2_case_value",
        report.spread,
        Relation::Equal,
        case_value,
    ));
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct Corollary3Outcome {
    /// `|d1 - d2| > |n1 - n2|`.
    pub hypothesis: bool,
    pub discriminant: f64,
    pub order: usize,
    /// `R > n1 + n2`.
    pub discriminant_exceeds_order: bool,
    /// `s(G1 v G2)` on circulant witnesses.
    pub spread: f64,
    pub spread_exceeds_order: bool,
    /// The claim holds, or the hypothesis is not triggered.
    pub pass: bool,
}

/// When `|d1 - d2| > |n1 - n2|`, the join of any `d_i`-regular graphs of order
/// `n_i` has spread above `n1 + n2`. Checked with circulant witnesses.
pub fn corollary3_check(n1: usize, d1: usize, n2: usize, d2: usize) -> Result<Corollary3Outcome> {
    let g1 = Graph::regular_circulant(n1, d1)?;
    let g2 = Graph::regular_circulant(n2, d2)?;
    let hypothesis = d1.abs_diff(d2) > n1.abs_diff(n2);
    let discriminant = join2_discriminant(n1, d1, n2, d2);
    let order = n1 + n2;
    let spread = graph_spread(&join2(&g1, &g2))?;
    let discriminant_exceeds_order = discriminant > order as f64 + STRICT_MARGIN;
    let spread_exceeds_order = spread > order as f64 + STRICT_MARGIN;
    Ok(Corollary3Outcome {
        hypothesis,
        discriminant,
        order,
        discriminant_exceeds_order,
        spread,
        spread_exceeds_order,
        pass: !hypothesis || (discriminant_exceeds_order && spread_exceeds_order),
    })
}

/// `G(n, k) = K_k v complement(K_{n-k})`.
pub fn gnk_graph(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || k >= n {
        return input(format!("G(n,k) needs 1 <= k <= n-1, got n={n} k={k}"));
    }
    Ok(join2(&Graph::complete(k), &Graph::null(n - k)))
}

/// `s(G(n,k)) = sqrt((k-1)^2 + 4k(n-k))`.
pub fn gnk_spread_closed_form(n: usize, k: usize) -> f64 {
    let km1 = k as f64 - 1.0;
    (km1 * km1 + 4.0 * (k * (n - k)) as f64).sqrt()
}

/// The `k` in `1..n` maximizing the closed-form spread of `G(n, k)`.
pub fn gnk_argmax(n: usize) -> Option<usize> {
    (1..n).max_by(|&a, &b| gnk_spread_closed_form(n, a).total_cmp(&gnk_spread_closed_form(n, b)))
}

/// Builds `G(n, k)` and checks its spread against the closed form.
pub fn gnk_family(n: usize, k: usize) -> Result<(Graph, SpreadReport)> {
    let g = gnk_graph(n, k)?;
    let mut report = spread_labeled(&g, &format!("G({n},{k})"))?;
    report.bounds.push(BoundCheck::new(
        "gnk_closed_form",
        report.spread,
        Relation::Equal,
        gnk_spread_closed_form(n, k),
    ));
    if let Some(best) = gnk_argmax(n) {
        report
            .bounds
            .push(BoundCheck::holds("gnk_argmax_is_floor_two_thirds_n", best == 2 * n / 3));
    }
    if 3 * k > n + 1 && k + 1 < n {
        report.bounds.push(BoundCheck::new(
            "gnk_spread_exceeds_order",
            report.spread,
            Relation::Above,
            n as f64,
        ));
    }
    Ok((g, report))
}

/// `s(M)` and `lambda_p(M)` of the quotient, plus per-component spreads.
struct JoinSpreadParts {
    quotient_spread: f64,
    quotient_min: f64,
    quotient_max: f64,
    component_spreads: Vec<f64>,
    joined_spread: f64,
}

fn join_spread_parts(fam: &RegularFamily) -> Result<JoinSpreadParts> {
    let components = fam.require_components()?;
    let q = build_quotient(fam)?;
    let component_spreads = components
        .iter()
        .map(graph_spread)
        .collect::<Result<Vec<_>>>()?;
    Ok(JoinSpreadParts {
        quotient_spread: q.spread(),
        quotient_min: q.smallest(),
        quotient_max: q.largest(),
        component_spreads,
        joined_spread: graph_spread(&fam.join()?)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem5Report {
    /// `s(M) + max_i {lambda_p(M) + s(G_i) - d_i, 0}`.
    pub formula_spread: f64,
    pub eigen_spread: f64,
    pub quotient_spread: f64,
    pub quotient_min: f64,
    /// `lambda_p(M) + s(G_i) - d_i` per component.
    pub component_terms: Vec<f64>,
    /// `n_min (s(H) - (r_max - r_min)) - (n_max - n_min)(lambda_p(H) + r_max)`,
    /// with `r = d_i / n_i`.
    pub host_spread_bound: f64,
    /// `n_min (s(H) - (r_max - r_min))`, stated for hosts with an edge.
    pub ratio_gap_bound: Option<f64>,
    /// `n_min (s(H) - 1)`, stated for hosts with an edge.
    pub unit_gap_bound: Option<f64>,
    pub checks: Vec<BoundCheck>,
}

impl Theorem5Report {
    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Spread of an `H`-join of regular graphs from its quotient and the
/// component spreads, with the lower bounds in terms of `H`.
pub fn theorem5_spread(fam: &RegularFamily) -> Result<Theorem5Report> {
    let parts = join_spread_parts(fam)?;
    let component_terms: Vec<f64> = parts
        .component_spreads
        .iter()
        .zip(fam.degrees())
        .map(|(s, &d)| parts.quotient_min + s - d as f64)
        .collect();
    let excess = component_terms.iter().copied().fold(0.0, f64::max);
    let formula_spread = parts.quotient_spread + excess;

    let (h_max, h_min) = extreme_eigenvalues(fam.host())?;
    let host_spread = h_max - h_min;
    let (r_max, r_min) = (fam.max_degree_ratio(), fam.min_degree_ratio());
    let (n_max, n_min) = (fam.max_order() as f64, fam.min_order() as f64);
    let host_spread_bound =
        n_min * (host_spread - (r_max - r_min)) - (n_max - n_min) * (h_min + r_max);
    let host_has_edge = fam.host().edge_count() > 0;
    let ratio_gap_bound = host_has_edge.then_some(n_min * (host_spread - (r_max - r_min)));
    let unit_gap_bound = host_has_edge.then_some(n_min * (host_spread - 1.0));

    let s = parts.joined_spread;
    let mut checks = vec![
        BoundCheck::new("join_spread_formula", s, Relation::Equal, formula_spread),
        BoundCheck::new(
            "largest_eigenvalue_from_quotient",
            parts.quotient_max,
            Relation::AtLeast,
            fam.max_degree() as f64,
        ),
        BoundCheck::new("host_spread_lower", s, Relation::AtLeast, host_spread_bound),
    ];
    if let (Some(c), Some(w)) = (ratio_gap_bound, unit_gap_bound) {
        checks.push(BoundCheck::new("host_spread_chain", host_spread_bound, Relation::AtLeast, c));
        checks.push(BoundCheck::new("ratio_gap_chain", c, Relation::AtLeast, w));
        checks.push(BoundCheck::new("ratio_gap_lower", s, Relation::AtLeast, c));
        checks.push(BoundCheck::new("unit_gap_lower", s, Relation::AtLeast, w));
    }
    Ok(Theorem5Report {
        formula_spread,
        eigen_spread: s,
        quotient_spread: parts.quotient_spread,
        quotient_min: parts.quotient_min,
        component_terms,
        host_spread_bound,
        ratio_gap_bound,
        unit_gap_bound,
        checks,
    })
}

/// Zero-diagonal matrix with entries `sqrt(n_i n_j)` off the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct PMatrix(SymMatrix);

impl PMatrix {
    pub fn new(orders: &[usize]) -> Self {
        PMatrix(SymMatrix::from_fn(orders.len(), |i, j| {
            if i == j {
                0.0
            } else {
                ((orders[i] * orders[j]) as f64).sqrt()
            }
        }))
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.0
    }

    pub fn largest_eigenvalue(&self) -> Result<f64> {
        Ok(eigenvalues_sym(&self.0)?.first().copied().unwrap_or(0.0))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PMatrixBound {
    /// `max d_i + lambda_1(H) lambda_1(P) - min{d_i* - s(G_i*), lambda_p(M)}`.
    pub value: f64,
    pub spread: f64,
    pub lambda1_host: f64,
    pub lambda1_p: f64,
    /// Index minimizing `d_i - s(G_i)`.
    pub i_star: usize,
    pub satisfied: bool,
}

pub fn pmatrix_upper_bound(fam: &RegularFamily) -> Result<PMatrixBound> {
    let parts = join_spread_parts(fam)?;
    let (i_star, min_term) = fam
        .degrees()
        .iter()
        .zip(&parts.component_spreads)
        .map(|(&d, s)| d as f64 - s)
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::Input("empty family".into()))?;
    let (lambda1_host, _) = extreme_eigenvalues(fam.host())?;
    let lambda1_p = PMatrix::new(fam.orders()).largest_eigenvalue()?;
    let value = fam.max_degree() as f64 + lambda1_host * lambda1_p
        - min_term.min(parts.quotient_min);
    let check = BoundCheck::new("pmatrix_upper", parts.joined_spread, Relation::AtMost, value);
    Ok(PMatrixBound {
        value,
        spread: parts.joined_spread,
        lambda1_host,
        lambda1_p,
        i_star,
        satisfied: check.satisfied,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub quotient_spread: f64,
    pub spread: f64,
    pub max_degree: usize,
    /// `s(M) <= s(G)`.
    pub left: BoundCheck,
    /// `s(G) < s(M) + max d_i` when some `d_i > 0`; `<=` otherwise.
    pub right: BoundCheck,
    pub strict_applicable: bool,
    pub quotient_min: f64,
    /// Second eigenvalue of the 2x2 principal block on the first host edge.
    pub edge_block_lambda2: f64,
    pub quotient_min_negative: bool,
    pub pass: bool,
}

/// `s(M) <= s(G) < s(M) + max d_i` for hosts with at least one edge.
///
/// With every component edgeless (`max d_i = 0`) both sides coincide, so the
/// right inequality is only checked as `<=` there.
pub fn sandwich_bound_check(fam: &RegularFamily) -> Result<SandwichReport> {
    let Some(&(i, j)) = fam.host().edges().first() else {
        return Err(Error::Precondition("the host graph has no edges".into()));
    };
    let parts = join_spread_parts(fam)?;
    let max_degree = fam.max_degree();
    let strict_applicable = max_degree > 0;
    let upper = parts.quotient_spread + max_degree as f64;
    let left = BoundCheck::new("sandwich_left", parts.quotient_spread, Relation::AtMost, parts.joined_spread);
    let right = BoundCheck::new(
        "sandwich_right",
        parts.joined_spread,
        if strict_applicable { Relation::Below } else { Relation::AtMost },
        upper,
    );
    let (di, dj) = (fam.degrees()[i] as f64, fam.degrees()[j] as f64);
    let off = ((fam.orders()[i] * fam.orders()[j]) as f64).sqrt();
    let edge_block_lambda2 = (di + dj - ((di - dj).powi(2) + 4.0 * off * off).sqrt()) / 2.0;
    let quotient_min_negative = parts.quotient_min < -STRICT_MARGIN
        && parts.quotient_min <= edge_block_lambda2 + tol(edge_block_lambda2)
        && edge_block_lambda2 < 0.0;
    Ok(SandwichReport {
        quotient_spread: parts.quotient_spread,
        spread: parts.joined_spread,
        max_degree,
        pass: left.satisfied && right.satisfied && quotient_min_negative,
        left,
        right,
        strict_applicable,
        quotient_min: parts.quotient_min,
        edge_block_lambda2,
        quotient_min_negative,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem6Report {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub nonregular: bool,
    /// Eigenvalues of `M`, descending.
    pub quotient_eigenvalues: Vec<f64>,
    /// `2 sqrt(q (n - q))`.
    pub closed_form_spread: f64,
    pub spread: SpreadReport,
    pub checks: Vec<BoundCheck>,
}

impl Theorem6Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }
}

/// `P_3`-join of `C_p`, `C_q`, `C_{n-p-q}` for any `p, q >= 3`, `n >= p + q + 3`.
pub fn cycle_path_join(n: usize, p: usize, q: usize) -> Result<(Graph, Theorem6Report)> {
    if p < 3 || q < 3 || n < p + q + 3 {
        return input(format!(
            "need p, q >= 3 and n >= p + q + 3, got n={n} p={p} q={q}"
        ));
    }
    let family = [Graph::cycle(p)?, Graph::cycle(q)?, Graph::cycle(n - p - q)?];
    let g = h_join(&Graph::path(3), &family)?;
    let fam = RegularFamily::from_graphs(Graph::path(3), family.to_vec())?;
    let quotient = build_quotient(&fam)?;
    let spread = spread_labeled(&g, &format!("P3-join(C{p},C{q},C{})", n - p - q))?;
    let root = ((q * (n - q)) as f64).sqrt();
    let closed_form_spread = 2.0 * root;
    let nonregular = !g.is_regular();
    let expected_quotient = [2.0 + root, 2.0, 2.0 - root];
    let mut checks = vec![
        BoundCheck::holds("nonregular", nonregular),
        BoundCheck::new("closed_form_spread", spread.spread, Relation::Equal, closed_form_spread),
        BoundCheck::new("spread_at_most_order", spread.spread, Relation::AtMost, n as f64),
        BoundCheck::new("lambda_min_is_quotient_root", spread.lambda_min, Relation::Equal, 2.0 - root),
        BoundCheck::new("lambda_min_below_minus_two", spread.lambda_min, Relation::Below, -2.0),
    ];
    for (k, (&got, want)) in quotient.eigenvalues.iter().zip(expected_quotient).enumerate() {
        checks.push(BoundCheck::new(format!("quotient_eigenvalue_{k}"), got, Relation::Equal, want));
    }
    if 2 * q == n {
        checks.push(BoundCheck::new("spread_equals_order", spread.spread, Relation::Equal, n as f64));
    } else {
        checks.push(BoundCheck::new("spread_below_order", spread.spread, Relation::Below, n as f64));
    }
    Ok((
        g,
        Theorem6Report {
            n,
            p,
            q,
            nonregular,
            quotient_eigenvalues: quotient.eigenvalues,
            closed_form_spread,
            spread,
            checks,
        },
    ))
}

/// The non-regular family with spread exactly `n`: `q = n/2`, `n` even,
/// `n >= 12`, `3 <= p <= (n - 6)/2`.
pub fn theorem6_family(n: usize, p: usize) -> Result<(Graph, Theorem6Report)> {
    if n % 2 == 1 || n < 12 {
        return input(format!("n must be even and at least 12, got {n}"));
    }
    if p < 3 || p > (n - 6) / 2 {
        return input(format!("p must lie in 3..={}, got {p}", (n - 6) / 2));
    }
    cycle_path_join(n, p, n / 2)
}
