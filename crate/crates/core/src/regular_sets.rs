//! `(k, tau)`-regular vertex sets.
//!
//! A set `S` is `(k, tau)`-regular when it induces a `k`-regular subgraph and
//! every vertex outside `S` has exactly `tau` neighbors in `S`. For a
//! `k`-regular graph the whole vertex set counts as `(k, 0)`-regular.

use rayon::prelude::*;
use serde::Serialize;

use crate::eig::{Spectrum, MAIN_TOLERANCE, MATCH_TOLERANCE};
use crate::error::{input, Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default cap on the order of graphs whose subsets are enumerated.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;
/// Largest order accepted by the line-graph Hamiltonicity search.
pub const HAMILTONIAN_LIMIT: usize = 12;

/// A vertex set with its validated `(k, tau)` parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTauCertificate {
    pub set: VertexSet,
    pub k: usize,
    pub tau: usize,
    /// The certified set is the complement of the set originally asked about.
    pub complement_mode: bool,
}

impl KTauCertificate {
    /// `k - tau`, the eigenvalue singled out by the non-main criterion.
    pub fn k_minus_tau(&self) -> f64 {
        self.k as f64 - self.tau as f64
    }
}

/// Certifies `s` as `(k, tau)`-regular in `g`, or returns `None`.
///
/// The empty set is rejected as degenerate. `S = V(g)` is certified `(k, 0)`
/// exactly when `g` is `k`-regular.
pub fn check_ktau(g: &Graph, s: &VertexSet) -> Result<Option<KTauCertificate>> {
    if s.universe() != g.order() {
        return input(format!(
            "vertex set lives on {} vertices but the graph has {}",
            s.universe(),
            g.order()
        ));
    }
    if s.is_empty() {
        return input("the empty set is not a valid (k,tau) candidate");
    }
    if s.is_full() {
        return Ok(g.regular_degree().map(|k| KTauCertificate {
            set: s.clone(),
            k,
            tau: 0,
            complement_mode: false,
        }));
    }
    let mut k = None;
    let mut tau = None;
    for v in 0..g.order() {
        let d = g.degree_into(v, s);
        let slot = if s.contains(v) { &mut k } else { &mut tau };
        match *slot {
            None => *slot = Some(d),
            Some(x) if x != d => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(Some(KTauCertificate {
        set: s.clone(),
        k: k.expect("non-empty set"),
        tau: tau.expect("proper set"),
        complement_mode: false,
    }))
}

/// Certifies `s` if possible, otherwise its complement (flagged `complement_mode`).
pub fn certify_either(g: &Graph, s: &VertexSet) -> Result<Option<KTauCertificate>> {
    if let Some(c) = check_ktau(g, s)? {
        return Ok(Some(c));
    }
    let rest = s.complement();
    if rest.is_empty() {
        return Ok(None);
    }
    Ok(check_ktau(g, &rest)?.map(|mut c| {
        c.complement_mode = true;
        c
    }))
}

/// Every proper non-empty `(k, tau)`-regular subset, ordered by subset as a
/// binary number, followed by the full set when `g` is regular.
pub fn enumerate_ktau(g: &Graph, max_n: usize) -> Result<Vec<KTauCertificate>> {
    let n = g.order();
    if n > max_n {
        return Err(Error::Capacity {
            what: "graph order for subset enumeration",
            value: n,
            limit: max_n,
        });
    }
    if n > 63 {
        return Err(Error::Capacity {
            what: "graph order for subset enumeration",
            value: n,
            limit: 63,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row(v)[0]).collect();
    let full = (1u64 << n) - 1;
    let found: Vec<(u64, usize, usize)> = (1..full)
        .into_par_iter()
        .filter_map(|mask| ktau_of_mask(&rows, mask))
        .collect();
    let mut out: Vec<KTauCertificate> = found
        .into_iter()
        .map(|(mask, k, tau)| KTauCertificate {
            set: VertexSet::from_mask(n, mask),
            k,
            tau,
            complement_mode: false,
        })
        .collect();
    if let Some(k) = g.regular_degree() {
        out.push(KTauCertificate {
            set: VertexSet::full(n),
            k,
            tau: 0,
            complement_mode: false,
        });
    }
    Ok(out)
}

fn ktau_of_mask(rows: &[u64], mask: u64) -> Option<(u64, usize, usize)> {
    let mut k = None;
    let mut tau = None;
    for (v, row) in rows.iter().enumerate() {
        let d = (row & mask).count_ones() as usize;
        let slot = if mask >> v & 1 == 1 { &mut k } else { &mut tau };
        match *slot {
            None => *slot = Some(d),
            Some(x) if x != d => return None,
            Some(_) => {}
        }
    }
    Some((mask, k?, tau?))
}

/// One eigenvalue's row in a non-main criterion check.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Row {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub nonmain: bool,
    pub equals_k_minus_tau: bool,
    /// Norm of the projection of `x_S` onto the eigenspace.
    pub set_projection: f64,
    pub set_orthogonal: bool,
    /// `nonmain == (equals_k_minus_tau || set_orthogonal)`.
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Report {
    pub k: usize,
    pub tau: usize,
    pub rows: Vec<Lemma1Row>,
    pub holds: bool,
}

/// Checks, for every eigenvalue `l` of `g`, that `l` is non-main exactly when
/// `l = k - tau` or `x_S` is orthogonal to the eigenspace of `l`.
pub fn lemma1_nonmain_check(
    g: &Graph,
    cert: &KTauCertificate,
    spec: &Spectrum,
) -> Result<Lemma1Report> {
    if cert.tau == 0 {
        return Err(Error::Precondition(
            "the non-main criterion needs tau > 0".into(),
        ));
    }
    if spec.order != g.order() || cert.set.universe() != g.order() {
        return input("spectrum, certificate and graph disagree on the vertex count");
    }
    let x = cert.set.characteristic_vector();
    let threshold = MAIN_TOLERANCE * (g.order() as f64).sqrt();
    let target = cert.k_minus_tau();
    let rows: Vec<Lemma1Row> = spec
        .groups
        .iter()
        .map(|grp| {
            let set_projection = Spectrum::projection_norm(grp, &x);
            let set_orthogonal = set_projection <= threshold;
            let equals_k_minus_tau = (grp.value - target).abs() <= MATCH_TOLERANCE;
            let nonmain = !grp.main;
            Lemma1Row {
                eigenvalue: grp.value,
                multiplicity: grp.multiplicity,
                nonmain,
                equals_k_minus_tau,
                set_projection,
                set_orthogonal,
                holds: nonmain == (equals_k_minus_tau || set_orthogonal),
            }
        })
        .collect();
    Ok(Lemma1Report {
        k: cert.k,
        tau: cert.tau,
        holds: rows.iter().all(|r| r.holds),
        rows,
    })
}

/// Outcome of a line-graph characterization search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineGraphWitness {
    pub verdict: bool,
    /// Line-graph vertices of the certifying set.
    pub line_vertices: Vec<usize>,
    /// The corresponding edges of the original graph.
    pub edges: Vec<(usize, usize)>,
}

impl LineGraphWitness {
    fn none() -> Self {
        LineGraphWitness {
            verdict: false,
            line_vertices: Vec::new(),
            edges: Vec::new(),
        }
    }
}

/// Perfect matching test through a `(0, 2)`-regular set of the line graph.
///
/// The `(0,2)` condition alone is blind to isolated vertices, which no edge
/// can cover, so the set must also have exactly `n/2` members.
pub fn perfect_matching_via_line_graph(g: &Graph) -> LineGraphWitness {
    let n = g.order();
    if n == 0 {
        return LineGraphWitness {
            verdict: true,
            line_vertices: Vec::new(),
            edges: Vec::new(),
        };
    }
    if n % 2 == 1 {
        return LineGraphWitness::none();
    }
    let (lg, edges) = g.line_graph_with_edges();
    match find_regular_set(&lg, 0, 2, n / 2, false) {
        Some(set) => LineGraphWitness {
            verdict: true,
            edges: set.iter().map(|&i| edges[i]).collect(),
            line_vertices: set,
        },
        None => LineGraphWitness::none(),
    }
}

/// Hamiltonicity test through a connected `(2, 4)`-regular set of the line graph.
///
/// As with matchings, the set must have `n` members so that isolated
/// vertices cannot be skipped by the cycle.
pub fn hamiltonian_via_line_graph(g: &Graph) -> Result<LineGraphWitness> {
    let n = g.order();
    if n > HAMILTONIAN_LIMIT {
        return Err(Error::Capacity {
            what: "graph order for Hamiltonicity search",
            value: n,
            limit: HAMILTONIAN_LIMIT,
        });
    }
    if n < 3 {
        return Ok(LineGraphWitness::none());
    }
    let (lg, edges) = g.line_graph_with_edges();
    Ok(match find_regular_set(&lg, 2, 4, n, true) {
        Some(set) => LineGraphWitness {
            verdict: true,
            edges: set.iter().map(|&i| edges[i]).collect(),
            line_vertices: set,
        },
        None => LineGraphWitness::none(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Open,
    In,
    Out,
}

struct RegularSetSearch<'a> {
    g: &'a Graph,
    k: usize,
    tau: usize,
    size: usize,
    connected: bool,
    state: Vec<Slot>,
    inside: Vec<usize>,
    open_neighbors: Vec<usize>,
    chosen: usize,
}

/// Lexicographically least `(k, tau)`-regular set of exactly `size` vertices
/// (optionally inducing a connected subgraph). Vertices are decided in index
/// order, trying inclusion first. Outside vertices only constrain when the
/// set is proper.
fn find_regular_set(
    g: &Graph,
    k: usize,
    tau: usize,
    size: usize,
    connected: bool,
) -> Option<Vec<usize>> {
    let n = g.order();
    if size == 0 || size > n {
        return None;
    }
    let mut search = RegularSetSearch {
        g,
        k,
        tau,
        size,
        connected,
        state: vec![Slot::Open; n],
        inside: vec![0; n],
        open_neighbors: g.degrees().to_vec(),
        chosen: 0,
    };
    if search.descend(0) {
        Some((0..n).filter(|&v| search.state[v] == Slot::In).collect())
    } else {
        None
    }
}

impl RegularSetSearch<'_> {
    fn descend(&mut self, v: usize) -> bool {
        let n = self.g.order();
        if v == n {
            return self.chosen == self.size && (!self.connected || self.is_connected_choice());
        }
        for slot in [Slot::In, Slot::Out] {
            self.assign(v, slot);
            if self.feasible(v) && self.descend(v + 1) {
                return true;
            }
            self.unassign(v, slot);
        }
        false
    }

    fn assign(&mut self, v: usize, slot: Slot) {
        self.state[v] = slot;
        if slot == Slot::In {
            self.chosen += 1;
        }
        for w in self.g.neighbors(v) {
            self.open_neighbors[w] -= 1;
            if slot == Slot::In {
                self.inside[w] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, slot: Slot) {
        self.state[v] = Slot::Open;
        if slot == Slot::In {
            self.chosen -= 1;
        }
        for w in self.g.neighbors(v) {
            self.open_neighbors[w] += 1;
            if slot == Slot::In {
                self.inside[w] -= 1;
            }
        }
    }

    fn vertex_ok(&self, w: usize) -> bool {
        let (have, open) = (self.inside[w], self.open_neighbors[w]);
        match self.state[w] {
            Slot::In => have <= self.k && have + open >= self.k,
            Slot::Out => have <= self.tau && have + open >= self.tau,
            Slot::Open => have <= self.k.max(self.tau),
        }
    }

    fn feasible(&self, v: usize) -> bool {
        let remaining = self.g.order() - v - 1;
        if self.chosen > self.size || self.chosen + remaining < self.size {
            return false;
        }
        if !self.vertex_ok(v) || !self.g.neighbors(v).all(|w| self.vertex_ok(w)) {
            return false;
        }
        // a finished component smaller than the target can never be extended
        if self.connected && self.state[v] == Slot::In {
            let comp = self.component_of_chosen(v);
            let closed = comp
                .iter()
                .all(|&u| self.inside[u] == self.k && self.open_neighbors[u] == 0);
            if closed && comp.len() < self.size {
                return false;
            }
        }
        true
    }

    fn component_of_chosen(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.g.order()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for w in self.g.neighbors(u) {
                if self.state[w] == Slot::In && !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        comp
    }

    fn is_connected_choice(&self) -> bool {
        match self.state.iter().position(|&s| s == Slot::In) {
            Some(first) => self.component_of_chosen(first).len() == self.chosen,
            None => true,
        }
    }
}

/// Parameters `(n, p, a, b)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgParameters {
    pub n: usize,
    pub p: usize,
    pub a: usize,
    pub b: usize,
}

/// Recognizes strongly regular graphs by requiring `N(v)` to be `(a, b)`-regular
/// in `G - v` with the same `(a, b)` for every vertex `v`.
///
/// Returns `None` when `g` is not strongly regular, and also when `g` falls
/// outside the test's domain (irregular, disconnected, complete or edgeless).
pub fn strongly_regular_check(g: &Graph) -> Option<SrgParameters> {
    let p = g.regular_degree()?;
    let n = g.order();
    if p == 0 || p + 1 == n || !g.is_connected() {
        return None;
    }
    let mut common: Option<(usize, usize)> = None;
    for v in 0..n {
        let rest = g.delete_vertex(v).ok()?;
        let shifted: Vec<usize> = g.neighbors(v).map(|w| if w > v { w - 1 } else { w }).collect();
        let set = VertexSet::from_indices(n - 1, &shifted).ok()?;
        let cert = check_ktau(&rest, &set).ok()??;
        if cert.set.is_full() {
            return None;
        }
        match common {
            None => common = Some((cert.k, cert.tau)),
            Some(ab) if ab != (cert.k, cert.tau) => return None,
            Some(_) => {}
        }
    }
    let (a, b) = common?;
    Some(SrgParameters { n, p, a, b })
}
