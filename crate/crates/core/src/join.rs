//! Joins of graphs: the plain join, the `H`-join and the `H`-generalized join
//! constrained by vertex subsets.
//!
//! Components are numbered contiguously in part order, so the adjacency
//! matrix of a join has `A(G_i)` on the diagonal blocks and
//! `delta_ij(H) * x_{S_i} x_{S_j}^T` off the diagonal.

use serde::Serialize;

use crate::eig::{eigenvalues_sym, unmatched_in, Spectrum, SymMatrix, MATCH_TOLERANCE};
use crate::error::{input, Result};
use crate::graph::{Graph, VertexSet};
use crate::regular_sets::certify_either;

/// One component of a join together with its constraint subset.
#[derive(Debug, Clone, PartialEq)]
pub struct JoinPart {
    pub graph: Graph,
    pub subset: VertexSet,
}

impl JoinPart {
    pub fn new(graph: Graph, subset: VertexSet) -> Result<Self> {
        if subset.universe() != graph.order() {
            return input(format!(
                "subset is over {} vertices but the component has {}",
                subset.universe(),
                graph.order()
            ));
        }
        Ok(JoinPart { graph, subset })
    }

    /// Part whose constraint subset is the whole vertex set.
    pub fn unconstrained(graph: Graph) -> Self {
        let subset = VertexSet::full(graph.order());
        JoinPart { graph, subset }
    }
}

/// Host graph `H` of order `p` and one constrained component per host vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct JoinSpec {
    host: Graph,
    parts: Vec<JoinPart>,
}

impl JoinSpec {
    pub fn new(host: Graph, parts: Vec<JoinPart>) -> Result<Self> {
        if parts.len() != host.order() {
            return input(format!(
                "host graph has {} vertices but {} parts were given",
                host.order(),
                parts.len()
            ));
        }
        Ok(JoinSpec { host, parts })
    }

    /// The `H`-join: every subset is the full vertex set.
    pub fn unconstrained(host: Graph, family: Vec<Graph>) -> Result<Self> {
        JoinSpec::new(host, family.into_iter().map(JoinPart::unconstrained).collect())
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn parts(&self) -> &[JoinPart] {
        &self.parts
    }

    pub fn order(&self) -> usize {
        self.parts.iter().map(|p| p.graph.order()).sum()
    }

    /// First vertex index of each part in the joined graph.
    pub fn offsets(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, p| {
                let start = *acc;
                *acc += p.graph.order();
                Some(start)
            })
            .collect()
    }

    pub fn is_unconstrained(&self) -> bool {
        self.parts.iter().all(|p| p.subset.is_full())
    }
}

/// The `H`-generalized join: component edges plus `xy` for every `x` in `S_i`,
/// `y` in `S_j` with `ij` an edge of `H`.
pub fn generalized_join(spec: &JoinSpec) -> Graph {
    let offsets = spec.offsets();
    let mut edges = Vec::new();
    for (part, &off) in spec.parts.iter().zip(&offsets) {
        edges.extend(part.graph.edges().into_iter().map(|(u, v)| (u + off, v + off)));
    }
    for (i, j) in spec.host.edges() {
        for x in spec.parts[i].subset.iter() {
            for y in spec.parts[j].subset.iter() {
                edges.push((x + offsets[i], y + offsets[j]));
            }
        }
    }
    Graph::from_edges(spec.order(), &edges).expect("join edges are in range and loop-free")
}

/// Adjacency matrix of the join assembled block by block from
/// `A(G_i)` and the outer products `delta_ij x_{S_i} x_{S_j}^T`.
pub fn block_adjacency(spec: &JoinSpec) -> SymMatrix {
    let offsets = spec.offsets();
    let mut m = SymMatrix::zeros(spec.order());
    let xs: Vec<Vec<f64>> = spec
        .parts
        .iter()
        .map(|p| p.subset.characteristic_vector())
        .collect();
    for (i, part) in spec.parts.iter().enumerate() {
        let block = SymMatrix::adjacency(&part.graph);
        for a in 0..part.graph.order() {
            for b in a..part.graph.order() {
                m.set(offsets[i] + a, offsets[i] + b, block.get(a, b));
            }
        }
        for j in i + 1..spec.parts.len() {
            let delta = if spec.host.has_edge(i, j) { 1.0 } else { 0.0 };
            for (a, xa) in xs[i].iter().enumerate() {
                for (b, xb) in xs[j].iter().enumerate() {
                    m.set(offsets[i] + a, offsets[j] + b, delta * xa * xb);
                }
            }
        }
    }
    m
}

/// The `H`-join of `family`, one graph per vertex of `host`.
pub fn h_join(host: &Graph, family: &[Graph]) -> Result<Graph> {
    Ok(generalized_join(&JoinSpec::unconstrained(
        host.clone(),
        family.to_vec(),
    )?))
}

/// `G1 v G2`: disjoint union plus all edges between the two vertex sets.
pub fn join2(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.order();
    let union = g1.disjoint_union(g2);
    Graph::from_fn(union.order(), |a, b| {
        union.has_edge(a, b) || (a < n1 && b >= n1)
    })
}

/// How a part's constraint subset satisfies the inheritance hypothesis.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Hypothesis {
    /// `S_i = V(G_i)`: every non-main eigenvalue is inherited.
    FullSet,
    /// `S_i` (or its complement) is `(k, tau)`-regular with `tau > 0`.
    Certified {
        k: usize,
        tau: usize,
        complement_mode: bool,
    },
    /// No claim is made for this part.
    Unmet { reason: String },
}

/// An eigenvalue predicted to carry over from a component to the join.
#[derive(Debug, Clone, Serialize)]
pub struct InheritedEigenvalue {
    pub value: f64,
    pub multiplicity: usize,
    pub found: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartReport {
    pub part: usize,
    pub hypothesis: Hypothesis,
    pub inherited: Vec<InheritedEigenvalue>,
    /// Non-main eigenvalues equal to `k - tau`: excluded by hypothesis, no conclusion.
    pub excluded: Vec<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Report {
    pub parts: Vec<PartReport>,
    pub join_eigenvalues: Vec<f64>,
    /// All inherited eigenvalues of all parts, with multiplicities, fit
    /// inside the join's spectrum simultaneously.
    pub combined_containment: bool,
    pub pass: bool,
}

/// Checks that non-main eigenvalues of each component (other than `k_i - tau_i`)
/// are eigenvalues of the constrained join.
pub fn theorem1_verify(spec: &JoinSpec) -> Result<Theorem1Report> {
    theorem1_verify_with(spec, MATCH_TOLERANCE)
}

pub fn theorem1_verify_with(spec: &JoinSpec, match_tol: f64) -> Result<Theorem1Report> {
    let joined = generalized_join(spec);
    let join_eigenvalues = eigenvalues_sym(&SymMatrix::adjacency(&joined))?;
    let mut parts = Vec::with_capacity(spec.parts.len());
    let mut all_predicted = Vec::new();

    for (i, part) in spec.parts.iter().enumerate() {
        let hypothesis = part_hypothesis(part)?;
        let exclude = match &hypothesis {
            Hypothesis::FullSet => None,
            Hypothesis::Certified { k, tau, .. } => Some(*k as f64 - *tau as f64),
            Hypothesis::Unmet { .. } => {
                parts.push(PartReport {
                    part: i,
                    hypothesis,
                    inherited: Vec::new(),
                    excluded: Vec::new(),
                    pass: true,
                });
                continue;
            }
        };
        let spectrum = Spectrum::of_graph(&part.graph);
        let mut inherited = Vec::new();
        let mut excluded = Vec::new();
        for grp in spectrum.groups.iter().filter(|g| !g.main) {
            if exclude.is_some_and(|e| (grp.value - e).abs() <= match_tol) {
                excluded.push(grp.value);
                continue;
            }
            let needles = vec![grp.value; grp.multiplicity];
            let found = unmatched_in(&join_eigenvalues, &needles, match_tol).is_empty();
            all_predicted.extend(needles);
            inherited.push(InheritedEigenvalue {
                value: grp.value,
                multiplicity: grp.multiplicity,
                found,
            });
        }
        parts.push(PartReport {
            part: i,
            hypothesis,
            pass: inherited.iter().all(|e| e.found),
            inherited,
            excluded,
        });
    }

    let combined_containment = unmatched_in(&join_eigenvalues, &all_predicted, match_tol).is_empty();
    Ok(Theorem1Report {
        pass: combined_containment && parts.iter().all(|p| p.pass),
        combined_containment,
        parts,
        join_eigenvalues,
    })
}

pub(crate) fn part_hypothesis(part: &JoinPart) -> Result<Hypothesis> {
    if part.subset.is_full() {
        return Ok(Hypothesis::FullSet);
    }
    if part.subset.is_empty() {
        return Ok(Hypothesis::Unmet {
            reason: "empty constraint subset".into(),
        });
    }
    Ok(match certify_either(&part.graph, &part.subset)? {
        None => Hypothesis::Unmet {
            reason: "neither the subset nor its complement is (k,tau)-regular".into(),
        },
        Some(c) if c.tau == 0 => Hypothesis::Unmet {
            reason: format!(
                "certified ({}, 0)-regular; the non-main criterion needs tau > 0",
                c.k
            ),
        },
        Some(c) => Hypothesis::Certified {
            k: c.k,
            tau: c.tau,
            complement_mode: c.complement_mode,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_part_join() -> JoinSpec {
        let star = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let path = Graph::path(3);
        let g3 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        JoinSpec::new(
            Graph::path(3),
            vec![
                JoinPart::new(star, VertexSet::from_indices(3, &[0, 1]).unwrap()).unwrap(),
                JoinPart::new(path, VertexSet::from_indices(3, &[0, 2]).unwrap()).unwrap(),
                JoinPart::new(g3, VertexSet::from_indices(4, &[0, 2, 3]).unwrap()).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn three_part_join_edges() {
        let g = generalized_join(&three_part_join());
        assert_eq!(g.order(), 10);
        // 2 + 2 + 5 component edges, 2*2 + 2*3 cross edges
        assert_eq!(g.edge_count(), 19);
        assert!(g.has_edge(1, 5) && g.has_edge(5, 9) && !g.has_edge(2, 3) && !g.has_edge(4, 6));
        assert_eq!(SymMatrix::adjacency(&g), block_adjacency(&three_part_join()));
    }

    #[test]
    fn edgeless_host_gives_disjoint_union() {
        let spec = JoinSpec::unconstrained(
            Graph::null(2),
            vec![Graph::cycle(3).unwrap(), Graph::path(2)],
        )
        .unwrap();
        let g = generalized_join(&spec);
        assert_eq!(g, Graph::cycle(3).unwrap().disjoint_union(&Graph::path(2)));
    }

    #[test]
    fn k2_host_gives_classic_join() {
        let a = Graph::cycle(4).unwrap();
        let b = Graph::path(3);
        let via_h = h_join(&Graph::complete(2), &[a.clone(), b.clone()]).unwrap();
        assert_eq!(via_h, join2(&a, &b));
    }

    #[test]
    fn h_join_examples() {
        let gnk = h_join(&Graph::complete(2), &[Graph::complete(3), Graph::null(2)]).unwrap();
        assert_eq!(gnk.edge_count(), 3 + 6);
        let single = h_join(&Graph::complete(1), &[Graph::petersen()]).unwrap();
        assert_eq!(single, Graph::petersen());
        let family = [Graph::cycle(3).unwrap(), Graph::cycle(6).unwrap(), Graph::cycle(3).unwrap()];
        let t6 = h_join(&Graph::path(3), &family).unwrap();
        assert_eq!(t6.order(), 12);
        assert_eq!(t6.edge_count(), 12 + 18 + 18);
        assert!(h_join(&Graph::path(3), &family[..2]).is_err());
    }

    #[test]
    fn join2_examples() {
        assert_eq!(join2(&Graph::complete(1), &Graph::complete(1)), Graph::complete(2));
        assert_eq!(join2(&Graph::complete(2), &Graph::null(1)), Graph::complete(3));
        assert_eq!(join2(&Graph::null(2), &Graph::null(3)), Graph::complete_bipartite(2, 3).unwrap());
    }

    #[test]
    fn part_validation() {
        assert!(JoinPart::new(Graph::path(3), VertexSet::full(4)).is_err());
    }

    #[test]
    fn theorem1_on_three_part_join() {
        let r = theorem1_verify(&three_part_join()).unwrap();
        assert!(r.pass);
        assert_eq!(r.parts[0].hypothesis, Hypothesis::Certified { k: 1, tau: 1, complement_mode: false });
        assert!(r.parts[0].inherited.is_empty());
        assert_eq!(r.parts[0].excluded.len(), 1);
        assert!(r.parts[0].excluded[0].abs() < 1e-9);
        let from_g2: Vec<f64> = r.parts[1].inherited.iter().map(|e| e.value).collect();
        let from_g3: Vec<f64> = r.parts[2].inherited.iter().map(|e| e.value).collect();
        assert_eq!(from_g2.len(), 1);
        assert!(from_g2[0].abs() < 1e-9);
        assert_eq!(from_g3.len(), 1);
        assert!((from_g3[0] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn theorem1_on_c4_join() {
        let c4 = Graph::cycle(4).unwrap();
        let spec = JoinSpec::unconstrained(Graph::complete(2), vec![c4.clone(), c4]).unwrap();
        let r = theorem1_verify(&spec).unwrap();
        assert!(r.pass);
        for p in &r.parts {
            assert_eq!(p.hypothesis, Hypothesis::FullSet);
            let mult: usize = p.inherited.iter().map(|e| e.multiplicity).sum();
            assert_eq!(mult, 3);
        }
    }

    #[test]
    fn theorem1_unmet_hypothesis() {
        let path = Graph::path(4);
        let spec = JoinSpec::new(
            Graph::complete(2),
            vec![
                JoinPart::new(path.clone(), VertexSet::from_indices(4, &[0]).unwrap()).unwrap(),
                JoinPart::unconstrained(path),
            ],
        )
        .unwrap();
        let r = theorem1_verify(&spec).unwrap();
        assert!(matches!(r.parts[0].hypothesis, Hypothesis::Unmet { .. }));
        assert!(r.parts[0].inherited.is_empty());
    }
}
