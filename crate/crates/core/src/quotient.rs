//! Quotient matrices of an `H`-join of regular graphs.
//!
//! For components `G_i` that are `d_i`-regular of order `n_i`, the join's
//! spectrum is the union of the component spectra (one copy of each `d_i`
//! removed) and the spectrum of the `p x p` matrix `M = A(H) N + D`.
//! `M` is similar to the symmetric `M' = D + K A(H) K`, `K = diag(sqrt n_i)`.

use serde::Serialize;

use crate::eig::{
    eigenvalues_sym, multiset_distance, residual_after, unmatched_in, SymMatrix, MATCH_TOLERANCE,
};
use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::join::{generalized_join, part_hypothesis, Hypothesis, JoinSpec};

/// A host graph with the order and degree of one regular component per host vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularFamily {
    host: Graph,
    orders: Vec<usize>,
    degrees: Vec<usize>,
    components: Option<Vec<Graph>>,
}

impl RegularFamily {
    /// Parameters only; enough for the quotient matrices.
    pub fn new(host: Graph, orders: Vec<usize>, degrees: Vec<usize>) -> Result<Self> {
        let p = host.order();
        if orders.len() != p || degrees.len() != p {
            return input(format!(
                "host has {p} vertices but {} orders and {} degrees were given",
                orders.len(),
                degrees.len()
            ));
        }
        for (i, (&n, &d)) in orders.iter().zip(&degrees).enumerate() {
            if n == 0 {
                return input(format!("component {i} has no vertices"));
            }
            if d >= n {
                return input(format!(
                    "component {i}: degree {d} exceeds order minus one ({})",
                    n - 1
                ));
            }
        }
        Ok(RegularFamily {
            host,
            orders,
            degrees,
            components: None,
        })
    }

    /// Reads orders and degrees off the component graphs, which must be regular.
    pub fn from_graphs(host: Graph, components: Vec<Graph>) -> Result<Self> {
        let mut degrees = Vec::with_capacity(components.len());
        for (i, g) in components.iter().enumerate() {
            match g.regular_degree() {
                Some(d) => degrees.push(d),
                None => return input(format!("component {i} is not regular")),
            }
        }
        let orders = components.iter().map(Graph::order).collect();
        let mut fam = RegularFamily::new(host, orders, degrees)?;
        fam.components = Some(components);
        Ok(fam)
    }

    /// The family behind an unconstrained join; constrained subsets are unsupported.
    pub fn from_join_spec(spec: &JoinSpec) -> Result<Self> {
        if !spec.is_unconstrained() {
            return Err(Error::Unsupported(
                "quotient formulas need every constraint subset to be the full vertex set".into(),
            ));
        }
        RegularFamily::from_graphs(
            spec.host().clone(),
            spec.parts().iter().map(|p| p.graph.clone()).collect(),
        )
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn components(&self) -> Option<&[Graph]> {
        self.components.as_deref()
    }

    pub fn require_components(&self) -> Result<&[Graph]> {
        self.components()
            .ok_or_else(|| Error::Input("this operation needs the component graphs".into()))
    }

    pub fn parts(&self) -> usize {
        self.host.order()
    }

    pub fn total_order(&self) -> usize {
        self.orders.iter().sum()
    }

    pub fn max_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(0)
    }

    pub fn min_order(&self) -> usize {
        self.orders.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn degree_ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.orders
            .iter()
            .zip(&self.degrees)
            .map(|(&n, &d)| d as f64 / n as f64)
    }

    /// Largest `d_i / n_i`.
    pub fn max_degree_ratio(&self) -> f64 {
        self.degree_ratios().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest `d_i / n_i`.
    pub fn min_degree_ratio(&self) -> f64 {
        self.degree_ratios().fold(f64::INFINITY, f64::min)
    }

    /// The joined graph; needs component graphs.
    pub fn join(&self) -> Result<Graph> {
        let spec = JoinSpec::unconstrained(self.host.clone(), self.require_components()?.to_vec())?;
        Ok(generalized_join(&spec))
    }
}

/// `M = A(H) N + D` and its symmetrization `M' = D + K A(H) K`.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientPair {
    /// Row-major, generally non-symmetric.
    pub m: Vec<Vec<f64>>,
    #[serde(serialize_with = "serialize_sym")]
    pub m_prime: SymMatrix,
    /// Shared spectrum, descending.
    pub eigenvalues: Vec<f64>,
}

fn serialize_sym<S: serde::Serializer>(m: &SymMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&m.rows(), s)
}

impl QuotientPair {
    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn spread(&self) -> f64 {
        self.largest() - self.smallest()
    }
}

pub fn build_quotient(fam: &RegularFamily) -> Result<QuotientPair> {
    let p = fam.parts();
    let h = &fam.host;
    let m: Vec<Vec<f64>> = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| {
                    let a = if h.has_edge(i, j) { fam.orders[j] as f64 } else { 0.0 };
                    let d = if i == j { fam.degrees[i] as f64 } else { 0.0 };
                    a + d
                })
                .collect()
        })
        .collect();
    let m_prime = SymMatrix::from_fn(p, |i, j| {
        if i == j {
            fam.degrees[i] as f64
        } else if h.has_edge(i, j) {
            (fam.orders[i] as f64).sqrt() * (fam.orders[j] as f64).sqrt()
        } else {
            0.0
        }
    });
    let eigenvalues = eigenvalues_sym(&m_prime)?;
    Ok(QuotientPair {
        m,
        m_prime,
        eigenvalues,
    })
}

/// Join spectrum assembled from component spectra and the quotient.
#[derive(Debug, Clone, Serialize)]
pub struct AssembledSpectrum {
    /// All eigenvalues, descending.
    pub values: Vec<f64>,
    /// Per component: its spectrum with one copy of `d_i` removed.
    pub from_components: Vec<Vec<f64>>,
    pub from_quotient: Vec<f64>,
}

/// Spectrum of the `H`-join of a regular family, without eigensolving the join.
pub fn theorem2_spectrum(fam: &RegularFamily) -> Result<AssembledSpectrum> {
    let components = fam.require_components()?;
    let quotient = build_quotient(fam)?;
    let mut from_components = Vec::with_capacity(components.len());
    for (i, g) in components.iter().enumerate() {
        let mut values = eigenvalues_sym(&SymMatrix::adjacency(g))?;
        remove_one(&mut values, fam.degrees[i] as f64).map_err(|_| {
            Error::Consistency(format!(
                "degree {} of component {i} is not among its eigenvalues",
                fam.degrees[i]
            ))
        })?;
        from_components.push(values);
    }
    let mut values: Vec<f64> = from_components
        .iter()
        .flatten()
        .chain(&quotient.eigenvalues)
        .copied()
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(AssembledSpectrum {
        values,
        from_components,
        from_quotient: quotient.eigenvalues,
    })
}

fn remove_one(values: &mut Vec<f64>, target: f64) -> std::result::Result<(), ()> {
    let idx = values
        .iter()
        .enumerate()
        .filter(|(_, v)| (*v - target).abs() <= MATCH_TOLERANCE)
        .min_by(|a, b| (a.1 - target).abs().total_cmp(&(b.1 - target).abs()))
        .map(|(i, _)| i)
        .ok_or(())?;
    values.remove(idx);
    Ok(())
}

/// Per-part detail of the inclusion check for constrained joins.
#[derive(Debug, Clone, Serialize)]
pub struct InclusionPart {
    pub part: usize,
    pub degree: usize,
    pub hypothesis: Hypothesis,
    /// Eigenvalues predicted to survive in the join, with multiplicity.
    pub predicted: Vec<f64>,
    pub missing: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Report {
    pub parts: Vec<InclusionPart>,
    pub join_eigenvalues: Vec<f64>,
    /// Join eigenvalues no part predicts; the constrained case has no formula for them.
    pub residual: Vec<f64>,
    /// Max deviation of the assembled spectrum from the eigensolved one, when
    /// every subset is the full vertex set.
    pub equality_deviation: Option<f64>,
    pub pass: bool,
}

/// Checks that `sigma(G_i)` minus one `d_i` and every `k_i - tau_i` sits inside
/// the join's spectrum, and the full equality when no part is constrained.
pub fn theorem2_inclusion_check(spec: &JoinSpec) -> Result<Theorem2Report> {
    theorem2_inclusion_check_with(spec, MATCH_TOLERANCE)
}

pub fn theorem2_inclusion_check_with(spec: &JoinSpec, match_tol: f64) -> Result<Theorem2Report> {
    let joined = generalized_join(spec);
    let join_eigenvalues = eigenvalues_sym(&SymMatrix::adjacency(&joined))?;
    let mut parts = Vec::new();
    let mut all_predicted = Vec::new();
    for (i, part) in spec.parts().iter().enumerate() {
        let degree = part
            .graph
            .regular_degree()
            .ok_or_else(|| Error::Input(format!("component {i} is not regular")))?;
        let hypothesis = part_hypothesis(part)?;
        let mut predicted = Vec::new();
        match &hypothesis {
            Hypothesis::Unmet { .. } => {}
            Hypothesis::FullSet | Hypothesis::Certified { .. } => {
                let mut values = eigenvalues_sym(&SymMatrix::adjacency(&part.graph))?;
                remove_one(&mut values, degree as f64).map_err(|_| {
                    Error::Consistency(format!("degree {degree} missing from component {i}"))
                })?;
                if let Hypothesis::Certified { k, tau, .. } = hypothesis {
                    let target = k as f64 - tau as f64;
                    values.retain(|v| (v - target).abs() > match_tol);
                }
                predicted = values;
            }
        }
        let missing = unmatched_in(&join_eigenvalues, &predicted, match_tol);
        all_predicted.extend_from_slice(&predicted);
        parts.push(InclusionPart {
            part: i,
            degree,
            hypothesis,
            predicted,
            missing,
        });
    }
    let combined_missing = unmatched_in(&join_eigenvalues, &all_predicted, match_tol);
    let residual = residual_after(&join_eigenvalues, &all_predicted, match_tol);

    let equality_deviation = if spec.is_unconstrained() {
        let fam = RegularFamily::from_join_spec(spec)?;
        let assembled = theorem2_spectrum(&fam)?;
        multiset_distance(&assembled.values, &join_eigenvalues)
    } else {
        None
    };
    let pass = combined_missing.is_empty()
        && parts.iter().all(|p| p.missing.is_empty())
        && equality_deviation.is_none_or(|d| d <= match_tol);
    Ok(Theorem2Report {
        parts,
        join_eigenvalues,
        residual,
        equality_deviation,
        pass,
    })
}
