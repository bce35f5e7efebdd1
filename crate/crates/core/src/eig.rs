//! Dense symmetric eigensolver and graph spectra.
//!
//! Eigenpairs come from cyclic Jacobi rotations, which converge for every
//! real symmetric matrix and return eigenvectors that are orthonormal to
//! working precision. Orthonormality matters here: main/non-main
//! classification projects the all-ones vector onto each eigenspace.

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::graph::Graph;

/// Off-diagonal Frobenius mass, relative to `||A||_F`, at which Jacobi stops.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Entries `a_ij`, `a_ji` further apart than this make a matrix non-symmetric.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Relative gap `|l_i - l_j| <= tol * max(1, |l_i|)` merging eigenvalues into one group.
pub const GROUPING_TOLERANCE: f64 = 1e-7;
/// Projection norms at or below `MAIN_TOLERANCE * sqrt(n)` count as orthogonal.
pub const MAIN_TOLERANCE: f64 = 1e-6;
/// Absolute tolerance for "eigenvalue appears in spectrum" multiset matching.
pub const MATCH_TOLERANCE: f64 = 1e-6;

/// Real symmetric matrix, stored dense and mirrored on write.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = SymMatrix::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Builds from `f(i, j)` evaluated on the upper triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Rejects ragged rows and asymmetry beyond [`SYMMETRY_TOLERANCE`].
    #[allow(clippy::needless_range_loop)]
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return input(format!("row {bad} has length {}, expected {n}", rows[bad].len()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if (rows[i][j] - rows[j][i]).abs() > SYMMETRY_TOLERANCE {
                    return input(format!(
                        "matrix is not symmetric at ({i}, {j}): {} vs {}",
                        rows[i][j], rows[j][i]
                    ));
                }
            }
        }
        Ok(SymMatrix::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn adjacency(g: &Graph) -> Self {
        let mut m = SymMatrix::zeros(g.order());
        for (u, v) in g.edges() {
            m.set(u, v, 1.0);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    /// Max-norm of `A - V diag(values) V^T`.
    pub fn reconstruction_residual(&self, a: &SymMatrix) -> f64 {
        let n = a.order();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let r: f64 = self
                    .values
                    .iter()
                    .zip(&self.vectors)
                    .map(|(l, v)| l * v[i] * v[j])
                    .sum();
                worst = worst.max((a.get(i, j) - r).abs());
            }
        }
        worst
    }

    /// Max-norm of `V^T V - I`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, u) in self.vectors.iter().enumerate() {
            for (b, v) in self.vectors.iter().enumerate() {
                let dot: f64 = u.iter().zip(v).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Full eigendecomposition of a symmetric matrix.
pub fn eig_sym(m: &SymMatrix) -> Result<EigenDecomposition> {
    let (values, vectors) = jacobi(m, true)?;
    let n = m.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let vectors = vectors.expect("vectors requested");
    Ok(EigenDecomposition {
        values: order.iter().map(|&k| values[k]).collect(),
        // column k of the accumulated rotation matrix is the k-th eigenvector
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| vectors[i * n + k]).collect())
            .collect(),
    })
}

/// Eigenvalues only, descending. Skips eigenvector accumulation.
pub fn eigenvalues_sym(m: &SymMatrix) -> Result<Vec<f64>> {
    let (mut values, _) = jacobi(m, false)?;
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Cyclic Jacobi. Returns (diagonal, row-major accumulated rotations).
fn jacobi(m: &SymMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let n = m.order();
    let mut a = m.data.clone();
    let mut v = want_vectors.then(|| {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    });
    let threshold = JACOBI_TOLERANCE * m.frobenius_norm();

    let off_mass = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_mass(&a) > threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Consistency(format!(
                "Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps (order {n})"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // tan of the rotation angle, smaller root for stability
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    Ok(((0..n).map(|i| a[i * n + i]).collect(), v))
}

/// `lambda_max - lambda_min`.
pub fn spread_of_matrix(m: &SymMatrix) -> Result<f64> {
    if m.order() == 0 {
        return input("spread of an order-0 matrix is undefined");
    }
    let values = eigenvalues_sym(m)?;
    Ok(values[0] - values[values.len() - 1])
}

/// One eigenvalue with its multiplicity and an orthonormal basis of its eigenspace.
#[derive(Debug, Clone, Serialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
    #[serde(skip)]
    pub basis: Vec<Vec<f64>>,
    /// Norm of the projection of the all-ones vector onto the eigenspace.
    pub ones_projection: f64,
    pub main: bool,
}

/// Grouped spectrum, descending, with main/non-main flags.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub order: usize,
    pub groups: Vec<EigenGroup>,
    /// Set when two distinct groups sit within 10x the grouping tolerance,
    /// i.e. the multiplicity split may be a numerical artefact.
    pub near_degenerate: bool,
    #[serde(skip)]
    tolerance: f64,
}

impl Spectrum {
    /// Spectrum of `A(g)` with the default grouping tolerance.
    pub fn of_graph(g: &Graph) -> Spectrum {
        Spectrum::of_graph_with(g, GROUPING_TOLERANCE)
    }

    pub fn of_graph_with(g: &Graph, tolerance: f64) -> Spectrum {
        Spectrum::of_matrix(&SymMatrix::adjacency(g), tolerance)
            .expect("adjacency matrices are symmetric and Jacobi converges on them")
    }

    pub fn of_matrix(m: &SymMatrix, tolerance: f64) -> Result<Spectrum> {
        let eig = eig_sym(m)?;
        Ok(Spectrum::from_decomposition(&eig, tolerance))
    }

    pub fn from_decomposition(eig: &EigenDecomposition, tolerance: f64) -> Spectrum {
        let n = eig.values.len();
        let main_threshold = MAIN_TOLERANCE * (n as f64).sqrt();
        let mut groups = Vec::new();
        let mut near_degenerate = false;
        for (start, end) in group_ranges(&eig.values, tolerance) {
            let members = start..end;
            let value = eig.values[members.clone()].iter().sum::<f64>() / (end - start) as f64;
            let basis: Vec<Vec<f64>> = eig.vectors[members].to_vec();
            let ones_projection = basis
                .iter()
                .map(|v| v.iter().sum::<f64>().powi(2))
                .sum::<f64>()
                .sqrt();
            if let Some(prev) = groups.last().map(|g: &EigenGroup| g.value) {
                if prev - value <= 10.0 * tolerance * f64::max(1.0, value.abs()) {
                    near_degenerate = true;
                }
            }
            groups.push(EigenGroup {
                value,
                multiplicity: end - start,
                basis,
                ones_projection,
                main: ones_projection > main_threshold,
            });
        }
        Spectrum {
            order: n,
            groups,
            near_degenerate,
            tolerance,
        }
    }

    /// Eigenvalues with multiplicity, descending (each group's representative repeated).
    pub fn values(&self) -> Vec<f64> {
        self.groups
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.value, g.multiplicity))
            .collect()
    }

    pub fn largest(&self) -> Option<f64> {
        self.groups.first().map(|g| g.value)
    }

    pub fn smallest(&self) -> Option<f64> {
        self.groups.last().map(|g| g.value)
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// The group whose value lies within [`MATCH_TOLERANCE`] of `value`.
    pub fn group(&self, value: f64) -> Option<&EigenGroup> {
        self.groups
            .iter()
            .filter(|g| (g.value - value).abs() <= MATCH_TOLERANCE)
            .min_by(|a, b| (a.value - value).abs().total_cmp(&(b.value - value).abs()))
    }

    /// Regroups the already grouped values; the result has the same groups.
    pub fn regroup(&self) -> Vec<(f64, usize)> {
        group_values(&self.values(), self.tolerance)
    }

    /// Norm of the orthogonal projection of `x` onto the eigenspace of `group`.
    pub fn projection_norm(group: &EigenGroup, x: &[f64]) -> f64 {
        group
            .basis
            .iter()
            .map(|v| v.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// `true` iff `value` names a non-main eigenvalue of `spec`.
pub fn is_nonmain(spec: &Spectrum, value: f64) -> Result<bool> {
    spec.group(value)
        .map(|g| !g.main)
        .ok_or_else(|| Error::Input(format!("{value} is not an eigenvalue of this spectrum")))
}

/// Index ranges of consecutive descending values merged transitively under
/// `|a - b| <= tol * max(1, |a|)`.
fn group_ranges(values: &[f64], tol: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        let split = i == values.len()
            || (values[i - 1] - values[i]).abs() > tol * f64::max(1.0, values[i - 1].abs());
        if split {
            out.push((start, i));
            start = i;
        }
    }
    out
}

/// Groups descending `values` into `(mean, multiplicity)` pairs.
pub fn group_values(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    group_ranges(values, tol)
        .into_iter()
        .map(|(s, e)| (values[s..e].iter().sum::<f64>() / (e - s) as f64, e - s))
        .collect()
}

/// Largest pairwise deviation between two multisets of equal size, after sorting.
pub fn multiset_distance(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    Some(a.iter().zip(&b).fold(0.0, |m, (x, y)| m.max((x - y).abs())))
}

/// Greedy sub-multiset matching: each needle consumes the nearest unused
/// haystack value within `tol`. Returns the needles left unmatched.
pub fn unmatched_in(haystack: &[f64], needles: &[f64], tol: f64) -> Vec<f64> {
    let mut used = vec![false; haystack.len()];
    let mut sorted = needles.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut missing = Vec::new();
    for x in sorted {
        let best = haystack
            .iter()
            .enumerate()
            .filter(|&(i, h)| !used[i] && (h - x).abs() <= tol)
            .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()));
        match best {
            Some((i, _)) => used[i] = true,
            None => missing.push(x),
        }
    }
    missing
}

/// Haystack values not consumed when matching `needles` as in [`unmatched_in`].
pub fn residual_after(haystack: &[f64], needles: &[f64], tol: f64) -> Vec<f64> {
    let mut used = vec![false; haystack.len()];
    let mut sorted = needles.to_vec();
    sorted.sort_by(f64::total_cmp);
    for x in sorted {
        if let Some((i, _)) = haystack
            .iter()
            .enumerate()
            .filter(|&(i, h)| !used[i] && (h - x).abs() <= tol)
            .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()))
        {
            used[i] = true;
        }
    }
    haystack
        .iter()
        .zip(used)
        .filter(|(_, u)| !u)
        .map(|(&h, _)| h)
        .collect()
}
