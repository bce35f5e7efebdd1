//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eig::SymMatrix;
use crate::error::{input, Result};
use crate::graph::Graph;

/// The RNG used throughout; fixed so seeds reproduce across platforms.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi `G(n, p)`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p.clamp(0.0, 1.0)))
}

/// A `d`-regular graph on `n` vertices: a circulant scrambled by random
/// degree-preserving double-edge swaps, then randomly relabeled.
pub fn random_regular(n: usize, d: usize, rng: &mut impl Rng) -> Result<Graph> {
    let base = Graph::regular_circulant(n, d)?;
    let mut edges = base.edges();
    let mut adj: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| base.has_edge(u, v)).collect())
        .collect();
    let m = edges.len();
    if m >= 2 {
        for _ in 0..10 * m {
            let i = rng.gen_range(0..m);
            let j = rng.gen_range(0..m);
            let (a, b) = edges[i];
            let (c, d) = if rng.gen_bool(0.5) { edges[j] } else { (edges[j].1, edges[j].0) };
            // a-b, c-d  ->  a-c, b-d
            if a == c || a == d || b == c || b == d || adj[a][c] || adj[b][d] {
                continue;
            }
            adj[a][b] = false;
            adj[b][a] = false;
            adj[c][d] = false;
            adj[d][c] = false;
            adj[a][c] = true;
            adj[c][a] = true;
            adj[b][d] = true;
            adj[d][b] = true;
            edges[i] = (a, c);
            edges[j] = (b, d);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let relabeled: Vec<_> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(n, &relabeled)
}

/// A random regular graph of order `n` with a degree drawn uniformly from the
/// feasible ones (`d < n`, `n d` even).
pub fn random_regular_any(n: usize, rng: &mut impl Rng) -> Result<Graph> {
    if n == 0 {
        return input("a regular graph needs at least one vertex");
    }
    let feasible: Vec<usize> = (0..n).filter(|d| (n * d).is_multiple_of(2)).collect();
    let d = *feasible.choose(rng).expect("d = 0 is always feasible");
    random_regular(n, d, rng)
}

/// Symmetric matrix with independent entries uniform in `[-1, 1]`.
pub fn random_symmetric(n: usize, rng: &mut impl Rng) -> SymMatrix {
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            m.set(i, j, rng.gen_range(-1.0..=1.0));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_graphs_are_regular() {
        let mut rng = seeded(7);
        for n in 1usize..14 {
            for d in (0..n).filter(|d| (n * d).is_multiple_of(2)) {
                let g = random_regular(n, d, &mut rng).unwrap();
                assert_eq!(g.regular_degree(), Some(d), "n={n} d={d}");
            }
        }
        assert!(random_regular(5, 3, &mut rng).is_err());
    }

    #[test]
    fn seeds_reproduce() {
        let a = random_graph(12, 0.4, &mut seeded(3));
        let b = random_graph(12, 0.4, &mut seeded(3));
        assert_eq!(a, b);
        assert!(random_graph(6, 0.0, &mut seeded(1)).edge_count() == 0);
        assert_eq!(random_graph(6, 1.0, &mut seeded(1)), Graph::complete(6));
    }

    #[test]
    fn swaps_move_away_from_the_circulant() {
        let mut rng = seeded(11);
        let base = Graph::regular_circulant(12, 4).unwrap();
        let differs = (0..5).any(|_| random_regular(12, 4, &mut rng).unwrap() != base);
        assert!(differs);
    }
}
