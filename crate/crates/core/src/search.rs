//! Exhaustive walks over all labeled graphs of a given order.
//!
//! Edge slot `b` is the `b`-th pair `(u, v)`, `u < v`, in lexicographic order,
//! so a graph on `n` vertices is a mask of `n(n-1)/2` bits. The space is split
//! by fixing the high bits, and each chunk is walked in Gray-code order so
//! consecutive graphs differ by one edge.

use rayon::prelude::*;
use serde::Serialize;

use crate::eig::{eigenvalues_sym, multiset_distance, SymMatrix};
use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::spread::{gnk_graph, graph_spread};

/// Largest order the walker accepts (the mask must fit in a `u64`).
pub const MAX_WALK_ORDER: usize = 11;
/// Largest order the conjecture search runs without `long`.
pub const CONJECTURE_DESK_LIMIT: usize = 7;
/// Largest order the conjecture search runs at all.
pub const CONJECTURE_LONG_LIMIT: usize = 9;

const CHUNK_BITS: usize = 10;

/// Edge pairs in slot order.
pub fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let slots = edge_slots(n);
    let edges: Vec<_> = slots
        .iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::from_edges(n, &edges).expect("slot pairs are valid edges")
}

/// State of the walk at one graph.
#[derive(Debug, Clone)]
pub struct Cursor {
    pub n: usize,
    pub mask: u64,
    pub edge_count: usize,
    pub degrees: Vec<usize>,
}

impl Cursor {
    pub fn graph(&self) -> Graph {
        graph_from_mask(self.n, self.mask)
    }

    pub fn adjacency(&self, slots: &[(usize, usize)]) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.n);
        for (b, &(u, v)) in slots.iter().enumerate() {
            if self.mask >> b & 1 == 1 {
                m.set(u, v, 1.0);
            }
        }
        m
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }

    fn flip(&mut self, bit: usize, (u, v): (usize, usize)) {
        self.mask ^= 1 << bit;
        if self.mask >> bit & 1 == 1 {
            self.edge_count += 1;
            self.degrees[u] += 1;
            self.degrees[v] += 1;
        } else {
            self.edge_count -= 1;
            self.degrees[u] -= 1;
            self.degrees[v] -= 1;
        }
    }
}

/// Visits every labeled graph on `n` vertices exactly once, folding per chunk
/// and reducing across chunks in chunk order.
pub fn fold_labeled_graphs<A, I, F, R>(n: usize, identity: I, fold: F, reduce: R) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &Cursor) + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    if n > MAX_WALK_ORDER {
        return Err(Error::Capacity {
            what: "order for labeled-graph enumeration",
            value: n,
            limit: MAX_WALK_ORDER,
        });
    }
    let slots = edge_slots(n);
    let m = slots.len();
    let high = m.min(CHUNK_BITS);
    let low = m - high;
    let acc = (0..1u64 << high)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = identity();
            let mut cur = Cursor {
                n,
                mask: 0,
                edge_count: 0,
                degrees: vec![0; n],
            };
            for b in 0..high {
                if prefix >> b & 1 == 1 {
                    cur.flip(low + b, slots[low + b]);
                }
            }
            fold(&mut acc, &cur);
            for i in 1..1u64 << low {
                let bit = i.trailing_zeros() as usize;
                cur.flip(bit, slots[bit]);
                fold(&mut acc, &cur);
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(reduce)
        .unwrap_or_else(identity);
    Ok(acc)
}

/// Number of labeled graphs on `n` vertices.
pub fn labeled_graph_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

/// `floor((4/3)(n^2 - n + 1))`, computed exactly.
pub fn conjectured_square(n: usize) -> u64 {
    let n = n as u64;
    4 * (n * n - n + 1) / 3
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub graphs: u64,
    /// Graphs that passed the Mirsky prefilter and were eigensolved.
    pub eigensolved: u64,
    pub max_spread: f64,
    pub predicted: f64,
    pub max_matches: bool,
    /// Labeled graphs attaining the maximum.
    pub maximizers: usize,
    /// Least mask among the maximizers.
    pub witness_mask: u64,
    pub witness_edges: Vec<(usize, usize)>,
    /// `k = floor(2n/3)` of the reference `G(n, k)`.
    pub reference_k: usize,
    pub spectra_match: bool,
    pub bracket_lower: f64,
    pub bracket_upper: f64,
    pub bracket_holds: bool,
    pub pass: bool,
}

#[derive(Default)]
struct Best {
    max: f64,
    /// `(spread, mask)` within `TIE` of the running maximum.
    near: Vec<(f64, u64)>,
    solved: u64,
}

const TIE: f64 = 1e-6;

impl Best {
    fn offer(&mut self, s: f64, mask: u64) {
        if s >= self.max - TIE {
            self.near.push((s, mask));
            if s > self.max {
                self.max = s;
                let floor = s - TIE;
                self.near.retain(|&(t, _)| t >= floor);
            }
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.solved += other.solved;
        self.max = self.max.max(other.max);
        let floor = self.max - TIE;
        self.near.extend(other.near);
        self.near.retain(|&(t, _)| t >= floor);
        self
    }
}

/// Maximum spread over all labeled graphs of order `n`, compared with
/// `sqrt(floor((4/3)(n^2 - n + 1)))` and the spectrum of `G(n, floor(2n/3))`.
///
/// Orders above 7 run only with `long`; orders above 9 are refused.
pub fn conjecture_check(n: usize, long: bool) -> Result<ConjectureReport> {
    if n < 2 {
        return input(format!("the spread search needs n >= 2, got {n}"));
    }
    let limit = if long { CONJECTURE_LONG_LIMIT } else { CONJECTURE_DESK_LIMIT };
    if n > limit {
        return Err(Error::Capacity {
            what: "order for the exhaustive spread search",
            value: n,
            limit,
        });
    }
    // G(n, k) lies in the search space, so its spread is a valid starting maximum.
    let seed = (1..n)
        .map(|k| gnk_graph(n, k).and_then(|g| graph_spread(&g)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let slots = edge_slots(n);
    let best = fold_labeled_graphs(
        n,
        || Best {
            max: seed,
            ..Best::default()
        },
        |best, cur| {
            let prefilter = (4.0 * cur.edge_count as f64).sqrt();
            if prefilter < best.max - TIE {
                return;
            }
            best.solved += 1;
            let values = eigenvalues_sym(&cur.adjacency(&slots)).expect("adjacency is symmetric");
            best.offer(values[0] - values[n - 1], cur.mask);
        },
        Best::merge,
    )?;
    let masks: Vec<u64> = best.near.iter().map(|&(_, m)| m).collect();
    let witness_mask = masks.iter().copied().min().unwrap_or(0);

    let reference_k = 2 * n / 3;
    let reference = eigenvalues_sym(&SymMatrix::adjacency(&gnk_graph(n, reference_k)?))?;
    let mut spectra_match = !masks.is_empty();
    for &mask in &masks {
        let values = eigenvalues_sym(&SymMatrix::adjacency(&graph_from_mask(n, mask)))?;
        spectra_match &= multiset_distance(&values, &reference).is_some_and(|d| d <= TIE);
    }

    let predicted = (conjectured_square(n) as f64).sqrt();
    let max_matches = (best.max - predicted).abs() <= TIE;
    let bracket_lower = (2.0 * n as f64 - 1.0) / 3f64.sqrt();
    let bracket_upper = bracket_lower + 3f64.sqrt() / (4.0 * n as f64 - 2.0);
    let bracket_holds = bracket_lower < best.max && best.max < bracket_upper;
    Ok(ConjectureReport {
        n,
        graphs: labeled_graph_count(n),
        eigensolved: best.solved,
        max_spread: best.max,
        predicted,
        max_matches,
        maximizers: masks.len(),
        witness_mask,
        witness_edges: graph_from_mask(n, witness_mask).edges(),
        reference_k,
        spectra_match,
        bracket_lower,
        bracket_upper,
        bracket_holds,
        pass: max_matches && spectra_match && bracket_holds,
    })
}
