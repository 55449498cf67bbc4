//! Instance generators and independent reference computations shared by the
//! integration tests.
#![allow(dead_code)]

use tapsp::graph::to_weight_matrix;
use tapsp::matprod::PolyMatrix;
use tapsp::matrix::{BoolMatrix, WeightMatrix, INF};
use tapsp::oracle::floyd_warshall;
use tapsp::{gen_random, Edge, GenParams, Graph, Rng};

/// Weights in `{1..M}`.
pub fn positive_graph(n: usize, m: i64, density: f64, seed: u64) -> Graph {
    let g = gen_random(&GenParams {
        n,
        density,
        wmin: 1,
        wmax: m,
        seed,
        no_negative_cycle: false,
    })
    .unwrap();
    Graph::new(n, m, g.edges().to_vec()).unwrap()
}

/// Mixed-sign weights in `{-M..M}` without negative cycles: each arc gets
/// `w' + h(u) - h(v)` for a random potential `h` and `w' >= 0`, so every
/// cycle weight equals a sum of nonnegative `w'`.
pub fn mixed_graph(n: usize, m: i64, density: f64, seed: u64) -> Graph {
    let mut rng = Rng::new(seed ^ 0x5eed_0000);
    let h: Vec<i64> = (0..n).map(|_| rng.range_inclusive(0, m)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || !rng.bernoulli(density) {
                continue;
            }
            let lo = (-m - h[u] + h[v]).max(0);
            let hi = m - h[u] + h[v];
            if lo <= hi {
                let base = rng.range_inclusive(lo, hi);
                edges.push(Edge {
                    from: u,
                    to: v,
                    weight: base + h[u] - h[v],
                });
            }
        }
    }
    Graph::new(n, m, edges).unwrap()
}

pub fn distances(g: &Graph) -> WeightMatrix {
    floyd_warshall(&to_weight_matrix(g)).unwrap()
}

/// Nearest-rank percentiles of the finite off-diagonal distances.
pub fn percentile_distances(dist: &WeightMatrix, pcts: &[u32]) -> Vec<i64> {
    let n = dist.n();
    let mut v: Vec<i64> = Vec::new();
    for u in 0..n {
        for w in 0..n {
            if u != w && dist.get(u, w) != INF {
                v.push(dist.get(u, w));
            }
        }
    }
    if v.is_empty() {
        return Vec::new();
    }
    v.sort_unstable();
    pcts.iter()
        .map(|&p| {
            let rank = (p as usize * v.len()).div_ceil(100);
            v[rank.clamp(1, v.len()) - 1]
        })
        .collect()
}

/// `{u,v : δ(u,v) <= d}` straight from a distance matrix.
pub fn threshold_of(dist: &WeightMatrix, d: i64) -> BoolMatrix {
    BoolMatrix::from_fn(dist.n(), |u, v| dist.get(u, v) != INF && dist.get(u, v) <= d)
}

/// Square of a polynomial Boolean matrix by direct convolution.
pub fn poly_square_direct(b: &PolyMatrix) -> Vec<BoolMatrix> {
    let n = b.n();
    let s = b.len_coeffs();
    let mut out = vec![BoolMatrix::new(n); (2 * s).saturating_sub(1)];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for a in 0..s {
                    if !b.get(i, l, a) {
                        continue;
                    }
                    for c in 0..s {
                        if b.get(l, j, c) {
                            out[a + c].set(i, j, true);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Boolean product by triple loop.
pub fn bool_product_direct(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
    let n = a.n();
    BoolMatrix::from_fn(n, |i, j| (0..n).any(|l| a.get(i, l) && b.get(l, j)))
}

/// Min-plus product by triple loop over `i64` with `INF` absorbing.
pub fn min_plus_direct(a: &WeightMatrix, b: &WeightMatrix) -> WeightMatrix {
    let mut out = WeightMatrix::infinite(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut best = INF;
            for l in 0..a.cols() {
                let (x, y) = (a.get(i, l), b.get(l, j));
                if x != INF && y != INF {
                    best = best.min(x + y);
                }
            }
            out.set(i, j, best);
        }
    }
    out
}

/// Random matrix with entries in `[-bound, bound]` plus `INF` with
/// probability `p_inf`.
pub fn random_weight_matrix(rows: usize, cols: usize, bound: i64, p_inf: f64, rng: &mut Rng) -> WeightMatrix {
    let mut m = WeightMatrix::infinite(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if !rng.bernoulli(p_inf) {
                m.set(i, j, rng.range_inclusive(-bound, bound));
            }
        }
    }
    m
}

pub fn random_bool_matrix(n: usize, p: f64, rng: &mut Rng) -> BoolMatrix {
    let mut m = BoolMatrix::new(n);
    for i in 0..n {
        for j in 0..n {
            if rng.bernoulli(p) {
                m.set(i, j, true);
            }
        }
    }
    m
}
