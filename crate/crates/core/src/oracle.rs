//! Brute-force ground truth. Deliberately plain loops, sharing nothing with
//! the fast paths beyond the matrix containers.

use crate::error::{Error, Result};
use crate::matrix::{BoolMatrix, WeightMatrix, INF};

fn sum(a: i64, b: i64) -> i64 {
    if a == INF || b == INF {
        INF
    } else {
        a + b
    }
}

/// Exact distances. A negative diagonal after relaxation means a negative
/// cycle through that vertex.
pub fn floyd_warshall(w: &WeightMatrix) -> Result<WeightMatrix> {
    let n = w.n();
    let mut d = w.clone();
    for i in 0..n {
        if d.get(i, i) > 0 {
            d.set(i, i, 0);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d.get(i, k);
            if dik == INF {
                continue;
            }
            for j in 0..n {
                let cand = sum(dik, d.get(k, j));
                if cand < d.get(i, j) {
                    d.set(i, j, cand);
                }
            }
        }
        if (0..n).any(|i| d.get(i, i) < 0) {
            let v = (0..n).find(|&i| d.get(i, i) < 0).expect("checked");
            return Err(Error::NegativeCycle(vec![v + 1]));
        }
    }
    Ok(d)
}

fn naive_step(d: &WeightMatrix, w: &WeightMatrix) -> WeightMatrix {
    let n = d.n();
    let mut out = WeightMatrix::infinite(n, n);
    for i in 0..n {
        for k in 0..n {
            let x = d.get(i, k);
            if x == INF {
                continue;
            }
            for j in 0..n {
                let cand = sum(x, w.get(k, j));
                if cand < out.get(i, j) {
                    out.set(i, j, cand);
                }
            }
        }
    }
    out
}

/// `W^(n-1)` by repeated naive min-plus multiplication; equals the distance
/// matrix when `W` has a zero diagonal and no negative cycle.
pub fn naive_power_distances(w: &WeightMatrix) -> WeightMatrix {
    let n = w.n();
    let mut d = WeightMatrix::identity(n);
    for _ in 0..n.saturating_sub(1).max(1) {
        d = naive_step(&d, w);
    }
    d
}

/// `c(u,v)`: fewest edges among paths realizing `δ(u,v)`, `INF` where
/// unreachable. Found by growing the at-most-k-edge distance matrix until
/// it meets `dist`.
pub fn min_edge_counts(w: &WeightMatrix, dist: &WeightMatrix) -> WeightMatrix {
    let n = w.n();
    let mut counts = WeightMatrix::infinite(n, n);
    let mut dk = WeightMatrix::identity(n);
    for k in 0..n {
        if k > 0 {
            let step = naive_step(&dk, w);
            for i in 0..n {
                for j in 0..n {
                    if step.get(i, j) < dk.get(i, j) {
                        dk.set(i, j, step.get(i, j));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if counts.get(i, j) == INF && dist.get(i, j) != INF && dk.get(i, j) == dist.get(i, j) {
                    counts.set(i, j, k as i64);
                }
            }
        }
    }
    counts
}

/// `{(u,v) : dist(u,v) <= d}`.
pub fn brute_threshold(dist: &WeightMatrix, d: i64) -> BoolMatrix {
    BoolMatrix::from_fn(dist.n(), |i, j| {
        let v = dist.get(i, j);
        v != INF && v <= d
    })
}

/// Largest distance, `None` when some pair is unreachable.
pub fn diameter(dist: &WeightMatrix) -> Option<i64> {
    let mut best = i64::MIN;
    for &v in dist.as_slice() {
        if v == INF {
            return None;
        }
        best = best.max(v);
    }
    Some(best)
}

/// Ordered pairs at distance exactly `diameter(dist)`, or the unreachable
/// pairs when the diameter is infinite.
pub fn diameter_argmax(dist: &WeightMatrix) -> Vec<(usize, usize)> {
    let n = dist.n();
    let target = diameter(dist).unwrap_or(INF);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if dist.get(i, j) == target {
                out.push((i, j));
            }
        }
    }
    out
}

/// Distances and minimum edge counts together.
#[derive(Clone, Debug)]
pub struct OracleTables {
    pub dist: WeightMatrix,
    pub cmat: WeightMatrix,
}

impl OracleTables {
    pub fn compute(w: &WeightMatrix) -> Result<Self> {
        let dist = floyd_warshall(w)?;
        let cmat = min_edge_counts(w, &dist);
        Ok(Self { dist, cmat })
    }
}
