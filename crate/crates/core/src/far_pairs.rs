//! Exact distances for pairs whose shortest paths all have many edges.
//!
//! A random set `X` of about `8 n ln n / t` vertices meets every shortest
//! path with at least `t` edges with high probability; the distances through
//! `X` are then exact for those pairs and upper bounds elsewhere.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::config::{Config, Sssp};
use crate::error::{Error, Result};
use crate::graph::{johnson_potentials, Graph, Potentials};
use crate::matrix::{add, WeightMatrix, INF};
use crate::rng::Rng;

#[derive(Clone, Debug)]
pub struct FarDistances {
    /// `δ_t(u,v) = min_{x ∈ X} δ(u,x) + δ(x,v)`
    pub delta_t: WeightMatrix,
    pub hitting_set: Vec<usize>,
    pub t: usize,
}

/// `min(max(⌈8 n ln n / t⌉, 1), n)` vertices drawn uniformly.
pub fn hitting_set(n: usize, t: usize, rng: &mut Rng) -> Result<Vec<usize>> {
    if t == 0 {
        return Err(Error::Parameter("hitting-set threshold must be at least 1".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    let count = 8.0 * n as f64 * (n.max(1) as f64).ln() / t as f64;
    Ok(rng.sample(&all, count.max(1.0)))
}

/// Distances from `x` (or to `x` when `reversed`) using Dijkstra on the
/// reduced weights `w + h(u) - h(v)`.
pub fn sssp_from(g: &Graph, pot: &Potentials, x: usize, reversed: bool, variant: Sssp) -> Result<Vec<i64>> {
    if !pot.is_valid_for(g) {
        return Err(Error::Parameter("potentials leave a negative reduced weight".into()));
    }
    let (graph, h) = if reversed {
        (g.reversed(), pot.negated())
    } else {
        (g.clone(), pot.clone())
    };
    let adj: Vec<Vec<(usize, i64)>> = {
        let mut adj = vec![Vec::new(); graph.n()];
        for e in graph.edges() {
            adj[e.from].push((e.to, h.reweight(e)));
        }
        adj
    };
    let reduced = match variant {
        Sssp::Heap => dijkstra_heap(&adj, x),
        Sssp::Dense => dijkstra_dense(&adj, x),
    };
    Ok(reduced
        .iter()
        .enumerate()
        .map(|(v, &d)| if d == INF { INF } else { d - h.get(x) + h.get(v) })
        .collect())
}

fn dijkstra_heap(adj: &[Vec<(usize, i64)>], src: usize) -> Vec<i64> {
    let mut dist = vec![INF; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[src] = 0;
    heap.push(Reverse((0i64, src)));
    while let Some(Reverse((d, a))) = heap.pop() {
        if d > dist[a] {
            continue;
        }
        for &(b, w) in &adj[a] {
            let nd = d + w;
            if nd < dist[b] {
                dist[b] = nd;
                heap.push(Reverse((nd, b)));
            }
        }
    }
    dist
}

/// O(n²) array-scan Dijkstra.
fn dijkstra_dense(adj: &[Vec<(usize, i64)>], src: usize) -> Vec<i64> {
    let n = adj.len();
    let mut dist = vec![INF; n];
    let mut done = vec![false; n];
    dist[src] = 0;
    for _ in 0..n {
        let Some(a) = (0..n).filter(|&v| !done[v] && dist[v] != INF).min_by_key(|&v| (dist[v], v)) else {
            break;
        };
        done[a] = true;
        for &(b, w) in &adj[a] {
            let nd = dist[a] + w;
            if nd < dist[b] {
                dist[b] = nd;
            }
        }
    }
    dist
}

/// `δ_t` for threshold `t`. Errors on a negative cycle.
pub fn compute_delta_t(g: &Graph, t: usize, rng: &mut Rng, cfg: &Config) -> Result<FarDistances> {
    let n = g.n();
    let x_set = hitting_set(n, t, rng)?;
    let pot = johnson_potentials(g)?;
    let rows: Vec<(Vec<i64>, Vec<i64>)> = x_set
        .par_iter()
        .map(|&x| {
            let from = sssp_from(g, &pot, x, false, cfg.sssp)?;
            let to = sssp_from(g, &pot, x, true, cfg.sssp)?;
            Ok((to, from))
        })
        .collect::<Result<_>>()?;
    let mut delta_t = WeightMatrix::infinite(n, n);
    for (to_x, from_x) in &rows {
        for u in 0..n {
            let a = to_x[u];
            if a == INF {
                continue;
            }
            for v in 0..n {
                let cand = add(a, from_x[v]);
                if cand < delta_t.get(u, v) {
                    delta_t.set(u, v, cand);
                }
            }
        }
    }
    Ok(FarDistances {
        delta_t,
        hitting_set: x_set,
        t,
    })
}
