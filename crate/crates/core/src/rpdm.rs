//! Redundant partial distance matrices.
//!
//! A `(β,γ)`-RPDM `P` has, for every pair with `c(u,v) <= n^(1-β)`, a
//! shortest path of `c(u,v)` edges on which every run of
//! `⌈n^(1-β-γ)⌉` edges contains some `x` with `P[u,x] + P[x,v] = δ(u,v)`.
//! [`build_rpdm`] builds one by truncated distance products routed through
//! a shrinking random bridging set; the `check_*` functions test the two
//! defining properties against exact tables.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::matprod::{dist_product_fast, truncate};
use crate::matrix::{add, WeightMatrix, INF};
use crate::rng::Rng;

#[derive(Clone, Debug)]
pub struct Rpdm {
    pub p: WeightMatrix,
    pub beta: f64,
    pub gamma: f64,
    /// Final bridging set (0-based, sorted).
    pub bridge_set: Vec<usize>,
    pub n: usize,
    pub bound: i64,
}

impl Rpdm {
    /// `⌈n^(1-β)⌉`-style edge-count limit of property 1, as a real.
    pub fn near_limit(&self) -> f64 {
        (self.n as f64).powf(1.0 - self.beta)
    }
}

/// `⌈log_{3/2} x⌉`, clamped at 0.
fn ceil_log_three_halves(x: f64) -> usize {
    if x <= 1.0 {
        return 0;
    }
    let v = x.ln() / 1.5f64.ln();
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        r as usize
    } else {
        v.ceil() as usize
    }
}

/// `⌈(3/2)^ℓ · M⌉` in exact integer arithmetic, saturating.
pub fn truncation_threshold(ell: usize, bound: i64) -> i64 {
    let mut num: u128 = bound as u128;
    let mut den: u128 = 1;
    for _ in 0..ell {
        num = num.saturating_mul(3);
        den = den.saturating_mul(2);
        if num > (i64::MAX as u128) / 4 {
            return i64::MAX / 8;
        }
    }
    let t = num.div_ceil(den);
    i64::try_from(t).unwrap_or(i64::MAX / 8).min(i64::MAX / 8)
}

/// Iteration counts of the two loops: `(⌈log_{3/2} n^(1-β-γ)⌉, ⌈log_{3/2} 2n^(1-β)⌉)`.
pub fn loop_bounds(n: usize, beta: f64, gamma: f64) -> (usize, usize) {
    let nf = n as f64;
    let first = ceil_log_three_halves(nf.powf(1.0 - beta - gamma));
    let last = ceil_log_three_halves(2.0 * nf.powf(1.0 - beta));
    (first, last.max(first))
}

/// One relaxation round with the current bridging set `b`:
/// `P[V,B] ←min ⟨P[V,B]⟩ ⋆ ⟨P[B,B]⟩`, then
/// `P[B,V] ←min ⟨P[B,B]⟩ ⋆ ⟨P[B,V]⟩` on the updated `P`.
fn relax_through(p: &mut WeightMatrix, all: &[usize], b: &[usize], threshold: i64, cfg: &Config) -> Result<()> {
    if b.is_empty() {
        return Ok(());
    }
    let vb = truncate(&p.select(all, b), threshold);
    let bb = truncate(&p.select(b, b), threshold);
    let left = dist_product_fast(&vb, &bb, threshold, cfg)?;
    p.min_assign_block(all, b, &left);

    let bb = truncate(&p.select(b, b), threshold);
    let bv = truncate(&p.select(b, all), threshold);
    let right = dist_product_fast(&bb, &bv, threshold, cfg)?;
    p.min_assign_block(b, all, &right);
    Ok(())
}

/// Builds a `(β,γ)`-RPDM from the weight matrix `w` (zero diagonal, no
/// negative cycles, weights in `[-M, M]`).
///
/// The first loop shrinks the bridging set to `9 n ln n / s` samples each
/// round with `s = (3/2)^ℓ`; the second keeps it fixed while `s` keeps
/// growing up to `2n^(1-β)`. Products are truncated at `⌈sM⌉`.
pub fn build_rpdm(w: &WeightMatrix, bound: i64, beta: f64, gamma: f64, rng: &mut Rng, cfg: &Config) -> Result<Rpdm> {
    build_rpdm_traced(w, bound, beta, gamma, rng, cfg, |_, _| {})
}

/// As [`build_rpdm`], calling `trace(ℓ, &P)` after every iteration.
pub fn build_rpdm_traced(
    w: &WeightMatrix,
    bound: i64,
    beta: f64,
    gamma: f64,
    rng: &mut Rng,
    cfg: &Config,
    mut trace: impl FnMut(usize, &WeightMatrix),
) -> Result<Rpdm> {
    if !(beta >= 0.0 && gamma >= 0.0 && beta + gamma <= 1.0 + 1e-12) {
        return Err(Error::Parameter(format!(
            "need β,γ >= 0 and β+γ <= 1, got β={beta}, γ={gamma}"
        )));
    }
    let n = w.n();
    let all: Vec<usize> = (0..n).collect();
    let mut b = all.clone();
    let mut p = w.clone();
    let (first, last) = loop_bounds(n, beta, gamma);
    let ln_n = (n.max(1) as f64).ln();
    for ell in 1..=last {
        let s = 1.5f64.powi(ell as i32);
        if ell <= first {
            b = rng.sample(&b, 9.0 * n as f64 * ln_n / s);
        }
        relax_through(&mut p, &all, &b, truncation_threshold(ell, bound), cfg)?;
        trace(ell, &p);
    }
    Ok(Rpdm {
        p,
        beta,
        gamma,
        bridge_set: b,
        n,
        bound,
    })
}

fn is_hit(p: &WeightMatrix, u: usize, x: usize, v: usize, target: i64) -> bool {
    add(p.get(u, x), p.get(x, v)) == target
}

/// Pairs `(u,v)` with finite `δ`, `c(u,v) <= n^(1-β)` and no `x` such that
/// `P[u,x] + P[x,v] = δ(u,v)`.
pub fn check_rpdm_property1(r: &Rpdm, dist: &WeightMatrix, cmat: &WeightMatrix) -> Vec<(usize, usize)> {
    let n = r.n;
    let limit = r.near_limit() + 1e-9;
    let mut bad = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let d = dist.get(u, v);
            let c = cmat.get(u, v);
            if d == INF || c == INF || c as f64 > limit {
                continue;
            }
            if !(0..n).any(|x| is_hit(&r.p, u, x, v, d)) {
                bad.push((u, v));
            }
        }
    }
    bad
}

/// Pairs `(u,v)` with finite `δ` and `c(u,v) <= n^(1-β)` for which no
/// shortest path of `c(u,v)` edges has a hit vertex in every window of
/// `segment` consecutive edges (the whole path when it is shorter).
///
/// Decided by a layered search over `(vertex, step, non-hit run length)`
/// along arcs that are tight for both `δ(u,·)` and `δ(·,v)`.
pub fn check_rpdm_property2(
    r: &Rpdm,
    w: &WeightMatrix,
    dist: &WeightMatrix,
    cmat: &WeightMatrix,
    segment: usize,
) -> Vec<(usize, usize)> {
    let n = r.n;
    let limit = r.near_limit() + 1e-9;
    let arcs: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| a != b && w.get(a, b) != INF)
                .map(|b| (b, w.get(a, b)))
                .collect()
        })
        .collect();
    let mut bad = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let d = dist.get(u, v);
            let c = cmat.get(u, v);
            if d == INF || c == INF || c as f64 > limit {
                continue;
            }
            if !has_covered_path(r, &arcs, dist, u, v, c as usize, segment.max(1)) {
                bad.push((u, v));
            }
        }
    }
    bad
}

fn has_covered_path(
    r: &Rpdm,
    arcs: &[Vec<(usize, i64)>],
    dist: &WeightMatrix,
    u: usize,
    v: usize,
    c: usize,
    segment: usize,
) -> bool {
    let n = r.n;
    let target = dist.get(u, v);
    // A window of `span` edges spans `span + 1` vertices; forbid that many
    // consecutive non-hits.
    let span = segment.min(c);
    let hit: Vec<bool> = (0..n).map(|x| is_hit(&r.p, u, x, v, target)).collect();
    // run[x] = shortest non-hit run ending at x over reachable states, or None
    let start_run = if hit[u] { 0 } else { 1 };
    if start_run > span {
        return false;
    }
    let mut layer: Vec<Option<usize>> = vec![None; n];
    layer[u] = Some(start_run);
    for _ in 0..c {
        let mut next: Vec<Option<usize>> = vec![None; n];
        for a in 0..n {
            let Some(run) = layer[a] else { continue };
            let da = dist.get(u, a);
            for &(b, wab) in &arcs[a] {
                let db = dist.get(u, b);
                if db == INF || da + wab != db || add(db, dist.get(b, v)) != target {
                    continue;
                }
                let nr = if hit[b] { 0 } else { run + 1 };
                if nr > span {
                    continue;
                }
                if next[b].is_none_or(|old| nr < old) {
                    next[b] = Some(nr);
                }
            }
        }
        layer = next;
    }
    layer[v].is_some()
}
