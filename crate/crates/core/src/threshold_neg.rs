//! Threshold APSP for weights in `{-M..M}` (randomized).
//!
//! 1. `δ_t` from a hitting set handles pairs whose shortest paths all have
//!    at least `t = ⌈n^(1-β)⌉` edges.
//! 2. Per level, an RPDM plus a scaled product gives `δ_i*`, within `2k_i`
//!    of `δ` for the level's edge-count range.
//! 3. `δ* = min(δ_t, δ_i*)` is within `K` of `δ`. Pairs with `δ* <= d` are
//!    reported, pairs with `δ* > d + K` are not, and the window in between
//!    is resolved exactly by a shifted product over each level's RPDM
//!    restricted to entries near `d/2`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::approx::{additive_approximate, ApproxResult};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::far_pairs::{compute_delta_t, FarDistances};
use crate::graph::{find_negative_cycle, to_weight_matrix, transitive_closure, Graph};
use crate::matprod::{dist_product_fast, min_merge, window_shift};
use crate::matrix::{BoolMatrix, WeightMatrix, INF};
use crate::oracle;
use crate::rng::Rng;
use crate::rpdm::{build_rpdm, Rpdm};
use crate::schedule::{build_schedule, LevelSchedule};

#[derive(Clone, Debug)]
pub struct DeltaStar {
    pub delta_star: WeightMatrix,
    /// `K = ⌈2M·n^(1-β-γ)⌉`
    pub window: i64,
}

/// How each pair was decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PhaseStats {
    /// Trivial cases (`d` outside `[-nM, nM]`, `n = 1`) skip the phases.
    pub trivial: bool,
    pub accepted: usize,
    pub rejected: usize,
    pub window: usize,
    pub window_reported: usize,
    pub levels: usize,
    /// Runs performed by the verifying wrapper (1 without retries).
    pub attempts: usize,
    /// Whether the final report was checked against the oracle.
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct ThresholdReport {
    pub reported: BoolMatrix,
    /// Exact `δ` for every pair in the uncertainty window.
    pub resolved_window: BTreeMap<(usize, usize), i64>,
    pub stats: PhaseStats,
}

impl ThresholdReport {
    fn trivial(reported: BoolMatrix) -> Self {
        Self {
            reported,
            resolved_window: BTreeMap::new(),
            stats: PhaseStats {
                trivial: true,
                attempts: 1,
                ..PhaseStats::default()
            },
        }
    }
}

/// `δ* = min(δ_t, min_i δ_i*)` with the diagonal pinned to 0.
pub fn combine_delta_star(far: &FarDistances, approxes: &[ApproxResult], window: i64) -> Result<DeltaStar> {
    let mut acc = far.delta_t.clone();
    for a in approxes {
        acc = min_merge(&acc, &a.delta_star)?;
    }
    for v in 0..acc.n() {
        acc.set(v, v, 0);
    }
    Ok(DeltaStar {
        delta_star: acc,
        window,
    })
}

/// Exact distances for window pairs at one level: keep entries of `P` in
/// `[⌈d/2⌉-K, ⌊d/2⌋+K]` shifted down by `⌊d/2 - K⌋`, square, and shift back.
/// Every finite output is the weight of a two-leg walk, so never below `δ`.
pub fn target_distances(p: &WeightMatrix, d: i64, window: i64, cfg: &Config) -> Result<WeightMatrix> {
    let lo = d.div_euclid(2) + d.rem_euclid(2) - window;
    let hi = d.div_euclid(2) + window;
    let shift = d.div_euclid(2) - window;
    let s = window_shift(p, lo, hi, shift);
    let r = dist_product_fast(&s, &s, 2 * window, cfg)?;
    Ok(r.map(|e| if e == INF { INF } else { e + 2 * shift }))
}

/// The `d`-independent part of the computation.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub schedule: LevelSchedule,
    pub far: FarDistances,
    pub rpdms: Vec<Rpdm>,
    pub approxes: Vec<ApproxResult>,
    pub delta_star: DeltaStar,
}

/// Builds `δ_t`, every level's RPDM and approximation, and `δ*`. Requires
/// `n >= 2` and no negative cycle.
pub fn prepare(g: &Graph, cfg: &Config, rng: &Rng) -> Result<Prepared> {
    let n = g.n();
    let schedule = build_schedule(n, g.bound(), cfg)?;
    let far = compute_delta_t(g, schedule.far_threshold(), &mut rng.derive(0), cfg)?;
    let w = to_weight_matrix(g);
    let per_level: Vec<(Rpdm, ApproxResult)> = schedule
        .levels
        .par_iter()
        .map(|level| {
            let i = level.index as u64;
            let rpdm = build_rpdm(&w, g.bound(), level.beta, level.gamma, &mut rng.derive(2 * i + 1), cfg)?;
            let approx = additive_approximate(&rpdm, level, &mut rng.derive(2 * i + 2), cfg)?;
            Ok((rpdm, approx))
        })
        .collect::<Result<_>>()?;
    let (rpdms, approxes): (Vec<_>, Vec<_>) = per_level.into_iter().unzip();
    let delta_star = combine_delta_star(&far, &approxes, schedule.window())?;
    Ok(Prepared {
        schedule,
        far,
        rpdms,
        approxes,
        delta_star,
    })
}

impl Prepared {
    /// Window pairs `d < δ* <= d + K`.
    pub fn window_pairs(&self, d: i64) -> Vec<(usize, usize)> {
        let ds = &self.delta_star.delta_star;
        let k = self.delta_star.window;
        let n = ds.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                let e = ds.get(u, v);
                if e != INF && e > d && e - d <= k {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Classifies every pair against `d`.
    pub fn classify(&self, d: i64, cfg: &Config) -> Result<ThresholdReport> {
        let ds = &self.delta_star.delta_star;
        let k = self.delta_star.window;
        let n = ds.n();
        let mut reported = BoolMatrix::new(n);
        let mut stats = PhaseStats {
            levels: self.rpdms.len(),
            attempts: 1,
            ..PhaseStats::default()
        };
        for u in 0..n {
            for v in 0..n {
                let e = ds.get(u, v);
                if e <= d {
                    reported.set(u, v, true);
                    stats.accepted += 1;
                } else if e == INF || e - d > k {
                    stats.rejected += 1;
                }
            }
        }
        let window = self.window_pairs(d);
        stats.window = window.len();
        let mut resolved_window = BTreeMap::new();
        if !window.is_empty() {
            let targets: Vec<WeightMatrix> = self
                .rpdms
                .par_iter()
                .map(|r| target_distances(&r.p, d, k, cfg))
                .collect::<Result<_>>()?;
            for (u, v) in window {
                let exact = targets
                    .iter()
                    .map(|t| t.get(u, v))
                    .fold(self.far.delta_t.get(u, v), i64::min);
                resolved_window.insert((u, v), exact);
                if exact <= d {
                    reported.set(u, v, true);
                    stats.window_reported += 1;
                }
            }
        }
        Ok(ThresholdReport {
            reported,
            resolved_window,
            stats,
        })
    }
}

fn single_run(g: &Graph, d: i64, cfg: &Config, rng: &Rng) -> Result<ThresholdReport> {
    let n = g.n();
    let nm = n as i64 * g.bound();
    if d < -nm {
        return Ok(ThresholdReport::trivial(BoolMatrix::new(n)));
    }
    if d > nm {
        return Ok(ThresholdReport::trivial(transitive_closure(g)));
    }
    if n < 2 {
        let mut m = BoolMatrix::new(n);
        if n == 1 && d >= 0 {
            m.set(0, 0, true);
        }
        return Ok(ThresholdReport::trivial(m));
    }
    prepare(g, cfg, rng)?.classify(d, cfg)
}

/// All ordered pairs with `δ(u,v) <= d`. Monte Carlo; with `cfg.verify`
/// and `n <= cfg.verify_limit` the report is checked against the oracle
/// and recomputed from fresh derived seeds until it matches.
pub fn threshold_apsp_neg(g: &Graph, d: i64, cfg: &Config, rng: &Rng) -> Result<ThresholdReport> {
    if let Some(cycle) = find_negative_cycle(g) {
        return Err(Error::NegativeCycle(cycle));
    }
    if !cfg.verify || g.n() > cfg.verify_limit {
        return single_run(g, d, cfg, rng);
    }
    let truth = oracle::brute_threshold(&oracle::floyd_warshall(&to_weight_matrix(g))?, d);
    let attempts = cfg.max_attempts.max(1);
    let mut last = None;
    for attempt in 0..attempts {
        let stream = if attempt == 0 { rng.clone() } else { rng.derive(1_000_000 + attempt as u64) };
        let mut report = single_run(g, d, cfg, &stream)?;
        report.stats.attempts = attempt + 1;
        report.stats.verified = report.reported == truth;
        if report.stats.verified {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one attempt"))
}
