//! Split point between "far" pairs (many edges on every shortest path) and
//! "near" pairs, and the per-level parameters for the near pairs.
//!
//! With `t_0 = n^(1-β)`, level `i` handles pairs whose minimum edge count
//! lies in `[t_i/2, t_i)` where `t_i = t_0 / 2^i`. Its redundancy exponent
//! satisfies `n^γ_i = t_i^((ω-1)/ω)`, so `n^(1-β_i-γ_i) = t_i^(1/ω)`.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Level {
    pub index: usize,
    pub t: f64,
    pub beta: f64,
    pub gamma: f64,
    /// `⌈M·n^(1-β_i-γ_i)⌉`
    pub k: i64,
    /// `M·n^(1-β_i-γ_i)` before rounding.
    pub k_real: f64,
}

impl Level {
    /// Segment length `⌈n^(1-β_i-γ_i)⌉` used by the redundancy property.
    pub fn segment_len(&self, n: usize) -> usize {
        ceil_len((n as f64).powf(1.0 - self.beta - self.gamma))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelSchedule {
    pub n: usize,
    pub bound: i64,
    pub omega: f64,
    pub beta: f64,
    /// `γ_0`
    pub gamma: f64,
    pub levels: Vec<Level>,
}

impl LevelSchedule {
    /// `t_0 = n^(1-β)`
    pub fn t0(&self) -> f64 {
        (self.n as f64).powf(1.0 - self.beta)
    }

    /// Integer edge-count threshold for the far-pair pass, `⌈n^(1-β)⌉`.
    pub fn far_threshold(&self) -> usize {
        ceil_len(self.t0())
    }

    /// Window half-width `K = ⌈2M·n^(1-β-γ)⌉`.
    pub fn window(&self) -> i64 {
        (2.0 * self.bound as f64 * (self.n as f64).powf(1.0 - self.beta - self.gamma)).ceil() as i64
    }

    /// True iff every edge count in `[1, far_threshold)` falls in some level's
    /// `[t_i/2, t_i)`.
    pub fn covers_near_pairs(&self) -> bool {
        (1..self.far_threshold()).all(|c| self.level_for(c).is_some())
    }

    /// The level whose range contains edge count `c`.
    pub fn level_for(&self, c: usize) -> Option<&Level> {
        let c = c as f64;
        self.levels.iter().find(|l| l.t / 2.0 <= c && c < l.t)
    }
}

fn ceil_len(x: f64) -> usize {
    // shave float noise so that an exact power like 4.0000000001 stays 4
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r.max(1.0) as usize
    } else {
        x.ceil().max(1.0) as usize
    }
}

fn check_params(n: usize, bound: i64, omega: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::Parameter(format!("schedule needs n >= 2, got {n}")));
    }
    if bound < 1 {
        return Err(Error::Parameter(format!("weight bound must be positive, got {bound}")));
    }
    if !(2.0..=3.0).contains(&omega) {
        return Err(Error::Parameter(format!("omega {omega} outside [2,3]")));
    }
    Ok(())
}

/// `β` from `n^β = M^(ω/(ω+1)) · n^((ω-1)²/(ω+1))`, clamped into `[0, 1]`.
pub fn compute_beta(n: usize, bound: i64, omega: f64) -> Result<f64> {
    check_params(n, bound, omega)?;
    let log_n_m = (bound as f64).ln() / (n as f64).ln();
    let beta = omega / (omega + 1.0) * log_n_m + (omega - 1.0).powi(2) / (omega + 1.0);
    Ok(beta.clamp(0.0, 1.0))
}

fn make_level(index: usize, n: usize, bound: i64, omega: f64, t0: f64) -> Level {
    let ln_n = (n as f64).ln();
    let t = t0 / 2f64.powi(index as i32);
    let beta = 1.0 - t.ln() / ln_n;
    let gamma = (1.0 - beta) * (omega - 1.0) / omega;
    let k_real = bound as f64 * t.powf(1.0 / omega);
    Level {
        index,
        t,
        beta,
        gamma,
        k: (k_real.ceil() as i64).max(1),
        k_real,
    }
}

/// Levels `i = 0..=⌊(1-β) log₂ n⌋`, extended if needed until every near
/// edge count is covered.
pub fn build_schedule(n: usize, bound: i64, cfg: &Config) -> Result<LevelSchedule> {
    let omega = cfg.omega;
    let beta = match cfg.force_beta {
        Some(b) if (0.0..=1.0).contains(&b) => {
            check_params(n, bound, omega)?;
            b
        }
        Some(b) => return Err(Error::Parameter(format!("forced beta {b} outside [0,1]"))),
        None => compute_beta(n, bound, omega)?,
    };
    let t0 = (n as f64).powf(1.0 - beta);
    let default_count = ((1.0 - beta) * (n as f64).log2() + 1e-9).floor() as usize + 1;
    let count = cfg.force_levels.unwrap_or(default_count).max(1);
    let mut sched = LevelSchedule {
        n,
        bound,
        omega,
        beta,
        gamma: (1.0 - beta) * (omega - 1.0) / omega,
        levels: (0..count).map(|i| make_level(i, n, bound, omega, t0)).collect(),
    };
    while !sched.covers_near_pairs() {
        let i = sched.levels.len();
        sched.levels.push(make_level(i, n, bound, omega, t0));
    }
    Ok(sched)
}
