//! Diameter by binary search over threshold queries.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::{transitive_closure, Graph};
use crate::matrix::BoolMatrix;
use crate::rng::Rng;
use crate::threshold_neg::threshold_apsp_neg;
use crate::threshold_pos::threshold_apsp_pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Weights in `{-M..M}`, randomized.
    General,
    /// Weights in `{1..M}`, deterministic.
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub d: i64,
    pub all_reported: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterResult {
    /// `None` when some ordered pair is unreachable.
    pub value: Option<i64>,
    /// Pairs attaining the value (0-based), or the unreachable pairs.
    pub witnesses: Vec<(usize, usize)>,
    pub probes: Vec<Probe>,
    /// Binary searches run (more than 1 only after a non-monotone trace).
    pub searches: usize,
}

/// One threshold query in the given mode. General-mode probe `index` uses
/// its own derived stream.
pub fn report(g: &Graph, d: i64, mode: Mode, cfg: &Config, rng: &Rng, index: u64) -> Result<BoolMatrix> {
    match mode {
        Mode::Positive => threshold_apsp_pos(g, d, cfg),
        Mode::General => Ok(threshold_apsp_neg(g, d, cfg, &rng.derive(index))?.reported),
    }
}

fn check_mode(g: &Graph, mode: Mode) -> Result<()> {
    match mode {
        Mode::Positive => g.require_positive(),
        Mode::General => match crate::graph::find_negative_cycle(g) {
            Some(c) => Err(Error::NegativeCycle(c)),
            None => Ok(()),
        },
    }
}

/// Smallest `d` at which every ordered pair is reported. Binary search over
/// `[lo, M(n-1)]` with `lo = 0` (positive) or `-nM` (general).
pub fn diameter(g: &Graph, mode: Mode, cfg: &Config, rng: &Rng) -> Result<DiameterResult> {
    check_mode(g, mode)?;
    let n = g.n();
    let closure = transitive_closure(g);
    if !closure.is_full() {
        let unreachable = BoolMatrix::full(n).difference(&closure).pairs();
        return Ok(DiameterResult {
            value: None,
            witnesses: unreachable,
            probes: Vec::new(),
            searches: 0,
        });
    }
    let m = g.bound();
    let hi_start = m * (n as i64 - 1).max(0);
    let lo_start = match mode {
        Mode::Positive => 0,
        Mode::General => -(n as i64) * m,
    };
    let max_searches = match mode {
        Mode::Positive => 1,
        Mode::General => cfg.max_attempts.max(1),
    };
    let mut probes = Vec::new();
    let mut searches = 0;
    let mut value = hi_start;
    for search in 0..max_searches {
        searches += 1;
        let search_rng = if search == 0 { rng.clone() } else { rng.derive(500_000 + search as u64) };
        let start = probes.len();
        let (mut lo, mut hi) = (lo_start, hi_start);
        let mut index = 0u64;
        while lo < hi {
            let mid = lo + (hi - lo).div_euclid(2);
            let all = report(g, mid, mode, cfg, &search_rng, index)?.is_full();
            index += 1;
            probes.push(Probe { d: mid, all_reported: all });
            if all {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        value = lo;
        if mode == Mode::Positive || trace_is_monotone(&probes[start..]) {
            if mode == Mode::General && cfg.verify {
                // confirm the answer with fresh streams
                let at = report(g, value, mode, cfg, &search_rng, 900_000)?.is_full();
                let below = value > lo_start && report(g, value - 1, mode, cfg, &search_rng, 900_001)?.is_full();
                if !at || below {
                    continue;
                }
            }
            break;
        }
    }
    let witnesses = diameter_witnesses(g, value, mode, cfg, rng)?;
    Ok(DiameterResult {
        value: Some(value),
        witnesses,
        probes,
        searches,
    })
}

/// True iff every probe reporting all pairs lies above every probe that did not.
pub fn trace_is_monotone(probes: &[Probe]) -> bool {
    let max_false = probes.iter().filter(|p| !p.all_reported).map(|p| p.d).max();
    let min_true = probes.iter().filter(|p| p.all_reported).map(|p| p.d).min();
    match (max_false, min_true) {
        (Some(f), Some(t)) => f < t,
        _ => true,
    }
}

/// Pairs reported at `d` but not at `d - 1`; errors when there are none,
/// which means `d` is not the diameter.
pub fn diameter_witnesses(g: &Graph, d: i64, mode: Mode, cfg: &Config, rng: &Rng) -> Result<Vec<(usize, usize)>> {
    let at = report(g, d, mode, cfg, rng, 800_000)?;
    let below = report(g, d - 1, mode, cfg, rng, 800_001)?;
    let diff = at.difference(&below).pairs();
    if diff.is_empty() {
        return Err(Error::NotDiameter(d));
    }
    Ok(diff)
}
