//! Deterministic threshold APSP for weights in `{1..M}`.
//!
//! `A_k[u,v] = (δ(u,v) <= k)`. A shortest path of weight at most `k` splits
//! at its first vertex `w` with `δ(u,w) >= ⌊(k-M)/2⌋`, so
//! `A_k = ∨_{i=⌊(k-M)/2⌋}^{⌈(k+M)/2⌉} A_i·A_{k-i}`. Unfolding this from
//! `k = d` touches only the index set `F(d,M)`, which splits into levels of
//! at most `2M+3` consecutive integers. Each level is produced from the one
//! below by a single polynomial-matrix squaring; indices `<= M+1` come from
//! a bounded min-plus closure.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::{to_weight_matrix, Graph};
use crate::matprod::{dist_product_fast, min_merge, poly_square, truncate, PolyMatrix};
use crate::matrix::{BoolMatrix, INF};

/// The recursive index set `F(k, M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSet {
    pub members: BTreeSet<i64>,
    pub k: i64,
    pub bound: i64,
}

impl FSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Maximal runs of consecutive members, ascending.
    pub fn intervals(&self) -> Vec<RangeInclusive<i64>> {
        let mut out: Vec<RangeInclusive<i64>> = Vec::new();
        for &x in &self.members {
            match out.last_mut() {
                Some(r) if *r.end() + 1 == x => *r = *r.start()..=x,
                _ => out.push(x..=x),
            }
        }
        out
    }
}

/// Index range `⌊(k-M)/2⌋ ..= ⌈(k+M)/2⌉` of the split for `A_k`.
pub fn split_range(k: i64, bound: i64) -> RangeInclusive<i64> {
    (k - bound).div_euclid(2)..=(k + bound + 1).div_euclid(2)
}

pub fn is_primal(k: i64, bound: i64) -> bool {
    k <= bound + 1
}

/// `F(k,M) = {0..k}` if `k <= M+1`, else `{k} ∪ ⋃_{i ∈ split_range(k)} F(i,M)`.
pub fn f_set(k: i64, bound: i64) -> Result<FSet> {
    if k < 0 || bound < 1 {
        return Err(Error::Parameter(format!("F(k,M) needs k >= 0 and M >= 1, got ({k},{bound})")));
    }
    // every primal index reached contributes {0..i}; the largest one suffices
    let mut members = BTreeSet::new();
    let mut max_primal = None;
    let mut stack = vec![k];
    while let Some(i) = stack.pop() {
        if is_primal(i, bound) {
            max_primal = max_primal.max(Some(i));
            continue;
        }
        if members.insert(i) {
            stack.extend(split_range(i, bound));
        }
    }
    if let Some(p) = max_primal {
        members.extend(0..=p);
    }
    Ok(FSet { members, k, bound })
}

/// Levels of the recursion tree for `F(d,M)`: level 0 is `{d}` and level
/// `j+1` is the union of the split ranges of the non-primal members of
/// level `j`. The last level is all primal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPlan {
    pub levels: Vec<RangeInclusive<i64>>,
    pub d: i64,
    pub bound: i64,
}

impl LevelPlan {
    /// `0..=M+1`
    pub fn primal(&self) -> RangeInclusive<i64> {
        0..=self.bound + 1
    }
}

pub fn level_plan(d: i64, bound: i64) -> Result<LevelPlan> {
    if d < 0 || bound < 1 {
        return Err(Error::Parameter(format!("level plan needs d >= 0 and M >= 1, got ({d},{bound})")));
    }
    let mut levels = vec![d..=d];
    loop {
        let cur = levels.last().expect("nonempty").clone();
        let first_non_primal = (*cur.start()).max(bound + 2);
        if first_non_primal > *cur.end() {
            break;
        }
        // split ranges of consecutive k overlap, so the union is one interval
        let lo = *split_range(first_non_primal, bound).start();
        let hi = *split_range(*cur.end(), bound).end();
        levels.push(lo..=hi);
    }
    Ok(LevelPlan { levels, d, bound })
}

/// `A_k` for indices in some set.
pub type AkFamily = BTreeMap<i64, BoolMatrix>;

/// `A_0..A_{M+1}` from the distances that are at most `M+1`. Every such
/// distance uses at most `M+1` edges and all its prefixes stay at most
/// `M+1`, so truncated min-plus squaring finds them.
pub fn primal_distances(g: &Graph, cfg: &Config) -> Result<AkFamily> {
    g.require_positive()?;
    let n = g.n();
    let cap = g.bound() + 1;
    let mut d = truncate(&to_weight_matrix(g), cap);
    let rounds = (64 - (cap as u64).leading_zeros()) as usize + 1; // ⌈log₂(M+1)⌉ + 1 or more
    for _ in 0..rounds {
        let sq = dist_product_fast(&d, &d, cap, cfg)?;
        d = truncate(&min_merge(&d, &sq)?, cap);
    }
    let mut fam = AkFamily::new();
    fam.insert(0, BoolMatrix::identity(n));
    for k in 1..=cap {
        fam.insert(
            k,
            BoolMatrix::from_fn(n, |u, v| {
                let e = d.get(u, v);
                e != INF && e <= k
            }),
        );
    }
    Ok(fam)
}

/// Produces `A_k` for every `k` in `targets` from the family `source`
/// covering the next level down (with primal indices served from `primal`).
///
/// The source interval `{t..t+s-1}` is packed into one polynomial matrix
/// `B = Σ_q A_{t+q} x^q`; the coefficient of `x^(k-2t)` in `B²` is the OR
/// of `A_i·A_{k-i}` over split points inside the interval. When
/// `short_path_or` is set, `A_t` is OR-ed into every target `k >= t`.
pub fn level_step(
    source: &AkFamily,
    primal: &AkFamily,
    source_range: RangeInclusive<i64>,
    targets: RangeInclusive<i64>,
    bound: i64,
    short_path_or: bool,
    cfg: &Config,
) -> Result<AkFamily> {
    let fetch = |i: i64| -> Result<&BoolMatrix> {
        if is_primal(i, bound) {
            primal.get(&i).ok_or(Error::MissingSource(i))
        } else {
            source.get(&i).ok_or(Error::MissingSource(i))
        }
    };
    let mut out = AkFamily::new();
    let needs_product = targets.clone().any(|k| !is_primal(k, bound));
    let squared = if needs_product {
        let layers: Vec<&BoolMatrix> = source_range.clone().map(fetch).collect::<Result<_>>()?;
        Some(poly_square(&PolyMatrix::from_layers(&layers), cfg)?)
    } else {
        None
    };
    let t = *source_range.start();
    for k in targets {
        if is_primal(k, bound) {
            out.insert(k, fetch(k)?.clone());
            continue;
        }
        let c = squared.as_ref().expect("product computed for non-primal targets");
        let q = k - 2 * t;
        let mut a = if q >= 0 { c.layer(q as usize) } else { BoolMatrix::new(c.n()) };
        if short_path_or && t <= k {
            a.or_assign(fetch(t)?);
        }
        out.insert(k, a);
    }
    Ok(out)
}

/// Runs the level recursion; returns `A_k` for every `k` in level 0 and
/// the whole computed family keyed by level.
pub fn threshold_family(g: &Graph, d: i64, short_path_or: bool, cfg: &Config) -> Result<Vec<AkFamily>> {
    let primal = primal_distances(g, cfg)?;
    let plan = level_plan(d.max(0), g.bound())?;
    let depth = plan.levels.len();
    let mut families: Vec<AkFamily> = vec![AkFamily::new(); depth];
    for j in (0..depth).rev() {
        let targets = plan.levels[j].clone();
        families[j] = if j + 1 == depth {
            targets
                .map(|k| Ok((k, primal.get(&k).ok_or(Error::MissingSource(k))?.clone())))
                .collect::<Result<_>>()?
        } else {
            level_step(
                &families[j + 1],
                &primal,
                plan.levels[j + 1].clone(),
                targets,
                g.bound(),
                short_path_or,
                cfg,
            )?
        };
    }
    Ok(families)
}

/// All ordered pairs with `δ(u,v) <= d`; deterministic.
pub fn threshold_apsp_pos(g: &Graph, d: i64, cfg: &Config) -> Result<BoolMatrix> {
    g.require_positive()?;
    if d < 0 {
        return Ok(BoolMatrix::new(g.n()));
    }
    if is_primal(d, g.bound()) {
        let primal = primal_distances(g, cfg)?;
        return Ok(primal[&d].clone());
    }
    let families = threshold_family(g, d, true, cfg)?;
    families[0].get(&d).cloned().ok_or(Error::MissingSource(d))
}
