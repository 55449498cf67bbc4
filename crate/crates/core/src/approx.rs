//! Additive approximation of near-pair distances from an RPDM.
//!
//! Dividing `P` by `k` (rounding up) shrinks entries so the distance
//! product through a sampled vertex set is cheap, at the price of an
//! overestimate of at most `2k` on pairs the sample covers.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::matprod::{dist_product_fast, scale_div_ceil};
use crate::matrix::{WeightMatrix, INF};
use crate::rng::Rng;
use crate::rpdm::Rpdm;
use crate::schedule::Level;

#[derive(Clone, Debug)]
pub struct ApproxResult {
    /// `k_i · Q_i`
    pub delta_star: WeightMatrix,
    pub level: Level,
    pub sample: Vec<usize>,
}

pub fn additive_approximate(rpdm: &Rpdm, level: &Level, rng: &mut Rng, cfg: &Config) -> Result<ApproxResult> {
    if (rpdm.beta - level.beta).abs() > 1e-9 || (rpdm.gamma - level.gamma).abs() > 1e-9 {
        return Err(Error::Parameter(format!(
            "RPDM built for (β,γ)=({},{}) but level {} needs ({},{})",
            rpdm.beta, rpdm.gamma, level.index, level.beta, level.gamma
        )));
    }
    let n = rpdm.n;
    let k = level.k;
    let r = scale_div_ceil(&rpdm.p, k)?;
    let all: Vec<usize> = (0..n).collect();
    let nf = n.max(1) as f64;
    let sample = rng.sample(&all, 12.0 * nf.powf(1.0 - level.gamma) * nf.ln());
    let left = r.select(&all, &sample);
    let right = r.select(&sample, &all);
    let bound = left.max_abs_finite().max(right.max_abs_finite());
    let q = dist_product_fast(&left, &right, bound, cfg)?;
    Ok(ApproxResult {
        delta_star: q.map(|e| if e == INF { INF } else { e * k }),
        level: level.clone(),
        sample,
    })
}
