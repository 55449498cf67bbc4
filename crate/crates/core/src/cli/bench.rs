//! `bench`: one CSV row per (n, M, algorithm).

use std::io::Write;
use std::time::Instant;

use clap::{Args, ValueEnum};

use super::GlobalArgs;
use crate::diameter::{diameter, Mode};
use crate::error::Result;
use crate::graph::{gen_random, to_weight_matrix, GenParams, Graph};
use crate::matprod::{dist_product_fast, dist_product_naive};
use crate::matrix::INF;
use crate::ops;
use crate::oracle;
use crate::rng::Rng;
use crate::threshold_neg::threshold_apsp_neg;
use crate::threshold_pos::threshold_apsp_pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Oracle,
    NaiveProduct,
    FastProduct,
    ThresholdPos,
    ThresholdNeg,
    DiameterPos,
    DiameterNeg,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Oracle => "oracle",
            Algo::NaiveProduct => "naive-product",
            Algo::FastProduct => "fast-product",
            Algo::ThresholdPos => "threshold-pos",
            Algo::ThresholdNeg => "threshold-neg",
            Algo::DiameterPos => "diameter-pos",
            Algo::DiameterNeg => "diameter-neg",
        }
    }

    fn mixed_sign(self) -> bool {
        matches!(self, Algo::ThresholdNeg | Algo::DiameterNeg)
    }
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    /// Vertex counts.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [16usize, 32, 64])]
    pub sizes: Vec<usize>,
    /// Weight bounds M.
    #[arg(long = "m", value_delimiter = ',', default_values_t = [1i64, 4])]
    pub bounds: Vec<i64>,
    #[arg(long = "algo", value_enum, value_delimiter = ',', default_values_t = [Algo::Oracle])]
    pub algos: Vec<Algo>,
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    /// Leave out the wall-time column so the output is reproducible.
    #[arg(long)]
    pub no_time: bool,
}

/// Median of the finite off-diagonal oracle distances.
fn median_distance(g: &Graph) -> Result<i64> {
    let dist = oracle::floyd_warshall(&to_weight_matrix(g))?;
    let n = g.n();
    let mut v: Vec<i64> = (0..n)
        .flat_map(|u| (0..n).filter(move |&w| w != u).map(move |w| (u, w)))
        .map(|(u, w)| dist.get(u, w))
        .filter(|&x| x != INF)
        .collect();
    v.sort_unstable();
    Ok(v.get(v.len() / 2).copied().unwrap_or(0))
}

pub fn run(g: &GlobalArgs, args: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = g.config();
    if args.no_time {
        writeln!(out, "n,M,algorithm,ring_mults,ring_mult_bits,relaxations")?;
    } else {
        writeln!(out, "n,M,algorithm,wall_ms,ring_mults,ring_mult_bits,relaxations")?;
    }
    for &n in &args.sizes {
        for &m in &args.bounds {
            for &algo in &args.algos {
                let (wmin, no_neg) = if algo.mixed_sign() { (-m, true) } else { (1, false) };
                let graph = gen_random(&GenParams {
                    n,
                    density: args.density,
                    wmin,
                    wmax: m,
                    seed: g.seed,
                    no_negative_cycle: no_neg,
                })?;
                let d = match algo {
                    Algo::ThresholdPos | Algo::ThresholdNeg => median_distance(&graph)?,
                    _ => 0,
                };
                let w = to_weight_matrix(&graph);
                let rng = Rng::new(g.seed);
                ops::reset();
                let start = Instant::now();
                match algo {
                    Algo::Oracle => {
                        oracle::floyd_warshall(&w)?;
                    }
                    Algo::NaiveProduct => {
                        dist_product_naive(&w, &w)?;
                    }
                    Algo::FastProduct => {
                        dist_product_fast(&w, &w, graph.bound(), &cfg)?;
                    }
                    Algo::ThresholdPos => {
                        threshold_apsp_pos(&graph, d, &cfg)?;
                    }
                    Algo::ThresholdNeg => {
                        threshold_apsp_neg(&graph, d, &cfg, &rng)?;
                    }
                    Algo::DiameterPos => {
                        diameter(&graph, Mode::Positive, &cfg, &rng)?;
                    }
                    Algo::DiameterNeg => {
                        diameter(&graph, Mode::General, &cfg, &rng)?;
                    }
                }
                let wall = start.elapsed().as_secs_f64() * 1e3;
                let c = ops::snapshot();
                if args.no_time {
                    writeln!(out, "{n},{m},{},{},{},{}", algo.name(), c.ring_mults, c.ring_mult_bits, c.relaxations)?;
                } else {
                    writeln!(
                        out,
                        "{n},{m},{},{wall:.3},{},{},{}",
                        algo.name(),
                        c.ring_mults,
                        c.ring_mult_bits,
                        c.relaxations
                    )?;
                }
            }
        }
    }
    Ok(())
}
