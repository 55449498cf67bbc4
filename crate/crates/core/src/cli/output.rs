//! Text and JSON renderings. Vertices are printed 1-based, as in the input
//! format.
//!
//! JSON schema (one object per command, keys in this order):
//!
//! * `threshold`: `command, mode, n, d, pair_count, pairs?, stats?, verified?, trace?`
//! * `diameter`: `command, mode, n, diameter (null if infinite), infinite,
//!   witnesses, searches, probes?, verified?`
//! * `oracle`: `command, n, diameter, infinite, witnesses, threshold?`

use std::io::Write;

use serde::Serialize;

use crate::diameter::{DiameterResult, Mode, Probe};
use crate::error::Result;
use crate::matrix::BoolMatrix;
use crate::threshold_neg::PhaseStats;

fn one_based(pairs: &[(usize, usize)]) -> Vec<[usize; 2]> {
    pairs.iter().map(|&(u, v)| [u + 1, v + 1]).collect()
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::General => "general",
        Mode::Positive => "positive",
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| crate::Error::Io(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn write_pairs(out: &mut dyn Write, pairs: &[[usize; 2]]) -> Result<()> {
    for [u, v] in pairs {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct ThresholdOutput {
    pub command: &'static str,
    pub mode: &'static str,
    pub n: usize,
    pub d: i64,
    pub pair_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<PhaseStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

impl ThresholdOutput {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        mode: Mode,
        n: usize,
        d: i64,
        reported: &BoolMatrix,
        list: bool,
        stats: Option<PhaseStats>,
        verified: Option<bool>,
        trace: Vec<String>,
    ) -> Self {
        Self {
            command: "threshold",
            mode: mode_name(mode),
            n,
            d,
            pair_count: reported.count_ones(),
            pairs: list.then(|| one_based(&reported.pairs())),
            stats,
            verified,
            trace,
        }
    }

    pub fn write(&self, out: &mut dyn Write, json: bool) -> Result<()> {
        if json {
            return write_json(out, self);
        }
        writeln!(out, "mode {}", self.mode)?;
        writeln!(out, "n {}", self.n)?;
        writeln!(out, "d {}", self.d)?;
        writeln!(out, "pairs {}", self.pair_count)?;
        if let Some(s) = &self.stats {
            writeln!(
                out,
                "accepted {} rejected {} window {} window_reported {} levels {} attempts {}",
                s.accepted, s.rejected, s.window, s.window_reported, s.levels, s.attempts
            )?;
        }
        if let Some(v) = self.verified {
            writeln!(out, "verified {}", if v { "yes" } else { "no" })?;
        }
        for line in &self.trace {
            writeln!(out, "trace {line}")?;
        }
        if let Some(p) = &self.pairs {
            write_pairs(out, p)?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct DiameterOutput {
    pub command: &'static str,
    pub mode: &'static str,
    pub n: usize,
    pub diameter: Option<i64>,
    pub infinite: bool,
    /// Pairs attaining the diameter, or the unreachable pairs if infinite.
    pub witnesses: Vec<[usize; 2]>,
    pub searches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<Probe>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl DiameterOutput {
    pub fn new(mode: Mode, n: usize, r: &DiameterResult, trace: bool, verified: Option<bool>) -> Self {
        Self {
            command: "diameter",
            mode: mode_name(mode),
            n,
            diameter: r.value,
            infinite: r.value.is_none(),
            witnesses: one_based(&r.witnesses),
            searches: r.searches,
            probes: trace.then(|| r.probes.clone()),
            verified,
        }
    }

    pub fn write(&self, out: &mut dyn Write, json: bool) -> Result<()> {
        if json {
            return write_json(out, self);
        }
        writeln!(out, "mode {}", self.mode)?;
        writeln!(out, "n {}", self.n)?;
        match self.diameter {
            Some(v) => writeln!(out, "diameter {v}")?,
            None => writeln!(out, "diameter inf")?,
        }
        if let Some(v) = self.verified {
            writeln!(out, "verified {}", if v { "yes" } else { "no" })?;
        }
        if let Some(probes) = &self.probes {
            for p in probes {
                writeln!(out, "probe d {} all {}", p.d, if p.all_reported { "yes" } else { "no" })?;
            }
        }
        let label = if self.infinite { "unreachable" } else { "witnesses" };
        writeln!(out, "{label} {}", self.witnesses.len())?;
        write_pairs(out, &self.witnesses)
    }
}

#[derive(Debug, Serialize)]
struct OracleThreshold {
    d: i64,
    pair_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<[usize; 2]>>,
}

#[derive(Debug, Serialize)]
struct OracleOutput {
    command: &'static str,
    n: usize,
    diameter: Option<i64>,
    infinite: bool,
    witnesses: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<OracleThreshold>,
}

pub(super) fn write_oracle(
    out: &mut dyn Write,
    json: bool,
    n: usize,
    value: Option<i64>,
    witnesses: &[(usize, usize)],
    threshold: Option<&(i64, BoolMatrix)>,
    list: bool,
) -> Result<()> {
    let o = OracleOutput {
        command: "oracle",
        n,
        diameter: value,
        infinite: value.is_none(),
        witnesses: one_based(witnesses),
        threshold: threshold.map(|(d, m)| OracleThreshold {
            d: *d,
            pair_count: m.count_ones(),
            pairs: list.then(|| one_based(&m.pairs())),
        }),
    };
    if json {
        return write_json(out, &o);
    }
    writeln!(out, "n {}", o.n)?;
    match o.diameter {
        Some(v) => writeln!(out, "diameter {v}")?,
        None => writeln!(out, "diameter inf")?,
    }
    let label = if o.infinite { "unreachable" } else { "witnesses" };
    writeln!(out, "{label} {}", o.witnesses.len())?;
    write_pairs(out, &o.witnesses)?;
    if let Some(t) = &o.threshold {
        writeln!(out, "d {}", t.d)?;
        writeln!(out, "pairs {}", t.pair_count)?;
        if let Some(p) = &t.pairs {
            write_pairs(out, p)?;
        }
    }
    Ok(())
}
