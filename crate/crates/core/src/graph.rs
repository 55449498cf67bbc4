//! Directed integer-weighted graphs: text I/O, random instances,
//! Bellman–Ford cycle detection, Johnson potentials and reachability.
//!
//! Vertices are 0-based in memory and 1-based in files and error messages.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::{BoolMatrix, WeightMatrix, INF};
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: i64,
}

/// Simple digraph: no self-loops, at most one arc per ordered pair, every
/// `|weight| <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    bound: i64,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph; parallel arcs collapse to the lightest one and the
    /// edge list is kept sorted by `(from, to)`.
    pub fn new(n: usize, bound: i64, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if bound < 1 {
            return Err(Error::Parameter(format!("weight bound must be positive, got {bound}")));
        }
        let mut best: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for e in edges {
            if e.from >= n || e.to >= n {
                return Err(Error::Parameter(format!(
                    "arc ({},{}) outside 1..{n}",
                    e.from + 1,
                    e.to + 1
                )));
            }
            if e.from == e.to {
                return Err(Error::Parameter(format!("self-loop at {}", e.from + 1)));
            }
            if e.weight.abs() > bound {
                return Err(Error::EntryBound { value: e.weight, bound });
            }
            best.entry((e.from, e.to))
                .and_modify(|w| *w = (*w).min(e.weight))
                .or_insert(e.weight);
        }
        let edges = best
            .into_iter()
            .map(|((from, to), weight)| Edge { from, to, weight })
            .collect();
        Ok(Self { n, bound, edges })
    }

    /// Bound taken as the largest absolute weight (at least 1).
    pub fn with_tight_bound(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let bound = edges.iter().map(|e| e.weight.abs()).max().unwrap_or(1).max(1);
        Self::new(n, bound, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The weight-magnitude bound `M`.
    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// True iff every weight lies in `{1..M}`.
    pub fn is_positive(&self) -> bool {
        self.edges.iter().all(|e| e.weight >= 1)
    }

    pub fn reversed(&self) -> Graph {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                from: e.to,
                to: e.from,
                weight: e.weight,
            })
            .collect();
        edges.sort();
        Graph {
            n: self.n,
            bound: self.bound,
            edges,
        }
    }

    /// Out-adjacency lists `(to, weight)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, i64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.from].push((e.to, e.weight));
        }
        adj
    }

    /// Checks the positive-mode precondition, naming the first offending arc.
    pub fn require_positive(&self) -> Result<()> {
        match self.edges.iter().find(|e| e.weight < 1) {
            Some(e) => Err(Error::NonPositiveMode {
                from: e.from + 1,
                to: e.to + 1,
                weight: e.weight,
                bound: self.bound,
            }),
            None => Ok(()),
        }
    }
}

/// Reads the `p sp <n> <m>` / `a <u> <v> <w>` text format. A comment of the
/// form `c bound <M>` declares the weight bound; otherwise it is the largest
/// absolute weight.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut declared: Option<(i64, usize)> = None;
    let mut arcs: Vec<(Edge, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.trim();
        let mut tok = line.split_whitespace();
        match tok.next() {
            None => continue,
            Some("c") => {
                if tok.next() == Some("bound") {
                    let m = tok
                        .next()
                        .and_then(|s| s.parse::<i64>().ok())
                        .filter(|&m| m >= 1)
                        .ok_or_else(|| err("expected `c bound <positive integer>`".into()))?;
                    declared = Some((m, line_no));
                }
            }
            Some("p") => {
                if header.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if tok.next() != Some("sp") {
                    return Err(err("expected `p sp <n> <m>`".into()));
                }
                let n = parse_num::<usize>(tok.next(), line_no, "vertex count")?;
                let m = parse_num::<usize>(tok.next(), line_no, "arc count")?;
                if tok.next().is_some() {
                    return Err(err("trailing tokens on problem line".into()));
                }
                header = Some((n, m));
            }
            Some("a") => {
                let (n, _) = header.ok_or_else(|| err("arc before problem line".into()))?;
                let u = parse_num::<usize>(tok.next(), line_no, "tail")?;
                let v = parse_num::<usize>(tok.next(), line_no, "head")?;
                let w = parse_num::<i64>(tok.next(), line_no, "weight")?;
                if tok.next().is_some() {
                    return Err(err("trailing tokens on arc line".into()));
                }
                for x in [u, v] {
                    if x < 1 || x > n {
                        return Err(err(format!("vertex {x} outside 1..{n}")));
                    }
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                arcs.push((
                    Edge {
                        from: u - 1,
                        to: v - 1,
                        weight: w,
                    },
                    line_no,
                ));
            }
            Some(other) => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing problem line".into(),
    })?;
    if arcs.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("problem line declares {m} arcs, found {}", arcs.len()),
        });
    }
    let bound = match declared {
        Some((bound, _)) => {
            if let Some((e, line)) = arcs.iter().find(|(e, _)| e.weight.abs() > bound) {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!("|{}| exceeds declared bound {bound}", e.weight),
                });
            }
            bound
        }
        None => arcs.iter().map(|(e, _)| e.weight.abs()).max().unwrap_or(1).max(1),
    };
    Graph::new(n, bound, arcs.into_iter().map(|(e, _)| e))
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing or malformed {what}"),
    })
}

/// Writes the format read by [`parse_graph`], including the bound comment.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p sp {} {}", g.n, g.edges.len());
    let _ = writeln!(out, "c bound {}", g.bound);
    for e in &g.edges {
        let _ = writeln!(out, "a {} {} {}", e.from + 1, e.to + 1, e.weight);
    }
    out
}

/// Diagonal 0, `w(u,v)` on arcs, `INF` elsewhere.
pub fn to_weight_matrix(g: &Graph) -> WeightMatrix {
    let mut w = WeightMatrix::identity(g.n);
    for e in &g.edges {
        w.set(e.from, e.to, e.weight);
    }
    w
}

pub const MAX_GENERATION_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub density: f64,
    pub wmin: i64,
    pub wmax: i64,
    pub seed: u64,
    pub no_negative_cycle: bool,
}

/// Random digraph: each ordered pair `u != v` gets an arc with probability
/// `density` and a weight uniform in `[wmin, wmax]`. With
/// `no_negative_cycle`, a draw that has negative cycles is repaired by
/// raising weights along them; when that is impossible (every arc of some
/// negative cycle already at `wmax`), attempt `a` redraws from stream `a`
/// of the seed.
pub fn gen_random(p: &GenParams) -> Result<Graph> {
    if p.wmin > p.wmax {
        return Err(Error::Parameter(format!("wmin {} > wmax {}", p.wmin, p.wmax)));
    }
    if !(0.0..=1.0).contains(&p.density) {
        return Err(Error::Parameter(format!("density {} outside [0,1]", p.density)));
    }
    let bound = p.wmin.abs().max(p.wmax.abs()).max(1);
    let root = Rng::new(p.seed);
    let attempts = if p.no_negative_cycle { MAX_GENERATION_ATTEMPTS } else { 1 };
    for attempt in 0..attempts {
        let mut rng = root.derive(attempt as u64);
        let mut edges = Vec::new();
        for u in 0..p.n {
            for v in 0..p.n {
                if u != v && rng.bernoulli(p.density) {
                    edges.push(Edge {
                        from: u,
                        to: v,
                        weight: rng.range_inclusive(p.wmin, p.wmax),
                    });
                }
            }
        }
        let g = Graph::new(p.n, bound, edges)?;
        if !p.no_negative_cycle {
            return Ok(g);
        }
        if let Some(g) = repair_negative_cycles(g, p.wmax, &mut rng)? {
            return Ok(g);
        }
    }
    Err(Error::GenerationExhausted(MAX_GENERATION_ATTEMPTS))
}

/// Raises arc weights until no negative cycle is left: for each cycle found,
/// one of its arcs below `wmax` (chosen by `rng`) grows by the cycle's
/// deficit, capped at `wmax`. `None` if some cycle has every arc at `wmax`.
fn repair_negative_cycles(mut g: Graph, wmax: i64, rng: &mut Rng) -> Result<Option<Graph>> {
    let index: HashMap<(usize, usize), usize> = g.edges.iter().enumerate().map(|(i, e)| ((e.from, e.to), i)).collect();
    loop {
        let Err(cycle) = bellman_ford_super_source(&g) else {
            return Ok(Some(g));
        };
        let arcs: Vec<usize> = (0..cycle.len())
            .map(|i| index[&(cycle[i], cycle[(i + 1) % cycle.len()])])
            .collect();
        let deficit = -arcs.iter().map(|&i| g.edges[i].weight).sum::<i64>();
        let raisable: Vec<usize> = arcs.into_iter().filter(|&i| g.edges[i].weight < wmax).collect();
        if raisable.is_empty() {
            return Ok(None);
        }
        let pick = raisable[rng.range_inclusive(0, raisable.len() as i64 - 1) as usize];
        let e = &mut g.edges[pick];
        e.weight = (e.weight + deficit).min(wmax);
    }
}

/// Bellman–Ford from a virtual source joined to every vertex by 0-weight
/// arcs. Returns the distances, or a negative cycle (0-based, in order).
fn bellman_ford_super_source(g: &Graph) -> std::result::Result<Vec<i64>, Vec<usize>> {
    let n = g.n;
    let mut dist = vec![0i64; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last_relaxed = None;
    for _ in 0..=n {
        last_relaxed = None;
        for e in &g.edges {
            let cand = dist[e.from] + e.weight;
            if cand < dist[e.to] {
                dist[e.to] = cand;
                pred[e.to] = Some(e.from);
                last_relaxed = Some(e.to);
            }
        }
        if last_relaxed.is_none() {
            return Ok(dist);
        }
    }
    // Still relaxing after n+1 rounds: walk back n steps to land on the cycle.
    let mut x = last_relaxed.expect("relaxation happened");
    for _ in 0..n {
        x = pred[x].expect("relaxed vertex has a predecessor");
    }
    let mut cycle = vec![x];
    let mut y = pred[x].expect("cycle vertex has a predecessor");
    while y != x {
        cycle.push(y);
        y = pred[y].expect("cycle vertex has a predecessor");
    }
    cycle.reverse();
    Err(cycle)
}

/// True iff some directed cycle has negative total weight.
pub fn detect_negative_cycle(g: &Graph) -> bool {
    bellman_ford_super_source(g).is_err()
}

/// A negative cycle as 1-based vertices in traversal order, if one exists.
pub fn find_negative_cycle(g: &Graph) -> Option<Vec<usize>> {
    bellman_ford_super_source(g)
        .err()
        .map(|c| c.into_iter().map(|v| v + 1).collect())
}

/// Vertex potentials `h` with `w(u,v) + h(u) - h(v) >= 0` on every arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potentials {
    h: Vec<i64>,
}

impl Potentials {
    pub fn zero(n: usize) -> Self {
        Self { h: vec![0; n] }
    }

    pub fn from_vec(h: Vec<i64>) -> Self {
        Self { h }
    }

    pub fn get(&self, v: usize) -> i64 {
        self.h[v]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.h
    }

    pub fn negated(&self) -> Self {
        Self {
            h: self.h.iter().map(|x| -x).collect(),
        }
    }

    #[inline]
    pub fn reweight(&self, e: &Edge) -> i64 {
        e.weight + self.h[e.from] - self.h[e.to]
    }

    /// True iff every arc of `g` has a nonnegative reduced weight.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.h.len() == g.n() && g.edges().iter().all(|e| self.reweight(e) >= 0)
    }
}

/// Johnson potentials: `h(v)` is the distance to `v` from a virtual source.
pub fn johnson_potentials(g: &Graph) -> Result<Potentials> {
    bellman_ford_super_source(g)
        .map(|h| Potentials { h })
        .map_err(|c| Error::NegativeCycle(c.into_iter().map(|v| v + 1).collect()))
}

/// Reachability ignoring weights; every vertex reaches itself.
pub fn transitive_closure(g: &Graph) -> BoolMatrix {
    let adj = g.adjacency();
    let mut tc = BoolMatrix::new(g.n);
    for s in 0..g.n {
        let mut stack = vec![s];
        tc.set(s, s, true);
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !tc.get(s, y) {
                    tc.set(s, y, true);
                    stack.push(y);
                }
            }
        }
    }
    tc
}

/// Entries of a weight matrix treated as finite reachability.
pub fn finite_pattern(d: &WeightMatrix) -> BoolMatrix {
    BoolMatrix::from_fn(d.n(), |i, j| d.get(i, j) != INF)
}
