//! Exhaustive scans over small graph universes.
//!
//! A universe is an ordered list of graphs; a scan applies one predicate to
//! an index range of it, in parallel, and collects the graphs that fail.
//! Results are sorted by universe index, so they do not depend on the
//! number of workers, and a scan can resume from a [`Checkpoint`].

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::LinearForm;
use crate::graph::{ColouredGraph, FamilySpec, GraphJson};
use crate::ideal::{component_zero_forms, Parametrization};
use crate::pencil::pencil_properties;
use crate::symmetry::{automorphism_group, PairOrbitPartition};
use crate::Limits;

/// All set partitions of `{0..k}` as restricted growth strings, in
/// lexicographic order. There are Bell(k) of them.
pub fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, max: usize, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let next = if prefix.is_empty() { 0 } else { max + 1 };
        for c in 0..=next {
            prefix.push(c);
            rec(prefix, max.max(c), k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), 0, k, &mut out);
    out
}

/// Renumbers labels to a restricted growth string (first appearance order).
fn normalize_rgs(labels: &[usize]) -> Vec<usize> {
    let mut map: Vec<Option<usize>> = vec![None; labels.iter().max().map_or(0, |m| m + 1)];
    let mut next = 0;
    labels
        .iter()
        .map(|&l| {
            *map[l].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

fn rgs_code(rgs: &[usize]) -> String {
    rgs.iter()
        .map(|&c| std::char::from_digit(c as u32, 36).unwrap_or('?'))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexColourings {
    All,
    Uniform,
}

impl FromStr for VertexColourings {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Self::All),
            "uniform" => Ok(Self::Uniform),
            other => Err(Error::Validation(format!(
                "vertex colourings must be `all` or `uniform`, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for VertexColourings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::All => "all",
            Self::Uniform => "uniform",
        })
    }
}

/// One graph of a universe.
#[derive(Clone, Debug)]
pub struct ScanItem {
    pub label: String,
    pub graph: ColouredGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Universe {
    pub description: String,
    pub n: usize,
    /// Size before any symmetry reduction.
    pub raw_count: usize,
    /// Number of graphs actually enumerated.
    pub size: usize,
}

/// Colourings of the cycle `C_n` (edges `(i, i+1 mod n)`): a set partition
/// of the vertices (or the trivial one) times a set partition of the edges.
/// With `dihedral` on, only colourings that are lexicographically least in
/// their orbit under the dihedral group of the cycle are kept.
pub fn cycle_colourings(
    n: usize,
    vertices: VertexColourings,
    dihedral: bool,
) -> Result<(Universe, Vec<ScanItem>)> {
    if n < 3 {
        return Err(Error::InvalidFamily(format!("cycle needs n >= 3, got {n}")));
    }
    let vparts = match vertices {
        VertexColourings::All => set_partitions(n),
        VertexColourings::Uniform => vec![vec![0; n]],
    };
    let eparts = set_partitions(n);
    let group = dihedral_group(n);
    let edge_index = |a: usize, b: usize| if (a + 1) % n == b { a } else { b };
    let mut items = Vec::new();
    for vc in &vparts {
        for ec in &eparts {
            if dihedral {
                let least = group.iter().all(|sigma| {
                    let mut v2 = vec![0; n];
                    let mut e2 = vec![0; n];
                    for i in 0..n {
                        v2[sigma[i]] = vc[i];
                        e2[edge_index(sigma[i], sigma[(i + 1) % n])] = ec[i];
                    }
                    (vc.clone(), ec.clone()) <= (normalize_rgs(&v2), normalize_rgs(&e2))
                });
                if !least {
                    continue;
                }
            }
            let labels: Vec<String> = vc.iter().map(|c| format!("v{c}")).collect();
            let edges: Vec<(usize, usize, String)> = (0..n)
                .map(|i| {
                    let (a, b) = (i + 1, (i + 1) % n + 1);
                    (a.min(b), a.max(b), format!("e{}", ec[i]))
                })
                .collect();
            items.push(ScanItem {
                label: format!("v={} e={}", rgs_code(vc), rgs_code(ec)),
                graph: ColouredGraph::new(n, &labels, &edges)?,
            });
        }
    }
    let universe = Universe {
        description: format!(
            "colourings of C_{n} ({vertices} vertex colourings{})",
            if dihedral {
                ", up to dihedral symmetry"
            } else {
                ""
            }
        ),
        n,
        raw_count: vparts.len() * eparts.len(),
        size: items.len(),
    };
    Ok((universe, items))
}

fn dihedral_group(n: usize) -> Vec<Vec<usize>> {
    let mut g = Vec::with_capacity(2 * n);
    for k in 0..n {
        g.push((0..n).map(|i| (i + k) % n).collect());
        g.push((0..n).map(|i| (n - i + k) % n).collect());
    }
    g
}

/// Nonempty connection sets `S ⊆ {1..⌊n/2⌋}` in lexicographic order of
/// their sorted element lists.
pub fn connection_sets(n: usize) -> Vec<Vec<usize>> {
    let half = n / 2;
    let mut sets: Vec<Vec<usize>> = (1u32..(1 << half))
        .map(|mask| (1..=half).filter(|s| mask & (1 << (s - 1)) != 0).collect())
        .collect();
    sets.sort();
    sets
}

pub fn circulant_universe(n: usize) -> Result<(Universe, Vec<ScanItem>)> {
    let sets = connection_sets(n);
    let items = sets
        .iter()
        .map(|s| {
            let spec = FamilySpec::circulant(n, s.clone());
            Ok(ScanItem {
                label: spec.to_string(),
                graph: spec.build()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        Universe {
            description: format!("uniform circulant graphs on {n} vertices"),
            n,
            raw_count: sets.len(),
            size: items.len(),
        },
        items,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    /// Every binomial linear form in the ideal lies in the span of the
    /// symmetry forms (single variables may also be component zeros).
    BinomialsInduced,
    /// `r = s` for a uniform graph.
    REqualsS,
    /// The closed-form pencil counts match the computed dimensions.
    Table1Consistency,
}

impl FromStr for Predicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binomials-induced" => Ok(Self::BinomialsInduced),
            "r-equals-s" => Ok(Self::REqualsS),
            "table1-consistency" => Ok(Self::Table1Consistency),
            other => Err(Error::Validation(format!(
                "unknown predicate `{other}` (binomials-induced, r-equals-s, table1-consistency)"
            ))),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::BinomialsInduced => "binomials-induced",
            Self::REqualsS => "r-equals-s",
            Self::Table1Consistency => "table1-consistency",
        })
    }
}

/// A graph on which the predicate failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: usize,
    pub label: String,
    pub graph: GraphJson,
    /// Offending forms, or a description of the failed equality.
    pub witnesses: Vec<String>,
    /// Some witness is a pure difference `x_p − x_q`.
    pub pure_difference: bool,
    pub connected: bool,
    pub r: Option<usize>,
    pub s: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub scan_id: String,
    pub predicate: Predicate,
    pub universe: Universe,
    pub start: usize,
    pub end: usize,
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanResult {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Counterexamples witnessed by a pure difference `x_p − x_q`.
    pub fn pure_difference_count(&self) -> usize {
        self.counterexamples
            .iter()
            .filter(|c| c.pure_difference)
            .count()
    }
}

/// Sums of coefficients over each orbit all vanish, i.e. `f` lies in the span
/// of the forms `x_p − x_q` with `p`, `q` in one orbit.
pub fn in_symmetry_span(f: &LinearForm, orbits: &PairOrbitPartition) -> bool {
    let idx = orbits.orbit_index();
    let mut sums = vec![crate::algebra::Rational::zero(); orbits.count()];
    for (a, c) in f.coeffs().iter().enumerate() {
        sums[idx[a]] += c;
    }
    sums.iter().all(Zero::is_zero)
}

fn is_pure_difference(f: &LinearForm) -> bool {
    let cs: Vec<_> = f.terms().map(|(_, c)| c.clone()).collect();
    cs.len() == 2 && cs.iter().all(|c| c.abs().is_one()) && (&cs[0] + &cs[1]).is_zero()
}

/// Applies a predicate to one graph: `None` if it holds.
pub fn check_graph(
    predicate: Predicate,
    index: usize,
    item: &ScanItem,
    limits: &Limits,
) -> Result<Option<Counterexample>> {
    let g = &item.graph;
    let make =
        |witnesses: Vec<String>, pure: bool, r: Option<usize>, s: Option<usize>| Counterexample {
            index,
            label: item.label.clone(),
            graph: GraphJson::from(g),
            witnesses,
            pure_difference: pure,
            connected: g.is_connected(),
            r,
            s,
        };
    match predicate {
        Predicate::BinomialsInduced => {
            let orbits = automorphism_group(g, limits)?.pair_orbits();
            let zeros = component_zero_forms(g);
            let bad: Vec<LinearForm> = Parametrization::new(g, limits)?
                .binomial_forms()
                .into_iter()
                .filter(|b| !in_symmetry_span(b, &orbits) && !zeros.contains(b))
                .collect();
            if bad.is_empty() {
                return Ok(None);
            }
            let pure = bad.iter().any(is_pure_difference);
            Ok(Some(make(
                bad.iter().map(ToString::to_string).collect(),
                pure,
                None,
                Some(orbits.count()),
            )))
        }
        Predicate::REqualsS => {
            let r = pencil_properties(g)?.r;
            let s = automorphism_group(g, limits)?.pair_orbits().count();
            Ok((r != s).then(|| make(vec![format!("r = {r}, s = {s}")], false, Some(r), Some(s))))
        }
        Predicate::Table1Consistency => {
            let props = pencil_properties(g)?;
            let param = Parametrization::new(g, limits)?;
            let linear = param.linear_part();
            let quad = param.quadratic_part(&linear);
            let mut witnesses = Vec::new();
            if linear.dimension != props.n_linear {
                witnesses.push(format!(
                    "linear dimension {} != C(n+1,2) - r = {}",
                    linear.dimension, props.n_linear
                ));
            }
            if quad.minimal_count != props.n_quadratic {
                witnesses.push(format!(
                    "minimal quadrics {} != C(r-1,2) = {}",
                    quad.minimal_count, props.n_quadratic
                ));
            }
            Ok((!witnesses.is_empty()).then(|| make(witnesses, false, Some(props.r), None)))
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub limits: Limits,
    /// First universe index to check.
    pub start: usize,
    /// One past the last index; `None` for the whole universe.
    pub end: Option<usize>,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    /// Items per checkpoint.
    pub chunk: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            limits: Limits::default(),
            start: 0,
            end: None,
            jobs: 0,
            chunk: 256,
        }
    }
}

/// Resumable scan state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub scan_id: String,
    pub universe_size: usize,
    pub next_index: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl Checkpoint {
    /// Header line `scan-id universe-size next-index`, then one JSON
    /// counterexample per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.scan_id, self.universe_size, self.next_index
        );
        for c in &self.counterexamples {
            out.push_str(&serde_json::to_string(c).expect("counterexample serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Checkpoint("empty checkpoint file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [id, size, next] = fields.as_slice() else {
            return Err(Error::Checkpoint(format!(
                "header must be `scan-id universe-size next-index`, got `{header}`"
            )));
        };
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Checkpoint(format!("expected an integer, got `{s}`")))
        };
        let (universe_size, next_index) = (num(size)?, num(next)?);
        if next_index > universe_size {
            return Err(Error::Checkpoint(format!(
                "next index {next_index} beyond universe size {universe_size}"
            )));
        }
        let counterexamples = lines
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l)
                    .map_err(|e| Error::Checkpoint(format!("line {}: {e}", i + 2)))
            })
            .collect::<Result<Vec<Counterexample>>>()?;
        Ok(Checkpoint {
            scan_id: id.to_string(),
            universe_size,
            next_index,
            counterexamples,
        })
    }
}

/// Shared driver: checks `items[start..end]` against `predicate`.
///
/// `resume` continues a previous run of the same scan; `on_chunk` is called
/// with an up-to-date checkpoint after every chunk.
pub fn scan_generic(
    scan_id: &str,
    universe: Universe,
    items: &[ScanItem],
    predicate: Predicate,
    options: &ScanOptions,
    resume: Option<Checkpoint>,
    mut on_chunk: impl FnMut(&Checkpoint),
) -> Result<ScanResult> {
    let started = Instant::now();
    let end = options.end.unwrap_or(items.len()).min(items.len());
    let mut state = match resume {
        Some(cp) => {
            if cp.scan_id != scan_id || cp.universe_size != items.len() {
                return Err(Error::Checkpoint(format!(
                    "checkpoint is for `{} ({} items)`, not `{scan_id} ({} items)`",
                    cp.scan_id,
                    cp.universe_size,
                    items.len()
                )));
            }
            cp
        }
        None => Checkpoint {
            scan_id: scan_id.to_string(),
            universe_size: items.len(),
            next_index: options.start.min(end),
            counterexamples: Vec::new(),
        },
    };
    let start = state.next_index;
    let pool = (options.jobs > 0)
        .then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(options.jobs)
                .build()
        })
        .transpose()
        .map_err(|e| Error::Validation(format!("cannot start worker pool: {e}")))?;
    let chunk = options.chunk.max(1);
    while state.next_index < end {
        let hi = (state.next_index + chunk).min(end);
        let run = || {
            (state.next_index..hi)
                .into_par_iter()
                .map(|i| check_graph(predicate, i, &items[i], &options.limits))
                .collect::<Result<Vec<_>>>()
        };
        let found = match &pool {
            Some(p) => p.install(run),
            None => run(),
        }?;
        state.counterexamples.extend(found.into_iter().flatten());
        state.next_index = hi;
        on_chunk(&state);
    }
    state.counterexamples.sort_by_key(|c| c.index);
    Ok(ScanResult {
        scan_id: scan_id.to_string(),
        predicate,
        universe,
        start,
        end,
        checked: end.saturating_sub(start),
        counterexamples: state.counterexamples,
        elapsed: started.elapsed(),
    })
}

/// Default largest cycle for colouring scans.
pub const CYCLE_CAP: usize = 6;
/// Default largest circulant order.
pub const CIRCULANT_CAP: usize = 10;

/// Binomial forms of every colouring of `C_n` against the symmetry forms.
pub fn scan_cycle_binomials(
    n: usize,
    vertices: VertexColourings,
    dihedral: bool,
    cap: usize,
    options: &ScanOptions,
) -> Result<ScanResult> {
    if n > cap {
        return Err(Error::ResourceCap(format!(
            "cycle colouring scan with n = {n} exceeds the cap {cap}"
        )));
    }
    let (universe, items) = cycle_colourings(n, vertices, dihedral)?;
    let id = format!(
        "cycles-n{n}-{vertices}{}",
        if dihedral { "-dihedral" } else { "" }
    );
    scan_generic(
        &id,
        universe,
        &items,
        Predicate::BinomialsInduced,
        options,
        None,
        |_| {},
    )
}

/// `r` against `s` for every uniform circulant graph on `n` vertices.
pub fn scan_circulants(n: usize, cap: usize, options: &ScanOptions) -> Result<ScanResult> {
    if n > cap {
        return Err(Error::ResourceCap(format!(
            "circulant scan with n = {n} exceeds the cap {cap}"
        )));
    }
    if n < 3 {
        return Err(Error::InvalidFamily(format!(
            "circulant needs n >= 3, got {n}"
        )));
    }
    let (universe, items) = circulant_universe(n)?;
    scan_generic(
        &format!("circulants-n{n}"),
        universe,
        &items,
        Predicate::REqualsS,
        options,
        None,
        |_| {},
    )
}
