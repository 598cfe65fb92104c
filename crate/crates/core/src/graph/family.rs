use std::fmt;

use serde::{Deserialize, Serialize};

use super::ColouredGraph;
use crate::error::{Error, Result};

/// Named graph families, each built as a uniform coloured graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `C_n`, edges `(i, i+1 mod n)`.
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// `K_{m,n}`, `m <= n`. For `m < n` the parts are `{1..m}` and
    /// `{m+1..m+n}`; `K_{m,m}` is split by vertex parity.
    CompleteBipartite {
        m: usize,
        n: usize,
    },
    /// `H_m`: `K_{2m}` minus the matching `{(2k-1, 2k)}`.
    Hyperoctahedral {
        m: usize,
    },
    /// `K_{1,n-1}` with centre 1.
    Star {
        n: usize,
    },
    /// Edges `(i, i+s mod n)` for `s` in the connection set.
    Circulant {
        n: usize,
        connection: Vec<usize>,
    },
    Petersen,
    /// Arbitrary uncoloured edge set on `1..=n`.
    UniformOf {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// Thin wrapper so family specs can be passed around and validated on their
/// own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FamilySpec(pub Family);

impl FamilySpec {
    pub fn cycle(n: usize) -> Self {
        FamilySpec(Family::Cycle { n })
    }
    pub fn complete(n: usize) -> Self {
        FamilySpec(Family::Complete { n })
    }
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        FamilySpec(Family::CompleteBipartite { m, n })
    }
    pub fn hyperoctahedral(m: usize) -> Self {
        FamilySpec(Family::Hyperoctahedral { m })
    }
    pub fn star(n: usize) -> Self {
        FamilySpec(Family::Star { n })
    }
    pub fn circulant(n: usize, connection: Vec<usize>) -> Self {
        FamilySpec(Family::Circulant { n, connection })
    }
    pub fn petersen() -> Self {
        FamilySpec(Family::Petersen)
    }
    pub fn uniform_of(n: usize, edges: Vec<(usize, usize)>) -> Self {
        FamilySpec(Family::UniformOf { n, edges })
    }

    /// Family tags accepted by [`FamilySpec::from_parts`].
    pub const TAGS: [&'static str; 7] = [
        "cycle",
        "complete",
        "complete_bipartite",
        "hyperoctahedral",
        "star",
        "circulant",
        "petersen",
    ];

    /// Builds a spec from a tag and loose parameters (as given on a command
    /// line). Missing required parameters are reported.
    pub fn from_parts(
        tag: &str,
        n: Option<usize>,
        m: Option<usize>,
        connection: Option<Vec<usize>>,
    ) -> Result<Self> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| Error::InvalidFamily(format!("family `{tag}` needs parameter {name}")))
        };
        let spec = match tag {
            "cycle" => Self::cycle(need(n, "n")?),
            "complete" => Self::complete(need(n, "n")?),
            "complete_bipartite" | "complete-bipartite" => {
                Self::complete_bipartite(need(m, "m")?, need(n, "n")?)
            }
            "hyperoctahedral" => Self::hyperoctahedral(need(m, "m")?),
            "star" => Self::star(need(n, "n")?),
            "circulant" => Self::circulant(
                need(n, "n")?,
                connection.ok_or_else(|| {
                    Error::InvalidFamily("family `circulant` needs a connection set".into())
                })?,
            ),
            "petersen" => Self::petersen(),
            other => {
                return Err(Error::InvalidFamily(format!(
                    "unknown family `{other}` (known: {})",
                    Self::TAGS.join(", ")
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        match &self.0 {
            Family::Cycle { n } if *n < 3 => bad(format!("cycle needs n >= 3, got {n}")),
            Family::Complete { n } if *n < 1 => bad("complete graph needs n >= 1".into()),
            Family::CompleteBipartite { m, n } if *m < 1 || m > n => bad(format!(
                "complete bipartite needs 1 <= m <= n, got m = {m}, n = {n}"
            )),
            Family::Hyperoctahedral { m } if *m < 1 => bad("hyperoctahedral needs m >= 1".into()),
            Family::Star { n } if *n < 2 => bad(format!("star needs n >= 2, got {n}")),
            Family::Circulant { n, connection } => {
                if *n < 3 {
                    return bad(format!("circulant needs n >= 3, got {n}"));
                }
                if connection.is_empty() {
                    return bad("circulant connection set must be nonempty".into());
                }
                if let Some(s) = connection.iter().find(|&&s| s == 0 || s > n / 2) {
                    return bad(format!(
                        "connection element {s} outside 1..={} for n = {n}",
                        n / 2
                    ));
                }
                Ok(())
            }
            Family::UniformOf { n, .. } if *n < 1 => bad("uniform-of needs n >= 1".into()),
            _ => Ok(()),
        }
    }

    pub fn edges(&self) -> Result<(usize, Vec<(usize, usize)>)> {
        self.validate()?;
        let pairs = |n: usize| (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)));
        Ok(match &self.0 {
            Family::Cycle { n } => (*n, (1..=*n).map(|i| (i, i % n + 1)).collect()),
            Family::Complete { n } => (*n, pairs(*n).collect()),
            Family::CompleteBipartite { m, n } if m == n => (
                2 * m,
                pairs(2 * m).filter(|(i, j)| (i + j) % 2 == 1).collect(),
            ),
            Family::CompleteBipartite { m, n } => (
                m + n,
                (1..=*m)
                    .flat_map(|i| (m + 1..=m + n).map(move |j| (i, j)))
                    .collect(),
            ),
            Family::Hyperoctahedral { m } => (
                2 * m,
                pairs(2 * m)
                    .filter(|&(i, j)| !(i % 2 == 1 && j == i + 1))
                    .collect(),
            ),
            Family::Star { n } => (*n, (2..=*n).map(|j| (1, j)).collect()),
            Family::Circulant { n, connection } => {
                let mut e: Vec<(usize, usize)> = (1..=*n)
                    .flat_map(|i| {
                        connection.iter().map(move |s| {
                            let j = (i - 1 + s) % n + 1;
                            (i.min(j), i.max(j))
                        })
                    })
                    .collect();
                e.sort_unstable();
                e.dedup();
                (*n, e)
            }
            Family::Petersen => {
                let mut e = Vec::new();
                for i in 1..=5 {
                    e.push((i, i % 5 + 1)); // outer 5-cycle
                    e.push((i, i + 5)); // spokes
                    e.push((i + 5, (i + 1) % 5 + 6)); // inner pentagram
                }
                (10, e)
            }
            Family::UniformOf { n, edges } => (*n, edges.clone()),
        })
    }

    /// The uniform coloured graph of this family.
    pub fn build(&self) -> Result<ColouredGraph> {
        let (n, edges) = self.edges()?;
        ColouredGraph::uniform(n, &edges)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Family::Cycle { n } => write!(f, "C_{n}"),
            Family::Complete { n } => write!(f, "K_{n}"),
            Family::CompleteBipartite { m, n } => write!(f, "K_{{{m},{n}}}"),
            Family::Hyperoctahedral { m } => write!(f, "H_{m}"),
            Family::Star { n } => write!(f, "star_{n}"),
            Family::Circulant { n, connection } => {
                let s: Vec<String> = connection.iter().map(|s| s.to_string()).collect();
                write!(f, "circulant({n};{{{}}})", s.join(","))
            }
            Family::Petersen => write!(f, "Petersen"),
            Family::UniformOf { n, edges } => {
                write!(f, "uniform({n} vertices, {} edges)", edges.len())
            }
        }
    }
}
