//! Graded graphs and truncated graph lineages.
//!
//! A [`GradedGraph`] holds per-level graphs `G_l` and the bipartite maps between
//! consecutive levels. Inter-level matrices are stored coarse-to-fine: `inter[l]`
//! is `|V_{l+1}| × |V_l|`, one column per coarse vertex.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sparse::{prefix_sums, SparseMatrix};

pub type Metadata = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq)]
pub struct GradedGraph {
    pub name: String,
    pub levels: Vec<Graph>,
    pub inter: Vec<SparseMatrix>,
    pub prolong: Option<Vec<SparseMatrix>>,
    pub metadata: Metadata,
}

impl GradedGraph {
    /// Builds a graded graph, rejecting inconsistent list lengths or shapes.
    /// Softer properties (orthonormality, pattern inclusion) are left to
    /// [`GradedGraph::validate`].
    pub fn new(
        name: impl Into<String>,
        levels: Vec<Graph>,
        inter: Vec<SparseMatrix>,
        prolong: Option<Vec<SparseMatrix>>,
    ) -> Result<Self> {
        let gg = GradedGraph {
            name: name.into(),
            levels,
            inter,
            prolong,
            metadata: Metadata::new(),
        };
        if let Some(issue) = gg.shape_issues().into_iter().next() {
            return Err(Error::InvalidLineage(issue.to_string()));
        }
        Ok(gg)
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Index of the top level, i.e. the truncation `L`.
    pub fn top(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Graph::order).collect()
    }

    pub fn codec(&self) -> VertexCodec {
        VertexCodec::new(&self.level_sizes())
    }

    /// Keeps levels `0..=top` (clamped to what exists).
    pub fn truncate(&self, top: usize) -> GradedGraph {
        let n = (top + 1).min(self.levels.len());
        GradedGraph {
            name: self.name.clone(),
            levels: self.levels[..n].to_vec(),
            inter: self.inter[..n.saturating_sub(1)].to_vec(),
            prolong: self
                .prolong
                .as_ref()
                .map(|p| p[..n.saturating_sub(1)].to_vec()),
            metadata: self.metadata.clone(),
        }
    }

    /// One graph with diagonal blocks `G_l`, `S_l` below the diagonal and
    /// `S_lᵀ` above it, in [`VertexCodec`] order.
    pub fn assemble_flat(&self) -> Graph {
        let sizes = self.level_sizes();
        let mut blocks = BTreeMap::new();
        for (l, g) in self.levels.iter().enumerate() {
            blocks.insert((l, l), g.adj().clone());
        }
        for (l, s) in self.inter.iter().enumerate() {
            blocks.insert((l + 1, l), s.clone());
            blocks.insert((l, l + 1), s.transpose());
        }
        let adj = SparseMatrix::block_assemble(&blocks, &sizes, &sizes)
            .expect("graded graph shapes are checked at construction");
        Graph::new(adj, true).expect("assembled graded graph is symmetric")
    }

    /// Level label of every vertex of the flat assembly.
    pub fn vertex_levels(&self) -> Vec<usize> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(l, g)| std::iter::repeat_n(l, g.order()))
            .collect()
    }

    fn shape_issues(&self) -> Vec<Issue> {
        let mut out = Vec::new();
        let n = self.levels.len();
        if self.inter.len() + 1 != n.max(1) || n == 0 {
            out.push(Issue::Count {
                what: "inter",
                expected: n.saturating_sub(1),
                found: self.inter.len(),
            });
        }
        if let Some(p) = &self.prolong {
            if p.len() != self.inter.len() {
                out.push(Issue::Count {
                    what: "prolong",
                    expected: self.inter.len(),
                    found: p.len(),
                });
            }
        }
        let sizes = self.level_sizes();
        let mut check = |what: &'static str, l: usize, m: &SparseMatrix| {
            if l + 1 < sizes.len() && m.shape() != (sizes[l + 1], sizes[l]) {
                out.push(Issue::Shape {
                    what,
                    level: l,
                    expected: (sizes[l + 1], sizes[l]),
                    found: m.shape(),
                });
            }
        };
        for (l, s) in self.inter.iter().enumerate() {
            check("inter", l, s);
        }
        for (l, p) in self.prolong.iter().flatten().enumerate() {
            check("prolong", l, p);
        }
        out
    }

    /// Full structural report. An empty [`Diagnostics::issues`] means valid.
    pub fn validate(&self) -> Diagnostics {
        let mut issues = self.shape_issues();
        let shapes_ok = issues.is_empty();
        for (l, g) in self.levels.iter().enumerate() {
            if !g.is_undirected() {
                issues.push(Issue::Directed { level: l });
            }
        }
        if shapes_ok {
            let flat = self.assemble_flat();
            let lv = self.vertex_levels();
            for &(r, c, _) in flat.adj().entries() {
                if lv[r].abs_diff(lv[c]) > 1 {
                    issues.push(Issue::Grading {
                        from: (lv[r], r),
                        to: (lv[c], c),
                    });
                }
            }
            for (l, p) in self.prolong.iter().flatten().enumerate() {
                if !p.pattern_subset_of(&self.inter[l]) {
                    issues.push(Issue::Pattern { level: l });
                }
                let dev = orthonormality_deviation(p);
                if dev > ORTHO_TOL {
                    issues.push(Issue::Orthonormality {
                        level: l,
                        deviation: dev,
                    });
                }
            }
        }
        let counts = self
            .levels
            .iter()
            .enumerate()
            .map(|(l, g)| LevelCounts {
                vertices: g.order(),
                edges: g.edge_count(),
                inter: self.inter.get(l).map_or(0, SparseMatrix::nnz),
            })
            .collect();
        Diagnostics { issues, counts }
    }
}

pub const ORTHO_TOL: f64 = 1e-12;

/// `max |PᵀP − I|`.
pub fn orthonormality_deviation(p: &SparseMatrix) -> f64 {
    let ptp = p.transpose().matmul(p).expect("PᵀP shapes agree");
    ptp.max_abs_diff(&SparseMatrix::identity(p.ncols()))
        .expect("PᵀP is square")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Issue {
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    Shape {
        what: &'static str,
        level: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    Directed {
        level: usize,
    },
    /// An edge whose endpoints' levels differ by more than one.
    Grading {
        from: (usize, usize),
        to: (usize, usize),
    },
    Pattern {
        level: usize,
    },
    Orthonormality {
        level: usize,
        deviation: f64,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::Count {
                what,
                expected,
                found,
            } => write!(f, "expected {expected} {what} matrices, found {found}"),
            Issue::Shape {
                what,
                level,
                expected,
                found,
            } => write!(
                f,
                "{what} matrix at level {level} is {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Issue::Directed { level } => write!(f, "level {level} is directed"),
            Issue::Grading { from, to } => write!(
                f,
                "edge {} (level {}) -> {} (level {}) skips a level",
                from.1, from.0, to.1, to.0
            ),
            Issue::Pattern { level } => {
                write!(
                    f,
                    "prolongation at level {level} leaves the sparsity pattern"
                )
            }
            Issue::Orthonormality { level, deviation } => write!(
                f,
                "prolongation at level {level} is not orthonormal (max |PᵀP - I| = {deviation:e})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCounts {
    pub vertices: usize,
    pub edges: usize,
    /// Stored entries of the map to the next level.
    pub inter: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    pub issues: Vec<Issue>,
    pub counts: Vec<LevelCounts>,
}

impl Diagnostics {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, c) in self.counts.iter().enumerate() {
            writeln!(
                f,
                "level {l}: {} vertices, {} edges, {} inter entries",
                c.vertices, c.edges, c.inter
            )?;
        }
        if self.issues.is_empty() {
            writeln!(f, "ok")
        } else {
            for i in &self.issues {
                writeln!(f, "error: {i}")?;
            }
            Ok(())
        }
    }
}

/// Flat ids for `(level, j)` pairs: level blocks contiguous, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCodec {
    offsets: Vec<usize>,
}

impl VertexCodec {
    pub fn new(sizes: &[usize]) -> Self {
        VertexCodec {
            offsets: prefix_sums(sizes),
        }
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn level_range(&self, l: usize) -> std::ops::Range<usize> {
        self.offsets[l]..self.offsets[l + 1]
    }

    pub fn encode(&self, l: usize, j: usize) -> usize {
        debug_assert!(j < self.offsets[l + 1] - self.offsets[l]);
        self.offsets[l] + j
    }

    pub fn decode(&self, id: usize) -> (usize, usize) {
        let l = self.offsets.partition_point(|&o| o <= id) - 1;
        (l, id - self.offsets[l])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Path,
    Complete,
    Grid2d,
    NHat,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Path,
        Generator::Complete,
        Generator::Grid2d,
        Generator::NHat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Path => "path",
            Generator::Complete => "complete",
            Generator::Grid2d => "grid2d",
            Generator::NHat => "nhat",
        }
    }

    /// Lineage truncated at `top` (so `top + 1` levels). `root_loop = false`
    /// drops the self-loop on the level-0 vertex.
    pub fn build(self, top: usize, root_loop: bool) -> GradedGraph {
        let mut gg = match self {
            Generator::Path => doubling("path", top, Graph::path),
            Generator::Complete => doubling("complete", top, Graph::complete),
            Generator::Grid2d => grid2d_lineage(top),
            Generator::NHat => nhat(top),
        };
        if !root_loop {
            gg.levels[0] = Graph::empty(1);
        }
        gg.with_metadata("generator", self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generator `{s}`")))
    }
}

/// 0/1 pair aggregation `S[c][p] = 1` iff `c ∈ {2p, 2p+1}`, shape `2n × n`.
pub fn pair_pattern(n: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(
        2 * n,
        n,
        (0..n).flat_map(|p| [(2 * p, p, 1.0), (2 * p + 1, p, 1.0)]),
    )
    .expect("pair pattern in range")
}

fn doubling(name: &str, top: usize, level: fn(usize) -> Graph) -> GradedGraph {
    let levels = (0..=top)
        .map(|l| if l == 0 { Graph::root() } else { level(1 << l) })
        .collect();
    let inter: Vec<_> = (0..top).map(|l| pair_pattern(1 << l)).collect();
    let prolong = inter
        .iter()
        .map(|s| s.scale(std::f64::consts::FRAC_1_SQRT_2))
        .collect();
    GradedGraph::new(name, levels, inter, Some(prolong)).expect("generator shapes agree")
}

pub fn path_lineage(top: usize) -> GradedGraph {
    Generator::Path.build(top, true)
}

pub fn complete_lineage(top: usize) -> GradedGraph {
    Generator::Complete.build(top, true)
}

pub fn grid2d_lineage(top: usize) -> GradedGraph {
    let p = doubling("path", top, Graph::path);
    let mut g = levelwise_box(&p, &p).expect("path lineage is undirected");
    // The box of two rooted vertices carries a weight-2 loop; keep the root
    // definition instead.
    g.levels[0] = Graph::root();
    g.name = "grid2d".into();
    g
}

pub fn nhat(top: usize) -> GradedGraph {
    let levels = vec![Graph::root(); top + 1];
    let inter = vec![SparseMatrix::identity(1); top];
    GradedGraph::new("nhat", levels, inter.clone(), Some(inter)).expect("1x1 shapes")
}

/// Level-by-level box product: `G1_l □ G2_l`, maps `S1 ⊗ S2`, `P1 ⊗ P2`.
/// This is the non-skeletal product whose level sizes multiply.
pub fn levelwise_box(a: &GradedGraph, b: &GradedGraph) -> Result<GradedGraph> {
    let n = a.num_levels().min(b.num_levels());
    let levels = (0..n)
        .map(|l| a.levels[l].box_product(&b.levels[l]))
        .collect::<Result<Vec<_>>>()?;
    let inter = (0..n - 1).map(|l| a.inter[l].kron(&b.inter[l])).collect();
    let prolong = match (&a.prolong, &b.prolong) {
        (Some(pa), Some(pb)) => Some((0..n - 1).map(|l| pa[l].kron(&pb[l])).collect()),
        _ => None,
    };
    GradedGraph::new(
        format!("{}_levelwise_{}", a.name, b.name),
        levels,
        inter,
        prolong,
    )
}

/// Level-by-level disjoint union over the common levels.
pub fn levelwise_oplus(a: &GradedGraph, b: &GradedGraph) -> Result<GradedGraph> {
    let n = a.num_levels().min(b.num_levels());
    let levels = (0..n)
        .map(|l| a.levels[l].oplus(&b.levels[l]))
        .collect::<Result<Vec<_>>>()?;
    let blockdiag = |x: &SparseMatrix, y: &SparseMatrix| {
        let mut blocks = BTreeMap::new();
        blocks.insert((0, 0), x.clone());
        blocks.insert((1, 1), y.clone());
        SparseMatrix::block_assemble(&blocks, &[x.nrows(), y.nrows()], &[x.ncols(), y.ncols()])
    };
    let inter = (0..n - 1)
        .map(|l| blockdiag(&a.inter[l], &b.inter[l]))
        .collect::<Result<Vec<_>>>()?;
    let prolong = match (&a.prolong, &b.prolong) {
        (Some(pa), Some(pb)) => Some(
            (0..n - 1)
                .map(|l| blockdiag(&pa[l], &pb[l]))
                .collect::<Result<Vec<_>>>()?,
        ),
        _ => None,
    };
    GradedGraph::new(
        format!("{}_oplus_{}", a.name, b.name),
        levels,
        inter,
        prolong,
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthProfile {
    pub counts: Vec<LevelCounts>,
    /// `max_{l ≥ 1} |V_l|^{1/l}`.
    pub base: f64,
}

impl GrowthProfile {
    /// Levels where `|V_l| > c · b^(l^(1+eps))`.
    pub fn violations(&self, b: f64, eps: f64, c: f64) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(l, k)| k.vertices as f64 > growth_bound(*l, b, eps, c))
            .map(|(l, _)| l)
            .collect()
    }
}

pub fn growth_bound(l: usize, b: f64, eps: f64, c: f64) -> f64 {
    c * b.powf((l as f64).powf(1.0 + eps))
}

pub fn growth_profile(gg: &GradedGraph) -> Result<GrowthProfile> {
    if gg.num_levels() < 2 {
        return Err(Error::InvalidArgument(
            "growth profile needs at least two levels".into(),
        ));
    }
    let counts = gg.validate().counts;
    let base = counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(l, c)| (c.vertices as f64).powf(1.0 / l as f64))
        .fold(0.0, f64::max);
    Ok(GrowthProfile { counts, base })
}
