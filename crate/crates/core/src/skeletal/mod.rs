//! Skeletal products of graded graphs, thickening, and a block-matrix oracle.
//!
//! A skeletal product keeps only vertex tuples whose factor levels sum to the
//! product level, and only edges between product levels that differ by at most
//! one. Every block of the result is a Kronecker product of factor pieces: for
//! a step from factor level `l` (column) to `l'` (row) the piece is `G_l` when
//! `l' = l`, the stored coarse-to-fine map `S_l` when `l' = l + 1`, and `S_{l'}ᵀ`
//! when `l' = l − 1`. Cross blocks take the product of all pieces; box blocks
//! move one factor at a time with identities elsewhere.

mod codec;
mod oracle;
mod thicken;
mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

pub use codec::{Block, LevelMap, ProductCodec, Ratio};
pub use oracle::appendix_oracle;
pub use thicken::{thicken, ThickenCodec};
pub use witness::{
    distributive_permutation, reassociation_permutation, swap_permutation, Assoc, LevelPermutation,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lineage::GradedGraph;
use crate::sparse::SparseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Box,
    Cross,
    Strong,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Box => "box",
            Kind::Cross => "cross",
            Kind::Strong => "strong",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" => Ok(Kind::Box),
            "cross" => Ok(Kind::Cross),
            "strong" => Ok(Kind::Strong),
            _ => Err(Error::InvalidArgument(format!(
                "unknown product kind `{s}`"
            ))),
        }
    }
}

/// Edge filter for products of three or more factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Only the product-level constraint `|Σ Δl_k| ≤ 1`.
    Hat,
    /// Additionally the nonzero `Δl_k`, read left to right, alternate in sign.
    Tilde,
}

impl Mode {
    fn admits(self, deltas: &[i64]) -> bool {
        match self {
            Mode::Hat => true,
            Mode::Tilde => deltas
                .iter()
                .filter(|&&d| d != 0)
                .collect::<Vec<_>>()
                .windows(2)
                .all(|w| w[0] * w[1] < 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Hat => "hat",
            Mode::Tilde => "tilde",
        }
    }
}

/// Which matrices fill the inter-level factor pieces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightMode {
    /// The 0/1 sparsity maps `S`.
    #[default]
    Pattern,
    /// The prolongation weights `P` (factors must carry them).
    Prolongation,
}

#[derive(Clone, Debug)]
pub struct ProductSpec {
    pub kind: Kind,
    pub mode: Mode,
    pub weights: WeightMode,
    /// One map per factor; `None` means every factor contributes its level.
    pub maps: Option<Vec<LevelMap>>,
    /// Highest product level emitted; `None` picks the last complete level.
    pub top: Option<usize>,
}

impl ProductSpec {
    pub fn new(kind: Kind) -> Self {
        ProductSpec {
            kind,
            mode: Mode::Hat,
            weights: WeightMode::Pattern,
            maps: None,
            top: None,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn weights(mut self, w: WeightMode) -> Self {
        self.weights = w;
        self
    }

    pub fn maps(mut self, maps: Vec<LevelMap>) -> Self {
        self.maps = Some(maps);
        self
    }

    pub fn top(mut self, top: usize) -> Self {
        self.top = Some(top);
        self
    }
}

/// Factor pieces for one graded graph, precomputed once.
struct Pieces {
    g: Vec<SparseMatrix>,
    s: Vec<SparseMatrix>,
    st: Vec<SparseMatrix>,
    eye: Vec<SparseMatrix>,
}

impl Pieces {
    fn new(gg: &GradedGraph, weights: WeightMode) -> Result<Self> {
        let s = match weights {
            WeightMode::Pattern => gg.inter.clone(),
            WeightMode::Prolongation => gg.prolong.clone().ok_or_else(|| {
                Error::InvalidArgument(format!("lineage `{}` has no prolongation weights", gg.name))
            })?,
        };
        Ok(Pieces {
            g: gg.levels.iter().map(|g| g.adj().clone()).collect(),
            st: s.iter().map(SparseMatrix::transpose).collect(),
            s,
            eye: gg
                .levels
                .iter()
                .map(|g| SparseMatrix::identity(g.order()))
                .collect(),
        })
    }

    /// Piece for a step from column level `from` to row level `to`.
    fn step(&self, to: usize, from: usize) -> Option<&SparseMatrix> {
        if to == from {
            Some(&self.g[to])
        } else if to == from + 1 {
            Some(&self.s[from])
        } else if from == to + 1 {
            Some(&self.st[to])
        } else {
            None
        }
    }
}

fn kron_all<'a>(mats: impl IntoIterator<Item = &'a SparseMatrix>) -> SparseMatrix {
    mats.into_iter()
        .fold(SparseMatrix::identity(1), |acc, m| acc.kron(m))
}

/// Block between a row tuple and a column tuple, or `None` if it is empty.
fn block(
    kind: Kind,
    mode: Mode,
    pieces: &[Pieces],
    row: &[usize],
    col: &[usize],
) -> Option<SparseMatrix> {
    let deltas: Vec<i64> = row
        .iter()
        .zip(col)
        .map(|(&r, &c)| r as i64 - c as i64)
        .collect();
    if deltas.iter().any(|d| d.abs() > 1) {
        return None;
    }
    let cross = || -> Option<SparseMatrix> {
        if !mode.admits(&deltas) {
            return None;
        }
        let ps: Vec<&SparseMatrix> = (0..pieces.len())
            .map(|k| pieces[k].step(row[k], col[k]))
            .collect::<Option<_>>()?;
        Some(kron_all(ps))
    };
    let boxed = || -> Option<SparseMatrix> {
        let moving: Vec<usize> = (0..deltas.len()).filter(|&k| deltas[k] != 0).collect();
        let term = |k: usize| {
            kron_all((0..pieces.len()).map(|j| {
                if j == k {
                    pieces[j]
                        .step(row[j], col[j])
                        .expect("step within one level")
                } else {
                    &pieces[j].eye[col[j]]
                }
            }))
        };
        match moving.len() {
            0 => Some(
                (0..pieces.len())
                    .map(term)
                    .reduce(|a, b| a.add(&b).expect("equal block shapes"))
                    .expect("at least one factor"),
            ),
            1 => Some(term(moving[0])),
            _ => None,
        }
    };
    let m = match kind {
        Kind::Cross => cross(),
        Kind::Box => boxed(),
        Kind::Strong => match (boxed(), cross()) {
            (Some(a), Some(b)) => Some(a.max_entrywise(&b).expect("equal block shapes")),
            (a, b) => a.or(b),
        },
    }?;
    (m.nnz() > 0).then_some(m)
}

/// Matrix between product levels `row_level` and `col_level` of `codec`.
fn level_matrix(
    codec: &ProductCodec,
    kind: Kind,
    mode: Mode,
    pieces: &[Pieces],
    row_level: usize,
    col_level: usize,
) -> SparseMatrix {
    let rows = codec.blocks(row_level);
    let cols = codec.blocks(col_level);
    let mut blocks = BTreeMap::new();
    for (bi, rb) in rows.iter().enumerate() {
        for (bj, cb) in cols.iter().enumerate() {
            if let Some(m) = block(kind, mode, pieces, &rb.tuple, &cb.tuple) {
                blocks.insert((bi, bj), m);
            }
        }
    }
    let rs: Vec<usize> = rows.iter().map(|b| b.size).collect();
    let cs: Vec<usize> = cols.iter().map(|b| b.size).collect();
    SparseMatrix::block_assemble(&blocks, &rs, &cs).expect("block shapes follow the codec")
}

fn maps_for(spec: &ProductSpec, n: usize) -> Result<Vec<LevelMap>> {
    let maps = spec
        .maps
        .clone()
        .unwrap_or_else(|| vec![LevelMap::Identity; n]);
    if maps.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} level maps given for {n} factors",
            maps.len()
        )));
    }
    for m in &maps {
        m.validate()?;
    }
    Ok(maps)
}

/// Last product level at which every factor still has all its levels.
pub fn default_top(factors: &[&GradedGraph], maps: &[LevelMap]) -> usize {
    factors
        .iter()
        .zip(maps)
        .map(|(f, m)| {
            // A table may stop short of the factor's top level.
            let mut t = f.top();
            while m.apply(t).is_none() {
                t -= 1;
            }
            m.apply(t).unwrap()
        })
        .min()
        .unwrap_or(0)
}

/// `true` for product levels that would gain blocks from deeper factor levels.
pub fn partial_levels(factors: &[&GradedGraph], maps: &[LevelMap], top: usize) -> Vec<bool> {
    let base: Vec<usize> = maps.iter().map(|m| m.apply(0).unwrap_or(0)).collect();
    let base_sum: usize = base.iter().sum();
    (0..=top)
        .map(|level| {
            factors
                .iter()
                .zip(maps)
                .enumerate()
                .any(|(k, (f, m))| base_sum - base[k] + m.beyond(f.top()) <= level)
        })
        .collect()
}

pub fn codec_for(factors: &[&GradedGraph], spec: &ProductSpec) -> Result<ProductCodec> {
    let maps = maps_for(spec, factors.len())?;
    let top = spec.top.unwrap_or_else(|| default_top(factors, &maps));
    let sizes: Vec<Vec<usize>> = factors.iter().map(|f| f.level_sizes()).collect();
    Ok(ProductCodec::new(&sizes, &maps, top))
}

/// General skeletal product of any number of factors.
pub fn skeletal_product(factors: &[&GradedGraph], spec: &ProductSpec) -> Result<GradedGraph> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("product of zero factors".into()));
    }
    if factors
        .iter()
        .any(|f| f.levels.iter().any(|g| !g.is_undirected()))
    {
        return Err(Error::Directed {
            op: "skeletal product",
        });
    }
    let maps = maps_for(spec, factors.len())?;
    let codec = codec_for(factors, spec)?;
    let top = codec.top();
    let pieces = factors
        .iter()
        .map(|f| Pieces::new(f, spec.weights))
        .collect::<Result<Vec<_>>>()?;

    let levels: Vec<Graph> = (0..=top)
        .into_par_iter()
        .map(|l| {
            let adj = level_matrix(&codec, spec.kind, spec.mode, &pieces, l, l);
            Graph::undirected(adj).expect("skeletal levels are symmetric")
        })
        .collect();
    let inter: Vec<SparseMatrix> = (0..top)
        .into_par_iter()
        .map(|l| level_matrix(&codec, spec.kind, spec.mode, &pieces, l + 1, l))
        .collect();

    let names: Vec<&str> = factors.iter().map(|f| f.name.as_str()).collect();
    let op = match (factors.len(), spec.mode) {
        (2, _) | (_, Mode::Hat) => spec.kind.name().to_string(),
        _ => format!("{}-{}", spec.kind.name(), spec.mode.name()),
    };
    let name = names.join(&format!("_{op}_"));
    let gg = GradedGraph::new(name, levels, inter, None)?;
    let mut meta = BTreeMap::new();
    meta.insert("kind".to_string(), json!(spec.kind.name()));
    meta.insert("mode".to_string(), json!(spec.mode.name()));
    meta.insert(
        "weights".to_string(),
        json!(match spec.weights {
            WeightMode::Pattern => "pattern",
            WeightMode::Prolongation => "prolongation",
        }),
    );
    meta.insert("factors".to_string(), json!(names));
    meta.insert(
        "levelMaps".to_string(),
        Value::Array(maps.iter().map(LevelMap::to_json).collect()),
    );
    meta.insert(
        "partialLevels".to_string(),
        json!(partial_levels(factors, &maps, top)),
    );
    meta.insert("blocks".to_string(), codec.block_table());
    Ok(GradedGraph {
        metadata: meta,
        ..gg
    })
}

pub fn skel_box(a: &GradedGraph, b: &GradedGraph) -> Result<GradedGraph> {
    skeletal_product(&[a, b], &ProductSpec::new(Kind::Box))
}

pub fn skel_cross(a: &GradedGraph, b: &GradedGraph) -> Result<GradedGraph> {
    skeletal_product(&[a, b], &ProductSpec::new(Kind::Cross))
}

pub fn skel_strong(a: &GradedGraph, b: &GradedGraph) -> Result<GradedGraph> {
    skeletal_product(&[a, b], &ProductSpec::new(Kind::Strong))
}

/// n-way cross product computed directly from the `Δl` constraint.
pub fn skel_nway_cross(factors: &[&GradedGraph], mode: Mode) -> Result<GradedGraph> {
    if factors.len() < 2 {
        return Err(Error::InvalidArgument("n-way product needs n >= 2".into()));
    }
    skeletal_product(factors, &ProductSpec::new(Kind::Cross).mode(mode))
}

/// Product with level constraint `⌈ρ1 l1⌉ + ⌈ρ2 l2⌉ = L`.
pub fn skel_dilated(
    a: &GradedGraph,
    b: &GradedGraph,
    kind: Kind,
    rho1: Ratio,
    rho2: Ratio,
) -> Result<GradedGraph> {
    let spec = ProductSpec::new(kind).maps(vec![LevelMap::Dilate(rho1), LevelMap::Dilate(rho2)]);
    skeletal_product(&[a, b], &spec)
}

/// Product with arbitrary monotone shape maps `f1(l1) + f2(l2) = L`.
pub fn skel_shaped(
    a: &GradedGraph,
    b: &GradedGraph,
    kind: Kind,
    f1: Vec<usize>,
    f2: Vec<usize>,
) -> Result<GradedGraph> {
    let spec = ProductSpec::new(kind).maps(vec![LevelMap::Table(f1), LevelMap::Table(f2)]);
    skeletal_product(&[a, b], &spec)
}

/// `Σ_{l1+l2=L} |V1_l1|·|V2_l2|` for `L = 0..=top`.
pub fn convolution_sizes(a: &[usize], b: &[usize], top: usize) -> Vec<usize> {
    (0..=top)
        .map(|l| {
            (0..=l)
                .filter(|&m| m < a.len() && l - m < b.len())
                .map(|m| a[m] * b[l - m])
                .sum()
        })
        .collect()
}
