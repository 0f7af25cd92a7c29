use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Positive rational `num / den`, used for dilation rates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidArgument(format!(
                "rate {num}/{den} must be positive"
            )));
        }
        let g = gcd(num, den);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn one() -> Self {
        Ratio { num: 1, den: 1 }
    }

    /// `⌈ρ · l⌉`, exactly.
    pub fn ceil_mul(self, l: usize) -> usize {
        (l as u64 * self.num).div_ceil(self.den) as usize
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `p/q`, integers and plain decimals (`0.5` is `1/2`).
impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse rate `{s}`"));
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return Ratio::new(p, q);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 9 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        Ratio::new(int * den + frac, den)
    }
}

/// Contribution of one factor's level to the product level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelMap {
    Identity,
    /// `l ↦ ⌈ρ l⌉`.
    Dilate(Ratio),
    /// Explicit monotone nondecreasing table; levels past its end are unused.
    Table(Vec<usize>),
}

impl LevelMap {
    pub fn apply(&self, l: usize) -> Option<usize> {
        match self {
            LevelMap::Identity => Some(l),
            LevelMap::Dilate(r) => Some(r.ceil_mul(l)),
            LevelMap::Table(t) => t.get(l).copied(),
        }
    }

    /// Smallest product contribution a level beyond `top` could have.
    pub(crate) fn beyond(&self, top: usize) -> usize {
        match self {
            LevelMap::Table(t) => t
                .get(top + 1)
                .or_else(|| t.get(top))
                .or(t.last())
                .copied()
                .unwrap_or(0),
            _ => self.apply(top + 1).expect("unbounded map"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let LevelMap::Table(t) = self {
            if t.windows(2).any(|w| w[1] < w[0]) {
                return Err(Error::InvalidArgument(format!(
                    "shape map {t:?} is not nondecreasing"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        match self {
            LevelMap::Identity => json!("identity"),
            LevelMap::Dilate(r) => json!({ "rho": r.to_string() }),
            LevelMap::Table(t) => json!({ "table": t }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Factor levels `(l_1, …, l_n)`.
    pub tuple: Vec<usize>,
    pub offset: usize,
    pub size: usize,
}

/// Vertex numbering of a product lineage.
///
/// Level `L` is a sequence of blocks, one per factor-level tuple mapping to
/// `L`, in lexicographic tuple order (for two factors: `l1` ascending). Inside a
/// block, factor indices are row-major: `(i1, i2) ↦ i1·|V2| + i2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCodec {
    factor_sizes: Vec<Vec<usize>>,
    levels: Vec<Vec<Block>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl ProductCodec {
    pub fn new(factor_sizes: &[Vec<usize>], maps: &[LevelMap], top: usize) -> Self {
        assert_eq!(factor_sizes.len(), maps.len());
        let mut levels: Vec<Vec<Block>> = vec![Vec::new(); top + 1];
        let mut tuple = Vec::with_capacity(factor_sizes.len());
        enumerate(factor_sizes, maps, top, 0, &mut tuple, &mut levels);
        let mut lookup = Vec::with_capacity(top + 1);
        for blocks in &mut levels {
            blocks.sort_by(|a, b| a.tuple.cmp(&b.tuple));
            let mut off = 0;
            let mut map = HashMap::new();
            for (bi, b) in blocks.iter_mut().enumerate() {
                b.offset = off;
                off += b.size;
                map.insert(b.tuple.clone(), bi);
            }
            lookup.push(map);
        }
        ProductCodec {
            factor_sizes: factor_sizes.to_vec(),
            levels,
            lookup,
        }
    }

    pub fn additive(factor_sizes: &[Vec<usize>], top: usize) -> Self {
        Self::new(
            factor_sizes,
            &vec![LevelMap::Identity; factor_sizes.len()],
            top,
        )
    }

    pub fn num_factors(&self) -> usize {
        self.factor_sizes.len()
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn blocks(&self, level: usize) -> &[Block] {
        &self.levels[level]
    }

    pub fn block_index(&self, level: usize, tuple: &[usize]) -> Option<usize> {
        self.lookup[level].get(tuple).copied()
    }

    pub fn level_size(&self, level: usize) -> usize {
        self.levels[level].iter().map(|b| b.size).sum()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        (0..self.levels.len()).map(|l| self.level_size(l)).collect()
    }

    pub fn factor_size(&self, factor: usize, level: usize) -> usize {
        self.factor_sizes[factor][level]
    }

    pub fn encode(&self, level: usize, tuple: &[usize], idx: &[usize]) -> Option<usize> {
        let b = &self.levels[level][self.block_index(level, tuple)?];
        let mut inner = 0;
        for (k, (&t, &i)) in tuple.iter().zip(idx).enumerate() {
            let n = self.factor_sizes[k][t];
            if i >= n {
                return None;
            }
            inner = inner * n + i;
        }
        Some(b.offset + inner)
    }

    pub fn decode(&self, level: usize, id: usize) -> (Vec<usize>, Vec<usize>) {
        let blocks = &self.levels[level];
        let bi = blocks.partition_point(|b| b.offset + b.size <= id);
        let b = &blocks[bi];
        let mut rem = id - b.offset;
        let mut idx = vec![0; b.tuple.len()];
        for k in (0..b.tuple.len()).rev() {
            let n = self.factor_sizes[k][b.tuple[k]];
            idx[k] = rem % n;
            rem /= n;
        }
        (b.tuple.clone(), idx)
    }

    /// Per-level list of tuples, for manifests.
    pub fn block_table(&self) -> Value {
        Value::Array(
            self.levels
                .iter()
                .map(|bs| Value::Array(bs.iter().map(|b| json!(b.tuple)).collect()))
                .collect(),
        )
    }
}

fn enumerate(
    sizes: &[Vec<usize>],
    maps: &[LevelMap],
    top: usize,
    partial: usize,
    tuple: &mut Vec<usize>,
    out: &mut [Vec<Block>],
) {
    let k = tuple.len();
    if k == sizes.len() {
        let size = tuple
            .iter()
            .enumerate()
            .map(|(f, &t)| sizes[f][t])
            .product();
        out[partial].push(Block {
            tuple: tuple.clone(),
            offset: 0,
            size,
        });
        return;
    }
    for l in 0..sizes[k].len() {
        let Some(v) = maps[k].apply(l) else { break };
        if partial + v > top {
            // Maps are nondecreasing, so later levels only overshoot further.
            break;
        }
        tuple.push(l);
        enumerate(sizes, maps, top, partial + v, tuple, out);
        tuple.pop();
    }
}
