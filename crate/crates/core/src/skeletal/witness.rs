//! Explicit vertex relabellings between product lineages that are equal up to
//! isomorphism: factor swap, re-association, and distribution over `⊕`.

use crate::error::{Error, Result};
use crate::lineage::GradedGraph;
use crate::sparse::Permutation;

use super::ProductCodec;

/// One permutation per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPermutation {
    pub levels: Vec<Permutation>,
}

impl LevelPermutation {
    fn build(
        codec: &ProductCodec,
        mut f: impl FnMut(usize, &[usize], &[usize]) -> Option<usize>,
    ) -> Result<Self> {
        let mut levels = Vec::with_capacity(codec.top() + 1);
        for l in 0..=codec.top() {
            let forward = (0..codec.level_size(l))
                .map(|id| {
                    let (t, idx) = codec.decode(l, id);
                    f(l, &t, &idx).ok_or_else(|| {
                        Error::InvalidPermutation(format!(
                            "vertex {t:?}/{idx:?} at level {l} has no image"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            levels.push(Permutation::new(forward)?);
        }
        Ok(LevelPermutation { levels })
    }

    /// Relabels every level and inter-level map of `gg`.
    pub fn apply(&self, gg: &GradedGraph) -> Result<GradedGraph> {
        if self.levels.len() != gg.num_levels() {
            return Err(Error::InvalidPermutation(format!(
                "{} level permutations for {} levels",
                self.levels.len(),
                gg.num_levels()
            )));
        }
        let levels = gg
            .levels
            .iter()
            .zip(&self.levels)
            .map(|(g, p)| g.permute(p))
            .collect::<Result<Vec<_>>>()?;
        let inter = gg
            .inter
            .iter()
            .enumerate()
            .map(|(l, s)| s.permute_rect(&self.levels[l + 1], &self.levels[l]))
            .collect::<Result<Vec<_>>>()?;
        let mut out = GradedGraph::new(gg.name.clone(), levels, inter, None)?;
        out.metadata = gg.metadata.clone();
        Ok(out)
    }
}

/// Maps `A ∘ B` (codec `from`) onto `B ∘ A` (codec `to`) by reversing the
/// factor order of every vertex tuple.
pub fn swap_permutation(from: &ProductCodec, to: &ProductCodec) -> Result<LevelPermutation> {
    LevelPermutation::build(from, |l, t, idx| {
        let rt: Vec<usize> = t.iter().rev().copied().collect();
        let ri: Vec<usize> = idx.iter().rev().copied().collect();
        to.encode(l, &rt, &ri)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assoc {
    /// `(A ∘ B) ∘ C`
    Left,
    /// `A ∘ (B ∘ C)`
    Right,
}

/// Maps the flat three-factor product (codec `flat`) onto a nested binary
/// product whose inner pair has codec `inner` and outer pair codec `outer`.
pub fn reassociation_permutation(
    flat: &ProductCodec,
    inner: &ProductCodec,
    outer: &ProductCodec,
    assoc: Assoc,
) -> Result<LevelPermutation> {
    if flat.num_factors() != 3 {
        return Err(Error::InvalidArgument(
            "re-association needs three factors".into(),
        ));
    }
    LevelPermutation::build(flat, |l, t, idx| match assoc {
        Assoc::Left => {
            let xl = t[0] + t[1];
            if xl > inner.top() {
                return None;
            }
            let x = inner.encode(xl, &t[..2], &idx[..2])?;
            outer.encode(l, &[xl, t[2]], &[x, idx[2]])
        }
        Assoc::Right => {
            let yl = t[1] + t[2];
            if yl > inner.top() {
                return None;
            }
            let y = inner.encode(yl, &t[1..], &idx[1..])?;
            outer.encode(l, &[t[0], yl], &[idx[0], y])
        }
    })
}

/// Maps `A ∘ (B ⊕ C)` (codec `lhs`, built with levelwise `⊕`) onto
/// `(A ∘ B) ⊕ (A ∘ C)`; `b_sizes` are the level sizes of `B`.
pub fn distributive_permutation(
    lhs: &ProductCodec,
    ab: &ProductCodec,
    ac: &ProductCodec,
    b_sizes: &[usize],
) -> Result<LevelPermutation> {
    LevelPermutation::build(lhs, |l, t, idx| {
        let nb = b_sizes[t[1]];
        if idx[1] < nb {
            ab.encode(l, t, idx)
        } else {
            Some(ab.level_size(l) + ac.encode(l, t, &[idx[0], idx[1] - nb])?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lineage::{complete_lineage, levelwise_oplus, nhat, path_lineage};
    use crate::skeletal::{codec_for, skeletal_product, Kind, ProductSpec};

    fn product(fs: &[&GradedGraph], kind: Kind) -> (GradedGraph, ProductCodec) {
        let spec = ProductSpec::new(kind);
        (
            skeletal_product(fs, &spec).unwrap(),
            codec_for(fs, &spec).unwrap(),
        )
    }

    #[test]
    fn swap_is_exact() {
        let (a, b) = (path_lineage(3), complete_lineage(3));
        for kind in [Kind::Box, Kind::Cross, Kind::Strong] {
            let (ab, cab) = product(&[&a, &b], kind);
            let (ba, cba) = product(&[&b, &a], kind);
            let p = swap_permutation(&cab, &cba).unwrap();
            let moved = p.apply(&ab).unwrap();
            assert_eq!(moved.levels, ba.levels);
            assert_eq!(moved.inter, ba.inter);
        }
    }

    #[test]
    fn box_is_associative() {
        let (a, b, c) = (path_lineage(2), complete_lineage(2), nhat(2));
        let (flat, cflat) = product(&[&a, &b, &c], Kind::Box);
        let (ab, cab) = product(&[&a, &b], Kind::Box);
        let (left, cleft) = product(&[&ab, &c], Kind::Box);
        let (bc, cbc) = product(&[&b, &c], Kind::Box);
        let (right, cright) = product(&[&a, &bc], Kind::Box);
        let pl = reassociation_permutation(&cflat, &cab, &cleft, Assoc::Left).unwrap();
        let pr = reassociation_permutation(&cflat, &cbc, &cright, Assoc::Right).unwrap();
        let (fl, fr) = (pl.apply(&flat).unwrap(), pr.apply(&flat).unwrap());
        assert_eq!(fl.levels, left.levels);
        assert_eq!(fl.inter, left.inter);
        assert_eq!(fr.levels, right.levels);
        assert_eq!(fr.inter, right.inter);
    }

    #[test]
    fn distributes_over_levelwise_sum() {
        let (a, b, c) = (path_lineage(2), complete_lineage(2), path_lineage(2));
        let sum = levelwise_oplus(&b, &c).unwrap();
        for kind in [Kind::Box, Kind::Cross, Kind::Strong] {
            let (lhs, clhs) = product(&[&a, &sum], kind);
            let (ab, cab) = product(&[&a, &b], kind);
            let (ac, cac) = product(&[&a, &c], kind);
            let rhs = levelwise_oplus(&ab, &ac).unwrap();
            let p = distributive_permutation(&clhs, &cab, &cac, &b.level_sizes()).unwrap();
            let moved = p.apply(&lhs).unwrap();
            assert_eq!(moved.levels, rhs.levels, "{kind}");
            assert_eq!(moved.inter, rhs.inter, "{kind}");
        }
    }
}
