use std::collections::BTreeMap;

use serde_json::json;

use crate::graph::Graph;
use crate::lineage::{GradedGraph, VertexCodec};
use crate::sparse::SparseMatrix;

/// Vertex numbering of level `l` of a thickened lineage: inner level `i`
/// ascending (`0..=l`), then the vertex `j` within `G_i`.
#[derive(Clone, Debug)]
pub struct ThickenCodec {
    sizes: Vec<usize>,
}

impl ThickenCodec {
    pub fn new(source: &GradedGraph) -> Self {
        ThickenCodec {
            sizes: source.level_sizes(),
        }
    }

    pub fn level(&self, l: usize) -> VertexCodec {
        VertexCodec::new(&self.sizes[..=l])
    }

    pub fn encode(&self, l: usize, i: usize, j: usize) -> usize {
        assert!(i <= l);
        self.level(l).encode(i, j)
    }

    pub fn decode(&self, l: usize, id: usize) -> (usize, usize) {
        self.level(l).decode(id)
    }
}

/// Thickening: level `l` stacks all source levels `≤ l` (with their `S` links);
/// vertex `(i, j)` at level `l` links to `(i, j')` at level `l + 1` with weight
/// `G_i[j, j']`. The new inner level `l + 1` has no link downward.
pub fn thicken(gg: &GradedGraph) -> GradedGraph {
    let sizes = gg.level_sizes();
    let levels: Vec<Graph> = (0..gg.num_levels())
        .map(|l| gg.truncate(l).assemble_flat())
        .collect();
    let inter = (0..gg.top())
        .map(|l| {
            let blocks: BTreeMap<_, _> = (0..=l)
                .map(|i| ((i, i), gg.levels[i].adj().clone()))
                .collect();
            SparseMatrix::block_assemble(&blocks, &sizes[..=l + 1], &sizes[..=l])
                .expect("copy blocks match level sizes")
        })
        .collect();
    GradedGraph::new(format!("theta_{}", gg.name), levels, inter, None)
        .expect("thickened shapes agree")
        .with_metadata("kind", "thicken")
        .with_metadata("factors", json!([gg.name]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lineage::{grid2d_lineage, nhat, path_lineage};

    #[test]
    fn thickened_nhat() {
        let t = thicken(&nhat(3));
        assert_eq!(t.level_sizes(), vec![1, 2, 3, 4]);
        for (l, g) in t.levels.iter().enumerate() {
            let mut edges: Vec<_> = (0..=l).map(|i| (i, i)).collect();
            edges.extend((1..=l).map(|i| (i - 1, i)));
            assert_eq!(g, &Graph::from_edges(l + 1, &edges).unwrap());
        }
        for (l, s) in t.inter.iter().enumerate() {
            let copy = (0..=l).map(|i| (i, i, 1.0));
            assert_eq!(s, &SparseMatrix::from_triplets(l + 2, l + 1, copy).unwrap());
        }
        assert!(t.validate().is_ok());
    }

    #[test]
    fn thickened_sizes() {
        let t = thicken(&path_lineage(3));
        assert_eq!(t.level_sizes(), vec![1, 3, 7, 15]);
        let tt = thicken(&thicken(&grid2d_lineage(2)));
        let once = thicken(&grid2d_lineage(2)).level_sizes();
        assert_eq!(tt.level_sizes()[2], once[..=2].iter().sum::<usize>());
    }

    #[test]
    fn codec_order() {
        let t = ThickenCodec::new(&path_lineage(3));
        assert_eq!(t.encode(2, 2, 0), 3);
        assert_eq!(t.decode(3, 7), (3, 0));
    }
}
