//! Independent construction of two-factor skeletal products by whole-matrix
//! manipulation: take the Kronecker product (or sum) of the flat assembled
//! factors, regroup vertices by summed level, and discard everything that is
//! not within one level or between adjacent levels.

use crate::error::Result;
use crate::graph::Graph;
use crate::lineage::GradedGraph;
use crate::sparse::{prefix_sums, Permutation};

use super::Kind;

pub fn appendix_oracle(
    a: &GradedGraph,
    b: &GradedGraph,
    kind: Kind,
    top: usize,
) -> Result<GradedGraph> {
    let (a, b) = (a.truncate(top), b.truncate(top));
    let (fa, fb) = (a.assemble_flat(), b.assemble_flat());
    let full = match kind {
        Kind::Cross => fa.adj().kron(fb.adj()),
        Kind::Box => fa.adj().kron_sum(fb.adj())?,
        Kind::Strong => fa
            .adj()
            .kron_sum(fb.adj())?
            .max_entrywise(&fa.adj().kron(fb.adj()))?,
    };

    let (la, lb) = (a.vertex_levels(), b.vertex_levels());
    let nb = lb.len();
    let key = |idx: usize| (la[idx / nb] + lb[idx % nb], la[idx / nb]);
    let mut order: Vec<usize> = (0..full.nrows()).collect();
    order.sort_by_key(|&i| key(i)); // stable: ties keep u·N2 + v order
    let mut forward = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        forward[old] = new;
    }
    let regrouped = full.permute(&Permutation::new(forward)?)?;

    let mut sizes = vec![0; top + 1];
    for i in 0..full.nrows() {
        let l = key(i).0;
        if l <= top {
            sizes[l] += 1;
        }
    }
    let off = prefix_sums(&sizes);
    let range = |l: usize| off[l]..off[l + 1];
    let levels = (0..=top)
        .map(|l| Graph::undirected(regrouped.submatrix(range(l), range(l))))
        .collect::<Result<Vec<_>>>()?;
    let inter = (0..top)
        .map(|l| regrouped.submatrix(range(l + 1), range(l)))
        .collect();
    GradedGraph::new(
        format!("{}_{}_{}_oracle", a.name, kind, b.name),
        levels,
        inter,
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lineage::{complete_lineage, path_lineage};
    use crate::skeletal::{skeletal_product, ProductSpec};

    #[test]
    fn agrees_with_component_formulas() {
        let (p, c) = (path_lineage(3), complete_lineage(3));
        for kind in [Kind::Box, Kind::Cross, Kind::Strong] {
            for (x, y) in [(&p, &p), (&p, &c), (&c, &p)] {
                let direct = skeletal_product(&[x, y], &ProductSpec::new(kind)).unwrap();
                let oracle = appendix_oracle(x, y, kind, 3).unwrap();
                assert_eq!(direct.levels, oracle.levels, "{kind}");
                assert_eq!(direct.inter, oracle.inter, "{kind}");
            }
        }
    }

    #[test]
    fn kron_of_two_level_truncations_matches_block_layout() {
        // Before regrouping, the full product is just the Kronecker product of
        // the assembled operands.
        let p = path_lineage(1);
        let flat = p.assemble_flat();
        let o = appendix_oracle(&p, &p, Kind::Cross, 2).unwrap();
        let total: usize = o.level_sizes().iter().sum();
        assert_eq!(total, flat.order() * flat.order());
    }
}
