//! Graphs as adjacency matrices, with disjoint union and the box, cross and
//! strong products.
//!
//! Product vertex `(i, a)` is always `i * |V2| + a`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sparse::{Permutation, SparseMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    adj: SparseMatrix,
    undirected: bool,
}

impl Graph {
    /// Wraps an adjacency matrix, checking squareness, nonnegative weights and,
    /// for undirected graphs, exact symmetry.
    pub fn new(adj: SparseMatrix, undirected: bool) -> Result<Self> {
        if !adj.is_square() {
            return Err(Error::NotSquare {
                op: "graph",
                rows: adj.nrows(),
                cols: adj.ncols(),
            });
        }
        if adj.entries().iter().any(|e| e.2 < 0.0) {
            return Err(Error::InvalidArgument("negative edge weight".into()));
        }
        if undirected && !adj.is_symmetric() {
            return Err(Error::NotSymmetric { op: "graph" });
        }
        Ok(Graph { adj, undirected })
    }

    pub fn undirected(adj: SparseMatrix) -> Result<Self> {
        Self::new(adj, true)
    }

    /// Undirected 0/1 graph from an edge list; `(u, u)` is a self-loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut trip = Vec::with_capacity(2 * edges.len());
        for &(u, v) in edges {
            trip.push((u, v, 1.0));
            if u != v {
                trip.push((v, u, 1.0));
            }
        }
        // Repeated edges collapse to weight 1.
        let adj = SparseMatrix::from_triplets(n, n, trip)?.pattern();
        Ok(Graph {
            adj,
            undirected: true,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: SparseMatrix::zeros(n, n),
            undirected: true,
        }
    }

    /// One vertex carrying one self-loop.
    pub fn root() -> Self {
        Graph {
            adj: SparseMatrix::identity(1),
            undirected: true,
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges in range")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges).expect("cycle edges in range")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::from_edges(n, &edges).expect("complete edges in range")
    }

    pub fn adj(&self) -> &SparseMatrix {
        &self.adj
    }

    pub fn into_adj(self) -> SparseMatrix {
        self.adj
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn order(&self) -> usize {
        self.adj.nrows()
    }

    /// Undirected edge count: off-diagonal pairs once, self-loops once.
    pub fn edge_count(&self) -> usize {
        if self.undirected {
            self.adj.entries().iter().filter(|e| e.0 <= e.1).count()
        } else {
            self.adj.nnz()
        }
    }

    pub fn self_loops(&self) -> usize {
        self.adj.entries().iter().filter(|e| e.0 == e.1).count()
    }

    fn check_flags(&self, other: &Graph, op: &'static str) -> Result<()> {
        if self.undirected != other.undirected {
            return Err(Error::FlagMismatch { op });
        }
        Ok(())
    }

    /// Disjoint union: block-diagonal adjacency, `other` shifted by `|V1|`.
    pub fn oplus(&self, other: &Graph) -> Result<Graph> {
        self.check_flags(other, "oplus")?;
        let mut blocks = BTreeMap::new();
        blocks.insert((0, 0), self.adj.clone());
        blocks.insert((1, 1), other.adj.clone());
        let sizes = [self.order(), other.order()];
        Ok(Graph {
            adj: SparseMatrix::block_assemble(&blocks, &sizes, &sizes)?,
            undirected: self.undirected,
        })
    }

    /// Cartesian product `A1 ⊗ I + I ⊗ A2`.
    pub fn box_product(&self, other: &Graph) -> Result<Graph> {
        self.check_flags(other, "box")?;
        Ok(Graph {
            adj: self.adj.kron_sum(&other.adj)?,
            undirected: self.undirected,
        })
    }

    /// Direct (tensor) product `A1 ⊗ A2`.
    pub fn cross(&self, other: &Graph) -> Result<Graph> {
        self.check_flags(other, "cross")?;
        Ok(Graph {
            adj: self.adj.kron(&other.adj),
            undirected: self.undirected,
        })
    }

    /// Strong product: the edge union of box and cross.
    pub fn strong(&self, other: &Graph) -> Result<Graph> {
        let b = self.box_product(other)?;
        let c = self.cross(other)?;
        Ok(Graph {
            adj: b.adj.max_entrywise(&c.adj)?,
            undirected: self.undirected,
        })
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.adj.row_sums()
    }

    /// `L = A − diag(A·1)`: negative semidefinite, zero row sums.
    pub fn laplacian(&self) -> Result<SparseMatrix> {
        if !self.undirected {
            return Err(Error::Directed { op: "laplacian" });
        }
        self.adj.sub(&SparseMatrix::from_diag(&self.degrees()))
    }

    pub fn permute(&self, p: &Permutation) -> Result<Graph> {
        Ok(Graph {
            adj: self.adj.permute(p)?,
            undirected: self.undirected,
        })
    }

    /// Graphviz text; undirected edges once, self-loops as `v -- v`.
    pub fn to_dot(&self, name: &str) -> String {
        let (kw, arrow) = if self.undirected {
            ("graph", "--")
        } else {
            ("digraph", "->")
        };
        let mut out = format!("{kw} \"{name}\" {{\n");
        for v in 0..self.order() {
            let _ = writeln!(out, "  {v};");
        }
        for &(r, c, _) in self.adj.entries() {
            if !self.undirected || r <= c {
                let _ = writeln!(out, "  {r} {arrow} {c};");
            }
        }
        out.push_str("}\n");
        out
    }

    /// `u v` per line, 0-based, undirected edges once.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(r, c, _) in self.adj.entries() {
            if !self.undirected || r <= c {
                let _ = writeln!(out, "{r} {c}");
            }
        }
        out
    }
}

/// Witness for `G1 ∘ (G2 ⊕ G3) ≅ (G1 ∘ G2) ⊕ (G1 ∘ G3)` for either product:
/// maps index `i·(n2+n3)+a` of the left side to its slot in the right side.
pub fn distributive_permutation(n1: usize, n2: usize, n3: usize) -> Permutation {
    let forward = (0..n1 * (n2 + n3))
        .map(|idx| {
            let (i, a) = (idx / (n2 + n3), idx % (n2 + n3));
            if a < n2 {
                i * n2 + a
            } else {
                n1 * n2 + i * n3 + (a - n2)
            }
        })
        .collect();
    Permutation::new(forward).expect("block interleaving is a bijection")
}

/// Factor swap `(i, a) ↦ (a, i)` taking `G1 ∘ G2` onto `G2 ∘ G1`.
pub fn swap_permutation(n1: usize, n2: usize) -> Permutation {
    let forward = (0..n1 * n2).map(|idx| (idx % n2) * n1 + idx / n2).collect();
    Permutation::new(forward).expect("swap is a bijection")
}
