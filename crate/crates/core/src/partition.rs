use crate::error::{input, Result};
use crate::vertex_set::VertexSet;

/// An equivalence relation on `0..n`, stored as its blocks.
///
/// Blocks are ordered by their smallest element, so two partitions of the
/// same relation compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<VertexSet>,
}

impl Partition {
    /// Builds a partition from an arbitrary labelling: vertices with equal
    /// labels share a block.
    pub fn from_labels<L: Eq + std::hash::Hash + Clone>(labels: &[L]) -> Self {
        let n = labels.len();
        let mut seen = std::collections::HashMap::new();
        let mut block_of = Vec::with_capacity(n);
        for label in labels {
            let next = seen.len();
            block_of.push(*seen.entry(label.clone()).or_insert(next));
        }
        let mut blocks = vec![VertexSet::empty(n); seen.len()];
        for (v, &b) in block_of.iter().enumerate() {
            blocks[b].insert(v);
        }
        Partition { block_of, blocks }
    }

    /// Builds a partition from explicit blocks, checking that they are
    /// nonempty, disjoint, and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return input(format!("block {i} is empty"));
            }
            for &v in block {
                if v >= n {
                    return input(format!("vertex {v} in block {i} is out of range 0..{n}"));
                }
                if labels[v] != usize::MAX {
                    return input(format!("vertex {v} appears in more than one block"));
                }
                labels[v] = i;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return input(format!("vertex {v} is not covered by any block"));
        }
        Ok(Self::from_labels(&labels))
    }

    /// The smallest equivalence relation containing every pair accepted by
    /// `related`.
    pub fn closure_of(n: usize, mut related: impl FnMut(usize, usize) -> bool) -> Self {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for x in 0..n {
            for y in x + 1..n {
                if related(x, y) {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        Self::from_labels(&labels)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &VertexSet {
        &self.blocks[i]
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(VertexSet::len).collect()
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.vertex_count() == coarser.vertex_count()
            && self.blocks.iter().all(|b| {
                let mut it = b.iter();
                let first = it.next().map(|v| coarser.block_of(v));
                it.all(|v| Some(coarser.block_of(v)) == first)
            })
    }
}
