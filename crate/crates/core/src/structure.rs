//! Connectivity, θ-classes, twin blocks and retract quotients.

use crate::digraph::{is_homomorphism, Digraph};
use crate::error::{input, precondition, Result};
use crate::partition::Partition;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BidirStatus {
    /// Every connected component is a single θ-class.
    Connected,
    /// Some connected component contains at least two θ-classes.
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub components: Partition,
    pub theta: Partition,
    pub status: BidirStatus,
}

impl ConnectivityReport {
    pub fn component_count(&self) -> usize {
        self.components.block_count()
    }

    pub fn theta_class_count(&self) -> usize {
        self.theta.block_count()
    }
}

/// Maximal weakly connected vertex sets.
pub fn connected_components(d: &Digraph) -> Partition {
    Partition::closure_of(d.vertex_count(), |x, y| d.adjacent(x, y))
}

/// Classes of θ(D): vertices joined by a chain of double edges.
pub fn theta_classes(d: &Digraph) -> Partition {
    Partition::closure_of(d.vertex_count(), |x, y| d.is_double(x, y))
}

pub fn connectivity_report(d: &Digraph) -> ConnectivityReport {
    let components = connected_components(d);
    let theta = theta_classes(d);
    let status = if components.block_count() == theta.block_count() {
        BidirStatus::Connected
    } else {
        BidirStatus::Disconnected
    };
    ConnectivityReport {
        components,
        theta,
        status,
    }
}

/// `X ⇉ Y`: every vertex of `X` dominates every vertex of `Y`.
pub fn dominates_all(d: &Digraph, from: &VertexSet, to: &VertexSet) -> bool {
    from.iter().all(|x| to.is_subset(d.out_neighbors(x)))
}

/// `X → Y`: some vertex of `X` dominates some vertex of `Y`.
pub fn dominates_some(d: &Digraph, from: &VertexSet, to: &VertexSet) -> bool {
    from.iter().any(|x| !to.is_disjoint(d.out_neighbors(x)))
}

/// Whether `D[S]` is a complete reflexive graph.
pub fn induces_complete_reflexive(d: &Digraph, block: &VertexSet) -> bool {
    dominates_all(d, block, block)
}

/// Twin blocks: `x` and `y` share a block iff `x ⇄ y` and they have the same
/// in- and out-neighbours outside `{x, y}`.
///
/// In a reflexive digraph the relation is an equivalence (it amounts to
/// equal closed in- and out-neighbourhoods), and every block induces K°.
pub fn twin_partition(d: &Digraph) -> Result<Partition> {
    if !d.is_reflexive() {
        return input("twin partition needs a reflexive digraph");
    }
    let key: Vec<(&VertexSet, &VertexSet)> = d
        .vertices()
        .map(|v| (d.out_neighbors(v), d.in_neighbors(v)))
        .collect();
    Ok(Partition::from_labels(&key))
}

/// A quotient together with its retraction pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub digraph: Digraph,
    /// `retraction[x]` is the block containing `x`.
    pub retraction: Vec<usize>,
    /// `injection[b]` is a chosen representative (the smallest vertex) of block `b`.
    pub injection: Vec<usize>,
}

/// `D / ρ`: blocks become vertices and `(S, T)` is an edge iff `S = T` or
/// `S ⇉ T`.
///
/// Every block must induce K°, and distinct adjacent blocks must be joined
/// by a full bundle in at least one direction; otherwise the offending
/// blocks are reported.
pub fn quotient(d: &Digraph, partition: &Partition) -> Result<Quotient> {
    if partition.vertex_count() != d.vertex_count() {
        return input(format!(
            "partition of {} vertices used with a digraph on {} vertices",
            partition.vertex_count(),
            d.vertex_count()
        ));
    }
    let blocks = partition.blocks();
    for (i, b) in blocks.iter().enumerate() {
        if !induces_complete_reflexive(d, b) {
            return precondition(format!(
                "block {i} {b:?} does not induce a complete reflexive graph"
            ));
        }
    }
    let k = blocks.len();
    let mut full = vec![vec![false; k]; k];
    for i in 0..k {
        full[i][i] = true;
        for j in 0..k {
            if i != j {
                full[i][j] = dominates_all(d, &blocks[i], &blocks[j]);
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let adjacent = dominates_some(d, &blocks[i], &blocks[j])
                || dominates_some(d, &blocks[j], &blocks[i]);
            if adjacent && !full[i][j] && !full[j][i] {
                return precondition(format!(
                    "blocks {i} {:?} and {j} {:?} are adjacent but neither dominates the other",
                    blocks[i], blocks[j]
                ));
            }
        }
    }
    let q = Digraph::from_fn(k, |i, j| full[i][j]);
    let retraction = partition.labels().to_vec();
    let injection: Vec<usize> = blocks.iter().map(|b| b.first().unwrap()).collect();
    debug_assert!(is_homomorphism(d, &q, &retraction).unwrap());
    debug_assert!(is_homomorphism(&q, d, &injection).unwrap());
    Ok(Quotient {
        digraph: q,
        retraction,
        injection,
    })
}

/// The blocks of γ_T(S) (the closure of "no `t ∈ T` with `x → t → y` or
/// `y → t → x`"), each a subset of `V(D)`.
///
/// `S` and `T` must be distinct θ-classes with `S ⇄ T` and `|S| ≥ 2`. The
/// number of blocks is whatever the relation produces; it is not assumed
/// to be two.
pub fn gamma_partition(d: &Digraph, s: &VertexSet, t: &VertexSet) -> Result<Vec<VertexSet>> {
    if !d.is_reflexive() {
        return input("gamma partition needs a reflexive digraph");
    }
    if s.universe() != d.vertex_count() || t.universe() != d.vertex_count() {
        return input("vertex sets do not match the digraph");
    }
    let theta = theta_classes(d);
    let is_class = |x: &VertexSet| theta.blocks().iter().any(|b| b == x);
    if !is_class(s) || !is_class(t) {
        return precondition("S and T must both be θ-classes");
    }
    if s == t {
        return precondition("S and T must be distinct θ-classes");
    }
    if !(dominates_some(d, s, t) && dominates_some(d, t, s)) {
        return precondition("S and T must satisfy S ⇄ T");
    }
    if s.len() < 2 {
        return precondition(format!("θ-class {s:?} has a single vertex"));
    }
    let members = s.to_vec();
    let separated = |x: usize, y: usize| {
        t.iter().any(|w| {
            (d.has_edge(x, w) && d.has_edge(w, y)) || (d.has_edge(y, w) && d.has_edge(w, x))
        })
    };
    let local = Partition::closure_of(members.len(), |i, j| !separated(members[i], members[j]));
    Ok(local
        .blocks()
        .iter()
        .map(|b| VertexSet::from_vertices(d.vertex_count(), b.iter().map(|i| members[i])))
        .collect())
}

/// Result of [`recognize_inflation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflationRecognition {
    /// Blocks are twin classes; `(S, T)` is an edge iff `S = T` or `S ⇉ T`.
    pub quotient: Digraph,
    pub partition: Partition,
    /// True iff `D` equals the inflation of `quotient` along `partition`.
    /// Twins have identical closed neighbourhoods, so this holds for every
    /// reflexive input; it is still checked edge by edge.
    pub valid: bool,
}

/// Inverse of [`Digraph::inflate`] for reflexive digraphs: collapses twin
/// blocks and reports whether every pair of blocks is joined all-or-nothing.
pub fn recognize_inflation(d: &Digraph) -> Result<InflationRecognition> {
    let partition = twin_partition(d)?;
    let blocks = partition.blocks();
    let k = blocks.len();
    let q = Digraph::from_fn(k, |i, j| i == j || dominates_all(d, &blocks[i], &blocks[j]));
    let valid = d.vertices().all(|x| {
        d.vertices().all(|y| {
            let (bx, by) = (partition.block_of(x), partition.block_of(y));
            d.has_edge(x, y) == q.has_edge(bx, by)
        })
    });
    Ok(InflationRecognition {
        quotient: q,
        partition,
        valid,
    })
}
