//! The independent-set gadget `G_k`: a reflexive improper digraph that is
//! HH iff the graph `G` has no independent set of size `k`.

use std::ops::Range;

use crate::digraph::Digraph;
use crate::error::{capability, input, Result};
use crate::oracle::{
    cone_of_type, is_hh_bruteforce, ConeArrow, ConeType, PartialHom, ORACLE_MAX_VERTICES,
};
use crate::vertex_set::VertexSet;

/// Largest graph accepted by [`max_independent_set`].
pub const INDEPENDENT_SET_MAX_VERTICES: usize = 20;

/// `G_k` with the index ranges of its three parts. `V` holds the vertices of
/// `G` in their original order, `I` holds `q₀ … q_k`, `S` holds `s₀ … s_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetLayout {
    pub digraph: Digraph,
    pub v: Range<usize>,
    pub i: Range<usize>,
    pub s: Range<usize>,
    pub k: usize,
}

impl GadgetLayout {
    pub fn q(&self, j: usize) -> usize {
        self.i.start + j
    }

    pub fn s_vertex(&self, j: usize) -> usize {
        self.s.start + j
    }
}

fn check_graph(g: &Digraph) -> Result<()> {
    if g.vertices().any(|v| g.has_loop(v)) {
        return input("G must be loopless");
    }
    if !g.is_symmetric() {
        return input("G must be symmetric");
    }
    Ok(())
}

pub fn build_gk(g: &Digraph, k: usize) -> Result<GadgetLayout> {
    check_graph(g)?;
    if k < 2 {
        return input(format!("k must be at least 2, got {k}"));
    }
    let n = g.vertex_count();
    let total = n + 2 * k + 2;
    let (v, i, s) = (0..n, n..n + k + 1, n + k + 1..total);
    let q = |j: usize| n + j;
    let sv = |j: usize| n + k + 1 + j;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let double = |edges: &mut Vec<(usize, usize)>, a: usize, b: usize| {
        edges.push((a, b));
        edges.push((b, a));
    };
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                edges.push((a, b));
            }
        }
    }
    edges.extend((0..total).map(|x| (x, x)));
    for a in 0..=k {
        for b in 0..=k {
            if a != b {
                double(&mut edges, sv(a), sv(b));
                double(&mut edges, sv(a), q(b));
            }
            if a < b {
                edges.push((q(a), q(b)));
            }
        }
        edges.push((sv(a), q(a)));
    }
    for x in 0..n {
        edges.push((x, q(0)));
        for j in 1..=k {
            double(&mut edges, x, q(j));
        }
        for j in 0..=k {
            double(&mut edges, x, sv(j));
        }
    }
    Ok(GadgetLayout {
        digraph: Digraph::new(total, &edges)?,
        v,
        i,
        s,
        k,
    })
}

/// A maximum independent set by branch and bound on the first undecided
/// vertex.
pub fn max_independent_set(g: &Digraph) -> Result<(usize, VertexSet)> {
    check_graph(g)?;
    let n = g.vertex_count();
    if n > INDEPENDENT_SET_MAX_VERTICES {
        return capability(format!(
            "independent set search is limited to {INDEPENDENT_SET_MAX_VERTICES} vertices"
        ));
    }
    let adj: Vec<u64> = g.vertices().map(|v| g.out_mask(v)).collect();

    fn go(adj: &[u64], open: u64, chosen: u64, best: &mut u64) {
        if chosen.count_ones() + open.count_ones() <= best.count_ones() {
            return;
        }
        if open == 0 {
            *best = chosen;
            return;
        }
        let v = open.trailing_zeros() as usize;
        let bit = 1u64 << v;
        go(adj, open & !bit & !adj[v], chosen | bit, best);
        go(adj, open & !bit, chosen, best);
    }

    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut best = 0u64;
    go(&adj, all, 0, &mut best);
    Ok((best.count_ones() as usize, VertexSet::from_mask(n, best)))
}

/// The refuting partial map for a `k`-independent set `x₀ < … < x_{k-1}`:
/// `xᵢ ↦ qᵢ` and `q₀ ↦ q_k`.
pub fn forward_witness(layout: &GadgetLayout, indep: &VertexSet) -> Result<PartialHom> {
    let d = &layout.digraph;
    let xs = indep.to_vec();
    if indep.universe() != d.vertex_count() && indep.universe() != layout.v.len() {
        return input("independent set over the wrong vertex universe");
    }
    if xs.iter().any(|x| !layout.v.contains(x)) {
        return input("independent set must lie in V");
    }
    if xs.len() != layout.k {
        return input(format!(
            "independent set has {} vertices, expected {}",
            xs.len(),
            layout.k
        ));
    }
    if xs
        .iter()
        .enumerate()
        .any(|(a, &x)| xs[a + 1..].iter().any(|&y| d.is_double(x, y)))
    {
        return input("vertex set is not independent in G");
    }
    let mut pairs: Vec<(usize, usize)> = xs
        .iter()
        .enumerate()
        .map(|(j, &x)| (x, layout.q(j)))
        .collect();
    pairs.push((layout.q(0), layout.q(layout.k)));
    PartialHom::from_pairs(d.vertex_count(), &pairs)
}

/// Vertices of `G_k` that are `⇄`-cones for the whole of `I`. The gadget
/// argument needs this to be empty.
pub fn full_double_cones_of_i(layout: &GadgetLayout) -> Result<VertexSet> {
    let tuple: Vec<usize> = layout.i.clone().collect();
    cone_of_type(
        &layout.digraph,
        &tuple,
        &ConeType::all(tuple.len(), ConeArrow::Both),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub k: usize,
    pub max_independent: usize,
    pub has_k_independent: bool,
    /// Oracle verdict on `G_k`.
    pub gadget_hh: bool,
    /// When `G` has a `k`-independent set: the forward map is a partial
    /// homomorphism and `I` has no `⇄`-cone.
    pub forward_witness_ok: Option<bool>,
    pub agree: bool,
}

/// Decides both sides separately and compares them.
pub fn verify_equivalence(g: &Digraph, k: usize) -> Result<EquivalenceReport> {
    check_graph(g)?;
    let total = g.vertex_count() + 2 * k + 2;
    if total > ORACLE_MAX_VERTICES {
        return capability(format!(
            "G_k has {total} vertices; the oracle is limited to {ORACLE_MAX_VERTICES}"
        ));
    }
    let layout = build_gk(g, k)?;
    let (size, set) = max_independent_set(g)?;
    let has_k_independent = size >= k;
    let gadget_hh = is_hh_bruteforce(&layout.digraph)?.is_hh();
    let forward_witness_ok = if has_k_independent {
        let chosen = VertexSet::from_vertices(layout.digraph.vertex_count(), set.iter().take(k));
        let f = forward_witness(&layout, &chosen)?;
        Some(
            f.is_valid(&layout.digraph, &layout.digraph)
                && full_double_cones_of_i(&layout)?.is_empty(),
        )
    } else {
        None
    };
    Ok(EquivalenceReport {
        k,
        max_independent: size,
        has_k_independent,
        gadget_hh,
        forward_witness_ok,
        agree: has_k_independent != gadget_hh && forward_witness_ok != Some(false),
    })
}

/// Every loopless symmetric digraph on `n` labeled vertices.
pub fn all_graphs(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0..1u64 << pairs.len())
        .map(|bits| {
            let mut edges = Vec::new();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    edges.extend([(a, b), (b, a)]);
                }
            }
            Digraph::new(n, &edges).unwrap()
        })
        .collect()
}
