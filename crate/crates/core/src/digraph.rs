//! The digraph value type and elementary operations on it.
//!
//! A [`Digraph`] is a finite set of vertices `0..n` together with a binary
//! relation stored as a dense boolean matrix. Loops are ordinary entries of
//! that matrix; reflexivity is a property a digraph may or may not have.

use std::fmt;

use crate::error::{capability, input, Result};
use crate::partition::Partition;
use crate::vertex_set::VertexSet;

/// Largest vertex count accepted by [`Digraph::canonical_form`].
pub const CANONICAL_MAX_VERTICES: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<VertexSet>,
    inc: Vec<VertexSet>,
}

/// The symmetric / antisymmetric / neither trichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// Symmetric relation.
    Graph,
    /// Antisymmetric relation (no double edge between distinct vertices).
    Proper,
    /// Neither: has a double edge and a one-way edge.
    Improper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeKind {
    pub class: EdgeClass,
    pub reflexive: bool,
}

/// Result of [`Digraph::canonical_form`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// `labeling[v]` is the position of `v` in the canonical representative.
    pub labeling: Vec<usize>,
    /// Equal for two digraphs exactly when they are isomorphic.
    pub code: Vec<u8>,
}

impl Digraph {
    /// Digraph on `n` vertices with no edges at all.
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out: vec![VertexSet::empty(n); n],
            inc: vec![VertexSet::empty(n); n],
        }
    }

    /// Builds a digraph from an edge list. Repeated edges are harmless.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut d = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u}, {v}) has an endpoint outside 0..{n}"));
            }
            d.set(u, v);
        }
        Ok(d)
    }

    /// Builds a digraph whose edge relation is given by a predicate.
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut d = Self::empty(n);
        for u in 0..n {
            for v in 0..n {
                if edge(u, v) {
                    d.set(u, v);
                }
            }
        }
        d
    }

    fn set(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
        self.inc[v].insert(u);
    }

    /// The trivial digraph 𝟏: one vertex, no loop.
    pub fn one() -> Self {
        Self::empty(1)
    }

    /// 𝟏°: one vertex with a loop.
    pub fn one_looped() -> Self {
        Self::from_fn(1, |_, _| true)
    }

    /// The oriented cycle `0 → 1 → … → n-1 → 0` without loops.
    pub fn cycle(n: usize) -> Self {
        Self::from_fn(n, |u, v| n > 1 && v == (u + 1) % n && u != v)
    }

    /// C₃° and friends: the oriented cycle with every loop added.
    pub fn reflexive_cycle(n: usize) -> Self {
        Self::cycle(n).reflexive_closure()
    }

    /// K_n: all edges between distinct vertices, no loops.
    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |u, v| u != v)
    }

    /// K_n°: the complete reflexive graph.
    pub fn complete_reflexive(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// The reflexive chain `0 ≤ 1 ≤ … ≤ n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |u, v| u <= v)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// `u ⇄ v`: both arcs present.
    pub fn is_double(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) && self.has_edge(v, u)
    }

    /// `u ∼ v`: at least one arc present.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.inc[v]
    }

    /// Out-neighbourhood as a bitmask; only for digraphs with at most 64 vertices.
    pub fn out_mask(&self, v: usize) -> u64 {
        self.out[v].to_mask()
    }

    pub fn in_mask(&self, v: usize) -> u64 {
        self.inc[v].to_mask()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(VertexSet::len).sum()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.has_loop(v))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|v| !self.has_loop(v))
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(u, v)| self.has_edge(v, u))
    }

    /// No double edge between distinct vertices.
    pub fn is_antisymmetric(&self) -> bool {
        self.edges().all(|(u, v)| u == v || !self.has_edge(v, u))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|y| {
            self.inc[y]
                .iter()
                .all(|x| self.out[y].is_subset(&self.out[x]))
        })
    }

    /// Every pair of distinct vertices is adjacent.
    pub fn is_semicomplete(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.adjacent(u, v)))
    }

    pub fn edge_kind(&self) -> EdgeKind {
        let class = if self.is_symmetric() {
            EdgeClass::Graph
        } else if self.is_antisymmetric() {
            EdgeClass::Proper
        } else {
            EdgeClass::Improper
        };
        EdgeKind {
            class,
            reflexive: self.is_reflexive(),
        }
    }

    pub fn is_improper(&self) -> bool {
        self.edge_kind().class == EdgeClass::Improper
    }

    pub fn reflexive_closure(&self) -> Self {
        let mut d = self.clone();
        for v in 0..self.n {
            d.set(v, v);
        }
        d
    }

    /// Smallest transitive relation containing the arcs (Warshall).
    pub fn transitive_closure(&self) -> Self {
        let mut d = self.clone();
        for k in 0..self.n {
            let from: Vec<usize> = d.inc[k].iter().collect();
            let to: Vec<usize> = d.out[k].iter().collect();
            for &x in &from {
                for &y in &to {
                    d.set(x, y);
                }
            }
        }
        d
    }

    /// Reverses every arc.
    pub fn reverse(&self) -> Self {
        Self::from_fn(self.n, |u, v| self.has_edge(v, u))
    }

    /// `D[W]`, renumbered in increasing vertex order. The second component
    /// maps each new vertex to the original one.
    pub fn induced(&self, subset: &VertexSet) -> Result<(Digraph, Vec<usize>)> {
        if subset.universe() != self.n {
            return input(format!(
                "vertex set over universe {} used with a digraph on {} vertices",
                subset.universe(),
                self.n
            ));
        }
        if subset.is_empty() {
            return input("induced subdigraph needs a nonempty vertex set");
        }
        let map = subset.to_vec();
        let d = Self::from_fn(map.len(), |i, j| self.has_edge(map[i], map[j]));
        Ok((d, map))
    }

    /// `D₁ + D₂ + …`; the empty list gives the empty digraph O.
    pub fn disjoint_union(parts: &[Digraph]) -> Self {
        let n = parts.iter().map(Digraph::vertex_count).sum();
        let mut d = Self::empty(n);
        let mut offset = 0;
        for part in parts {
            for (u, v) in part.edges() {
                d.set(offset + u, offset + v);
            }
            offset += part.n;
        }
        d
    }

    /// `k · D`.
    pub fn copies(&self, k: usize) -> Self {
        Self::disjoint_union(&vec![self.clone(); k])
    }

    /// Replaces vertex `i` by a clique `K°` of `sizes[i]` vertices. Between
    /// distinct classes, `Vᵢ ⇉ Vⱼ` exactly when `i → j`; a double edge
    /// therefore yields bundles in both directions.
    ///
    /// Class `i` occupies a contiguous range of new vertices; the returned
    /// partition lists those ranges in order.
    pub fn inflate(&self, sizes: &[usize]) -> Result<(Digraph, Partition)> {
        if sizes.len() != self.n {
            return input(format!(
                "inflation needs {} class sizes, got {}",
                self.n,
                sizes.len()
            ));
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return input(format!("inflation class {i} has size zero"));
        }
        let labels: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect();
        let d = Self::from_fn(labels.len(), |x, y| {
            labels[x] == labels[y] || self.has_edge(labels[x], labels[y])
        });
        Ok((d, Partition::from_labels(&labels)))
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if !is_permutation(perm, self.n) {
            return input(format!("not a permutation of 0..{}", self.n));
        }
        let mut d = Self::empty(self.n);
        for (u, v) in self.edges() {
            d.set(perm[u], perm[v]);
        }
        Ok(d)
    }

    /// Canonical labelling by permutation search.
    ///
    /// Vertices are first sorted by an isomorphism-invariant signature
    /// (loop, degrees, double-edge degree, then the multiset of neighbour
    /// signatures); only permutations respecting that order are tried, and a
    /// branch is cut as soon as its code prefix exceeds the best one found.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        let n = self.n;
        if n > CANONICAL_MAX_VERTICES {
            return capability(format!(
                "canonical form is limited to {CANONICAL_MAX_VERTICES} vertices, got {n}"
            ));
        }
        let sig = self.vertex_signatures();
        let mut keys: Vec<&Vec<u32>> = sig.iter().collect();
        keys.sort();
        keys.dedup();
        let class: Vec<usize> = sig
            .iter()
            .map(|s| keys.binary_search(&s).unwrap())
            .collect();
        let mut slot_class: Vec<usize> = class.clone();
        slot_class.sort_unstable();

        let adj: Vec<u64> = (0..n).map(|v| self.out_mask(v)).collect();
        let mut search = CanonSearch {
            n,
            adj: &adj,
            class: &class,
            slot_class: &slot_class,
            order: Vec::with_capacity(n),
            used: 0,
            best: None,
        };
        search.run(0, false);
        let (code, order) = search.best.expect("at least one labelling exists");

        let mut labeling = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            labeling[v] = pos;
        }
        let mut bytes = Vec::with_capacity(17);
        bytes.push(n as u8);
        bytes.extend_from_slice(&code.to_be_bytes());
        Ok(CanonicalForm {
            labeling,
            code: bytes,
        })
    }

    fn vertex_signatures(&self) -> Vec<Vec<u32>> {
        let base: Vec<[u32; 4]> = (0..self.n)
            .map(|v| {
                let double = self.out[v].intersection(&self.inc[v]).len();
                [
                    self.has_loop(v) as u32,
                    self.out[v].len() as u32,
                    self.inc[v].len() as u32,
                    double as u32,
                ]
            })
            .collect();
        (0..self.n)
            .map(|v| {
                let mut s: Vec<u32> = base[v].to_vec();
                let mut outs: Vec<[u32; 4]> = self.out[v].iter().map(|w| base[w]).collect();
                let mut ins: Vec<[u32; 4]> = self.inc[v].iter().map(|w| base[w]).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                s.extend(outs.into_iter().flatten());
                s.push(u32::MAX);
                s.extend(ins.into_iter().flatten());
                s
            })
            .collect()
    }

    pub fn canonical_code(&self) -> Result<Vec<u8>> {
        Ok(self.canonical_form()?.code)
    }

    /// The canonical representative: `self` relabelled by its canonical labelling.
    pub fn canonical(&self) -> Result<Digraph> {
        let form = self.canonical_form()?;
        self.permute(&form.labeling)
    }

    pub fn is_isomorphic(&self, other: &Digraph) -> Result<bool> {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        Ok(self.canonical_code()? == other.canonical_code()?)
    }
}

struct CanonSearch<'a> {
    n: usize,
    adj: &'a [u64],
    class: &'a [usize],
    slot_class: &'a [usize],
    order: Vec<usize>,
    used: u64,
    best: Option<(u128, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn bit(&self, u: usize, v: usize) -> u128 {
        ((self.adj[u] >> v) & 1) as u128
    }

    /// Positions are filled in order; placing position `p` appends the
    /// `2p + 1` bits relating it to the earlier positions and itself.
    fn run(&mut self, prefix: u128, ahead: bool) {
        let p = self.order.len();
        if p == self.n {
            match &self.best {
                Some((best, _)) if *best <= prefix => {}
                _ => self.best = Some((prefix, self.order.clone())),
            }
            return;
        }
        for v in 0..self.n {
            if self.used >> v & 1 == 1 || self.class[v] != self.slot_class[p] {
                continue;
            }
            let mut code = prefix;
            for i in 0..p {
                let w = self.order[i];
                code = (code << 2) | (self.bit(v, w) << 1) | self.bit(w, v);
            }
            code = (code << 1) | self.bit(v, v);
            let mut now_ahead = ahead;
            if !ahead {
                if let Some((best, _)) = &self.best {
                    let len = (p + 1) * (p + 1);
                    let total = self.n * self.n;
                    let best_prefix = best >> (total - len);
                    if code > best_prefix {
                        continue;
                    }
                    now_ahead = code < best_prefix;
                }
            }
            self.order.push(v);
            self.used |= 1 << v;
            self.run(code, now_ahead);
            self.used &= !(1 << v);
            self.order.pop();
        }
    }
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    perm.iter()
        .all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
}

/// True when `f` sends every edge of `d1` to an edge of `d2`.
pub fn is_homomorphism(d1: &Digraph, d2: &Digraph, f: &[usize]) -> Result<bool> {
    if f.len() != d1.vertex_count() {
        return input(format!(
            "map has {} entries for a digraph on {} vertices",
            f.len(),
            d1.vertex_count()
        ));
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= d2.vertex_count()) {
        return input(format!(
            "map sends a vertex to {bad}, outside 0..{}",
            d2.vertex_count()
        ));
    }
    Ok(d1.edges().all(|(u, v)| d2.has_edge(f[u], f[v])))
}

/// True when `f` is a bijection preserving edges in both directions.
pub fn is_isomorphism(d1: &Digraph, d2: &Digraph, f: &[usize]) -> Result<bool> {
    if d1.vertex_count() != d2.vertex_count() || !is_permutation(f, d2.vertex_count()) {
        return Ok(false);
    }
    Ok((0..d1.n).all(|u| (0..d1.n).all(|v| d1.has_edge(u, v) == d2.has_edge(f[u], f[v]))))
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Digraph {
        Digraph::new(3, &[(0, 1), (1, 2), (2, 0), (0, 0), (1, 1), (2, 2)]).unwrap()
    }

    #[test]
    fn constructors_match_named_digraphs() {
        let one = Digraph::new(1, &[(0, 0)]).unwrap();
        assert_eq!(one, Digraph::one_looped());
        assert_eq!(Digraph::new(1, &[]).unwrap(), Digraph::one());
        assert_eq!(c3(), Digraph::reflexive_cycle(3));
        assert_eq!(Digraph::new(2, &[(0, 1), (0, 1)]).unwrap().edge_count(), 1);
    }

    #[test]
    fn out_of_range_edge_is_rejected() {
        assert!(matches!(
            Digraph::new(2, &[(0, 5)]),
            Err(crate::HhError::Input(_))
        ));
    }

    #[test]
    fn reflexive_closure_examples() {
        assert_eq!(Digraph::one().reflexive_closure(), Digraph::one_looped());
        assert_eq!(Digraph::cycle(3).reflexive_closure(), c3());
        let once = Digraph::one_looped().reflexive_closure();
        assert_eq!(once.reflexive_closure(), once);
    }

    #[test]
    fn edge_kind_trichotomy() {
        let k2 = Digraph::complete_reflexive(2);
        assert_eq!(
            k2.edge_kind(),
            EdgeKind {
                class: EdgeClass::Graph,
                reflexive: true
            }
        );
        assert_eq!(c3().edge_kind().class, EdgeClass::Proper);
        // α₂ by hand: pairs {0,1}, {2,3} with 0→2→1→3→0.
        let alpha2 = Digraph::from_fn(4, |u, v| {
            u == v
                || matches!(
                    (u, v),
                    (0, 1) | (1, 0) | (2, 3) | (3, 2) | (0, 2) | (2, 1) | (1, 3) | (3, 0)
                )
        });
        assert_eq!(
            alpha2.edge_kind(),
            EdgeKind {
                class: EdgeClass::Improper,
                reflexive: true
            }
        );
    }

    #[test]
    fn induced_examples() {
        let (d, map) = c3().induced(&VertexSet::from_vertices(3, [0, 1])).unwrap();
        assert_eq!(map, vec![0, 1]);
        assert_eq!(d, Digraph::new(2, &[(0, 0), (1, 1), (0, 1)]).unwrap());
        let (whole, _) = c3().induced(&VertexSet::full(3)).unwrap();
        assert_eq!(whole, c3());
        let (k2, _) = Digraph::complete_reflexive(3)
            .induced(&VertexSet::from_vertices(3, [0, 2]))
            .unwrap();
        assert_eq!(k2, Digraph::complete_reflexive(2));
        assert!(c3().induced(&VertexSet::empty(3)).is_err());
    }

    #[test]
    fn disjoint_union_examples() {
        let d = Digraph::disjoint_union(&[c3(), Digraph::one_looped()]);
        assert_eq!(d.vertex_count(), 4);
        assert!(d.has_loop(3) && !d.adjacent(0, 3));
        assert_eq!(Digraph::disjoint_union(&[]).vertex_count(), 0);
        assert_eq!(
            Digraph::one_looped().copies(3),
            Digraph::from_fn(3, |u, v| u == v)
        );
        let with_empty = Digraph::disjoint_union(&[c3(), Digraph::empty(0)]);
        assert_eq!(with_empty, c3());
    }

    #[test]
    fn inflate_examples() {
        let (d, p) = c3().inflate(&[2, 1, 1]).unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert!(d.is_double(0, 1));
        assert!(d.has_edge(0, 2) && d.has_edge(1, 2) && !d.has_edge(2, 0));
        assert!(d.has_edge(3, 0) && d.has_edge(3, 1));
        assert_eq!(p.block_sizes(), vec![2, 1, 1]);
        let (k, _) = Digraph::one_looped().inflate(&[4]).unwrap();
        assert_eq!(k, Digraph::complete_reflexive(4));
        let (same, _) = c3().inflate(&[1, 1, 1]).unwrap();
        assert_eq!(same, c3());
        assert!(c3().inflate(&[1, 0, 1]).is_err());
        assert!(c3().inflate(&[1, 1]).is_err());
    }

    #[test]
    fn homomorphism_examples() {
        let d = c3();
        assert!(is_homomorphism(&d, &d, &[0, 1, 2]).unwrap());
        assert!(is_homomorphism(&d, &d, &[1, 1, 1]).unwrap());
        assert!(!is_homomorphism(&d, &d, &[1, 0, 2]).unwrap());
        assert!(is_homomorphism(&d, &d, &[0, 3, 1]).is_err());
        assert!(is_homomorphism(&d, &d, &[0, 1]).is_err());
    }

    #[test]
    fn canonical_form_examples() {
        let d = c3();
        let code = d.canonical_code().unwrap();
        for perm in [[0, 2, 1], [1, 2, 0], [2, 1, 0], [1, 0, 2]] {
            assert_eq!(d.permute(&perm).unwrap().canonical_code().unwrap(), code);
        }
        assert_ne!(
            Digraph::one().canonical_code().unwrap(),
            Digraph::one_looped().canonical_code().unwrap()
        );
        assert!(Digraph::empty(11).canonical_form().is_err());
        // The oriented and the transitive reflexive triangles differ.
        assert!(!c3().is_isomorphic(&Digraph::chain(3)).unwrap());
    }

    #[test]
    fn canonical_labeling_is_an_isomorphism() {
        let d = Digraph::new(4, &[(0, 1), (1, 2), (2, 1), (3, 0), (0, 0)]).unwrap();
        let form = d.canonical_form().unwrap();
        let rep = d.canonical().unwrap();
        assert!(is_isomorphism(&d, &rep, &form.labeling).unwrap());
    }
}
