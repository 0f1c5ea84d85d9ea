//! Ground-truth deciders for homomorphism-homogeneity.
//!
//! # One-point extension
//!
//! A partial homomorphism `f: D₁[U] → D₂` extends to a homomorphism
//! `D₁ → D₂` as soon as every partial homomorphism admits an extension to
//! any single extra vertex: extend one vertex at a time, each step again
//! producing a partial homomorphism, until `U = V(D₁)`. Conversely, if every
//! partial homomorphism extends to all of `D₁`, restricting that extension
//! gives the one-point extension. So `D₁ ⇒ D₂` holds iff no pair
//! (partial homomorphism `f`, vertex `x ∉ dom f`) has an empty set of
//! admissible images for `x`, and such a pair is a checkable refutation.
//!
//! [`arrow`] and [`is_hh_bruteforce`] enumerate every partial homomorphism
//! by depth-first search over the source vertices (each vertex is either
//! left out of the domain or mapped to one of its remaining candidates).
//! The candidate set of every vertex outside the domain is maintained
//! incrementally: it is both the forward-checking domain for vertices not
//! yet decided and the one-point-extension set for vertices left out.
//! The search stops at the first empty candidate set.
//!
//! [`is_hh_cone_criterion`] is a second, independent decider based on cone
//! types; it enumerates tuples and maps directly and never shares the
//! kernel above.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::digraph::{is_homomorphism, Digraph};
use crate::error::{capability, input, precondition, Result};
use crate::structure::connected_components;
use crate::vertex_set::VertexSet;

/// Largest digraph (or connected component) the extension oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 10;
/// Largest digraph the cone-criterion decider accepts.
pub const CONE_MAX_VERTICES: usize = 8;
/// Upper bound on the total size of a digraph decided component-wise.
pub const ORACLE_MAX_TOTAL_VERTICES: usize = 64;

/// A map defined on a subset of the source vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialHom {
    map: Vec<Option<usize>>,
}

impl PartialHom {
    pub fn empty(source_vertices: usize) -> Self {
        PartialHom {
            map: vec![None; source_vertices],
        }
    }

    pub fn from_pairs(source_vertices: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut f = Self::empty(source_vertices);
        for &(u, v) in pairs {
            if u >= source_vertices {
                return input(format!(
                    "vertex {u} outside the source range 0..{source_vertices}"
                ));
            }
            if matches!(f.map[u], Some(w) if w != v) {
                return input(format!("vertex {u} is mapped twice"));
            }
            f.map[u] = Some(v);
        }
        Ok(f)
    }

    pub fn from_options(map: Vec<Option<usize>>) -> Self {
        PartialHom { map }
    }

    pub fn source_vertices(&self) -> usize {
        self.map.len()
    }

    pub fn get(&self, u: usize) -> Option<usize> {
        self.map.get(u).copied().flatten()
    }

    pub fn domain(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.map.len(),
            self.map
                .iter()
                .enumerate()
                .filter_map(|(u, v)| v.map(|_| u)),
        )
    }

    /// `(u, f(u))` for every `u` in the domain, in increasing `u`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
            .collect()
    }

    pub fn as_options(&self) -> &[Option<usize>] {
        &self.map
    }

    pub fn with(&self, u: usize, v: usize) -> PartialHom {
        let mut f = self.clone();
        f.map[u] = Some(v);
        f
    }

    /// Whether the map is a homomorphism from `source[dom f]` into `target`.
    pub fn is_valid(&self, source: &Digraph, target: &Digraph) -> bool {
        if self.map.len() != source.vertex_count() {
            return false;
        }
        let pairs = self.pairs();
        if pairs.iter().any(|&(_, v)| v >= target.vertex_count()) {
            return false;
        }
        pairs.iter().all(|&(u, fu)| {
            pairs
                .iter()
                .all(|&(w, fw)| !source.has_edge(u, w) || target.has_edge(fu, fw))
        })
    }
}

/// A refutation: `hom` is a partial homomorphism and `vertex` (outside its
/// domain) has no admissible image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub hom: PartialHom,
    pub vertex: usize,
}

impl Witness {
    /// Re-checks the refutation from scratch.
    pub fn verify(&self, source: &Digraph, target: &Digraph) -> bool {
        self.hom.is_valid(source, target)
            && extension_images(source, target, &self.hom, self.vertex)
                .map(|s| s.is_empty())
                .unwrap_or(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Hh,
    NotHh,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HhVerdict {
    pub decision: Decision,
    /// Present exactly when the decision is [`Decision::NotHh`].
    pub witness: Option<Witness>,
}

impl HhVerdict {
    pub fn is_hh(&self) -> bool {
        self.decision == Decision::Hh
    }

    fn from_witness(witness: Option<Witness>) -> Self {
        match witness {
            None => HhVerdict {
                decision: Decision::Hh,
                witness: None,
            },
            Some(w) => HhVerdict {
                decision: Decision::NotHh,
                witness: Some(w),
            },
        }
    }
}

/// All `y` such that `f ∪ {x ↦ y}` is still a partial homomorphism.
pub fn extension_images(
    source: &Digraph,
    target: &Digraph,
    f: &PartialHom,
    x: usize,
) -> Result<VertexSet> {
    if f.source_vertices() != source.vertex_count() {
        return input("partial map does not match the source digraph");
    }
    if x >= source.vertex_count() {
        return input(format!("vertex {x} outside the source digraph"));
    }
    if f.get(x).is_some() {
        return input(format!("vertex {x} is already in the domain"));
    }
    let mut images = VertexSet::empty(target.vertex_count());
    for y in target.vertices() {
        if source.has_loop(x) && !target.has_loop(y) {
            continue;
        }
        let ok = f.pairs().into_iter().all(|(u, fu)| {
            (!source.has_edge(u, x) || target.has_edge(fu, y))
                && (!source.has_edge(x, u) || target.has_edge(y, fu))
        });
        if ok {
            images.insert(y);
        }
    }
    Ok(images)
}

const KERNEL_MAX: usize = 16;

/// The enumeration kernel: adjacency as masks, candidate sets as masks.
struct ExtensionSearch {
    n1: usize,
    src_out: [u64; KERNEL_MAX],
    src_in: [u64; KERNEL_MAX],
    tgt_out: Vec<u64>,
    tgt_in: Vec<u64>,
    map: [u8; KERNEL_MAX],
}

impl ExtensionSearch {
    fn new(source: &Digraph, target: &Digraph) -> Self {
        debug_assert!(source.vertex_count() <= KERNEL_MAX && target.vertex_count() <= 64);
        let mut s = ExtensionSearch {
            n1: source.vertex_count(),
            src_out: [0; KERNEL_MAX],
            src_in: [0; KERNEL_MAX],
            tgt_out: vec![0; target.vertex_count()],
            tgt_in: vec![0; target.vertex_count()],
            map: [0; KERNEL_MAX],
        };
        for v in source.vertices() {
            s.src_out[v] = source.out_mask(v);
            s.src_in[v] = source.in_mask(v);
        }
        for v in target.vertices() {
            s.tgt_out[v] = target.out_mask(v);
            s.tgt_in[v] = target.in_mask(v);
        }
        s
    }

    fn run(mut self, target: &Digraph) -> Option<Witness> {
        let all = if target.vertex_count() == 64 {
            !0
        } else {
            (1u64 << target.vertex_count()) - 1
        };
        let looped = (0..target.vertex_count())
            .filter(|&v| target.has_loop(v))
            .fold(0u64, |m, v| m | 1 << v);
        let mut cand = [0u64; KERNEL_MAX];
        for (x, c) in cand.iter_mut().enumerate().take(self.n1) {
            *c = if self.src_out[x] >> x & 1 == 1 {
                looped
            } else {
                all
            };
        }
        self.dfs(0, &cand, 0)
    }

    fn dfs(&mut self, i: usize, cand: &[u64; KERNEL_MAX], mapped: u64) -> Option<Witness> {
        if i == self.n1 {
            return None;
        }
        // Leave `i` outside the domain.
        if let Some(w) = self.dfs(i + 1, cand, mapped) {
            return Some(w);
        }
        let now_mapped = mapped | 1 << i;
        let full = if self.n1 == 64 {
            !0
        } else {
            (1u64 << self.n1) - 1
        };
        let outside = full & !now_mapped;
        let touched_out = self.src_out[i] & outside;
        let touched_in = self.src_in[i] & outside;
        let mut options = cand[i];
        while options != 0 {
            let a = options.trailing_zeros() as usize;
            options &= options - 1;
            let mut next = *cand;
            let mut bits = touched_out;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next[x] &= self.tgt_out[a];
            }
            let mut bits = touched_in;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next[x] &= self.tgt_in[a];
            }
            self.map[i] = a as u8;
            let mut check = outside;
            while check != 0 {
                let x = check.trailing_zeros() as usize;
                check &= check - 1;
                if next[x] == 0 {
                    return Some(self.witness(now_mapped, x));
                }
            }
            if let Some(w) = self.dfs(i + 1, &next, now_mapped) {
                return Some(w);
            }
        }
        None
    }

    fn witness(&self, mapped: u64, vertex: usize) -> Witness {
        let map = (0..self.n1)
            .map(|u| (mapped >> u & 1 == 1).then(|| self.map[u] as usize))
            .collect();
        Witness {
            hom: PartialHom::from_options(map),
            vertex,
        }
    }
}

fn guard(d: &Digraph, what: &str, limit: usize) -> Result<()> {
    if d.vertex_count() > limit {
        return capability(format!(
            "{what} is limited to {limit} vertices, got {}",
            d.vertex_count()
        ));
    }
    Ok(())
}

/// A refutation of `D₁ ⇒ D₂`, or `None` when every partial homomorphism
/// extends.
pub fn arrow_witness(d1: &Digraph, d2: &Digraph) -> Result<Option<Witness>> {
    guard(d1, "the extension oracle", ORACLE_MAX_VERTICES)?;
    guard(d2, "the extension oracle", ORACLE_MAX_VERTICES)?;
    Ok(ExtensionSearch::new(d1, d2).run(d2))
}

/// `D₁ ⇒ D₂`: every homomorphism between nonempty induced subdigraphs
/// extends to a homomorphism `D₁ → D₂`.
pub fn arrow(d1: &Digraph, d2: &Digraph) -> Result<bool> {
    Ok(arrow_witness(d1, d2)?.is_none())
}

/// Exhaustive HH decision.
///
/// Whether `f ∪ {x ↦ y}` is a partial homomorphism depends only on the part
/// of `f` inside the connected component of `x`, but that part may send
/// vertices into several components. So `D` is HH iff `D[S] ⇒ D` for every
/// connected component `S`, with the whole of `D` as the target; components
/// of the same isomorphism type are searched once. Splitting the target into
/// components as well would miss maps like the one sending the two maximal
/// elements of a V-shaped poset to the V and to an isolated vertex.
pub fn is_hh_bruteforce(d: &Digraph) -> Result<HhVerdict> {
    guard(d, "component-wise oracle", ORACLE_MAX_TOTAL_VERTICES)?;
    let components = connected_components(d);
    let mut settled: HashSet<Vec<u8>> = HashSet::new();
    for block in components.blocks() {
        let (sub, map) = d.induced(block)?;
        guard(
            &sub,
            "the extension oracle (per connected component)",
            ORACLE_MAX_VERTICES,
        )?;
        if !settled.insert(sub.canonical_code()?) {
            continue;
        }
        if let Some(local) = ExtensionSearch::new(&sub, d).run(d) {
            let mut f = PartialHom::empty(d.vertex_count());
            for (u, fu) in local.hom.pairs() {
                f = f.with(map[u], fu);
            }
            return Ok(HhVerdict::from_witness(Some(Witness {
                hom: f,
                vertex: map[local.vertex],
            })));
        }
    }
    Ok(HhVerdict::from_witness(None))
}

/// Visits every partial homomorphism from `source` to `target` (the empty
/// one included) until the visitor breaks.
pub fn for_each_partial_hom(
    source: &Digraph,
    target: &Digraph,
    mut visit: impl FnMut(&PartialHom) -> ControlFlow<()>,
) -> Result<()> {
    guard(
        source,
        "partial homomorphism enumeration",
        ORACLE_MAX_VERTICES,
    )?;
    guard(
        target,
        "partial homomorphism enumeration",
        ORACLE_MAX_VERTICES,
    )?;
    fn go(
        i: usize,
        f: &mut PartialHom,
        source: &Digraph,
        target: &Digraph,
        visit: &mut dyn FnMut(&PartialHom) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == source.vertex_count() {
            return visit(f);
        }
        go(i + 1, f, source, target, visit)?;
        for a in target.vertices() {
            let ok = (!source.has_loop(i) || target.has_loop(a))
                && f.pairs().into_iter().all(|(u, fu)| {
                    (!source.has_edge(u, i) || target.has_edge(fu, a))
                        && (!source.has_edge(i, u) || target.has_edge(a, fu))
                });
            if ok {
                f.map[i] = Some(a);
                go(i + 1, f, source, target, visit)?;
                f.map[i] = None;
            }
        }
        ControlFlow::Continue(())
    }
    let mut f = PartialHom::empty(source.vertex_count());
    let _ = go(0, &mut f, source, target, &mut visit);
    Ok(())
}

/// Visits every (total) homomorphism `source → target`.
pub fn for_each_homomorphism(
    source: &Digraph,
    target: &Digraph,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    for_each_partial_hom(source, target, |f| {
        if f.as_options().iter().all(Option::is_some) {
            let total: Vec<usize> = f.as_options().iter().map(|v| v.unwrap()).collect();
            visit(&total)
        } else {
            ControlFlow::Continue(())
        }
    })
}

/// One coordinate of a cone type: the poset M with `← ≤ ⇄` and `→ ≤ ⇄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeArrow {
    /// `←`: the tuple vertex dominates the cone.
    In,
    /// `→`: the cone dominates the tuple vertex.
    Out,
    /// `⇄`: both.
    Both,
}

impl ConeArrow {
    pub fn le(self, other: ConeArrow) -> bool {
        self == other || other == ConeArrow::Both
    }

    /// The exact relation of `c` to `u`, if they are adjacent.
    pub fn between(d: &Digraph, c: usize, u: usize) -> Option<ConeArrow> {
        match (d.has_edge(c, u), d.has_edge(u, c)) {
            (true, true) => Some(ConeArrow::Both),
            (true, false) => Some(ConeArrow::Out),
            (false, true) => Some(ConeArrow::In),
            (false, false) => None,
        }
    }

    fn satisfied(self, d: &Digraph, c: usize, u: usize) -> bool {
        match self {
            ConeArrow::Out => d.has_edge(c, u),
            ConeArrow::In => d.has_edge(u, c),
            ConeArrow::Both => d.is_double(c, u),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeType(pub Vec<ConeArrow>);

impl ConeType {
    pub fn all(len: usize, arrow: ConeArrow) -> Self {
        ConeType(vec![arrow; len])
    }

    /// Componentwise order; types of different lengths are incomparable.
    pub fn le(&self, other: &ConeType) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.le(*b))
    }
}

/// The strongest type of `c` as a cone for `tuple`, or `None` if `c` is not
/// adjacent to every tuple vertex.
pub fn cone_type(d: &Digraph, c: usize, tuple: &[usize]) -> Option<ConeType> {
    tuple
        .iter()
        .map(|&u| ConeArrow::between(d, c, u))
        .collect::<Option<Vec<_>>>()
        .map(ConeType)
}

/// All cones of type `t` for `tuple`. Tuple vertices themselves qualify when
/// their relations allow it.
pub fn cone_of_type(d: &Digraph, tuple: &[usize], t: &ConeType) -> Result<VertexSet> {
    if tuple.is_empty() {
        return input("cone tuple must be nonempty");
    }
    if tuple.len() != t.0.len() {
        return input(format!(
            "tuple of length {} with a cone type of length {}",
            tuple.len(),
            t.0.len()
        ));
    }
    if let Some(&u) = tuple.iter().find(|&&u| u >= d.vertex_count()) {
        return input(format!("tuple vertex {u} outside the digraph"));
    }
    Ok(VertexSet::from_vertices(
        d.vertex_count(),
        d.vertices()
            .filter(|&c| tuple.iter().zip(&t.0).all(|(&u, a)| a.satisfied(d, c, u))),
    ))
}

/// HH decision by cones: `D` fails iff some homomorphism between induced
/// tuples `uᵢ ↦ wᵢ` has a cone `c` of the `u`-tuple whose type is not below
/// the type of any cone of the `w`-tuple (including the case of no cone at
/// all). Requires `D` reflexive and improper.
pub fn is_hh_cone_criterion(d: &Digraph) -> Result<HhVerdict> {
    if !d.is_reflexive() {
        return precondition("the cone criterion needs a reflexive digraph");
    }
    if !d.is_improper() {
        return precondition("the cone criterion needs an improper digraph");
    }
    guard(d, "the cone criterion", CONE_MAX_VERTICES)?;
    let n = d.vertex_count();
    for subset in 1u64..(1 << n) {
        let tuple: Vec<usize> = (0..n).filter(|&v| subset >> v & 1 == 1).collect();
        let u_cones: Vec<(usize, ConeType)> = d
            .vertices()
            .filter_map(|c| cone_type(d, c, &tuple).map(|t| (c, t)))
            .collect();
        if u_cones.is_empty() {
            continue;
        }
        let mut image = Vec::with_capacity(tuple.len());
        if let Some(w) = search_cone_maps(d, &tuple, &u_cones, &mut image) {
            return Ok(HhVerdict::from_witness(Some(w)));
        }
    }
    Ok(HhVerdict::from_witness(None))
}

fn search_cone_maps(
    d: &Digraph,
    tuple: &[usize],
    u_cones: &[(usize, ConeType)],
    image: &mut Vec<usize>,
) -> Option<Witness> {
    let i = image.len();
    if i == tuple.len() {
        let w_cones: Vec<ConeType> = d
            .vertices()
            .filter_map(|c| cone_type(d, c, image))
            .collect();
        for (c, t) in u_cones {
            if !w_cones.iter().any(|s| t.le(s)) {
                let pairs: Vec<(usize, usize)> =
                    tuple.iter().copied().zip(image.iter().copied()).collect();
                let hom = PartialHom::from_pairs(d.vertex_count(), &pairs).unwrap();
                return Some(Witness { hom, vertex: *c });
            }
        }
        return None;
    }
    for y in d.vertices() {
        image.push(y);
        let ok = (0..=i).all(|j| {
            (!d.has_edge(tuple[j], tuple[i]) || d.has_edge(image[j], y))
                && (!d.has_edge(tuple[i], tuple[j]) || d.has_edge(y, image[j]))
        });
        if ok {
            if let Some(w) = search_cone_maps(d, tuple, u_cones, image) {
                return Some(w);
            }
        }
        image.pop();
    }
    None
}

/// Checks a total map is a homomorphism and reports which components of
/// `source` land inside a single component of `target`.
pub fn image_components_respected(source: &Digraph, target: &Digraph, f: &[usize]) -> Result<bool> {
    if !is_homomorphism(source, target, f)? {
        return input("map is not a homomorphism");
    }
    let src = connected_components(source);
    let tgt = connected_components(target);
    Ok(src.blocks().iter().all(|b| {
        let mut comps = b.iter().map(|v| tgt.block_of(f[v]));
        let first = comps.next();
        comps.all(|c| Some(c) == first)
    }))
}
