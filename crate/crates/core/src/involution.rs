//! Digraphs with involution, their bases, and the HH families α_n and ζ₄.
//!
//! An involution `'` on a reflexive digraph is an automorphism with
//! `x'' = x`, `x → y ⇒ y → x'`, and `x ⇄ y ⇒ y = x'` for distinct `x, y`.
//! The last axiom pins `'` down: each vertex has at most one double-edge
//! partner, and `x'` must be that partner (or `x` itself when there is none).
//!
//! Standard layout used by the constructors here: base vertex `i` becomes
//! vertex `2i` and its partner is `2i + 1`.

use crate::digraph::Digraph;
use crate::error::{input, precondition, Result};
use crate::structure::{connected_components, theta_classes};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Involution {
    pairing: Vec<usize>,
}

impl Involution {
    pub fn partner(&self, v: usize) -> usize {
        self.pairing[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.pairing
    }
}

/// A base `D[x₁ ⇇ x₂, …, x_k]`: one vertex per θ-class, every non-apex
/// vertex dominating the apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base {
    /// Vertices of the host digraph; `vertices[0]` is the apex.
    pub vertices: Vec<usize>,
    /// The induced reflexive tournament, vertex `i` being `vertices[i]`.
    pub digraph: Digraph,
}

impl Base {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_acyclic(&self) -> bool {
        is_acyclic_tournament(&self.digraph)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwiClass {
    Alpha(usize),
    Zeta4,
    /// A tournament with involution outside the HH families.
    NotHh,
}

/// A reflexive tournament (loops ignored) is acyclic iff its out-degrees are
/// pairwise distinct.
fn is_acyclic_tournament(t: &Digraph) -> bool {
    let mut degrees: Vec<usize> = t
        .vertices()
        .map(|v| t.out_neighbors(v).len() - t.has_loop(v) as usize)
        .collect();
    degrees.sort_unstable();
    degrees.iter().enumerate().all(|(i, &d)| i == d)
}

fn is_reflexive_tournament(t: &Digraph) -> bool {
    t.is_reflexive()
        && t.vertices()
            .all(|u| (u + 1..t.vertex_count()).all(|v| t.has_edge(u, v) != t.has_edge(v, u)))
}

/// Completes a base into a tournament with involution.
///
/// `base` must be a reflexive tournament; vertex `i` of the base becomes
/// `2i`, its partner `2i + 1`, and each base arc `i → j` yields the
/// four-cycle `2i → 2j → 2i+1 → 2j+1 → 2i` forced by the axioms.
pub fn from_base(base: &Digraph) -> Result<Digraph> {
    if !is_reflexive_tournament(base) {
        return input("a base must be a reflexive tournament");
    }
    let k = base.vertex_count();
    let mut edges = Vec::new();
    for i in 0..k {
        let (x, xp) = (2 * i, 2 * i + 1);
        edges.extend([(x, x), (xp, xp), (x, xp), (xp, x)]);
        for j in 0..k {
            if i != j && base.has_edge(i, j) {
                let (y, yp) = (2 * j, 2 * j + 1);
                edges.extend([(x, y), (y, xp), (xp, yp), (yp, x)]);
            }
        }
    }
    Digraph::new(2 * k, &edges)
}

/// α_n. For `n ≥ 1` the base is the transitive tournament `i → j` for
/// `i < j`, so the apex is base vertex `n - 1` (host vertex `2n - 2`).
pub fn make_alpha(n: usize) -> Digraph {
    if n == 0 {
        return Digraph::one_looped();
    }
    from_base(&Digraph::chain(n)).expect("a chain is a reflexive tournament")
}

/// The base of ζ₄: `p → q → r → p` (base vertices 0, 1, 2), all dominating
/// the apex `s` (base vertex 3).
pub fn zeta4_base() -> Digraph {
    Digraph::from_fn(4, |u, v| {
        u == v || matches!((u, v), (0, 1) | (1, 2) | (2, 0) | (0, 3) | (1, 3) | (2, 3))
    })
}

/// ζ₄, the 8-vertex tournament with involution whose base contains a 3-cycle.
pub fn make_zeta4() -> Digraph {
    from_base(&zeta4_base()).expect("the ζ₄ base is a reflexive tournament")
}

/// The only map that can satisfy the third axiom: each vertex goes to its
/// unique double-edge partner, or to itself if it has none. `None` if some
/// vertex has two partners.
pub fn involution_candidate(d: &Digraph) -> Result<Option<Involution>> {
    if !d.is_reflexive() {
        return input("involution recognition needs a reflexive digraph");
    }
    let mut pairing = Vec::with_capacity(d.vertex_count());
    for x in d.vertices() {
        let mut partners = d.vertices().filter(|&y| y != x && d.is_double(x, y));
        let p = partners.next().unwrap_or(x);
        if partners.next().is_some() {
            return Ok(None);
        }
        pairing.push(p);
    }
    Ok(Some(Involution { pairing }))
}

/// Checks the three axioms and the automorphism property for `pairing`.
pub fn satisfies_involution_axioms(d: &Digraph, pairing: &[usize]) -> bool {
    let n = d.vertex_count();
    if pairing.len() != n || pairing.iter().any(|&p| p >= n) {
        return false;
    }
    let involutive = d.vertices().all(|x| pairing[pairing[x]] == x);
    let automorphism = d.vertices().all(|x| {
        d.vertices()
            .all(|y| d.has_edge(x, y) == d.has_edge(pairing[x], pairing[y]))
    });
    let di2 = d.edges().all(|(x, y)| d.has_edge(y, pairing[x]));
    let di3 = d.vertices().all(|x| {
        d.vertices()
            .all(|y| x == y || !d.is_double(x, y) || y == pairing[x])
    });
    involutive && automorphism && di2 && di3
}

/// The involution of `D`, if `D` is a digraph with involution.
///
/// The axioms alone already force `D` to be improper unless it is a
/// disjoint union of α₀ and α₁ components; those degenerate cases are
/// accepted.
pub fn is_digraph_with_involution(d: &Digraph) -> Result<Option<Involution>> {
    Ok(involution_candidate(d)?.filter(|inv| satisfies_involution_axioms(d, &inv.pairing)))
}

/// A digraph with involution in which every two distinct vertices are
/// adjacent. Non-reflexive inputs are simply not tournaments with involution.
pub fn is_tournament_with_involution(d: &Digraph) -> bool {
    d.is_reflexive() && d.is_semicomplete() && matches!(is_digraph_with_involution(d), Ok(Some(_)))
}

fn require_twi(d: &Digraph) -> Result<Involution> {
    if !is_tournament_with_involution(d) {
        return precondition("not a tournament with involution");
    }
    Ok(is_digraph_with_involution(d)?.expect("checked above"))
}

/// The base with apex `seed`: from every other θ-class pick the vertex
/// dominating `seed`.
pub fn extract_base(d: &Digraph, seed: usize) -> Result<Base> {
    let inv = require_twi(d)?;
    if d.vertex_count() < 2 {
        return precondition("a base needs at least two vertices");
    }
    if seed >= d.vertex_count() {
        return input(format!("seed {seed} outside the digraph"));
    }
    let mut vertices = vec![seed];
    for class in theta_classes(d).blocks() {
        if class.contains(seed) {
            continue;
        }
        let x = class.first().unwrap();
        let pick = if d.has_edge(x, seed) {
            x
        } else {
            inv.partner(x)
        };
        debug_assert!(d.has_edge(pick, seed) && !d.has_edge(seed, pick));
        vertices.push(pick);
    }
    let digraph = Digraph::from_fn(vertices.len(), |i, j| d.has_edge(vertices[i], vertices[j]));
    Ok(Base { vertices, digraph })
}

/// α_n when every base is acyclic, ζ₄ up to isomorphism, otherwise outside
/// the HH families.
///
/// Bases are extracted for every seed vertex, so nothing depends on the
/// claim that acyclicity is independent of the chosen base.
pub fn classify_twi(d: &Digraph) -> Result<TwiClass> {
    require_twi(d)?;
    let n = d.vertex_count();
    if n == 1 {
        return Ok(TwiClass::Alpha(0));
    }
    let mut all_acyclic = true;
    for seed in d.vertices() {
        if !extract_base(d, seed)?.is_acyclic() {
            all_acyclic = false;
            break;
        }
    }
    if all_acyclic {
        return Ok(TwiClass::Alpha(n / 2));
    }
    if n == 8 && d.is_isomorphic(&make_zeta4())? {
        return Ok(TwiClass::Zeta4);
    }
    Ok(TwiClass::NotHh)
}

/// HH test for digraphs with involution: every component is α_n or ζ₄, and
/// either all components lie in {α₀, α₁, α₂, ζ₄} or all are of the form α_n.
///
/// α₂ belongs with ζ₄: every partial map from ζ₄ to α₂ extends, the
/// extension sending the third cycle vertex of a ζ₄ base to the partner of
/// the α₂ apex. ζ₄ ⇏ α_n holds from n = 3 on.
pub fn is_hh_dwi(d: &Digraph) -> Result<bool> {
    if is_digraph_with_involution(d)?.is_none() {
        return precondition("not a digraph with involution");
    }
    Ok(dwi_components(d)?.is_some_and(|classes| dwi_family_accepts(&classes)))
}

/// The class of every component, or `None` if some component is not a
/// tournament with involution.
pub fn dwi_components(d: &Digraph) -> Result<Option<Vec<TwiClass>>> {
    let mut classes = Vec::new();
    for block in connected_components(d).blocks() {
        let (sub, _) = d.induced(block)?;
        if !is_tournament_with_involution(&sub) {
            return Ok(None);
        }
        classes.push(classify_twi(&sub)?);
    }
    Ok(Some(classes))
}

/// Membership of a component multiset in one of the two HH families.
pub fn dwi_family_accepts(classes: &[TwiClass]) -> bool {
    if classes.contains(&TwiClass::NotHh) {
        return false;
    }
    if classes.contains(&TwiClass::Zeta4) {
        classes
            .iter()
            .all(|c| matches!(c, TwiClass::Zeta4 | TwiClass::Alpha(0..=2)))
    } else {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_hh_bruteforce;
    use crate::structure::theta_classes;

    #[test]
    fn alpha_constructions() {
        assert_eq!(make_alpha(0), Digraph::one_looped());
        assert_eq!(make_alpha(1), Digraph::complete_reflexive(2));
        let a2 = make_alpha(2);
        assert_eq!(a2.vertex_count(), 4);
        assert_eq!(theta_classes(&a2).block_sizes(), vec![2, 2]);
        assert!(is_acyclic_tournament(
            &extract_base(&a2, 2).unwrap().digraph
        ));
    }

    #[test]
    fn zeta4_construction() {
        let z = make_zeta4();
        assert_eq!(z.vertex_count(), 8);
        assert!(is_digraph_with_involution(&z).unwrap().is_some());
        assert!(is_tournament_with_involution(&z));
    }

    #[test]
    fn candidate_examples() {
        assert!(involution_candidate(&Digraph::complete_reflexive(3))
            .unwrap()
            .is_none());
        let inv = involution_candidate(&make_alpha(2)).unwrap().unwrap();
        assert_eq!(inv.as_slice(), &[1, 0, 3, 2]);
        let inv = involution_candidate(&Digraph::one_looped())
            .unwrap()
            .unwrap();
        assert_eq!(inv.as_slice(), &[0]);
        assert!(involution_candidate(&Digraph::cycle(3)).is_err());
    }

    #[test]
    fn dwi_recognition_examples() {
        for n in 0..=4 {
            assert!(
                is_digraph_with_involution(&make_alpha(n))
                    .unwrap()
                    .is_some(),
                "alpha {n}"
            );
        }
        // 0 → 1 but not 1 → 0' = 1 → 0.
        assert!(is_digraph_with_involution(&Digraph::reflexive_cycle(3))
            .unwrap()
            .is_none());
        let inv = is_digraph_with_involution(&Digraph::complete_reflexive(2))
            .unwrap()
            .unwrap();
        assert_eq!(inv.as_slice(), &[1, 0]);
    }

    #[test]
    fn twi_examples() {
        assert!(is_tournament_with_involution(&make_zeta4()));
        let two = Digraph::disjoint_union(&[make_alpha(2), make_alpha(2)]);
        assert!(!is_tournament_with_involution(&two));
        assert!(is_tournament_with_involution(&Digraph::one_looped()));
        assert!(!is_tournament_with_involution(&Digraph::cycle(3)));
    }

    #[test]
    fn base_examples() {
        let b = extract_base(&make_alpha(2), 0).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.is_acyclic());
        let z = make_zeta4();
        let b = extract_base(&z, 6).unwrap();
        assert_eq!(b.len(), 4);
        assert!(!b.is_acyclic());
        let b = extract_base(&make_alpha(1), 0).unwrap();
        assert_eq!(b.vertices, vec![0]);
        assert!(extract_base(&Digraph::one_looped(), 0).is_err());
        assert!(extract_base(&Digraph::reflexive_cycle(3), 0).is_err());
    }

    #[test]
    fn classify_round_trips() {
        for n in 0..=6 {
            assert_eq!(classify_twi(&make_alpha(n)).unwrap(), TwiClass::Alpha(n));
        }
        assert_eq!(classify_twi(&make_zeta4()).unwrap(), TwiClass::Zeta4);
        let perm = [3, 6, 1, 0, 7, 2, 5, 4];
        assert_eq!(
            classify_twi(&make_zeta4().permute(&perm).unwrap()).unwrap(),
            TwiClass::Zeta4
        );
        assert!(classify_twi(&Digraph::reflexive_cycle(3)).is_err());
    }

    #[test]
    fn ten_vertex_cyclic_twi_is_not_hh() {
        // Base: apex 4 dominated by p, q, r, s; p → q → r → p and {p, q, r} ⇉ s.
        let base = Digraph::from_fn(5, |u, v| {
            u == v
                || v == 4 && u != 4
                || matches!((u, v), (0, 1) | (1, 2) | (2, 0) | (0, 3) | (1, 3) | (2, 3))
        });
        let d = from_base(&base).unwrap();
        assert!(is_tournament_with_involution(&d));
        assert_eq!(classify_twi(&d).unwrap(), TwiClass::NotHh);
        let verdict = is_hh_bruteforce(&d).unwrap();
        assert!(!verdict.is_hh());
        assert!(verdict.witness.unwrap().verify(&d, &d));
    }

    #[test]
    fn dwi_family_examples() {
        let d = Digraph::disjoint_union(&[make_alpha(0), make_alpha(2), make_alpha(3)]);
        assert!(is_hh_dwi(&d).unwrap());
        let d = Digraph::disjoint_union(&[make_zeta4(), make_alpha(1)]);
        assert!(is_hh_dwi(&d).unwrap());
        let d = Digraph::disjoint_union(&[make_zeta4(), make_alpha(2), make_alpha(0)]);
        assert!(is_hh_dwi(&d).unwrap());
        let d = Digraph::disjoint_union(&[make_zeta4(), make_alpha(3)]);
        assert!(!is_hh_dwi(&d).unwrap());
        assert!(is_hh_dwi(&Digraph::reflexive_cycle(3)).is_err());
    }

    #[test]
    fn from_base_rejects_non_tournaments() {
        assert!(from_base(&Digraph::complete_reflexive(2)).is_err());
        assert!(from_base(&Digraph::cycle(3)).is_err());
    }
}
