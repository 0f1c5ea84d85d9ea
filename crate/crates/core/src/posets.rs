//! HH tests for finite posets, quasiorders and reflexive proper digraphs.

use crate::classifier::check_c3_one_components;
use crate::digraph::Digraph;
use crate::error::{capability, precondition, Result};
use crate::partition::Partition;
use crate::structure::{connected_components, quotient};

/// Largest poset for which the split condition is decided by enumerating
/// order ideals.
pub const SPLIT_MAX_ELEMENTS: usize = 20;

/// A digraph certified reflexive, antisymmetric and transitive. `x → y`
/// reads `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetView<'a> {
    host: &'a Digraph,
}

impl<'a> PosetView<'a> {
    pub fn digraph(&self) -> &'a Digraph {
        self.host
    }

    pub fn len(&self) -> usize {
        self.host.vertex_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.host.has_edge(x, y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetHHReason {
    ChainComponents,
    Tree,
    DualTree,
    Split,
    Lattice,
    None,
}

impl PosetHHReason {
    pub fn is_hh(self) -> bool {
        self != PosetHHReason::None
    }
}

pub fn as_poset(d: &Digraph) -> Option<PosetView<'_>> {
    (d.is_reflexive() && d.is_antisymmetric() && d.is_transitive()).then_some(PosetView { host: d })
}

/// Every two of `members` are comparable.
fn is_chain(p: &PosetView, members: &[usize]) -> bool {
    members
        .iter()
        .enumerate()
        .all(|(i, &x)| members[i + 1..].iter().all(|&y| p.le(x, y) || p.le(y, x)))
}

/// Connectivity of the comparability graph on `set`.
fn is_connected_within(p: &PosetView, set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let mut seen = set & set.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let near = (p.host.out_mask(x) | p.host.in_mask(x)) & set & !seen;
        seen |= near;
        frontier |= near;
    }
    seen == set
}

fn members(set: u64) -> Vec<usize> {
    (0..64).filter(|&v| set >> v & 1 == 1).collect()
}

/// Connected on `set`, and every up-set (down-set when `!up`) inside `set`
/// is a chain.
fn is_tree_within(p: &PosetView, set: u64, up: bool) -> bool {
    is_connected_within(p, set)
        && members(set).into_iter().all(|x| {
            let cone = if up {
                p.host.out_mask(x)
            } else {
                p.host.in_mask(x)
            } & set;
            is_chain(p, &members(cone))
        })
}

fn is_tree_general(p: &PosetView, up: bool) -> bool {
    let n = p.len();
    n > 0
        && connected_components(p.host).block_count() == 1
        && p.host.vertices().all(|x| {
            let cone = if up {
                p.host.out_neighbors(x)
            } else {
                p.host.in_neighbors(x)
            };
            is_chain(p, &cone.to_vec())
        })
}

fn is_lattice(p: &PosetView) -> bool {
    let n = p.len();
    if n == 0 {
        return false;
    }
    let d = p.host;
    let bound_exists = |x: usize, y: usize, upper: bool| {
        let common: Vec<usize> = d
            .vertices()
            .filter(|&z| {
                if upper {
                    p.le(x, z) && p.le(y, z)
                } else {
                    p.le(z, x) && p.le(z, y)
                }
            })
            .collect();
        common.iter().any(|&b| {
            common
                .iter()
                .all(|&z| if upper { p.le(b, z) } else { p.le(z, b) })
        })
    };
    (0..n).all(|x| (x + 1..n).all(|y| bound_exists(x, y, true) && bound_exists(x, y, false)))
}

/// Searches for a partition into an ideal `I` and a filter `F` that dominate
/// each other, where `I` is connected with every down-set a chain and `F`
/// is connected with every up-set a chain. Both parts must be nonempty.
fn has_split(p: &PosetView) -> bool {
    let n = p.len();
    let d = p.host;
    // Minimal elements first, so every strict predecessor precedes a vertex.
    let mut order: Vec<usize> = d.vertices().collect();
    order.sort_by_key(|&v| d.in_neighbors(v).len());
    let below: Vec<u64> = (0..n).map(|v| d.in_mask(v) & !(1u64 << v)).collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    fn walk(
        p: &PosetView,
        order: &[usize],
        below: &[u64],
        full: u64,
        i: usize,
        ideal: u64,
    ) -> bool {
        if i == order.len() {
            let filter = full & !ideal;
            if ideal == 0 || filter == 0 {
                return false;
            }
            let dominated = |from: u64, to: u64, up: bool| {
                members(from).into_iter().all(|x| {
                    let reach = if up {
                        p.host.out_mask(x)
                    } else {
                        p.host.in_mask(x)
                    };
                    reach & to != 0
                })
            };
            return dominated(ideal, filter, true)
                && dominated(filter, ideal, false)
                && is_tree_within(p, ideal, false)
                && is_tree_within(p, filter, true);
        }
        let v = order[i];
        if walk(p, order, below, full, i + 1, ideal) {
            return true;
        }
        below[v] & !ideal == 0 && walk(p, order, below, full, i + 1, ideal | 1 << v)
    }

    walk(p, &order, &below, full, 0, 0)
}

/// The first HH condition the poset satisfies, in the fixed order chain
/// components, tree, dual tree, split, lattice.
pub fn is_hh_poset(p: &PosetView) -> Result<PosetHHReason> {
    let d = p.host;
    let components = connected_components(d);
    if components.blocks().iter().all(|b| is_chain(p, &b.to_vec())) {
        return Ok(PosetHHReason::ChainComponents);
    }
    if is_tree_general(p, true) {
        return Ok(PosetHHReason::Tree);
    }
    if is_tree_general(p, false) {
        return Ok(PosetHHReason::DualTree);
    }
    if p.len() > SPLIT_MAX_ELEMENTS {
        return capability(format!(
            "split test enumerates order ideals and is limited to {SPLIT_MAX_ELEMENTS} elements"
        ));
    }
    if has_split(p) {
        return Ok(PosetHHReason::Split);
    }
    if is_lattice(p) {
        return Ok(PosetHHReason::Lattice);
    }
    Ok(PosetHHReason::None)
}

/// The partition of a quasiorder into `≡`-classes (`x → y` and `y → x`).
pub fn equivalence_classes(d: &Digraph) -> Partition {
    Partition::closure_of(d.vertex_count(), |x, y| d.is_double(x, y))
}

/// A quasiorder is HH iff its poset quotient by `≡` is.
pub fn is_hh_quasiorder(d: &Digraph) -> Result<bool> {
    if !d.is_reflexive() || !d.is_transitive() {
        return precondition("a quasiorder must be reflexive and transitive");
    }
    let q = quotient(d, &equivalence_classes(d))?;
    let p = as_poset(&q.digraph).expect("the quotient of a quasiorder by ≡ is a poset");
    Ok(is_hh_poset(&p)?.is_hh())
}

/// HH test for reflexive proper (antisymmetric) digraphs: a disjoint union
/// of reflexive 3-cycles and looped points, or an HH poset.
pub fn is_hh_proper_reflexive(d: &Digraph) -> Result<bool> {
    if !d.is_reflexive() || !d.is_antisymmetric() {
        return precondition("expected a reflexive proper digraph");
    }
    if let Some((k, l)) = check_c3_one_components(d) {
        return Ok(k + l >= 1);
    }
    match as_poset(d) {
        Some(p) => Ok(is_hh_poset(&p)?.is_hh()),
        None => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_hh_bruteforce;

    fn poset(n: usize, covers: &[(usize, usize)]) -> Digraph {
        let mut d = Digraph::new(n, covers).unwrap().reflexive_closure();
        // Transitive closure by repeated squaring at this size.
        for _ in 0..n {
            let e: Vec<_> = d.edges().collect();
            let mut all = e.clone();
            for &(a, b) in &e {
                for &(c, f) in &e {
                    if b == c {
                        all.push((a, f));
                    }
                }
            }
            d = Digraph::new(n, &all).unwrap();
        }
        d
    }

    fn reason(d: &Digraph) -> PosetHHReason {
        is_hh_poset(&as_poset(d).unwrap()).unwrap()
    }

    #[test]
    fn as_poset_examples() {
        assert!(as_poset(&Digraph::chain(2)).is_some());
        assert!(as_poset(&Digraph::reflexive_cycle(3)).is_none());
        assert!(as_poset(&Digraph::complete_reflexive(2)).is_none());
    }

    #[test]
    fn named_posets() {
        let v = poset(3, &[(0, 1), (0, 2)]);
        assert_eq!(reason(&v), PosetHHReason::DualTree);
        let diamond = poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        // {0, 1} and {2, 3} already split the diamond.
        assert_eq!(reason(&diamond), PosetHHReason::Split);
        assert!(is_lattice(&as_poset(&diamond).unwrap()));
        let n_poset = poset(4, &[(0, 2), (1, 2), (1, 3)]);
        assert_eq!(reason(&n_poset), PosetHHReason::None);
        assert!(!is_hh_bruteforce(&n_poset).unwrap().is_hh());
        assert!(is_hh_bruteforce(&diamond).unwrap().is_hh());
        assert!(is_hh_bruteforce(&v).unwrap().is_hh());
    }

    #[test]
    fn antichains_and_chains() {
        for n in 1..=5 {
            let anti = Digraph::empty(n).reflexive_closure();
            assert_eq!(reason(&anti), PosetHHReason::ChainComponents);
            assert_eq!(reason(&Digraph::chain(n)), PosetHHReason::ChainComponents);
        }
    }

    #[test]
    fn split_example() {
        // Ideal 0 < 1, 2 below filter 3, 4 < 5, every middle pair comparable.
        let d = poset(
            6,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        );
        assert_eq!(reason(&d), PosetHHReason::Split);
        assert!(!is_lattice(&as_poset(&d).unwrap()));
        assert!(is_hh_bruteforce(&d).unwrap().is_hh());
    }

    #[test]
    fn tree_ideal_below_dual_tree_filter_is_not_split() {
        // 0, 1 < 2 < 3 < 4, 5: sending {0, 1} onto {4, 5} cannot extend to 2.
        let d = poset(6, &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]);
        assert_eq!(reason(&d), PosetHHReason::None);
        assert!(!is_hh_bruteforce(&d).unwrap().is_hh());
    }

    #[test]
    fn duality_of_tree_conditions() {
        let t = poset(3, &[(0, 2), (1, 2)]);
        assert_eq!(reason(&t), PosetHHReason::Tree);
        assert_eq!(reason(&t.reverse()), PosetHHReason::DualTree);
    }

    #[test]
    fn quasiorder_examples() {
        assert!(is_hh_quasiorder(&Digraph::complete_reflexive(3)).unwrap());
        let (inflated, _) = Digraph::chain(2).inflate(&[2, 3]).unwrap();
        assert!(is_hh_quasiorder(&inflated).unwrap());
        let n_poset = poset(4, &[(0, 2), (1, 2), (1, 3)]);
        assert!(!is_hh_quasiorder(&n_poset).unwrap());
        assert!(is_hh_quasiorder(&Digraph::reflexive_cycle(3)).is_err());
    }

    #[test]
    fn proper_reflexive_examples() {
        let c3 = Digraph::reflexive_cycle(3);
        let d = Digraph::disjoint_union(&[c3.clone(), c3.clone(), Digraph::one_looped()]);
        assert!(is_hh_proper_reflexive(&d).unwrap());
        let d = Digraph::disjoint_union(&[c3, Digraph::chain(2)]);
        assert!(!is_hh_proper_reflexive(&d).unwrap());
        assert!(!is_hh_bruteforce(&d).unwrap().is_hh());
        assert!(is_hh_proper_reflexive(&Digraph::complete_reflexive(2)).is_err());
    }
}
