//! Checkers shared by the integration tests. Nothing here calls into the
//! classifier or the search kernels; only plain digraph accessors are used.

#![allow(dead_code, clippy::needless_range_loop)]

use hh_core::classifier::{Certificate, Family};
use hh_core::involution::{
    classify_twi, is_digraph_with_involution, is_tournament_with_involution, TwiClass,
};
use hh_core::posets::{as_poset, is_hh_poset};
use hh_core::Digraph;

pub fn maps_edges(d1: &Digraph, d2: &Digraph, f: &[usize]) -> bool {
    f.len() == d1.vertex_count()
        && f.iter().all(|&y| y < d2.vertex_count())
        && d1.edges().all(|(u, v)| d2.has_edge(f[u], f[v]))
}

/// Connected components by plain flood fill on the underlying graph.
pub fn components(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for y in 0..n {
                if !seen[y] && (d.has_edge(x, y) || d.has_edge(y, x)) {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn sub(d: &Digraph, vs: &[usize]) -> Digraph {
    Digraph::from_fn(vs.len(), |i, j| d.has_edge(vs[i], vs[j]))
}

fn is_looped_3_cycle(d: &Digraph) -> bool {
    if d.vertex_count() != 3 || !d.is_reflexive() {
        return false;
    }
    let arcs: Vec<(usize, usize)> = d.edges().filter(|(u, v)| u != v).collect();
    arcs.len() == 3
        && (0..3).all(|v| arcs.iter().filter(|a| a.0 == v).count() == 1)
        && (0..3).all(|v| arcs.iter().filter(|a| a.1 == v).count() == 1)
}

/// Re-checks an HH certificate against `d`. Returns a description of the
/// first failed check.
pub fn verify_certificate(d: &Digraph, cert: &Certificate) -> Result<(), String> {
    let q = &cert.quotient;
    let (r, j) = (&cert.retraction, &cert.injection);
    if r.len() != d.vertex_count() || j.len() != q.vertex_count() {
        return Err("retraction or injection has the wrong length".into());
    }
    if j.iter()
        .enumerate()
        .any(|(b, &x)| x >= r.len() || r[x] != b)
    {
        return Err("retraction after injection is not the identity".into());
    }
    if !maps_edges(d, q, r) {
        return Err("retraction is not a homomorphism".into());
    }
    if !maps_edges(q, d, j) {
        return Err("injection is not a homomorphism".into());
    }
    // Partition blocks are the fibres of the retraction.
    for (b, block) in cert.partition.blocks().iter().enumerate() {
        if block.iter().any(|x| r[x] != b) {
            return Err(format!("block {b} is not a fibre of the retraction"));
        }
    }
    // Inflate the quotient along the block sizes and map it back with an
    // explicit bijection: block members in increasing order.
    let sizes: Vec<usize> = cert.partition.blocks().iter().map(|b| b.len()).collect();
    let (inflated, _) = q.inflate(&sizes).map_err(|e| e.to_string())?;
    let mut bijection = Vec::with_capacity(d.vertex_count());
    for block in cert.partition.blocks() {
        bijection.extend(block.iter());
    }
    let back = inflated.permute(&bijection).map_err(|e| e.to_string())?;
    if &back != d {
        return Err("inflating the quotient does not reproduce the digraph".into());
    }
    match &cert.family {
        Family::Quasiorder(_) => {
            if !d.is_transitive() {
                return Err("quasiorder certificate for a non-transitive digraph".into());
            }
            let p = as_poset(q).ok_or("quotient is not a poset")?;
            if !is_hh_poset(&p).map_err(|e| e.to_string())?.is_hh() {
                return Err("quotient poset fails the poset test".into());
            }
        }
        Family::C3One { k, l } => {
            let comps = components(q);
            let cycles = comps
                .iter()
                .filter(|c| is_looped_3_cycle(&sub(q, c)))
                .count();
            let points = comps
                .iter()
                .filter(|c| c.len() == 1 && q.has_loop(c[0]))
                .count();
            if cycles + points != comps.len() || (cycles, points) != (*k, *l) || k + l == 0 {
                return Err("quotient is not the claimed union of 3-cycles and points".into());
            }
        }
        Family::Dwi(classes) => {
            if is_digraph_with_involution(q)
                .map_err(|e| e.to_string())?
                .is_none()
            {
                return Err("quotient is not a digraph with involution".into());
            }
            let mut found = Vec::new();
            for c in components(q) {
                let s = sub(q, &c);
                if !is_tournament_with_involution(&s) {
                    return Err("a quotient component is not a tournament with involution".into());
                }
                found.push(classify_twi(&s).map_err(|e| e.to_string())?);
            }
            if &found != classes {
                return Err(format!(
                    "component classes {found:?} differ from {classes:?}"
                ));
            }
            let zeta = found.contains(&TwiClass::Zeta4);
            let ok = found.iter().all(|c| match c {
                TwiClass::NotHh => false,
                TwiClass::Zeta4 => true,
                TwiClass::Alpha(n) => !zeta || *n <= 2,
            });
            if !ok {
                return Err(format!("components {found:?} form no HH family"));
            }
        }
    }
    Ok(())
}

/// Size of a largest independent set, by trying every subset.
pub fn independence_number(g: &Digraph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|&m| {
            (0..n).all(|a| (0..n).all(|b| m >> a & 1 == 0 || m >> b & 1 == 0 || !g.has_edge(a, b)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Some component holds two vertices not joined by a chain of double edges.
pub fn bidirectionally_disconnected(d: &Digraph) -> bool {
    let doubled = Digraph::from_fn(d.vertex_count(), |u, v| {
        d.has_edge(u, v) && d.has_edge(v, u)
    });
    let theta = components(&doubled);
    components(d)
        .iter()
        .any(|c| theta.iter().filter(|t| c.contains(&t[0])).count() >= 2)
}

pub fn improper(d: &Digraph) -> bool {
    let n = d.vertex_count();
    let pairs = || {
        (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|(u, v)| u != v)
    };
    let double = pairs().any(|(u, v)| d.has_edge(u, v) && d.has_edge(v, u));
    let single = pairs().any(|(u, v)| d.has_edge(u, v) && !d.has_edge(v, u));
    double && single
}

pub fn is_partial_order(d: &Digraph) -> bool {
    let n = d.vertex_count();
    (0..n).all(|x| d.has_edge(x, x))
        && (0..n).all(|x| (0..n).all(|y| x == y || !(d.has_edge(x, y) && d.has_edge(y, x))))
        && (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| !(d.has_edge(x, y) && d.has_edge(y, z)) || d.has_edge(x, z))
            })
        })
}

/// `hom` is a partial homomorphism on `d` and `vertex` has no admissible image.
pub fn refutes(d: &Digraph, hom: &[Option<usize>], vertex: usize) -> bool {
    let n = d.vertex_count();
    let dom: Vec<usize> = (0..n).filter(|&u| hom[u].is_some()).collect();
    let img = |u: usize| hom[u].unwrap();
    let is_hom = dom.iter().all(|&u| {
        dom.iter()
            .all(|&v| !d.has_edge(u, v) || d.has_edge(img(u), img(v)))
    });
    let stuck = hom[vertex].is_none()
        && (0..n).all(|y| {
            !dom.iter().all(|&u| {
                (!d.has_edge(u, vertex) || d.has_edge(img(u), y))
                    && (!d.has_edge(vertex, u) || d.has_edge(y, img(u)))
            }) || (d.has_loop(vertex) && !d.has_loop(y))
        });
    is_hom && stuck
}

pub mod strategies {
    use hh_core::Digraph;
    use proptest::prelude::*;

    pub fn digraph(min_n: usize, max_n: usize, reflexive: bool) -> impl Strategy<Value = Digraph> {
        (min_n..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                Digraph::from_fn(n, |u, v| (reflexive && u == v) || bits[u * n + v])
            })
        })
    }

    pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    /// A digraph together with a relabeling of it.
    pub fn digraph_and_perm(
        min_n: usize,
        max_n: usize,
        reflexive: bool,
    ) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
        digraph(min_n, max_n, reflexive).prop_flat_map(|d| {
            let n = d.vertex_count();
            (Just(d), permutation(n))
        })
    }

    /// Reflexive partial order: transitive closure of a random DAG on
    /// increasing labels, then shuffled.
    pub fn poset(max_n: usize) -> impl Strategy<Value = Digraph> {
        (1..=max_n).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n * n),
                permutation(n),
            )
                .prop_map(move |(bits, p)| {
                    Digraph::from_fn(n, |u, v| u == v || (u < v && bits[u * n + v]))
                        .transitive_closure()
                        .permute(&p)
                        .unwrap()
                })
        })
    }
}
