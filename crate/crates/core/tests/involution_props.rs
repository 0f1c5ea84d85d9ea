mod common;

use std::ops::ControlFlow;

use common::strategies::permutation;
use hh_core::census::tournaments_with_involution;
use hh_core::involution::{
    classify_twi, extract_base, is_digraph_with_involution, is_hh_dwi, make_alpha, make_zeta4,
    TwiClass,
};
use hh_core::oracle::{for_each_partial_hom, is_hh_bruteforce};
use hh_core::Digraph;
use proptest::prelude::*;

/// A shuffled disjoint union of named tournaments with involution, at most
/// `max_vertices` in total.
fn dwi(max_vertices: usize) -> impl Strategy<Value = Digraph> {
    let part = prop_oneof![
        Just(make_alpha(0)),
        Just(make_alpha(1)),
        Just(make_alpha(2)),
        Just(make_alpha(3)),
        Just(make_zeta4()),
    ];
    proptest::collection::vec(part, 1..4).prop_flat_map(move |parts| {
        let mut kept = Vec::new();
        let mut total = 0;
        for p in parts {
            if total + p.vertex_count() <= max_vertices {
                total += p.vertex_count();
                kept.push(p);
            }
        }
        if kept.is_empty() {
            kept.push(make_alpha(0));
            total = 1;
        }
        let d = Digraph::disjoint_union(&kept);
        permutation(total).prop_map(move |p| d.permute(&p).unwrap())
    })
}

/// Every map `V → V` with `p∘p = id`, `p` an automorphism, `x → y ⇒ y → p(x)`
/// and distinct double edges joining partners.
fn all_involutions(d: &Digraph) -> Vec<Vec<usize>> {
    fn go(d: &Digraph, p: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(x) = p.iter().position(Option::is_none) else {
            let p: Vec<usize> = p.iter().map(|v| v.unwrap()).collect();
            let n = d.vertex_count();
            let auto = (0..n).all(|a| (0..n).all(|b| d.has_edge(a, b) == d.has_edge(p[a], p[b])));
            let di2 = (0..n).all(|a| (0..n).all(|b| !d.has_edge(a, b) || d.has_edge(b, p[a])));
            let di3 = (0..n).all(|a| {
                (0..n).all(|b| a == b || !(d.has_edge(a, b) && d.has_edge(b, a)) || p[a] == b)
            });
            if auto && di2 && di3 {
                out.push(p);
            }
            return;
        };
        for y in x..p.len() {
            if p[y].is_some() {
                continue;
            }
            p[x] = Some(y);
            p[y] = Some(x);
            go(d, p, out);
            p[x] = None;
            p[y] = None;
        }
    }
    let mut out = Vec::new();
    go(d, &mut vec![None; d.vertex_count()], &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_shape(d in dwi(12)) {
        let inv = is_digraph_with_involution(&d).unwrap().expect("named unions are digraphs with involution");
        let p = |x: usize| inv.partner(x);
        let n = d.vertex_count();
        for x in 0..n {
            prop_assert!(d.has_edge(x, p(x)) && d.has_edge(p(x), x));
            let isolated = (0..n).all(|y| y == x || !(d.has_edge(x, y) || d.has_edge(y, x)));
            prop_assert_eq!(p(x) == x, isolated);
            for y in 0..n {
                if x != y && (d.has_edge(x, y) || d.has_edge(y, x)) {
                    let (r, s, t, u) = (x, p(x), y, p(y));
                    let cyc = |a: usize, b: usize, c: usize, e: usize| {
                        d.has_edge(a, b) && d.has_edge(b, c) && d.has_edge(c, e) && d.has_edge(e, a)
                    };
                    prop_assert!(cyc(r, t, s, u) || cyc(r, u, s, t));
                }
            }
        }
    }

    #[test]
    fn involution_is_unique(d in dwi(8)) {
        let inv = is_digraph_with_involution(&d).unwrap().unwrap();
        let all = all_involutions(&d);
        prop_assert_eq!(all, vec![inv.as_slice().to_vec()]);
    }

    #[test]
    fn twi_class_is_invariant_under_relabeling(n in 0usize..=5, p in permutation(10)) {
        let a = make_alpha(n);
        let pa: Vec<usize> = p.iter().copied().filter(|&v| v < a.vertex_count()).collect();
        prop_assert_eq!(classify_twi(&a.permute(&pa).unwrap()).unwrap(), TwiClass::Alpha(n));
        let z = make_zeta4();
        let q: Vec<usize> = p.into_iter().filter(|&v| v < 8).collect();
        prop_assert_eq!(classify_twi(&z.permute(&q).unwrap()).unwrap(), TwiClass::Zeta4);
    }

    #[test]
    fn dwi_verdict_matches_oracle(d in dwi(12)) {
        prop_assert_eq!(is_hh_dwi(&d).unwrap(), is_hh_bruteforce(&d).unwrap().is_hh());
    }
}

#[test]
fn alpha_classes() {
    for n in 0..=6 {
        let a = make_alpha(n);
        assert_eq!(a.vertex_count(), if n == 0 { 1 } else { 2 * n });
        assert_eq!(classify_twi(&a).unwrap(), TwiClass::Alpha(n));
    }
}

#[test]
fn bases_pick_one_vertex_per_pair() {
    for d in [make_alpha(2), make_alpha(3), make_alpha(4), make_zeta4()] {
        let inv = is_digraph_with_involution(&d).unwrap().unwrap();
        for seed in 0..d.vertex_count() {
            let base = extract_base(&d, seed).unwrap();
            assert_eq!(base.vertices[0], seed);
            assert_eq!(base.len(), d.vertex_count() / 2);
            for (i, &x) in base.vertices.iter().enumerate() {
                assert!(base.vertices[..i]
                    .iter()
                    .all(|&y| y != inv.partner(x) && y != x));
                if i > 0 {
                    assert!(d.has_edge(x, seed));
                }
                for (j, &y) in base.vertices.iter().enumerate() {
                    assert_eq!(d.has_edge(x, y), base.digraph.has_edge(i, j));
                }
            }
        }
    }
}

/// Small tournaments with involution: the oracle and the classifier agree.
#[test]
fn twi_census_agrees_with_oracle() {
    for n in [1, 2, 4, 6, 8] {
        let census = tournaments_with_involution(n).unwrap();
        for (d, class) in census.classes {
            assert_eq!(
                is_hh_bruteforce(&d).unwrap().is_hh(),
                class != TwiClass::NotHh,
                "{d:?}"
            );
        }
    }
}

/// For partial homomorphisms between α₂, α₃ and ζ₄: a collapsed pair pins the
/// image to one pair and the constant extension works; otherwise pairs go
/// to pairs, and pair-respecting maps extend to the pair closure.
#[test]
fn partial_homs_between_small_twis() {
    let named = [make_alpha(2), make_alpha(3), make_zeta4()];
    for d1 in &named {
        for d2 in &named {
            let i1 = is_digraph_with_involution(d1).unwrap().unwrap();
            let i2 = is_digraph_with_involution(d2).unwrap().unwrap();
            let mut seen = 0usize;
            for_each_partial_hom(d1, d2, |f| {
                let dom: Vec<usize> = (0..d1.vertex_count())
                    .filter(|&u| f.get(u).is_some())
                    .collect();
                if dom.is_empty() {
                    return ControlFlow::Continue(());
                }
                seen += 1;
                let img = |u: usize| f.get(u).unwrap();
                let pair_of = |v: usize| [v, i2.partner(v)];
                let collapsed = dom.iter().find(|&&u| {
                    i1.partner(u) != u
                        && dom.contains(&i1.partner(u))
                        && img(u) == img(i1.partner(u))
                });
                if let Some(&u) = collapsed {
                    let v = img(u);
                    assert!(dom.iter().all(|&x| pair_of(v).contains(&img(x))));
                    let total: Vec<usize> = (0..d1.vertex_count())
                        .map(|x| f.get(x).unwrap_or(v))
                        .collect();
                    assert!(common::maps_edges(d1, d2, &total));
                    return ControlFlow::Continue(());
                }
                let in_one_pair = (0..d2.vertex_count())
                    .any(|v| dom.iter().all(|&x| pair_of(v).contains(&img(x))));
                let pairs_respected = dom.iter().all(|&u| {
                    !dom.contains(&i1.partner(u)) || img(i1.partner(u)) == i2.partner(img(u))
                });
                if !in_one_pair {
                    assert!(pairs_respected);
                }
                if pairs_respected {
                    let mut closed: Vec<Option<usize>> = f.as_options().to_vec();
                    for &u in &dom {
                        closed[i1.partner(u)] = Some(i2.partner(img(u)));
                    }
                    let cdom: Vec<usize> =
                        (0..closed.len()).filter(|&x| closed[x].is_some()).collect();
                    let hom = cdom.iter().all(|&a| {
                        cdom.iter().all(|&b| {
                            !d1.has_edge(a, b)
                                || d2.has_edge(closed[a].unwrap(), closed[b].unwrap())
                        })
                    });
                    assert!(hom);
                }
                ControlFlow::Continue(())
            })
            .unwrap();
            assert!(seen > 0);
        }
    }
}
