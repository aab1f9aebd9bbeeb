use std::collections::BTreeSet;

use bt_wonder_core::{Family, ParabolicType, RootSystem, WeylElement};

const RANK_LE_4: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "A1xA1", "B2xA1", "A2xA1", "A1xA1xA1",
    "G2xA2", "A3xA1",
];

fn rs(s: &str) -> RootSystem {
    s.parse().unwrap()
}

/// `w₀` as the element of maximal length in the enumerated group.
fn brute_longest(r: &RootSystem) -> WeylElement {
    let g = r.weyl_group(2_000).unwrap();
    g.elements.into_iter().max_by_key(|w| r.length(w)).unwrap()
}

/// `-w₀(τ)` by looking up `-w₀(α_i)` in the root list.
fn brute_opposite(r: &RootSystem, w0: &WeylElement, tau: ParabolicType) -> ParabolicType {
    ParabolicType::from_indices(tau.iter().map(|i| {
        let img: Vec<i64> = w0.apply(r.root(i)).iter().map(|c| -c).collect();
        let k = r.root_index(&img).unwrap();
        assert!(k < r.rank(), "-w0 sends a simple root to a non-simple root");
        k
    }))
}

#[test]
fn longest_element_matches_brute_force() {
    for s in RANK_LE_4 {
        let r = rs(s);
        let w0 = brute_longest(&r);
        assert_eq!(r.longest_element(), w0, "{s}");
        assert_eq!(r.length(&w0), r.num_positive(), "{s}");
        assert_eq!(*r.weyl_group(2_000).unwrap().longest_element(), w0, "{s}");
    }
}

#[test]
fn opposite_type_matches_brute_force_and_is_involution() {
    for s in RANK_LE_4 {
        let r = rs(s);
        let w0 = brute_longest(&r);
        for tau in r.type_poset().types {
            let opp = r.opposite_type(tau);
            assert_eq!(opp, brute_opposite(&r, &w0, tau), "{s} {tau:?}");
            assert_eq!(r.opposite_type(opp), tau, "{s} {tau:?}");
        }
    }
}

#[test]
fn opposite_type_examples() {
    let a2 = rs("A2");
    assert_eq!(a2.opposite_type(ParabolicType::from_indices([0])), ParabolicType::from_indices([1]));
    let b2 = rs("B2");
    assert_eq!(b2.opposite_type(ParabolicType::from_indices([0])), ParabolicType::from_indices([0]));
}

#[test]
fn reflections_preserve_roots_and_square_to_one() {
    for s in RANK_LE_4 {
        let r = rs(s);
        for i in 0..r.rank() {
            for a in r.roots() {
                let b = r.reflect(i, a);
                assert!(r.root_index(&b).is_some(), "{s}: s_{i} leaves Φ");
                assert_eq!(r.reflect(i, &b), *a, "{s}: s_{i}² ≠ 1");
            }
        }
    }
}

/// Roots of the subsystem spanned by `tau`: the orbit of its simple roots
/// under its simple reflections.
fn subsystem_roots(r: &RootSystem, tau: ParabolicType) -> BTreeSet<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = tau.iter().map(|i| r.root(i).to_vec()).collect();
    let mut frontier: Vec<Vec<i64>> = seen.iter().cloned().collect();
    while let Some(v) = frontier.pop() {
        for i in tau.iter() {
            let w = r.reflect(i, &v);
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

#[test]
fn levi_and_radical_partition_the_roots() {
    for s in RANK_LE_4 {
        let r = rs(s);
        for tau in r.type_poset().types {
            let d = r.levi_and_radical_roots(tau);
            let levi: BTreeSet<Vec<i64>> = d.levi.iter().map(|&k| r.root(k).to_vec()).collect();
            assert_eq!(levi, subsystem_roots(&r, tau), "{s} {tau:?}");
            let mut all: Vec<usize> = d.levi.clone();
            all.extend(&d.radical);
            all.extend(d.radical.iter().map(|&k| r.negate(k)));
            all.sort_unstable();
            assert_eq!(all, (0..r.num_roots()).collect::<Vec<_>>(), "{s} {tau:?}");
            assert_eq!(d.levi_positive.len() + d.levi_negative.len(), d.levi.len());
        }
    }
}

#[test]
fn reducible_systems_factor() {
    let cases: &[(&str, &[(Family, usize)])] = &[
        ("B2xA1", &[(Family::B, 2), (Family::A, 1)]),
        ("G2xA2", &[(Family::G, 2), (Family::A, 2)]),
        ("A1xA1xA1", &[(Family::A, 1), (Family::A, 1), (Family::A, 1)]),
    ];
    for (s, parts) in cases {
        let r = rs(s);
        let pieces: Vec<RootSystem> = parts.iter().map(|&p| RootSystem::build(&[p]).unwrap()).collect();
        let order: usize = pieces.iter().map(|p| p.weyl_group(2_000).unwrap().order()).product();
        assert_eq!(r.weyl_group(2_000).unwrap().order(), order, "{s}");
        let len: usize = pieces.iter().map(|p| p.length(&p.longest_element())).sum();
        assert_eq!(r.length(&r.longest_element()), len, "{s}");
        assert_eq!(r.num_roots(), pieces.iter().map(RootSystem::num_roots).sum::<usize>(), "{s}");
        for tau in r.type_poset().types {
            let mut offset = 0;
            let mut expect = ParabolicType::EMPTY;
            for p in &pieces {
                let local = ParabolicType::from_indices(
                    tau.iter().filter(|&i| i >= offset && i < offset + p.rank()).map(|i| i - offset),
                );
                for i in p.opposite_type(local).iter() {
                    expect = expect.insert(i + offset);
                }
                offset += p.rank();
            }
            assert_eq!(r.opposite_type(tau), expect, "{s} {tau:?}");
        }
    }
}

#[test]
fn weyl_orders_against_formulas() {
    let fact = |n: usize| (1..=n).product::<usize>();
    for n in 1..=4 {
        assert_eq!(rs(&format!("A{n}")).weyl_group(2_000).unwrap().order(), fact(n + 1));
    }
    for n in 2..=4 {
        assert_eq!(rs(&format!("B{n}")).weyl_group(2_000).unwrap().order(), (1 << n) * fact(n));
        assert_eq!(rs(&format!("C{n}")).weyl_group(2_000).unwrap().order(), (1 << n) * fact(n));
    }
    assert_eq!(rs("D4").weyl_group(2_000).unwrap().order(), 192);
    assert_eq!(rs("F4").weyl_group(2_000).unwrap().order(), 1152);
}

#[test]
fn min_coset_rep_is_shortest_in_coset() {
    for s in ["A2", "B2", "G2", "A3"] {
        let r = rs(s);
        let g = r.weyl_group(2_000).unwrap();
        for tau in r.type_poset().types {
            let wt: Vec<WeylElement> =
                g.elements.iter().filter(|u| u.word().iter().all(|&i| tau.contains(i))).cloned().collect();
            for w in &g.elements {
                let rep = r.min_coset_rep(w, tau);
                let best = wt.iter().map(|u| r.length(&w.compose(&r, u))).min().unwrap();
                assert_eq!(r.length(&rep), best, "{s} {tau:?} {w}");
                assert!(wt.iter().any(|u| w.compose(&r, u) == rep), "{s}: rep outside the coset");
            }
        }
    }
}
