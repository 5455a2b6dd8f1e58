use std::collections::{HashSet, VecDeque};

use momentpoly_core::lie::{
    bruhat_interval, bruhat_leq, build_root_system, weyl_elements, RootSystem, WeylElement,
};

/// All reflections `w s_i w⁻¹`.
fn reflections(rs: &RootSystem, elems: &[WeylElement]) -> Vec<WeylElement> {
    let mut out: Vec<WeylElement> = Vec::new();
    for w in elems {
        for i in 0..rs.rank() {
            let s = WeylElement::from_word(rs, &[i]).unwrap();
            let t = w.compose(rs, &s).compose(rs, &w.inverse(rs));
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

/// `{w : v ≤ w}` by BFS along `u → u·t` with `ℓ(u·t) > ℓ(u)`.
fn upper_set(rs: &RootSystem, refl: &[WeylElement], v: &WeylElement) -> HashSet<Vec<Vec<i64>>> {
    let mut seen = HashSet::from([v.matrix().clone()]);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(u) = queue.pop_front() {
        for t in refl {
            let ut = u.compose(rs, t);
            if ut.length() > u.length() && seen.insert(ut.matrix().clone()) {
                queue.push_back(ut);
            }
        }
    }
    seen
}

#[test]
fn bruhat_order_matches_reflection_bfs() {
    for (kind, rank, order) in [('A', 1, 2), ('A', 2, 6), ('A', 3, 24), ('B', 2, 8)] {
        let rs = build_root_system(kind, rank).unwrap();
        let elems = weyl_elements(&rs).unwrap();
        assert_eq!(elems.len(), order, "{kind}{rank}");
        let refl = reflections(&rs, &elems);
        for v in &elems {
            let up = upper_set(&rs, &refl, v);
            for w in &elems {
                assert_eq!(
                    bruhat_leq(&rs, v, w).unwrap(),
                    up.contains(w.matrix()),
                    "{kind}{rank}: {v} ≤ {w}"
                );
            }
        }
        for w in &elems {
            let interval: HashSet<_> = bruhat_interval(&rs, w)
                .unwrap()
                .iter()
                .map(|v| v.matrix().clone())
                .collect();
            let below: HashSet<_> = elems
                .iter()
                .filter(|v| upper_set(&rs, &refl, v).contains(w.matrix()))
                .map(|v| v.matrix().clone())
                .collect();
            assert_eq!(interval, below, "{kind}{rank}: [e, {w}]");
        }
    }
}

#[test]
fn longest_element_lengths() {
    for (kind, rank, len) in [
        ('A', 3, 6),
        ('B', 2, 4),
        ('B', 3, 9),
        ('C', 3, 9),
        ('D', 4, 12),
        ('G', 2, 6),
    ] {
        let rs = build_root_system(kind, rank).unwrap();
        let max = weyl_elements(&rs)
            .unwrap()
            .iter()
            .map(WeylElement::length)
            .max()
            .unwrap();
        assert_eq!(max, len, "{kind}{rank}");
        assert_eq!(rs.positive_roots().len(), len);
    }
}
