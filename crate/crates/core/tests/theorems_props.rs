use proptest::prelude::*;

use momentpoly_core::lie::{
    bruhat_interval, bruhat_leq, build_root_system, weyl_act, weyl_elements, Weight, WeylGroup,
};
use momentpoly_core::polytope::{is_regular_lattice, Polytope};
use momentpoly_core::rational::{q, qf, Rational};
use momentpoly_core::reps::{sample_point_exact, stream_rng, ProjPoint, Rep};
use momentpoly_core::theorems::{
    atiyah_polytope, chamber_box, check_atiyah, delzant_sequence, finiteness_survey,
    intersection_gap, pick_positive, rep_action_chambers, schubert_polytope, unstable_check,
    DelzantTarget, TargetCoord,
};

#[test]
fn schubert_polytopes_are_monotone() {
    for (rank, mu) in [
        (2, vec![1, 1]),
        (2, vec![2, 0]),
        (3, vec![1, 0, 1]),
        (3, vec![1, 1, 1]),
    ] {
        let rs = build_root_system('A', rank).unwrap();
        let mu = Weight::from_ints(&mu);
        let elems = weyl_elements(&rs).unwrap();
        let polys: Vec<Polytope> = elems
            .iter()
            .map(|w| schubert_polytope(&rs, w, &mu).unwrap())
            .collect();
        for (i, v) in elems.iter().enumerate() {
            for (j, w) in elems.iter().enumerate() {
                if bruhat_leq(&rs, v, w).unwrap() {
                    assert!(polys[i].is_subset_of(&polys[j]), "A{rank}: P({v}) ⊄ P({w})");
                }
            }
        }
    }
}

#[test]
fn longest_element_gives_weyl_orbit_hull() {
    for (rank, mu) in [(2, vec![1, 1]), (3, vec![2, 0, 1])] {
        let rs = build_root_system('A', rank).unwrap();
        let mu = Weight::from_ints(&mu);
        let group = WeylGroup::new(&rs).unwrap();
        let p = schubert_polytope(&rs, group.longest(), &mu).unwrap();
        let orbit: Vec<_> = group
            .elements
            .iter()
            .map(|w| weyl_act(&rs, w, &mu).unwrap().0)
            .collect();
        assert_eq!(p, Polytope::hull(rank, &orbit).unwrap());
        for w in &group.elements {
            let moved: Vec<_> = p
                .vertices()
                .iter()
                .map(|v| weyl_act(&rs, w, &Weight::new(v.clone())).unwrap().0)
                .collect();
            assert_eq!(Polytope::hull(rank, &moved).unwrap(), p);
        }
        assert_eq!(
            bruhat_interval(&rs, group.longest()).unwrap().len(),
            group.len()
        );
    }
}

#[test]
fn atiyah_vertices_are_integral() {
    for (n, d) in [(2, 3), (3, 2), (4, 1)] {
        let rep = Rep::sym_power(n, d).unwrap();
        for i in 0..10 {
            let x = sample_point_exact(rep.dim(), &mut stream_rng(2, i), 2, 0.4);
            let r = check_atiyah(&rep, &x, 20, i).unwrap();
            assert!(r.passed(), "{x}: {:?}", r.failures());
        }
    }
}

#[test]
fn containment_chain() {
    for d in 1..=3 {
        let rep = Rep::sym_power(2, d).unwrap();
        for i in 0..6 {
            let x = sample_point_exact(rep.dim(), &mut stream_rng(4, i), 2, 0.25);
            let out = intersection_gap(&rep, &x, 8, 4, i).unwrap();
            let top = chamber_box(&rep)
                .unwrap()
                .intersect(&atiyah_polytope(&rep, &x).unwrap())
                .unwrap();
            assert!(out.lhs.is_subset_of(&out.rhs), "{x}");
            assert!(out.rhs.is_subset_of(&out.rhs_identity), "{x}");
            assert_eq!(out.rhs_identity, top);
        }
    }
}

#[test]
fn unstable_verdicts_do_not_depend_on_seed() {
    let rep = Rep::sym_power(3, 2).unwrap();
    let arr = rep_action_chambers(&rep).unwrap();
    let eta = pick_positive(rep.root_system(), &arr)
        .unwrap()
        .representative;
    for seed in 0..3 {
        let r = unstable_check(&rep, &eta, 40, seed).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }
}

#[test]
fn survey_is_reproducible() {
    let rep = Rep::sym_power(2, 2).unwrap();
    let a = finiteness_survey(&rep, 60, 3, 8).unwrap();
    let b = finiteness_survey(&rep, 60, 3, 8).unwrap();
    assert_eq!(a.polytopes, b.polytopes);
    assert_eq!(a.class, b.class);
    assert!(a.polytopes.len() <= 4);
}

#[test]
fn regular_lattice_examples() {
    let bad = Polytope::hull(2, &[vec![q(0), q(0)], vec![q(1), q(2)], vec![q(2), q(1)]]).unwrap();
    let e = [vec![q(1), q(0)], vec![q(0), q(1)]];
    assert!(!is_regular_lattice(&bad, &e).unwrap());
    let simplex =
        Polytope::hull(2, &[vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap();
    assert!(is_regular_lattice(&simplex, &e).unwrap());
    let square = Polytope::cube(2, &q(0), &q(1)).unwrap();
    assert!(is_regular_lattice(&square, &e).unwrap());
}

fn target_coord() -> impl Strategy<Value = TargetCoord> {
    prop_oneof![
        (0i64..40, 1i64..12).prop_map(|(a, b)| TargetCoord::Rational(qf(a, b))),
        (1i64..30, 1i64..7).prop_map(|(a, b)| TargetCoord::Sqrt(qf(a, b))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn delzant_requirements_hold(coords in prop::collection::vec(target_coord(), 1..=3), terms in 1usize..6) {
        let rs = build_root_system('A', coords.len()).unwrap();
        let target = DelzantTarget(coords);
        let s = delzant_sequence(&rs, &target, terms).unwrap();
        prop_assert!(s.report.passed(), "{target}: {:?}", s.report.failures());
        prop_assert_eq!(s.terms.len(), terms);
    }

    #[test]
    fn atiyah_of_weight_vector_is_a_point(k in 0usize..6) {
        let rep = Rep::sym_power(3, 2).unwrap();
        let p = atiyah_polytope(&rep, &ProjPoint::basis_vector(6, k)).unwrap();
        prop_assert_eq!(p.vertices(), &[rep.moment_weights()[k].0.clone()][..]);
    }
}

#[test]
fn float_target_on_a2() {
    let rs = build_root_system('A', 2).unwrap();
    let s = delzant_sequence(&rs, &DelzantTarget::float(&[1.3125, 1.0]).unwrap(), 5).unwrap();
    assert!(s.report.passed());
    let lattice = DelzantTarget::rational(&[Rational::from_integer(2.into()), q(1)]);
    let one = delzant_sequence(&rs, &lattice, 1).unwrap();
    assert!(one.report.passed());
    assert!(one.terms[0]
        .polytope
        .contains(&[q(2), q(1)], momentpoly_core::polytope::Membership::Exact));
}
