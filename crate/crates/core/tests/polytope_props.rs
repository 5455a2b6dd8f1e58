use momentpoly_core::polytope::{
    hausdorff_gap_cloud, intersect, is_regular_lattice, Membership, Polytope,
};
use momentpoly_core::rational::{q, qvec, QVec};
use proptest::prelude::*;

fn lattice_points(dim: usize) -> impl Strategy<Value = Vec<QVec>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=10)
        .prop_map(|pts| pts.iter().map(|p| qvec(p)).collect())
}

fn any_cloud() -> impl Strategy<Value = (usize, Vec<QVec>)> {
    (2usize..=4).prop_flat_map(|d| lattice_points(d).prop_map(move |p| (d, p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn v_h_v_round_trip((d, pts) in any_cloud()) {
        let p = Polytope::hull(d, &pts).unwrap();
        let back = Polytope::from_h(p.hrep()).unwrap();
        prop_assert_eq!(&back, &p);
        for x in &pts {
            prop_assert!(p.contains(x, Membership::Exact));
        }
    }

    #[test]
    fn hull_idempotent_and_order_free((d, pts) in any_cloud()) {
        let p = Polytope::hull(d, &pts).unwrap();
        let again = Polytope::hull(d, p.vertices()).unwrap();
        prop_assert_eq!(&again, &p);
        let mut rev = pts.clone();
        rev.reverse();
        prop_assert_eq!(&Polytope::hull(d, &rev).unwrap(), &p);
        prop_assert!(hausdorff_gap_cloud(&p, &p.vertices_f64()) < 1e-9);
    }

    #[test]
    fn bounding_box_intersection((d, pts) in any_cloud()) {
        let p = Polytope::hull(d, &pts).unwrap();
        let bx = Polytope::cube(d, &q(-3), &q(3)).unwrap();
        prop_assert_eq!(&intersect(&[p.clone(), bx]).unwrap(), &p);
    }

    #[test]
    fn exact_agrees_with_zero_tolerance(
        (d, pts) in any_cloud(),
        probe in prop::collection::vec(-8i64..=8, 4),
    ) {
        let p = Polytope::hull(d, &pts).unwrap();
        let x: QVec = probe[..d].iter().map(|&v| momentpoly_core::rational::qf(v, 2)).collect();
        prop_assert_eq!(
            p.contains(&x, Membership::Exact),
            p.contains(&x, Membership::Tolerance(0.0))
        );
    }

    #[test]
    fn regularity_invariant_under_unimodular_maps(
        (d, pts) in any_cloud(),
        shear in prop::collection::vec(-2i64..=2, 6),
        shift in prop::collection::vec(-2i64..=2, 4),
    ) {
        // Upper unitriangular integer matrix composed with a coordinate reversal.
        let mut m = vec![vec![0i64; d]; d];
        let mut k = 0;
        for i in 0..d {
            m[i][i] = 1;
            for j in i + 1..d {
                m[i][j] = shear[k % shear.len()];
                k += 1;
            }
        }
        m.reverse();
        let apply = |v: &QVec| -> QVec {
            (0..d)
                .map(|i| {
                    let mut acc = q(shift[i]);
                    for j in 0..d {
                        acc += &v[j] * q(m[i][j]);
                    }
                    acc
                })
                .collect()
        };
        let basis: Vec<QVec> = (0..d)
            .map(|i| (0..d).map(|j| q(i64::from(i == j))).collect())
            .collect();
        let p = Polytope::hull(d, &pts).unwrap();
        let image: Vec<QVec> = pts.iter().map(apply).collect();
        let pm = Polytope::hull(d, &image).unwrap();
        prop_assert_eq!(
            is_regular_lattice(&p, &basis).unwrap(),
            is_regular_lattice(&pm, &basis).unwrap()
        );
    }
}

#[test]
fn standard_shapes() {
    let b2 = vec![qvec(&[1, 0]), qvec(&[0, 1])];
    let tri = Polytope::hull(2, &[qvec(&[0, 0]), qvec(&[1, 2]), qvec(&[2, 1])]).unwrap();
    assert!(!is_regular_lattice(&tri, &b2).unwrap());
    let unit = Polytope::cube(2, &q(0), &q(1)).unwrap();
    assert!(is_regular_lattice(&unit, &b2).unwrap());
    assert_eq!(unit.hrep().inequalities.len(), 4);
}
