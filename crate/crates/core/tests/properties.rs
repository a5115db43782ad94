//! Randomized invariants over the exact kernel and the geometry layer.

use proptest::prelude::*;

use tilekit::exactnum::{
    hnf_lattice_basis, in_lattice, is_discrete_span, Matrix, Scalar, Vector,
};
use tilekit::polytope::Polytope;
use tilekit::vertexstar::{classify, extreme_rays, Cone};

fn scalar_in(d: u64) -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=12, -30i64..=30, 1i64..=12)
        .prop_map(move |(p, q, r, s)| Scalar::rat(p, q) + Scalar::root(r, s, d))
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop_oneof![Just(0u64), Just(2), Just(5)].prop_flat_map(scalar_in)
}

/// A shared-field triple: all three live in the same Q(sqrt(d)).
fn scalar_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop_oneof![Just(0u64), Just(2), Just(5)]
        .prop_flat_map(|d| (scalar_in(d), scalar_in(d), scalar_in(d)))
}

fn rational_vec2() -> impl Strategy<Value = Vector> {
    ((-9i64..=9, 1i64..=4), (-9i64..=9, 1i64..=4))
        .prop_map(|((p, q), (r, s))| Vector::new(vec![Scalar::rat(p, q), Scalar::rat(r, s)]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws((x, y, z) in scalar_triple()) {
        prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
        prop_assert_eq!(
            (x.clone() * y.clone()) * z.clone(),
            x.clone() * (y.clone() * z.clone())
        );
        prop_assert_eq!(
            (x.clone() + y.clone()) * z.clone(),
            x.clone() * z.clone() + y.clone() * z.clone()
        );
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.inv(), Scalar::one());
        }
    }

    #[test]
    fn scalar_display_roundtrip(x in scalar_strategy()) {
        let back: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rank_invariant_under_row_ops(
        rows in prop::collection::vec(rational_vec2(), 2..=3),
        c in 1i64..=7,
    ) {
        let m = Matrix::new(rows.clone());
        let r = m.rank();
        let mut swapped = rows.clone();
        swapped.reverse();
        prop_assert_eq!(Matrix::new(swapped).rank(), r);
        let mut scaled = rows.clone();
        scaled[0] = scaled[0].scale(&Scalar::from_int(c));
        prop_assert_eq!(Matrix::new(scaled).rank(), r);
        let mut added = rows.clone();
        added[0] = added[0].add(&rows[1]);
        prop_assert_eq!(Matrix::new(added).rank(), r);
    }

    #[test]
    fn discreteness_invariant_under_reordering(
        vs in prop::collection::vec(rational_vec2(), 1..=4),
    ) {
        let d = is_discrete_span(&vs);
        let mut rev = vs.clone();
        rev.reverse();
        prop_assert_eq!(is_discrete_span(&rev), d);
        let negated: Vec<Vector> = vs.iter().map(Vector::neg).collect();
        prop_assert_eq!(is_discrete_span(&negated), d);
    }

    #[test]
    fn hnf_basis_spans_generators(
        vs in prop::collection::vec(
            (-9i64..=9, -9i64..=9).prop_map(|(x, y)| Vector::from_ints(&[x, y])),
            1..=4,
        ),
    ) {
        let basis = hnf_lattice_basis(&vs).unwrap();
        for v in &vs {
            prop_assert!(in_lattice(&basis, v), "{v} outside its own lattice");
        }
    }

    #[test]
    fn polygon_area_translation_invariant(
        pts in prop::collection::vec(rational_vec2(), 3..=6),
        shift in rational_vec2(),
    ) {
        let Ok(poly) = Polytope::from_vertices(&pts) else {
            return Ok(());
        };
        prop_assume!(poly.dim() == 2 && poly.vertices().len() >= 3);
        let area = poly.area2();
        prop_assert!(area.sign() > 0);
        prop_assert_eq!(poly.translate(&shift).area2(), area);
    }

    #[test]
    fn classification_invariant_under_rotation(
        normals in prop::collection::vec(rational_vec2(), 1..=3),
    ) {
        let normals: Vec<Vector> = normals.into_iter().filter(|v| !v.is_zero()).collect();
        prop_assume!(!normals.is_empty());
        let cone = Cone::new(normals, 2);
        let rot = Matrix::new(vec![
            Vector::from_ints(&[0, -1]),
            Vector::from_ints(&[1, 0]),
        ]);
        prop_assert_eq!(classify(&cone.linear_image(&rot)), classify(&cone));
    }

    #[test]
    fn extreme_rays_lie_on_cone_boundary(
        (ax, ay, bx, by) in (-9i64..=9, -9i64..=9, -9i64..=9, -9i64..=9),
    ) {
        let a = Vector::from_ints(&[ax, ay]);
        let b = Vector::from_ints(&[bx, by]);
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assume!(a.cross2(&b).sign() > 0); // pointed, nondegenerate
        // cone spanned by a and b: normals are the inward perpendiculars
        let cone = Cone::new(
            vec![
                Vector::new(vec![-a.get(1).clone(), a.get(0).clone()]),
                Vector::new(vec![b.get(1).clone(), -b.get(0).clone()]),
            ],
            2,
        );
        let rays = extreme_rays(&cone).unwrap();
        prop_assert_eq!(rays.len(), 2);
        for r in &rays {
            prop_assert!(cone.contains(r));
            prop_assert!(cone.on_boundary_hyperplane(r));
        }
        let dirs: Vec<Vector> = rays.iter().map(Vector::canonical_direction).collect();
        prop_assert!(dirs.contains(&a.canonical_direction()));
        prop_assert!(dirs.contains(&b.canonical_direction()));
    }
}
