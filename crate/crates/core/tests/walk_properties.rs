use std::f64::consts::PI;

use proptest::prelude::*;
use weylwalk::spinor::SpinorMatrix;
use weylwalk::walk::{dispersion, group_velocity, special_point, walk_operator_k, SQRT3};
use weylwalk::{Chirality, WaveVector};

const ZONE: f64 = SQRT3 * PI;

fn chirality() -> impl Strategy<Value = Chirality> {
    prop_oneof![Just(Chirality::Plus), Just(Chirality::Minus)]
}

fn wave_vector(r: f64) -> impl Strategy<Value = WaveVector> {
    (-r..r, -r..r, -r..r).prop_map(|(x, y, z)| WaveVector::new(x, y, z))
}

#[test]
fn special_points_fixed() {
    let id = SpinorMatrix::identity();
    assert!(walk_operator_k(special_point(0), Chirality::Plus).max_diff(&id) < 1e-15);
    assert!(walk_operator_k(special_point(1), Chirality::Plus).max_diff(&-id) < 1e-15);
    assert!(walk_operator_k(special_point(2), Chirality::Plus).max_diff(&id) < 1e-15);
    assert!(walk_operator_k(special_point(3), Chirality::Plus).max_diff(&-id) < 1e-15);
    assert!((dispersion(WaveVector::new(ZONE / 2.0, 0.0, 0.0), Chirality::Plus) - PI / 2.0).abs() < 1e-12);
}

proptest! {
    #[test]
    fn dispersion_mirrors_between_chiralities(k in wave_vector(ZONE)) {
        let a = dispersion(k, Chirality::Plus);
        let b = dispersion(k.scale(-1.0), Chirality::Minus);
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn group_velocity_below_lattice_speed(k in wave_vector(ZONE), c in chirality()) {
        let v = group_velocity(k, c);
        prop_assume!(v.iter().all(|x| x.is_finite()));
        for x in v {
            prop_assert!(x.abs() <= 1.0 / SQRT3 + 1e-9, "{:?}", v);
        }
    }

    #[test]
    fn body_diagonal_corner_flips_chirality(d in wave_vector(1.5)) {
        let lhs = walk_operator_k(special_point(1) + d, Chirality::Plus);
        let rhs = -walk_operator_k(d, Chirality::Minus);
        prop_assert!(lhs.max_diff(&rhs) < 1e-14);
        let lhs = walk_operator_k(special_point(2) + d, Chirality::Plus);
        prop_assert!(lhs.max_diff(&walk_operator_k(d, Chirality::Minus)) < 1e-14);
    }

    #[test]
    fn axis_corner_keeps_chirality(d in wave_vector(1.5)) {
        let lhs = walk_operator_k(special_point(3) + d, Chirality::Plus);
        let rhs = -walk_operator_k(d, Chirality::Plus);
        prop_assert!(lhs.max_diff(&rhs) < 1e-14);
    }

    #[test]
    fn operator_is_zone_periodic(k in wave_vector(3.0 * ZONE), c in chirality()) {
        let r = k.reduce_to_zone();
        prop_assert!(walk_operator_k(k, c).max_diff(&walk_operator_k(r, c)) < 1e-11);
    }
}
