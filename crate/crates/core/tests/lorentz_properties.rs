use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylwalk::lorentz::{
    check_symmetry, deformation_d, deformation_d_inverse, deformed_transform, sample_beta, sample_on_shell_point,
    DeformationConfig,
};
use weylwalk::{Chirality, LorentzTransform};

fn chirality() -> impl Strategy<Value = Chirality> {
    prop_oneof![Just(Chirality::Plus), Just(Chirality::Minus)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_undoes_deformation(seed in any::<u64>(), region in 0usize..4, c in chirality()) {
        let cfg = DeformationConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pt = sample_on_shell_point(&mut rng, region, c, &cfg, 0.8).unwrap();
        let p = deformation_d(&pt, &cfg).unwrap();
        prop_assert!(p.minkowski_sq().abs() < 1e-9 * (1.0 + p.p0 * p.p0));
        let back = deformation_d_inverse(p, region, c, &cfg).unwrap();
        prop_assert!((back.k - pt.k).norm() < 1e-9);
        prop_assert!((back.omega - pt.omega).abs() < 1e-9);
    }

    #[test]
    fn identity_transform_is_trivial(seed in any::<u64>(), region in 0usize..4, c in chirality()) {
        let cfg = DeformationConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pt = sample_on_shell_point(&mut rng, region, c, &cfg, 0.8).unwrap();
        let q = deformed_transform(&pt, &LorentzTransform::identity(), &cfg).unwrap();
        prop_assert!((q.k - pt.k).norm() < 1e-9);
    }

    #[test]
    fn deformed_action_composes(seed in any::<u64>(), region in 0usize..4, c in chirality()) {
        let cfg = DeformationConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pt = sample_on_shell_point(&mut rng, region, c, &cfg, 0.4).unwrap();
        let l1 = LorentzTransform::new(sample_beta(&mut rng, 0.3), sample_beta(&mut rng, 0.3));
        let l2 = LorentzTransform::new(sample_beta(&mut rng, 0.3), sample_beta(&mut rng, 0.3));
        let step = deformed_transform(&pt, &l2, &cfg).and_then(|q| deformed_transform(&q, &l1, &cfg));
        let direct = deformed_transform(&pt, &(l1 * l2), &cfg);
        if let (Ok(a), Ok(b)) = (step, direct) {
            prop_assert!((a.k - b.k).norm() < 1e-8);
            prop_assert!((a.omega - b.omega).abs() < 1e-8);
        }
    }

    #[test]
    fn walk_is_covariant(seed in any::<u64>(), c in chirality()) {
        let cfg = DeformationConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pt = sample_on_shell_point(&mut rng, 0, c, &cfg, 0.5).unwrap();
        if let Ok(r) = check_symmetry(&pt, sample_beta(&mut rng, 0.5), [0.0; 3], &cfg) {
            prop_assert!(r.residual < 1e-9, "{}", r.residual);
        }
    }
}
