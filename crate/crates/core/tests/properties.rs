use dimshift::category::{FunctorSpec, LambdaModule, ModuleMap};
use dimshift::choice::Choice;
use dimshift::complex::{find_homotopy, induced_on_cohomology, is_homotopy, snake_delta_matrix};
use dimshift::derived::{sign_factor, DerivedEngine};
use dimshift::harness::{
    gen_module_of_dim, gen_random_ses, gen_test_resolution, random_free_automorphism,
    GeneratorConfig,
};
use dimshift::linalg::{image_basis, kernel_basis, Matrix};
use dimshift::rational::Rational;
use dimshift::resolution::{
    comparison_homotopy, horseshoe, lemma_b_resolution, lift_resolution_map, split_resolution,
    Resolution, ResolutionRegistry,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(m: usize, max_dim: usize) -> GeneratorConfig {
    GeneratorConfig {
        m,
        max_dim,
        max_padding: 2,
        ..GeneratorConfig::default()
    }
}

fn instance(seed: u64, m: usize, horizon: usize) -> (LambdaModule, Resolution, ResolutionRegistry) {
    let cfg = config(m, 7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.gen_range(1..=cfg.max_dim);
    let module = gen_module_of_dim(m, dim, &mut rng);
    let registry = ResolutionRegistry::new();
    let (j, _) = gen_test_resolution(&module, &cfg, &registry, horizon, &mut rng).unwrap();
    (module, j, registry)
}

fn functor(m: usize, seed: u64) -> FunctorSpec {
    FunctorSpec::new(LambdaModule::cyclic(m, 1 + (seed as usize) % (m - 1)))
}

fn squares_to_zero(r: &Resolution) -> bool {
    let ds = r.complex().differentials();
    let first = (ds[0].matrix() * r.augmentation().matrix()).is_zero();
    first
        && ds
            .windows(2)
            .all(|w| (w[1].matrix() * w[0].matrix()).is_zero())
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| Matrix::from_fn(r, c, |i, j| Rational::from_int(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn constructed_complexes_square_to_zero(seed in any::<u64>(), m in 2usize..=3) {
        let (module, j, registry) = instance(seed, m, 4);
        prop_assert!(squares_to_zero(&j));
        prop_assert!(squares_to_zero(&registry.resolution(&module, 4).unwrap()));
        let s = split_resolution(&j, 2).unwrap();
        let e = s.sequence(1);
        let ra = registry.resolution(e.sub(), 3).unwrap();
        let rb = registry.resolution(e.quotient(), 3).unwrap();
        let hs = horseshoe(e, &ra, &rb, &mut Choice::seeded(seed)).unwrap();
        prop_assert!(squares_to_zero(&hs.resolution));
        let cyl = lemma_b_resolution(&j, &s, 1, 2).unwrap();
        prop_assert!(squares_to_zero(&cyl.resolution));
    }

    #[test]
    fn constructed_maps_intertwine(seed in any::<u64>(), m in 2usize..=3) {
        let (module, j, registry) = instance(seed, m, 3);
        let i = registry.resolution(&module, 3).unwrap();
        let lift = lift_resolution_map(&ModuleMap::identity(&module), &j, &i, &mut Choice::seeded(seed)).unwrap();
        let maps = j.complex().differentials().iter()
            .chain(std::iter::once(j.augmentation()))
            .chain(lift.components().iter());
        for f in maps {
            prop_assert!(f.is_intertwining());
        }
        let s = split_resolution(&j, 3).unwrap();
        for q in 1..=3 {
            let e = s.sequence(q);
            prop_assert!(e.a_to_c().is_intertwining() && e.c_to_b().is_intertwining());
        }
    }

    #[test]
    fn rank_nullity(a in small_matrix()) {
        let rank = a.rank();
        prop_assert_eq!(rank + kernel_basis(&a).dim(), a.cols());
        prop_assert_eq!(image_basis(&a).dim(), rank);
        prop_assert_eq!(a.transpose().rank(), rank);
    }

    #[test]
    fn comparison_lifts_are_homotopic(seed in any::<u64>(), m in 2usize..=3) {
        let (module, j, registry) = instance(seed, m, 3);
        let i = registry.resolution(&module, 3).unwrap().truncate(3);
        let id = ModuleMap::identity(&module);
        let f = lift_resolution_map(&id, &j, &i, &mut Choice::Canonical).unwrap();
        let g = lift_resolution_map(&id, &j, &i, &mut Choice::seeded(seed)).unwrap();
        let h = comparison_homotopy(&f, &g, &mut Choice::seeded(seed ^ 1)).unwrap();
        prop_assert!(is_homotopy(&f.underlying(), &g.underlying(), &h));
        let func = functor(m, seed);
        let (ff, fg) = (func.apply_chain_map(&f).unwrap(), func.apply_chain_map(&g).unwrap());
        prop_assert!(find_homotopy(&ff, &fg).unwrap().is_some());
        for n in 0..3 {
            prop_assert_eq!(
                induced_on_cohomology(&ff, n).unwrap(),
                induced_on_cohomology(&fg, n).unwrap()
            );
        }
    }

    #[test]
    fn snake_delta_ignores_chase_choices(seed in any::<u64>(), m in 2usize..=3) {
        let cfg = config(m, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ses = gen_random_ses(&cfg, &mut rng).unwrap();
        let registry = ResolutionRegistry::new();
        let ra = registry.resolution(ses.sub(), 3).unwrap();
        let rb = registry.resolution(ses.quotient(), 3).unwrap();
        let func = functor(m, seed);
        let hs = horseshoe(&ses, &ra, &rb, &mut Choice::Canonical).unwrap();
        let fs = func.apply_ses(&hs.ses).unwrap();
        for p in 0..=1 {
            let a = snake_delta_matrix(&fs, p, &mut Choice::Canonical).unwrap();
            let b = snake_delta_matrix(&fs, p, &mut Choice::seeded(seed.wrapping_add(p as u64))).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn functor_is_left_exact(seed in any::<u64>(), m in 2usize..=4) {
        let cfg = config(m, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ses = gen_random_ses(&cfg, &mut rng).unwrap();
        let j = rng.gen_range(1..=m);
        prop_assert!(FunctorSpec::new(LambdaModule::cyclic(m, j)).check_left_exactness(&ses).unwrap());
    }

    #[test]
    fn higher_derived_functors_vanish_on_injectives(seed in any::<u64>(), m in 2usize..=3, rank in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // A free module written in a non-standard basis.
        let g = random_free_automorphism(m, rank, &mut rng);
        let p = &g * &Matrix::from_fn(rank * m, rank * m, |i, j| {
            if i == j { Rational::one() } else if j == i + 1 { Rational::from_int(rng.gen_range(-1..=1)) } else { Rational::zero() }
        });
        let x = &p * &(LambdaModule::free(m, rank).action() * &p.inverse().unwrap());
        let module = LambdaModule::new(m, x).unwrap();
        let engine = DerivedEngine::new(functor(m, seed));
        prop_assert!(engine.is_acyclic(&module, 3).unwrap());
        let values = engine.derived_functor(&module, 3).unwrap();
        prop_assert!(values[1..].iter().all(|v| v.dim() == 0));
    }

    #[test]
    fn registry_is_deterministic(seed in any::<u64>(), m in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let module = gen_module_of_dim(m, rng.gen_range(1..=8), &mut rng);
        let a = ResolutionRegistry::new().resolution(&module, 3).unwrap();
        let b = ResolutionRegistry::new().resolution(&module, 5).unwrap();
        prop_assert_eq!(&*a, &b.truncate(3));
        prop_assert!(a.is_degreewise_injective() && a.is_exact());
    }

    #[test]
    fn isomorphisms_ignore_lift_and_chase_choices(seed in any::<u64>(), m in 2usize..=3, n in 1usize..=3) {
        let (_, j, registry) = instance(seed, m, n + 1);
        let engine = DerivedEngine::with_registry(functor(m, seed), std::sync::Arc::new(registry));
        let c = engine.canonical_iso(&j, n).unwrap();
        prop_assert!(c.is_invertible());
        prop_assert_eq!(&c, &engine.canonical_iso_with(&j, n, &mut Choice::seeded(seed)).unwrap());
        let d = engine.dimension_shift_iso(&j, n).unwrap();
        prop_assert!(d.is_invertible());
        prop_assert_eq!(&d, &engine.dimension_shift_iso_with(&j, n, &mut Choice::seeded(seed)).unwrap());
        prop_assert_eq!(d, c.scale(&Rational::from_int(sign_factor(n) as i64)));
    }

    #[test]
    fn sign_factor_has_period_four(n in 1usize..100_000) {
        prop_assert_eq!(sign_factor(n + 4), sign_factor(n));
        let exponent = (n as u64) * (n as u64 + 1) / 2;
        prop_assert_eq!(sign_factor(n), if exponent.is_multiple_of(2) { 1 } else { -1 });
    }

    #[test]
    fn resolution_json_round_trip(seed in any::<u64>(), m in 2usize..=3) {
        let (_, j, _) = instance(seed, m, 2);
        let text = serde_json::to_string(&j).unwrap();
        let back: Resolution = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, j);
    }
}
