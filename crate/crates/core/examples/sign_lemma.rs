//! d^n against c^n for a random module and a padded, re-based resolution.

use dimshift::category::FunctorSpec;
use dimshift::derived::{compact, DerivedEngine};
use dimshift::harness::{gen_random_module, gen_test_resolution, GeneratorConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dimshift::Result<()> {
    let cfg = GeneratorConfig {
        m: 3,
        max_dim: 7,
        ..GeneratorConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let module = gen_random_module(&cfg, &mut rng);
    let engine = DerivedEngine::new(FunctorSpec::socle(cfg.m)?);
    let (j, pads) = gen_test_resolution(&module, &cfg, engine.registry(), 5, &mut rng)?;
    println!(
        "module of dimension {}, {} pads, degree dims {:?}",
        module.dim(),
        pads.len(),
        j.complex().dims()
    );
    for n in 1..=4 {
        let r = engine.verify_sign_lemma(&j, n);
        println!(
            "n = {n}: sign {:+}  c = {}  d = {}  {:?}",
            r.sign,
            compact(&r.c),
            compact(&r.d),
            r.verdict
        );
    }
    Ok(())
}
