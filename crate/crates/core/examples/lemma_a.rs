//! The square relating connecting maps of an arbitrary horseshoe to the
//! derived connecting maps, and its independence of the horseshoe choice.

use dimshift::category::FunctorSpec;
use dimshift::choice::Choice;
use dimshift::derived::DerivedEngine;
use dimshift::harness::{gen_random_ses, gen_test_resolution, GeneratorConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dimshift::Result<()> {
    let cfg = GeneratorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let engine = DerivedEngine::new(FunctorSpec::socle(cfg.m)?);
    for trial in 0..5 {
        let ses = gen_random_ses(&cfg, &mut rng)?;
        let (ra, _) = gen_test_resolution(ses.sub(), &cfg, engine.registry(), 4, &mut rng)?;
        let (rb, _) = gen_test_resolution(ses.quotient(), &cfg, engine.registry(), 4, &mut rng)?;
        for i in 0..=2 {
            let r = engine.verify_lemma_a(&ses, &ra, &rb, i, &mut Choice::seeded(trial))?;
            println!(
                "dims ({}, {}, {}) i = {i}: commutes {}, same delta for another horseshoe {}",
                ses.sub().dim(),
                ses.middle().dim(),
                ses.quotient().dim(),
                r.commutes,
                r.choice_independent
            );
        }
    }
    Ok(())
}
