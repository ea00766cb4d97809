//! M = k over k[x]/(x^2), F = Hom(k, -), the registry resolution.

use dimshift::category::{FunctorSpec, TruncatedAlgebra};
use dimshift::derived::{DerivedEngine, SignReport};

fn main() -> dimshift::Result<()> {
    let alg = TruncatedAlgebra::new(2)?;
    let engine = DerivedEngine::new(FunctorSpec::new(alg.simple()));
    let k = alg.simple();
    let j = engine.chosen_resolution(&k, 6)?;
    let dims: Vec<usize> = engine
        .derived_functor(&k, 6)?
        .iter()
        .map(|v| v.dim())
        .collect();
    println!("dim R^n F(k), n = 0..6: {dims:?}\n");
    let reports: Vec<SignReport> = (1..=6).map(|n| engine.verify_sign_lemma(&j, n)).collect();
    print!("{}", SignReport::to_markdown(&reports));
    Ok(())
}
