//! Step signs of the dimension shift read off the signed two-row
//! resolution of J^i.

use dimshift::category::{FunctorSpec, LambdaModule};
use dimshift::derived::{product_of_signs, sign_factor, DerivedEngine};

fn main() -> dimshift::Result<()> {
    let engine = DerivedEngine::new(FunctorSpec::socle(3)?);
    let module = LambdaModule::from_blocks(3, &[1, 2]);
    let j = engine.registry().resolution(&module, 7)?;
    for n in 1..=5 {
        let steps = (0..n)
            .map(|p| engine.verify_lemma_b(&j, n, p))
            .collect::<dimshift::Result<Vec<_>>>()?;
        let signs: Vec<String> = steps
            .iter()
            .map(|s| s.observed_sign.map_or("?".into(), |x| format!("{x:+}")))
            .collect();
        println!(
            "n = {n}: step signs {}  product {:+}  predicted {:+}",
            signs.join(" "),
            product_of_signs(&steps),
            sign_factor(n)
        );
    }
    Ok(())
}
