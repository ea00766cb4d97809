//! Modules over k[x]/(x^m): hom spaces, canonical forms, injective hulls,
//! and the functor Hom(A, -).

use dimshift::category::{
    embed_into_injective, hom_space, is_injective, nilpotent_form, FunctorSpec, LambdaModule,
    SesModules,
};
use dimshift::linalg::Matrix;

fn main() -> dimshift::Result<()> {
    let m = 3;
    // x acts on a basis e0, e1, e2 by e0 -> e1 -> 0, e2 -> 0, written in a
    // scrambled basis.
    let p = Matrix::from_ints(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
    let form = LambdaModule::from_blocks(m, &[2, 1]);
    let x = &p * &(form.action() * &p.inverse().unwrap());
    let module = LambdaModule::new(m, x)?;

    println!("block lengths {:?}", nilpotent_form(&module)?.lengths());
    println!("injective: {}", is_injective(&module));

    let (hull, embedding) = embed_into_injective(&module)?;
    println!("embeds into a free module of dimension {}", hull.dim());
    println!("embedding is mono: {}", embedding.is_mono());

    for j in 1..=m {
        let a = LambdaModule::cyclic(m, j);
        println!("dim Hom(k[x]/x^{j}, M) = {}", hom_space(&a, &module)?.dim());
    }

    let socle = FunctorSpec::socle(m)?;
    let ses = SesModules::new(
        embedding.clone(),
        dimshift::category::cokernel_module(&embedding).1,
    )?;
    println!(
        "socle functor on 0 -> M -> I -> I/M -> 0: left exact {}, right exact {}",
        socle.check_left_exactness(&ses)?,
        socle.is_right_exact_on(&ses)?
    );
    Ok(())
}
