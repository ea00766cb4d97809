//! Registry resolutions, splitting into short exact sequences of cycles,
//! padding, and the horseshoe construction.

use dimshift::category::LambdaModule;
use dimshift::choice::Choice;
use dimshift::resolution::{horseshoe, pad_resolution, split_resolution, Pad, ResolutionRegistry};

fn main() -> dimshift::Result<()> {
    let registry = ResolutionRegistry::new();
    let module = LambdaModule::from_blocks(3, &[1, 2, 2]);
    let j = registry.resolution(&module, 4)?;
    println!("degree dims {:?}", j.complex().dims());

    let split = split_resolution(&j, 3)?;
    let cycle_dims: Vec<usize> = split.cycles.iter().map(|z| z.dim()).collect();
    println!(
        "cycle dims {cycle_dims:?}, reconstructs: {}",
        split.reconstructs(&j)
    );

    let padded = pad_resolution(&j, &[Pad { degree: 1, rank: 2 }])?;
    println!(
        "padded dims {:?}, exact {}",
        padded.complex().dims(),
        padded.is_exact()
    );

    let e = split.sequence(1);
    let ra = registry.resolution(e.sub(), 3)?;
    let rb = registry.resolution(e.quotient(), 3)?;
    let hs = horseshoe(e, &ra, &rb, &mut Choice::Canonical)?;
    println!(
        "horseshoe over Z0 -> J0 -> Z1: dims {:?}, exact {}, injective {}",
        hs.resolution.complex().dims(),
        hs.resolution.is_exact(),
        hs.resolution.is_degreewise_injective()
    );
    println!(
        "{}",
        serde_json::to_string(&*registry.resolution(&LambdaModule::cyclic(2, 1), 2)?)?
    );
    Ok(())
}
