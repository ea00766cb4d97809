//! Seeded instance generation for the verification suites.

mod suites;

pub use suites::{
    demo, lemma_a_trials, lemma_b_trials, run_lemma_suite, run_sign_suite, LemmaATrial,
    LemmaBTrial, RunReport, SignTrial, SuiteKind,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::{cokernel_module, image_module, LambdaModule, ModuleMap, SesModules};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::resolution::{
    pad_resolution, transport_resolution, Pad, Resolution, ResolutionRegistry,
};

/// Largest entry size, in bits, accepted in generated modules and
/// resolutions before regenerating.
pub const ENTRY_BIT_CAP: u64 = 64;
const MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub m: usize,
    pub max_dim: usize,
    pub max_padding: usize,
    pub horizon: usize,
    pub trials: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            m: 2,
            max_dim: 8,
            max_padding: 2,
            horizon: 4,
            trials: 50,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidModule(format!(
                "m must be at least 2, got {}",
                self.m
            )));
        }
        if self.horizon < 2 {
            return Err(Error::InvalidComplex(format!(
                "horizon must be at least 2, got {}",
                self.horizon
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidComplex("trials must be at least 1".into()));
        }
        if self.max_dim == 0 {
            return Err(Error::InvalidModule("max_dim must be at least 1".into()));
        }
        Ok(())
    }

    /// One seed per trial, drawn in order from the master seed.
    pub fn trial_seeds(&self) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.trials).map(|_| rng.gen()).collect()
    }
}

fn small_int(rng: &mut impl Rng, range: std::ops::RangeInclusive<i64>) -> Rational {
    Rational::from_int(rng.gen_range(range))
}

/// Lengths of Jordan blocks summing to `dim`, each at most `m`.
pub fn random_partition(rng: &mut impl Rng, dim: usize, m: usize) -> Vec<usize> {
    let mut lengths = Vec::new();
    let mut left = dim;
    while left > 0 {
        let len = rng.gen_range(1..=left.min(m));
        lengths.push(len);
        left -= len;
    }
    lengths
}

/// An invertible matrix with entries in `-2..=2`, by rejection.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let p = Matrix::from_fn(n, n, |_, _| small_int(rng, -2..=2));
        if p.is_invertible() {
            return p;
        }
    }
}

/// A module of dimension at most `max_dim`: a random nilpotent block form
/// conjugated by a random invertible matrix.
pub fn gen_random_module(cfg: &GeneratorConfig, rng: &mut impl Rng) -> LambdaModule {
    gen_module_of_dim(cfg.m, rng.gen_range(1..=cfg.max_dim), rng)
}

pub fn gen_module_of_dim(m: usize, dim: usize, rng: &mut impl Rng) -> LambdaModule {
    let form = LambdaModule::from_blocks(m, &random_partition(rng, dim, m));
    for _ in 0..MAX_ATTEMPTS {
        let p = random_invertible(rng, dim);
        let inv = p.inverse().expect("checked invertible");
        let x = &p * &(form.action() * &inv);
        if x.max_bit_size() <= ENTRY_BIT_CAP {
            return LambdaModule::new(m, x).expect("conjugate of a nilpotent block form");
        }
    }
    form
}

/// A `Λ`-automorphism of the standard free module `Λ^rank`: a product of
/// elementary block operations with polynomial entries and unit scalings.
pub fn random_free_automorphism(m: usize, rank: usize, rng: &mut impl Rng) -> Matrix {
    let shift = LambdaModule::free(m, 1).action().clone();
    let poly = |rng: &mut ChaCha8Rng, unit: bool| -> Matrix {
        let mut acc = Matrix::zeros(m, m);
        let mut power = Matrix::identity(m);
        for j in 0..m {
            let c = if j == 0 && unit {
                Rational::from_int([1, -1, 2][rng.gen_range(0..3)])
            } else {
                small_int(rng, -1..=1)
            };
            acc = &acc + &power.scale(&c);
            power = &shift * &power;
        }
        acc
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    let mut g = Matrix::identity(rank * m);
    for b in 0..rank {
        let mut e = Matrix::identity(rank * m);
        e.set_block(b * m, b * m, &poly(&mut local, true));
        g = &e * &g;
    }
    if rank > 1 {
        for _ in 0..rank {
            let a = local.gen_range(0..rank);
            let b = (a + local.gen_range(1..rank)) % rank;
            let mut e = Matrix::identity(rank * m);
            e.set_block(a * m, b * m, &poly(&mut local, false));
            g = &e * &g;
        }
    }
    g
}

/// The registry resolution of `module` with contractible injective
/// summands added at random degrees.
pub fn gen_padded_resolution(
    module: &LambdaModule,
    cfg: &GeneratorConfig,
    registry: &ResolutionRegistry,
    horizon: usize,
    rng: &mut impl Rng,
) -> Result<(Resolution, Vec<Pad>)> {
    let base = registry.resolution(module, horizon)?.truncate(horizon);
    let count = rng.gen_range(0..=cfg.max_padding);
    let pads: Vec<Pad> = (0..count)
        .map(|_| Pad {
            degree: rng.gen_range(0..horizon),
            rank: rng.gen_range(1..=2),
        })
        .collect();
    Ok((pad_resolution(&base, &pads)?, pads))
}

/// A padded resolution whose objects are then re-based by random
/// automorphisms, so that comparison maps to the registry resolution are
/// far from identities.
pub fn gen_test_resolution(
    module: &LambdaModule,
    cfg: &GeneratorConfig,
    registry: &ResolutionRegistry,
    horizon: usize,
    rng: &mut impl Rng,
) -> Result<(Resolution, Vec<Pad>)> {
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        let (padded, pads) = gen_padded_resolution(module, cfg, registry, horizon, rng)?;
        let autos = padded
            .complex()
            .objects()
            .iter()
            .map(|o| {
                let rank = o.standard_free_rank().ok_or_else(|| {
                    Error::ConstructionFailure("resolution object is not standard free".into())
                })?;
                ModuleMap::new(
                    o.clone(),
                    o.clone(),
                    random_free_automorphism(o.order(), rank, rng),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let twisted = transport_resolution(&padded, &autos)?;
        let size = twisted
            .complex()
            .differentials()
            .iter()
            .map(|d| d.matrix().max_bit_size())
            .chain(std::iter::once(
                twisted.augmentation().matrix().max_bit_size(),
            ))
            .max()
            .unwrap_or(0);
        if size <= ENTRY_BIT_CAP {
            return Ok((twisted, pads));
        }
        last = Some((padded, pads));
    }
    Ok(last.expect("at least one attempt"))
}

/// `0 -> A -> C -> C/A -> 0` with `C` random and `A` generated by one or
/// two random vectors.
pub fn gen_random_ses(cfg: &GeneratorConfig, rng: &mut impl Rng) -> Result<SesModules> {
    let c = gen_random_module(cfg, rng);
    let m = c.order();
    let gens = rng.gen_range(1..=2);
    let mut columns = Vec::with_capacity(gens * m);
    for _ in 0..gens {
        let mut v = Matrix::from_fn(c.dim(), 1, |_, _| small_int(rng, -2..=2));
        for _ in 0..m {
            columns.push(v.clone());
            v = c.action() * &v;
        }
    }
    let from_free = ModuleMap::new(
        LambdaModule::free(m, gens),
        c.clone(),
        Matrix::from_columns(c.dim(), &columns),
    )?;
    let (_, inclusion) = image_module(&from_free);
    let (_, projection) = cokernel_module(&inclusion);
    SesModules::new(inclusion, projection)
}
