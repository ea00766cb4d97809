//! Policy for picking among equally valid lifts.
//!
//! Every diagram-chase step and every extension against an injective has a
//! solution set that is an affine space. `Choice::Canonical` always returns
//! the particular solution with free variables set to zero; `Choice::Seeded`
//! adds a random element of the homogeneous solution space so that tests can
//! check independence of the final answer from those choices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Matrix, Subspace};
use crate::rational::Rational;

#[derive(Debug, Clone, Default)]
pub enum Choice {
    #[default]
    Canonical,
    Seeded(Box<ChaCha8Rng>),
}

impl Choice {
    pub fn seeded(seed: u64) -> Self {
        Choice::Seeded(Box::new(ChaCha8Rng::seed_from_u64(seed)))
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self, Choice::Canonical)
    }

    /// Adds a random combination of `kernel` columns to each column of
    /// `particular`.
    pub fn perturb(&mut self, particular: Matrix, kernel: &Subspace) -> Matrix {
        match self {
            Choice::Canonical => particular,
            Choice::Seeded(rng) => {
                if kernel.dim() == 0 {
                    return particular;
                }
                let coeffs = Matrix::from_fn(kernel.dim(), particular.cols(), |_, _| {
                    Rational::from_int(rng.gen_range(-2..=2))
                });
                &particular + &(kernel.basis() * &coeffs)
            }
        }
    }
}
