use crate::engine::GradientBackend;
use crate::field::PrimeField;
use crate::seed::{derive_seed, Substitution};

/// Everything that determines the randomness and arithmetic of a run.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub field: PrimeField,
    pub seed: u64,
    pub backend: GradientBackend,
    /// Fresh-seed attempts after a probabilistic failure.
    pub retries: usize,
}

impl Default for Params {
    fn default() -> Self {
        Self::new(0)
    }
}

impl Params {
    pub fn new(seed: u64) -> Self {
        Self { field: PrimeField::mersenne61(), seed, backend: GradientBackend::default(), retries: 5 }
    }

    pub fn with_field(mut self, field: PrimeField) -> Self {
        self.field = field;
        self
    }

    pub fn with_backend(mut self, backend: GradientBackend) -> Self {
        self.backend = backend;
        self
    }

    /// Substitution for the named sub-computation.
    pub fn sigma(&self, tag: &str) -> Substitution {
        Substitution::new(self.field, derive_seed(self.seed, tag))
    }

    /// Same configuration, seed for retry number `attempt` (0 = unchanged).
    pub fn attempt(&self, attempt: usize) -> Params {
        let mut p = *self;
        if attempt > 0 {
            p.seed = derive_seed(self.seed, &format!("retry-{attempt}"));
        }
        p
    }

    /// Union bound over `tests` zero tests of polynomials of total degree at
    /// most `degree`.
    pub fn error_bound(&self, tests: usize, degree: usize) -> f64 {
        (tests as f64 * degree as f64 / self.field.modulus() as f64).min(1.0)
    }
}
