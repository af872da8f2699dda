//! Seeded corpora: the pinned algebras followed by random tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use refinery_core::algebra::table_len;
use refinery_core::{catalog, FiniteAlgebra, Operation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    /// Random algebras after the pinned set.
    pub count: usize,
    pub max_size: usize,
    pub max_ops: usize,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            count: 500,
            max_size: 6,
            max_ops: 2,
            seed: 0,
        }
    }
}

const SYMBOLS: [&str; 4] = ["f", "g", "h", "k"];

/// Size uniform in `2..=max_size`, between 1 and `max_ops` operations with
/// arity uniform in `0..=2`, entries uniform.
pub fn random_algebra<R: Rng + ?Sized>(
    rng: &mut R,
    name: &str,
    max_size: usize,
    max_ops: usize,
) -> FiniteAlgebra {
    let n = rng.random_range(2..=max_size.max(2));
    let ops = rng.random_range(1..=max_ops.clamp(1, SYMBOLS.len()));
    let operations = SYMBOLS[..ops]
        .iter()
        .map(|s| {
            let arity = rng.random_range(0..=2);
            let table = (0..table_len(n, arity))
                .map(|_| rng.random_range(0..n))
                .collect();
            Operation::new(*s, arity, table)
        })
        .collect();
    FiniteAlgebra::new(name, n, operations).expect("random tables are in range")
}

/// The pinned set first, then `count` random algebras from a ChaCha8
/// stream seeded with `seed`.
pub fn generate_corpus(config: &CorpusConfig) -> impl Iterator<Item = FiniteAlgebra> {
    let cfg = *config;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    catalog::pinned()
        .into_iter()
        .chain((0..cfg.count).map(move |i| {
            random_algebra(
                &mut rng,
                &format!("random-{}-{i}", cfg.seed),
                cfg.max_size,
                cfg.max_ops,
            )
        }))
}
