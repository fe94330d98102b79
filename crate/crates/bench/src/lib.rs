//! Deterministic input generators shared by the benchmarks.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use sboxtab::{Field, Func};

pub fn random_lut(n: u32, seed: u64) -> Func {
    let field = Field::new(n, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table: Vec<u32> = (0..field.q()).map(|_| rng.gen_range(0..field.q())).collect();
    Func::from_lut(field, table).unwrap()
}

pub fn random_permutation(n: u32, seed: u64) -> Func {
    let field = Field::new(n, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table: Vec<u32> = (0..field.q()).collect();
    table.shuffle(&mut rng);
    Func::from_lut(field, table).unwrap()
}
