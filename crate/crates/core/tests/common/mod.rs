#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relolog::finrel::Instance;
use relolog::random::{random_expr, random_instance, random_presentation, ExprConfig};
use relolog::{Morphism, Presentation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random presentation (distributive when `seed` is odd), instance and expression.
pub fn triple(seed: u64, max_carrier: usize, depth: usize) -> (Presentation, Instance, Morphism) {
    let mut r = rng(seed);
    let pres = random_presentation(&mut r, seed % 2 == 1);
    let inst = random_instance(&mut r, &pres, max_carrier);
    let e = random_expr(&mut r, &pres, ExprConfig::new(depth));
    (pres, inst, e)
}
