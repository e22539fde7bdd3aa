//! Seeded fixtures shared by the benchmarks.

use lamkit_core::{DynnikovCoords, PunctureCount, TriangleCoords};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` nonzero Dynnikov vectors on `D_n` with entries in `[-bound, bound]`.
pub fn dynnikov_batch(n: usize, count: usize, bound: i64, seed: u64) -> Vec<DynnikovCoords> {
    let n = PunctureCount::new(n).expect("n >= 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = (0..n.strips()).map(|_| rng.gen_range(-bound..=bound)).collect();
        let b = (0..n.strips()).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(d) = DynnikovCoords::new(n, a, b) {
            out.push(d);
        }
    }
    out
}

pub fn triangle_batch(n: usize, count: usize, bound: i64, seed: u64) -> Vec<TriangleCoords> {
    dynnikov_batch(n, count, bound, seed)
        .iter()
        .map(|d| d.to_triangle().expect("bounded entries do not overflow"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batches_are_deterministic_and_valid() {
        let a = triangle_batch(6, 50, 100, 1);
        assert_eq!(a, triangle_batch(6, 50, 100, 1));
        assert!(a.iter().all(|t| t.validate().is_ok()));
    }
}
