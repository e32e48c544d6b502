//! Seeded randomness. Every sampled panel (random lines, points, conics) is
//! drawn from ChaCha8 seeded with the run seed, so results are reproducible
//! across platforms and releases of this crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Prng = ChaCha8Rng;

/// Named streams keep unrelated panels independent of each other: drawing
/// more lines never shifts the points used elsewhere.
pub fn stream(seed: u64, name: &str) -> Prng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h.rotate_left(17))
}

pub fn int_in(rng: &mut Prng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}

pub fn triple(rng: &mut Prng, bound: i64) -> [i64; 3] {
    loop {
        let v = [
            int_in(rng, -bound, bound),
            int_in(rng, -bound, bound),
            int_in(rng, -bound, bound),
        ];
        if v != [0, 0, 0] {
            return v;
        }
    }
}
