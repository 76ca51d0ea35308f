//! Counter-based randomness: every uniform is a pure function of the seed, a
//! role tag and the ids it belongs to.

pub const TAG_POISSON: u64 = 0x504f_4953;
pub const TAG_MARK: u64 = 0x4d41_524b;
pub const TAG_PAIR: u64 = 0x5041_4952;
pub const TAG_RADIUS: u64 = 0x5241_4449;
pub const TAG_FOREST: u64 = 0x464f_5245;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn mix64(seed: u64, tag: u64, a: u64, b: u64) -> u64 {
    let mut h = splitmix(seed ^ 0x6a09_e667_f3bc_c908);
    h = splitmix(h ^ tag);
    h = splitmix(h ^ a);
    splitmix(h ^ b.rotate_left(17))
}

/// Uniform on `[0, 1)` with 53 random bits.
pub fn uniform(seed: u64, tag: u64, a: u64, b: u64) -> f64 {
    (mix64(seed, tag, a, b) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
