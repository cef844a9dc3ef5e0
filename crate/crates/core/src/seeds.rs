//! Deterministic seed derivation shared by the harness and the generator.

/// SplitMix64 step; scrambles a seed into an independent stream key.
pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mix a base seed with two coordinates (e.g. class and sample index).
pub(crate) fn mix(seed: u64, a: u64, b: u64) -> u64 {
    splitmix64(seed ^ splitmix64(a.wrapping_shl(32) ^ b ^ 0x51_7c_c1_b7_27_22_0a_95))
}
