//! Derivation of independent seeds from one master seed.

pub const STREAM_TRAIN_MAP: u64 = 1;
pub const STREAM_TRAIN_AGENT: u64 = 2;
pub const STREAM_EVAL_MAP: u64 = 3;
pub const STREAM_EVAL_AGENT: u64 = 4;
pub const STREAM_BCM_PAIR: u64 = 5;
pub const STREAM_RUN: u64 = 6;

/// splitmix64 finaliser.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed number `index` of stream `stream` under `master`.
pub fn sub_seed(master: u64, stream: u64, index: u64) -> u64 {
    mix(mix(mix(master) ^ stream) ^ index)
}
