//! Crate-internal helpers.

/// SplitMix64 step: cheap, well-mixed 64-bit hash used to derive independent
/// RNG seeds from structured inputs (subset indices, trial coordinates).
pub(crate) fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `|a - b|` within `rel` of the larger magnitude, with a small absolute
/// floor so values at zero compare sanely.
pub(crate) fn close(a: f64, b: f64, rel: f64) -> bool {
    let diff = (a - b).abs();
    diff <= 1e-12 + rel * a.abs().max(b.abs())
}
