//! Small shared helpers: stable hashing and seed derivation.

/// 64-bit FNV-1a hash.
///
/// Used wherever the crate needs a stable, platform-independent hash: stub
/// encoder unit ids, derived example ids, and per-piece RNG seeds. Hand-rolled
/// (rather than `std::hash`) so the value never changes across Rust versions.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf29ce484222325;
    const PRIME: u64 = 0x100000001b3;
    let mut h = OFFSET;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(PRIME);
    }
    h
}

/// Derives a sub-seed from a base seed and an index (fold number, epoch, ...).
///
/// A plain XOR of small integers would make neighbouring indices nearly
/// collide; mixing the index with the golden-ratio constant first spreads
/// them across the seed space while staying fully deterministic.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17)
}
