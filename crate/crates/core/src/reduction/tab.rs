use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::error::{Error, Result};
use crate::strings::{Str, Symbol};

/// Rejection-sampling budget of [`gen_tab`].
pub const TAB_ATTEMPTS: usize = 1000;

/// True iff no length-`k` substring of `s` occurs twice. Strings shorter
/// than `k` have no windows and pass.
pub fn verify_distinct_substrings(s: &[Symbol], k: usize) -> bool {
    assert!(k >= 1, "window length must be positive");
    if s.len() < k {
        return true;
    }
    let mut seen = HashSet::with_capacity(s.len() - k + 1);
    s.windows(k).all(|w| seen.insert(w))
}

/// Whether some binary string of this length has all `k`-windows distinct,
/// i.e. the window count does not exceed `2^k`.
pub fn tab_feasible(length: usize, k: usize) -> bool {
    let windows = (length + 1).saturating_sub(k) as u128;
    k >= 1 && (k >= 127 || windows <= 1u128 << k)
}

/// A uniformly random binary string with pairwise distinct `k`-windows,
/// drawn by rejection sampling from a xoshiro256** stream seeded by `seed`.
pub fn gen_tab(length: usize, k: usize, seed: u64) -> Result<Str> {
    if k == 0 {
        return Err(Error::ImpossibleParameters("window length must be at least 1".into()));
    }
    if !tab_feasible(length, k) {
        return Err(Error::ImpossibleParameters(format!(
            "{} windows of length {k} cannot be pairwise distinct over a binary alphabet",
            length + 1 - k
        )));
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    for _ in 0..TAB_ATTEMPTS {
        let s: Str = (0..length).map(|_| Symbol(u8::from(rng.random::<bool>()))).collect();
        if verify_distinct_substrings(&s, k) {
            return Ok(s);
        }
    }
    Err(Error::RetriesExhausted(TAB_ATTEMPTS))
}
