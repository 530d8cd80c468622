//! Resource caps shared by the group and orbit computations.

/// Orbit and group size cap used when none is given explicitly.
pub const DEFAULT_ORBIT_CAP: usize = 100_000;

/// Environment variable overriding [`DEFAULT_ORBIT_CAP`].
pub const ORBIT_CAP_ENV: &str = "WEYLOT_ORBIT_CAP";

/// The orbit cap, read from `WEYLOT_ORBIT_CAP` when it holds a positive integer.
pub fn orbit_cap() -> usize {
    std::env::var(ORBIT_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_ORBIT_CAP)
}
