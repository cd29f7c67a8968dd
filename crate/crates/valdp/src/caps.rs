//! Process-wide resource caps, overridable through the environment.
//!
//! `VALDP_TABLE_CAP` bounds dense valuation tables (entries),
//! `VALDP_SOLUTION_CAP` bounds extracted solution sets (tuples), and
//! `VALDP_ORACLE_CAP` bounds brute-force enumeration (tuples). Each is
//! read once per process.

use std::sync::OnceLock;

pub const DEFAULT_TABLE_CAP: usize = 1 << 20;
pub const DEFAULT_SOLUTION_CAP: usize = 1_000_000;
pub const DEFAULT_ORACLE_CAP: usize = 1_000_000;

fn env_usize(name: &str, default: usize) -> usize {
    std::env::var(name)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(default)
}

/// Maximum entries a dense valuation table may hold.
pub fn table_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| env_usize("VALDP_TABLE_CAP", DEFAULT_TABLE_CAP))
}

/// Default maximum tuples in an extracted solution set.
pub fn solution_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| env_usize("VALDP_SOLUTION_CAP", DEFAULT_SOLUTION_CAP))
}

/// Maximum tuples the brute-force oracle may enumerate.
pub fn oracle_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| env_usize("VALDP_ORACLE_CAP", DEFAULT_ORACLE_CAP))
}
