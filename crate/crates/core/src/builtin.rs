//! Small systems shipped with the crate.

use crate::power_sum::PowerSumSystem;

pub const PILLAI23_JSON: &str = include_str!("../data/pillai23.json");
pub const CANCEL_PAIR_JSON: &str = include_str!("../data/cancel_pair.json");

/// `x^(2n) − x^(3m)`: zero exactly on `2n = 3m`.
pub fn pillai23() -> PowerSumSystem {
    PowerSumSystem::from_json(PILLAI23_JSON).expect("bundled system is valid")
}

/// `(x² + 1)ⁿ − (x² − 1)ᵐ`: the leading terms cancel on the diagonal.
pub fn cancel_pair() -> PowerSumSystem {
    PowerSumSystem::from_json(CANCEL_PAIR_JSON).expect("bundled system is valid")
}

/// Name and system for every bundled example.
pub fn all() -> Vec<(&'static str, PowerSumSystem)> {
    vec![("pillai23", pillai23()), ("cancel_pair", cancel_pair())]
}
