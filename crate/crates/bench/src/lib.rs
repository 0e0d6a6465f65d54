//! Fixtures shared by the benchmarks.

use egal_core::{Domain, Profile, ThreeCnf};

/// Deterministic profile of `n` judgments drawn from a free domain of width `m`.
pub fn spread_profile(m: usize, n: usize) -> Profile {
    let d = Domain::free(m, m).expect("width within cap");
    let step = (d.len() / n.max(1)).max(1) | 1;
    let js = (0..n).map(|k| d.members()[(k * step + k / 3) % d.len()]);
    Profile::new(js).expect("nonempty profile")
}

/// A chain of overlapping clauses over `n` variables.
pub fn chain_formula(n: usize) -> ThreeCnf {
    let clauses = (0..n.saturating_sub(2))
        .map(|k| {
            let v = k as i32 + 1;
            [v, -(v + 1), v + 2]
        })
        .collect();
    ThreeCnf::new(n, clauses).expect("well-formed clauses")
}
