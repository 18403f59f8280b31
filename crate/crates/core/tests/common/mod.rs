//! Fixtures shared by the integration tests: hand-decoded tilings with
//! known statistics, given by the step words of their lattice paths
//! (top-side paths first, then core paths).

#![allow(dead_code)]

use coredhex::tilings::{build_region, tiling_from_step_words, CoredHexagon, Region, Tiling};

pub fn tiling(h: CoredHexagon, words: &[&str]) -> (Region, Tiling) {
    let region = build_region(&h).unwrap();
    let t = tiling_from_step_words(&region, words).unwrap();
    t.validate(&region).unwrap();
    (region, t)
}

/// A tiling of `C_{5,3,1}(2)` with two lozenge edges on the reference ray.
pub const RAY_TILING: [&str; 7] = ["VVVHHH", "VVVHHH", "VHVVHH", "HHVHHH", "HHHHVH", "HH", "HH"];

/// A cyclically symmetric tiling of `C_3(2)` with `n₆ = 3`.
pub const N6_TILING: [&str; 5] = ["VVVVHVHH", "VVVHVVHH", "HVHVHHHV", "VHH", "HVH"];

