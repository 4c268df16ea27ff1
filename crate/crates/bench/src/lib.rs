//! Seeded workloads shared by the benchmarks.

use tistar::catalog::{random_cocycle, random_modefield, FieldSpec};
use tistar::{Cocycle, ModeField};

/// A degree-2 random cocycle in `m` dimensions and `count` fields of
/// `modes` modes each.
pub fn workload(m: usize, modes: usize, count: usize, seed: u64) -> (Cocycle, Vec<ModeField>) {
    let a = random_cocycle(m, seed, 2, seed).expect("degree 2 is within the cap");
    let spec = FieldSpec::new(m, modes).with_box(1, 4).with_zero_mode();
    let fields = (0..count as u64)
        .map(|k| random_modefield(&spec, seed + k).expect("box holds the modes"))
        .collect();
    (a.into(), fields)
}
