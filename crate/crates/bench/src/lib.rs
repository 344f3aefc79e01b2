//! Shared inputs for the benchmarks under `benches/`.

use stabdisj_core::families::{self, FamilyInstance};

/// Instances whose cosets are small enough to enumerate, smallest first.
pub fn enumerable_instances() -> Vec<FamilyInstance> {
    vec![
        families::four_two_two(),
        families::five_qubit(),
        families::reed_muller(2).expect("valid D"),
        families::surface_code(2).expect("valid l"),
        families::reed_muller(3).expect("valid D"),
    ]
}
