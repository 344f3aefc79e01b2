//! Coset elements grouped by their support pattern.

use std::collections::HashMap;

use crate::code::{CodeError, LogicalClass, StabilizerCode};
use crate::metrics::packing::PackingProblem;
use crate::partition::Partition;
use crate::pauli::PauliOperator;

/// Largest part count for which coset profiles are built.
pub(crate) const MAX_PROFILE_PARTS: usize = 128;

#[derive(Debug, Clone)]
pub(crate) struct Pattern {
    pub parts: Vec<u16>,
    /// Members sorted by their `(x, z)` vectors.
    pub members: Vec<PauliOperator>,
}

#[derive(Debug, Clone)]
pub(crate) struct CosetProfile {
    /// Ascending weight, then by first member.
    pub patterns: Vec<Pattern>,
}

fn part_mask(p: &PauliOperator, partition: &Partition) -> u128 {
    let mut mask = 0u128;
    for q in p.qudit_support() {
        mask |= 1u128 << partition.part_of(q);
    }
    mask
}

impl CosetProfile {
    pub fn build(
        code: &StabilizerCode,
        class: &LogicalClass,
        partition: &Partition,
        budget: u64,
    ) -> Result<Self, CodeError> {
        debug_assert!(partition.num_parts() <= MAX_PROFILE_PARTS);
        let mut groups: HashMap<u128, Vec<(Vec<u8>, PauliOperator)>> = HashMap::new();
        for p in code.enumerate_class(class, budget)? {
            let key = p.symplectic_vector();
            groups.entry(part_mask(&p, partition)).or_default().push((key, p));
        }
        let mut patterns: Vec<(u32, Vec<u8>, Pattern)> = groups
            .into_iter()
            .map(|(mask, mut members)| {
                members.sort_by(|a, b| a.0.cmp(&b.0));
                let parts: Vec<u16> = (0..128u16).filter(|&i| mask >> i & 1 == 1).collect();
                let first = members[0].0.clone();
                (
                    mask.count_ones(),
                    first,
                    Pattern {
                        parts,
                        members: members.into_iter().map(|m| m.1).collect(),
                    },
                )
            })
            .collect();
        patterns.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        Ok(CosetProfile {
            patterns: patterns.into_iter().map(|p| p.2).collect(),
        })
    }

    pub fn min_weight(&self) -> u64 {
        self.patterns[0].parts.len() as u64
    }

    pub fn lightest(&self) -> &PauliOperator {
        &self.patterns[0].members[0]
    }

    pub fn weight_histogram(&self) -> Vec<(u64, u64)> {
        let mut hist: Vec<(u64, u64)> = Vec::new();
        for p in &self.patterns {
            let w = p.parts.len() as u64;
            match hist.last_mut() {
                Some((lw, count)) if *lw == w => *count += p.members.len() as u64,
                _ => hist.push((w, p.members.len() as u64)),
            }
        }
        hist
    }

    pub fn packing_problem(&self, num_parts: usize) -> PackingProblem {
        PackingProblem::new(
            num_parts,
            self.patterns.iter().map(|p| p.parts.clone()).collect(),
            self.patterns.iter().map(|p| p.members.len() as u64).collect(),
        )
    }

    /// The concrete elements selected by a packing.
    pub fn members_of(&self, take: &[u64]) -> Vec<PauliOperator> {
        self.patterns
            .iter()
            .zip(take)
            .flat_map(|(p, &x)| p.members[..x as usize].iter().cloned())
            .collect()
    }
}
