//! Partitions of the physical qudits into parts `Q_1, ..., Q_N`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition has no parts")]
    Empty,
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("qudit {qudit} is out of range for {n} qudits")]
    OutOfRange { qudit: usize, n: usize },
    #[error("qudit {0} appears in more than one part")]
    Duplicate(usize),
    #[error("qudit {0} is not covered by any part")]
    Uncovered(usize),
}

/// Disjoint, non-empty parts covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<Vec<usize>>, n: usize) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        let mut part_of = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(parts.len());
        for (i, part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart(i));
            }
            for &q in &part {
                if q >= n {
                    return Err(PartitionError::OutOfRange { qudit: q, n });
                }
                if part_of[q] != usize::MAX {
                    return Err(PartitionError::Duplicate(q));
                }
                part_of[q] = i;
            }
            let mut part = part;
            part.sort_unstable();
            sorted.push(part);
        }
        if let Some(q) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(PartitionError::Uncovered(q));
        }
        Ok(Partition {
            parts: sorted,
            part_of,
        })
    }

    /// `Q_i = {i}`.
    pub fn single_qudits(n: usize) -> Self {
        Partition {
            parts: (0..n).map(|q| vec![q]).collect(),
            part_of: (0..n).collect(),
        }
    }

    #[inline]
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    #[inline]
    pub fn num_qudits(&self) -> usize {
        self.part_of.len()
    }

    #[inline]
    pub fn part_of(&self, qudit: usize) -> usize {
        self.part_of[qudit]
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn is_single_qudit(&self) -> bool {
        self.parts.iter().enumerate().all(|(i, p)| p == &[i])
    }

    /// All qudits belonging to the given parts, ascending.
    pub fn qudits_of(&self, parts: &[usize]) -> Vec<usize> {
        let mut qs: Vec<usize> = parts
            .iter()
            .flat_map(|&i| self.parts[i].iter().copied())
            .collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }
}

/// `0 1 | 2 3 | 4`
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for (j, q) in part.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{q}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates() {
        assert!(Partition::new(vec![vec![0, 1], vec![2]], 3).is_ok());
        assert_eq!(
            Partition::new(vec![vec![0, 1], vec![1, 2]], 3),
            Err(PartitionError::Duplicate(1))
        );
        assert_eq!(
            Partition::new(vec![vec![0]], 2),
            Err(PartitionError::Uncovered(1))
        );
        assert_eq!(
            Partition::new(vec![vec![0, 1], vec![]], 2),
            Err(PartitionError::EmptyPart(1))
        );
        assert_eq!(
            Partition::new(vec![vec![0, 5]], 2),
            Err(PartitionError::OutOfRange { qudit: 5, n: 2 })
        );
    }

    #[test]
    fn display_and_lookup() {
        let p = Partition::new(vec![vec![3, 2], vec![0, 1]], 4).unwrap();
        assert_eq!(p.to_string(), "2 3 | 0 1");
        assert_eq!(p.part_of(0), 1);
        assert_eq!(p.qudits_of(&[1, 0]), vec![0, 1, 2, 3]);
        assert!(Partition::single_qudits(3).is_single_qudit());
        assert!(!p.is_single_qudit());
    }
}
