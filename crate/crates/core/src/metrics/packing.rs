//! Maximum c-packing of support patterns.
//!
//! Coset elements with the same support are interchangeable for
//! c-disjointness, so the problem is stated over distinct support patterns
//! with multiplicities: choose `take[j] <= count[j]` maximizing `sum take`
//! such that every part is covered at most `c` times.

#[derive(Debug, Clone)]
pub(crate) struct PackingProblem {
    parts: usize,
    /// Part indices of each pattern; patterns sorted by ascending weight.
    supports: Vec<Vec<u16>>,
    counts: Vec<u64>,
    /// `suffix_inc[j * parts + i]`: copies of patterns `j..` that touch part `i`.
    suffix_inc: Vec<u64>,
    suffix_count: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Packing {
    pub total: u64,
    pub take: Vec<u64>,
}

#[derive(Debug, Clone)]
pub(crate) struct SearchOutcome {
    pub best: Packing,
    /// The search ran to completion, so `best` is optimal.
    pub exact: bool,
}

impl PackingProblem {
    /// `supports` must be non-empty and sorted by ascending length.
    pub fn new(parts: usize, supports: Vec<Vec<u16>>, counts: Vec<u64>) -> Self {
        debug_assert!(supports.windows(2).all(|w| w[0].len() <= w[1].len()));
        debug_assert!(supports.iter().all(|s| !s.is_empty()));
        let p = supports.len();
        let mut suffix_inc = vec![0u64; (p + 1) * parts];
        let mut suffix_count = vec![0u64; p + 1];
        for j in (0..p).rev() {
            let (head, tail) = suffix_inc.split_at_mut((j + 1) * parts);
            head[j * parts..].copy_from_slice(&tail[..parts]);
            for &i in &supports[j] {
                head[j * parts + i as usize] += counts[j];
            }
            suffix_count[j] = suffix_count[j + 1] + counts[j];
        }
        PackingProblem {
            parts,
            supports,
            counts,
            suffix_inc,
            suffix_count,
        }
    }

    fn weight(&self, j: usize) -> u64 {
        self.supports[j].len() as u64
    }

    fn room(&self, j: usize, usage: &[u64], c: u64) -> u64 {
        self.supports[j]
            .iter()
            .map(|&i| c - usage[i as usize])
            .min()
            .unwrap_or(0)
            .min(self.counts[j])
    }

    fn apply(&self, j: usize, usage: &mut [u64], x: u64) {
        for &i in &self.supports[j] {
            usage[i as usize] += x;
        }
    }

    fn remove(&self, j: usize, usage: &mut [u64], x: u64) {
        for &i in &self.supports[j] {
            usage[i as usize] -= x;
        }
    }

    /// Bound on how many more copies fit using patterns `j..`.
    fn remaining_bound(&self, j: usize, usage: &[u64], c: u64) -> u64 {
        if j == self.supports.len() {
            return 0;
        }
        let inc = &self.suffix_inc[j * self.parts..(j + 1) * self.parts];
        let capacity: u64 = usage
            .iter()
            .zip(inc)
            .map(|(&u, &avail)| (c - u).min(avail))
            .sum();
        (capacity / self.weight(j)).min(self.suffix_count[j])
    }

    /// Capacity bound: the `t` lightest elements must fit into
    /// `sum_i min(c, incidences_i)` part slots.
    pub fn capacity_upper(&self, c: u64) -> u64 {
        let inc = &self.suffix_inc[..self.parts];
        let mut capacity: u64 = inc.iter().map(|&a| a.min(c)).sum();
        let mut t = 0;
        for (s, &count) in self.supports.iter().zip(&self.counts) {
            let w = s.len() as u64;
            let fit = (capacity / w).min(count);
            t += fit;
            capacity -= fit * w;
            if fit < count {
                break;
            }
        }
        t
    }

    /// One copy of each fitting pattern per pass, lightest first, until a
    /// pass adds nothing.
    pub fn round_robin(&self, c: u64) -> Packing {
        let mut usage = vec![0u64; self.parts];
        let mut take = vec![0u64; self.supports.len()];
        let mut total = 0;
        loop {
            let mut added = false;
            for j in 0..self.supports.len() {
                if take[j] < self.counts[j] && self.room(j, &usage, c) > 0 {
                    self.apply(j, &mut usage, 1);
                    take[j] += 1;
                    total += 1;
                    added = true;
                }
            }
            if !added {
                return Packing { total, take };
            }
        }
    }

    /// As many copies as fit of each pattern in turn, lightest first.
    pub fn first_fit(&self, c: u64) -> Packing {
        let mut usage = vec![0u64; self.parts];
        let mut take = vec![0u64; self.supports.len()];
        let mut total = 0;
        for j in 0..self.supports.len() {
            let x = self.room(j, &usage, c);
            self.apply(j, &mut usage, x);
            take[j] = x;
            total += x;
        }
        Packing { total, take }
    }

    pub fn best_heuristic(&self, c: u64) -> Packing {
        let a = self.round_robin(c);
        let b = self.first_fit(c);
        if b.total > a.total {
            b
        } else {
            a
        }
    }

    /// Depth-first branch and bound over patterns, largest multiplicity
    /// first. Stops early once `best` reaches `target` (a known upper bound)
    /// or after `node_budget` nodes.
    pub fn branch_and_bound(&self, c: u64, incumbent: Packing, target: u64, node_budget: u64) -> SearchOutcome {
        let p = self.supports.len();
        let mut best = incumbent;
        let target = target.min(self.remaining_bound(0, &vec![0; self.parts], c));
        if best.total >= target {
            return SearchOutcome {
                best,
                exact: true,
            };
        }
        let mut take = vec![0u64; p];
        let mut usage = vec![0u64; self.parts];
        let mut total = 0u64;
        let mut j = 0usize;
        let mut nodes = 0u64;
        'search: loop {
            nodes += 1;
            if nodes > node_budget {
                return SearchOutcome {
                    best,
                    exact: false,
                };
            }
            if j == p {
                if total > best.total {
                    best = Packing {
                        total,
                        take: take.clone(),
                    };
                    if best.total >= target {
                        break 'search;
                    }
                }
            } else if total + self.remaining_bound(j, &usage, c) > best.total {
                let x = self.room(j, &usage, c);
                self.apply(j, &mut usage, x);
                take[j] = x;
                total += x;
                j += 1;
                continue 'search;
            }
            // backtrack to the deepest level that can still lower its choice
            loop {
                if j == 0 {
                    break 'search;
                }
                j -= 1;
                if take[j] > 0 {
                    take[j] -= 1;
                    self.remove(j, &mut usage, 1);
                    total -= 1;
                    j += 1;
                    continue 'search;
                }
            }
        }
        SearchOutcome {
            best,
            exact: true,
        }
    }

    /// Re-derives the per-part load of a packing and checks it.
    pub fn is_feasible(&self, packing: &Packing, c: u64) -> bool {
        let mut usage = vec![0u64; self.parts];
        for (j, &x) in packing.take.iter().enumerate() {
            if x > self.counts[j] {
                return false;
            }
            self.apply(j, &mut usage, x);
        }
        usage.iter().all(|&u| u <= c) && packing.take.iter().sum::<u64>() == packing.total
    }
}
