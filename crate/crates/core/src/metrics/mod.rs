//! Distances `d(G)`, `d_min`, `d_max`, c-disjointness `Delta_c(G)` and the
//! disjointness `Delta` of a code relative to a partition.
//!
//! Every disjointness value is reported as a certified interval of exact
//! rationals. Lower ends carry an explicit c-disjoint set whenever one was
//! found; upper ends name the inequality that produced them.

mod clean;
mod coset;
pub(crate) mod packing;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::code::{ClassOf, CodeError, LogicalClass, StabilizerCode, DEFAULT_BUDGET};
use crate::partition::Partition;
use crate::pauli::{PauliError, PauliOperator};

pub use clean::{clean, multiblock_scrub_bound, scrub, scrub_among, Scrubbed};
use coset::{CosetProfile, MAX_PROFILE_PARTS};
use packing::PackingProblem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("the code has no non-trivial logical classes")]
    NoLogicalClasses,
    #[error("the code has {0} logical classes, too many to analyse")]
    TooManyClasses(String),
    #[error("c = {c} is outside 1..={max}")]
    COutOfRange { c: u64, max: String },
    #[error("witness for class {class} at c = {c}: {reason}")]
    InvalidWitness {
        class: String,
        c: u64,
        reason: String,
    },
    #[error("declared distance {declared} of class {class} disagrees with the computed {computed}")]
    DeclaredRefuted {
        class: String,
        declared: u64,
        computed: u64,
    },
    #[error("disjointness certificate {0} is below 1")]
    InvalidCertificate(String),
    #[error("no c-disjoint set is available for class {class} at c = {c}")]
    NoWitness { class: String, c: u64 },
}

/// Knobs for the metric computations.
#[derive(Debug, Clone)]
pub struct MetricsConfig {
    /// Largest coset that is enumerated explicitly.
    pub budget: u64,
    /// Largest `c` included in the sweep.
    pub c_max: u64,
    /// Node limit for each branch-and-bound run.
    pub search_budget: u64,
    /// Use declared distances without enumerating cosets.
    pub trust_declared: bool,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig {
            budget: DEFAULT_BUDGET,
            c_max: 64,
            search_budget: 200_000,
            trust_declared: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DistanceSource {
    /// Minimum over an enumerated coset.
    Exhaustive,
    /// Declared by a family generator and not re-derived.
    Declared,
    /// Upper end from a local search; lower end trivial.
    Search,
}

impl DistanceSource {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceSource::Exhaustive => "exhaustive",
            DistanceSource::Declared => "declared",
            DistanceSource::Search => "search",
        }
    }
}

/// Bounds on a distance, in parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceInterval {
    pub lo: u64,
    pub hi: u64,
    pub source: DistanceSource,
    /// A representative of weight `hi`, when known.
    pub witness: Option<PauliOperator>,
}

impl DistanceInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi && self.source == DistanceSource::Exhaustive
    }
}

/// What established the upper end of a disjointness interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperReason {
    /// Branch and bound ran to completion.
    Search,
    /// The lightest elements cannot fit into the available part slots.
    Capacity,
    /// `Delta_c(G) <= m^(n-k) / c`.
    CosetSize,
    /// `Delta_c(G) <= d(G')` for an anticommuting class `G'`.
    Anticommuting,
    /// `Delta_c(G) * d(G) <= N`.
    PartsPerDistance,
    /// `Delta <= d_min`.
    MinDistance,
    /// `Delta <= N / d_max`.
    PartsOverMaxDistance,
    /// Maximum over a sweep covering every `c` up to the coset size.
    Sweep,
}

impl UpperReason {
    pub fn as_str(self) -> &'static str {
        match self {
            UpperReason::Search => "search",
            UpperReason::Capacity => "capacity",
            UpperReason::CosetSize => "coset-size",
            UpperReason::Anticommuting => "anticommuting-distance",
            UpperReason::PartsPerDistance => "parts-per-distance",
            UpperReason::MinDistance => "min-distance",
            UpperReason::PartsOverMaxDistance => "parts-over-max-distance",
            UpperReason::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A c-disjoint subset of the coset.
    DisjointSet { c: u64, members: Vec<PauliOperator> },
    /// `min_G Delta_c(G)` at this `c` attains the lower end.
    Sweep { c: u64 },
}

/// `lo <= value <= hi`, exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub lo_witness: Option<Witness>,
    pub hi_reason: UpperReason,
}

impl RationalInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// A caller-declared c-disjoint set, verified before use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointWitness {
    pub class: LogicalClass,
    pub c: u64,
    pub members: Vec<PauliOperator>,
}

impl DisjointWitness {
    /// Checks class membership, distinctness modulo phase and the per-part
    /// cap; returns the set size.
    pub fn verify(&self, code: &StabilizerCode, partition: &Partition) -> Result<u64, MetricsError> {
        let fail = |reason: String| MetricsError::InvalidWitness {
            class: self.class.to_string(),
            c: self.c,
            reason,
        };
        if self.c == 0 {
            return Err(fail("c must be at least 1".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut load = vec![0u64; partition.num_parts()];
        for p in &self.members {
            match code.class_of(p).map_err(|e| fail(e.to_string()))? {
                ClassOf::Logical(ref cl) if *cl == self.class => {}
                other => return Err(fail(format!("{p} is in {other:?}"))),
            }
            if !seen.insert(p.unphased()) {
                return Err(fail(format!("{p} is listed twice")));
            }
            for i in p.support(partition)? {
                load[i] += 1;
                if load[i] > self.c {
                    return Err(fail(format!("part {i} hosts more than {} members", self.c)));
                }
            }
        }
        Ok(self.members.len() as u64)
    }
}

/// Values a family generator declares for instances too large to enumerate.
#[derive(Debug, Clone, Default)]
pub struct DeclaredMetrics {
    pub distances: Vec<(LogicalClass, u64)>,
    pub witnesses: Vec<DisjointWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CEntry {
    pub c: u64,
    pub interval: RationalInterval,
}

#[derive(Debug, Clone)]
pub struct ClassMetrics {
    pub class: LogicalClass,
    pub distance: DistanceInterval,
    /// `(weight, count)` pairs when the coset was enumerated.
    pub weight_histogram: Option<Vec<(u64, u64)>>,
    pub disjointness: Vec<CEntry>,
}

impl ClassMetrics {
    pub fn at(&self, c: u64) -> Option<&RationalInterval> {
        self.disjointness.iter().find(|e| e.c == c).map(|e| &e.interval)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exactness {
    /// Every value was derived exhaustively or certified by matching bounds.
    Exhaustive,
    /// Values are pinned down only by trusting declared distances.
    WitnessBacked,
    /// Some gap between lower and upper bounds remains.
    Interval,
}

impl Exactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::Exhaustive => "exhaustive",
            Exactness::WitnessBacked => "witness-backed",
            Exactness::Interval => "interval",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MetricsReport {
    pub num_parts: usize,
    pub coset_size: Option<u128>,
    pub classes: Vec<ClassMetrics>,
    pub d_min: DistanceInterval,
    pub d_max: DistanceInterval,
    pub delta: RationalInterval,
    /// Smallest `c` attaining `delta.lo`.
    pub delta_c: u64,
    /// The `c` values of the sweep.
    pub c_values: Vec<u64>,
    pub exactness: Exactness,
}

impl MetricsReport {
    pub fn class(&self, class: &LogicalClass) -> Option<&ClassMetrics> {
        self.classes.iter().find(|c| &c.class == class)
    }

    /// Whether the code detects every error confined to one part.
    pub fn is_error_detecting(&self) -> Option<bool> {
        if self.d_min.lo > 1 {
            Some(true)
        } else if self.d_min.hi == 1 {
            Some(false)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

pub(crate) fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

struct ClassData {
    class: LogicalClass,
    distance: DistanceInterval,
    profile: Option<CosetProfile>,
    problem: Option<PackingProblem>,
    /// Smallest upper distance bound over anticommuting classes.
    anticommuting_hi: u64,
}

#[derive(Debug, Clone)]
struct Cell {
    lo_count: u64,
    lo_members: Option<Vec<PauliOperator>>,
    hi_count: u64,
    reason: UpperReason,
}

impl Cell {
    fn interval(&self, c: u64) -> RationalInterval {
        RationalInterval {
            lo: ratio(self.lo_count, c),
            hi: ratio(self.hi_count, c),
            lo_witness: self.lo_members.as_ref().map(|m| Witness::DisjointSet {
                c,
                members: m.clone(),
            }),
            hi_reason: self.reason,
        }
    }
}

struct Engine<'a> {
    code: &'a StabilizerCode,
    partition: &'a Partition,
    cfg: &'a MetricsConfig,
    num_parts: u64,
    /// Coset size clamped to `u64`.
    size: u64,
    classes: Vec<ClassData>,
    /// Best verified declared set per `(class index, c)`.
    witnesses: BTreeMap<(usize, u64), Vec<PauliOperator>>,
}

const MAX_CLASSES: u128 = 1 << 16;

fn hill_climb(code: &StabilizerCode, start: PauliOperator, partition: &Partition) -> PauliOperator {
    let m = code.dim().get() as u32;
    let mut best_w = start.weight(partition).expect("shape checked");
    let mut best = start;
    loop {
        let mut improved = false;
        for g in code.generators() {
            for t in 1..m {
                let cand = best.multiply(&g.pow(t)).expect("same shape").unphased();
                let w = cand.weight(partition).expect("shape checked");
                if w < best_w {
                    best_w = w;
                    best = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            return best;
        }
    }
}

impl<'a> Engine<'a> {
    fn new(
        code: &'a StabilizerCode,
        partition: &'a Partition,
        cfg: &'a MetricsConfig,
        declared: Option<&DeclaredMetrics>,
        only: Option<&LogicalClass>,
    ) -> Result<Self, MetricsError> {
        if partition.num_qudits() != code.num_qudits() {
            return Err(PauliError::PartitionSize {
                partition: partition.num_qudits(),
                operator: code.num_qudits(),
            }
            .into());
        }
        match code.num_classes() {
            Some(0) => return Err(MetricsError::NoLogicalClasses),
            Some(c) if c <= MAX_CLASSES => {}
            other => {
                return Err(MetricsError::TooManyClasses(
                    other.map_or_else(|| "more than 2^128".into(), |c| c.to_string()),
                ))
            }
        }
        let size = code.coset_size().map_or(u64::MAX, |s| s.min(u64::MAX as u128) as u64);
        let enumerable = size <= cfg.budget && partition.num_parts() <= MAX_PROFILE_PARTS;
        let all = code.logical_classes();
        let declared_d = |class: &LogicalClass| {
            declared.and_then(|d| d.distances.iter().find(|(c, _)| c == class).map(|(_, v)| *v))
        };

        let data: Vec<Result<(LogicalClass, DistanceInterval, Option<CosetProfile>), MetricsError>> = all
            .par_iter()
            .map(|class| {
                let dd = declared_d(class);
                let selected = only.is_none_or(|o| o == class);
                if enumerable && selected && !(cfg.trust_declared && dd.is_some()) {
                    let profile = CosetProfile::build(code, class, partition, cfg.budget)?;
                    let d = profile.min_weight();
                    if let Some(declared) = dd {
                        if declared != d {
                            return Err(MetricsError::DeclaredRefuted {
                                class: class.name(code.dim()),
                                declared,
                                computed: d,
                            });
                        }
                    }
                    let distance = DistanceInterval {
                        lo: d,
                        hi: d,
                        source: DistanceSource::Exhaustive,
                        witness: Some(profile.lightest().clone()),
                    };
                    return Ok((class.clone(), distance, Some(profile)));
                }
                let rep = hill_climb(code, code.logical_representative(class)?, partition);
                let w = rep.weight(partition)? as u64;
                let distance = match dd {
                    Some(d) if d <= w => DistanceInterval {
                        lo: d,
                        hi: d,
                        source: DistanceSource::Declared,
                        witness: (d == w).then_some(rep),
                    },
                    Some(d) => {
                        return Err(MetricsError::DeclaredRefuted {
                            class: class.name(code.dim()),
                            declared: d,
                            computed: w,
                        })
                    }
                    None => DistanceInterval {
                        lo: 1,
                        hi: w,
                        source: DistanceSource::Search,
                        witness: Some(rep),
                    },
                };
                Ok((class.clone(), distance, None))
            })
            .collect();
        let data = data.into_iter().collect::<Result<Vec<_>, _>>()?;

        let dim = code.dim();
        let classes: Vec<ClassData> = data
            .iter()
            .map(|(class, distance, profile)| {
                let anticommuting_hi = data
                    .iter()
                    .filter(|(other, _, _)| class.symplectic_with(other, dim) != 0)
                    .map(|(_, d, _)| d.hi)
                    .min()
                    .unwrap_or(u64::MAX);
                ClassData {
                    class: class.clone(),
                    distance: distance.clone(),
                    problem: profile.as_ref().map(|p| p.packing_problem(partition.num_parts())),
                    profile: profile.clone(),
                    anticommuting_hi,
                }
            })
            .collect();

        let mut engine = Engine {
            code,
            partition,
            cfg,
            num_parts: partition.num_parts() as u64,
            size,
            classes,
            witnesses: BTreeMap::new(),
        };
        if let Some(declared) = declared {
            for w in &declared.witnesses {
                engine.add_witness(w)?;
            }
        }
        Ok(engine)
    }

    fn add_witness(&mut self, w: &DisjointWitness) -> Result<(), MetricsError> {
        let size = w.verify(self.code, self.partition)?;
        let ci = self
            .classes
            .iter()
            .position(|d| d.class == w.class)
            .ok_or_else(|| MetricsError::InvalidWitness {
                class: w.class.to_string(),
                c: w.c,
                reason: "unknown class".into(),
            })?;
        let slot = self.witnesses.entry((ci, w.c)).or_default();
        if size as usize > slot.len() {
            *slot = w.members.iter().map(|p| p.unphased()).collect();
        }
        Ok(())
    }

    fn class_index(&self, class: &LogicalClass) -> Result<usize, MetricsError> {
        self.classes
            .iter()
            .position(|d| &d.class == class)
            .ok_or_else(|| CodeError::LabelLength {
                got: class.label().len(),
                expected: 2 * self.code.num_logical(),
            }.into())
    }

    fn c_limit(&self) -> u64 {
        self.size.min(self.cfg.c_max.max(1))
    }

    fn sweep_values(&self) -> Vec<u64> {
        let mut cs: Vec<u64> = (1..=self.c_limit()).collect();
        for &(_, c) in self.witnesses.keys() {
            if c <= self.size && !cs.contains(&c) {
                cs.push(c);
            }
        }
        cs.sort_unstable();
        cs
    }

    fn cell(&self, ci: usize, c: u64) -> Cell {
        let data = &self.classes[ci];
        let mut candidates = vec![
            (self.size, UpperReason::CosetSize),
            (
                c.saturating_mul(self.num_parts) / data.distance.lo.max(1),
                UpperReason::PartsPerDistance,
            ),
            (
                c.saturating_mul(data.anticommuting_hi),
                UpperReason::Anticommuting,
            ),
        ];
        let mut lo_count = c.min(self.size);
        let mut lo_members = None;
        if let (Some(problem), Some(profile)) = (&data.problem, &data.profile) {
            candidates.push((problem.capacity_upper(c), UpperReason::Capacity));
            let packing = problem.best_heuristic(c);
            debug_assert!(problem.is_feasible(&packing, c));
            if packing.total >= lo_count {
                lo_count = packing.total;
                lo_members = Some(profile.members_of(&packing.take));
            }
        }
        if let Some(members) = self.witnesses.get(&(ci, c)) {
            if members.len() as u64 > lo_count || lo_members.is_none() && members.len() as u64 >= lo_count {
                lo_count = members.len() as u64;
                lo_members = Some(members.clone());
            }
        }
        let (hi_count, reason) = candidates
            .into_iter()
            .fold((u64::MAX, UpperReason::CosetSize), |best, cand| {
                if cand.0 < best.0 {
                    cand
                } else {
                    best
                }
            });
        debug_assert!(lo_count <= hi_count);
        Cell {
            lo_count,
            lo_members,
            hi_count,
            reason,
        }
    }

    /// Closes the gap of one cell by branch and bound, within the node budget.
    fn refine(&self, ci: usize, c: u64, cell: &Cell) -> Cell {
        let data = &self.classes[ci];
        let (Some(problem), Some(profile)) = (&data.problem, &data.profile) else {
            return cell.clone();
        };
        if cell.lo_count >= cell.hi_count {
            return cell.clone();
        }
        let incumbent = problem.best_heuristic(c);
        let out = problem.branch_and_bound(c, incumbent, cell.hi_count, self.cfg.search_budget);
        let mut next = cell.clone();
        if out.best.total > next.lo_count {
            next.lo_count = out.best.total;
            next.lo_members = Some(profile.members_of(&out.best.take));
        }
        if out.exact && next.lo_count < next.hi_count {
            next.hi_count = next.lo_count;
            next.reason = UpperReason::Search;
        }
        next
    }

    fn global_upper(&self, d_min: &DistanceInterval, d_max: &DistanceInterval) -> (BigRational, UpperReason) {
        let a = BigRational::from_integer(BigInt::from(d_min.hi));
        let b = ratio(self.num_parts, d_max.lo.max(1));
        if b < a {
            (b, UpperReason::PartsOverMaxDistance)
        } else {
            (a, UpperReason::MinDistance)
        }
    }

    fn extremes(&self) -> (DistanceInterval, DistanceInterval) {
        let worst_source = self
            .classes
            .iter()
            .map(|d| d.distance.source)
            .max()
            .expect("at least one class");
        let min_lo = self.classes.iter().map(|d| d.distance.lo).min().unwrap();
        let max_lo = self.classes.iter().map(|d| d.distance.lo).max().unwrap();
        let argmin = self.classes.iter().min_by_key(|d| d.distance.hi).unwrap();
        let argmax = self.classes.iter().max_by_key(|d| d.distance.hi).unwrap();
        let d_min = DistanceInterval {
            lo: min_lo,
            hi: argmin.distance.hi,
            source: worst_source,
            witness: argmin.distance.witness.clone(),
        };
        let d_max = DistanceInterval {
            lo: max_lo,
            hi: argmax.distance.hi,
            source: worst_source,
            witness: argmax.distance.witness.clone(),
        };
        (d_min, d_max)
    }

    fn run(&self) -> MetricsReport {
        let cs = self.sweep_values();
        let nc = self.classes.len();
        let mut cells: Vec<Vec<Cell>> = (0..nc)
            .into_par_iter()
            .map(|ci| cs.par_iter().map(|&c| self.cell(ci, c)).collect())
            .collect();

        let (d_min, d_max) = self.extremes();
        let (global_hi, global_reason) = self.global_upper(&d_min, &d_max);

        let column_lo = |cells: &Vec<Vec<Cell>>, k: usize| {
            (0..nc)
                .map(|ci| ratio(cells[ci][k].lo_count, cs[k]))
                .min()
                .unwrap()
        };
        let column_hi = |cells: &Vec<Vec<Cell>>, k: usize| {
            (0..nc)
                .map(|ci| ratio(cells[ci][k].hi_count, cs[k]))
                .min()
                .unwrap()
        };
        let best_lo = |cells: &Vec<Vec<Cell>>| {
            (0..cs.len())
                .map(|k| column_lo(cells, k))
                .max()
                .unwrap()
        };

        // spend search effort only where a column could still beat the
        // current lower end of Delta
        let mut lo = best_lo(&cells);
        let mut order: Vec<(BigRational, usize)> = (0..cs.len())
            .map(|k| (column_hi(&cells, k).min(global_hi.clone()), k))
            .collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (cand, k) in order {
            if cand <= lo {
                break;
            }
            let c = cs[k];
            let targets: Vec<usize> = (0..nc)
                .filter(|&ci| {
                    let cell = &cells[ci][k];
                    cell.lo_count < cell.hi_count && ratio(cell.lo_count, c) < cand
                })
                .collect();
            let refined: Vec<(usize, Cell)> = targets
                .par_iter()
                .map(|&ci| (ci, self.refine(ci, c, &cells[ci][k])))
                .collect();
            for (ci, cell) in refined {
                cells[ci][k] = cell;
            }
            lo = lo.max(column_lo(&cells, k));
        }

        let mut delta_c = cs[0];
        let mut delta_lo = column_lo(&cells, 0);
        for k in 1..cs.len() {
            let v = column_lo(&cells, k);
            if v > delta_lo {
                delta_lo = v;
                delta_c = cs[k];
            }
        }
        let (mut delta_hi, mut reason) = (global_hi, global_reason);
        let sweep_complete =
            self.c_limit() == self.size && self.classes.iter().all(|d| d.problem.is_some());
        if sweep_complete {
            let sweep = (0..cs.len())
                .filter(|&k| cs[k] <= self.size)
                .map(|k| column_hi(&cells, k))
                .max()
                .unwrap();
            if sweep < delta_hi {
                delta_hi = sweep;
                reason = UpperReason::Sweep;
            }
        }
        debug_assert!(delta_lo <= delta_hi);
        let delta = RationalInterval {
            lo: delta_lo,
            hi: delta_hi,
            lo_witness: Some(Witness::Sweep { c: delta_c }),
            hi_reason: reason,
        };

        let classes: Vec<ClassMetrics> = self
            .classes
            .iter()
            .enumerate()
            .map(|(ci, d)| ClassMetrics {
                class: d.class.clone(),
                distance: d.distance.clone(),
                weight_histogram: d.profile.as_ref().map(|p| p.weight_histogram()),
                disjointness: cs
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| CEntry {
                        c,
                        interval: cells[ci][k].interval(c),
                    })
                    .collect(),
            })
            .collect();

        let distances_exact = self.classes.iter().all(|d| d.distance.lo == d.distance.hi);
        let exactness = if !distances_exact || !delta.is_exact() {
            Exactness::Interval
        } else if self.classes.iter().any(|d| d.distance.source != DistanceSource::Exhaustive) {
            Exactness::WitnessBacked
        } else {
            Exactness::Exhaustive
        };

        MetricsReport {
            num_parts: self.partition.num_parts(),
            coset_size: self.code.coset_size(),
            classes,
            d_min,
            d_max,
            delta,
            delta_c,
            c_values: cs,
            exactness,
        }
    }
}

/// Full analysis: distances, the c-sweep of `Delta_c(G)` and `Delta`.
pub fn compute_metrics(
    code: &StabilizerCode,
    partition: &Partition,
    cfg: &MetricsConfig,
    declared: Option<&DeclaredMetrics>,
) -> Result<MetricsReport, MetricsError> {
    Ok(Engine::new(code, partition, cfg, declared, None)?.run())
}

/// `d(G)`: the fewest parts any representative of the class touches.
pub fn class_distance(
    code: &StabilizerCode,
    class: &LogicalClass,
    partition: &Partition,
    cfg: &MetricsConfig,
) -> Result<DistanceInterval, MetricsError> {
    let engine = Engine::new(code, partition, cfg, None, Some(class))?;
    let ci = engine.class_index(class)?;
    Ok(engine.classes[ci].distance.clone())
}

/// `(d_min, d_max)` over all non-trivial classes.
pub fn min_max_distance(
    code: &StabilizerCode,
    partition: &Partition,
    cfg: &MetricsConfig,
) -> Result<(DistanceInterval, DistanceInterval), MetricsError> {
    Ok(Engine::new(code, partition, cfg, None, None)?.extremes())
}

/// `Delta_c(G)` for one class and one `c`, searched to the node budget.
pub fn c_disjointness(
    code: &StabilizerCode,
    class: &LogicalClass,
    c: u64,
    partition: &Partition,
    cfg: &MetricsConfig,
) -> Result<RationalInterval, MetricsError> {
    let engine = Engine::new(code, partition, cfg, None, None)?;
    if c == 0 || c > engine.size {
        return Err(MetricsError::COutOfRange {
            c,
            max: code.coset_size().map_or_else(|| "2^128".into(), |s| s.to_string()),
        });
    }
    let ci = engine.class_index(class)?;
    let cell = engine.cell(ci, c);
    Ok(engine.refine(ci, c, &cell).interval(c))
}

/// `Delta` and the smallest `c` attaining its lower end.
pub fn disjointness(
    code: &StabilizerCode,
    partition: &Partition,
    cfg: &MetricsConfig,
) -> Result<(RationalInterval, u64), MetricsError> {
    let report = compute_metrics(code, partition, cfg, None)?;
    Ok((report.delta, report.delta_c))
}
