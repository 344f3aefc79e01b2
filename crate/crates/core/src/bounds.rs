//! Level bounds on the logical Clifford hierarchy.
//!
//! Each bound is the smallest integer `M` satisfying a strict inequality
//! between exact rationals. The search never relies on a closed form; the
//! returned trace shows the comparison at `M` and at `M - 1` so a reader can
//! re-check the boundary by hand.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::code::CircuitShape;
use crate::metrics::MetricsReport;

/// Search cap for bounds that may have no finite level, such as the
/// shallow-circuit bound with `q > 1`.
pub const DEFAULT_LEVEL_CAP: u32 = 30;

/// Search cap for bounds whose inequality is monotone in `M` and is
/// evaluated by galloping search.
pub const MONOTONE_LEVEL_CAP: u32 = 4096;

/// Largest effective block count evaluated exactly.
pub const MAX_EXACT_BLOCKS: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("{name} = {value} must be at least 1")]
    BelowOne { name: &'static str, value: String },
    #[error("block count must be at least 1")]
    NoBlocks,
    #[error("effective block count {0} is too large to evaluate exactly")]
    TooManyBlocks(String),
    #[error("part count must be at least 1")]
    NoParts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    Transversal,
    Cleaning,
    Multiblock,
    Shallow,
    PermutingSingle,
    PermutingMulti,
    Asymptotic,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Transversal => "transversal",
            Theorem::Cleaning => "cleaning",
            Theorem::Multiblock => "multiblock",
            Theorem::Shallow => "shallow",
            Theorem::PermutingSingle => "permuting-single",
            Theorem::PermutingMulti => "permuting-multi",
            Theorem::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluation of `lhs < rhs` at level `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub level: u32,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

impl Comparison {
    fn new(level: u32, lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs < rhs;
        Comparison { level, lhs, rhs, holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelBound {
    /// Smallest `M` satisfying the inequality, or `None`.
    pub level: Option<u32>,
    pub theorem: Theorem,
    /// The exact values the inequality was evaluated with.
    pub inputs: Vec<(&'static str, BigRational)>,
    /// Comparisons at `M - 1` and `M`, or the last ones evaluated for `None`.
    pub trace: Vec<Comparison>,
    /// For `None`: the largest `M` examined, or `None` if no `M` can work.
    pub cap: Option<u32>,
}

impl LevelBound {
    /// The hierarchy level as a plain number, for reports.
    pub fn level_string(&self) -> String {
        match (self.level, self.cap) {
            (Some(m), _) => m.to_string(),
            (None, Some(cap)) => format!("none (M <= {cap})"),
            (None, None) => "none".into(),
        }
    }
}

impl fmt::Display for LevelBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: M = {}", self.theorem, self.level_string())
    }
}

/// Growth exponents of a code family: `d_min ~ l^alpha`, `d_max ~ l^beta`,
/// `Delta ~ l^gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyExponents {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
}

impl FamilyExponents {
    pub fn new(alpha: BigRational, beta: BigRational, gamma: BigRational) -> Self {
        FamilyExponents { alpha, beta, gamma }
    }

    pub fn integers(alpha: i64, beta: i64, gamma: i64) -> Self {
        FamilyExponents::new(int(alpha), int(beta), int(gamma))
    }
}

/// The certified inputs a metrics report supplies to the bounds: the lower
/// end of `d_min`, the upper end of `d_max` and the lower end of `Delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedInputs {
    pub d_min: BigRational,
    pub d_max: BigRational,
    pub delta: BigRational,
    pub num_parts: u64,
    pub coset_size: Option<u128>,
}

impl CertifiedInputs {
    pub fn from_report(report: &MetricsReport) -> Self {
        CertifiedInputs {
            d_min: int(report.d_min.lo as i64),
            d_max: int(report.d_max.hi as i64),
            delta: report.delta.lo.clone(),
            num_parts: report.num_parts as u64,
            coset_size: report.coset_size,
        }
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn check_at_least_one(name: &'static str, value: &BigRational) -> Result<(), BoundError> {
    if value < &BigRational::one() {
        return Err(BoundError::BelowOne {
            name,
            value: value.to_string(),
        });
    }
    Ok(())
}

fn pow(base: &BigRational, exp: u64) -> BigRational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Smallest level in `1..=cap` for an inequality whose truth is monotone in
/// the level. `stationary` means the two sides do not depend on the level,
/// so failure at level 1 is failure everywhere.
fn monotone_search(
    eval: impl Fn(u32) -> Comparison,
    stationary: bool,
    cap: u32,
) -> (Option<u32>, Vec<Comparison>, Option<u32>) {
    let first = eval(1);
    if first.holds {
        return (Some(1), vec![first], None);
    }
    if stationary {
        return (None, vec![first], None);
    }
    // gallop to a level that holds, then bisect
    let mut fail = first;
    let mut hi = 2u32;
    let hold = loop {
        let cmp = eval(hi);
        if cmp.holds {
            break cmp;
        }
        if hi >= cap {
            return (None, vec![cmp], Some(cap));
        }
        fail = cmp;
        hi = hi.saturating_mul(2).min(cap);
    };
    let mut hold = hold;
    while hold.level - fail.level > 1 {
        let mid = fail.level + (hold.level - fail.level) / 2;
        let cmp = eval(mid);
        if cmp.holds {
            hold = cmp;
        } else {
            fail = cmp;
        }
    }
    (Some(hold.level), vec![fail, hold], None)
}

fn finish(
    theorem: Theorem,
    inputs: Vec<(&'static str, BigRational)>,
    (level, trace, cap): (Option<u32>, Vec<Comparison>, Option<u32>),
) -> LevelBound {
    LevelBound {
        level,
        theorem,
        inputs,
        trace,
        cap,
    }
}

/// Transversal gates on one block: smallest `M` with
/// `d_max < d_min * Delta^(M-1)`.
pub fn transversal_level_bound(
    d_min: &BigRational,
    d_max: &BigRational,
    delta: &BigRational,
) -> Result<LevelBound, BoundError> {
    check_at_least_one("d_min", d_min)?;
    check_at_least_one("delta", delta)?;
    let search = monotone_search(
        |m| Comparison::new(m, d_max.clone(), d_min * pow(delta, (m - 1) as u64)),
        delta.is_one(),
        MONOTONE_LEVEL_CAP,
    );
    Ok(finish(
        Theorem::Transversal,
        vec![("d_min", d_min.clone()), ("d_max", d_max.clone()), ("delta", delta.clone())],
        search,
    ))
}

/// The cleaning-based bound: smallest `M` with
/// `d_max < d_min + (M-1)(d_min-1)`, in closed form.
pub fn cleaning_level_bound(d_min: &BigRational, d_max: &BigRational) -> Result<LevelBound, BoundError> {
    check_at_least_one("d_min", d_min)?;
    let one = BigRational::one();
    let step = d_min - &one;
    let eval = |m: u32| Comparison::new(m, d_max.clone(), d_min + int(m as i64 - 1) * &step);
    let inputs = vec![("d_min", d_min.clone()), ("d_max", d_max.clone())];
    if d_max < d_min {
        return Ok(finish(Theorem::Cleaning, inputs, (Some(1), vec![eval(1)], None)));
    }
    if step.is_zero() {
        return Ok(finish(Theorem::Cleaning, inputs, (None, vec![eval(1)], None)));
    }
    let level = ((d_max - d_min) / &step).floor().to_integer() + BigInt::from(2);
    let Some(level) = level.to_u32() else {
        return Ok(finish(Theorem::Cleaning, inputs, (None, vec![], Some(u32::MAX))));
    };
    let trace = vec![eval(level - 1), eval(level)];
    debug_assert!(!trace[0].holds && trace[1].holds);
    Ok(finish(Theorem::Cleaning, inputs, (Some(level), trace, None)))
}

/// `min(r, N! * coset_size)`, without forming `N!` beyond what is needed.
pub fn effective_blocks(r: u64, num_parts: u64, coset_size: Option<u128>) -> u64 {
    let Some(size) = coset_size else {
        return r;
    };
    let mut product = size;
    if product >= r as u128 {
        return r;
    }
    for i in 2..=num_parts as u128 {
        product = product.saturating_mul(i);
        if product >= r as u128 {
            return r;
        }
    }
    product as u64
}

/// `1 - (1 - 1/Delta)^r`.
fn block_factor(delta: &BigRational, r: u64) -> BigRational {
    let one = BigRational::one();
    &one - pow(&(&one - delta.recip()), r)
}

fn multiblock_like(
    theorem: Theorem,
    prefactor: u64,
    d_min: &BigRational,
    d_max: &BigRational,
    delta: &BigRational,
    r: u64,
    num_parts: u64,
    coset_size: Option<u128>,
) -> Result<LevelBound, BoundError> {
    check_at_least_one("d_min", d_min)?;
    check_at_least_one("delta", delta)?;
    if r == 0 {
        return Err(BoundError::NoBlocks);
    }
    if num_parts == 0 {
        return Err(BoundError::NoParts);
    }
    let r_eff = effective_blocks(r, num_parts, coset_size);
    if r_eff > MAX_EXACT_BLOCKS {
        return Err(BoundError::TooManyBlocks(r_eff.to_string()));
    }
    let factor = block_factor(delta, r_eff);
    let scale = int(prefactor as i64) * int(r_eff as i64) * d_max;
    let search = monotone_search(
        |m| Comparison::new(m, &scale * pow(&factor, (m - 1) as u64), d_min.clone()),
        factor.is_one(),
        MONOTONE_LEVEL_CAP,
    );
    Ok(finish(
        theorem,
        vec![
            ("d_min", d_min.clone()),
            ("d_max", d_max.clone()),
            ("delta", delta.clone()),
            ("r", int(r as i64)),
            ("r_effective", int(r_eff as i64)),
            ("block_factor", factor),
        ],
        search,
    ))
}

/// Transversal gates across `r` blocks: smallest `M` with
/// `r' d_max (1 - (1 - 1/Delta)^r')^(M-1) < d_min`, `r' = min(r, N! m^(n-k))`.
pub fn multiblock_level_bound(
    d_min: &BigRational,
    d_max: &BigRational,
    delta: &BigRational,
    r: u64,
    num_parts: u64,
    coset_size: Option<u128>,
) -> Result<LevelBound, BoundError> {
    multiblock_like(Theorem::Multiblock, 1, d_min, d_max, delta, r, num_parts, coset_size)
}

/// Transversal gates composed with a permutation of the parts of each block.
/// The first commutator may double the support, hence the factor 2.
pub fn permuting_level_bound(
    d_min: &BigRational,
    d_max: &BigRational,
    delta: &BigRational,
    r: u64,
    num_parts: u64,
    coset_size: Option<u128>,
) -> Result<LevelBound, BoundError> {
    let theorem = if r == 1 {
        Theorem::PermutingSingle
    } else {
        Theorem::PermutingMulti
    };
    multiblock_like(theorem, 2, d_min, d_max, delta, r, num_parts, coset_size)
}

/// q-local depth-h circuits: smallest `M` with
/// `d_max * q^((2^M - 1) h) < d_min * Delta^(M-1)`, scanned up to `cap`.
///
/// Once `q^(2^M h) >= Delta` the left side grows at least as fast as the
/// right, so a failure from there on is a failure for every larger `M` and
/// the scan stops early.
pub fn shallow_level_bound(
    d_min: &BigRational,
    d_max: &BigRational,
    delta: &BigRational,
    shape: CircuitShape,
    cap: u32,
) -> Result<LevelBound, BoundError> {
    check_at_least_one("d_min", d_min)?;
    check_at_least_one("delta", delta)?;
    let inputs = vec![
        ("d_min", d_min.clone()),
        ("d_max", d_max.clone()),
        ("delta", delta.clone()),
        ("q", int(shape.q() as i64)),
        ("h", int(shape.h() as i64)),
    ];
    if shape.q() == 1 {
        let mut b = transversal_level_bound(d_min, d_max, delta)?;
        b.theorem = Theorem::Shallow;
        b.inputs = inputs;
        return Ok(b);
    }
    let q = BigInt::from(shape.q());
    let h = shape.h() as u64;
    let mut prev: Option<Comparison> = None;
    for m in 1..=cap.min(60) {
        // (2^M - 1) h stays small here: the early exit fires well before
        // the exponent could overflow, since Delta <= N
        let exp = ((1u64 << m) - 1) * h;
        let lhs = d_max * BigRational::from_integer(num_traits::pow(q.clone(), exp as usize));
        let cmp = Comparison::new(m, lhs, d_min * pow(delta, (m - 1) as u64));
        if cmp.holds {
            let trace = prev.into_iter().chain([cmp]).collect();
            return Ok(finish(Theorem::Shallow, inputs, (Some(m), trace, None)));
        }
        let growth = BigRational::from_integer(num_traits::pow(q.clone(), ((1u64 << m) * h) as usize));
        if &growth >= delta {
            return Ok(finish(Theorem::Shallow, inputs, (None, vec![cmp], None)));
        }
        prev = Some(cmp);
    }
    Ok(finish(Theorem::Shallow, inputs, (None, prev.into_iter().collect(), Some(cap))))
}

/// Code families: smallest `M` with `beta - alpha - (M-1) gamma < 0`.
pub fn asymptotic_level_bound(exps: &FamilyExponents) -> LevelBound {
    let FamilyExponents { alpha, beta, gamma } = exps;
    let gap = beta - alpha;
    let inputs = vec![("alpha", alpha.clone()), ("beta", beta.clone()), ("gamma", gamma.clone())];
    let zero = BigRational::zero();
    let eval = |m: u32| Comparison::new(m, &gap - int(m as i64 - 1) * gamma, zero.clone());
    if gap.is_negative() {
        return finish(Theorem::Asymptotic, inputs, (Some(1), vec![eval(1)], None));
    }
    if !gamma.is_positive() {
        return finish(Theorem::Asymptotic, inputs, (None, vec![eval(1)], None));
    }
    let level = (&gap / gamma).floor().to_integer() + BigInt::from(2);
    let Some(level) = level.to_u32() else {
        return finish(Theorem::Asymptotic, inputs, (None, vec![], Some(u32::MAX)));
    };
    let trace = vec![eval(level - 1), eval(level)];
    debug_assert!(!trace[0].holds && trace[1].holds);
    finish(Theorem::Asymptotic, inputs, (Some(level), trace, None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToffoliVerdict {
    pub excluded: bool,
    pub explanation: String,
}

/// Whether a transversal Toffoli is ruled out.
///
/// Toffoli gates and ancillas build `C^w X`, which sits in level `w + 1`,
/// for every `w`. An error-detecting code has a finite multiblock level
/// bound, so it cannot host all of them.
pub fn toffoli_excluded(d_min: u64) -> ToffoliVerdict {
    if d_min > 1 {
        ToffoliVerdict {
            excluded: true,
            explanation: format!(
                "d_min = {d_min} > 1, so Delta > 1 and every multiblock transversal gate is in a finite \
                 level; a transversal Toffoli would reach C^w X in level w + 1 for every w"
            ),
        }
    } else {
        ToffoliVerdict {
            excluded: false,
            explanation: "d_min = 1, so Delta = 1 and the multiblock bound gives no finite level".into(),
        }
    }
}
