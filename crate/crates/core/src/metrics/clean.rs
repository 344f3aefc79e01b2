//! Constructive cleaning and scrubbing of logical representatives.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::code::{LogicalClass, StabilizerCode};
use crate::linalg;
use crate::metrics::{c_disjointness, MetricsConfig, MetricsError, Witness};
use crate::partition::Partition;
use crate::pauli::{PauliError, PauliOperator};

/// A representative of `class` acting trivially on every part in `region`,
/// or `None` if the coset has no such element.
///
/// Existence is guaranteed when `|region| < d_min`; beyond that the search
/// still runs but may come back empty.
pub fn clean(
    code: &StabilizerCode,
    class: &LogicalClass,
    region: &[usize],
    partition: &Partition,
) -> Result<Option<PauliOperator>, MetricsError> {
    if partition.num_qudits() != code.num_qudits() {
        return Err(PauliError::PartitionSize {
            partition: partition.num_qudits(),
            operator: code.num_qudits(),
        }
        .into());
    }
    let rep = code.logical_representative(class)?;
    let dim = code.dim();
    let gens = code.generators();
    let qudits = partition.qudits_of(region);
    // unknown t_i multiplies in g_i^{t_i}; every x and z entry on the region must cancel
    let mut rows = Vec::with_capacity(2 * qudits.len());
    let mut rhs = Vec::with_capacity(2 * qudits.len());
    for &q in &qudits {
        rows.push(gens.iter().map(|g| g.x(q)).collect::<Vec<u8>>());
        rhs.push(dim.neg(rep.x(q)));
        rows.push(gens.iter().map(|g| g.z(q)).collect::<Vec<u8>>());
        rhs.push(dim.neg(rep.z(q)));
    }
    let Some(t) = linalg::solve(dim, &rows, &rhs, gens.len()) else {
        return Ok(None);
    };
    let mut out = rep;
    for (g, &ti) in gens.iter().zip(&t) {
        if ti != 0 {
            out = out.multiply(&g.pow(ti as u32))?;
        }
    }
    debug_assert!(qudits.iter().all(|&q| !out.acts_on(q)));
    Ok(Some(out.unphased()))
}

/// Outcome of scrubbing against a region `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scrubbed {
    pub representative: PauliOperator,
    /// `|supp(g) ∩ H|`.
    pub overlap: usize,
    /// The `Delta_c(G)` lower bound certified by the set the choice was made from.
    pub certificate: BigRational,
}

/// The member of a c-disjoint set with least support inside `region`.
pub fn scrub_among(
    members: &[PauliOperator],
    region: &[usize],
    partition: &Partition,
) -> Result<Option<(PauliOperator, usize)>, MetricsError> {
    let mut best: Option<(PauliOperator, usize)> = None;
    for p in members {
        let overlap = p.support(partition)?.iter().filter(|i| region.contains(i)).count();
        if best.as_ref().is_none_or(|b| overlap < b.1) {
            best = Some((p.clone(), overlap));
        }
    }
    Ok(best)
}

/// A representative whose overlap with `region` is at most `|region| / Delta_c(G)`.
pub fn scrub(
    code: &StabilizerCode,
    class: &LogicalClass,
    region: &[usize],
    c: u64,
    partition: &Partition,
    cfg: &MetricsConfig,
) -> Result<Scrubbed, MetricsError> {
    let interval = c_disjointness(code, class, c, partition, cfg)?;
    let Some(Witness::DisjointSet { members, .. }) = interval.lo_witness else {
        return Err(MetricsError::NoWitness {
            class: class.name(code.dim()),
            c,
        });
    };
    let (representative, overlap) =
        scrub_among(&members, region, partition)?.expect("c-disjoint sets are non-empty");
    Ok(Scrubbed {
        representative,
        overlap,
        certificate: BigRational::new(BigInt::from(members.len()), BigInt::from(c)),
    })
}

/// `(1 - prod_b (1 - 1/Delta_b)) * |H|`, the overlap guaranteed when
/// scrubbing several blocks at once.
pub fn multiblock_scrub_bound(certificates: &[BigRational], h_size: u64) -> Result<BigRational, MetricsError> {
    let one = BigRational::one();
    let mut product = one.clone();
    for d in certificates {
        if d < &one {
            return Err(MetricsError::InvalidCertificate(d.to_string()));
        }
        product *= &one - d.recip();
    }
    let bound = (one - product) * BigRational::from_integer(BigInt::from(h_size));
    debug_assert!(!bound.is_zero() || h_size == 0 || certificates.is_empty());
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::ClassOf;
    use crate::metrics::ratio;

    fn four_two_two() -> StabilizerCode {
        let p = |s: &[&str]| s.iter().map(|x| PauliOperator::parse(x, 2).unwrap()).collect();
        StabilizerCode::with_logicals(p(&["XXXX", "ZZZZ"]), 2, p(&["XXII", "XIXI"]), p(&["ZIZI", "ZZII"]))
            .unwrap()
    }

    #[test]
    fn clean_four_two_two() {
        let code = four_two_two();
        let p = Partition::single_qudits(4);
        let x1 = code.class(vec![1, 0, 0, 0]).unwrap();
        assert_eq!(clean(&code, &x1, &[], &p).unwrap().unwrap().to_string(), "XXII");
        let g = clean(&code, &x1, &[0], &p).unwrap().unwrap();
        assert_eq!(g.to_string(), "IIXX");
        assert_eq!(code.class_of(&g).unwrap(), ClassOf::Logical(x1.clone()));
        // two parts reach d_min and cannot both be avoided
        assert!(clean(&code, &x1, &[0, 2], &p).unwrap().is_none());
    }

    #[test]
    fn scrub_four_two_two() {
        let code = four_two_two();
        let p = Partition::single_qudits(4);
        let x1 = code.class(vec![1, 0, 0, 0]).unwrap();
        let s = scrub(&code, &x1, &[0, 1], 1, &p, &MetricsConfig::default()).unwrap();
        assert_eq!(s.representative.to_string(), "IIXX");
        assert_eq!(s.overlap, 0);
        assert_eq!(s.certificate, ratio(2, 1));
        let s = scrub(&code, &x1, &[], 1, &p, &MetricsConfig::default()).unwrap();
        assert_eq!(s.overlap, 0);
    }

    #[test]
    fn multiblock_bound_values() {
        let five_thirds = ratio(5, 3);
        assert_eq!(
            multiblock_scrub_bound(&[five_thirds.clone(), five_thirds.clone()], 25).unwrap(),
            ratio(21, 1)
        );
        assert_eq!(multiblock_scrub_bound(&[five_thirds], 10).unwrap(), ratio(6, 1));
        assert_eq!(multiblock_scrub_bound(&[ratio(1, 1), ratio(3, 1)], 7).unwrap(), ratio(7, 1));
        assert!(multiblock_scrub_bound(&[ratio(1, 2)], 7).is_err());
    }
}
