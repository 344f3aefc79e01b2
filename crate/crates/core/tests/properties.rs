//! Property tests against dense matrices and exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use stabdisj_core::bounds::{shallow_level_bound, transversal_level_bound};
use stabdisj_core::families;
use stabdisj_core::oracle::dense::{pauli_matrix, root_of_unity, Matrix};
use stabdisj_core::{compute_metrics, CircuitShape, MetricsConfig, Partition, PauliOperator, QuditDim};

fn arb_pauli(m: u32, n: usize) -> impl Strategy<Value = PauliOperator> {
    (
        proptest::collection::vec(0..m as u8, n),
        proptest::collection::vec(0..m as u8, n),
        0..(2 * m as u16),
    )
        .prop_map(move |(x, z, ph)| {
            PauliOperator::from_xz(&x, &z, QuditDim::new(m).unwrap())
                .unwrap()
                .with_phase_exponent(ph)
        })
}

/// Small enough for dense matrices: at most 5^3 = 125 dimensions.
fn arb_dense_pair() -> impl Strategy<Value = (PauliOperator, PauliOperator)> {
    (prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..=3)
        .prop_flat_map(|(m, n)| (arb_pauli(m, n), arb_pauli(m, n)))
}

fn rat(p: u64, q: u64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn int(v: u64) -> BigRational {
    rat(v, 1)
}

fn arb_inputs() -> impl Strategy<Value = (u64, u64, BigRational)> {
    (1u64..30, 0u64..60, 1u64..20, 0u64..60).prop_map(|(d_min, extra, q, p_extra)| {
        (d_min, d_min + extra, rat(q + p_extra, q))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_matches_dense_product((a, b) in arb_dense_pair()) {
        let ab = pauli_matrix(&a.multiply(&b).unwrap());
        let dense = pauli_matrix(&a).mul(&pauli_matrix(&b));
        prop_assert!(ab.max_diff(&dense) < 1e-9);
    }

    #[test]
    fn group_commutator_is_the_symplectic_phase((a, b) in arb_dense_pair()) {
        let m = a.dim().get() as u32;
        let (pa, pb) = (pauli_matrix(&a), pauli_matrix(&b));
        let comm = pa.group_commutator(&pb);
        let lambda = a.symplectic_product(&b).unwrap();
        let want = Matrix::identity(pa.dim()).scale(root_of_unity(lambda as i64, m));
        prop_assert!(comm.max_diff(&want) < 1e-9);
    }

    #[test]
    fn transversal_level_is_the_first_that_holds((d_min, d_max, delta) in arb_inputs()) {
        let b = transversal_level_bound(&int(d_min), &int(d_max), &delta).unwrap();
        let holds = |level: u32| int(d_max) < int(d_min) * num_traits::pow(delta.clone(), level as usize - 1);
        match b.level {
            Some(level) => {
                prop_assert!(holds(level));
                prop_assert!(level == 1 || !holds(level - 1));
            }
            None => prop_assert!(delta == int(1) && d_max >= d_min),
        }
    }

    #[test]
    fn larger_delta_never_raises_the_level((d_min, d_max, delta) in arb_inputs(), bump in 1u64..10) {
        let higher = &delta + rat(bump, 7);
        let lo = transversal_level_bound(&int(d_min), &int(d_max), &delta).unwrap().level;
        let hi = transversal_level_bound(&int(d_min), &int(d_max), &higher).unwrap().level;
        if let Some(lo) = lo {
            prop_assert!(hi.is_some_and(|hi| hi <= lo));
        }
    }

    #[test]
    fn one_local_shallow_is_transversal((d_min, d_max, delta) in arb_inputs(), h in 1u32..4) {
        let shallow = shallow_level_bound(&int(d_min), &int(d_max), &delta, CircuitShape::new(1, h).unwrap(), 30).unwrap();
        let single = transversal_level_bound(&int(d_min), &int(d_max), &delta).unwrap();
        prop_assert_eq!(shallow.level, single.level);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn metrics_ignore_part_order(
        which in 0usize..3,
        order in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let f = match which {
            0 => families::five_qubit(),
            1 => families::four_two_two(),
            _ => families::reed_muller(2).unwrap(),
        };
        let n = f.code.num_qudits();
        // pair up qudits into parts, then list the parts in shuffled order
        let order: Vec<usize> = order.into_iter().filter(|&q| q < n).collect();
        let parts: Vec<Vec<usize>> = order.chunks(2).map(|c| c.to_vec()).collect();
        let mut reversed = parts.clone();
        reversed.reverse();
        let cfg = MetricsConfig::default();
        let a = compute_metrics(&f.code, &Partition::new(parts, n).unwrap(), &cfg, None).unwrap();
        let b = compute_metrics(&f.code, &Partition::new(reversed, n).unwrap(), &cfg, None).unwrap();
        prop_assert_eq!((a.d_min.lo, a.d_max.hi), (b.d_min.lo, b.d_max.hi));
        prop_assert_eq!(&a.delta.lo, &b.delta.lo);
        prop_assert_eq!(&a.delta.hi, &b.delta.hi);
        prop_assert!(a.delta.lo >= int(1));
        prop_assert!(a.delta.hi <= int(a.num_parts as u64) / int(a.d_max.hi));
    }
}
