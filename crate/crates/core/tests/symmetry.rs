//! Invariance of the main predicates under relabelling of the ground set and
//! under the duality `i.j|K -> i.j|([n] - ijK)`.

use std::sync::OnceLock;

use proptest::prelude::*;

use ::semigraphoid::ci::{CiStatement, Permutation, Subset};
use ::semigraphoid::semigraphoid::{closure, enumerate_masks, is_semigraphoid, StatementSet};
use ::semigraphoid::submodular::is_submodular;
use ::semigraphoid::geometry::is_simplicial;

fn masks4() -> &'static [u32] {
    static MASKS: OnceLock<Vec<u32>> = OnceLock::new();
    MASKS.get_or_init(|| enumerate_masks(4).unwrap())
}

fn dual_statement(s: &CiStatement, n: usize) -> CiStatement {
    let full = (1u32 << n) - 1;
    let rest = full & !(s.cond().mask() | 1 << (s.i() - 1) | 1 << (s.j() - 1));
    CiStatement::new(s.i(), s.j(), Subset::from_mask(rest)).unwrap()
}

fn dual(m: &StatementSet) -> StatementSet {
    let n = m.n();
    let d: Vec<CiStatement> = m.statements().iter().map(|s| dual_statement(s, n)).collect();
    StatementSet::from_statements(n, &d).unwrap()
}

fn semigraphoid4(k: usize) -> StatementSet {
    let masks = masks4();
    StatementSet::from_mask(4, masks[k % masks.len()] as u64).unwrap()
}

#[test]
fn duality_is_an_involution_on_semigraphoids() {
    let masks = masks4();
    for &mask in masks.iter().step_by(97) {
        let m = StatementSet::from_mask(4, mask as u64).unwrap();
        let d = dual(&m);
        assert!(is_semigraphoid(&d));
        assert_eq!(dual(&d), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn submodularity_is_dual_invariant(k in any::<usize>()) {
        let m = semigraphoid4(k);
        prop_assert_eq!(is_submodular(&m).unwrap().submodular, is_submodular(&dual(&m)).unwrap().submodular);
    }

    #[test]
    fn predicates_are_permutation_invariant(k in any::<usize>(), p in 0usize..24) {
        let m = semigraphoid4(k);
        let sigma = &Permutation::all(4)[p];
        let pm = m.permuted(sigma);
        prop_assert!(is_semigraphoid(&pm));
        prop_assert_eq!(is_submodular(&m).unwrap().submodular, is_submodular(&pm).unwrap().submodular);
        prop_assert_eq!(is_simplicial(&m).unwrap(), is_simplicial(&pm).unwrap());
    }

    #[test]
    fn closure_commutes_with_duality(bits in any::<u32>()) {
        let s = StatementSet::from_mask(4, (bits & 0x00ff_ffff & (bits >> 8)) as u64).unwrap();
        prop_assert_eq!(dual(&closure(&s)), closure(&dual(&s)));
    }
}
