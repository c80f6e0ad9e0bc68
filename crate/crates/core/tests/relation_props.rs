mod common;

use common::{field, pencil, plan};
use otb_core::field::FieldVector;
use otb_core::incidence::IncidenceBundle;
use otb_core::relations::*;
use otb_core::{Field, Pencil, Plan, Subspace};
use proptest::prelude::*;

fn pair_case() -> impl Strategy<Value = (Plan, Pencil, Pencil)> {
    (field(), 2..=4usize).prop_flat_map(|(f, m)| {
        (plan(f, m, 4, 5), pencil(f, m), pencil(f, m)).prop_filter("distinct", |(_, a, b)| a != b)
    })
}

/// Blocks are the cosets of `w` in `F_s^m`.
fn coset_plan(w: &Subspace) -> Plan {
    let f = w.field();
    let m = w.ambient_dim();
    let full = Subspace::full(f, m).members().unwrap();
    let members = w.members().unwrap();
    let mut seen: Vec<FieldVector> = Vec::new();
    let mut blocks = Vec::new();
    for x in &full {
        if seen.contains(x) {
            continue;
        }
        let block: Vec<FieldVector> = members.iter().map(|v| v.add(x).unwrap()).collect();
        seen.extend(block.iter().cloned());
        blocks.push(block);
    }
    Plan::new(f, m, blocks).unwrap()
}

proptest! {
    #[test]
    fn otb_is_symmetric((plan, a, b) in pair_case()) {
        prop_assert_eq!(otb_check(&plan, &a, &b).unwrap(), otb_check(&plan, &b, &a).unwrap());
        prop_assert_eq!(aliased_check(&plan, &a, &b).unwrap(), aliased_check(&plan, &b, &a).unwrap());
        prop_assert_eq!(pfc_check(&plan, &a, &b).unwrap(), pfc_check(&plan, &b, &a).unwrap());
    }

    #[test]
    fn marginals_always_hold((plan, a, b) in pair_case()) {
        let e = IncidenceBundle::compute(&plan, &a, &b).unwrap();
        prop_assert!(e.marginals_hold(plan.n(), plan.k()));
    }

    #[test]
    fn single_block_otb_iff_pfc(
        (plan, a, b) in (field(), 2..=4usize).prop_flat_map(|(f, m)| {
            (plan(f, m, 1, 9), pencil(f, m), pencil(f, m)).prop_filter("distinct", |(_, a, b)| a != b)
        })
    ) {
        prop_assert_eq!(otb_check(&plan, &a, &b).unwrap(), pfc_check(&plan, &a, &b).unwrap());
    }

    #[test]
    fn flags_are_consistent((plan, a, b) in pair_case()) {
        let r = PairRelation::compute(&plan, &a, &b).unwrap();
        prop_assert_eq!(r.non_orthogonal(), !r.otb && !r.aliased);
        prop_assert!(r.flags().contains("NonOrthogonal") == r.non_orthogonal());
    }

    #[test]
    fn uniform_incidence_implies_otb(
        (w, a, b) in (field(), 2..=3usize).prop_flat_map(|(f, m)| {
            (common::subspace(f, m, 2), pencil(f, m), pencil(f, m))
        })
    ) {
        prop_assume!(a != b);
        let plan = coset_plan(&w);
        let e = IncidenceBundle::compute(&plan, &a, &b).unwrap();
        let constant = |v: &[i64]| v.iter().all(|&x| x == v[0]);
        prop_assume!(constant(e.n_ab.entries()) && constant(e.l_a.entries()) && constant(e.l_b.entries()));
        prop_assert!(otb_check(&plan, &a, &b).unwrap());
    }

    #[test]
    fn coarsening_a_passing_partition_still_passes((plan, a, b) in pair_case()) {
        let classes = vec![vec![a.clone()], vec![b.clone()]];
        let fine = verify_partition(&plan, &classes).unwrap();
        let merged = verify_partition(&plan, &[vec![a, b]]).unwrap();
        prop_assert!(merged.passed());
        prop_assert_eq!(fine.passed(), otb_check(&plan, &classes[0][0], &classes[1][0]).unwrap());
    }
}

#[test]
fn coset_plans_of_full_factorial_are_uniform() {
    let f = Field::new(3).unwrap();
    let w = Subspace::parse(f, 3, "100;010").unwrap();
    let plan = coset_plan(&w);
    assert_eq!((plan.b(), plan.k()), (3, 9));
    let a = Pencil::parse("A", 3, f).unwrap();
    let b = Pencil::parse("B", 3, f).unwrap();
    assert!(otb_check(&plan, &a, &b).unwrap());
    let c = Pencil::parse("C", 3, f).unwrap();
    assert_eq!(block_relation(&plan, &c).unwrap(), BlockRelation::ConfoundedWithBlock);
}
