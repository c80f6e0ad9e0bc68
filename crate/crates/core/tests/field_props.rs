mod common;

use common::{field, subspace, vector};
use otb_core::field::{enumerate_subspaces, gaussian_binomial};
use otb_core::{Field, FieldVector, Subspace};
use proptest::prelude::*;

proptest! {
    #[test]
    fn span_ignores_generator_order_and_scaling(
        (f, gens, perm_seed) in field().prop_flat_map(|f| {
            (Just(f), prop::collection::vec(vector(f, 4), 0..5), any::<u64>())
        })
    ) {
        let direct = Subspace::span(f, 4, &gens).unwrap();
        let mut shuffled = gens.clone();
        let len = shuffled.len();
        if len > 1 {
            shuffled.rotate_left((perm_seed as usize) % len);
            shuffled.reverse();
        }
        let scaled: Vec<FieldVector> = shuffled.iter().map(|v| v.scale(f.order() - 1)).collect();
        prop_assert_eq!(&direct, &Subspace::span(f, 4, &scaled).unwrap());
        for g in &gens {
            prop_assert!(direct.contains(g));
        }
    }

    #[test]
    fn orthocomplement_properties(v in field().prop_flat_map(|f| subspace(f, 5, 4))) {
        let perp = v.orthocomplement();
        prop_assert_eq!(perp.dim() + v.dim(), 5);
        for w in perp.basis() {
            prop_assert!(v.annihilated_by(w));
            for x in v.basis() {
                prop_assert_eq!(w.dot(x).unwrap(), 0);
            }
        }
        prop_assert_eq!(perp.orthocomplement(), v);
    }

    #[test]
    fn members_are_distinct_and_inside(v in field().prop_flat_map(|f| subspace(f, 4, 3))) {
        let members = v.members().unwrap();
        prop_assert_eq!(members.len() as u128, v.size());
        let mut sorted = members.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), members.len());
        for x in &members {
            prop_assert!(v.contains(x));
        }
    }
}

#[test]
fn enumeration_counts_match_gaussian_binomials() {
    for s in [2u32, 3, 5] {
        let f = Field::new(s).unwrap();
        for m in 0..=4 {
            for t in 0..=m {
                let all: Vec<_> = enumerate_subspaces(f, m, t).collect();
                assert_eq!(all.len() as u128, gaussian_binomial(s as u128, m, t), "s={s} m={m} t={t}");
                assert!(all.iter().all(|v| v.dim() == t));
            }
        }
    }
}
