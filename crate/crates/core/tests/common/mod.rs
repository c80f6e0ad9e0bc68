//! Strategies for random fields, plans, subspaces and pencils.

#![allow(dead_code)]

use otb_core::{Field, FieldVector, Pencil, Plan, Subspace};
use proptest::prelude::*;

pub fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![2u32, 3, 5]).prop_map(|s| Field::new(s).unwrap())
}

pub fn vector(f: Field, m: usize) -> impl Strategy<Value = FieldVector> {
    prop::collection::vec(0..f.order(), m).prop_map(move |c| FieldVector::new(f, c).unwrap())
}

pub fn nonzero_vector(f: Field, m: usize) -> impl Strategy<Value = FieldVector> {
    vector(f, m).prop_filter("nonzero", |v| !v.is_zero())
}

pub fn pencil(f: Field, m: usize) -> impl Strategy<Value = Pencil> {
    nonzero_vector(f, m).prop_map(|v| Pencil::new(&v).unwrap())
}

/// Span of up to `max_gens` random vectors.
pub fn subspace(f: Field, m: usize, max_gens: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(vector(f, m), 0..=max_gens).prop_map(move |vs| Subspace::span(f, m, &vs).unwrap())
}

pub fn plan(f: Field, m: usize, max_b: usize, max_k: usize) -> impl Strategy<Value = Plan> {
    (1..=max_b, 1..=max_k).prop_flat_map(move |(b, k)| {
        prop::collection::vec(prop::collection::vec(vector(f, m), k), b)
            .prop_map(move |blocks| Plan::new(f, m, blocks).unwrap())
    })
}

/// `(plan, V, a, b)` with `a != b`, over `s in {2,3,5}`, `m <= 5`,
/// `b <= 3`, `k <= 5`, `t <= 2`.
pub fn expansion_case() -> impl Strategy<Value = (Plan, Subspace, Pencil, Pencil)> {
    (field(), 2..=5usize).prop_flat_map(|(f, m)| {
        (plan(f, m, 3, 5), subspace(f, m, 2), pencil(f, m), pencil(f, m))
            .prop_filter("distinct pencils", |(_, _, a, b)| a != b)
    })
}
