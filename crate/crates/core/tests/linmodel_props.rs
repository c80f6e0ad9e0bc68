mod common;

use common::{pencil, plan};
use otb_core::effects::EffectModel;
use otb_core::linmodel::*;
use otb_core::rational::{rat, Rational, RationalMatrix};
use otb_core::{Field, Pencil, Plan};
use proptest::prelude::*;

fn f3() -> Field {
    Field::new(3).unwrap()
}

/// Random plan over `F_3^m` with a model of up to three distinct pencils.
fn model_case() -> impl Strategy<Value = (Plan, EffectModel)> {
    (1..=4usize).prop_flat_map(|m| {
        (plan(f3(), m, 4, 5), prop::collection::vec(pencil(f3(), m), 1..=3))
            .prop_map(move |(p, ps)| (p, EffectModel::new(f3(), m, ps).unwrap()))
    })
}

fn int_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1..=6usize, 1..=4usize).prop_flat_map(|(r, c)| {
        prop::collection::vec(-2i64..=2, r * c)
            .prop_map(move |v| RationalMatrix::from_fn(r, c, |i, j| rat(v[i * c + j])))
    })
}

fn hstack_split() -> impl Strategy<Value = (RationalMatrix, RationalMatrix)> {
    (1..=6usize, 1..=3usize, 1..=3usize).prop_flat_map(|(r, c1, c2)| {
        (prop::collection::vec(-2i64..=2, r * c1), prop::collection::vec(-2i64..=2, r * c2)).prop_map(
            move |(u, v)| {
                (
                    RationalMatrix::from_fn(r, c1, |i, j| rat(u[i * c1 + j])),
                    RationalMatrix::from_fn(r, c2, |i, j| rat(v[i * c2 + j])),
                )
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cond_orth_equivalences((plan, model) in model_case()) {
        for i in &model {
            let c = check_thm_cond_orth(&plan, &model, i).unwrap();
            prop_assert!(c.consistent(), "{:?} for {} on {:?}", c, i, plan);
        }
    }

    #[test]
    fn projector_is_symmetric_idempotent(a in int_matrix()) {
        let p = projector(&a);
        prop_assert!(p.is_symmetric());
        prop_assert_eq!(p.mul(&p), p.clone());
        prop_assert!(a.sub(&p.mul(&a)).is_zero());
    }

    #[test]
    fn projector_difference_identity((u, v) in hstack_split()) {
        let w = u.hstack(&v);
        let pv = projector(&v);
        let z = RationalMatrix::identity(pv.rows()).sub(&pv).mul(&u);
        prop_assert_eq!(projector(&w).sub(&pv), projector(&z));
    }

    #[test]
    fn nested_span_projectors((b, extra, c) in (1..=5usize).prop_flat_map(|r| {
        let mat = move |c: usize| prop::collection::vec(-1i64..=1, r * c)
            .prop_map(move |v| RationalMatrix::from_fn(r, c, |i, j| rat(v[i * c + j])));
        (mat(2), mat(2), mat(2))
    })) {
        // C(B) ⊆ C(A) with A = [B extra]
        let a = b.hstack(&extra);
        let (pa, pb) = (projector(&a), projector(&b));
        let same_span = pb.mul(&c).hstack(&pa.mul(&c)).rank() == pb.mul(&c).rank()
            && pa.mul(&c).rank() == pb.mul(&c).rank();
        prop_assert_eq!(same_span, pa.sub(&pb).mul(&c).is_zero());
    }

    #[test]
    fn adjusting_adds_projectors((plan, model) in model_case()) {
        let x = design_matrix(&plan, &model, true).unwrap();
        let i = Term::Effect(model.pencils()[0].clone());
        let t = vec![Term::Mean, Term::Blocks];
        let mut t_star = t.clone();
        t_star.push(i.clone());
        let p_d = adjusted_projector(&x, &[i], &t).unwrap();
        let p_ts = projector(&x.columns(&t_star).unwrap());
        let p_t = projector(&x.columns(&t).unwrap());
        prop_assert_eq!(p_d, p_ts.sub(&p_t));
    }

    #[test]
    fn unadjusted_ss_closed_form_agrees(
        ((plan, model), y) in model_case().prop_flat_map(|(p, m)| {
            let n = p.n();
            (Just((p, m)), prop::collection::vec(-9i64..=9, n))
        })
    ) {
        let x = design_matrix(&plan, &model, true).unwrap();
        let y: Vec<Rational> = y.into_iter().map(rat).collect();
        for a in &model {
            let via_projector = adjusted_ss(&y, &x, &[Term::Effect(a.clone())], &[Term::Mean]).unwrap();
            prop_assert_eq!(via_projector, unadjusted_ss_closed_form(&y, &plan, a).unwrap());
        }
    }

    #[test]
    fn estimability_routes_agree((plan, model) in model_case()) {
        let rep = estimable_pencils(&plan, &model).unwrap();
        let x = design_matrix(&plan, &model, true).unwrap();
        for e in &rep.entries {
            prop_assert_eq!(e.df, contrast_df(&x, &e.pencil).unwrap());
            prop_assert_eq!(e.verdict == Verdict::Estimable, e.df == 2);
            prop_assert_eq!(e.verdict == Verdict::NotEstimable, e.df == 0);
        }
        prop_assert!(rep.total_df() <= rep.n - rep.block_rank);
        prop_assert!(rep.total_df() <= rep.model_rank - rep.block_rank);
    }

    #[test]
    fn greedy_submodel_is_jointly_estimable((plan, model) in model_case()) {
        let kept = greedy_joint_submodel(&plan, &model).unwrap();
        let sub = EffectModel::new(f3(), plan.m(), kept.clone()).unwrap();
        let rep = estimable_pencils(&plan, &sub).unwrap();
        prop_assert_eq!(rep.estimable(), kept.len());
    }
}

#[test]
fn sequential_ss_of_first_pencil_adjusts_for_the_rest() {
    let plan = otb_core::catalog::plan_p();
    let model = EffectModel::mains(4, f3());
    let x = design_matrix(&plan, &model, true).unwrap();
    let y: Vec<Rational> = [2, 7, 1, 8, 2, 8, 1, 8].iter().map(|&v| rat(v)).collect();
    let a = Pencil::parse("A", 4, f3()).unwrap();
    let rest: Vec<Term> = ["B", "C", "D"]
        .iter()
        .map(|n| Term::Effect(Pencil::parse(n, 4, f3()).unwrap()))
        .chain([Term::Blocks, Term::Mean])
        .collect();
    let want = adjusted_ss(&y, &x, &[Term::Effect(a.clone())], &rest).unwrap();
    assert_eq!(sequential_ss(&y, &x, &a).unwrap(), want);
}
