use otb_core::catalog::plan_p3;
use otb_core::search::{candidates, rank_scores, score_subspace, search_best};
use otb_core::{EffectModel, Field};
use rand::seq::SliceRandom;
use rand::SeedableRng;

#[test]
fn ranking_ignores_enumeration_order() {
    let f = Field::new(3).unwrap();
    let plan = plan_p3();
    let model = EffectModel::mains_and_2fi(3, f);
    let reference = search_best(&plan, 1, &model, 13).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..5 {
        let mut vs = candidates(&plan, 1).unwrap();
        vs.shuffle(&mut rng);
        let scores = vs.iter().map(|v| score_subspace(&plan, v, &model).unwrap()).collect();
        assert_eq!(rank_scores(scores, 13), reference);
    }
    for s in &reference {
        assert_eq!(&score_subspace(&plan, &s.subspace, &model).unwrap(), s);
        assert_eq!(s.n_blocks, plan.b() * 3);
    }
}
