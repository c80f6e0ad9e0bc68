//! Exhaustive search over expansion subspaces of a fixed dimension.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::effects::EffectModel;
use crate::error::{Error, Result};
use crate::expansion::{effect_classes, expand};
use crate::field::{enumerate_subspaces, gaussian_binomial, Subspace};
use crate::linmodel::estimable_pencils;
use crate::plan::Plan;
use crate::relations::{block_relation, BlockRelation};

/// Largest number of candidate subspaces [`search_best`] will score.
pub const MAX_CANDIDATES: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceScore {
    pub subspace: Subspace,
    pub n_blocks: usize,
    pub n_estimable: usize,
    pub n_partial: usize,
    pub n_not_estimable: usize,
    pub n_confounded_with_block: usize,
    pub n_constant: usize,
    /// Number of model pencils in each effect class relative to the
    /// subspace, classes in their canonical order, empty classes skipped.
    pub class_sizes: Vec<usize>,
}

impl SubspaceScore {
    /// Ranking order: more estimable first, then fewer confounded, then the
    /// canonical order of the subspace.
    pub fn rank_cmp(&self, other: &Self) -> Ordering {
        other
            .n_estimable
            .cmp(&self.n_estimable)
            .then(self.n_confounded_with_block.cmp(&other.n_confounded_with_block))
            .then_with(|| self.subspace.cmp(&other.subspace))
    }
}

pub fn score_subspace(plan: &Plan, v: &Subspace, model: &EffectModel) -> Result<SubspaceScore> {
    let expanded = expand(plan, v)?;
    let report = estimable_pencils(&expanded, model)?;
    let mut n_confounded = 0;
    let mut n_constant = 0;
    for p in model {
        match block_relation(&expanded, p)? {
            BlockRelation::ConfoundedWithBlock => n_confounded += 1,
            BlockRelation::ConstantOnPlan => n_constant += 1,
            BlockRelation::VariesWithinBlocks => {}
        }
    }
    let classes = effect_classes(v);
    let class_sizes = classes
        .classes
        .iter()
        .map(|c| c.iter().filter(|p| model.contains(p)).count())
        .filter(|&c| c > 0)
        .collect();
    Ok(SubspaceScore {
        subspace: v.clone(),
        n_blocks: expanded.b(),
        n_estimable: report.estimable(),
        n_partial: report.partial(),
        n_not_estimable: report.lost(),
        n_confounded_with_block: n_confounded,
        n_constant,
        class_sizes,
    })
}

/// All `t`-dimensional subspaces of the plan's space, or `TooLarge`.
pub fn candidates(plan: &Plan, t: usize) -> Result<Vec<Subspace>> {
    if t > plan.m() {
        return Err(Error::Invalid("subspace dimension exceeds the number of factors"));
    }
    let count = gaussian_binomial(plan.field().order() as u128, plan.m(), t);
    if count > MAX_CANDIDATES {
        return Err(Error::TooLarge {
            what: "candidate subspaces",
            size: count,
            limit: MAX_CANDIDATES,
        });
    }
    Ok(enumerate_subspaces(plan.field(), plan.m(), t).collect())
}

/// Sorts by [`SubspaceScore::rank_cmp`] and keeps the first `limit`.
pub fn rank_scores(mut scores: Vec<SubspaceScore>, limit: usize) -> Vec<SubspaceScore> {
    scores.sort_by(SubspaceScore::rank_cmp);
    scores.truncate(limit);
    scores
}

pub fn search_best(plan: &Plan, t: usize, model: &EffectModel, limit: usize) -> Result<Vec<SubspaceScore>> {
    let scores = candidates(plan, t)?
        .iter()
        .map(|v| score_subspace(plan, v, model))
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_scores(scores, limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_subspace, plan_p, plan_p3};
    use crate::field::Field;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn zero_subspace_scores_base_plan() {
        let p = plan_p3();
        let model = EffectModel::mains_and_2fi(3, f3());
        let s = score_subspace(&p, &Subspace::zero(f3(), 3), &model).unwrap();
        assert_eq!(s.n_blocks, p.b());
        assert_eq!(s.class_sizes, [9]);
        assert_eq!(s.n_estimable + s.n_partial + s.n_not_estimable, 9);
    }

    #[test]
    fn score_of_v4() {
        let model = EffectModel::mains_and_2fi(4, f3());
        let s = score_subspace(&plan_p(), &catalog_subspace("V4").unwrap(), &model).unwrap();
        assert_eq!(s.n_blocks, 18);
        assert_eq!(s.n_confounded_with_block, 0);
        assert_eq!(s.class_sizes.iter().sum::<usize>(), 16);
    }

    #[test]
    fn p3_search_covers_all_lines() {
        let model = EffectModel::mains_and_2fi(3, f3());
        let all = search_best(&plan_p3(), 1, &model, 100).unwrap();
        assert_eq!(all.len(), 13);
        for w in all.windows(2) {
            assert_eq!(w[0].rank_cmp(&w[1]), Ordering::Less);
        }
        assert_eq!(search_best(&plan_p3(), 1, &model, 1).unwrap().len(), 1);
        assert!(search_best(&plan_p3(), 4, &model, 1).is_err());
    }
}
