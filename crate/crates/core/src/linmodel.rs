//! Exact linear-model analysis of a blocked plan: design matrices,
//! projectors, adjusted sums of squares and estimability of effects.
//!
//! Everything here runs over exact rationals. Two sums of squares agree for
//! every response vector exactly when their projectors agree entrywise, so
//! equalities of sums of squares are decided by comparing projectors.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_traits::Zero;

use crate::effects::{EffectModel, Pencil};
use crate::error::{Error, Result};
use crate::incidence::{effect_block_matrix, incidence_matrix, replication_vector, IntMatrix};
use crate::plan::Plan;
use crate::rational::{rat, Rational, RationalMatrix};

/// A column group of the model matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// The general mean, one column of ones.
    Mean,
    /// Block indicators, one column per block.
    Blocks,
    /// Level indicators of a pencil, one column per level.
    Effect(Pencil),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Mean => f.write_str("mean"),
            Term::Blocks => f.write_str("blocks"),
            Term::Effect(p) => write!(f, "{}", p),
        }
    }
}

/// 0/1 model matrix with labelled column groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelMatrix {
    matrix: IntMatrix,
    groups: Vec<(Term, Range<usize>)>,
}

impl ModelMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn groups(&self) -> &[(Term, Range<usize>)] {
        &self.groups
    }

    pub fn group(&self, term: &Term) -> Option<Range<usize>> {
        self.groups.iter().find(|(t, _)| t == term).map(|(_, r)| r.clone())
    }

    fn column_indices(&self, terms: &[Term]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for t in terms {
            out.extend(self.group(t).ok_or(Error::Invalid("term is not in the model matrix"))?);
        }
        Ok(out)
    }

    /// The columns of the given groups, in the order given.
    pub fn columns(&self, terms: &[Term]) -> Result<RationalMatrix> {
        let cols = self.column_indices(terms)?;
        Ok(RationalMatrix::from_int(&self.matrix).select_columns(&cols))
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_int(&self.matrix)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> + '_ {
        self.groups.iter().map(|(t, _)| t)
    }
}

/// Columns: mean, then block indicators (if requested), then `s` level
/// indicators per pencil in model order.
pub fn design_matrix(plan: &Plan, model: &EffectModel, with_blocks: bool) -> Result<ModelMatrix> {
    if model.field() != plan.field() {
        return Err(Error::FieldMismatch {
            expected: plan.field().order(),
            found: model.field().order(),
        });
    }
    if model.m() != plan.m() {
        return Err(Error::DimensionMismatch {
            expected: plan.m(),
            found: model.m(),
        });
    }
    let s = plan.field().order() as usize;
    let mut groups = Vec::new();
    groups.push((Term::Mean, 0..1));
    let mut next = 1;
    if with_blocks {
        groups.push((Term::Blocks, next..next + plan.b()));
        next += plan.b();
    }
    for p in model {
        groups.push((Term::Effect(p.clone()), next..next + s));
        next += s;
    }
    let mut matrix = IntMatrix::zeros(plan.n(), next);
    for (u, (j, x)) in plan.runs_with_block().enumerate() {
        matrix.set(u, 0, 1);
        if with_blocks {
            matrix.set(u, 1 + j, 1);
        }
        for (term, range) in &groups {
            if let Term::Effect(p) = term {
                matrix.set(u, range.start + p.level_unchecked(x) as usize, 1);
            }
        }
    }
    Ok(ModelMatrix { matrix, groups })
}

/// Orthogonal projector onto the column space of `a`.
pub fn projector(a: &RationalMatrix) -> RationalMatrix {
    let (_, pivots) = a.rref();
    if pivots.is_empty() {
        return RationalMatrix::zeros(a.rows(), a.rows());
    }
    let b = a.select_columns(&pivots);
    let bt = b.transpose();
    let inv = bt.mul(&b).inverse().expect("independent columns");
    b.mul(&inv).mul(&bt)
}

fn check_disjoint(s: &[Term], t: &[Term]) -> Result<()> {
    if s.iter().any(|x| t.contains(x)) {
        Err(Error::Invalid("adjusted and adjusting terms overlap"))
    } else {
        Ok(())
    }
}

/// `P_V` with `V = (I - P_T) X_S`; with `T` empty this is `P_{X_S}`.
pub fn adjusted_projector(x: &ModelMatrix, s: &[Term], t: &[Term]) -> Result<RationalMatrix> {
    check_disjoint(s, t)?;
    let xs = x.columns(s)?;
    if t.is_empty() {
        return Ok(projector(&xs));
    }
    let pt = projector(&x.columns(t)?);
    let v = RationalMatrix::identity(pt.rows()).sub(&pt).mul(&xs);
    Ok(projector(&v))
}

fn check_response(x: &ModelMatrix, y: &[Rational]) -> Result<()> {
    if y.len() != x.matrix.rows() {
        return Err(Error::DimensionMismatch {
            expected: x.matrix.rows(),
            found: y.len(),
        });
    }
    Ok(())
}

/// `SS_{S;T} = y' P_V y` with `V = (I - P_T) X_S`.
pub fn adjusted_ss(y: &[Rational], x: &ModelMatrix, s: &[Term], t: &[Term]) -> Result<Rational> {
    check_response(x, y)?;
    Ok(adjusted_projector(x, s, t)?.quadratic_form(y))
}

/// `T' R^{-1} T - G^2/n`, where `T` holds the level totals of `a` and `R`
/// its replications. Unobserved levels contribute nothing.
pub fn unadjusted_ss_closed_form(y: &[Rational], plan: &Plan, a: &Pencil) -> Result<Rational> {
    if y.len() != plan.n() {
        return Err(Error::DimensionMismatch {
            expected: plan.n(),
            found: y.len(),
        });
    }
    let r = replication_vector(plan, a)?;
    let mut totals: Vec<Rational> = r.iter().map(|_| Rational::zero()).collect();
    for (x, yu) in plan.runs().zip(y) {
        totals[a.level_unchecked(x) as usize] += yu;
    }
    let grand: Rational = y.iter().sum();
    let mut ss = Rational::zero();
    for (t, &ri) in totals.iter().zip(&r) {
        if ri > 0 {
            ss += t * t / rat(ri);
        }
    }
    Ok(ss - &grand * &grand / rat(plan.n() as i64))
}

/// Sum of squares for the pencil `a` adjusted for the pencils after it in
/// model order, the blocks and the mean.
pub fn sequential_ss(y: &[Rational], x: &ModelMatrix, a: &Pencil) -> Result<Rational> {
    check_response(x, y)?;
    let me = Term::Effect(a.clone());
    let pos = x
        .groups
        .iter()
        .position(|(t, _)| *t == me)
        .ok_or(Error::Invalid("term is not in the model matrix"))?;
    let mut later: Vec<Term> = x.groups[pos + 1..]
        .iter()
        .filter(|(t, _)| matches!(t, Term::Effect(_)))
        .map(|(t, _)| t.clone())
        .collect();
    if x.group(&Term::Blocks).is_some() {
        later.push(Term::Blocks);
    }
    later.push(Term::Mean);
    adjusted_ss(y, x, &[me], &later)
}

/// Both sides of the two equivalences for one pencil `i`: sums of squares
/// adjusted for everything versus for the mean alone, and versus for the
/// blocks alone, each against its incidence condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CondOrthCheck {
    /// `SS_{i;all} = SS_{i;mean}` for every response.
    pub ss_equal_a: bool,
    /// Proportional frequencies of `i` with every other model pencil and
    /// with the block factor.
    pub pfc_all: bool,
    /// `SS_{i;all} = SS_{i;blocks}` for every response.
    pub ss_equal_b: bool,
    /// `k N_{ij} = L_i L_j'` for every other model pencil `j`.
    pub otb_all: bool,
}

impl CondOrthCheck {
    pub fn consistent(&self) -> bool {
        self.ss_equal_a == self.pfc_all && self.ss_equal_b == self.otb_all
    }
}

pub fn check_thm_cond_orth(plan: &Plan, model: &EffectModel, i: &Pencil) -> Result<CondOrthCheck> {
    if !model.contains(i) {
        return Err(Error::Invalid("pencil is not in the model"));
    }
    let x = design_matrix(plan, model, true)?;
    let me = [Term::Effect(i.clone())];
    let mut others = alloc::vec![Term::Mean, Term::Blocks];
    others.extend(model.iter().filter(|p| *p != i).map(|p| Term::Effect(p.clone())));
    let p_all = adjusted_projector(&x, &me, &others)?;
    let p_mean = adjusted_projector(&x, &me, &[Term::Mean])?;
    let p_blocks = adjusted_projector(&x, &me, &[Term::Blocks])?;

    let n = plan.n() as i64;
    let k = plan.k() as i64;
    let r_i = replication_vector(plan, i)?;
    let l_i = effect_block_matrix(plan, i)?;
    let block_reps = alloc::vec![k; plan.b()];
    let mut pfc_all = l_i.scale(n) == IntMatrix::outer(&r_i, &block_reps);
    let mut otb_all = true;
    for j in model.iter().filter(|p| *p != i) {
        let nij = incidence_matrix(plan, i, j)?;
        let r_j = replication_vector(plan, j)?;
        pfc_all &= nij.scale(n) == IntMatrix::outer(&r_i, &r_j);
        otb_all &= nij.scale(k) == l_i.mul(&effect_block_matrix(plan, j)?.transpose());
    }
    Ok(CondOrthCheck {
        ss_equal_a: p_all == p_mean,
        pfc_all,
        ss_equal_b: p_all == p_blocks,
        otb_all,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Estimable,
    PartiallyEstimable,
    NotEstimable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Estimable => "Estimable",
            Verdict::PartiallyEstimable => "PartiallyEstimable",
            Verdict::NotEstimable => "NotEstimable",
        }
    }

    fn from_df(df: usize, s: usize) -> Self {
        if df + 1 == s {
            Verdict::Estimable
        } else if df == 0 {
            Verdict::NotEstimable
        } else {
            Verdict::PartiallyEstimable
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilEstimate {
    pub pencil: Pencil,
    pub verdict: Verdict,
    /// Number of independent estimable level contrasts, `0..=s-1`.
    pub df: usize,
}

/// Estimability of every model pencil under the full model with blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimabilityReport {
    pub entries: Vec<PencilEstimate>,
    /// Rank of `[mean | blocks | all pencils]`.
    pub model_rank: usize,
    /// Rank of `[mean | blocks]`.
    pub block_rank: usize,
    pub n: usize,
}

impl EstimabilityReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.entries.iter().filter(|e| e.verdict == v).count()
    }

    pub fn estimable(&self) -> usize {
        self.count(Verdict::Estimable)
    }

    pub fn partial(&self) -> usize {
        self.count(Verdict::PartiallyEstimable)
    }

    pub fn lost(&self) -> usize {
        self.count(Verdict::NotEstimable)
    }

    pub fn total_df(&self) -> usize {
        self.entries.iter().map(|e| e.df).sum()
    }

    pub fn get(&self, p: &Pencil) -> Option<&PencilEstimate> {
        self.entries.iter().find(|e| &e.pencil == p)
    }

    pub fn with_verdict(&self, v: Verdict) -> impl Iterator<Item = &Pencil> + '_ {
        self.entries.iter().filter(move |e| e.verdict == v).map(|e| &e.pencil)
    }
}

/// A level contrast `c` of pencil `a` is estimable iff the coefficient
/// vector carrying `c` on `a`'s columns is orthogonal to the null space of
/// the model matrix. The null space always contains `(1, 0, ..., -1_s, ...)`,
/// so the estimable contrasts of `a` have dimension `s - rank(Z_a)` where
/// `Z_a` is the null-space basis restricted to `a`'s rows.
pub fn estimable_pencils(plan: &Plan, model: &EffectModel) -> Result<EstimabilityReport> {
    let x = design_matrix(plan, model, true)?;
    let xr = x.to_rational();
    let z = xr.nullspace();
    let s = plan.field().order() as usize;
    let mut entries = Vec::with_capacity(model.len());
    for p in model {
        let range: Vec<usize> = x.group(&Term::Effect(p.clone())).expect("model pencil").collect();
        let rank = z.select_rows(&range).rank();
        let df = s - rank;
        entries.push(PencilEstimate {
            pencil: p.clone(),
            verdict: Verdict::from_df(df, s),
            df,
        });
    }
    let block_cols: Vec<usize> = (0..1 + plan.b()).collect();
    Ok(EstimabilityReport {
        entries,
        model_rank: xr.cols() - z.cols(),
        block_rank: xr.select_columns(&block_cols).rank(),
        n: plan.n(),
    })
}

/// Estimable df of `a` by a second route:
/// `rank(X) + (s-1) - rank([X; C_a])`, where the rows of `C_a` are the
/// contrasts `e_α - e_{α+1}` on `a`'s columns.
pub fn contrast_df(x: &ModelMatrix, a: &Pencil) -> Result<usize> {
    let range = x
        .group(&Term::Effect(a.clone()))
        .ok_or(Error::Invalid("term is not in the model matrix"))?;
    let xr = x.to_rational();
    let s = range.len();
    let mut c = RationalMatrix::zeros(s - 1, xr.cols());
    for row in 0..s - 1 {
        c.set(row, range.start + row, rat(1));
        c.set(row, range.start + row + 1, rat(-1));
    }
    Ok(xr.rank() + (s - 1) - xr.vstack(&c).rank())
}

/// Pencils taken in model order, keeping each one whose columns raise the
/// rank of the blocks-plus-kept model by the full `s - 1`. Every kept pencil
/// is then estimable in the model made of the kept pencils.
pub fn greedy_joint_submodel(plan: &Plan, model: &EffectModel) -> Result<Vec<Pencil>> {
    let x = design_matrix(plan, model, true)?;
    let xr = x.to_rational();
    let s = plan.field().order() as usize;
    let mut cols: Vec<usize> = (0..1 + plan.b()).collect();
    let mut rank = xr.select_columns(&cols).rank();
    let mut kept = Vec::new();
    for p in model {
        let range = x.group(&Term::Effect(p.clone())).expect("model pencil");
        let mut trial = cols.clone();
        trial.extend(range);
        let r = xr.select_columns(&trial).rank();
        if r == rank + s - 1 {
            cols = trial;
            rank = r;
            kept.push(p.clone());
        }
    }
    Ok(kept)
}
