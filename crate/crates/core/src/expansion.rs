//! Expansion of a blocked plan along a subspace `V`, the closed forms for the
//! incidence data of the expanded plan, and the effect classes relative to
//! `V` that govern which relations survive expansion.
//!
//! The expanded plan has one block `v + B_j` for every base block `B_j` and
//! every `v` in `V`, listed with `j` outer and `v` in [`Subspace::members`]
//! order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::effects::{all_pencils, Pencil};
use crate::error::{Error, Result};
use crate::field::{Field, FieldVector, Subspace};
use crate::incidence::{effect_block_matrix, incidence_matrix, replication_vector, IncidenceBundle, IntMatrix};
use crate::plan::Plan;
use crate::relations::aliased_check;

/// Largest subspace dimension [`expand`] accepts.
pub const MAX_EXPANSION_DIM: usize = 8;

fn check_space(plan: &Plan, v: &Subspace) -> Result<()> {
    if v.field() != plan.field() {
        return Err(Error::FieldMismatch {
            expected: plan.field().order(),
            found: v.field().order(),
        });
    }
    if v.ambient_dim() != plan.m() {
        return Err(Error::DimensionMismatch {
            expected: plan.m(),
            found: v.ambient_dim(),
        });
    }
    Ok(())
}

fn check_vec(v: &Subspace, a: &FieldVector) -> Result<()> {
    if a.field() != v.field() {
        return Err(Error::FieldMismatch {
            expected: v.field().order(),
            found: a.field().order(),
        });
    }
    if a.len() != v.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: v.ambient_dim(),
            found: a.len(),
        });
    }
    if a.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// `s^e` as an `i64`, or `TooLarge`.
fn power(field: Field, e: usize) -> Result<i64> {
    let s = field.order() as i64;
    s.checked_pow(e as u32).ok_or(Error::TooLarge {
        what: "s^t",
        size: field.pow(e),
        limit: i64::MAX as u128,
    })
}

/// `s^{t-d}` for `d <= t`, else 0 is never needed; callers pass `d <= t`.
fn scale_factor(v: &Subspace, d: usize) -> Result<i64> {
    power(v.field(), v.dim() - d)
}

pub fn expand(plan: &Plan, v: &Subspace) -> Result<Plan> {
    check_space(plan, v)?;
    if v.dim() > MAX_EXPANSION_DIM {
        return Err(Error::TooLarge {
            what: "expansion subspace",
            size: v.size(),
            limit: v.field().pow(MAX_EXPANSION_DIM),
        });
    }
    let members = v.members()?;
    let mut blocks = Vec::with_capacity(plan.b() * members.len());
    for block in plan.blocks() {
        for shift in &members {
            blocks.push(block.iter().map(|x| shift.add_unchecked(x)).collect());
        }
    }
    Plan::new(plan.field(), plan.m(), blocks)
}

/// True when `a` lies in `V⊥`.
pub fn in_perp(v: &Subspace, a: &FieldVector) -> bool {
    v.annihilated_by(a)
}

/// The `c != 0` with `a - c b` in `V⊥`, when one exists. For `a, b` outside
/// `V⊥` this exists exactly when the two share an effect class.
pub fn class_multiplier(v: &Subspace, a: &FieldVector, b: &FieldVector) -> Option<u8> {
    let f = v.field();
    let av: Vec<u8> = v.basis().iter().map(|x| x.dot_unchecked(a)).collect();
    let bv: Vec<u8> = v.basis().iter().map(|x| x.dot_unchecked(b)).collect();
    (1..f.order()).find(|&c| av.iter().zip(&bv).all(|(&x, &y)| x == f.mul(c, y)))
}

/// `rref(a ∪ V⊥)`, the subspace `<a> + V⊥`.
pub fn class_key(v: &Subspace, perp: &Subspace, a: &FieldVector) -> Subspace {
    let mut vs: Vec<FieldVector> = perp.basis().to_vec();
    vs.push(a.clone());
    Subspace::span(v.field(), v.ambient_dim(), &vs).expect("dimensions checked")
}

/// `<a> + V⊥ = <b> + V⊥`, decided by comparing canonical bases.
pub fn same_class(v: &Subspace, a: &FieldVector, b: &FieldVector) -> Result<bool> {
    check_vec(v, a)?;
    check_vec(v, b)?;
    let perp = v.orthocomplement();
    Ok(class_key(v, &perp, a) == class_key(v, &perp, b))
}

/// `|{v ∈ V : a'v = α, b'v = β}|` by case analysis on how `a` and `b` meet
/// `V⊥`.
pub fn slice_count(v: &Subspace, a: &FieldVector, b: &FieldVector, alpha: u8, beta: u8) -> Result<i64> {
    check_vec(v, a)?;
    check_vec(v, b)?;
    let f = v.field();
    if alpha >= f.order() || beta >= f.order() {
        return Err(Error::Invalid("level outside the field"));
    }
    let (pa, pb) = (in_perp(v, a), in_perp(v, b));
    if (pa && alpha != 0) || (pb && beta != 0) {
        return Ok(0);
    }
    match (pa, pb) {
        (true, true) => scale_factor(v, 0),
        (true, false) | (false, true) => scale_factor(v, 1),
        (false, false) => match class_multiplier(v, a, b) {
            Some(c) if alpha == f.mul(c, beta) => scale_factor(v, 1),
            Some(_) => Ok(0),
            None => scale_factor(v, 2),
        },
    }
}

/// Brute-force `slice_count` over the members of `V`.
pub fn slice_count_direct(v: &Subspace, a: &FieldVector, b: &FieldVector, alpha: u8, beta: u8) -> Result<i64> {
    check_vec(v, a)?;
    check_vec(v, b)?;
    Ok(v.members()?
        .iter()
        .filter(|x| x.dot_unchecked(a) == alpha && x.dot_unchecked(b) == beta)
        .count() as i64)
}

/// `M̃_{αβ} = Σ_{v∈V} M_{α−a'v, β−b'v}` through the structured cases.
pub fn transform_incidence(m: &IntMatrix, v: &Subspace, a: &FieldVector, b: &FieldVector) -> Result<IntMatrix> {
    check_vec(v, a)?;
    check_vec(v, b)?;
    let f = v.field();
    let s = f.order() as usize;
    if m.rows() != s || m.cols() != s {
        return Err(Error::DimensionMismatch {
            expected: s,
            found: if m.rows() != s { m.rows() } else { m.cols() },
        });
    }
    let (pa, pb) = (in_perp(v, a), in_perp(v, b));
    let out = match (pa, pb) {
        (true, true) => m.scale(scale_factor(v, 0)?),
        (true, false) => {
            let c = scale_factor(v, 1)?;
            let rows = m.row_sums();
            let mut out = IntMatrix::zeros(s, s);
            for (alpha, &r) in rows.iter().enumerate() {
                for beta in 0..s {
                    out.set(alpha, beta, c * r);
                }
            }
            out
        }
        (false, true) => {
            let c = scale_factor(v, 1)?;
            let cols = m.col_sums();
            let mut out = IntMatrix::zeros(s, s);
            for alpha in 0..s {
                for (beta, &col) in cols.iter().enumerate() {
                    out.set(alpha, beta, c * col);
                }
            }
            out
        }
        (false, false) => match class_multiplier(v, a, b) {
            Some(c) => {
                let factor = scale_factor(v, 1)?;
                let mut out = IntMatrix::zeros(s, s);
                for alpha in 0..s as u8 {
                    for beta in 0..s as u8 {
                        let sum: i64 = f
                            .elements()
                            .map(|u| m.get(f.sub(alpha, f.mul(c, u)) as usize, f.sub(beta, u) as usize))
                            .sum();
                        out.set(alpha as usize, beta as usize, factor * sum);
                    }
                }
                out
            }
            None => IntMatrix::filled(s, s, scale_factor(v, 2)? * m.total()),
        },
    };
    Ok(out)
}

/// The defining double sum of [`transform_incidence`], over members of `V`.
pub fn transform_incidence_direct(
    m: &IntMatrix,
    v: &Subspace,
    a: &FieldVector,
    b: &FieldVector,
) -> Result<IntMatrix> {
    check_vec(v, a)?;
    check_vec(v, b)?;
    let f = v.field();
    let s = f.order() as usize;
    let mut out = IntMatrix::zeros(s, s);
    for x in v.members()? {
        let (da, db) = (x.dot_unchecked(a), x.dot_unchecked(b));
        for alpha in 0..s as u8 {
            for beta in 0..s as u8 {
                out.add_at(
                    alpha as usize,
                    beta as usize,
                    m.get(f.sub(alpha, da) as usize, f.sub(beta, db) as usize),
                );
            }
        }
    }
    Ok(out)
}

/// Replication vector of `a` on the expanded plan, from the base plan only.
pub fn expanded_replication(plan: &Plan, v: &Subspace, a: &Pencil) -> Result<Vec<i64>> {
    check_space(plan, v)?;
    let r = replication_vector(plan, a)?;
    if in_perp(v, a.vector()) {
        let c = scale_factor(v, 0)?;
        Ok(r.iter().map(|&x| c * x).collect())
    } else {
        let c = scale_factor(v, 1)? * plan.n() as i64;
        Ok(alloc::vec![c; r.len()])
    }
}

/// Effect-versus-block incidence of the expanded plan: column `(j, v)` is
/// column `j` of the base `L^a` shifted by `a'v`.
pub fn expanded_block_matrix(plan: &Plan, v: &Subspace, a: &Pencil) -> Result<IntMatrix> {
    check_space(plan, v)?;
    let f = plan.field();
    let s = f.order() as usize;
    let l = effect_block_matrix(plan, a)?;
    let members = v.members()?;
    let shifts: Vec<u8> = members.iter().map(|x| x.dot_unchecked(a.vector())).collect();
    let mut out = IntMatrix::zeros(s, plan.b() * members.len());
    for j in 0..plan.b() {
        for (vi, &d) in shifts.iter().enumerate() {
            let col = j * members.len() + vi;
            for alpha in 0..s as u8 {
                out.set(alpha as usize, col, l.get(f.sub(alpha, d) as usize, j));
            }
        }
    }
    Ok(out)
}

/// Incidence data of `expand(plan, V)` from the base plan's incidence data,
/// without listing the expanded runs.
pub fn expanded_incidence(plan: &Plan, v: &Subspace, a: &Pencil, b: &Pencil) -> Result<IncidenceBundle> {
    check_space(plan, v)?;
    let n = incidence_matrix(plan, a, b)?;
    Ok(IncidenceBundle {
        a: a.clone(),
        b: b.clone(),
        r_a: expanded_replication(plan, v, a)?,
        r_b: expanded_replication(plan, v, b)?,
        n_ab: transform_incidence(&n, v, a.vector(), b.vector())?,
        l_a: expanded_block_matrix(plan, v, a)?,
        l_b: expanded_block_matrix(plan, v, b)?,
    })
}

/// The partition of all pencils of `F_s^m` into effect classes relative to
/// `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectClassPartition {
    pub v: Subspace,
    /// Classes ordered by their first pencil; the pencils inside `V⊥`, if
    /// any, form one class.
    pub classes: Vec<Vec<Pencil>>,
}

impl EffectClassPartition {
    pub fn class_of(&self, p: &Pencil) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(p))
    }
}

pub fn effect_classes(v: &Subspace) -> EffectClassPartition {
    let perp = v.orthocomplement();
    let mut groups: BTreeMap<Subspace, Vec<Pencil>> = BTreeMap::new();
    for p in all_pencils(v.field(), v.ambient_dim()) {
        groups.entry(class_key(v, &perp, p.vector())).or_default().push(p);
    }
    let mut classes: Vec<Vec<Pencil>> = groups.into_values().collect();
    classes.sort_by(|x, y| x[0].cmp(&y[0]));
    EffectClassPartition { v: v.clone(), classes }
}

/// Predicted relation of a pair after expanding along `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prediction {
    /// Different effect classes: orthogonal through the block factor.
    Otb,
    /// Both in `V⊥`: every relation is as in the base plan.
    SameAsBase,
    /// Same class, aliased in the base plan, alias broken by the expansion.
    NotAliased,
    NoClaim,
}

impl Prediction {
    pub fn as_str(self) -> &'static str {
        match self {
            Prediction::Otb => "OTB",
            Prediction::SameAsBase => "SameAsBase",
            Prediction::NotAliased => "NotAliased",
            Prediction::NoClaim => "NoClaim",
        }
    }
}

/// Predicts the relation of `a` and `b` in `expand(plan, V)`.
///
/// Inside one class outside `V⊥` the alias is broken only when the pencil
/// `a - c b` (with `a - c b` in `V⊥`) is not constant on the base plan; if
/// it is constant, every expanded run satisfies `a'x = c b'x + d` and the
/// pair stays aliased, so no claim is made.
pub fn predict_relation(plan: &Plan, v: &Subspace, a: &Pencil, b: &Pencil) -> Result<Prediction> {
    check_space(plan, v)?;
    if a == b {
        return Err(Error::Invalid("effects of a pair must be distinct"));
    }
    let (av, bv) = (a.vector(), b.vector());
    check_vec(v, av)?;
    check_vec(v, bv)?;
    let (pa, pb) = (in_perp(v, av), in_perp(v, bv));
    if pa && pb {
        return Ok(Prediction::SameAsBase);
    }
    if pa || pb {
        return Ok(Prediction::Otb);
    }
    let Some(c) = class_multiplier(v, av, bv) else {
        return Ok(Prediction::Otb);
    };
    if v.is_zero() || !aliased_check(plan, a, b)? {
        return Ok(Prediction::NoClaim);
    }
    let diff = av.sub_scaled(c, bv)?;
    let mut levels = plan.runs().map(|x| diff.dot_unchecked(x));
    let first = levels.next();
    if levels.any(|l| Some(l) != first) {
        Ok(Prediction::NotAliased)
    } else {
        Ok(Prediction::NoClaim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_subspace, plan_p, plan_p3};
    use crate::relations::otb_check;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn v(text: &str) -> FieldVector {
        FieldVector::parse(f3(), text).unwrap()
    }

    fn pc(name: &str, m: usize) -> Pencil {
        Pencil::parse(name, m, f3()).unwrap()
    }

    #[test]
    fn expand_shapes() {
        let p3 = expand(&plan_p3(), &catalog_subspace("V3").unwrap()).unwrap();
        assert_eq!((p3.b(), p3.k()), (6, 4));
        let p = expand(&plan_p(), &catalog_subspace("V4").unwrap()).unwrap();
        assert_eq!((p.b(), p.k()), (18, 4));
        assert_eq!(expand(&plan_p(), &Subspace::zero(f3(), 4)).unwrap(), plan_p());
        assert!(expand(&plan_p(), &catalog_subspace("V3").unwrap()).is_err());
    }

    #[test]
    fn expand_block_order() {
        let base = plan_p3();
        let sp = Subspace::parse(f3(), 3, "100").unwrap();
        let e = expand(&base, &sp).unwrap();
        // (j, v) with v = 000, 100, 200
        assert_eq!(e.blocks()[0], base.blocks()[0]);
        assert_eq!(e.blocks()[1][0], base.blocks()[0][0].add(&v("100")).unwrap());
        assert_eq!(e.blocks()[3], base.blocks()[1]);
    }

    #[test]
    fn slice_count_cases() {
        let sp = Subspace::parse(f3(), 4, "0102;1010").unwrap();
        let perp = sp.orthocomplement();
        let a = perp.basis()[0].clone();
        let b = perp.basis()[1].clone();
        assert_eq!(slice_count(&sp, &a, &v("1000"), 1, 0).unwrap(), 0);
        assert_eq!(slice_count(&sp, &a, &b, 0, 0).unwrap(), 9);
        assert_eq!(slice_count(&sp, &v("0010"), &v("0001"), 2, 1).unwrap(), 1);
        assert_eq!(slice_count(&sp, &a, &v("1000"), 0, 2).unwrap(), 3);
    }

    #[test]
    fn transform_cases() {
        let m = IntMatrix::from_rows(&[&[1, 0, 2], &[0, 3, 0], &[1, 1, 0]]);
        let sp = Subspace::parse(f3(), 3, "100").unwrap();
        // both in V-perp
        let t = transform_incidence(&m, &sp, &v("010"), &v("001")).unwrap();
        assert_eq!(t, m.scale(3));
        // a outside, b inside, t = 1
        let t = transform_incidence(&m, &sp, &v("100"), &v("010")).unwrap();
        for i in 0..3 {
            assert_eq!(t.row(i), m.col_sums().as_slice());
        }
        let sp2 = Subspace::parse(f3(), 3, "100;010").unwrap();
        let t = transform_incidence(&m, &sp2, &v("100"), &v("010")).unwrap();
        assert_eq!(t, IntMatrix::filled(3, 3, 8));
        for (a, b) in [("100", "120"), ("110", "100"), ("111", "122")] {
            assert_eq!(
                transform_incidence(&m, &sp2, &v(a), &v(b)).unwrap(),
                transform_incidence_direct(&m, &sp2, &v(a), &v(b)).unwrap()
            );
        }
    }

    #[test]
    fn expanded_replication_p3() {
        let sp = catalog_subspace("V3").unwrap();
        assert_eq!(expanded_replication(&plan_p3(), &sp, &pc("A", 3)).unwrap(), [8, 8, 8]);
    }

    #[test]
    fn closed_form_matches_direct_on_p() {
        let base = plan_p();
        let sp = catalog_subspace("V4").unwrap();
        let e = expand(&base, &sp).unwrap();
        for (a, b) in [("A", "B"), ("C", "D"), ("AB^2", "CD"), ("B", "BD^2")] {
            let (a, b) = (pc(a, 4), pc(b, 4));
            assert_eq!(expanded_incidence(&base, &sp, &a, &b).unwrap(), IncidenceBundle::compute(&e, &a, &b).unwrap());
        }
    }

    #[test]
    fn class_counts() {
        let sp = Subspace::parse(f3(), 3, "100").unwrap();
        let classes = effect_classes(&sp);
        assert_eq!(classes.classes.len(), 2);
        let sp = catalog_subspace("V4").unwrap();
        let classes = effect_classes(&sp);
        assert_eq!(classes.classes.len(), 5);
        assert_eq!(classes.classes.iter().map(Vec::len).sum::<usize>(), 40);
    }

    #[test]
    fn predictions_on_p() {
        let base = plan_p();
        let sp = catalog_subspace("V4").unwrap();
        let e = expand(&base, &sp).unwrap();
        assert_eq!(predict_relation(&base, &sp, &pc("C", 4), &pc("D", 4)).unwrap(), Prediction::Otb);
        assert!(otb_check(&e, &pc("C", 4), &pc("D", 4)).unwrap());
        let zero = Subspace::zero(f3(), 4);
        assert_eq!(
            predict_relation(&base, &zero, &pc("A", 4), &pc("B", 4)).unwrap(),
            Prediction::SameAsBase
        );
        let ps = crate::effects::EffectModel::mains_and_2fi(4, f3());
        let mut broken = 0;
        for a in &ps {
            for b in &ps {
                if a < b && predict_relation(&base, &sp, a, b).unwrap() == Prediction::NotAliased {
                    assert!(!aliased_check(&e, a, b).unwrap());
                    broken += 1;
                }
            }
        }
        assert!(broken > 0);
    }

    #[test]
    fn constant_difference_keeps_alias() {
        // single-run base plan: every pair is aliased and every difference constant
        let base = Plan::new(f3(), 2, alloc::vec![alloc::vec![v("00")]]).unwrap();
        let sp = Subspace::parse(f3(), 2, "11").unwrap();
        let (a, b) = (pc("A", 2), pc("B", 2));
        assert_eq!(predict_relation(&base, &sp, &a, &b).unwrap(), Prediction::NoClaim);
        assert!(aliased_check(&expand(&base, &sp).unwrap(), &a, &b).unwrap());
    }
}
