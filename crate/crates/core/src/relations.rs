//! Relations between effects in a blocked plan: aliasing, orthogonality
//! through the block factor (OTB), proportional frequencies (PFC), and the
//! relation of each effect to the block factor itself.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::effects::{EffectModel, Pencil};
use crate::error::{Error, Result};
use crate::incidence::{IncidenceBundle, IntMatrix};
use crate::plan::Plan;

/// How an effect sits relative to the block factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockRelation {
    /// One level carries every run.
    ConstantOnPlan,
    /// Constant within each block, not across blocks.
    ConfoundedWithBlock,
    /// Some block meets two or more levels.
    VariesWithinBlocks,
}

impl BlockRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            BlockRelation::ConstantOnPlan => "ConstantOnPlan",
            BlockRelation::ConfoundedWithBlock => "ConfoundedWithBlock",
            BlockRelation::VariesWithinBlocks => "VariesWithinBlocks",
        }
    }

    /// True for both constant and confounded effects.
    pub fn is_constant_within_blocks(self) -> bool {
        !matches!(self, BlockRelation::VariesWithinBlocks)
    }
}

impl fmt::Display for BlockRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relation of an ordered pair of distinct effects, with the incidence data
/// it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRelation {
    pub aliased: bool,
    pub otb: bool,
    /// Only reported when neither effect is constant on the plan.
    pub pfc: bool,
    /// Some observed level of one effect pins the level of the other, yet the
    /// pair is neither aliased nor OTB.
    pub partial_alias: bool,
    pub evidence: IncidenceBundle,
}

impl PairRelation {
    pub fn compute(plan: &Plan, a: &Pencil, b: &Pencil) -> Result<Self> {
        let evidence = IncidenceBundle::compute(plan, a, b)?;
        Ok(Self::from_bundle(plan, evidence))
    }

    pub fn from_bundle(plan: &Plan, evidence: IncidenceBundle) -> Self {
        let n = plan.n() as i64;
        let k = plan.k() as i64;
        let aliased = is_alias_pattern(&evidence.n_ab);
        let otb = otb_holds(&evidence, k);
        let constant = |r: &[i64]| r.contains(&n);
        let pfc = !constant(&evidence.r_a) && !constant(&evidence.r_b) && pfc_holds(&evidence, n);
        let partial_alias = !aliased && !otb && has_pinned_level(&evidence.n_ab);
        PairRelation {
            aliased,
            otb,
            pfc,
            partial_alias,
            evidence,
        }
    }

    pub fn non_orthogonal(&self) -> bool {
        !self.otb && !self.aliased
    }

    /// Flags in a fixed order, e.g. `Aliased`, `OTB,PFC`,
    /// `NonOrthogonal(partial-alias)`.
    pub fn flags(&self) -> String {
        let mut parts: Vec<&str> = Vec::new();
        if self.aliased {
            parts.push("Aliased");
        }
        if self.otb {
            parts.push("OTB");
        }
        if self.pfc {
            parts.push("PFC");
        }
        if self.non_orthogonal() {
            parts.push(if self.partial_alias {
                "NonOrthogonal(partial-alias)"
            } else {
                "NonOrthogonal"
            });
        }
        parts.join(",")
    }
}

fn otb_holds(e: &IncidenceBundle, k: i64) -> bool {
    e.n_ab.scale(k) == e.l_a.mul(&e.l_b.transpose())
}

fn pfc_holds(e: &IncidenceBundle, n: i64) -> bool {
    e.n_ab.scale(n) == IntMatrix::outer(&e.r_a, &e.r_b)
}

fn is_alias_pattern(n: &IntMatrix) -> bool {
    let t = n.transpose();
    let at_most_one = |m: &IntMatrix| (0..m.rows()).all(|i| m.row(i).iter().filter(|&&x| x != 0).count() <= 1);
    n.total() > 0 && at_most_one(n) && at_most_one(&t)
}

fn has_pinned_level(n: &IntMatrix) -> bool {
    let t = n.transpose();
    let pinned = |m: &IntMatrix| (0..m.rows()).any(|i| m.row(i).iter().filter(|&&x| x != 0).count() == 1);
    pinned(n) || pinned(&t)
}

fn check_distinct(a: &Pencil, b: &Pencil) -> Result<()> {
    if a == b {
        Err(Error::Invalid("effects of a pair must be distinct"))
    } else {
        Ok(())
    }
}

/// `k N^{ab} = L^a (L^b)'`.
pub fn otb_check(plan: &Plan, a: &Pencil, b: &Pencil) -> Result<bool> {
    check_distinct(a, b)?;
    let e = IncidenceBundle::compute(plan, a, b)?;
    Ok(otb_holds(&e, plan.k() as i64))
}

/// `n N^{ab} = r^a (r^b)'`.
pub fn pfc_check(plan: &Plan, a: &Pencil, b: &Pencil) -> Result<bool> {
    check_distinct(a, b)?;
    let e = IncidenceBundle::compute(plan, a, b)?;
    Ok(pfc_holds(&e, plan.n() as i64))
}

/// At most one nonzero per row and per column of `N^{ab}`.
pub fn aliased_check(plan: &Plan, a: &Pencil, b: &Pencil) -> Result<bool> {
    check_distinct(a, b)?;
    Ok(is_alias_pattern(&crate::incidence::incidence_matrix(plan, a, b)?))
}

pub fn block_relation(plan: &Plan, a: &Pencil) -> Result<BlockRelation> {
    let l = crate::incidence::effect_block_matrix(plan, a)?;
    Ok(block_relation_from(&l, plan.n() as i64))
}

pub(crate) fn block_relation_from(l: &IntMatrix, n: i64) -> BlockRelation {
    if l.row_sums().contains(&n) {
        return BlockRelation::ConstantOnPlan;
    }
    let t = l.transpose();
    if (0..t.rows()).all(|j| t.row(j).iter().filter(|&&x| x != 0).count() == 1) {
        BlockRelation::ConfoundedWithBlock
    } else {
        BlockRelation::VariesWithinBlocks
    }
}

/// Alias classes of the model pencils that vary within blocks. Pencils that
/// are constant on the plan or confounded with blocks are listed apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AliasClasses {
    pub classes: Vec<Vec<Pencil>>,
    pub constant: Vec<Pencil>,
    pub confounded: Vec<Pencil>,
}

impl AliasClasses {
    pub fn class_of(&self, p: &Pencil) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(p))
    }
}

pub fn alias_classes(plan: &Plan, model: &EffectModel) -> Result<AliasClasses> {
    let mut constant = Vec::new();
    let mut confounded = Vec::new();
    let mut kept = Vec::new();
    for p in model {
        match block_relation(plan, p)? {
            BlockRelation::ConstantOnPlan => constant.push(p.clone()),
            BlockRelation::ConfoundedWithBlock => confounded.push(p.clone()),
            BlockRelation::VariesWithinBlocks => kept.push(p.clone()),
        }
    }
    let mut parent: Vec<usize> = (0..kept.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..kept.len() {
        for j in i + 1..kept.len() {
            if aliased_check(plan, &kept[i], &kept[j])? {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut classes: Vec<Vec<Pencil>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = alloc::vec![None; kept.len()];
    for i in 0..kept.len() {
        let r = find(&mut parent, i);
        let slot = *root_slot[r].get_or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(kept[i].clone());
    }
    Ok(AliasClasses {
        classes,
        constant,
        confounded,
    })
}

/// All pairwise relations and block relations over a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    pub model: EffectModel,
    /// Upper triangle, row-major: `(0,1), (0,2), ..., (1,2), ...`.
    pairs: Vec<PairRelation>,
    pub blocks: Vec<BlockRelation>,
}

impl RelationMatrix {
    /// Relation of model pencils `i` and `j` (`i != j`, either order).
    pub fn get(&self, i: usize, j: usize) -> &PairRelation {
        assert!(i != j, "diagonal has no pair relation");
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let len = self.model.len();
        let offset = i * (2 * len - i - 1) / 2;
        &self.pairs[offset + (j - i - 1)]
    }

    /// `(i, j, relation)` for `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &PairRelation)> + '_ {
        let len = self.model.len();
        (0..len)
            .flat_map(move |i| (i + 1..len).map(move |j| (i, j)))
            .zip(self.pairs.iter())
            .map(|((i, j), r)| (i, j, r))
    }
}

pub fn relation_matrix(plan: &Plan, model: &EffectModel) -> Result<RelationMatrix> {
    let ps = model.pencils();
    let mut pairs = Vec::with_capacity(ps.len() * ps.len().saturating_sub(1) / 2);
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            pairs.push(PairRelation::compute(plan, &ps[i], &ps[j])?);
        }
    }
    let blocks = ps
        .iter()
        .map(|p| block_relation(plan, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(RelationMatrix {
        model: model.clone(),
        pairs,
        blocks,
    })
}

/// Class-level orthogonality graph: edge `(i, j)` with `i < j` iff every
/// pencil of class `i` is OTB with every pencil of class `j`.
pub fn class_graph(plan: &Plan, classes: &[Vec<Pencil>]) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let mut all = true;
            'outer: for a in &classes[i] {
                for b in &classes[j] {
                    if a == b || !otb_check(plan, a, b)? {
                        all = false;
                        break 'outer;
                    }
                }
            }
            if all {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

/// Outcome of checking that a partition is inter-class orthogonal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartitionCheck {
    /// Cross-class pairs that are not OTB, with their class indices.
    pub violations: Vec<(usize, Pencil, usize, Pencil)>,
    /// Pencils listed in more than one class.
    pub duplicates: Vec<Pencil>,
    /// Number of distinct pencils covered.
    pub covered: usize,
}

impl PartitionCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.duplicates.is_empty()
    }
}

pub fn verify_partition(plan: &Plan, classes: &[Vec<Pencil>]) -> Result<PartitionCheck> {
    let mut seen = BTreeSet::new();
    let mut duplicates = BTreeSet::new();
    for p in classes.iter().flatten() {
        if !seen.insert(p.clone()) {
            duplicates.insert(p.clone());
        }
    }
    let mut violations = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            for a in &classes[i] {
                for b in &classes[j] {
                    if a == b || !otb_check(plan, a, b)? {
                        violations.push((i, a.clone(), j, b.clone()));
                    }
                }
            }
        }
    }
    Ok(PartitionCheck {
        violations,
        duplicates: duplicates.into_iter().collect(),
        covered: seen.len(),
    })
}

/// Parses a partition given by effect names.
pub fn parse_partition(plan: &Plan, classes: &[&[&str]]) -> Result<Vec<Vec<Pencil>>> {
    classes
        .iter()
        .map(|c| {
            c.iter()
                .map(|name| {
                    Pencil::parse(name, plan.m(), plan.field())
                        .map_err(|_| Error::UnknownName(String::from(*name)))
                })
                .collect()
        })
        .collect()
}
