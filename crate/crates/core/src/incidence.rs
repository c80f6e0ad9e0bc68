//! Replication vectors and incidence matrices of effects in a plan.
//!
//! Levels index rows and columns in field order `0..s`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::effects::Pencil;
use crate::error::Result;
use crate::plan::Plan;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn filled(rows: usize, cols: usize, value: i64) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_at(i, j, a * other.get(l, j));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn total(&self) -> i64 {
        self.data.iter().sum()
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    /// Outer product `x y'`.
    pub fn outer(x: &[i64], y: &[i64]) -> IntMatrix {
        let mut out = IntMatrix::zeros(x.len(), y.len());
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                out.set(i, j, a * b);
            }
        }
        out
    }
}

/// Bracketed row-major form, e.g. `[[1,1,1],[0,1,1]]`.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `r^a`: number of runs at each level of `a`, counted with multiplicity.
pub fn replication_vector(plan: &Plan, a: &Pencil) -> Result<Vec<i64>> {
    plan.check_vector(a.vector())?;
    let mut r = vec![0i64; plan.field().order() as usize];
    for x in plan.runs() {
        r[a.level_unchecked(x) as usize] += 1;
    }
    Ok(r)
}

/// `N^{ab}`: rows are levels of `a`, columns levels of `b`.
pub fn incidence_matrix(plan: &Plan, a: &Pencil, b: &Pencil) -> Result<IntMatrix> {
    plan.check_vector(a.vector())?;
    plan.check_vector(b.vector())?;
    let s = plan.field().order() as usize;
    let mut n = IntMatrix::zeros(s, s);
    for x in plan.runs() {
        n.add_at(a.level_unchecked(x) as usize, b.level_unchecked(x) as usize, 1);
    }
    Ok(n)
}

/// `L^a`: `s x b` effect-versus-block incidence.
pub fn effect_block_matrix(plan: &Plan, a: &Pencil) -> Result<IntMatrix> {
    plan.check_vector(a.vector())?;
    let s = plan.field().order() as usize;
    let mut l = IntMatrix::zeros(s, plan.b());
    for (j, x) in plan.runs_with_block() {
        l.add_at(a.level_unchecked(x) as usize, j, 1);
    }
    Ok(l)
}

/// Replication and incidence data for a pair of effects in one plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceBundle {
    pub a: Pencil,
    pub b: Pencil,
    pub r_a: Vec<i64>,
    pub r_b: Vec<i64>,
    pub n_ab: IntMatrix,
    pub l_a: IntMatrix,
    pub l_b: IntMatrix,
}

impl IncidenceBundle {
    pub fn compute(plan: &Plan, a: &Pencil, b: &Pencil) -> Result<Self> {
        Ok(IncidenceBundle {
            a: a.clone(),
            b: b.clone(),
            r_a: replication_vector(plan, a)?,
            r_b: replication_vector(plan, b)?,
            n_ab: incidence_matrix(plan, a, b)?,
            l_a: effect_block_matrix(plan, a)?,
            l_b: effect_block_matrix(plan, b)?,
        })
    }

    /// Checks the marginal identities for a plan with `n` runs in blocks of
    /// size `k`: replications sum to `n`, `N 1 = r^a`, `N' 1 = r^b`,
    /// `L 1 = r`, `L' 1 = k 1`, and `L^a (L^b)' 1 = k r^a`.
    pub fn marginals_hold(&self, n: usize, k: usize) -> bool {
        let n = n as i64;
        let k = k as i64;
        let nonneg = self
            .n_ab
            .entries()
            .iter()
            .chain(self.l_a.entries())
            .chain(self.l_b.entries())
            .all(|&x| x >= 0);
        let kr_a: Vec<i64> = self.r_a.iter().map(|&x| k * x).collect();
        nonneg
            && self.r_a.iter().sum::<i64>() == n
            && self.r_b.iter().sum::<i64>() == n
            && self.n_ab.row_sums() == self.r_a
            && self.n_ab.col_sums() == self.r_b
            && self.l_a.row_sums() == self.r_a
            && self.l_b.row_sums() == self.r_b
            && self.l_a.col_sums().iter().all(|&c| c == k)
            && self.l_b.col_sums().iter().all(|&c| c == k)
            && self.l_a.mul(&self.l_b.transpose()).row_sums() == kr_a
    }
}
