//! Blocked plans: `b` blocks of `k` runs each, runs possibly repeated.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, FieldVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    field: Field,
    m: usize,
    k: usize,
    blocks: Vec<Vec<FieldVector>>,
}

impl Plan {
    /// Validates block sizes, run lengths and fields. Block and run order is
    /// kept as given.
    pub fn new(field: Field, m: usize, blocks: Vec<Vec<FieldVector>>) -> Result<Self> {
        let k = blocks.first().map_or(0, Vec::len);
        if k == 0 {
            return Err(Error::EmptyPlan);
        }
        for (j, block) in blocks.iter().enumerate() {
            if block.len() != k {
                return Err(Error::BlockSizeMismatch {
                    block: j + 1,
                    expected: k,
                    found: block.len(),
                });
            }
            for run in block {
                if run.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field.order(),
                        found: run.field().order(),
                    });
                }
                if run.len() != m {
                    return Err(Error::DimensionMismatch {
                        expected: m,
                        found: run.len(),
                    });
                }
            }
        }
        Ok(Plan {
            field,
            m,
            k,
            blocks,
        })
    }

    /// Builds a plan from a factor-by-run table: `rows[i][u]` is the level of
    /// factor `i` in run `u`, and consecutive groups of `k` runs form blocks.
    pub fn from_factor_rows(field: Field, k: usize, rows: &[&[u8]]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("factor rows differ in length"));
        }
        if k == 0 || n == 0 || !n.is_multiple_of(k) {
            return Err(Error::Invalid("run count is not a multiple of the block size"));
        }
        let runs = (0..n)
            .map(|u| FieldVector::new(field, rows.iter().map(|r| r[u]).collect()))
            .collect::<Result<Vec<_>>>()?;
        let blocks = runs.chunks(k).map(<[FieldVector]>::to_vec).collect();
        Plan::new(field, m, blocks)
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of factors.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Block size.
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of blocks.
    #[inline]
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Number of runs, `b * k`.
    #[inline]
    pub fn n(&self) -> usize {
        self.blocks.len() * self.k
    }

    pub fn blocks(&self) -> &[Vec<FieldVector>] {
        &self.blocks
    }

    /// All runs in block order.
    pub fn runs(&self) -> impl Iterator<Item = &FieldVector> + '_ {
        self.blocks.iter().flatten()
    }

    /// Runs with their 0-based block index.
    pub fn runs_with_block(&self) -> impl Iterator<Item = (usize, &FieldVector)> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(j, b)| b.iter().map(move |x| (j, x)))
    }

    /// The plan whose blocks are those of `self` followed by those of `other`.
    pub fn concat(&self, other: &Plan) -> Result<Plan> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.order(),
                found: other.field.order(),
            });
        }
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        if self.k != other.k {
            return Err(Error::BlockSizeMismatch {
                block: self.b() + 1,
                expected: self.k,
                found: other.k,
            });
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Ok(Plan {
            field: self.field,
            m: self.m,
            k: self.k,
            blocks,
        })
    }

    pub(crate) fn check_vector(&self, v: &FieldVector) -> Result<()> {
        if v.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field.order(),
                found: v.field().order(),
            });
        }
        if v.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: v.len(),
            });
        }
        Ok(())
    }
}
