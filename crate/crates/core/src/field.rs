//! Prime fields, vectors over `F_s^m` and their subspaces.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest number of members [`Subspace::members`] will list (`s^t` with `t <= 12`).
pub const MAX_MEMBER_DIM: usize = 12;

/// The prime field `F_s`. Elements are the residues `0..s` stored as `u8`.
///
/// Callers only touch field arithmetic through the methods below, so a
/// prime-power representation can replace the residue arithmetic without
/// changing them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    order: u8,
}

impl Field {
    pub fn new(s: u32) -> Result<Self> {
        if !(2..=251).contains(&s) {
            return Err(Error::OrderOutOfRange(s));
        }
        if (2..s).take_while(|d| d * d <= s).any(|d| s.is_multiple_of(d)) {
            return Err(Error::NotPrime(s));
        }
        Ok(Field { order: s as u8 })
    }

    #[inline]
    pub fn order(self) -> u8 {
        self.order
    }

    #[inline]
    pub fn elements(self) -> impl Iterator<Item = u8> + Clone {
        0..self.order
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.order as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.order - a
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.order as u16) as u8
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        // a^(s-2) by square-and-multiply
        let mut base = a;
        let mut exp = self.order as u32 - 2;
        let mut acc = 1u8;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Some(acc)
    }

    pub(crate) fn check_symbol(self, value: u32, symbol: char) -> Result<u8> {
        if value < self.order as u32 {
            Ok(value as u8)
        } else {
            Err(Error::SymbolOutOfField {
                symbol,
                order: self.order,
            })
        }
    }

    /// `s^e` as an integer.
    pub fn pow(self, e: usize) -> u128 {
        (self.order as u128).pow(e as u32)
    }
}

/// A vector of `F_s^m`: a run (point of `EG(m,s)`) or a coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldVector {
    field: Field,
    coords: Vec<u8>,
}

impl FieldVector {
    pub fn new(field: Field, coords: Vec<u8>) -> Result<Self> {
        for &c in &coords {
            if c >= field.order() {
                return Err(Error::SymbolOutOfField {
                    symbol: char::from_digit(c as u32, 36).unwrap_or('?'),
                    order: field.order(),
                });
            }
        }
        Ok(FieldVector { field, coords })
    }

    pub fn zero(field: Field, m: usize) -> Self {
        FieldVector {
            field,
            coords: vec![0; m],
        }
    }

    pub fn unit(field: Field, m: usize, i: usize) -> Self {
        let mut v = Self::zero(field, m);
        v.coords[i] = 1;
        v
    }

    /// Parses an `m`-digit string such as `"0102"` (fields with `s <= 10`).
    pub fn parse(field: Field, text: &str) -> Result<Self> {
        let coords = text
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d) => field.check_symbol(d, c),
                None => Err(Error::SymbolOutOfField {
                    symbol: c,
                    order: field.order(),
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(FieldVector { field, coords })
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &FieldVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.order(),
                found: other.field.order(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// `x'y` in `F_s`.
    pub fn dot(&self, other: &FieldVector) -> Result<u8> {
        self.check_compatible(other)?;
        Ok(self.dot_unchecked(other))
    }

    #[inline]
    pub(crate) fn dot_unchecked(&self, other: &FieldVector) -> u8 {
        let s = self.field.order() as u32;
        let acc: u32 = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a as u32 * b as u32)
            .sum();
        (acc % s) as u8
    }

    pub fn add(&self, other: &FieldVector) -> Result<FieldVector> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &FieldVector) -> FieldVector {
        let f = self.field;
        FieldVector {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    /// `self - c * other`.
    pub fn sub_scaled(&self, c: u8, other: &FieldVector) -> Result<FieldVector> {
        self.check_compatible(other)?;
        let f = self.field;
        Ok(FieldVector {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.sub(a, f.mul(c, b)))
                .collect(),
        })
    }

    pub fn scale(&self, c: u8) -> FieldVector {
        let f = self.field;
        FieldVector {
            field: f,
            coords: self.coords.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }
}

impl fmt::Debug for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldVector({})", self)
    }
}

/// Digit string for `s <= 10`, otherwise a parenthesised list.
impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.order() <= 10 {
            for c in &self.coords {
                write!(f, "{}", c)?;
            }
            Ok(())
        } else {
            write!(f, "(")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", c)?;
            }
            write!(f, ")")
        }
    }
}

/// Reduces `rows` (each of length `m`) to reduced row-echelon form with unit
/// pivots, dropping zero rows. Returns the pivot columns.
pub(crate) fn row_reduce(field: Field, rows: &mut Vec<Vec<u8>>, m: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F_s^m` held in reduced row-echelon form with unit pivots.
///
/// The canonical basis is unique, so derived equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    m: usize,
    pivots: Vec<usize>,
    basis: Vec<FieldVector>,
}

impl Subspace {
    pub fn zero(field: Field, m: usize) -> Self {
        Subspace {
            field,
            m,
            pivots: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn full(field: Field, m: usize) -> Self {
        Subspace {
            field,
            m,
            pivots: (0..m).collect(),
            basis: (0..m).map(|i| FieldVector::unit(field, m, i)).collect(),
        }
    }

    /// The span of `vectors` in canonical form (the `rref` operation).
    pub fn span(field: Field, m: usize, vectors: &[FieldVector]) -> Result<Self> {
        for v in vectors {
            if v.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.order(),
                    found: v.field().order(),
                });
            }
            if v.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: v.len(),
                });
            }
        }
        let mut rows: Vec<Vec<u8>> = vectors.iter().map(|v| v.coords.clone()).collect();
        Ok(Self::from_rows(field, m, &mut rows))
    }

    fn from_rows(field: Field, m: usize, rows: &mut Vec<Vec<u8>>) -> Self {
        let pivots = row_reduce(field, rows, m);
        let basis = rows
            .drain(..)
            .map(|coords| FieldVector { field, coords })
            .collect();
        Subspace {
            field,
            m,
            pivots,
            basis,
        }
    }

    /// Parses the `;`-separated digit-string syntax, e.g. `"0102;1010"`.
    /// An empty string (or only zero vectors) gives the zero subspace.
    pub fn parse(field: Field, m: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::zero(field, m));
        }
        let mut vectors = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.len() != m {
                return Err(Error::BadSubspace(String::from(text)));
            }
            vectors.push(FieldVector::parse(field, part).map_err(|_| Error::BadSubspace(String::from(text)))?);
        }
        Self::span(field, m, &vectors)
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn basis(&self) -> &[FieldVector] {
        &self.basis
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Number of members, `s^t`.
    pub fn size(&self) -> u128 {
        self.field.pow(self.dim())
    }

    pub fn contains(&self, v: &FieldVector) -> bool {
        if v.len() != self.m || v.field() != self.field {
            return false;
        }
        let f = self.field;
        let mut rest = v.coords.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = rest[p];
            if c != 0 {
                for (x, &y) in rest.iter_mut().zip(row.coords()) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        rest.iter().all(|&x| x == 0)
    }

    /// True when `w'v = 0` for every `v` in the subspace, i.e. `w` lies in
    /// the orthocomplement.
    pub fn annihilated_by(&self, w: &FieldVector) -> bool {
        self.basis.iter().all(|v| v.dot_unchecked(w) == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// The span of `self` and `other`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.m, &vs)
    }

    /// `{w : w'v = 0 for all v}`, of dimension `m - t`.
    pub fn orthocomplement(&self) -> Subspace {
        let f = self.field;
        let free: Vec<usize> = (0..self.m).filter(|c| !self.pivots.contains(c)).collect();
        // For each free column j: w_j = 1, w_{p_i} = -row_i[j].
        let mut rows: Vec<Vec<u8>> = free
            .iter()
            .map(|&j| {
                let mut w = vec![0u8; self.m];
                w[j] = 1;
                for (row, &p) in self.basis.iter().zip(&self.pivots) {
                    w[p] = f.neg(row.coords[j]);
                }
                w
            })
            .collect();
        Self::from_rows(f, self.m, &mut rows)
    }

    /// Every member `sum_i c_i b_i`, with coefficient tuples `c` in
    /// lexicographic order (first basis vector slowest).
    pub fn members(&self) -> Result<Vec<FieldVector>> {
        let t = self.dim();
        if t > MAX_MEMBER_DIM {
            return Err(Error::TooLarge {
                what: "subspace member list",
                size: self.size(),
                limit: self.field.pow(MAX_MEMBER_DIM),
            });
        }
        let f = self.field;
        let s = f.order();
        let total = self.size() as usize;
        let mut out = Vec::with_capacity(total);
        let mut coeffs = vec![0u8; t];
        for _ in 0..total {
            let mut v = vec![0u8; self.m];
            for (c, b) in coeffs.iter().zip(&self.basis) {
                if *c != 0 {
                    for (x, &y) in v.iter_mut().zip(b.coords()) {
                        *x = f.add(*x, f.mul(*c, y));
                    }
                }
            }
            out.push(FieldVector { field: f, coords: v });
            for c in coeffs.iter_mut().rev() {
                *c += 1;
                if *c < s {
                    break;
                }
                *c = 0;
            }
        }
        Ok(out)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: field, ambient dimension, dimension, pivot columns, then
/// the basis coordinates row by row.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.m.cmp(&other.m))
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| {
                self.basis
                    .iter()
                    .map(|v| v.coords())
                    .cmp(other.basis.iter().map(|v| v.coords()))
            })
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace<{}>", self)
    }
}

/// `;`-joined basis; the zero subspace prints as the zero vector.
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "{}", FieldVector::zero(self.field, self.m));
        }
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}

/// Number of `t`-dimensional subspaces of `F_s^m`.
pub fn gaussian_binomial(s: u128, m: usize, t: usize) -> u128 {
    if t > m {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..t {
        num *= s.pow((m - i) as u32) - 1;
        den *= s.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Streams every `t`-dimensional subspace of `F_s^m` exactly once, in the
/// canonical [`Ord`] order.
pub fn enumerate_subspaces(field: Field, m: usize, t: usize) -> SubspaceIter {
    SubspaceIter::new(field, m, t)
}

pub struct SubspaceIter {
    field: Field,
    m: usize,
    t: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    values: Vec<u8>,
    fresh: bool,
}

impl SubspaceIter {
    fn new(field: Field, m: usize, t: usize) -> Self {
        let pivots = if t <= m { Some((0..t).collect()) } else { None };
        let mut it = SubspaceIter {
            field,
            m,
            t,
            pivots,
            free: Vec::new(),
            values: Vec::new(),
            fresh: true,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        if let Some(p) = &self.pivots {
            for (row, &pc) in p.iter().enumerate() {
                for col in pc + 1..self.m {
                    if !p.contains(&col) {
                        self.free.push((row, col));
                    }
                }
            }
        }
        self.values = vec![0; self.free.len()];
        self.fresh = true;
    }

    fn next_pivots(&mut self) {
        let Some(p) = self.pivots.as_mut() else {
            return;
        };
        let (m, t) = (self.m, self.t);
        let mut i = t;
        while i > 0 {
            i -= 1;
            if p[i] < m - t + i {
                p[i] += 1;
                for j in i + 1..t {
                    p[j] = p[j - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.pivots = None;
    }

    fn advance_values(&mut self) -> bool {
        let s = self.field.order();
        for v in self.values.iter_mut().rev() {
            *v += 1;
            if *v < s {
                return true;
            }
            *v = 0;
        }
        false
    }

    fn current(&self) -> Subspace {
        let p = self.pivots.as_ref().expect("active");
        let mut rows = vec![vec![0u8; self.m]; self.t];
        for (row, &pc) in p.iter().enumerate() {
            rows[row][pc] = 1;
        }
        for (&(row, col), &v) in self.free.iter().zip(&self.values) {
            rows[row][col] = v;
        }
        Subspace {
            field: self.field,
            m: self.m,
            pivots: p.clone(),
            basis: rows
                .into_iter()
                .map(|coords| FieldVector {
                    field: self.field,
                    coords,
                })
                .collect(),
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        self.pivots.as_ref()?;
        if self.fresh {
            self.fresh = false;
        } else if !self.advance_values() {
            self.next_pivots();
            self.pivots.as_ref()?;
            self.fresh = false;
        }
        Some(self.current())
    }
}
