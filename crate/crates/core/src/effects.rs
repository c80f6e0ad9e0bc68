//! Factorial effects as pencils of parallel hyperplanes.
//!
//! The effect `A_1^{a_1} ... A_m^{a_m}` is identified with the pencil of
//! hyperplanes `{x : a'x = t}`. Scaling `a` by a nonzero constant gives the
//! same pencil, so every [`Pencil`] stores the representative whose first
//! nonzero coordinate is 1.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldVector};

/// Factor letters; `m` is limited to 26.
pub const MAX_FACTORS: usize = 26;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pencil(FieldVector);

impl Pencil {
    /// Canonical pencil of a nonzero vector.
    pub fn new(a: &FieldVector) -> Result<Self> {
        let lead = a
            .coords()
            .iter()
            .copied()
            .find(|&c| c != 0)
            .ok_or(Error::ZeroVector)?;
        let inv = a.field().inv(lead).expect("nonzero");
        Ok(Pencil(a.scale(inv)))
    }

    /// Main effect of factor `i` (0-based).
    pub fn main(field: Field, m: usize, i: usize) -> Self {
        Pencil(FieldVector::unit(field, m, i))
    }

    /// Parses names like `A`, `BD^2`, `B^2C^2`. Exponents default to 1 and
    /// letters must be strictly increasing; the result is canonical.
    pub fn parse(name: &str, m: usize, field: Field) -> Result<Self> {
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        let mut coords = alloc::vec![0u8; m];
        let mut last: Option<usize> = None;
        let mut chars = name.chars().peekable();
        while let Some(c) = chars.next() {
            if !c.is_ascii_uppercase() {
                return Err(Error::BadSyntax(String::from(name)));
            }
            let idx = (c as u8 - b'A') as usize;
            if idx >= m {
                return Err(Error::UnknownFactor { letter: c, m });
            }
            let mut exponent = 1u32;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                    digits.push(d);
                    chars.next();
                }
                exponent = digits
                    .parse()
                    .map_err(|_| Error::BadExponent(String::from(name)))?;
                if exponent == 0 || exponent >= field.order() as u32 {
                    return Err(Error::BadExponent(String::from(name)));
                }
            }
            match last {
                Some(prev) if prev == idx => return Err(Error::DuplicateFactor(c)),
                Some(prev) if prev > idx => {
                    if coords[idx] != 0 {
                        return Err(Error::DuplicateFactor(c));
                    }
                    return Err(Error::FactorOrder(String::from(name)));
                }
                _ => {}
            }
            coords[idx] = exponent as u8;
            last = Some(idx);
        }
        Pencil::new(&FieldVector::new(field, coords)?)
    }

    #[inline]
    pub fn vector(&self) -> &FieldVector {
        &self.0
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.0.field()
    }

    /// Number of factors, `m`.
    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of factors involved: 1 for a main effect, 2 for a two-factor
    /// interaction, and so on.
    pub fn order(&self) -> usize {
        self.0.coords().iter().filter(|&&c| c != 0).count()
    }

    /// Level `a'x` of the effect at run `x`.
    pub fn level_of(&self, run: &FieldVector) -> Result<u8> {
        self.0.dot(run)
    }

    #[inline]
    pub(crate) fn level_unchecked(&self, run: &FieldVector) -> u8 {
        self.0.dot_unchecked(run)
    }
}

impl fmt::Display for Pencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &c) in self.0.coords().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let letter = (b'A' + i as u8) as char;
            if c == 1 {
                write!(f, "{}", letter)?;
            } else {
                write!(f, "{}^{}", letter, c)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Pencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pencil({})", self)
    }
}

/// Every pencil of `F_s^m` in lexicographic order of canonical vectors.
pub fn all_pencils(field: Field, m: usize) -> Vec<Pencil> {
    let s = field.order();
    let mut out = Vec::new();
    let mut coords = alloc::vec![0u8; m];
    loop {
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            coords[i] += 1;
            if coords[i] < s {
                break;
            }
            coords[i] = 0;
        }
        if coords.iter().find(|&&c| c != 0) == Some(&1) {
            out.push(Pencil(FieldVector::new(field, coords.clone()).expect("in range")));
        }
    }
}

/// The set of effects assumed present, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectModel {
    field: Field,
    m: usize,
    pencils: Vec<Pencil>,
}

impl EffectModel {
    /// Builds a model from pencils, dropping repeats (first occurrence wins).
    pub fn new(field: Field, m: usize, pencils: impl IntoIterator<Item = Pencil>) -> Result<Self> {
        let mut out: Vec<Pencil> = Vec::new();
        for p in pencils {
            if p.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.order(),
                    found: p.field().order(),
                });
            }
            if p.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: p.len(),
                });
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(EffectModel {
            field,
            m,
            pencils: out,
        })
    }

    /// All main effects.
    pub fn mains(m: usize, field: Field) -> Self {
        EffectModel {
            field,
            m,
            pencils: (0..m).map(|i| Pencil::main(field, m, i)).collect(),
        }
    }

    /// Main effects followed by every two-factor pencil `A_i A_j^e`,
    /// ordered by `(i, j, e)`.
    pub fn mains_and_2fi(m: usize, field: Field) -> Self {
        let mut model = Self::mains(m, field);
        for i in 0..m {
            for j in i + 1..m {
                for e in 1..field.order() {
                    let mut c = alloc::vec![0u8; m];
                    c[i] = 1;
                    c[j] = e;
                    model
                        .pencils
                        .push(Pencil(FieldVector::new(field, c).expect("in range")));
                }
            }
        }
        model
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pencils(&self) -> &[Pencil] {
        &self.pencils
    }

    pub fn len(&self) -> usize {
        self.pencils.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pencils.is_empty()
    }

    pub fn index_of(&self, p: &Pencil) -> Option<usize> {
        self.pencils.iter().position(|q| q == p)
    }

    pub fn contains(&self, p: &Pencil) -> bool {
        self.index_of(p).is_some()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Pencil> {
        self.pencils.iter()
    }
}

impl<'a> IntoIterator for &'a EffectModel {
    type Item = &'a Pencil;
    type IntoIter = core::slice::Iter<'a, Pencil>;

    fn into_iter(self) -> Self::IntoIter {
        self.pencils.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn v(text: &str) -> FieldVector {
        FieldVector::parse(f3(), text).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Pencil::new(&v("0201")).unwrap().vector(), &v("0102"));
        assert_eq!(Pencil::new(&v("1201")).unwrap().vector(), &v("1201"));
        assert_eq!(Pencil::new(&v("0000")), Err(Error::ZeroVector));
    }

    #[test]
    fn parse_names() {
        assert_eq!(Pencil::parse("BD^2", 5, f3()).unwrap().vector(), &v("01020"));
        assert_eq!(Pencil::parse("A", 4, f3()).unwrap().vector(), &v("1000"));
        assert_eq!(Pencil::parse("AB^2D", 4, f3()).unwrap().vector(), &v("1201"));
        // non-canonical spellings collapse onto the canonical pencil
        assert_eq!(Pencil::parse("B^2C^2", 4, f3()).unwrap().vector(), &v("0110"));
        assert_eq!(Pencil::parse("A^2B", 4, f3()).unwrap().vector(), &v("1200"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Pencil::parse("", 4, f3()), Err(Error::EmptyName));
        assert_eq!(
            Pencil::parse("AE", 4, f3()),
            Err(Error::UnknownFactor { letter: 'E', m: 4 })
        );
        assert!(matches!(Pencil::parse("A^3", 4, f3()), Err(Error::BadExponent(_))));
        assert!(matches!(Pencil::parse("A^0", 4, f3()), Err(Error::BadExponent(_))));
        assert!(matches!(Pencil::parse("E^F", 6, f3()), Err(Error::BadExponent(_))));
        assert_eq!(Pencil::parse("AA", 4, f3()), Err(Error::DuplicateFactor('A')));
        assert_eq!(Pencil::parse("ABA", 4, f3()), Err(Error::DuplicateFactor('A')));
        assert!(matches!(Pencil::parse("BA", 4, f3()), Err(Error::FactorOrder(_))));
        assert!(matches!(Pencil::parse("A²", 4, f3()), Err(Error::BadSyntax(_))));
    }

    #[test]
    fn print_names() {
        assert_eq!(Pencil::new(&v("01020")).unwrap().to_string(), "BD^2");
        assert_eq!(Pencil::new(&v("1000")).unwrap().to_string(), "A");
        assert_eq!(Pencil::new(&v("1110")).unwrap().to_string(), "ABC");
    }

    #[test]
    fn levels() {
        let abc = Pencil::parse("ABC", 4, f3()).unwrap();
        assert_eq!(abc.level_of(&v("1201")).unwrap(), 0);
        assert_eq!(abc.level_of(&v("0000")).unwrap(), 0);
        let de2 = Pencil::new(&v("00012")).unwrap();
        assert_eq!(de2.level_of(&v("11100")).unwrap(), 0);
        assert!(abc.level_of(&v("120")).is_err());
    }

    #[test]
    fn model_sizes() {
        assert_eq!(EffectModel::mains_and_2fi(4, f3()).len(), 16);
        assert_eq!(EffectModel::mains_and_2fi(6, f3()).len(), 36);
        assert_eq!(EffectModel::mains_and_2fi(1, f3()).len(), 1);
        let model = EffectModel::mains_and_2fi(3, f3());
        let names: Vec<_> = model.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["A", "B", "C", "AB", "AB^2", "AC", "AC^2", "BC", "BC^2"]);
    }

    #[test]
    fn pencil_count() {
        // (s^m - 1) / (s - 1)
        assert_eq!(all_pencils(f3(), 4).len(), 40);
        assert_eq!(all_pencils(Field::new(5).unwrap(), 3).len(), 31);
        assert_eq!(all_pencils(Field::new(2).unwrap(), 3).len(), 7);
    }
}
