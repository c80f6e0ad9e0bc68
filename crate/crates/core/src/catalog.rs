//! Built-in three-level plans on blocks of size four, their expansion
//! subspaces, and the structure printed alongside them.
//!
//! The printed data is kept verbatim (including non-canonical spellings such
//! as `B^2C^2` and the odd malformed token) so that a verifier can compare it
//! with computed structure. Nothing here is asserted; see the `otb` crate's
//! claim verifier.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Subspace};
use crate::plan::Plan;

const ROW_A: [u8; 8] = [0, 1, 1, 2, 0, 0, 2, 2];
const ROW_B: [u8; 8] = [0, 1, 2, 0, 2, 1, 1, 2];
const ROW_C: [u8; 8] = [0, 1, 0, 1, 1, 2, 0, 2];
const ROW_D: [u8; 8] = [0, 0, 1, 1, 2, 1, 2, 0];

/// Names accepted by [`catalog`].
pub const PLAN_NAMES: [&str; 5] = ["P", "P3", "P5", "P6", "P26"];

/// Structure stated for a catalog plan. Effect names use `^` exponents and
/// may be non-canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedClaims {
    /// Words listed as `Block ≡ ...` for the initial plan.
    pub block_words: &'static [&'static str],
    /// Alias classes of the model effects in the initial plan.
    pub alias_classes: &'static [&'static [&'static str]],
    /// Edges (1-based class indices) of the class-level orthogonality graph.
    pub class_graph: &'static [(usize, usize)],
    /// Number of blocks of the expanded plan.
    pub expanded_blocks: usize,
    /// Orthogonal classes of the expanded plan, aliased groups flattened.
    pub orthogonal_classes: &'static [&'static [&'static str]],
    /// Effects confounded with blocks in the expanded plan.
    pub confounded: &'static [&'static str],
    /// `(estimable, model size)` for main effects plus two-factor
    /// interactions in the expanded plan.
    pub estimable: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub plan: Plan,
    pub expansion: Option<Subspace>,
    pub printed: PrintedClaims,
}

fn f3() -> Field {
    Field::new(3).expect("3 is prime")
}

fn plan_from(rows: &[&[u8]]) -> Plan {
    Plan::from_factor_rows(f3(), 4, rows).expect("catalog plan is well formed")
}

fn subspace(m: usize, text: &str) -> Subspace {
    Subspace::parse(f3(), m, text).expect("catalog subspace is well formed")
}

/// The `3^4` initial plan on two blocks of four.
pub fn plan_p() -> Plan {
    plan_from(&[&ROW_A, &ROW_B, &ROW_C, &ROW_D])
}

/// `P` with factor D deleted.
pub fn plan_p3() -> Plan {
    plan_from(&[&ROW_A, &ROW_B, &ROW_C])
}

/// `P` with a fifth factor E whose row repeats D.
pub fn plan_p5() -> Plan {
    plan_from(&[&ROW_A, &ROW_B, &ROW_C, &ROW_D, &ROW_D])
}

/// `P5` with a sixth factor F whose row repeats A.
pub fn plan_p6() -> Plan {
    plan_from(&[&ROW_A, &ROW_B, &ROW_C, &ROW_D, &ROW_D, &ROW_A])
}

/// The supplementary `3^6` plan: C, D repeat A, B; E, F take the rows of D, C.
pub fn plan_p26() -> Plan {
    plan_from(&[&ROW_A, &ROW_B, &ROW_A, &ROW_B, &ROW_D, &ROW_C])
}

/// Expansion subspaces by name: `V3`, `V4`, `V5`, `V6`, `V26`.
pub fn catalog_subspace(name: &str) -> Result<Subspace> {
    Ok(match name {
        "V3" => subspace(3, "100"),
        "V4" => subspace(4, "0102;1010"),
        "V5" => subspace(5, "01020;10102"),
        "V6" => subspace(6, "110100;001011"),
        "V26" => subspace(6, "100120"),
        _ => return Err(Error::UnknownName(String::from(name))),
    })
}

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let (name, plan, v, printed) = match name {
        "P" => ("P", plan_p(), "V4", PRINTED_P),
        "P3" => ("P3", plan_p3(), "V3", PRINTED_P3),
        "P5" => ("P5", plan_p5(), "V5", PRINTED_P5),
        "P6" => ("P6", plan_p6(), "V6", PRINTED_P6),
        "P26" => ("P26", plan_p26(), "V26", PRINTED_P26),
        _ => return Err(Error::UnknownName(String::from(name))),
    };
    Ok(CatalogEntry {
        name,
        plan,
        expansion: Some(catalog_subspace(v)?),
        printed,
    })
}

pub fn all_entries() -> Vec<CatalogEntry> {
    PLAN_NAMES
        .iter()
        .map(|n| catalog(n).expect("known name"))
        .collect()
}

const PRINTED_P: PrintedClaims = PrintedClaims {
    block_words: &["ABC", "AC^2D^2", "AB^2D", "BC^2D"],
    alias_classes: &[
        &["A", "B^2C^2", "BD^2", "CD"],
        &["B", "A^2C^2", "AD", "CD^2"],
        &["C", "AD^2", "A^2B^2", "BD"],
        &["D", "AC^2", "A^2B", "B^2C"],
    ],
    class_graph: &[(1, 3), (1, 4), (2, 3), (2, 4)],
    expanded_blocks: 18,
    orthogonal_classes: &[
        &["A", "AC"],
        &["B", "BD^2"],
        &["C"],
        &["D"],
        &["BC", "CD^2"],
        &["AD", "CD"],
        &["AB", "AD^2"],
        &["AB^2", "BC^2"],
        &["AC^2", "BD"],
    ],
    confounded: &[],
    estimable: (16, 16),
};

const PRINTED_P3: PrintedClaims = PrintedClaims {
    block_words: &[],
    alias_classes: &[
        &["A", "B^2C^2"],
        &["B", "A^2C^2"],
        &["C", "A^2B^2"],
        &["AC^2", "A^2B", "B^2C"],
    ],
    class_graph: &[],
    expanded_blocks: 6,
    orthogonal_classes: &[
        &["A", "AC"],
        &["B", "BC"],
        &["C", "B^2C"],
        &["AB", "AC^2", "A^2B"],
    ],
    confounded: &[],
    estimable: (9, 9),
};

const PRINTED_P5: PrintedClaims = PrintedClaims {
    block_words: &[
        "DE^2", "ABC", "AC^2D^2", "AC^2E^2", "AB^2D", "AB^2E", "BC^2D", "BC^2E^2",
    ],
    alias_classes: &[
        &["A", "B^2C^2", "BD^2", "CD", "CE", "BE^2"],
        &["B", "A^2C^2", "AD", "AE", "CD^2", "CE^2"],
        &["C", "AD^2", "A^2B^2", "AE^2", "BD", "BE"],
        &["D", "E", "D^2E^2", "AC^2", "A^2B", "B^2C"],
    ],
    class_graph: &[],
    expanded_blocks: 18,
    orthogonal_classes: &[
        &["A", "AC", "CE^2"],
        &["B", "BD^2"],
        &["C", "E", "AE^2"],
        &["D"],
        &["BC", "BE^2", "CD^2"],
        &["CD", "AD"],
        &["AD^2", "AB", "DE"],
        &["BE", "BC^2", "AB^2"],
        &["CE", "AE"],
        &["BD", "AC^2"],
    ],
    confounded: &["DE^2"],
    estimable: (24, 25),
};

const PRINTED_P6: PrintedClaims = PrintedClaims {
    block_words: &[
        "DE^2", "AF^2", "ABC", "AB^2D", "AB^2E", "AC^2D^2", "AC^2E^2", "BC^2D", "BC^2E", "BCF",
        "B^2DF", "B^2EF", "C^2E^2F", "C^2D^2F",
    ],
    alias_classes: &[
        &["A", "A^2F^2", "B^2C^2", "BD^2", "BE^2", "CD", "CE", "F"],
        &["B", "A^2C^2", "AD", "AE", "CD^2", "CE^2", "C^2F^2", "DF", "EF"],
        &["C", "A^2B^2", "AD^2", "AE^2", "BD", "BE", "B^2F^2", "D^2F", "E^F"],
        &["D", "E", "A^2B", "AC^2", "B^2C", "BF^2", "C^2F", "D^2E^2"],
    ],
    class_graph: &[],
    expanded_blocks: 18,
    orthogonal_classes: &[
        &["A", "B", "AD"],
        &["C", "E"],
        &["D", "AB^2", "BD"],
        &["F", "CE", "CF", "EF"],
        &["BD^2", "CF^2"],
        &["CD^2", "BE^2"],
        &["BE", "BF^2", "D^2E^2"],
        &["AD^2", "EF^2", "AB^2", "CF^2"],
        &["AE^2", "BC^2", "AC^2", "BF^2"],
        &["CD", "AC", "AE", "DF", "AF", "BC"],
    ],
    confounded: &["DE^2", "AF^2"],
    estimable: (27, 36),
};

const PRINTED_P26: PrintedClaims = PrintedClaims {
    block_words: &["AC^2", "BD^2"],
    alias_classes: &[
        &["A", "C", "AC", "BE^2", "B^2F^2", "DE^2", "D^2F^2", "EF"],
        &["B", "D", "AE", "A^2F^2", "BD", "CE", "C^2F^2", "E^2F"],
        &["F", "A^2B^2", "A^2D^2", "AE^2", "B^2C^2", "BE", "C^2D^2", "CE^2", "DE"],
        &["E", "A^2B", "A^2D", "AF^2", "BC^2", "B^2F", "C^2D", "CF^2", "D^2F"],
    ],
    class_graph: &[],
    expanded_blocks: 6,
    orthogonal_classes: &[
        &["C", "DE^2", "BF", "B", "AE", "CF"],
        &["A", "AC", "BE^2", "D", "BD", "EF^2", "EF", "DF", "AF", "CE"],
        &["F", "DE", "BC", "AD^2", "BC^2", "BF^2", "CF^2"],
        &["E", "AB^2", "DF^2", "AD", "CE^2", "CD^2", "AF^2", "AB", "AE^2", "BE", "CD"],
    ],
    confounded: &["AC^2", "BD^2"],
    estimable: (35, 36),
};

/// Two-factor interactions listed as lost in the expanded `P6` plan and
/// recovered by the supplementary plan.
pub const P6_LOST_EFFECTS: [&str; 9] = ["DE^2", "AF^2", "EF^2", "DF", "BF^2", "BC", "AB^2", "CF", "CD"];
