//! Line-oriented plan files.
//!
//! ```text
//! # comment
//! s=3 m=2 b=2 k=2
//! block: 00 11
//! block: 22 01
//! ```
//!
//! Runs are digit strings, so files only describe fields with `s <= 10`.

use std::fmt::Write as _;

use otb_core::{Field, FieldVector, Plan};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanFileError {
    #[error("line {line}: bad header {text:?}, expected `s=<int> m=<int> b=<int> k=<int>`")]
    BadHeader { line: usize, text: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: expected `block:` line, found {text:?}")]
    BadLine { line: usize, text: String },
    #[error("line {line}: run {run:?} has length {found}, expected {expected}")]
    RunLengthMismatch {
        line: usize,
        run: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: symbol {symbol:?} is not a level of a field of order {order}")]
    SymbolOutOfField { line: usize, symbol: char, order: u32 },
    #[error("line {line}: block has {found} runs, expected {expected}")]
    BlockSizeMismatch { line: usize, expected: usize, found: usize },
    #[error("file has {found} blocks, header declares {expected}")]
    BlockCountMismatch { expected: usize, found: usize },
    #[error("field order {0} cannot be written with single digits")]
    FieldTooLarge(u32),
    #[error(transparent)]
    Core(#[from] otb_core::Error),
}

struct Header {
    s: u32,
    m: usize,
    b: usize,
    k: usize,
}

fn parse_header(line: usize, text: &str) -> Result<Header, PlanFileError> {
    let bad = || PlanFileError::BadHeader {
        line,
        text: text.to_string(),
    };
    let mut values = [None; 4];
    for part in text.split_whitespace() {
        let (key, value) = part.split_once('=').ok_or_else(bad)?;
        let slot = match key {
            "s" => 0,
            "m" => 1,
            "b" => 2,
            "k" => 3,
            _ => return Err(bad()),
        };
        if values[slot].is_some() {
            return Err(bad());
        }
        values[slot] = Some(value.parse::<usize>().map_err(|_| bad())?);
    }
    match values {
        [Some(s), Some(m), Some(b), Some(k)] if b >= 1 && k >= 1 => Ok(Header {
            s: u32::try_from(s).map_err(|_| bad())?,
            m,
            b,
            k,
        }),
        _ => Err(bad()),
    }
}

pub fn parse_plan(text: &str) -> Result<Plan, PlanFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, htext) = lines.next().ok_or(PlanFileError::MissingHeader)?;
    let header = parse_header(hline, htext)?;
    if header.s > 10 {
        return Err(PlanFileError::FieldTooLarge(header.s));
    }
    let field = Field::new(header.s)?;
    let mut blocks = Vec::with_capacity(header.b);
    for (line, text) in lines {
        let rest = text.strip_prefix("block:").ok_or_else(|| PlanFileError::BadLine {
            line,
            text: text.to_string(),
        })?;
        let mut block = Vec::with_capacity(header.k);
        for run in rest.split_whitespace() {
            let found = run.chars().count();
            if found != header.m {
                return Err(PlanFileError::RunLengthMismatch {
                    line,
                    run: run.to_string(),
                    expected: header.m,
                    found,
                });
            }
            let coords = run
                .chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d < header.s => Ok(d as u8),
                    _ => Err(PlanFileError::SymbolOutOfField {
                        line,
                        symbol: c,
                        order: header.s,
                    }),
                })
                .collect::<Result<Vec<u8>, _>>()?;
            block.push(FieldVector::new(field, coords)?);
        }
        if block.len() != header.k {
            return Err(PlanFileError::BlockSizeMismatch {
                line,
                expected: header.k,
                found: block.len(),
            });
        }
        blocks.push(block);
    }
    if blocks.len() != header.b {
        return Err(PlanFileError::BlockCountMismatch {
            expected: header.b,
            found: blocks.len(),
        });
    }
    Ok(Plan::new(field, header.m, blocks)?)
}

/// Canonical text: header, then one `block:` line per block, single spaces,
/// every line newline-terminated.
pub fn serialize_plan(plan: &Plan) -> Result<String, PlanFileError> {
    let s = plan.field().order() as u32;
    if s > 10 {
        return Err(PlanFileError::FieldTooLarge(s));
    }
    let mut out = String::new();
    writeln!(out, "s={} m={} b={} k={}", s, plan.m(), plan.b(), plan.k()).expect("string write");
    for block in plan.blocks() {
        out.push_str("block:");
        for run in block {
            out.push(' ');
            for &c in run.coords() {
                out.push(char::from(b'0' + c));
            }
        }
        out.push('\n');
    }
    Ok(out)
}
