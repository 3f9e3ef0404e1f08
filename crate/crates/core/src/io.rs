//! File formats: diagram and decomposition JSON, sweep CSV, and the
//! plain-text Betti table.
//!
//! Diagram JSON: `{"entries": [{"p": 0, "q": 0, "v": "1/1"}, ...]}` sorted by
//! `(p, q)`. Decomposition JSON:
//! `{"summands": [{"c": "1/2", "e": [0, 1, 2]}], "residual": null}`.

use std::io::{self, Write};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{DistributionRow, PuritySweepRow};
use crate::decompose::{Decomposition, PureSummand};
use crate::diagram::{BettiDiagram, DegreeSequence, DiagramError};
use crate::rational::{format_rational, parse_rational, Compact, ParseRationalError, Rational};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Fraction(#[from] ParseRationalError),
    #[error("negative entry {value} at ({p},{q})")]
    NegativeEntry { p: usize, q: i64, value: String },
    #[error("negative coefficient {0}")]
    NegativeCoefficient(String),
    #[error("duplicate entry at ({p},{q})")]
    DuplicateEntry { p: usize, q: i64 },
    #[error(transparent)]
    Degrees(#[from] DiagramError),
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryWire {
    p: usize,
    q: i64,
    v: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct DiagramWire {
    entries: Vec<EntryWire>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SummandWire {
    c: String,
    e: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DecompositionWire {
    summands: Vec<SummandWire>,
    residual: Option<DiagramWire>,
}

fn to_wire(b: &BettiDiagram) -> DiagramWire {
    DiagramWire {
        entries: b
            .iter()
            .map(|(p, q, v)| EntryWire { p, q, v: format_rational(v) })
            .collect(),
    }
}

fn from_wire(w: DiagramWire) -> Result<BettiDiagram, FormatError> {
    let mut out = BettiDiagram::new();
    let mut seen = std::collections::BTreeSet::new();
    for EntryWire { p, q, v } in w.entries {
        let value = parse_rational(&v)?;
        if value.is_negative() {
            return Err(FormatError::NegativeEntry { p, q, value: v });
        }
        if !seen.insert((p, q)) {
            return Err(FormatError::DuplicateEntry { p, q });
        }
        out.set(p, q, value);
    }
    Ok(out)
}

/// Canonical diagram JSON (single line, no trailing newline).
pub fn diagram_to_json(b: &BettiDiagram) -> String {
    serde_json::to_string(&to_wire(b)).expect("diagram serializes")
}

/// Parses diagram JSON. Lines starting with `#` are skipped so that
/// annotated CLI output can be piped straight back in. Negative entries
/// are rejected; zero entries are dropped.
pub fn diagram_from_json(text: &str) -> Result<BettiDiagram, FormatError> {
    let body = strip_comments(text);
    from_wire(serde_json::from_str(&body)?)
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Decomposition JSON; `residual` is `null` when nothing is left over.
pub fn decomposition_to_json(dec: &Decomposition) -> String {
    let wire = DecompositionWire {
        summands: dec
            .summands
            .iter()
            .map(|s| SummandWire {
                c: format_rational(&s.coefficient),
                e: s.degrees.degrees().to_vec(),
            })
            .collect(),
        residual: (!dec.residual.is_empty()).then(|| to_wire(&dec.residual)),
    };
    serde_json::to_string(&wire).expect("decomposition serializes")
}

pub fn decomposition_from_json(text: &str) -> Result<Decomposition, FormatError> {
    let wire: DecompositionWire = serde_json::from_str(&strip_comments(text))?;
    let summands = wire
        .summands
        .into_iter()
        .map(|s| {
            let coefficient = parse_rational(&s.c)?;
            if coefficient.is_negative() {
                return Err(FormatError::NegativeCoefficient(s.c));
            }
            Ok(PureSummand {
                coefficient,
                degrees: DegreeSequence::new(s.e)?,
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let residual = match wire.residual {
        Some(w) => from_wire(w)?,
        None => BettiDiagram::new(),
    };
    Ok(Decomposition { summands, residual, binding_columns: Vec::new() })
}

/// Betti table with rows indexed by weight `q` and columns by `p`; zero
/// entries inside the bounding rectangle print as `-`.
pub fn render_table(b: &BettiDiagram) -> String {
    let (Ok(pd), Ok(lo), Ok(hi)) = (b.projective_dimension(), b.min_weight(), b.regularity()) else {
        return "(empty diagram)\n".to_string();
    };
    let cells: Vec<Vec<String>> = (lo..=hi)
        .map(|q| {
            (0..=pd)
                .map(|p| {
                    let v = b.get(p, q);
                    if v == Rational::default() {
                        "-".to_string()
                    } else {
                        Compact(&v).to_string()
                    }
                })
                .collect()
        })
        .collect();
    let label_w = (lo..=hi).map(|q| q.to_string().len()).max().unwrap_or(1);
    let widths: Vec<usize> = (0..=pd)
        .map(|p| {
            cells
                .iter()
                .map(|row| row[p].len())
                .chain(std::iter::once(p.to_string().len()))
                .max()
                .unwrap()
        })
        .collect();

    let mut out = String::new();
    out.push_str(&format!("{:>label_w$} |", ""));
    for (p, w) in widths.iter().enumerate() {
        out.push_str(&format!(" {:>w$}", p));
    }
    out.push('\n');
    out.push_str(&"-".repeat(label_w + 2 + widths.iter().map(|w| w + 1).sum::<usize>()));
    out.push('\n');
    for (row, q) in cells.iter().zip(lo..=hi) {
        out.push_str(&format!("{:>label_w$} |", q));
        for (cell, w) in row.iter().zip(&widths) {
            out.push_str(&format!(" {:>w$}", cell));
        }
        out.push('\n');
    }
    out
}

pub const PURITY_CSV_HEADER: &str = "g,k,d,r,quantity,value_num,value_den";
pub const DISTRIBUTION_CSV_HEADER: &str = "g,k,d,r,a,p,value,limit";

/// Three exact rows per sweep point: `lower_bound`, `gap` and `r_gap`.
pub fn write_purity_csv<W: Write>(mut w: W, rows: &[PuritySweepRow]) -> io::Result<()> {
    writeln!(w, "{PURITY_CSV_HEADER}")?;
    for row in rows {
        for (name, value) in [
            ("lower_bound", row.lower_bound.clone()),
            ("gap", row.gap.clone()),
            ("r_gap", row.r_gap()),
        ] {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                row.g,
                row.k,
                row.d,
                row.r,
                name,
                value.numer(),
                value.denom()
            )?;
        }
    }
    Ok(())
}

pub fn write_distribution_csv<W: Write>(mut w: W, rows: &[DistributionRow]) -> io::Result<()> {
    writeln!(w, "{DISTRIBUTION_CSV_HEADER}")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{:?},{},{:e},{:e}",
            row.g, row.k, row.d, row.r, row.a_target, row.p, row.value, row.limit
        )?;
    }
    Ok(())
}
