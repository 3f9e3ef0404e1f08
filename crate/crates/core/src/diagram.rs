//! Formal Betti diagrams over the rationals.
//!
//! A diagram is a finitely supported table of rationals indexed by the
//! homological column `p` and the weight (row) `q`; the entry at `(p, q)`
//! sits in total degree `p + q`. Storage is sparse so that diagrams with a
//! few thousand columns stay cheap.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{factorial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("degree sequence {0:?} is not strictly increasing")]
    MalformedDegreeSequence(Vec<i64>),
    #[error("diagram is empty")]
    EmptyDiagram,
    #[error("column {0} is empty")]
    MissingColumn(usize),
    #[error("top strand {0:?} is not strictly increasing")]
    NotStrictlyIncreasing(Vec<i64>),
    #[error("alternating polynomial is not divisible by (1-t)^{codim} (failed at division {step})")]
    NotCohenMacaulayShape { codim: usize, step: usize },
    #[error("entry ({p},{q}) would be negative")]
    NegativeEntry { p: usize, q: i64 },
}

/// A strictly increasing tuple `(e_0, ..., e_n)` of total degrees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeSequence(Vec<i64>);

impl DegreeSequence {
    pub fn new(degrees: Vec<i64>) -> Result<Self, DiagramError> {
        if degrees.is_empty() || degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DiagramError::MalformedDegreeSequence(degrees));
        }
        Ok(Self(degrees))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    /// Index of the last entry, i.e. the projective dimension of the pure
    /// diagram it defines.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// How [`BettiDiagram::subtract`] treats entries that would go negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubtractMode {
    /// Stay inside the cone: any negative entry is an error.
    Strict,
    /// Formal vector-space arithmetic; negative entries are kept.
    Permissive,
}

/// Sparse formal Betti diagram. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiDiagram {
    entries: BTreeMap<(usize, i64), Rational>,
}

impl BettiDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a diagram from `(p, q, value)` triples; repeated positions are
    /// summed and zeros dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, i64, Rational)>) -> Self {
        let mut out = Self::new();
        for (p, q, v) in entries {
            out.add_at(p, q, &v);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Entry at `(p, q)`, zero when absent.
    pub fn get(&self, p: usize, q: i64) -> Rational {
        self.entries.get(&(p, q)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, p: usize, q: i64, value: Rational) {
        if value.is_zero() {
            self.entries.remove(&(p, q));
        } else {
            self.entries.insert((p, q), value);
        }
    }

    fn add_at(&mut self, p: usize, q: i64, value: &Rational) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry((p, q)).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&(p, q));
        }
    }

    /// Nonzero entries in `(p, q)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, &Rational)> + '_ {
        self.entries.iter().map(|(&(p, q), v)| (p, q, v))
    }

    /// Support positions in `(p, q)` order.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| v.is_positive())
    }

    /// Nonzero entries of column `p`, ordered by weight.
    pub fn column(&self, p: usize) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.entries
            .range((p, i64::MIN)..=(p, i64::MAX))
            .map(|(&(_, q), v)| (q, v))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(&k, v)| (k, v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(p, q), v) in &other.entries {
            out.add_at(p, q, v);
        }
        out
    }

    /// `self - other`. In [`SubtractMode::Strict`] the first position where
    /// the difference would be negative is reported.
    pub fn subtract(&self, other: &Self, mode: SubtractMode) -> Result<Self, DiagramError> {
        let mut out = self.clone();
        for (&(p, q), v) in &other.entries {
            out.add_at(p, q, &-v);
        }
        if mode == SubtractMode::Strict {
            if let Some((&(p, q), _)) = out.entries.iter().find(|(_, v)| v.is_negative()) {
                return Err(DiagramError::NegativeEntry { p, q });
            }
        }
        Ok(out)
    }

    /// Largest column index carrying a nonzero entry.
    pub fn projective_dimension(&self) -> Result<usize, DiagramError> {
        self.entries
            .keys()
            .map(|&(p, _)| p)
            .max()
            .ok_or(DiagramError::EmptyDiagram)
    }

    /// Largest weight carrying a nonzero entry.
    pub fn regularity(&self) -> Result<i64, DiagramError> {
        self.entries
            .keys()
            .map(|&(_, q)| q)
            .max()
            .ok_or(DiagramError::EmptyDiagram)
    }

    pub fn min_weight(&self) -> Result<i64, DiagramError> {
        self.entries
            .keys()
            .map(|&(_, q)| q)
            .min()
            .ok_or(DiagramError::EmptyDiagram)
    }

    /// The smallest total degree `p + q` in each column `0..=pd`.
    pub fn top_strand(&self) -> Result<DegreeSequence, DiagramError> {
        let pd = self.projective_dimension()?;
        let mut strand = Vec::with_capacity(pd + 1);
        for p in 0..=pd {
            let (q, _) = self.column(p).next().ok_or(DiagramError::MissingColumn(p))?;
            strand.push(p as i64 + q);
        }
        DegreeSequence::new(strand).map_err(|e| match e {
            DiagramError::MalformedDegreeSequence(v) => DiagramError::NotStrictlyIncreasing(v),
            other => other,
        })
    }

    /// First column in `0..pd` with no entries, if any.
    pub fn first_gap(&self) -> Option<usize> {
        let pd = self.projective_dimension().ok()?;
        (0..pd).find(|&p| self.column(p).next().is_none())
    }
}

/// Pure diagram of multiplicity one on the degree sequence `e`:
/// `kappa_{p, e_p - p} = n! / prod_{i != p} |e_i - e_p|`.
pub fn pure_diagram(e: &DegreeSequence) -> BettiDiagram {
    let degrees = e.degrees();
    let n = e.length();
    let n_fact = factorial(n as u64);
    let mut out = BettiDiagram::new();
    for (p, &ep) in degrees.iter().enumerate() {
        let den = product_of_gaps(degrees, p);
        let value = Rational::new(n_fact.clone(), den);
        out.entries.insert((p, ep - p as i64), value);
    }
    out
}

/// Convenience wrapper validating a raw tuple first.
pub fn pure_diagram_of(degrees: &[i64]) -> Result<BettiDiagram, DiagramError> {
    Ok(pure_diagram(&DegreeSequence::new(degrees.to_vec())?))
}

// prod_{i != p} |e_i - e_p|, batching small factors in a u128 before
// touching the bignum.
fn product_of_gaps(degrees: &[i64], p: usize) -> BigInt {
    let ep = degrees[p];
    let mut acc = BigInt::one();
    let mut chunk: u128 = 1;
    for (i, &ei) in degrees.iter().enumerate() {
        if i == p {
            continue;
        }
        let gap = ei.abs_diff(ep) as u128;
        match chunk.checked_mul(gap) {
            Some(v) if v < (1u128 << 100) => chunk = v,
            _ => {
                acc *= chunk;
                chunk = gap;
            }
        }
    }
    acc * chunk
}
