//! Greedy Boij-Söderberg decomposition.
//!
//! Each step reads the top strand of the remaining diagram, takes the
//! largest multiple of the matching pure diagram that keeps every entry
//! nonnegative, and subtracts it. At least one entry vanishes per step, so
//! the loop ends after at most as many steps as the input has entries.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::diagram::{pure_diagram, BettiDiagram, DegreeSequence, DiagramError, SubtractMode};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureSummand {
    pub coefficient: Rational,
    pub degrees: DegreeSequence,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Decomposition {
    /// Summands in the order the greedy loop produced them.
    pub summands: Vec<PureSummand>,
    /// What is left over; empty on success.
    pub residual: BettiDiagram,
    /// For each summand, every column attaining the minimum ratio.
    pub binding_columns: Vec<Vec<usize>>,
}

impl Decomposition {
    /// `sum c_i * pure(e_i)`, without the residual.
    pub fn reconstruct(&self) -> BettiDiagram {
        self.summands.iter().fold(BettiDiagram::new(), |acc, s| {
            acc.add(&pure_diagram(&s.degrees).scale(&s.coefficient))
        })
    }

    pub fn total_coefficient(&self) -> Rational {
        self.summands.iter().map(|s| s.coefficient.clone()).sum()
    }

    pub fn coefficient_of(&self, degrees: &DegreeSequence) -> Rational {
        self.summands
            .iter()
            .filter(|s| &s.degrees == degrees)
            .map(|s| s.coefficient.clone())
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotInConeReason {
    Empty,
    NegativeEntry { p: usize, q: i64 },
    ColumnGap(usize),
    TopStrand(DiagramError),
    Subtraction(DiagramError),
}

impl fmt::Display for NotInConeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "diagram is empty"),
            Self::NegativeEntry { p, q } => write!(f, "input entry ({p},{q}) is negative"),
            Self::ColumnGap(p) => write!(f, "column {p} is empty below the projective dimension"),
            Self::TopStrand(e) => write!(f, "invalid top strand: {e}"),
            Self::Subtraction(e) => write!(f, "greedy subtraction failed: {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("diagram is not in the cone of pure diagrams: {reason}")]
pub struct NotInCone {
    pub reason: NotInConeReason,
    /// Summands found before the failure, with the residual at that point.
    pub partial: Decomposition,
}

pub fn decompose(b: &BettiDiagram) -> Result<Decomposition, NotInCone> {
    let mut partial = Decomposition {
        residual: b.clone(),
        ..Default::default()
    };
    let fail = |reason, partial: Decomposition| Err(NotInCone { reason, partial });

    if b.is_empty() {
        return fail(NotInConeReason::Empty, partial);
    }
    if let Some((p, q, _)) = b.iter().find(|(_, _, v)| v.is_negative()) {
        return fail(NotInConeReason::NegativeEntry { p, q }, partial);
    }
    if let Some(p) = b.first_gap() {
        return fail(NotInConeReason::ColumnGap(p), partial);
    }

    let max_steps = b.len();
    while !partial.residual.is_empty() {
        debug_assert!(partial.summands.len() < max_steps);
        let strand = match partial.residual.top_strand() {
            Ok(s) => s,
            Err(e) => return fail(NotInConeReason::TopStrand(e), partial),
        };
        let pure = pure_diagram(&strand);

        let mut best: Option<Rational> = None;
        let mut binding = Vec::new();
        for (p, &e) in strand.degrees().iter().enumerate() {
            let q = e - p as i64;
            let ratio = partial.residual.get(p, q) / pure.get(p, q);
            match &best {
                Some(m) if ratio > *m => {}
                Some(m) if ratio == *m => binding.push(p),
                _ => {
                    best = Some(ratio);
                    binding = vec![p];
                }
            }
        }
        let c = best.expect("top strand has at least one column");
        debug_assert!(!c.is_zero());

        let next = match partial
            .residual
            .subtract(&pure.scale(&c), SubtractMode::Strict)
        {
            Ok(next) => next,
            Err(e) => return fail(NotInConeReason::Subtraction(e), partial),
        };
        partial.residual = next;
        partial.summands.push(PureSummand {
            coefficient: c,
            degrees: strand,
        });
        partial.binding_columns.push(binding);
    }
    Ok(partial)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositiveCoefficient { index: usize, coefficient: Rational },
    Mismatch { p: usize, q: i64, expected: Rational, found: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveCoefficient { index, coefficient } => {
                write!(f, "summand {index} has coefficient {coefficient} <= 0")
            }
            Self::Mismatch { p, q, expected, found } => {
                write!(f, "entry ({p},{q}): expected {expected}, reconstructed {found}")
            }
        }
    }
}

/// Outcome of [`verify`]; `violation` names the first failed condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub violation: Option<Violation>,
}

impl VerifyReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that every coefficient is positive and that the summands plus
/// the residual give back `b` exactly.
pub fn verify(b: &BettiDiagram, dec: &Decomposition) -> VerifyReport {
    if let Some((index, s)) = dec
        .summands
        .iter()
        .enumerate()
        .find(|(_, s)| !s.coefficient.is_positive())
    {
        return VerifyReport {
            violation: Some(Violation::NonPositiveCoefficient {
                index,
                coefficient: s.coefficient.clone(),
            }),
        };
    }
    let rebuilt = dec.reconstruct().add(&dec.residual);
    let diff = b
        .subtract(&rebuilt, SubtractMode::Permissive)
        .expect("permissive subtraction cannot fail");
    let violation = diff.support().next().map(|(p, q)| Violation::Mismatch {
        p,
        q,
        expected: b.get(p, q),
        found: rebuilt.get(p, q),
    });
    VerifyReport { violation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::pure_diagram_of;
    use crate::hilbert::multiplicity;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn ds(v: &[i64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pure_diagram_is_a_fixed_point() {
        let e = ds(&[0, 3, 4, 6, 7, 9]);
        let dec = decompose(&pure_diagram(&e)).unwrap();
        assert_eq!(
            dec.summands,
            vec![PureSummand { coefficient: int(1), degrees: e.clone() }]
        );
        assert!(dec.residual.is_empty());
        assert_eq!(dec.binding_columns, vec![(0..6).collect::<Vec<_>>()]);
    }

    #[test]
    fn two_summand_round_trip() {
        let half = rat(1, 2);
        let b = pure_diagram_of(&[0, 1, 2])
            .unwrap()
            .scale(&half)
            .add(&pure_diagram_of(&[0, 1, 3]).unwrap().scale(&half));
        let dec = decompose(&b).unwrap();
        assert_eq!(dec.summands.len(), 2);
        assert_eq!(dec.summands[0], PureSummand { coefficient: half.clone(), degrees: ds(&[0, 1, 2]) });
        assert_eq!(dec.summands[1], PureSummand { coefficient: half, degrees: ds(&[0, 1, 3]) });
        assert!(verify(&b, &dec).holds());
    }

    #[test]
    fn two_column_diagram_is_pure() {
        let b = BettiDiagram::from_entries([(0, 0, int(1)), (1, 0, int(1))]);
        let dec = decompose(&b).unwrap();
        assert_eq!(dec.summands, vec![PureSummand { coefficient: int(1), degrees: ds(&[0, 1]) }]);
    }

    #[test]
    fn rejects_gaps_and_negatives() {
        let gap = BettiDiagram::from_entries([(0, 0, int(1)), (2, 0, int(1))]);
        let err = decompose(&gap).unwrap_err();
        assert_eq!(err.reason, NotInConeReason::ColumnGap(1));
        assert_eq!(err.partial.residual, gap);

        let neg = BettiDiagram::from_entries([(0, 0, int(1)), (1, 0, int(-1))]);
        assert_eq!(decompose(&neg).unwrap_err().reason, NotInConeReason::NegativeEntry { p: 1, q: 0 });
        assert_eq!(decompose(&BettiDiagram::new()).unwrap_err().reason, NotInConeReason::Empty);
    }

    #[test]
    fn outside_the_cone_keeps_partial_result() {
        // kappa_{0,0} = 1, kappa_{1,0} = 3, kappa_{2,0} = 1: first step takes
        // (0,1,2) with c = 1, leaving a lone entry in column 1.
        let b = BettiDiagram::from_entries([(0, 0, int(1)), (1, 0, int(3)), (2, 0, int(1))]);
        let err = decompose(&b).unwrap_err();
        assert_eq!(err.partial.summands.len(), 1);
        assert_eq!(err.partial.residual, BettiDiagram::from_entries([(1, 0, int(1))]));
        assert!(matches!(err.reason, NotInConeReason::TopStrand(DiagramError::MissingColumn(0))));
        assert!(verify(&b, &err.partial).holds());
    }

    #[test]
    fn verify_catches_perturbation() {
        let e = ds(&[0, 2, 3, 5]);
        let b = pure_diagram(&e);
        let good = Decomposition {
            summands: vec![PureSummand { coefficient: int(1), degrees: e.clone() }],
            ..Default::default()
        };
        assert!(verify(&b, &good).holds());
        let mut bad = good.clone();
        bad.summands[0].coefficient += rat(1, 1_000_000);
        let report = verify(&b, &bad);
        assert!(!report.holds());
        assert!(matches!(report.violation, Some(Violation::Mismatch { .. })));
        let mut zero = good;
        zero.summands[0].coefficient = int(0);
        assert!(matches!(
            verify(&b, &zero).violation,
            Some(Violation::NonPositiveCoefficient { index: 0, .. })
        ));
    }

    // Chains e_1 <= e_2 <= ... (entrywise) are what the greedy loop emits.
    fn chain() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
        (1usize..6, 1usize..5).prop_flat_map(|(n, len)| {
            prop::collection::vec((prop::collection::vec(0usize..n + 1, 1..3), 1i64..9), len)
                .prop_map(move |bumps| {
                    let mut e: Vec<i64> = (0..=n as i64).collect();
                    let mut out = Vec::new();
                    for (cols, w) in bumps {
                        for c in cols {
                            for x in e.iter_mut().skip(c) {
                                *x += 1;
                            }
                        }
                        out.push((e.clone(), w));
                    }
                    out
                })
        })
    }

    proptest! {
        #[test]
        fn decomposition_reconstructs_and_sums_to_multiplicity(parts in chain(), scale in 1i64..50) {
            let b = parts.iter().fold(BettiDiagram::new(), |acc, (e, w)| {
                acc.add(&pure_diagram_of(e).unwrap().scale(&rat(*w, 7)))
            });
            let dec = decompose(&b).unwrap();
            prop_assert!(verify(&b, &dec).holds());
            prop_assert!(dec.summands.len() <= b.len());
            prop_assert_eq!(dec.total_coefficient(), multiplicity(&b).unwrap());

            let c = rat(scale, 11);
            let scaled = decompose(&b.scale(&c)).unwrap();
            prop_assert_eq!(scaled.summands.len(), dec.summands.len());
            for (s, t) in dec.summands.iter().zip(&scaled.summands) {
                prop_assert_eq!(&s.degrees, &t.degrees);
                prop_assert_eq!(&s.coefficient * &c, t.coefficient.clone());
            }
        }
    }
}
