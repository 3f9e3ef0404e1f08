//! Exact Boij-Söderberg toolkit for secant varieties of curves.
//!
//! * [`diagram`] and [`hilbert`]: formal Betti diagrams over `Q`, pure
//!   diagrams, Hilbert numerators and multiplicity.
//! * [`decompose`]: greedy decomposition into pure diagrams.
//! * [`secant`]: the degree sequences, shapes and closed forms attached to
//!   the secant variety of `k`-planes of a genus-`g` curve in degree `d`.
//! * [`asymptotics`]: exact purity bounds and log-domain evaluation of the
//!   binomial / normal limits.
//! * [`io`]: JSON, CSV and table formats used by the command-line tool.

pub mod asymptotics;
pub mod decompose;
pub mod diagram;
pub mod hilbert;
pub mod io;
pub mod logspace;
pub mod rational;
pub mod secant;
pub mod suites;

pub use decompose::{decompose, verify, Decomposition, NotInCone, PureSummand};
pub use diagram::{pure_diagram, BettiDiagram, DegreeSequence, DiagramError, SubtractMode};
pub use hilbert::{hilbert_numerator, multiplicity, RationalPolynomial};
pub use rational::Rational;
pub use secant::{JumpTuple, SecantParams};
