//! Hilbert numerators and multiplicity of formal diagrams.
//!
//! For a diagram supported in columns `0..=s` the alternating polynomial
//! `B(t) = sum (-1)^p kappa_{p,q} t^{p+q}` must be divisible by `(1-t)^s`;
//! the quotient is the Hilbert numerator and its value at `t = 1` is the
//! multiplicity. Diagrams failing the divisibility are rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diagram::{BettiDiagram, DiagramError};
use crate::rational::{common_denominator, Rational};

/// Sparse polynomial with rational coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RationalPolynomial {
    coefficients: BTreeMap<i64, Rational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coefficients(coefficients: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = Self::zero();
        for (deg, c) in coefficients {
            if c.is_zero() {
                continue;
            }
            let slot = out.coefficients.entry(deg).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                out.coefficients.remove(&deg);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, degree: i64) -> Rational {
        self.coefficients
            .get(&degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<i64> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coefficients.values().next_back()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coefficients.iter().map(|(&d, c)| (d, c))
    }

    /// Evaluation at an exact rational point (only `x = 1` is used for
    /// multiplicity, but negative exponents make general `x` awkward, so
    /// `x` must be nonzero when negative degrees are present).
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&deg, c) in &self.coefficients {
            let power = if deg >= 0 {
                num_traits::pow(x.clone(), deg as usize)
            } else {
                num_traits::pow(x.recip(), deg.unsigned_abs() as usize)
            };
            acc += c * power;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_coefficients(
            self.iter()
                .chain(other.iter())
                .map(|(d, c)| (d, c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coefficients(self.iter().map(|(d, v)| (d, v * c)))
    }
}

/// Alternating polynomial `sum (-1)^p kappa_{p,q} t^{p+q}`.
pub fn alternating_polynomial(b: &BettiDiagram) -> RationalPolynomial {
    RationalPolynomial::from_coefficients(b.iter().map(|(p, q, v)| {
        let signed = if p % 2 == 0 { v.clone() } else { -v.clone() };
        (p as i64 + q, signed)
    }))
}

/// `B(t) / (1-t)^s` with `s` the projective dimension of `b`.
pub fn hilbert_numerator(b: &BettiDiagram) -> Result<RationalPolynomial, DiagramError> {
    let codim = b.projective_dimension()?;
    let lo = b.iter().map(|(p, q, _)| p as i64 + q).min().unwrap();
    let hi = b.iter().map(|(p, q, _)| p as i64 + q).max().unwrap();

    // Work over a common denominator so that each division is a plain
    // bignum prefix sum.
    let den = common_denominator(b.iter().map(|(_, _, v)| v));
    let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (p, q, v) in b.iter() {
        let scaled = v.numer() * (&den / v.denom());
        let slot = &mut coeffs[(p as i64 + q - lo) as usize];
        if p % 2 == 0 {
            *slot += scaled;
        } else {
            *slot -= scaled;
        }
    }

    for step in 0..codim {
        // B = (1 - t) Q  <=>  Q_j = b_lo + ... + b_j, and the full sum is 0.
        let mut acc = BigInt::zero();
        for c in coeffs.iter_mut() {
            acc += &*c;
            *c = acc.clone();
        }
        match coeffs.pop() {
            Some(last) if !last.is_zero() => {
                return Err(DiagramError::NotCohenMacaulayShape { codim, step })
            }
            _ => {}
        }
    }

    let den = Rational::from_integer(den);
    Ok(RationalPolynomial::from_coefficients(
        coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| (lo + i as i64, Rational::from_integer(c) / &den)),
    ))
}

/// `HN(1)`, the multiplicity of the diagram.
pub fn multiplicity(b: &BettiDiagram) -> Result<Rational, DiagramError> {
    let hn = hilbert_numerator(b)?;
    Ok(hn.iter().map(|(_, c)| c.clone()).sum())
}
