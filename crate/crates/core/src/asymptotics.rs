//! Numerical certificates for the large-degree behaviour of the secant
//! family: an exact lower bound on the dominant Boij-Söderberg coefficient,
//! and log-domain evaluation of the binomial/normal-distribution limits.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::logspace::ln_binomial;
use crate::rational::{binomial, format_rational, ln_bigint, parse_rational, to_f64, Rational};
use crate::secant::{
    degree_ratio, enumerate_tuples, has_full_regularity, hn_leading_coefficient, kappa_dominant,
    normalized_leading_coefficient, secant_degree, JumpTuple, SecantError, SecantParams,
};

/// Largest `r` evaluated through exact rationals; above it the log-domain
/// path is used.
pub const EXACT_MAX_R: i64 = 300;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AsymptoticsError {
    #[error(transparent)]
    Secant(#[from] SecantError),
    #[error("degenerate bound for {0}: dominant coefficient does not exceed the others")]
    DegenerateBound(SecantParams),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("column {p} outside 0..={r}")]
    OutOfRange { r: i64, p: i64 },
}

// ---------------------------------------------------------------------------
// Purity bound

/// One point of a purity sweep; everything exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuritySweepRow {
    pub g: i64,
    pub k: i64,
    pub d: i64,
    pub r: i64,
    pub lower_bound: Rational,
    pub gap: Rational,
}

impl PuritySweepRow {
    /// `r * (1 - bound)`, which stays bounded as `d` grows.
    pub fn r_gap(&self) -> Rational {
        &self.gap * Rational::from_integer(BigInt::from(self.r))
    }
}

/// Leading `t^{2k+2}` coefficient of the Hilbert numerator of every
/// `pi(i)`, zero when `i_0 = 0`.
pub fn leading_coefficients(params: &SecantParams) -> Vec<(JumpTuple, Rational)> {
    enumerate_tuples(params.g(), params.k())
        .into_iter()
        .map(|t| {
            let l = if has_full_regularity(&t) {
                hn_leading_coefficient(params, &t).expect("i_0 >= 1 checked")
            } else {
                Rational::zero()
            };
            (t, l)
        })
        .collect()
}

/// Lower bound on the coefficient of the dominant diagram in any
/// decomposition `sum c_i pi(i)` with `sum c_i = 1`, `c_i >= 0` whose
/// leading Hilbert-numerator coefficient equals `target`.
///
/// Since `target = sum c_i L_i <= c* L* + (1 - c*) M` with `M` the largest
/// non-dominant `L_i`, we get `c* >= (target - M) / (L* - M)`.
pub fn purity_lower_bound_for_target(
    params: &SecantParams,
    target: &Rational,
) -> Result<Rational, AsymptoticsError> {
    let dominant = params.dominant_tuple();
    let mut top = None;
    let mut rest_max = Rational::zero();
    for (t, l) in leading_coefficients(params) {
        if t == dominant {
            top = Some(l);
        } else if l > rest_max {
            rest_max = l;
        }
    }
    let top = top.expect("dominant tuple is enumerated");
    if top <= rest_max {
        return Err(AsymptoticsError::DegenerateBound(*params));
    }
    let bound = (target - &rest_max) / (top - rest_max);
    Ok(clamp_unit(bound))
}

/// The bound for the normalized secant Betti table, whose leading
/// coefficient is `C(g+k, k+1) / deg`.
pub fn purity_lower_bound(params: &SecantParams) -> Result<Rational, AsymptoticsError> {
    purity_lower_bound_for_target(params, &normalized_leading_coefficient(params))
}

fn clamp_unit(x: Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else if x > Rational::one() {
        Rational::one()
    } else {
        x
    }
}

fn degree_range(d_min: i64, d_max: i64, step: i64) -> Result<Vec<i64>, AsymptoticsError> {
    if step <= 0 {
        return Err(AsymptoticsError::InvalidRange(format!("step {step} must be positive")));
    }
    if d_min > d_max {
        return Ok(Vec::new());
    }
    Ok((d_min..=d_max).step_by(step as usize).collect())
}

/// Exact purity bounds for `d = d_min, d_min + step, ..., <= d_max`.
pub fn purity_sweep(
    g: i64,
    k: i64,
    d_min: i64,
    d_max: i64,
    step: i64,
) -> Result<Vec<PuritySweepRow>, AsymptoticsError> {
    let degrees = degree_range(d_min, d_max, step)?;
    if degrees.is_empty() {
        return Ok(Vec::new());
    }
    if d_min < 2 * g + 2 * k + 1 {
        return Err(AsymptoticsError::InvalidRange(format!(
            "d_min {d_min} is below 2g+2k+1 = {}",
            2 * g + 2 * k + 1
        )));
    }
    degrees
        .into_par_iter()
        .map(|d| {
            let params = SecantParams::new(g, k, d)?;
            let lower_bound = purity_lower_bound(&params)?;
            Ok(PuritySweepRow {
                g,
                k,
                d,
                r: params.r(),
                gap: Rational::one() - &lower_bound,
                lower_bound,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Binomial / normal limits

/// `p = round(r/2 + a sqrt(r)/2)` (halves rounded up), clamped to the
/// range `1..=r-g-2k-1` where the dominant closed form applies.
pub fn target_column(params: &SecantParams, a: f64) -> i64 {
    let r = params.r() as f64;
    let raw = (r / 2.0 + a * r.sqrt() / 2.0 + 0.5).floor() as i64;
    let hi = params.r() - params.g() - 2 * params.k() - 1;
    raw.clamp(1, hi.max(1))
}

/// `sqrt(2 pi r) / 2^{r+1} * C(r, p)`, exact for `r <= EXACT_MAX_R`.
pub fn stirling_ratio(r: i64, p: i64) -> Result<f64, AsymptoticsError> {
    if r <= EXACT_MAX_R {
        stirling_ratio_exact(r, p)
    } else {
        stirling_ratio_log(r, p)
    }
}

fn check_column(r: i64, p: i64) -> Result<(), AsymptoticsError> {
    if r < 0 || p < 0 || p > r {
        return Err(AsymptoticsError::OutOfRange { r, p });
    }
    Ok(())
}

pub fn stirling_ratio_exact(r: i64, p: i64) -> Result<f64, AsymptoticsError> {
    check_column(r, p)?;
    let q = Rational::new(binomial(r, p), BigInt::one() << (r + 1) as usize);
    Ok((2.0 * std::f64::consts::PI * r as f64).sqrt() * to_f64(&q))
}

pub fn stirling_ratio_log(r: i64, p: i64) -> Result<f64, AsymptoticsError> {
    check_column(r, p)?;
    let ln = 0.5 * (2.0 * std::f64::consts::PI * r as f64).ln()
        - (r + 1) as f64 * std::f64::consts::LN_2
        + ln_binomial(r as u64, p as u64);
    Ok(ln.exp())
}

/// `ln kappa_{p,k+1}` of the dominant diagram, from the closed form.
pub fn ln_kappa_dominant(params: &SecantParams, p: i64) -> Result<f64, AsymptoticsError> {
    let (r, g, k) = (params.r(), params.g(), params.k());
    let hi = r - g - 2 * k - 1;
    if p < 1 || p > hi {
        return Err(SecantError::OutOfRange { p, lo: 1, hi }.into());
    }
    let ln = |x: i64| (x as f64).ln();
    let mut acc = ln_binomial((r - 2 * k) as u64, p as u64) + ln(p) - ln(p + k + 1) - ln(r - 2 * k);
    acc += (k..=2 * k).map(|i| ln(r - p - g - i)).sum::<f64>();
    acc -= (k..2 * k).map(|i| ln(r - p - i)).sum::<f64>();
    Ok(acc)
}

/// `kappa_dominant(p) / (C(r, p) / 2^{2k+1})` at an explicit column.
pub fn lemma42_ratio_at(params: &SecantParams, p: i64) -> Result<f64, AsymptoticsError> {
    let (r, k) = (params.r(), params.k());
    if r <= EXACT_MAX_R {
        let kappa = kappa_dominant(params, p)?;
        let scale = Rational::new(BigInt::one() << (2 * k + 1) as usize, binomial(r, p));
        return Ok(to_f64(&(kappa * scale)));
    }
    let ln = ln_kappa_dominant(params, p)? + (2 * k + 1) as f64 * std::f64::consts::LN_2
        - ln_binomial(r as u64, p as u64);
    Ok(ln.exp())
}

/// [`lemma42_ratio_at`] at the column picked by [`target_column`].
pub fn lemma42_ratio(params: &SecantParams, a: f64) -> Result<f64, AsymptoticsError> {
    lemma42_ratio_at(params, target_column(params, a))
}

/// `deg * (k+1)! / r^{k+1}` as a float; tends to 1.
pub fn degree_factor(params: &SecantParams) -> f64 {
    to_f64(&degree_ratio(params))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub g: i64,
    pub k: i64,
    pub d: i64,
    pub r: i64,
    pub p: i64,
    pub a_target: f64,
    pub value: f64,
    /// `exp(-a^2)`.
    pub limit: f64,
}

/// `F_{g,k}(d) * deg * kappa_dominant(p)` with
/// `F_{g,k}(d) = (k+1)! / (2^{r-2k} r^k) * sqrt(2 pi / r)`.
pub fn normal_dist_value_at(params: &SecantParams, p: i64) -> Result<f64, AsymptoticsError> {
    let (r, k) = (params.r(), params.k());
    let root = (2.0 * std::f64::consts::PI / r as f64).sqrt();
    let k1_fact: BigInt = (1..=k + 1).map(BigInt::from).product();
    if r <= EXACT_MAX_R {
        let kappa = kappa_dominant(params, p)?;
        let den = (BigInt::one() << (r - 2 * k) as usize) * num_traits::pow(BigInt::from(r), k as usize);
        let q = Rational::new(k1_fact * secant_degree(params), den) * kappa;
        return Ok(root * to_f64(&q));
    }
    let ln = ln_bigint(&k1_fact) - (r - 2 * k) as f64 * std::f64::consts::LN_2
        - k as f64 * (r as f64).ln()
        + root.ln()
        + ln_bigint(&secant_degree(params))
        + ln_kappa_dominant(params, p)?;
    Ok(ln.exp())
}

pub fn normal_dist_point(params: &SecantParams, a: f64) -> Result<DistributionRow, AsymptoticsError> {
    let p = target_column(params, a);
    Ok(DistributionRow {
        g: params.g(),
        k: params.k(),
        d: params.d(),
        r: params.r(),
        p,
        a_target: a,
        value: normal_dist_value_at(params, p)?,
        limit: (-a * a).exp(),
    })
}

/// Relative gap between the direct evaluation of the normal-distribution
/// quantity and the product `stirling * degree_factor * lemma42`, which are
/// algebraically identical.
pub fn collapse_residual(params: &SecantParams, a: f64) -> Result<f64, AsymptoticsError> {
    let p = target_column(params, a);
    let direct = normal_dist_value_at(params, p)?;
    let chained = stirling_ratio(params.r(), p)? * degree_factor(params) * lemma42_ratio_at(params, p)?;
    Ok(((direct - chained) / chained).abs())
}

/// Cartesian sweep, ordered by `d` then by the order of `a_list`.
pub fn distribution_sweep(
    g: i64,
    k: i64,
    a_list: &[f64],
    d_list: &[i64],
) -> Result<Vec<DistributionRow>, AsymptoticsError> {
    let mut ds = d_list.to_vec();
    ds.sort_unstable();
    ds.dedup();
    let points: Vec<(i64, f64)> = ds
        .iter()
        .flat_map(|&d| a_list.iter().map(move |&a| (d, a)))
        .collect();
    points
        .into_par_iter()
        .map(|(d, a)| normal_dist_point(&SecantParams::new(g, k, d)?, a))
        .collect()
}

// ---------------------------------------------------------------------------
// Calibration fixture

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityCalibration {
    pub g: i64,
    pub k: i64,
    pub d_max: i64,
    /// Bound threshold as a fraction string.
    pub threshold: String,
    /// Smallest `d` from which the bound stays above the threshold up to
    /// `d_max`.
    pub d0: i64,
    /// Strict upper bound for `r * (1 - bound)` over `d <= d_max`.
    pub r_gap_ceiling: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCalibration {
    pub g: i64,
    pub k: i64,
    pub d_max: i64,
    /// Strict upper bound for `r * |deg (k+1)!/r^{k+1} - 1|`.
    pub ceiling: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Calibration {
    pub purity: Vec<PurityCalibration>,
    pub degree: Vec<DegreeCalibration>,
}

/// Next multiple of `1/100` strictly above `x`.
fn ceiling_above(x: &Rational) -> Rational {
    let hundred = Rational::from_integer(BigInt::from(100));
    Rational::new((x * &hundred).floor().to_integer() + 1, BigInt::from(100))
}

pub fn calibrate_purity(
    g: i64,
    k: i64,
    d_max: i64,
    threshold: &Rational,
) -> Result<PurityCalibration, AsymptoticsError> {
    let rows = purity_sweep(g, k, 2 * g + 2 * k + 1, d_max, 1)?;
    let d0 = rows
        .iter()
        .rev()
        .take_while(|row| &row.lower_bound >= threshold)
        .last()
        .map(|row| row.d)
        .ok_or_else(|| AsymptoticsError::InvalidRange(format!("threshold never reached by d={d_max}")))?;
    let worst = rows.iter().map(|row| row.r_gap()).max().unwrap_or_else(Rational::zero);
    Ok(PurityCalibration {
        g,
        k,
        d_max,
        threshold: format_rational(threshold),
        d0,
        r_gap_ceiling: format_rational(&ceiling_above(&worst)),
    })
}

pub fn calibrate_degree(g: i64, k: i64, d_max: i64) -> Result<DegreeCalibration, AsymptoticsError> {
    let worst = (2 * g + 2 * k + 1..=d_max)
        .into_par_iter()
        .map(|d| {
            let params = SecantParams::new(g, k, d)?;
            let dev = (degree_ratio(&params) - Rational::one()).abs();
            Ok(dev * Rational::from_integer(BigInt::from(params.r())))
        })
        .collect::<Result<Vec<_>, AsymptoticsError>>()?
        .into_iter()
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(DegreeCalibration {
        g,
        k,
        d_max,
        ceiling: format_rational(&ceiling_above(&worst)),
    })
}

/// Default calibration grid backing the acceptance fixture.
pub fn calibrate() -> Result<Calibration, AsymptoticsError> {
    let threshold = Rational::new(BigInt::from(99), BigInt::from(100));
    let purity = vec![calibrate_purity(2, 1, 5000, &threshold)?];
    let mut degree = Vec::new();
    for g in 1..=3 {
        for k in 0..=3 {
            degree.push(calibrate_degree(g, k, 2000)?);
        }
    }
    Ok(Calibration { purity, degree })
}

impl PurityCalibration {
    pub fn threshold(&self) -> Rational {
        parse_rational(&self.threshold).expect("fixture threshold")
    }

    pub fn r_gap_ceiling(&self) -> Rational {
        parse_rational(&self.r_gap_ceiling).expect("fixture ceiling")
    }
}

impl DegreeCalibration {
    pub fn ceiling(&self) -> Rational {
        parse_rational(&self.ceiling).expect("fixture ceiling")
    }
}
