//! Exact oracle-equality sweeps over `(g, k, d)` grids: each closed form is
//! compared with the value read off the pure-diagram construction.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::diagram::{BettiDiagram, DegreeSequence};
use crate::hilbert::{hilbert_numerator, multiplicity};
use crate::rational::Rational;
use crate::secant::{
    degree_sequence, enumerate_tuples, has_full_regularity, hn_leading_coefficient,
    hn_leading_coefficient_as_printed, kappa_dominant, pi, SecantParams,
};

/// `1 <= g <= g_max`, `0 <= k <= k_max`, `2g + 2k + 1 <= d <= d_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub g_max: i64,
    pub k_max: i64,
    pub d_max: i64,
}

impl Grid {
    pub fn params(&self) -> Vec<SecantParams> {
        let mut out = Vec::new();
        for g in 1..=self.g_max {
            for k in 0..=self.k_max {
                for d in 2 * g + 2 * k + 1..=self.d_max {
                    out.push(SecantParams::new(g, k, d).expect("grid respects d >= 2g+2k+1"));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn run<F>(name: &'static str, grid: &Grid, check: F) -> SuiteReport
where
    F: Fn(&SecantParams) -> (usize, Vec<String>) + Sync + Send,
{
    let results: Vec<(usize, Vec<String>)> = grid.params().par_iter().map(&check).collect();
    let checked = results.iter().map(|(n, _)| n).sum();
    let failures = results.into_iter().flat_map(|(_, f)| f).collect();
    SuiteReport { name, checked, failures }
}

/// Every `pi(i)` has multiplicity exactly one.
pub fn multiplicity_suite(grid: &Grid) -> SuiteReport {
    run("multiplicity", grid, |params| {
        let tuples = enumerate_tuples(params.g(), params.k());
        let failures = tuples
            .iter()
            .filter_map(|t| match multiplicity(&pi(params, t)) {
                Ok(m) if m.is_one() => None,
                Ok(m) => Some(format!("{params} {t}: multiplicity {m}")),
                Err(e) => Some(format!("{params} {t}: {e}")),
            })
            .collect();
        (tuples.len(), failures)
    })
}

/// The closed form for `kappa_{p,k+1}` of the dominant diagram equals the
/// pure-diagram entry for every valid `p`.
pub fn lemma41_suite(grid: &Grid) -> SuiteReport {
    run("lemma41", grid, |params| {
        let dom = pi(params, &params.dominant_tuple());
        let hi = params.r() - params.g() - 2 * params.k() - 1;
        let failures = (1..=hi)
            .filter_map(|p| {
                let closed = kappa_dominant(params, p).ok()?;
                let direct = dom.get(p as usize, params.k() + 1);
                (closed != direct).then(|| format!("{params} p={p}: closed {closed} vs diagram {direct}"))
            })
            .collect();
        (hi.max(0) as usize, failures)
    })
}

/// The leading-coefficient closed form equals the `t^{2k+2}` coefficient
/// of the Hilbert numerator, for every tuple with `i_0 >= 1`.
pub fn lemma33_suite(grid: &Grid, as_printed: bool) -> SuiteReport {
    let name = if as_printed { "lemma33 (as printed)" } else { "lemma33" };
    run(name, grid, |params| {
        let mut checked = 0;
        let mut failures = Vec::new();
        for t in enumerate_tuples(params.g(), params.k()) {
            if !has_full_regularity(&t) {
                continue;
            }
            checked += 1;
            let closed = if as_printed {
                hn_leading_coefficient_as_printed(params, &t)
            } else {
                hn_leading_coefficient(params, &t)
            }
            .expect("i_0 >= 1");
            let direct = match hilbert_numerator(&pi(params, &t)) {
                Ok(hn) => hn.coefficient(2 * params.k() + 2),
                Err(e) => {
                    failures.push(format!("{params} {t}: {e}"));
                    continue;
                }
            };
            if closed != direct {
                failures.push(format!("{params} {t}: closed {closed} vs numerator {direct}"));
            }
        }
        (checked, failures)
    })
}

/// `sum_p (-1)^p kappa_p e_p^j = 0` for `0 <= j < n`.
pub fn herzog_kuhl_holds(b: &BettiDiagram, e: &DegreeSequence) -> bool {
    let n = e.length();
    (0..n as u32).all(|j| {
        let mut sum = Rational::zero();
        for (p, &ep) in e.degrees().iter().enumerate() {
            let term = b.get(p, ep - p as i64) * Rational::from_integer(BigInt::from(ep).pow(j));
            if p % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        sum.is_zero()
    })
}

/// Herzog-Kühl relations for every `pi(i)` on the grid.
pub fn herzog_kuhl_suite(grid: &Grid) -> SuiteReport {
    run("herzog-kuhl", grid, |params| {
        let tuples = enumerate_tuples(params.g(), params.k());
        let failures = tuples
            .iter()
            .filter(|t| !herzog_kuhl_holds(&pi(params, t), &degree_sequence(params, t)))
            .map(|t| format!("{params} {t}: power sums do not vanish"))
            .collect();
        (tuples.len(), failures)
    })
}
