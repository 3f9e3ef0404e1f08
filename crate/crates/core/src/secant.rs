//! Pure diagrams attached to secant varieties of a curve.
//!
//! For a curve of genus `g` embedded in degree `d` (so `r = d - g`), the
//! secant variety of `k`-planes has a Betti table confined to a fixed
//! shape, and the pure diagrams that can occur in its decompositions are
//! indexed by weakly increasing jump tuples `0 <= i_0 <= ... <= i_k <= g`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diagram::{pure_diagram, BettiDiagram, DegreeSequence};
use crate::rational::{binomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SecantError {
    #[error("invalid parameters g={g}, k={k}, d={d}: {why}")]
    InvalidParams { g: i64, k: i64, d: i64, why: &'static str },
    #[error("invalid jump tuple {tuple:?}: {why}")]
    InvalidTuple { tuple: Vec<i64>, why: &'static str },
    #[error("column {p} outside {lo}..={hi}")]
    OutOfRange { p: i64, lo: i64, hi: i64 },
    #[error("tuple {0:?} starts with 0; its Hilbert numerator has degree below 2k+2")]
    TupleNotMaximalRegularity(Vec<i64>),
}

/// Genus, secant index and embedding degree, with `d >= 2g + 2k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SecantParams {
    g: i64,
    k: i64,
    d: i64,
}

impl SecantParams {
    pub fn new(g: i64, k: i64, d: i64) -> Result<Self, SecantError> {
        let bad = |why| Err(SecantError::InvalidParams { g, k, d, why });
        if g < 1 {
            return bad("genus must be at least 1");
        }
        if k < 0 {
            return bad("secant index must be nonnegative");
        }
        if d < 2 * g + 2 * k + 1 {
            return bad("degree must satisfy d >= 2g + 2k + 1");
        }
        Ok(Self { g, k, d })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Dimension of the ambient projective space, `d - g`.
    pub fn r(&self) -> i64 {
        self.d - self.g
    }

    /// Projective dimension of every diagram in the family, `r - 2k - 1`.
    pub fn codim(&self) -> i64 {
        self.r() - 2 * self.k - 1
    }

    /// The all-`g` tuple indexing the dominant diagram.
    pub fn dominant_tuple(&self) -> JumpTuple {
        JumpTuple(vec![self.g; (self.k + 1) as usize])
    }
}

impl fmt::Display for SecantParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} k={} d={}", self.g, self.k, self.d)
    }
}

/// Weakly increasing tuple `(i_0, ..., i_k)` with entries in `0..=g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JumpTuple(Vec<i64>);

impl JumpTuple {
    pub fn new(values: Vec<i64>, params: &SecantParams) -> Result<Self, SecantError> {
        let bad = |why, tuple| Err(SecantError::InvalidTuple { tuple, why });
        if values.len() as i64 != params.k + 1 {
            return bad("length must be k+1", values);
        }
        if values.iter().any(|&i| i < 0 || i > params.g) {
            return bad("entries must lie in 0..=g", values);
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return bad("entries must be weakly increasing", values);
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// `prod_j (i_j + j)`.
    pub fn jump_product(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &i)| BigInt::from(i + j as i64))
            .product()
    }
}

impl fmt::Display for JumpTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All weakly increasing `(k+1)`-tuples over `0..=g`, lexicographically.
pub fn enumerate_tuples(g: i64, k: i64) -> Vec<JumpTuple> {
    let len = (k + 1) as usize;
    let mut out = Vec::new();
    let mut cur = vec![0i64; len];
    loop {
        out.push(JumpTuple(cur.clone()));
        // bump the rightmost entry that can grow, reset the tail to it
        let Some(pos) = (0..len).rev().find(|&j| cur[j] < g) else {
            return out;
        };
        let v = cur[pos] + 1;
        cur[pos..].iter_mut().for_each(|x| *x = v);
    }
}

/// `0` followed by `{1..=r+1}` minus `{1..=k+1}` and minus the jump
/// positions `r + 1 - (i_j + j)`.
pub fn degree_sequence(params: &SecantParams, i: &JumpTuple) -> DegreeSequence {
    let r = params.r();
    let removed: BTreeSet<i64> = (1..=params.k + 1)
        .chain(i.0.iter().enumerate().map(|(j, &ij)| r + 1 - (ij + j as i64)))
        .collect();
    let degrees: Vec<i64> = std::iter::once(0)
        .chain((1..=r + 1).filter(|x| !removed.contains(x)))
        .collect();
    debug_assert_eq!(degrees.len() as i64, params.codim() + 1);
    DegreeSequence::new(degrees).expect("enumeration of a set is strictly increasing")
}

/// The multiplicity-one pure diagram on [`degree_sequence`].
pub fn pi(params: &SecantParams, i: &JumpTuple) -> BettiDiagram {
    pure_diagram(&degree_sequence(params, i))
}

/// `sum_{i=0}^{min(k+1,g)} C(d-g-k-i, k+1-i) C(g, i)`.
pub fn secant_degree(params: &SecantParams) -> BigInt {
    let SecantParams { g, k, d } = *params;
    (0..=(k + 1).min(g))
        .map(|i| binomial(d - g - k - i, k + 1 - i) * binomial(g, i))
        .sum()
}

/// `C(g+k, k+1)`, the entry at `(r-2k-1, 2k+2)`.
pub fn bottom_right_betti(params: &SecantParams) -> BigInt {
    binomial(params.g + params.k, params.k + 1)
}

/// Positions where a secant Betti table may be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeMask {
    params: SecantParams,
}

impl ShapeMask {
    pub fn contains(&self, p: usize, q: i64) -> bool {
        let (r, g, k) = (self.params.r(), self.params.g, self.params.k);
        let p = p as i64;
        let last = r - 2 * k - 1;
        if p == 0 {
            return q == 0;
        }
        if p > last {
            return false;
        }
        q == k + 1 || (p >= r - g - 2 * k && (k + 2..=2 * k + 2).contains(&q))
    }

    pub fn positions(&self) -> BTreeSet<(usize, i64)> {
        let (r, g, k) = (self.params.r(), self.params.g, self.params.k);
        let last = r - 2 * k - 1;
        let mut out = BTreeSet::from([(0usize, 0i64)]);
        for p in 1..=last {
            out.insert((p as usize, k + 1));
        }
        for p in (r - g - 2 * k).max(1)..=last {
            for q in k + 2..=2 * k + 2 {
                out.insert((p as usize, q));
            }
        }
        out
    }

    pub fn admits(&self, b: &BettiDiagram) -> bool {
        b.support().all(|(p, q)| self.contains(p, q))
    }
}

pub fn shape_mask(params: &SecantParams) -> ShapeMask {
    ShapeMask { params: *params }
}

/// Closed form for `kappa_{p,k+1}` of the dominant diagram,
/// valid for `1 <= p <= r - g - 2k - 1`:
///
/// `C(r-2k, p) * p/(p+k+1) * prod_{i=k}^{2k}(r-p-g-i) / ((r-2k) prod_{i=k}^{2k-1}(r-p-i))`
pub fn kappa_dominant(params: &SecantParams, p: i64) -> Result<Rational, SecantError> {
    let (r, g, k) = (params.r(), params.g, params.k);
    let hi = r - g - 2 * k - 1;
    if p < 1 || p > hi {
        return Err(SecantError::OutOfRange { p, lo: 1, hi });
    }
    let num: BigInt = binomial(r - 2 * k, p)
        * p
        * (k..=2 * k).map(|i| BigInt::from(r - p - g - i)).product::<BigInt>();
    let den: BigInt = BigInt::from((p + k + 1) * (r - 2 * k))
        * (k..2 * k).map(|i| BigInt::from(r - p - i)).product::<BigInt>();
    Ok(Rational::new(num, den))
}

/// Leading (`t^{2k+2}`) coefficient of the Hilbert numerator of `pi(i)`
/// for tuples with `i_0 >= 1`:
/// `prod_j (i_j + j) / ((r+1) prod_{i=k+1}^{2k} (r-i))`.
///
/// Running the denominator product from `i = k-1` instead gives degree
/// `k+3` in `r` and disagrees with the bottom-right entry of the pure
/// diagram (already for `g=3, k=1, d=11`). The product from `k+1` is what
/// the pure-diagram formula gives, and it is checked against the Hilbert
/// numerator in the tests.
pub fn hn_leading_coefficient(params: &SecantParams, i: &JumpTuple) -> Result<Rational, SecantError> {
    leading_coefficient_with_range(params, i, params.k + 1)
}

/// The same closed form with the denominator product starting at `k-1`.
/// Kept to demonstrate the mismatch.
pub fn hn_leading_coefficient_as_printed(
    params: &SecantParams,
    i: &JumpTuple,
) -> Result<Rational, SecantError> {
    leading_coefficient_with_range(params, i, params.k - 1)
}

fn leading_coefficient_with_range(
    params: &SecantParams,
    i: &JumpTuple,
    from: i64,
) -> Result<Rational, SecantError> {
    if i.0[0] == 0 {
        return Err(SecantError::TupleNotMaximalRegularity(i.0.clone()));
    }
    let r = params.r();
    let den: BigInt = BigInt::from(r + 1)
        * (from..=2 * params.k)
            .map(|j| BigInt::from(r - j))
            .product::<BigInt>();
    Ok(Rational::new(i.jump_product(), den))
}

/// `C(g+k, k+1) / deg`: leading Hilbert-numerator coefficient of the secant
/// Betti table scaled to multiplicity one.
pub fn normalized_leading_coefficient(params: &SecantParams) -> Rational {
    Rational::new(bottom_right_betti(params), secant_degree(params))
}

/// Columns `(r-2k-g, r-2k-1)` where the bottom row is eventually nonzero.
pub fn nonvanishing_range(params: &SecantParams) -> (i64, i64) {
    let r = params.r();
    (r - 2 * params.k - params.g, r - 2 * params.k - 1)
}

/// `deg * (k+1)! / r^{k+1}` as an exact rational.
pub fn degree_ratio(params: &SecantParams) -> Rational {
    let k1 = (params.k + 1) as usize;
    let fact: BigInt = (1..=params.k + 1).map(BigInt::from).product();
    let rpow = num_traits::pow(BigInt::from(params.r()), k1);
    Rational::new(secant_degree(params) * fact, rpow)
}

/// Whether `i_0 >= 1`, i.e. the diagram reaches weight `2k+2`.
pub fn has_full_regularity(i: &JumpTuple) -> bool {
    !i.0[0].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::pure_diagram_of;
    use crate::hilbert::{hilbert_numerator, multiplicity};
    use crate::rational::{int, rat};

    fn params(g: i64, k: i64, d: i64) -> SecantParams {
        SecantParams::new(g, k, d).unwrap()
    }

    fn tuple(v: &[i64], p: &SecantParams) -> JumpTuple {
        JumpTuple::new(v.to_vec(), p).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(SecantParams::new(3, 1, 8).is_err());
        assert!(SecantParams::new(3, 1, 9).is_ok());
        assert!(SecantParams::new(0, 1, 11).is_err());
        assert!(SecantParams::new(1, -1, 11).is_err());
        let p = params(3, 1, 11);
        assert_eq!(p.r(), 8);
        assert!(JumpTuple::new(vec![1], &p).is_err());
        assert!(JumpTuple::new(vec![2, 1], &p).is_err());
        assert!(JumpTuple::new(vec![1, 4], &p).is_err());
        assert!(JumpTuple::new(vec![-1, 1], &p).is_err());
    }

    #[test]
    fn known_degree_sequences() {
        let p = params(3, 1, 11);
        assert_eq!(degree_sequence(&p, &tuple(&[1, 3], &p)).degrees(), &[0, 3, 4, 6, 7, 9]);
        let p = params(4, 2, 15);
        assert_eq!(
            degree_sequence(&p, &tuple(&[1, 3, 3], &p)).degrees(),
            &[0, 4, 5, 6, 9, 10, 12]
        );
    }

    #[test]
    fn all_zero_tuple_is_a_single_row() {
        for (g, k, d) in [(3, 1, 11), (2, 2, 14), (1, 0, 5)] {
            let p = params(g, k, d);
            let z = tuple(&vec![0; (k + 1) as usize], &p);
            let e = degree_sequence(&p, &z);
            let r = p.r();
            let expected: Vec<i64> = std::iter::once(0).chain(k + 2..=r - k).collect();
            assert_eq!(e.degrees(), expected.as_slice());
            let b = pi(&p, &z);
            assert!(b.iter().all(|(col, q, _)| col == 0 || q == k + 1));
        }
    }

    #[test]
    fn dominant_degree_sequence() {
        for (g, k, d) in [(3, 1, 11), (2, 2, 20), (1, 0, 5), (4, 3, 40)] {
            let p = params(g, k, d);
            let r = p.r();
            let expected: Vec<i64> = std::iter::once(0)
                .chain(k + 2..=r - k - g)
                .chain(r - g + 2..=r + 1)
                .collect();
            assert_eq!(degree_sequence(&p, &p.dominant_tuple()).degrees(), expected.as_slice());
        }
        let p = params(1, 0, 5);
        assert_eq!(degree_sequence(&p, &p.dominant_tuple()).degrees(), &[0, 2, 3, 5]);
    }

    #[test]
    fn tuple_enumeration() {
        let show = |g, k| -> Vec<Vec<i64>> {
            enumerate_tuples(g, k).into_iter().map(|t| t.0).collect()
        };
        assert_eq!(show(1, 0), vec![vec![0], vec![1]]);
        assert_eq!(show(1, 1), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        for g in 1..=5 {
            for k in 0..=3 {
                let all = enumerate_tuples(g, k);
                assert_eq!(BigInt::from(all.len()), binomial(g + k + 1, k + 1));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(enumerate_tuples(3, 1).len(), 10);
    }

    #[test]
    fn degrees_of_secant_varieties() {
        for g in 1..=6 {
            for d in 2 * g + 1..40 {
                assert_eq!(secant_degree(&params(g, 0, d)), BigInt::from(d));
            }
        }
        assert_eq!(secant_degree(&params(1, 1, 7)), BigInt::from(14));
    }

    #[test]
    fn bottom_right_numbers() {
        assert_eq!(bottom_right_betti(&params(1, 3, 20)), BigInt::from(1));
        assert_eq!(bottom_right_betti(&params(3, 1, 11)), BigInt::from(6));
        assert_eq!(bottom_right_betti(&params(4, 2, 15)), BigInt::from(20));
    }

    #[test]
    fn mask_matches_known_pattern() {
        let p = params(3, 1, 11);
        let mask = shape_mask(&p);
        assert!(!mask.contains(1, 1));
        assert!(mask.contains(5, 4));
        assert!(mask.contains(0, 0));
        assert!(!mask.contains(6, 4));
        assert!(!mask.contains(2, 3));
        assert!(mask.contains(3, 3));
        assert_eq!(mask.positions().len(), 1 + 5 + 3 * 2);
        assert!(mask.positions().iter().all(|&(col, q)| mask.contains(col, q)));
        for g in 1..=3 {
            for k in 0..=2 {
                for d in [2 * g + 2 * k + 1, 2 * g + 2 * k + 6] {
                    let p = params(g, k, d);
                    let mask = shape_mask(&p);
                    for t in enumerate_tuples(g, k) {
                        assert!(mask.admits(&pi(&p, &t)), "{p} {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn curve_shape_when_k_is_zero() {
        let p = params(2, 0, 12);
        let mask = shape_mask(&p);
        let r = p.r();
        let expected: BTreeSet<(usize, i64)> = std::iter::once((0, 0))
            .chain((1..=r - 1).map(|c| (c as usize, 1)))
            .chain((r - 2..=r - 1).map(|c| (c as usize, 2)))
            .collect();
        assert_eq!(mask.positions(), expected);
    }

    #[test]
    fn dominant_closed_form() {
        let p = params(3, 1, 11);
        let dom = pi(&p, &p.dominant_tuple());
        assert_eq!(degree_sequence(&p, &p.dominant_tuple()).degrees(), &[0, 3, 4, 7, 8, 9]);
        assert_eq!(kappa_dominant(&p, 1).unwrap(), rat(1, 3));
        assert_eq!(kappa_dominant(&p, 1).unwrap(), dom.get(1, 2));
        assert_eq!(kappa_dominant(&p, 2).unwrap(), dom.get(2, 2));
        // the (1,3) diagram has a different entry there
        assert_eq!(pure_diagram_of(&[0, 3, 4, 6, 7, 9]).unwrap().get(1, 2), rat(5, 9));
        assert!(matches!(kappa_dominant(&p, 0), Err(SecantError::OutOfRange { .. })));
        assert!(matches!(kappa_dominant(&p, 3), Err(SecantError::OutOfRange { .. })));
    }

    #[test]
    fn dominant_closed_form_for_curves() {
        for r in 4..30 {
            let p = params(1, 0, r + 1);
            let dom = pi(&p, &p.dominant_tuple());
            for col in 1..=r - 2 {
                let expected = Rational::new(
                    binomial(r, col) * col * (r - col - 1),
                    BigInt::from((col + 1) * r),
                );
                assert_eq!(kappa_dominant(&p, col).unwrap(), expected);
                assert_eq!(dom.get(col as usize, 1), expected);
            }
        }
    }

    #[test]
    fn leading_coefficient_closed_form() {
        let p = params(3, 1, 11);
        let t = tuple(&[1, 3], &p);
        assert_eq!(hn_leading_coefficient(&p, &t).unwrap(), rat(2, 27));
        let hn = hilbert_numerator(&pi(&p, &t)).unwrap();
        assert_eq!(hn.degree(), Some(4));
        assert_eq!(hn.coefficient(4), rat(2, 27));
        assert_ne!(hn_leading_coefficient_as_printed(&p, &t).unwrap(), rat(2, 27));

        for d in 3..20 {
            let p = params(1, 0, d);
            let t = tuple(&[1], &p);
            assert_eq!(hn_leading_coefficient(&p, &t).unwrap(), rat(1, p.r() + 1));
            assert_eq!(hilbert_numerator(&pi(&p, &t)).unwrap().coefficient(2), rat(1, p.r() + 1));
        }
        let z = tuple(&[0, 2], &params(3, 1, 11));
        assert!(matches!(
            hn_leading_coefficient(&params(3, 1, 11), &z),
            Err(SecantError::TupleNotMaximalRegularity(_))
        ));
    }

    #[test]
    fn regularity_tracks_first_jump() {
        for (g, k, d) in [(3, 1, 11), (2, 2, 16), (4, 1, 20)] {
            let p = params(g, k, d);
            for t in enumerate_tuples(g, k) {
                let b = pi(&p, &t);
                assert_eq!(b.regularity().unwrap() == 2 * k + 2, has_full_regularity(&t));
                assert_eq!(b.projective_dimension().unwrap() as i64, p.codim());
                assert_eq!(multiplicity(&b).unwrap(), int(1));
            }
        }
    }

    #[test]
    fn bottom_row_support_of_dominant() {
        for (g, k, d) in [(3, 1, 11), (2, 2, 30), (4, 0, 25)] {
            let p = params(g, k, d);
            let (lo, hi) = nonvanishing_range(&p);
            assert_eq!(hi - lo + 1, g);
            let dom = pi(&p, &p.dominant_tuple());
            let cols: Vec<i64> = dom
                .iter()
                .filter(|&(_, q, _)| q == 2 * k + 2)
                .map(|(c, _, _)| c as i64)
                .collect();
            assert_eq!(cols, (lo..=hi).collect::<Vec<_>>());
        }
        assert_eq!(nonvanishing_range(&params(3, 1, 11)), (3, 5));
    }

    #[test]
    fn degree_ratio_approaches_one() {
        let p = params(2, 2, 20_000);
        let x = crate::rational::to_f64(&degree_ratio(&p));
        assert!((x - 1.0).abs() < 1e-2, "{x}");
    }
}
