//! Log-domain factorials and binomials for arguments where the exact
//! bignums are wasteful (`r` in the millions).
//!
//! `ln C(n, k)` is assembled so that the large `n ln n` terms cancel
//! analytically; the result keeps close to full relative precision even
//! when it is a small difference of huge log-factorials.

use std::f64::consts::PI;
use std::sync::OnceLock;

const TABLE_SIZE: usize = 256;

fn ln_factorial_table() -> &'static [f64; TABLE_SIZE] {
    static TABLE: OnceLock<[f64; TABLE_SIZE]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; TABLE_SIZE];
        for i in 1..TABLE_SIZE {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    })
}

// Tail of the Stirling series for ln n!, past n ln n - n + ln(2 pi n)/2.
fn stirling_tail(n: f64) -> f64 {
    let inv = 1.0 / n;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// `ln n!`.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < TABLE_SIZE {
        return ln_factorial_table()[n as usize];
    }
    let x = n as f64;
    x * x.ln() - x + 0.5 * (2.0 * PI * x).ln() + stirling_tail(x)
}

/// `ln C(n, k)` for `0 <= k <= n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n, "ln_binomial: k > n");
    let m = k.min(n - k);
    if m == 0 {
        return 0.0;
    }
    if (n as usize) < TABLE_SIZE {
        let t = ln_factorial_table();
        return t[n as usize] - t[k as usize] - t[(n - k) as usize];
    }
    if (m as usize) < TABLE_SIZE {
        // C(n, m) = prod_{i<m} (n - i) / (i + 1)
        return (0..m)
            .map(|i| ((n - i) as f64 / (i + 1) as f64).ln())
            .sum();
    }
    let (nf, kf) = (n as f64, m as f64);
    let rest = nf - kf;
    // n ln n - k ln k - (n-k) ln(n-k) without cancellation
    let entropy = kf * (nf / kf).ln() - rest * (-kf / nf).ln_1p();
    entropy + 0.5 * (nf / (2.0 * PI * kf * rest)).ln() + stirling_tail(nf)
        - stirling_tail(kf)
        - stirling_tail(rest)
}
