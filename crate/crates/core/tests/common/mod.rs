//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

/// `J_0(x) … J_n_max(x)` by Miller's downward recurrence, normalized with
/// `J_0 + 2·Σ J_2k = 1`. Shares no code with the library's series.
pub fn bessel_miller(n_max: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut v = vec![0.0; n_max + 1];
        v[0] = 1.0;
        return v;
    }
    let start = 2 * ((n_max + x.abs().ceil() as usize + 40) / 2);
    let mut j = vec![0.0; start + 2];
    j[start] = 1e-300;
    for k in (1..=start).rev() {
        j[k - 1] = 2.0 * k as f64 / x * j[k] - j[k + 1];
        // Rescale before overflow; normalization removes the factor.
        if j[k - 1].abs() > 1e250 {
            for v in j.iter_mut().skip(k - 1) {
                *v *= 1e-250;
            }
        }
    }
    let norm = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
    j.truncate(n_max + 1);
    j.iter().map(|v| v / norm).collect()
}

/// Line weights `J_n(β)²` for `n = −n_max..=n_max`.
pub fn bessel_weights_miller(beta: f64, n_max: usize) -> Vec<f64> {
    let j = bessel_miller(n_max, beta);
    (-(n_max as i64)..=n_max as i64)
        .map(|n| j[n.unsigned_abs() as usize].powi(2))
        .collect()
}

pub fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn miller_matches_reference_values() {
    // Reference values to 16 digits.
    let j = bessel_miller(2, 1.0);
    assert!((j[0] - 0.7651976865579666).abs() < 1e-15);
    assert!((j[1] - 0.44005058574493355).abs() < 1e-15);
    assert!((j[2] - 0.1149034849319005).abs() < 1e-15);
    assert!((bessel_miller(1, 0.1)[1] - 0.049937526036242005).abs() < 1e-16);
}
