//! Spacings of uniformly scattered return times.

/// Density of the gap between consecutive returns when `k` returns are
/// uniform over a window of length `t0`: (k/t0)(1 - w/t0)^(k-1).
pub fn interval_pdf(w: f64, k: u32, t0: f64) -> f64 {
    if !(0.0..=t0).contains(&w) || k == 0 {
        return 0.0;
    }
    let k = f64::from(k);
    k / t0 * (1.0 - w / t0).powf(k - 1.0)
}

/// Distribution function of the same gap, 1 - (1 - w/t0)^k.
pub fn interval_cdf(w: f64, k: f64, t0: f64) -> f64 {
    if w <= 0.0 {
        0.0
    } else if w >= t0 {
        1.0
    } else {
        1.0 - (1.0 - w / t0).powf(k)
    }
}

pub fn interval_mean(k: u32, t0: f64) -> f64 {
    t0 / (f64::from(k) + 1.0)
}

/// Probability that at least one of `k` returns lands within one pass time,
/// 1 - (1 - 1/k_th)^k.
pub fn prob_multi_pass(k: f64, k_th: f64) -> f64 {
    1.0 - (1.0 - 1.0 / k_th).powf(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::numerics::integrate;

    #[test]
    fn single_point_is_uniform() {
        for w in [0.0, 0.3, 0.99] {
            assert_eq!(interval_pdf(w, 1, 2.0), 0.5);
        }
        assert_eq!(interval_pdf(2.5, 1, 2.0), 0.0);
    }

    #[test]
    fn normalized_with_known_mean() {
        for (k, t0) in [(1u32, 1.0), (9, 1.0), (20, 3.5), (200, 10.0)] {
            let mass = integrate(|w| interval_pdf(w, k, t0), 0.0, t0, 1e-12).unwrap().value;
            let mean = integrate(|w| w * interval_pdf(w, k, t0), 0.0, t0, 1e-12).unwrap().value;
            assert!((mass - 1.0).abs() < 1e-8);
            assert!((mean - interval_mean(k, t0)).abs() < 1e-8);
        }
        assert!((interval_mean(9, 1.0) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn multi_pass_limits() {
        assert_eq!(prob_multi_pass(0.0, 50.0), 0.0);
        let kth = 1000.0f64;
        let p = prob_multi_pass(kth * kth.ln(), kth);
        assert!((p - (1.0 - 1.0 / kth)).abs() < 1e-3);
        let p = prob_multi_pass(kth / kth.ln(), kth);
        assert!((p - 0.1347).abs() < 1e-3);
    }
}
