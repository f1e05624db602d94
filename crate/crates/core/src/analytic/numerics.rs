//! Root bracketing and adaptive quadrature.

use crate::error::{Error, Result};

/// Bisection root of `f` on `[a, b]` to absolute tolerance `tol` in x.
/// Returns `None` when `f(a)` and `f(b)` share a strict sign.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return None;
    }
    for _ in 0..400 {
        let m = 0.5 * (a + b);
        if b - a <= tol || m == a || m == b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

const MAX_DEPTH: u32 = 60;
const MAX_EVALS: usize = 2_000_000;

struct Simpson<'a, F: Fn(f64) -> f64> {
    f: &'a F,
    evals: usize,
    failed: bool,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn step(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evals += 2;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth >= MAX_DEPTH || self.evals > MAX_EVALS {
            if delta.abs() > 15.0 * tol {
                self.failed = true;
            }
            return (left + right + delta / 15.0, delta.abs() / 15.0);
        }
        if delta.abs() <= 15.0 * tol {
            return (left + right + delta / 15.0, delta.abs() / 15.0);
        }
        let (l, el) = self.step(a, m, fa, flm, fm, left, tol / 2.0, depth + 1);
        let (r, er) = self.step(m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
        (l + r, el + er)
    }
}

/// Adaptive Simpson integration of `f` over `[a, b]` with absolute tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error_estimate: 0.0, evaluations: 0 });
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    if !(fa.is_finite() && fb.is_finite() && fm.is_finite()) {
        return Err(Error::Numerical {
            what: "quadrature",
            detail: format!("integrand not finite on [{a}, {b}]"),
        });
    }
    let mut s = Simpson { f: &f, evals: 3, failed: false };
    // start from two halves so symmetric integrands cannot fool a single estimate
    let m = 0.5 * (a + b);
    let fl = f(0.5 * (a + m));
    let fr = f(0.5 * (m + b));
    let left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    let (l, el) = s.step(a, m, fa, fl, fm, left, tol / 2.0, 1);
    let (r, er) = s.step(m, b, fm, fr, fb, right, tol / 2.0, 1);
    let value = l + r;
    if s.failed || !value.is_finite() {
        return Err(Error::Numerical {
            what: "quadrature",
            detail: format!(
                "no convergence on [{a}, {b}] after {} evaluations (estimate {value}, error {})",
                s.evals,
                el + er
            ),
        });
    }
    Ok(Quadrature { value, error_estimate: el + er, evaluations: s.evals + 2 })
}
