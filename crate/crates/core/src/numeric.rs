//! Small numerical kernels shared by the analytic modules: log-domain
//! arithmetic, bisection and the Walsh-Hadamard transform.

use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};

/// `ln(e^a + e^b)` without overflow; `-inf` inputs are absorbed.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(e^a - e^b)` for `a >= b`. Returns `-inf` when the two are equal.
pub fn log_sub_exp(a: f64, b: f64) -> f64 {
    debug_assert!(a >= b || a.is_nan() || b.is_nan(), "log_sub_exp needs a >= b");
    if b == f64::NEG_INFINITY {
        return a;
    }
    a + (-(b - a).exp_m1()).ln()
}

/// Stable `ln Σ e^{x_i}`.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// `ln Γ(n+1) - [(n + ½) ln n - n + ln √(2π)]`, the Stirling remainder.
fn stirlerr(n: u64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    let nf = n as f64;
    if n <= 15 {
        let ln_sqrt_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
        return ln_factorial(n) - (nf + 0.5) * nf.ln() + nf - ln_sqrt_2pi;
    }
    let nn = nf * nf;
    if n > 500 {
        (S0 - S1 / nn) / nf
    } else if n > 80 {
        (S0 - (S1 - S2 / nn) / nn) / nf
    } else if n > 35 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / nf
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / nf
    }
}

/// Deviance term `x ln(x/m) + m - x`, accurate when `x ≈ m`.
fn bd0(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        for j in 1..1000 {
            ej *= v2;
            let next = s + ej / (2 * j + 1) as f64;
            if next == s {
                return next;
            }
            s = next;
        }
        return s;
    }
    x * (x / m).ln() + m - x
}

/// `ln[C(n, k) x^k (1-x)^(n-k)]` by the saddle-point expansion, which keeps
/// full relative accuracy for large `n` where the binomial coefficient and
/// the powers would cancel.
pub fn ln_binomial_pmf(n: u64, k: u64, x: f64) -> f64 {
    assert!(k <= n, "k = {k} exceeds n = {n}");
    assert!((0.0..=1.0).contains(&x), "x = {x} outside [0, 1]");
    let (nf, kf) = (n as f64, k as f64);
    if k == 0 {
        return if x == 1.0 { f64::NEG_INFINITY } else { nf * (-x).ln_1p() };
    }
    if k == n {
        return nf * x.ln();
    }
    if x == 0.0 || x == 1.0 {
        return f64::NEG_INFINITY;
    }
    let rest = (n - k) as f64;
    let lc = stirlerr(n) - stirlerr(k) - stirlerr(n - k) - bd0(kf, nf * x) - bd0(rest, nf * (1.0 - x));
    let lf = (2.0 * std::f64::consts::PI).ln() + kf.ln() + (-kf / nf).ln_1p();
    lc - 0.5 * lf
}

/// Lower end of the bracket used by every threshold search on `p`.
pub const P_BRACKET_LO: f64 = 1e-6;
/// Upper end of the bracket used by every threshold search on `p`.
pub const P_BRACKET_HI: f64 = 1.0 - 1e-12;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// `f(lo)` and `f(hi)` must have opposite signs (a zero at either end is
/// accepted). Iterates until the bracket is narrower than `tol` and returns
/// its midpoint. Only the sign of `f` is used, so `f` may be a
/// log-domain difference or a boolean predicate mapped onto ±1.
pub fn bisect<F>(what: &str, mut lo: f64, mut hi: f64, tol: f64, f: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.is_nan() || fhi.is_nan() || flo.signum() == fhi.signum() {
        return Err(Error::NoBracket { what: what.to_string(), lo, hi });
    }
    let lo_negative = flo < 0.0;
    // 200 halvings exhaust any f64 bracket.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// In-place unnormalized Walsh-Hadamard transform. Length must be a power of two.
///
/// This is the character transform of the group Z₂^k: XOR-convolution of
/// two distributions becomes a pointwise product of their transforms.
pub fn fwht(values: &mut [f64]) {
    let n = values.len();
    assert!(n.is_power_of_two(), "fwht length must be a power of two");
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (values[i], values[i + h]);
                values[i] = a + b;
                values[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Inverse of [`fwht`].
pub fn ifwht(values: &mut [f64]) {
    fwht(values);
    let scale = 1.0 / values.len() as f64;
    values.iter_mut().for_each(|v| *v *= scale);
}
