//! Closed-form analysis of GHZ states under independent depolarizing noise.
//!
//! A depolarized `N`-qubit GHZ state stays diagonal in the GHZ basis
//! `(|k₁…k_{N-1}0⟩ ± |k̄₁…k̄_{N-1}1⟩)/√2`. Its coefficients depend only on
//! the Hamming weight `k` of the label:
//!
//! ```text
//! λ_k   = [(1+p)^k (1-p)^(N-k) + (1+p)^(N-k) (1-p)^k] / 2^(N+1)      (k ≠ 0)
//! λ_0^± = λ_0 ± p^N / 2
//! ```
//!
//! The partial transpose across a group of `k` parties is positive iff
//! `p^N ≤ 2 λ_k`. Everything is evaluated in the natural-log domain because
//! `λ_k` underflows long before `N` becomes macroscopic.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::noise_model::NoiseParameter;
use crate::numeric::{bisect, ln_binomial_pmf, log_add_exp, log_sum_exp, P_BRACKET_HI, P_BRACKET_LO};

/// Absolute tolerance in `p` for every threshold bisection.
pub const P_TOL: f64 = 1e-12;

/// Relative slack on the log-domain PPT comparison so that exact equality
/// (up to rounding) counts as positive.
const PPT_LOG_SLACK: f64 = 1e-12;

/// Relative distance to an integer below which a bound ratio snaps onto it.
const INTEGER_SNAP: f64 = 1e-9;

/// `count · ln v` with `0 · (-inf) = 0`.
fn scaled_log(count: f64, ln_v: f64) -> f64 {
    if count == 0.0 {
        0.0
    } else {
        count * ln_v
    }
}

/// GHZ-basis spectrum of a depolarized `N`-qubit GHZ state.
///
/// Coefficients are produced on demand, so the spectrum of a macroscopic
/// system costs O(1) memory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzSpectrum {
    n: usize,
    noise: NoiseParameter,
    ln_one_plus_p: f64,
    ln_one_minus_p: f64,
    log_lambda0_plus: f64,
    log_lambda0_minus: f64,
}

impl GhzSpectrum {
    pub fn new(n: usize, noise: NoiseParameter) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("GHZ spectrum needs N >= 2, got {n}")));
        }
        let p = noise.p();
        let nf = n as f64;
        let ln_one_plus_p = p.ln_1p();
        let ln_one_minus_p = (-p).ln_1p();
        let ln2 = std::f64::consts::LN_2;

        // λ_0 ± p^N/2 = [(1+p)^N + (1-p)^N ± (2p)^N] / 2^(N+1)
        let log_lambda0 = log_add_exp(scaled_log(nf, ln_one_plus_p), scaled_log(nf, ln_one_minus_p)) - (nf + 1.0) * ln2;
        let log_lambda0_plus = log_add_exp(log_lambda0, scaled_log(nf, p.ln()) - ln2);
        // (1+p)^N - (2p)^N = (1+p)^N · (1 - (2p/(1+p))^N), with 2p/(1+p) = 1 - (1-p)/(1+p)
        let ln_ratio = (-(1.0 - p) / (1.0 + p)).ln_1p();
        let head = nf * ln_one_plus_p + (-(nf * ln_ratio).exp_m1()).ln();
        let log_lambda0_minus = log_add_exp(head, scaled_log(nf, ln_one_minus_p)) - (nf + 1.0) * ln2;

        Ok(Self { n, noise, ln_one_plus_p, ln_one_minus_p, log_lambda0_plus, log_lambda0_minus })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn noise(&self) -> NoiseParameter {
        self.noise
    }

    /// `ln λ_k` for `0 ≤ k ≤ N`; `λ_k = λ_{N-k}` and `λ_N = λ_0`.
    pub fn log_lambda(&self, k: usize) -> f64 {
        assert!(k <= self.n, "label weight {k} exceeds N = {}", self.n);
        let (k, rest) = (k as f64, (self.n - k) as f64);
        log_add_exp(
            scaled_log(k, self.ln_one_plus_p) + scaled_log(rest, self.ln_one_minus_p),
            scaled_log(rest, self.ln_one_plus_p) + scaled_log(k, self.ln_one_minus_p),
        ) - (self.n as f64 + 1.0) * std::f64::consts::LN_2
    }

    pub fn lambda(&self, k: usize) -> f64 {
        self.log_lambda(k).exp()
    }

    pub fn log_lambda0_plus(&self) -> f64 {
        self.log_lambda0_plus
    }

    pub fn log_lambda0_minus(&self) -> f64 {
        self.log_lambda0_minus
    }

    pub fn lambda0_plus(&self) -> f64 {
        self.log_lambda0_plus.exp()
    }

    pub fn lambda0_minus(&self) -> f64 {
        self.log_lambda0_minus.exp()
    }

    /// `ln[C(N-1, k) · 2λ_k]`: the summed weight of all `2·C(N-1, k)` basis
    /// states whose label has weight `k` (`0 ≤ k ≤ N-1`; at `k = 0` this is
    /// `λ_0^+ + λ_0^-`). With `x = (1+p)/2` this is
    /// `(1-x)·Bin(k; N-1, x) + x·Bin(k; N-1, 1-x)`, evaluated without the
    /// cancellation between `C(N-1, k)` and `λ_k` that plagues large `N`.
    pub fn log_class_weight(&self, k: usize) -> f64 {
        let m = self.n - 1;
        assert!(k <= m, "label weight {k} exceeds N - 1 = {m}");
        let x = 0.5 * (1.0 + self.noise.p());
        let ln_x = (0.5 * (self.noise.p() - 1.0)).ln_1p();
        let ln_rest = self.ln_one_minus_p - std::f64::consts::LN_2;
        log_add_exp(
            ln_rest + ln_binomial_pmf(m as u64, k as u64, x),
            ln_x + ln_binomial_pmf(m as u64, k as u64, 1.0 - x),
        )
    }

    /// `ln Σ_k C(N-1, k) · 2λ_k`. Should be zero.
    pub fn log_total_weight(&self) -> f64 {
        log_sum_exp((0..self.n).map(|k| self.log_class_weight(k)))
    }

    /// `ln(2 λ_k) - N ln p`: non-negative iff the partial transpose across
    /// `k` parties is positive.
    fn ppt_margin(&self, k: usize) -> f64 {
        std::f64::consts::LN_2 + self.log_lambda(k) - scaled_log(self.n as f64, self.noise.p().ln())
    }
}

/// `ghz_spectrum` entry point.
pub fn ghz_spectrum(n: usize, np: NoiseParameter) -> Result<GhzSpectrum> {
    GhzSpectrum::new(n, np)
}

/// Whether the partial transpose across a group of `k` parties is positive,
/// i.e. `p^N ≤ 2 λ_k`. Equality counts as positive.
pub fn ppt_positive(n: usize, np: NoiseParameter, k: usize) -> Result<bool> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::domain(format!("group size k = {k} must lie in [1, N-1] for N = {n}")));
    }
    let spectrum = GhzSpectrum::new(n, np)?;
    let scale = (n as f64 * np.p().ln()).abs().max(1.0);
    Ok(spectrum.ppt_margin(k) >= -PPT_LOG_SLACK * scale)
}

/// A threshold expressed both ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lifetime {
    pub p: f64,
    pub kappa_t: f64,
}

impl Lifetime {
    fn from_p(p: f64) -> Self {
        Self { p, kappa_t: -p.ln() }
    }
}

/// Noise level at which the partial transpose across the smallest group
/// (size `m`) turns positive, ending distillable entanglement of any
/// partition whose smallest group has `m` particles. `m = 1` gives the
/// lifetime of genuine `N`-party entanglement.
pub fn group_lifetime(n: usize, m: usize) -> Result<Lifetime> {
    if m == 0 || n < 2 || m > n / 2 {
        return Err(Error::domain(format!("group size m = {m} must lie in [1, N/2] for N = {n}")));
    }
    let ln2 = std::f64::consts::LN_2;
    let nf = n as f64;
    let margin = |p: f64| {
        let spectrum = GhzSpectrum::new(n, NoiseParameter::from_p(p).expect("p inside bracket"));
        nf * p.ln() - ln2 - spectrum.expect("N >= 2").log_lambda(m)
    };
    let p = bisect(&format!("p^N - 2λ_m for N = {n}, m = {m}"), P_BRACKET_LO, P_BRACKET_HI, P_TOL, margin)?;
    Ok(Lifetime::from_p(p))
}

/// An upper bound on a number of groups, possibly unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupBound {
    Finite(u64),
    Unbounded,
}

impl std::fmt::Display for GroupBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupBound::Finite(m) => write!(f, "{m}"),
            GroupBound::Unbounded => write!(f, "inf"),
        }
    }
}

/// `[ln(1-p) - ln(1+p)] / [ln(2p) - ln(1+p)]`, infinite at `p = 1`.
pub fn upper_bound_ratio(p: f64) -> f64 {
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let num = (-p).ln_1p() - p.ln_1p();
    let den = (-(1.0 - p) / (1.0 + p)).ln_1p();
    num / den
}

/// `ln[2(1-p)/(1+p)] / ln[2p/(1+p)]`.
pub fn lower_bound_ratio(p: f64) -> f64 {
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let num = std::f64::consts::LN_2 + (-p).ln_1p() - p.ln_1p();
    let den = (-(1.0 - p) / (1.0 + p)).ln_1p();
    num / den
}

fn snapped(x: f64) -> Option<f64> {
    let r = x.round();
    ((x - r).abs() <= INTEGER_SNAP * r.abs().max(1.0)).then_some(r)
}

/// Smallest number of equal-size groups `M ≥ 2` for which the state is
/// certainly no longer `M`-party entangled. Independent of `N`.
pub fn upper_bound_m(np: NoiseParameter) -> GroupBound {
    let ratio = upper_bound_ratio(np.p());
    if !ratio.is_finite() || ratio >= u64::MAX as f64 {
        return GroupBound::Unbounded;
    }
    let m = snapped(ratio).unwrap_or_else(|| ratio.ceil());
    GroupBound::Finite((m as u64).max(2))
}

/// Largest `M` for which `M`-party distillability is guaranteed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerBound {
    /// Number of groups; `1` when no guarantee exists.
    pub m: u64,
    /// False when the bound is vacuous (`< 2`).
    pub guaranteed: bool,
}

/// Largest `M` such that every partial transpose of an equal-size
/// `M`-partition is certainly non-positive. Requires `p ∈ (0, 1)`.
pub fn lower_bound_m(np: NoiseParameter) -> Result<LowerBound> {
    let p = np.p();
    if p >= 1.0 {
        return Err(Error::domain("lower bound needs p < 1 (every partition is distillable at p = 1)"));
    }
    let ratio = lower_bound_ratio(p);
    let m = snapped(ratio).unwrap_or_else(|| ratio.floor());
    if m.is_nan() || m < 2.0 {
        return Ok(LowerBound { m: 1, guaranteed: false });
    }
    Ok(LowerBound { m: m.min(u64::MAX as f64) as u64, guaranteed: true })
}

/// Lifetime `κτ_M` after which no equal-size `M`-partition stays entangled:
/// the inverse of [`upper_bound_ratio`] at value `M`.
pub fn upper_bound_lifetime(groups: u64) -> Result<f64> {
    if groups < 2 {
        return Err(Error::domain(format!("M must be >= 2, got {groups}")));
    }
    let target = groups as f64;
    let p = bisect(&format!("group-bound ratio = {groups}"), P_BRACKET_LO, P_BRACKET_HI, P_TOL, |p| {
        upper_bound_ratio(p) - target
    })?;
    Ok(-p.ln())
}

/// [`upper_bound_lifetime`] over many `M`, in parallel, results in input order.
pub fn upper_bound_lifetimes(groups: &[u64]) -> Vec<Result<f64>> {
    groups.par_iter().map(|&m| upper_bound_lifetime(m)).collect()
}

/// Short-time asymptote `M ≈ -2 ln(κt)/κt` of the group bound.
pub fn asymptotic_m(kappa_t: f64) -> Result<f64> {
    if !(kappa_t > 0.0 && kappa_t < 1.0) {
        return Err(Error::domain(format!("asymptote needs 0 < kappa_t < 1, got {kappa_t}")));
    }
    Ok(-2.0 * kappa_t.ln() / kappa_t)
}

/// Assignment of `N` particles to `M` non-empty groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    labels: Vec<usize>,
    sizes: Vec<usize>,
}

impl PartitionSpec {
    /// `labels[i]` is the group of particle `i`; labels must be `0..M` with
    /// every group used.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::validation("partition of zero particles"));
        }
        let groups = labels.iter().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0; groups];
        for &l in &labels {
            sizes[l] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::validation(format!("group {empty} is empty")));
        }
        Ok(Self { labels, sizes })
    }

    /// `N` particles in `groups` contiguous groups whose sizes differ by at most one.
    pub fn equal(n: usize, groups: usize) -> Result<Self> {
        if groups == 0 || groups > n {
            return Err(Error::domain(format!("cannot split {n} particles into {groups} groups")));
        }
        let labels = (0..n).map(|i| i * groups / n).collect();
        Self::new(labels)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn group_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn min_group_size(&self) -> usize {
        *self.sizes.iter().min().expect("non-empty partition")
    }

    pub fn group_of(&self, particle: usize) -> usize {
        self.labels[particle]
    }

    pub fn members(&self, group: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.labels[i] == group).collect()
    }

    /// Every bipartition formed by unions of groups, as the particle set
    /// of the side not holding group 0.
    pub fn bipartitions(&self) -> Vec<Vec<usize>> {
        let groups = self.group_count();
        (1u64..(1 << (groups - 1)))
            .map(|mask| {
                (0..self.n()).filter(|&i| self.labels[i] > 0 && mask >> (self.labels[i] - 1) & 1 == 1).collect()
            })
            .collect()
    }
}

/// Whether every partial transpose across the partition is non-positive.
/// For GHZ-diagonal states the cut through the smallest group decides.
pub fn partition_npt(np: NoiseParameter, partition: &PartitionSpec) -> Result<bool> {
    if partition.group_count() < 2 {
        return Err(Error::domain("a partition needs at least two groups"));
    }
    Ok(!ppt_positive(partition.n(), np, partition.min_group_size())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise_model::{noise_from_p, noise_from_time};
    use crate::numeric::log_sub_exp;
    use proptest::prelude::*;

    fn np(p: f64) -> NoiseParameter {
        noise_from_p(p).unwrap()
    }

    /// Direct-domain λ_k, usable for small N only.
    fn lambda_direct(n: usize, k: usize, p: f64) -> f64 {
        let (a, b) = (1.0 + p, 1.0 - p);
        (a.powi(k as i32) * b.powi((n - k) as i32) + a.powi((n - k) as i32) * b.powi(k as i32))
            / 2f64.powi(n as i32 + 1)
    }

    #[test]
    fn noiseless_spectrum_is_pure_ghz() {
        let s = ghz_spectrum(5, NoiseParameter::noiseless()).unwrap();
        for k in 1..5 {
            assert_eq!(s.lambda(k), 0.0);
        }
        assert!((s.lambda0_plus() - 1.0).abs() < 1e-15);
        assert_eq!(s.lambda0_minus(), 0.0);
    }

    #[test]
    fn fully_mixed_limit() {
        let s = ghz_spectrum(6, np(1e-12)).unwrap();
        for k in 1..6 {
            assert!((s.lambda(k) - 2f64.powi(-6)).abs() < 1e-12);
        }
        assert!((s.lambda0_plus() - 2f64.powi(-6)).abs() < 1e-12);
    }

    #[test]
    fn three_qubit_example() {
        let s = ghz_spectrum(3, np(0.5)).unwrap();
        assert!((s.lambda(1) - 0.09375).abs() < 1e-15);
        let l0 = (0.5f64.powi(3) + 1.5f64.powi(3)) / 16.0;
        assert!((s.lambda0_plus() - (l0 + 0.0625)).abs() < 1e-15);
        assert!((s.lambda0_minus() - (l0 - 0.0625)).abs() < 1e-15);
    }

    #[test]
    fn log_domain_matches_direct_domain() {
        for n in 2..=20 {
            for i in 1..100 {
                let p = i as f64 / 100.0;
                let s = ghz_spectrum(n, np(p)).unwrap();
                for k in 1..n {
                    let d = lambda_direct(n, k, p);
                    assert!((s.lambda(k) - d).abs() <= 1e-13 * d, "N={n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn spectrum_rejects_small_n() {
        assert!(matches!(ghz_spectrum(1, np(0.5)), Err(Error::Domain(_))));
    }

    #[test]
    fn ppt_examples() {
        assert!(!ppt_positive(2, np(0.6), 1).unwrap());
        assert!(ppt_positive(2, np(1.0 / 3f64.sqrt()), 1).unwrap());
        for n in 2..10 {
            assert!(!ppt_positive(n, NoiseParameter::noiseless(), 1).unwrap());
        }
        assert!(matches!(ppt_positive(4, np(0.5), 0), Err(Error::Domain(_))));
        assert!(matches!(ppt_positive(4, np(0.5), 4), Err(Error::Domain(_))));
    }

    #[test]
    fn group_lifetime_two_qubits() {
        let l = group_lifetime(2, 1).unwrap();
        assert!((l.p - 3f64.powf(-0.5)).abs() < 1e-11);
        assert!((l.kappa_t - 0.549306144334).abs() < 1e-10);
    }

    #[test]
    fn group_lifetime_shrinks_with_size() {
        assert!(group_lifetime(8, 1).unwrap().kappa_t < group_lifetime(4, 1).unwrap().kappa_t);
    }

    #[test]
    fn coarsest_cut_has_closed_form() {
        // m = N/2: p^N = 2 (1-p²)^(N/2) / 2^N  ⇒  p² / (1-p²) = 2^(2/N - 2)
        for &n in &[2usize, 10, 64, 1000] {
            let c = 2f64.powf(2.0 / n as f64 - 2.0);
            let exact = (c / (1.0 + c)).sqrt();
            let l = group_lifetime(n, n / 2).unwrap();
            assert!(l.p.is_finite() && l.kappa_t.is_finite());
            assert!((l.p - exact).abs() < 1e-6, "N={n}: {} vs {exact}", l.p);
        }
    }

    #[test]
    fn group_lifetime_domain() {
        assert!(matches!(group_lifetime(4, 0), Err(Error::Domain(_))));
        assert!(matches!(group_lifetime(4, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn group_lifetime_is_not_monotone_at_two_parties() {
        // Two-qubit GHZ is a Bell pair; its threshold sits below N = 3.
        let k2 = group_lifetime(2, 1).unwrap().kappa_t;
        let k3 = group_lifetime(3, 1).unwrap().kappa_t;
        let k4 = group_lifetime(4, 1).unwrap().kappa_t;
        assert!(k2 < k3);
        assert!((k2 - k4).abs() < 1e-10);
    }

    #[test]
    fn group_lifetime_decreases_from_three_parties() {
        let mut prev = f64::INFINITY;
        for n in 3..=64 {
            let k = group_lifetime(n, 1).unwrap().kappa_t;
            assert!(k < prev, "N = {n}");
            prev = k;
        }
    }

    #[test]
    fn smallest_group_governs() {
        for &n in &[6usize, 11, 20, 40] {
            let mut prev = 0.0;
            for m in 1..=n / 2 {
                let k = group_lifetime(n, m).unwrap().kappa_t;
                assert!(k >= prev - 1e-12, "N={n} m={m}");
                prev = k;
            }
        }
    }

    #[test]
    fn upper_bound_m_examples() {
        assert_eq!(upper_bound_m(np(5f64.powf(-0.5))), GroupBound::Finite(2));
        assert_eq!(upper_bound_m(noise_from_time(0.9).unwrap()), GroupBound::Finite(2));
        assert_eq!(upper_bound_m(NoiseParameter::noiseless()), GroupBound::Unbounded);
        let direct = ((0.01f64).ln() - 1.99f64.ln()) / (1.98f64.ln() - 1.99f64.ln());
        assert_eq!(upper_bound_m(np(0.99)), GroupBound::Finite(direct.ceil() as u64));
        assert_eq!(upper_bound_m(np(0.99)), GroupBound::Finite(1051));
    }

    #[test]
    fn upper_bound_lifetime_examples() {
        let two = upper_bound_lifetime(2).unwrap();
        assert!((two - 0.5 * 5f64.ln()).abs() < 1e-11);
        let three = upper_bound_lifetime(3).unwrap();
        let p = (-three).exp();
        assert!((9.0 * p.powi(3) + p * p - p - 1.0).abs() < 1e-10);
        assert!((p - 0.5179).abs() < 1e-4);
        assert!((three - 0.658).abs() < 1e-3);
        assert!(upper_bound_lifetime(1).is_err());
        assert!(upper_bound_lifetime(1_000_000).unwrap() < 1e-4);
    }

    #[test]
    fn lower_bound_examples() {
        let lb = lower_bound_m(np(0.9)).unwrap();
        let direct = (0.2f64 / 1.9).ln() / (1.8f64 / 1.9).ln();
        assert_eq!(lb, LowerBound { m: direct.floor() as u64, guaranteed: true });
        assert_eq!(lb.m, 41);
        assert_eq!(lower_bound_m(np(0.3)).unwrap(), LowerBound { m: 1, guaranteed: false });
        assert!(lower_bound_m(NoiseParameter::noiseless()).is_err());
    }

    #[test]
    fn lower_bound_never_exceeds_upper_bound() {
        for i in 1..1000 {
            let p = 0.3 + 0.699 * i as f64 / 1000.0;
            let lb = lower_bound_m(np(p)).unwrap();
            let GroupBound::Finite(ub) = upper_bound_m(np(p)) else { panic!("finite p") };
            assert!(lb.m <= ub, "p = {p}");
        }
    }

    #[test]
    fn asymptote_examples() {
        let e = std::f64::consts::E;
        assert!((asymptotic_m(1.0 / e).unwrap() - 2.0 * e).abs() < 1e-12);
        assert!((asymptotic_m(0.01).unwrap() - 921.034037198).abs() < 1e-6);
        assert!(asymptotic_m(1.0).is_err());
        assert!(asymptotic_m(0.0).is_err());
        let exact = upper_bound_ratio((-0.01f64).exp());
        assert!((exact - 1057.0).abs() < 1.0);
    }

    #[test]
    fn partition_bookkeeping() {
        let part = PartitionSpec::equal(7, 3).unwrap();
        assert_eq!(part.group_count(), 3);
        assert_eq!(part.min_group_size(), 2);
        assert_eq!(part.bipartitions().len(), 3);
        assert!(PartitionSpec::new(vec![0, 2, 2]).is_err());
        assert!(PartitionSpec::equal(3, 4).is_err());
        let pairs = PartitionSpec::new(vec![0, 0, 1, 1]).unwrap();
        assert_eq!(pairs.bipartitions(), vec![vec![2, 3]]);
    }

    #[test]
    fn partition_npt_follows_smallest_group() {
        let p = np(0.9);
        let part = PartitionSpec::new(vec![0, 1, 1, 1, 2, 2]).unwrap();
        assert_eq!(partition_npt(p, &part).unwrap(), !ppt_positive(6, p, 1).unwrap());
    }

    fn check_invariants(n: usize, p: f64) {
        let s = ghz_spectrum(n, np(p)).unwrap();
        assert!(s.log_total_weight().abs() < 1e-10, "norm N={n} p={p}: {}", s.log_total_weight());
        assert!(s.lambda0_minus() >= 0.0);
        let ln2 = std::f64::consts::LN_2;
        let half_pn = n as f64 * p.ln() - ln2;
        let l0 = s.log_lambda(0);
        assert!((s.log_lambda0_plus() - log_add_exp(l0, half_pn)).abs() < 1e-9);
        if l0 > half_pn {
            assert!((s.log_lambda0_minus() - log_sub_exp(l0, half_pn)).abs() < 1e-6);
        }
        let ks: Vec<usize> = if n <= 64 { (1..n).collect() } else { vec![1, 2, 3, n / 3, n / 2 - 1, n / 2, n - 1] };
        let head = log_add_exp(s.log_lambda0_plus(), s.log_lambda0_minus());
        assert!((s.log_class_weight(0) - head).abs() <= 1e-12 * head.abs().max(1.0), "class 0 N={n} p={p}");
        for &k in &ks {
            let a = s.log_lambda(k);
            let binom = statrs::function::factorial::ln_binomial(n as u64 - 1, k as u64);
            let direct = binom + ln2 + a;
            if k < n {
                // the direct route carries rounding on the scale of its largest intermediate
                let scale = binom.abs() + n as f64 * (ln2 + p.ln_1p() - (-p).ln_1p());
                let tol = 1e-14 * scale + 1e-12;
                assert!(
                    (s.log_class_weight(k) - direct).abs() <= tol,
                    "class N={n} k={k} p={p}: {} vs {direct}",
                    s.log_class_weight(k)
                );
            }
            assert!((a - s.log_lambda(n - k)).abs() <= 1e-12 * a.abs().max(1.0));
            if k < n / 2 {
                assert!(a >= s.log_lambda(k + 1) - 1e-12 * a.abs().max(1.0), "order N={n} k={k} p={p}");
            }
        }
    }

    #[test]
    fn spectrum_invariants_on_grid() {
        for n in 2..=20 {
            for i in 1..100 {
                check_invariants(n, i as f64 / 100.0);
            }
        }
        for i in 1..100 {
            check_invariants(1000, i as f64 / 100.0);
        }
        for &p in &[0.01, 0.2, 0.5, 0.8, 0.9, 0.99] {
            check_invariants(1_000_000, p);
        }
    }

    proptest! {
        #[test]
        fn lifetime_inverts_ratio(m in 2u64..5000) {
            let kt = upper_bound_lifetime(m).unwrap();
            let r = upper_bound_ratio((-kt).exp());
            prop_assert!((r - m as f64).abs() < 1e-6 * m as f64);
        }
    }
}
