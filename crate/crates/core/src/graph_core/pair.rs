//! Two-qubit reductions of noisy graph states and the resulting
//! distillability thresholds and lifetime bounds.
//!
//! Measuring every vertex except an adjacent pair `(k, l)` in the σ_z basis
//! leaves, after outcome-dependent σ_z corrections, the single-edge graph
//! state `|Φ⟩ = (|0⟩_x|0⟩_z + |1⟩_x|1⟩_z)/√2`. σ_z noise commutes with those
//! measurements, so the pair ends up in the mixture `Σ_ab q_ab (Z^a ⊗ Z^b)|Φ⟩`.
//! Only vertices in `N[k] ∪ N[l]` can put a σ_z on `k` or `l`, which is why
//! the result does not depend on the size of the graph.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ghz_analysis::Lifetime;
use crate::noise_model::NoiseParameter;
use crate::numeric::{bisect, fwht, ifwht, P_BRACKET_HI, P_BRACKET_LO};

use super::graph::Graph;
use super::zpattern::{depolarizing_zmap, ZPatternMap};

/// Bisection tolerance in `p` for pair thresholds.
pub const PAIR_TOL: f64 = 1e-10;

/// Weights of `Z^a ⊗ Z^b |Φ⟩`, stored at index `2a + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCoefficients {
    q: [f64; 4],
}

impl PairCoefficients {
    pub fn new(q: [f64; 4]) -> Result<Self> {
        if q.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::validation(format!("pair coefficients must lie in [0, 1]: {q:?}")));
        }
        if (q.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::validation(format!("pair coefficients must sum to 1: {q:?}")));
        }
        Ok(Self { q })
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.q
    }

    pub fn q00(&self) -> f64 {
        self.q[0]
    }

    pub fn q01(&self) -> f64 {
        self.q[1]
    }

    pub fn q10(&self) -> f64 {
        self.q[2]
    }

    pub fn q11(&self) -> f64 {
        self.q[3]
    }

    pub fn max(&self) -> f64 {
        self.q.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &PairCoefficients) -> f64 {
        self.q.iter().zip(&other.q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Restricted noise inputs of the pair `(k, l)`: for every vertex that can
/// touch the pair, its depolarizing map marginalized onto `(a, b)`.
pub fn pair_inputs(g: &Graph, np: NoiseParameter, k: usize, l: usize) -> Result<Vec<(usize, [f64; 4])>> {
    check_pair(g, k, l)?;
    let touching: BTreeSet<usize> =
        [k, l].into_iter().chain(g.neighborhood(k).iter().copied()).chain(g.neighborhood(l).iter().copied()).collect();
    touching.into_iter().map(|v| Ok((v, depolarizing_zmap(g, v, np)?.restrict(k, l)))).collect()
}

/// XOR-convolves restricted distributions over Z₂×Z₂ through the
/// four-point character transform.
pub fn convolve_restricted<'a>(inputs: impl IntoIterator<Item = &'a [f64; 4]>) -> PairCoefficients {
    let mut acc = [1.0; 4];
    for dist in inputs {
        let mut t = *dist;
        fwht(&mut t);
        acc.iter_mut().zip(t).for_each(|(a, b)| *a *= b);
    }
    ifwht(&mut acc);
    // Rounding can leave -1e-17 where an exact zero belongs.
    acc.iter_mut().for_each(|x| *x = x.clamp(0.0, 1.0));
    PairCoefficients { q: acc }
}

/// Reduced pair state from a list of arbitrary pattern maps (e.g. from
/// [`channel_to_zmap`](super::channel_to_zmap)); maps that never touch the
/// pair contribute a trivial factor.
pub fn reduced_pair_state_from_maps(maps: &[ZPatternMap], k: usize, l: usize) -> PairCoefficients {
    let restricted: Vec<[f64; 4]> = maps.iter().map(|m| m.restrict(k, l)).collect();
    convolve_restricted(&restricted)
}

/// Bell-diagonal coefficients of the adjacent pair `(k, l)` after the other
/// vertices of the depolarized graph state are measured in the σ_z basis.
pub fn reduced_pair_state(g: &Graph, np: NoiseParameter, k: usize, l: usize) -> Result<PairCoefficients> {
    let inputs = pair_inputs(g, np, k, l)?;
    Ok(convolve_restricted(inputs.iter().map(|(_, d)| d)))
}

/// A Bell-diagonal pair is NPT (hence distillable) iff its largest weight
/// exceeds one half. Exactly one half is PPT.
pub fn pair_entangled(q: &PairCoefficients) -> bool {
    q.max() > 0.5
}

/// Noise level below which the pair `(k, l)` stops being distillable.
/// For `p` above the returned threshold the whole graph state is `N`-party
/// distillable.
pub fn pair_threshold(g: &Graph, k: usize, l: usize) -> Result<Lifetime> {
    check_pair(g, k, l)?;
    let p = bisect(&format!("pair ({k}, {l}) max weight - 1/2"), P_BRACKET_LO, P_BRACKET_HI, PAIR_TOL, |p| {
        let np = NoiseParameter::from_p(p).expect("p inside bracket");
        reduced_pair_state(g, np, k, l).expect("checked pair").max() - 0.5
    })?;
    Ok(Lifetime { p, kappa_t: -p.ln() })
}

/// `p²/4 (1+p^{n_k})(1+p^{n_j}) + (1-p²)/4`: the `|Φ⟩` weight for two
/// adjacent vertices with `n_k` and `n_j` further, mutually disjoint,
/// neighbors.
pub fn disjoint_pair_coefficient(n_k: u32, n_j: u32, np: NoiseParameter) -> f64 {
    let p = np.p();
    let p2 = p * p;
    p2 / 4.0 * (1.0 + p.powi(n_k as i32)) * (1.0 + p.powi(n_j as i32)) + (1.0 - p2) / 4.0
}

/// `ln 2 / (⌊(d_k + d_j - 2)/2⌋ + 2)`: below this `κt` an edge with endpoint
/// degrees `d_k`, `d_j` is certainly distillable.
pub fn degree_bound(d_k: usize, d_j: usize) -> Result<f64> {
    if d_k == 0 || d_j == 0 {
        return Err(Error::domain("degrees of an adjacent pair are at least 1"));
    }
    let m = d_k + d_j - 2;
    Ok(std::f64::consts::LN_2 / ((m / 2) as f64 + 2.0))
}

/// `-2m ln(√2 - 1)`: beyond this `κt` a graph state whose vertices have at
/// most `m` neighbors is fully separable.
pub fn separability_bound(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("vertex degree must be at least 1"));
    }
    Ok(-2.0 * m as f64 * (std::f64::consts::SQRT_2 - 1.0).ln())
}

fn check_pair(g: &Graph, k: usize, l: usize) -> Result<()> {
    g.check_vertex(k)?;
    g.check_vertex(l)?;
    if !g.has_edge(k, l) {
        return Err(Error::domain(format!("({k}, {l}) is not an edge")));
    }
    Ok(())
}
