//! The σ_z-pattern calculus.
//!
//! On a graph state any Pauli error acts, up to phase, like a product of
//! σ_z operators: `X_j` like `Z` on the neighborhood `N(j)` (because
//! `X_j K_j` is exactly that product), `Y_j` like `Z` on `{j} ∪ N(j)`, and
//! `Z_j` like itself. A Pauli channel therefore becomes a probability
//! distribution over vertex subsets, and composing channels becomes
//! XOR-convolution of distributions.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::noise_model::{NoiseParameter, Pauli, PauliDiagonalChannel};

use super::graph::Graph;

/// Product of σ_z over a vertex subset.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZPattern {
    support: BTreeSet<usize>,
}

impl ZPattern {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn contains(&self, v: usize) -> bool {
        self.support.contains(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Operator product: symmetric difference of supports.
    pub fn compose(&self, other: &ZPattern) -> ZPattern {
        ZPattern { support: self.support.symmetric_difference(&other.support).copied().collect() }
    }

    /// Membership of `k` and `l` packed as `2a + b`.
    pub fn restrict(&self, k: usize, l: usize) -> usize {
        2 * usize::from(self.contains(k)) + usize::from(self.contains(l))
    }
}

impl FromIterator<usize> for ZPattern {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ZPattern { support: iter.into_iter().collect() }
    }
}

/// Label `μ` of a graph-basis state `|Ψ_μ⟩`, `K_j |Ψ_μ⟩ = (-1)^{μ_j} |Ψ_μ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphBasisIndex {
    mu: Vec<bool>,
}

impl GraphBasisIndex {
    pub fn zero(n: usize) -> Self {
        Self { mu: vec![false; n] }
    }

    pub fn from_bits(mu: Vec<bool>) -> Self {
        Self { mu }
    }

    pub fn bits(&self) -> &[bool] {
        &self.mu
    }

    /// `Z_S |Ψ_μ⟩ = |Ψ_{μ ⊕ 1_S}⟩`, since `Z_k` anticommutes only with `K_k`.
    pub fn apply(&self, pattern: &ZPattern) -> GraphBasisIndex {
        let mut mu = self.mu.clone();
        for &v in pattern.support() {
            mu[v] ^= true;
        }
        GraphBasisIndex { mu }
    }
}

/// Probability distribution over σ_z patterns on an `n`-vertex graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ZPatternMap {
    n: usize,
    terms: BTreeMap<ZPattern, f64>,
}

impl ZPatternMap {
    pub fn identity(n: usize) -> Self {
        Self { n, terms: BTreeMap::from([(ZPattern::empty(), 1.0)]) }
    }

    /// Merges duplicate patterns, drops zero weights and rescales to unit mass.
    pub fn from_terms(n: usize, raw: impl IntoIterator<Item = (ZPattern, f64)>) -> Result<Self> {
        let mut terms: BTreeMap<ZPattern, f64> = BTreeMap::new();
        for (pat, w) in raw {
            if let Some(&v) = pat.support().iter().find(|&&v| v >= n) {
                return Err(Error::validation(format!("pattern vertex {v} out of range for {n} vertices")));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::validation(format!("invalid pattern weight {w}")));
            }
            *terms.entry(pat).or_insert(0.0) += w;
        }
        terms.retain(|_, w| *w > 0.0);
        let total: f64 = terms.values().sum();
        if total <= 0.0 {
            return Err(Error::validation("pattern map has no weight"));
        }
        terms.values_mut().for_each(|w| *w /= total);
        Ok(Self { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZPattern, f64)> {
        self.terms.iter().map(|(p, &w)| (p, w))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight(&self, pat: &ZPattern) -> f64 {
        self.terms.get(pat).copied().unwrap_or(0.0)
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.values().sum()
    }

    /// XOR-convolution of the two distributions.
    pub fn compose(&self, other: &ZPatternMap) -> ZPatternMap {
        assert_eq!(self.n, other.n, "pattern map size mismatch");
        let mut terms: BTreeMap<ZPattern, f64> = BTreeMap::new();
        for (a, wa) in &self.terms {
            for (b, wb) in &other.terms {
                *terms.entry(a.compose(b)).or_insert(0.0) += wa * wb;
            }
        }
        terms.retain(|_, w| *w > 0.0);
        ZPatternMap { n: self.n, terms }
    }

    /// Marginal over the membership of vertices `k` and `l`, indexed `2a + b`
    /// where `a` (`b`) says whether the pattern acts on `k` (`l`).
    pub fn restrict(&self, k: usize, l: usize) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (pat, w) in &self.terms {
            out[pat.restrict(k, l)] += w;
        }
        out
    }

    pub fn max_weight_diff(&self, other: &ZPatternMap) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|p| (self.weight(p) - other.weight(p)).abs())
            .fold(0.0, f64::max)
    }
}

/// Z-pattern equivalent to `letter` acting on vertex `j`, phase dropped.
pub fn pauli_to_zpattern(g: &Graph, j: usize, letter: Pauli) -> ZPattern {
    let own = || std::iter::once(j);
    let nb = || g.neighborhood(j).iter().copied();
    match letter {
        Pauli::I => ZPattern::empty(),
        Pauli::Z => own().collect(),
        Pauli::X => nb().collect(),
        Pauli::Y => own().chain(nb()).collect(),
    }
}

/// Depolarizing noise on vertex `j` in the pattern frame.
pub fn depolarizing_zmap(g: &Graph, j: usize, np: NoiseParameter) -> Result<ZPatternMap> {
    g.check_vertex(j)?;
    let p = np.p();
    let terms = Pauli::ALL.iter().map(|&l| {
        let w = if l == Pauli::I { p + (1.0 - p) / 4.0 } else { (1.0 - p) / 4.0 };
        (pauli_to_zpattern(g, j, l), w)
    });
    ZPatternMap::from_terms(g.n(), terms)
}

/// Any Pauli-diagonal channel in the pattern frame; letters map site-wise
/// and compose by symmetric difference.
pub fn channel_to_zmap(g: &Graph, chan: &PauliDiagonalChannel) -> Result<ZPatternMap> {
    if chan.n() != g.n() {
        return Err(Error::validation(format!(
            "channel acts on {} qubits but the graph has {} vertices",
            chan.n(),
            g.n()
        )));
    }
    let terms = chan.terms().map(|(s, w)| {
        let pat = s
            .letters()
            .iter()
            .enumerate()
            .fold(ZPattern::empty(), |acc, (j, &l)| acc.compose(&pauli_to_zpattern(g, j, l)));
        (pat, w)
    });
    ZPatternMap::from_terms(g.n(), terms)
}

/// Depolarizing noise of equal strength on every vertex.
pub fn global_depolarizing_zmap(g: &Graph, np: NoiseParameter) -> Result<ZPatternMap> {
    (0..g.n()).try_fold(ZPatternMap::identity(g.n()), |acc, v| Ok(acc.compose(&depolarizing_zmap(g, v, np)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::graph::{make_lattice, Lattice};
    use crate::noise_model::{noise_from_p, PauliString};
    use proptest::prelude::*;

    fn pat(v: &[usize]) -> ZPattern {
        v.iter().copied().collect()
    }

    #[test]
    fn pauli_mapping_examples() {
        let g = make_lattice(&Lattice::Linear(5)).unwrap();
        assert_eq!(pauli_to_zpattern(&g, 2, Pauli::X), pat(&[1, 3]));
        assert_eq!(pauli_to_zpattern(&g, 2, Pauli::Z), pat(&[2]));
        assert_eq!(pauli_to_zpattern(&g, 2, Pauli::I), ZPattern::empty());
        let star = make_lattice(&Lattice::Star(5)).unwrap();
        for gr in [&g, &star] {
            for j in 0..5 {
                let y = pauli_to_zpattern(gr, j, Pauli::Y);
                let zx = pauli_to_zpattern(gr, j, Pauli::Z).compose(&pauli_to_zpattern(gr, j, Pauli::X));
                assert_eq!(y, zx);
            }
        }
    }

    #[test]
    fn depolarizing_zmap_examples() {
        let g = make_lattice(&Lattice::Linear(5)).unwrap();
        let m = depolarizing_zmap(&g, 2, NoiseParameter::noiseless()).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.weight(&ZPattern::empty()), 1.0);

        let m = depolarizing_zmap(&g, 2, noise_from_p(0.6).unwrap()).unwrap();
        assert!((m.weight(&ZPattern::empty()) - 0.7).abs() < 1e-15);
        for s in [pat(&[2]), pat(&[1, 3]), pat(&[1, 2, 3])] {
            assert!((m.weight(&s) - 0.1).abs() < 1e-15);
        }

        let isolated = Graph::new(3, [(0, 1)]).unwrap();
        let p = 0.3;
        let m = depolarizing_zmap(&isolated, 2, noise_from_p(p).unwrap()).unwrap();
        assert_eq!(m.len(), 2);
        assert!((m.weight(&ZPattern::empty()) - (p + (1.0 - p) / 2.0)).abs() < 1e-15);
        assert!((m.weight(&pat(&[2])) - (1.0 - p) / 2.0).abs() < 1e-15);

        assert!(depolarizing_zmap(&g, 5, noise_from_p(0.5).unwrap()).is_err());
    }

    #[test]
    fn channel_to_zmap_examples() {
        let g = make_lattice(&Lattice::Linear(4)).unwrap();
        let np = noise_from_p(0.8).unwrap();
        let chan = PauliDiagonalChannel::depolarizing(4, 1, np).unwrap();
        let via_channel = channel_to_zmap(&g, &chan).unwrap();
        assert!(via_channel.max_weight_diff(&depolarizing_zmap(&g, 1, np).unwrap()) < 1e-15);

        let g2 = make_lattice(&Lattice::Linear(2)).unwrap();
        let zz =
            PauliDiagonalChannel::normalize(vec![("II".parse().unwrap(), 0.9), ("ZZ".parse().unwrap(), 0.1)]).unwrap();
        let m = channel_to_zmap(&g2, &zz).unwrap();
        assert!((m.weight(&ZPattern::empty()) - 0.9).abs() < 1e-15);
        assert!((m.weight(&pat(&[0, 1])) - 0.1).abs() < 1e-15);

        let xx = PauliDiagonalChannel::normalize(vec![("XXII".parse::<PauliString>().unwrap(), 1.0)]).unwrap();
        let m = channel_to_zmap(&g, &xx).unwrap();
        assert_eq!(m.weight(&pat(&[0, 1, 2])), 1.0);

        assert!(channel_to_zmap(&g2, &xx).is_err());
    }

    #[test]
    fn basis_index_flips_pattern_bits() {
        let mu = GraphBasisIndex::zero(4).apply(&pat(&[1, 3]));
        assert_eq!(mu.bits(), &[false, true, false, true]);
        assert_eq!(mu.apply(&pat(&[1, 3])), GraphBasisIndex::zero(4));
    }

    #[test]
    fn global_map_matches_channel_route() {
        let g = make_lattice(&Lattice::Ring(5)).unwrap();
        let np = noise_from_p(0.7).unwrap();
        let direct = global_depolarizing_zmap(&g, np).unwrap();
        let chan = PauliDiagonalChannel::global_depolarizing(5, np).unwrap();
        let via = channel_to_zmap(&g, &chan).unwrap();
        assert!(direct.max_weight_diff(&via) < 1e-14);
        assert!((direct.total_weight() - 1.0).abs() < 1e-12);
    }

    fn arb_map(n: usize) -> impl Strategy<Value = ZPatternMap> {
        proptest::collection::vec((proptest::collection::btree_set(0..n, 0..4), 0.01f64..1.0), 1..5).prop_map(
            move |raw| ZPatternMap::from_terms(n, raw.into_iter().map(|(s, w)| (s.into_iter().collect(), w))).unwrap(),
        )
    }

    proptest! {
        #[test]
        fn composition_commutes_and_associates(a in arb_map(20), b in arb_map(20), c in arb_map(20)) {
            prop_assert!(a.compose(&b).max_weight_diff(&b.compose(&a)) < 1e-15);
            let left = a.compose(&b).compose(&c);
            let right = a.compose(&b.compose(&c));
            prop_assert!(left.max_weight_diff(&right) < 1e-15);
        }

        #[test]
        fn composition_chains_stay_normalized(maps in proptest::collection::vec(arb_map(20), 1..8)) {
            let total = maps.iter().fold(ZPatternMap::identity(20), |acc, m| acc.compose(m));
            prop_assert!((total.total_weight() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn pattern_composition_is_self_inverse(
            a in proptest::collection::btree_set(0usize..20, 0..8),
            b in proptest::collection::btree_set(0usize..20, 0..8),
        ) {
            let (a, b): (ZPattern, ZPattern) = (a.into_iter().collect(), b.into_iter().collect());
            prop_assert_eq!(a.compose(&b), b.compose(&a));
            prop_assert_eq!(a.compose(&b).compose(&b), a.clone());
            prop_assert!(a.compose(&a).is_empty());
        }
    }
}
