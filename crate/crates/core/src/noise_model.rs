//! Noise strength, Pauli-diagonal channels and the dephasing decomposition
//! of the single-qubit depolarizing channel.
//!
//! Every channel here is of the form `ρ ↦ Σ_P w_P P ρ P†` with `P` a Pauli
//! string. Global phases of `P` cancel under conjugation, so a Pauli string
//! is stored as a bare sequence of letters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for channel weights. Terms lighter than this are pruned.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Smallest survival parameter accepted by front ends; `p = 0` is infinite time.
pub const MIN_P: f64 = 1e-12;

/// Survival parameter `p = exp(-κt)` together with the dimensionless time `κt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParameter {
    p: f64,
    kappa_t: f64,
}

impl NoiseParameter {
    /// Noise after dimensionless time `kappa_t ≥ 0`.
    pub fn from_time(kappa_t: f64) -> Result<Self> {
        if !kappa_t.is_finite() || kappa_t < 0.0 {
            return Err(Error::domain(format!("kappa_t must be finite and >= 0, got {kappa_t}")));
        }
        Ok(Self { p: (-kappa_t).exp(), kappa_t })
    }

    /// Noise with survival parameter `p ∈ (0, 1]`.
    pub fn from_p(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 0.0 || p > 1.0 {
            return Err(Error::domain(format!("p must lie in (0, 1], got {p}")));
        }
        Ok(Self { p, kappa_t: -p.ln() })
    }

    /// Like [`from_p`](Self::from_p) but raises `p` to [`MIN_P`] when smaller.
    /// The flag reports whether the clamp fired.
    pub fn from_p_clamped(p: f64) -> Result<(Self, bool)> {
        if p.is_finite() && (0.0..MIN_P).contains(&p) {
            return Ok((Self::from_p(MIN_P)?, true));
        }
        Ok((Self::from_p(p)?, false))
    }

    /// Time-domain counterpart of [`from_p_clamped`](Self::from_p_clamped).
    pub fn from_time_clamped(kappa_t: f64) -> Result<(Self, bool)> {
        let np = Self::from_time(kappa_t)?;
        if np.p < MIN_P {
            return Ok((Self::from_p(MIN_P)?, true));
        }
        Ok((np, false))
    }

    pub fn noiseless() -> Self {
        Self { p: 1.0, kappa_t: 0.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn kappa_t(&self) -> f64 {
        self.kappa_t
    }
}

/// `noise_from_time` entry point.
pub fn noise_from_time(kappa_t: f64) -> Result<NoiseParameter> {
    NoiseParameter::from_time(kappa_t)
}

/// `noise_from_p` entry point.
pub fn noise_from_p(p: f64) -> Result<NoiseParameter> {
    NoiseParameter::from_p(p)
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Symplectic `(x, z)` bits: `P ∝ X^x Z^z`.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// Product up to phase.
    pub fn mul(self, other: Pauli) -> Pauli {
        let (x1, z1) = self.bits();
        let (x2, z2) = other.bits();
        Pauli::from_bits(x1 ^ x2, z1 ^ z2)
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::validation(format!("invalid Pauli letter {other:?}"))),
        }
    }
}

/// Tensor product of Pauli letters, site 0 first. Phase is not represented.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        Self { letters }
    }

    pub fn identity(n: usize) -> Self {
        Self { letters: vec![Pauli::I; n] }
    }

    /// `letter` on `site`, identity elsewhere.
    pub fn single(n: usize, site: usize, letter: Pauli) -> Result<Self> {
        if site >= n {
            return Err(Error::domain(format!("site {site} out of range for {n} qubits")));
        }
        let mut s = Self::identity(n);
        s.letters[site] = letter;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn get(&self, site: usize) -> Pauli {
        self.letters[site]
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&l| l != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Site-wise product, phase dropped. Panics on length mismatch.
    pub fn mul(&self, other: &PauliString) -> PauliString {
        assert_eq!(self.n(), other.n(), "Pauli string length mismatch");
        PauliString { letters: self.letters.iter().zip(&other.letters).map(|(a, b)| a.mul(*b)).collect() }
    }

    /// True when the two strings commute (even number of anticommuting sites).
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        assert_eq!(self.n(), other.n(), "Pauli string length mismatch");
        let anti = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(a, b)| {
                let (x1, z1) = a.bits();
                let (x2, z2) = b.bits();
                (x1 & z2) ^ (z1 & x2)
            })
            .count();
        anti % 2 == 0
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s.trim().chars().map(Pauli::from_char).collect::<Result<Vec<_>>>()?;
        Ok(Self { letters })
    }
}

/// Channel `ρ ↦ Σ_P w_P P ρ P†` with non-negative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliDiagonalChannel {
    n: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliDiagonalChannel {
    /// Validates, merges duplicates, prunes weights below [`WEIGHT_TOL`] and
    /// rescales to unit total weight.
    pub fn normalize(raw_terms: Vec<(PauliString, f64)>) -> Result<Self> {
        let n = match raw_terms.first() {
            Some((s, _)) => s.n(),
            None => return Err(Error::validation("channel needs at least one term")),
        };
        let mut terms: BTreeMap<PauliString, f64> = BTreeMap::new();
        for (s, w) in raw_terms {
            if s.n() != n {
                return Err(Error::validation(format!("inconsistent qubit count: {} vs {}", s.n(), n)));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::validation(format!("invalid weight {w} for {s}")));
            }
            *terms.entry(s).or_insert(0.0) += w;
        }
        let total: f64 = terms.values().sum();
        if total <= 0.0 {
            return Err(Error::validation("channel weights sum to zero"));
        }
        terms.values_mut().for_each(|w| *w /= total);
        terms.retain(|_, w| *w > WEIGHT_TOL);
        let total: f64 = terms.values().sum();
        terms.values_mut().for_each(|w| *w /= total);
        Ok(Self { n, terms })
    }

    /// Depolarizing channel of strength `np` on one site:
    /// `p ρ + (1-p)/4 Σ_j σ_j ρ σ_j`.
    pub fn depolarizing(n: usize, site: usize, np: NoiseParameter) -> Result<Self> {
        let p = np.p();
        let terms = Pauli::ALL
            .iter()
            .map(|&l| {
                let w = if l == Pauli::I { p + (1.0 - p) / 4.0 } else { (1.0 - p) / 4.0 };
                PauliString::single(n, site, l).map(|s| (s, w))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(terms)
    }

    /// Dephasing along `axis` with parameter `q`:
    /// `q ρ + (1-q)/2 (ρ + σ ρ σ)`.
    pub fn dephasing(n: usize, site: usize, axis: Pauli, q: f64) -> Result<Self> {
        if axis == Pauli::I {
            return Err(Error::domain("dephasing axis must be X, Y or Z"));
        }
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::domain(format!("dephasing parameter must lie in [0, 1], got {q}")));
        }
        Self::normalize(vec![
            (PauliString::identity(n), (1.0 + q) / 2.0),
            (PauliString::single(n, site, axis)?, (1.0 - q) / 2.0),
        ])
    }

    /// Depolarizing noise of the same strength on every site.
    pub fn global_depolarizing(n: usize, np: NoiseParameter) -> Result<Self> {
        let mut chan = Self::normalize(vec![(PauliString::identity(n), 1.0)])?;
        for site in 0..n {
            chan = chan.then(&Self::depolarizing(n, site, np)?);
        }
        Ok(chan)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(s, &w)| (s, w))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight(&self, s: &PauliString) -> f64 {
        self.terms.get(s).copied().unwrap_or(0.0)
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.values().sum()
    }

    /// Sequential composition (this channel, then `next`). Pauli channels
    /// commute, so the order only matters for readability.
    pub fn then(&self, next: &PauliDiagonalChannel) -> PauliDiagonalChannel {
        assert_eq!(self.n, next.n, "channel qubit count mismatch");
        let mut terms: BTreeMap<PauliString, f64> = BTreeMap::new();
        for (a, wa) in &self.terms {
            for (b, wb) in &next.terms {
                *terms.entry(a.mul(b)).or_insert(0.0) += wa * wb;
            }
        }
        terms.retain(|_, w| *w > 0.0);
        PauliDiagonalChannel { n: self.n, terms }
    }

    /// Largest absolute weight difference against `other`.
    pub fn max_weight_diff(&self, other: &PauliDiagonalChannel) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|s| (self.weight(s) - other.weight(s)).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ChannelWire::from(self)).expect("channel serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: ChannelWire = serde_json::from_str(text).map_err(|e| Error::validation(e.to_string()))?;
        wire.try_into()
    }
}

/// `normalize_channel` entry point.
pub fn normalize_channel(raw_terms: Vec<(PauliString, f64)>) -> Result<PauliDiagonalChannel> {
    PauliDiagonalChannel::normalize(raw_terms)
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    pauli: String,
    w: f64,
}

#[derive(Serialize, Deserialize)]
struct ChannelWire {
    n: usize,
    terms: Vec<TermWire>,
}

impl From<&PauliDiagonalChannel> for ChannelWire {
    fn from(c: &PauliDiagonalChannel) -> Self {
        ChannelWire { n: c.n, terms: c.terms().map(|(s, w)| TermWire { pauli: s.to_string(), w }).collect() }
    }
}

impl TryFrom<ChannelWire> for PauliDiagonalChannel {
    type Error = Error;

    fn try_from(wire: ChannelWire) -> Result<Self> {
        let raw = wire
            .terms
            .into_iter()
            .map(|t| t.pauli.parse::<PauliString>().map(|s| (s, t.w)))
            .collect::<Result<Vec<_>>>()?;
        let chan = Self::normalize(raw)?;
        if chan.n != wire.n {
            return Err(Error::validation(format!("declared n = {} but terms have {} qubits", wire.n, chan.n)));
        }
        Ok(chan)
    }
}

/// Parameters of the x-, y- and z-dephasing maps whose composition is a
/// depolarizing channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingDecomposition {
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl DephasingDecomposition {
    /// The three single-site dephasing channels, in x, y, z order.
    pub fn channels(&self, n: usize, site: usize) -> Result<[PauliDiagonalChannel; 3]> {
        Ok([
            PauliDiagonalChannel::dephasing(n, site, Pauli::X, self.p_x)?,
            PauliDiagonalChannel::dephasing(n, site, Pauli::Y, self.p_y)?,
            PauliDiagonalChannel::dephasing(n, site, Pauli::Z, self.p_z)?,
        ])
    }
}

/// Each axis dephases with `√p`: every Bloch component not along the axis
/// shrinks by `√p`, so all three shrink by `p` after the composition.
pub fn dephasing_decomposition(np: NoiseParameter) -> DephasingDecomposition {
    let q = np.p().sqrt();
    DephasingDecomposition { p_x: q, p_y: q, p_z: q }
}
