//! Brute-force density-matrix engine used to cross-check the analytic
//! modules on small systems.
//!
//! Qubit `q` of an `n`-qubit register is bit `n - 1 - q` of a basis index,
//! so qubit 0 is the leftmost tensor factor (matching Pauli string text).
//! Channels are applied as explicit Kraus sums; nothing larger than a
//! `2^n × 2^n` matrix is ever materialized.

use std::collections::BTreeSet;

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::graph_core::Graph;
use crate::noise_model::{dephasing_decomposition, NoiseParameter, PauliDiagonalChannel, PauliString};

pub type C64 = Complex<f64>;

/// Largest register the oracle accepts.
pub const MAX_QUBITS: usize = 10;

/// Eigenvalues above `-SIGN_TOL` count as non-negative.
pub const SIGN_TOL: f64 = 1e-10;

const ZERO: C64 = Complex { re: 0.0, im: 0.0 };

pub mod verify;

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Resource(format!("oracle supports 1..={MAX_QUBITS} qubits, got {n}")));
    }
    Ok(())
}

fn bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

fn mask_of(n: usize, qubits: impl IntoIterator<Item = usize>) -> usize {
    qubits.into_iter().fold(0, |m, q| m | bit(n, q))
}

fn parity(x: usize) -> bool {
    x.count_ones() % 2 == 1
}

/// Dense `n`-qubit density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    m: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn from_matrix(n: usize, m: DMatrix<C64>) -> Result<Self> {
        check_size(n)?;
        let dim = 1 << n;
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::validation(format!("expected {dim}x{dim} matrix, got {}x{}", m.nrows(), m.ncols())));
        }
        Ok(Self { n, m })
    }

    /// `|ψ⟩⟨ψ|` for a normalized state vector.
    pub fn from_pure(n: usize, psi: &[C64]) -> Result<Self> {
        check_size(n)?;
        if psi.len() != 1 << n {
            return Err(Error::validation(format!("state vector has {} entries, expected {}", psi.len(), 1 << n)));
        }
        let dim = psi.len();
        Ok(Self { n, m: DMatrix::from_fn(dim, dim, |i, j| psi[i] * psi[j].conj()) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.m * &self.m).trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.m - self.m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.m)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Hermitian to 1e-12, unit trace to 1e-12, spectrum above -1e-10.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > 1e-12 {
            return Err(Error::validation(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::validation(format!("trace {tr} != 1")));
        }
        let min = self.min_eigenvalue();
        if min < -SIGN_TOL {
            return Err(Error::validation(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        (&self.m - &other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `Re Tr(ρ P)`, with the Pauli phases of `Y` included.
    pub fn expectation(&self, pauli: &PauliString) -> f64 {
        assert_eq!(pauli.n(), self.n, "Pauli string size mismatch");
        let (x, z) = self.masks(pauli);
        let ys = pauli.letters().iter().filter(|l| **l == crate::noise_model::Pauli::Y).count();
        let global = Complex::i().powu(ys as u32);
        let mut acc = ZERO;
        for i in 0..self.dim() {
            let sign = if parity(i & z) { -1.0 } else { 1.0 };
            acc += self.m[(i, i ^ x)] * sign;
        }
        (acc * global).re
    }

    /// `P ρ P†`.
    pub fn conjugate_pauli(&self, pauli: &PauliString) -> DensityMatrix {
        let (x, z) = self.masks(pauli);
        let dim = self.dim();
        let mut out = DMatrix::from_element(dim, dim, ZERO);
        self.accumulate_conjugated(&mut out, x, z, 1.0);
        DensityMatrix { n: self.n, m: out }
    }

    /// Applies a single-qubit unitary `u` (row-major) to qubit `site`.
    pub fn apply_local_unitary(&self, site: usize, u: [[C64; 2]; 2]) -> DensityMatrix {
        let full = self.local_operator(site, u);
        DensityMatrix { n: self.n, m: &full * &self.m * full.adjoint() }
    }

    fn local_operator(&self, site: usize, u: [[C64; 2]; 2]) -> DMatrix<C64> {
        let b = bit(self.n, site);
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            if (i & !b) != (j & !b) {
                ZERO
            } else {
                u[usize::from(i & b != 0)][usize::from(j & b != 0)]
            }
        })
    }

    fn masks(&self, pauli: &PauliString) -> (usize, usize) {
        let mut x = 0;
        let mut z = 0;
        for (q, l) in pauli.letters().iter().enumerate() {
            let (bx, bz) = l.bits();
            if bx {
                x |= bit(self.n, q);
            }
            if bz {
                z |= bit(self.n, q);
            }
        }
        (x, z)
    }

    /// `out += w · P ρ P†` with `P ∝ X^x Z^z`.
    fn accumulate_conjugated(&self, out: &mut DMatrix<C64>, x: usize, z: usize, w: f64) {
        let dim = self.dim();
        for j in 0..dim {
            let sj = parity(j & z);
            for i in 0..dim {
                let v = self.m[(i, j)] * w;
                out[(i ^ x, j ^ x)] += if parity(i & z) ^ sj { -v } else { v };
            }
        }
    }
}

fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    m.clone().symmetric_eigenvalues().iter().copied().collect()
}

/// `∏_{(a,b)} CZ_ab |+⟩^{⊗n}` as a state vector; every `K_j` has eigenvalue +1.
pub fn graph_state_vector(g: &Graph) -> Result<Vec<C64>> {
    let n = g.n();
    check_size(n)?;
    let amp = (1.0 / (1u64 << n) as f64).sqrt();
    let edges = g.edges();
    Ok((0..1usize << n)
        .map(|i| {
            let flips = edges.iter().filter(|&&(a, b)| i & bit(n, a) != 0 && i & bit(n, b) != 0).count();
            Complex::new(if flips % 2 == 1 { -amp } else { amp }, 0.0)
        })
        .collect())
}

pub fn build_graph_state(g: &Graph) -> Result<DensityMatrix> {
    DensityMatrix::from_pure(g.n(), &graph_state_vector(g)?)
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn build_ghz_state(n: usize) -> Result<DensityMatrix> {
    check_size(n)?;
    let mut psi = vec![ZERO; 1 << n];
    let a = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    psi[0] = a;
    psi[(1 << n) - 1] = a;
    DensityMatrix::from_pure(n, &psi)
}

pub fn hadamard() -> [[C64; 2]; 2] {
    let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// `Σ_P w_P P ρ P†`.
pub fn apply_channel(rho: &DensityMatrix, chan: &PauliDiagonalChannel) -> Result<DensityMatrix> {
    if chan.n() != rho.n {
        return Err(Error::validation(format!("channel on {} qubits applied to {} qubits", chan.n(), rho.n)));
    }
    let dim = rho.dim();
    let mut out = DMatrix::from_element(dim, dim, ZERO);
    for (pauli, w) in chan.terms() {
        let (x, z) = rho.masks(pauli);
        rho.accumulate_conjugated(&mut out, x, z, w);
    }
    Ok(DensityMatrix { n: rho.n, m: out })
}

/// Depolarizing channel of strength `np` on every qubit, one site at a time.
pub fn apply_depolarizing(rho: &DensityMatrix, np: NoiseParameter) -> Result<DensityMatrix> {
    (0..rho.n)
        .try_fold(rho.clone(), |acc, site| apply_channel(&acc, &PauliDiagonalChannel::depolarizing(rho.n, site, np)?))
}

/// Largest entry-wise difference between depolarizing `site` directly and
/// through its x/y/z dephasing decomposition.
pub fn dephasing_identity_error(rho: &DensityMatrix, site: usize, np: NoiseParameter) -> Result<f64> {
    let direct = apply_channel(rho, &PauliDiagonalChannel::depolarizing(rho.n, site, np)?)?;
    let mut composed = rho.clone();
    for chan in dephasing_decomposition(np).channels(rho.n, site)? {
        composed = apply_channel(&composed, &chan)?;
    }
    Ok(direct.max_abs_diff(&composed))
}

/// The qubits whose partial transpose is taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionCut {
    n: usize,
    side_b: BTreeSet<usize>,
}

impl BipartitionCut {
    /// `side_b` must be a proper, non-empty subset of `0..n`.
    pub fn new(n: usize, side_b: impl IntoIterator<Item = usize>) -> Result<Self> {
        let side_b: BTreeSet<usize> = side_b.into_iter().collect();
        if side_b.is_empty() || side_b.len() >= n || side_b.iter().any(|&q| q >= n) {
            return Err(Error::validation(format!("{side_b:?} is not a proper non-empty subset of 0..{n}")));
        }
        Ok(Self { n, side_b })
    }

    pub fn side_b(&self) -> &BTreeSet<usize> {
        &self.side_b
    }

    pub fn complement(&self) -> BipartitionCut {
        BipartitionCut { n: self.n, side_b: (0..self.n).filter(|q| !self.side_b.contains(q)).collect() }
    }
}

/// `ρ^{T_B}`.
pub fn partial_transpose(rho: &DensityMatrix, cut: &BipartitionCut) -> Result<DMatrix<C64>> {
    if cut.n != rho.n {
        return Err(Error::validation(format!("cut on {} qubits applied to {} qubits", cut.n, rho.n)));
    }
    let b = mask_of(rho.n, cut.side_b.iter().copied());
    let dim = rho.dim();
    Ok(DMatrix::from_fn(dim, dim, |i, j| rho.m[((i & !b) | (j & b), (j & !b) | (i & b))]))
}

/// Smallest eigenvalue of `ρ^{T_B}`; negative means NPT across the cut.
pub fn min_pt_eigenvalue(rho: &DensityMatrix, cut: &BipartitionCut) -> Result<f64> {
    let pt = partial_transpose(rho, cut)?;
    Ok(hermitian_eigenvalues(&pt).into_iter().fold(f64::INFINITY, f64::min))
}

/// One σ_z measurement record on the discarded qubits.
#[derive(Debug, Clone)]
pub struct MeasurementBranch {
    /// Outcome bit of every qubit (entries for the kept pair are zero).
    pub outcomes: Vec<bool>,
    pub probability: f64,
    /// Normalized, corrected state of the kept pair.
    pub state: DensityMatrix,
}

/// Measures every qubit except `k` and `l` in the σ_z basis, one branch per
/// outcome string, and undoes the σ_z byproducts that the outcomes leave on
/// the pair. Branches of zero probability are skipped.
pub fn measure_branches(rho: &DensityMatrix, g: &Graph, k: usize, l: usize) -> Result<Vec<MeasurementBranch>> {
    let n = rho.n;
    if g.n() != n {
        return Err(Error::validation(format!("graph has {} vertices, state has {n} qubits", g.n())));
    }
    if k == l || k >= n || l >= n {
        return Err(Error::domain(format!("invalid kept pair ({k}, {l})")));
    }
    let measured: Vec<usize> = (0..n).filter(|&q| q != k && q != l).collect();
    let (bk, bl) = (bit(n, k), bit(n, l));
    let mut branches = Vec::with_capacity(1 << measured.len());
    for record in 0..1usize << measured.len() {
        let mut outcomes = vec![false; n];
        let mut base = 0;
        for (i, &q) in measured.iter().enumerate() {
            if record >> i & 1 == 1 {
                outcomes[q] = true;
                base |= bit(n, q);
            }
        }
        let index = |ab: usize| base | if ab & 2 != 0 { bk } else { 0 } | if ab & 1 != 0 { bl } else { 0 };
        let block = DMatrix::from_fn(4, 4, |r, c| rho.m[(index(r), index(c))]);
        let probability = block.trace().re;
        if probability <= 1e-15 {
            continue;
        }
        let byproduct = |target: usize, other: usize| {
            g.neighborhood(target).iter().filter(|&&u| u != other && outcomes[u]).count() % 2 == 1
        };
        let (ck, cl) = (byproduct(k, l), byproduct(l, k));
        let sign = |ab: usize| {
            let flip = (ck && ab & 2 != 0) ^ (cl && ab & 1 != 0);
            if flip {
                -1.0
            } else {
                1.0
            }
        };
        let state = DMatrix::from_fn(4, 4, |r, c| block[(r, c)] * (sign(r) * sign(c) / probability));
        branches.push(MeasurementBranch { outcomes, probability, state: DensityMatrix { n: 2, m: state } });
    }
    Ok(branches)
}

/// Outcome-averaged corrected pair state, qubit `k` first.
pub fn measure_and_reduce(rho: &DensityMatrix, g: &Graph, k: usize, l: usize) -> Result<DensityMatrix> {
    let mut acc = DMatrix::from_element(4, 4, ZERO);
    for b in measure_branches(rho, g, k, l)? {
        acc += b.state.m * Complex::new(b.probability, 0.0);
    }
    Ok(DensityMatrix { n: 2, m: acc })
}

/// `⟨Φ_ab|ρ|Φ_ab⟩` for `|Φ_ab⟩ = (Z^a ⊗ Z^b) CZ|++⟩`, indexed `2a + b`,
/// together with the largest off-diagonal magnitude in that basis.
pub fn pair_frame_coefficients(pair: &DensityMatrix) -> Result<([f64; 4], f64)> {
    if pair.n != 2 {
        return Err(Error::validation("pair frame needs a two-qubit state"));
    }
    let basis = |ab: usize| -> [f64; 4] {
        let (a, b) = (ab >> 1, ab & 1);
        std::array::from_fn(|idx| {
            let (i, j) = (idx >> 1, idx & 1);
            if (a * i + b * j + i * j) % 2 == 1 {
                -0.5
            } else {
                0.5
            }
        })
    };
    let element = |u: usize, v: usize| -> C64 {
        let (bu, bv) = (basis(u), basis(v));
        let mut acc = ZERO;
        for r in 0..4 {
            for c in 0..4 {
                acc += pair.m[(r, c)] * (bu[r] * bv[c]);
            }
        }
        acc
    };
    let diag = std::array::from_fn(|u| element(u, u).re);
    let mut off = 0.0f64;
    for u in 0..4 {
        for v in 0..4 {
            if u != v {
                off = off.max(element(u, v).norm());
            }
        }
    }
    Ok((diag, off))
}

/// Diagonal of a state in the GHZ basis
/// `|Ψ^±_k⟩ = (|k₁…k_{N-1} 0⟩ ± |k̄₁…k̄_{N-1} 1⟩)/√2`.
///
/// Labels are the integers whose bit `N-2-j` is `k_{j+1}`, i.e. `k₁` is the
/// most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct GhzCoefficients {
    pub n: usize,
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
    /// Largest off-diagonal magnitude of `ρ` in the GHZ basis.
    pub max_off_diagonal: f64,
}

impl GhzCoefficients {
    pub fn lambda0_plus(&self) -> f64 {
        self.plus[0]
    }

    pub fn lambda0_minus(&self) -> f64 {
        self.minus[0]
    }

    /// All `±` coefficients whose label has Hamming weight `k ≥ 1`.
    pub fn by_weight(&self, k: usize) -> Vec<f64> {
        (0..self.plus.len())
            .filter(|label| label.count_ones() as usize == k)
            .flat_map(|label| [self.plus[label], self.minus[label]])
            .collect()
    }

    pub fn total(&self) -> f64 {
        self.plus.iter().chain(&self.minus).sum()
    }
}

pub fn ghz_coefficients(rho: &DensityMatrix) -> Result<GhzCoefficients> {
    let n = rho.n;
    if n < 2 {
        return Err(Error::domain("GHZ basis needs at least two qubits"));
    }
    let labels = 1usize << (n - 1);
    let all = (1usize << n) - 1;
    // column c = 2·label + (0 for +, 1 for -): amplitudes at (|k0⟩, |k̄1⟩)
    let support = |c: usize| -> (usize, usize, f64) {
        let label = c >> 1;
        let a = label << 1;
        let b = a ^ all;
        (a, b, if c & 1 == 0 { 1.0 } else { -1.0 })
    };
    let element = |u: usize, v: usize| -> C64 {
        let (ua, ub, us) = support(u);
        let (va, vb, vs) = support(v);
        (rho.m[(ua, va)] + rho.m[(ua, vb)] * vs + rho.m[(ub, va)] * us + rho.m[(ub, vb)] * (us * vs)) * 0.5
    };
    let mut plus = vec![0.0; labels];
    let mut minus = vec![0.0; labels];
    let mut max_off_diagonal = 0.0f64;
    for u in 0..2 * labels {
        for v in 0..2 * labels {
            let e = element(u, v);
            if u == v {
                if u & 1 == 0 {
                    plus[u >> 1] = e.re;
                } else {
                    minus[u >> 1] = e.re;
                }
            } else {
                max_off_diagonal = max_off_diagonal.max(e.norm());
            }
        }
    }
    Ok(GhzCoefficients { n, plus, minus, max_off_diagonal })
}

/// Choi state of `ρ ↦ D_k D_l (U_kl ρ U_kl†)` with `D` the z-dephasing of
/// parameter `p_z` and `U_kl = exp(-iπ |0⟩⟨0|_k ⊗ |1⟩⟨1|_l)`, on qubits
/// ordered `(k, k', l, l')`.
pub fn choi_state(p_z: f64) -> Result<DensityMatrix> {
    // |Φ⁺⟩_{kk'} ⊗ |Φ⁺⟩_{ll'}: equal weight on indices with k = k' and l = l'
    let mut psi = vec![ZERO; 16];
    for k in 0..2usize {
        for l in 0..2usize {
            let idx = (k << 3) | (k << 2) | (l << 1) | l;
            let phase = if k == 0 && l == 1 { -0.5 } else { 0.5 };
            psi[idx] = Complex::new(phase, 0.0);
        }
    }
    let rho = DensityMatrix::from_pure(4, &psi)?;
    let rho = apply_channel(&rho, &PauliDiagonalChannel::dephasing(4, 0, crate::noise_model::Pauli::Z, p_z)?)?;
    apply_channel(&rho, &PauliDiagonalChannel::dephasing(4, 2, crate::noise_model::Pauli::Z, p_z)?)
}

/// Minimum eigenvalue of the Choi state's partial transpose across `(k,k')|(l,l')`.
pub fn choi_min_pt(p_z: f64) -> Result<f64> {
    min_pt_eigenvalue(&choi_state(p_z)?, &BipartitionCut::new(4, [2, 3])?)
}

/// Location of the PPT/NPT change along a `p_z` grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtCrossing {
    /// Last grid point on the PPT side.
    pub ppt_side: f64,
    /// First grid point on the NPT side.
    pub npt_side: f64,
    pub estimate: f64,
}

/// Scans `p_z_grid` (sorted ascending) for the first change from PPT to NPT
/// of the Choi state.
pub fn choi_pt_crossing(p_z_grid: &[f64]) -> Result<PtCrossing> {
    if let Some(bad) = p_z_grid.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
        return Err(Error::domain(format!("grid point {bad} outside (0, 1)")));
    }
    let npt = p_z_grid.iter().map(|&p| choi_min_pt(p).map(|e| e < -SIGN_TOL)).collect::<Result<Vec<_>>>()?;
    for i in 1..p_z_grid.len() {
        if !npt[i - 1] && npt[i] {
            let (lo, hi) = (p_z_grid[i - 1], p_z_grid[i]);
            return Ok(PtCrossing { ppt_side: lo, npt_side: hi, estimate: 0.5 * (lo + hi) });
        }
    }
    Err(Error::NoCrossing(format!("Choi partial transpose keeps its sign on {} grid points", p_z_grid.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{correlation_operator, make_lattice, Lattice};
    use crate::noise_model::noise_from_p;

    #[test]
    fn single_edge_graph_state_is_maximally_entangled() {
        let g = make_lattice(&Lattice::Linear(2)).unwrap();
        let rho = build_graph_state(&g).unwrap();
        let e = min_pt_eigenvalue(&rho, &BipartitionCut::new(2, [1]).unwrap()).unwrap();
        assert!((e + 0.5).abs() < 1e-12);
    }

    #[test]
    fn graph_states_are_stabilized() {
        for lat in [Lattice::Star(3), Lattice::Linear(4), Lattice::Ring(5), Lattice::Grid2d(2, 3)] {
            let g = make_lattice(&lat).unwrap();
            let rho = build_graph_state(&g).unwrap();
            for j in 0..g.n() {
                let k = correlation_operator(&g, j).unwrap();
                assert!((rho.expectation(&k) - 1.0).abs() < 1e-12, "{lat:?} K_{j}");
            }
            assert!((rho.purity() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn expectation_includes_y_phase() {
        // |+i⟩ has ⟨Y⟩ = 1
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityMatrix::from_pure(1, &[Complex::new(s, 0.0), Complex::new(0.0, s)]).unwrap();
        assert!((rho.expectation(&"Y".parse().unwrap()) - 1.0).abs() < 1e-15);
        assert!(rho.expectation(&"X".parse().unwrap()).abs() < 1e-15);
    }

    #[test]
    fn noiseless_channel_is_identity() {
        let g = make_lattice(&Lattice::Linear(3)).unwrap();
        let rho = build_graph_state(&g).unwrap();
        let out = apply_depolarizing(&rho, NoiseParameter::noiseless()).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn product_state_is_ppt() {
        let g = Graph::new(3, []).unwrap();
        let rho = build_graph_state(&g).unwrap();
        for side in [vec![0], vec![1, 2], vec![2]] {
            assert!(min_pt_eigenvalue(&rho, &BipartitionCut::new(3, side).unwrap()).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn cut_validation_and_complement_symmetry() {
        assert!(BipartitionCut::new(3, []).is_err());
        assert!(BipartitionCut::new(3, [0, 1, 2]).is_err());
        assert!(BipartitionCut::new(3, [3]).is_err());
        let g = make_lattice(&Lattice::Linear(4)).unwrap();
        let rho = apply_depolarizing(&build_graph_state(&g).unwrap(), noise_from_p(0.8).unwrap()).unwrap();
        let cut = BipartitionCut::new(4, [0, 2]).unwrap();
        let a = min_pt_eigenvalue(&rho, &cut).unwrap();
        let b = min_pt_eigenvalue(&rho, &cut.complement()).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn oversize_registers_are_refused() {
        assert!(matches!(build_ghz_state(11), Err(Error::Resource(_))));
        let g = make_lattice(&Lattice::Linear(11)).unwrap();
        assert!(matches!(build_graph_state(&g), Err(Error::Resource(_))));
    }

    #[test]
    fn noiseless_chain_reduces_to_reference_pair() {
        let g = make_lattice(&Lattice::Linear(4)).unwrap();
        let rho = build_graph_state(&g).unwrap();
        let pair = measure_and_reduce(&rho, &g, 1, 2).unwrap();
        let (q, off) = pair_frame_coefficients(&pair).unwrap();
        assert!((q[0] - 1.0).abs() < 1e-12);
        assert!(q[1..].iter().all(|x| x.abs() < 1e-12));
        assert!(off < 1e-12);
    }

    #[test]
    fn pure_ghz_coefficients() {
        let c = ghz_coefficients(&build_ghz_state(4).unwrap()).unwrap();
        assert!((c.lambda0_plus() - 1.0).abs() < 1e-15);
        assert!(c.lambda0_minus().abs() < 1e-15);
        assert!((c.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn choi_endpoints() {
        assert!(choi_min_pt(1.0).unwrap() < -SIGN_TOL);
        assert!(choi_min_pt(0.1).unwrap() >= -SIGN_TOL);
        assert!(choi_pt_crossing(&[0.1, 0.2]).unwrap_err().is_numeric());
        assert!(choi_pt_crossing(&[0.0, 0.5]).is_err());
    }
}
