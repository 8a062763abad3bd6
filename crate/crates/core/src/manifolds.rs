//! Symmetry-reduced Hamiltonian blocks of the first and second excitation
//! manifolds, their spectra, and adiabatic state labels.
//!
//! Permutation symmetry splits each manifold Hamiltonian into one
//! totally-symmetric block (A), one standard-irrep block repeated N-1 times
//! (B) and, with two excitations, an N(N-3)/2-fold degenerate scalar (C).
//! Blocks are at most 4x4 regardless of N.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, eigh_jacobi, norm, Eigen, SymMatrix};
use crate::params::SystemParams;

/// Detuning below this fraction of the Rabi frequency selects the resonant
/// (degenerate) branch everywhere in the crate.
pub const RESONANT_DETUNING_FACTOR: f64 = 1e-10;

/// Gap threshold (in units of `omega_10`) for treating block eigenvalues as
/// degenerate when aligning eigenvectors with reference states.
pub const DEGENERACY_GAP_FACTOR: f64 = 1e-8;

/// Excitation manifold selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Manifold {
    One,
    Two,
}

impl Manifold {
    pub fn from_u8(m: u8) -> Result<Self> {
        match m {
            1 => Ok(Manifold::One),
            2 => Ok(Manifold::Two),
            _ => Err(Error::InvalidParams(format!(
                "manifold must be 1 or 2, got {m}"
            ))),
        }
    }

    pub fn as_u8(&self) -> u8 {
        match self {
            Manifold::One => 1,
            Manifold::Two => 2,
        }
    }
}

/// Irreducible representation carried by a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Irrep {
    A,
    B,
    C,
}

impl Irrep {
    pub fn name(&self) -> &'static str {
        match self {
            Irrep::A => "A",
            Irrep::B => "B",
            Irrep::C => "C",
        }
    }

    /// Block multiplicity for a given emitter count.
    pub fn multiplicity(&self, n: u64) -> u128 {
        match self {
            Irrep::A => 1,
            Irrep::B => (n as u128).saturating_sub(1),
            Irrep::C => {
                if n >= 4 {
                    (n as u128) * (n as u128 - 3) / 2
                } else {
                    0
                }
            }
        }
    }
}

/// Symmetrized basis member labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    /// `|1_0>` - one photon
    OnePhoton,
    /// `|1_A>` - symmetric single excitation
    OneA,
    /// `|1_B(k)>` - dark single excitation
    OneB,
    /// `|2_0>` - two photons
    TwoPhoton,
    /// `|1_0 1_A>`
    PhotonOneA,
    /// `|1_A^2>` - two emitters singly excited, symmetric
    PairA,
    /// `|2_A>` - one emitter doubly excited, symmetric
    TwoA,
    /// `|1_0 1_B(k)>`
    PhotonOneB,
    /// `|1_B(k)^2>`
    PairB,
    /// `|2_B(k)>`
    TwoB,
    /// `|1_C(kl)^2>`
    PairC,
}

impl BasisLabel {
    pub fn name(&self) -> &'static str {
        match self {
            BasisLabel::OnePhoton => "1_0",
            BasisLabel::OneA => "1_A",
            BasisLabel::OneB => "1_B",
            BasisLabel::TwoPhoton => "2_0",
            BasisLabel::PhotonOneA => "1_01_A",
            BasisLabel::PairA => "1_A^2",
            BasisLabel::TwoA => "2_A",
            BasisLabel::PhotonOneB => "1_01_B",
            BasisLabel::PairB => "1_B^2",
            BasisLabel::TwoB => "2_B",
            BasisLabel::PairC => "1_C^2",
        }
    }

    /// Photon-number expectation carried by this basis member.
    pub fn photon_weight(&self) -> f64 {
        match self {
            BasisLabel::TwoPhoton => 2.0,
            BasisLabel::OnePhoton | BasisLabel::PhotonOneA | BasisLabel::PhotonOneB => 1.0,
            _ => 0.0,
        }
    }
}

/// Adiabatic state labels, named after the harmonic reference states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateLabel {
    /// `|0>`, used only as the ket of ground-state transition amplitudes.
    Ground,
    OnePlus,
    OneMinus,
    OneDark,
    TwoPlus,
    TwoMinus,
    OnePlusOneMinus,
    TwoDarkA,
    OnePlusOneB,
    OneMinusOneB,
    TwoDarkB,
    PairC,
}

impl StateLabel {
    pub fn name(&self) -> &'static str {
        match self {
            StateLabel::Ground => "0",
            StateLabel::OnePlus => "1+",
            StateLabel::OneMinus => "1-",
            StateLabel::OneDark => "1_B",
            StateLabel::TwoPlus => "2+",
            StateLabel::TwoMinus => "2-",
            StateLabel::OnePlusOneMinus => "1+1-",
            StateLabel::TwoDarkA => "2_DA",
            StateLabel::OnePlusOneB => "1+1_B",
            StateLabel::OneMinusOneB => "1-1_B",
            StateLabel::TwoDarkB => "2_DB",
            StateLabel::PairC => "1_C^2",
        }
    }
}

/// One irrep-labeled Hermitian block plus its basis labels and multiplicity.
#[derive(Debug, Clone)]
pub struct Block {
    pub irrep: Irrep,
    pub basis: Vec<BasisLabel>,
    pub matrix: SymMatrix,
    pub multiplicity: u128,
}

/// One labeled eigenstate of a block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub frequency: f64,
    pub irrep: Irrep,
    pub multiplicity: u128,
    pub label: StateLabel,
    pub basis: Vec<BasisLabel>,
    pub eigenvector: Vec<f64>,
    pub photon_content: f64,
}

/// Full labeled spectrum of one manifold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledSpectrum {
    pub manifold: u8,
    pub entries: Vec<SpectrumEntry>,
}

impl LabeledSpectrum {
    /// Sum of entry multiplicities; equals the manifold dimension.
    pub fn total_multiplicity(&self) -> u128 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn find(&self, label: StateLabel) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

/// Dimension of the requested manifold for the given model.
pub fn manifold_dim(p: &SystemParams, manifold: Manifold) -> u128 {
    let n = p.n_emitters() as u128;
    match manifold {
        Manifold::One => n + 1,
        Manifold::Two => {
            let pairs = n * (n - 1) / 2;
            if p.model().is_tc() {
                1 + n + pairs
            } else {
                1 + 2 * n + pairs
            }
        }
    }
}

/// First-manifold blocks: a 2x2 polaritonic block and, for N >= 2, the
/// (N-1)-fold dark state at `omega_10`.
pub fn build_blocks_m1(p: &SystemParams) -> Vec<Block> {
    let n = p.n_f();
    let sqrt_ng = n.sqrt() * p.g();
    let mut a = SymMatrix::zeros(2);
    a.set(0, 0, p.omega_cav());
    a.set(1, 1, p.omega_10());
    a.set_sym(0, 1, sqrt_ng);
    let mut blocks = vec![Block {
        irrep: Irrep::A,
        basis: vec![BasisLabel::OnePhoton, BasisLabel::OneA],
        matrix: a,
        multiplicity: 1,
    }];
    if p.n_emitters() >= 2 {
        let mut b = SymMatrix::zeros(1);
        b.set(0, 0, p.omega_10());
        blocks.push(Block {
            irrep: Irrep::B,
            basis: vec![BasisLabel::OneB],
            matrix: b,
            multiplicity: Irrep::B.multiplicity(p.n_emitters()),
        });
    }
    blocks
}

/// Second-manifold blocks.
///
/// Degenerate dimensions are handled by explicit row/column omission: the
/// `1_A^2` member needs N >= 2, `1_B^2` needs N >= 3, the `2_A`/`2_B` members
/// exist only for three-level models, the whole B block needs N >= 2 and C
/// needs N >= 4.
pub fn build_blocks_m2(p: &SystemParams) -> Vec<Block> {
    let n_int = p.n_emitters();
    let n = p.n_f();
    let w0 = p.omega_cav();
    let w10 = p.omega_10();
    let g = p.g();
    let tc = p.model().is_tc();
    let diag_two = w10 + p.omega_12(); // omega_10 + omega_21 = 2 omega_10 - chi omega_10
    let g12 = p.g_12();

    let mut blocks = Vec::new();

    // A block over [2_0, 1_0 1_A, 1_A^2, 2_A]
    let mut labels = vec![BasisLabel::TwoPhoton, BasisLabel::PhotonOneA];
    if n_int >= 2 {
        labels.push(BasisLabel::PairA);
    }
    if !tc {
        labels.push(BasisLabel::TwoA);
    }
    let dim = labels.len();
    let mut a = SymMatrix::zeros(dim);
    let idx = |l: BasisLabel| labels.iter().position(|&x| x == l);
    a.set(0, 0, 2.0 * w0);
    a.set(1, 1, w0 + w10);
    a.set_sym(0, 1, (2.0 * n).sqrt() * g);
    if let Some(i) = idx(BasisLabel::PairA) {
        a.set(i, i, 2.0 * w10);
        a.set_sym(1, i, (2.0 * (n - 1.0)).sqrt() * g);
    }
    if let Some(i) = idx(BasisLabel::TwoA) {
        a.set(i, i, diag_two);
        a.set_sym(1, i, g12);
    }
    blocks.push(Block {
        irrep: Irrep::A,
        basis: labels,
        matrix: a,
        multiplicity: 1,
    });

    // B block over [1_0 1_B, 1_B^2, 2_B], N >= 2
    if n_int >= 2 {
        let mut labels = vec![BasisLabel::PhotonOneB];
        if n_int >= 3 {
            labels.push(BasisLabel::PairB);
        }
        if !tc {
            labels.push(BasisLabel::TwoB);
        }
        let dim = labels.len();
        let mut b = SymMatrix::zeros(dim);
        let idx = |l: BasisLabel| labels.iter().position(|&x| x == l);
        b.set(0, 0, w0 + w10);
        if let Some(i) = idx(BasisLabel::PairB) {
            b.set(i, i, 2.0 * w10);
            b.set_sym(0, i, (n - 2.0).sqrt() * g);
        }
        if let Some(i) = idx(BasisLabel::TwoB) {
            b.set(i, i, diag_two);
            b.set_sym(0, i, g12);
        }
        blocks.push(Block {
            irrep: Irrep::B,
            basis: labels,
            matrix: b,
            multiplicity: Irrep::B.multiplicity(n_int),
        });
    }

    // C block: scalar 2 omega_10 for every model, N >= 4
    if n_int >= 4 {
        let mut c = SymMatrix::zeros(1);
        c.set(0, 0, 2.0 * w10);
        blocks.push(Block {
            irrep: Irrep::C,
            basis: vec![BasisLabel::PairC],
            matrix: c,
            multiplicity: Irrep::C.multiplicity(n_int),
        });
    }

    blocks
}

/// Diagonalizes one block. Eigenvalues ascending, eigenvectors orthonormal
/// with the first sizable component positive.
pub fn eigensolve_block(block: &Block) -> Result<Eigen> {
    if block.matrix.dim() > 4 {
        return Err(Error::Contract(format!(
            "reduced blocks have dimension <= 4, got {}",
            block.matrix.dim()
        )));
    }
    eigh_jacobi(&block.matrix)
}

/// An analytic reference state used for adiabatic labeling: label, vector
/// over the block basis and its zeroth-order (harmonic) frequency.
#[derive(Debug, Clone)]
pub struct ReferenceState {
    pub label: StateLabel,
    pub vector: Vec<f64>,
    pub frequency: f64,
}

/// Whether parameters sit on the resonant (degenerate) branch.
pub fn is_resonant(p: &SystemParams) -> bool {
    let d = p.derive();
    d.detuning.abs() < RESONANT_DETUNING_FACTOR * d.rabi.max(f64::MIN_POSITIVE)
}

/// Analytic reference eigenstates for a block.
///
/// TC blocks use the large-N bipolariton forms; three-level blocks use the
/// exact harmonic normal-mode states. For the anharmonic model at exact
/// resonance the degenerate pair `1+1-`/`2_DA` is replaced by the rotated
/// zeroth-order states that the perturbation selects; the harmonic model
/// keeps the normal-mode forms (its degeneracy is exact, and the purely
/// molecular `2_DA` is the conventional representative). Components whose
/// basis member is absent at small N are dropped and the rest renormalized;
/// a reference whose norm vanishes does not exist at that N.
pub fn reference_states(p: &SystemParams, block: &Block) -> Vec<ReferenceState> {
    let rotated = is_resonant(p)
        && matches!(p.model(), crate::params::EmitterModel::Anharmonic { .. })
        && p.n_emitters() >= 2;
    reference_states_with_branch(p, block, rotated)
}

/// Same as [`reference_states`] with the degenerate-pair rotation chosen
/// explicitly (perturbation theory needs the rotated pair on the harmonic
/// zeroth-order blocks).
pub fn reference_states_with_branch(
    p: &SystemParams,
    block: &Block,
    rotated: bool,
) -> Vec<ReferenceState> {
    let d = p.derive();
    let (hp, hm) = (d.h_plus, d.h_minus);
    let (wp, wm) = d.omega_pm(p);
    let n = p.n_f();
    let s2 = std::f64::consts::SQRT_2;
    let w10 = p.omega_10();
    let resonant = rotated && p.n_emitters() >= 2 && !p.model().is_tc();

    // full-basis component maps, manifold-agnostic
    let full = |label: StateLabel| -> Vec<(BasisLabel, f64)> {
        use BasisLabel::*;
        match label {
            StateLabel::OnePlus => vec![(OnePhoton, hp), (OneA, hm)],
            StateLabel::OneMinus => vec![(OnePhoton, -hm), (OneA, hp)],
            StateLabel::OneDark => vec![(OneB, 1.0)],
            StateLabel::TwoPlus => vec![
                (TwoPhoton, hp * hp),
                (PhotonOneA, s2 * hp * hm),
                (PairA, hm * hm * ((n - 1.0) / n).sqrt()),
                (TwoA, hm * hm / n.sqrt()),
            ],
            StateLabel::TwoMinus => vec![
                (TwoPhoton, hm * hm),
                (PhotonOneA, -s2 * hp * hm),
                (PairA, hp * hp * ((n - 1.0) / n).sqrt()),
                (TwoA, hp * hp / n.sqrt()),
            ],
            StateLabel::OnePlusOneMinus => {
                if resonant {
                    vec![
                        (TwoPhoton, (n - 1.0).sqrt() / (2.0 * n - 1.0).sqrt()),
                        (PairA, -n.sqrt() / (2.0 * n - 1.0).sqrt()),
                    ]
                } else {
                    vec![
                        (TwoPhoton, -s2 * hp * hm),
                        (PhotonOneA, hp * hp - hm * hm),
                        (PairA, s2 * hp * hm * ((n - 1.0) / n).sqrt()),
                        (TwoA, s2 * hp * hm / n.sqrt()),
                    ]
                }
            }
            StateLabel::TwoDarkA => {
                if resonant {
                    let r = 2.0 * n * (2.0 * n - 1.0);
                    vec![
                        (TwoPhoton, -n.sqrt() / r.sqrt()),
                        (PairA, -(n - 1.0).sqrt() / r.sqrt()),
                        (TwoA, ((2.0 * n - 1.0) / (2.0 * n)).sqrt()),
                    ]
                } else {
                    vec![(PairA, -1.0 / n.sqrt()), (TwoA, ((n - 1.0) / n).sqrt())]
                }
            }
            StateLabel::OnePlusOneB => vec![
                (PhotonOneB, hp),
                (PairB, hm * ((n - 2.0) / n).sqrt()),
                (TwoB, hm * (2.0 / n).sqrt()),
            ],
            StateLabel::OneMinusOneB => vec![
                (PhotonOneB, -hm),
                (PairB, hp * ((n - 2.0) / n).sqrt()),
                (TwoB, hp * (2.0 / n).sqrt()),
            ],
            StateLabel::TwoDarkB => {
                vec![(PairB, -(2.0 / n).sqrt()), (TwoB, ((n - 2.0) / n).sqrt())]
            }
            StateLabel::PairC => vec![(BasisLabel::PairC, 1.0)],
            StateLabel::Ground => vec![],
        }
    };

    // TC bipolariton forms only involve members present in the TC basis, so
    // the projection below already restricts them correctly.
    let candidates: Vec<(StateLabel, f64)> = match (
        block.irrep,
        block.basis.contains(&BasisLabel::OnePhoton) || block.basis.contains(&BasisLabel::OneB),
    ) {
        (Irrep::A, true) => vec![(StateLabel::OnePlus, wp), (StateLabel::OneMinus, wm)],
        (Irrep::B, true) => vec![(StateLabel::OneDark, w10)],
        (Irrep::A, false) => vec![
            (StateLabel::TwoPlus, 2.0 * wp),
            (StateLabel::OnePlusOneMinus, wp + wm),
            (StateLabel::TwoDarkA, 2.0 * w10),
            (StateLabel::TwoMinus, 2.0 * wm),
        ],
        (Irrep::B, false) => vec![
            (StateLabel::OnePlusOneB, w10 + wp),
            (StateLabel::TwoDarkB, 2.0 * w10),
            (StateLabel::OneMinusOneB, w10 + wm),
        ],
        (Irrep::C, _) => vec![(StateLabel::PairC, 2.0 * w10)],
    };

    let mut refs = Vec::new();
    for (label, freq) in candidates {
        let mut v = vec![0.0; block.basis.len()];
        for (bl, comp) in full(label) {
            if let Some(i) = block.basis.iter().position(|&x| x == bl) {
                v[i] = comp;
            }
        }
        let nn = norm(&v);
        if nn > 1e-9 {
            for c in v.iter_mut() {
                *c /= nn;
            }
            refs.push(ReferenceState {
                label,
                vector: v,
                frequency: freq,
            });
        }
    }
    refs
}

/// Photon-number expectation of an eigenvector over known basis labels.
pub fn photon_content(basis: &[BasisLabel], eigenvector: &[f64]) -> f64 {
    basis
        .iter()
        .zip(eigenvector)
        .map(|(b, c)| b.photon_weight() * c * c)
        .sum()
}

/// Solves one block and returns labeled, sign-aligned eigenpairs.
///
/// Within eigenvalue clusters degenerate at the `1e-8 omega_10` scale the
/// eigenvectors are rotated to align with the reference states, so labels and
/// photon contents are well defined even at exact degeneracies.
pub fn solve_block(p: &SystemParams, block: &Block) -> Result<Vec<SpectrumEntry>> {
    let mut eig = eigensolve_block(block)?;
    let refs = reference_states(p, block);
    let dim = block.matrix.dim();
    let tol_deg = DEGENERACY_GAP_FACTOR * p.omega_10();

    // degenerate clusters -> align with references
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && (eig.values[end] - eig.values[end - 1]).abs() <= tol_deg {
            end += 1;
        }
        if end - start > 1 {
            align_cluster(&mut eig, start, end, &refs);
        }
        start = end;
    }

    // greedy unique assignment by |overlap|, largest first, exact ties broken
    // by frequency proximity (a 1-dimensional block projects several
    // references onto the same direction)
    let mut pairs: Vec<(f64, f64, usize, usize)> = Vec::new();
    for (ri, r) in refs.iter().enumerate() {
        for vi in 0..dim {
            pairs.push((
                dot(&r.vector, &eig.vectors[vi]).abs(),
                (eig.values[vi] - r.frequency).abs(),
                ri,
                vi,
            ));
        }
    }
    pairs.sort_by(|a, b| {
        if (a.0 - b.0).abs() > 1e-9 {
            b.0.partial_cmp(&a.0).unwrap()
        } else {
            a.1.partial_cmp(&b.1).unwrap()
        }
    });
    let mut label_of = vec![None; dim];
    let mut ref_used = vec![false; refs.len()];
    for (_, _, ri, vi) in pairs {
        if ref_used[ri] || label_of[vi].is_some() {
            continue;
        }
        ref_used[ri] = true;
        label_of[vi] = Some(ri);
    }

    let mut entries = Vec::with_capacity(dim);
    for vi in 0..dim {
        let ri = label_of[vi].ok_or_else(|| {
            Error::Contract(format!(
                "no reference label for eigenvector {vi} of the {} block",
                block.irrep.name()
            ))
        })?;
        let mut vec = eig.vectors[vi].clone();
        if dot(&refs[ri].vector, &vec) < 0.0 {
            for c in vec.iter_mut() {
                *c = -*c;
            }
        }
        entries.push(SpectrumEntry {
            frequency: eig.values[vi],
            irrep: block.irrep,
            multiplicity: block.multiplicity,
            label: refs[ri].label,
            basis: block.basis.clone(),
            eigenvector: vec,
            photon_content: photon_content(&block.basis, &eig.vectors[vi]),
        });
    }
    // recompute photon content after sign alignment (sign does not matter,
    // but keep it from the aligned vector for clarity)
    for e in entries.iter_mut() {
        e.photon_content = photon_content(&e.basis, &e.eigenvector);
    }
    Ok(entries)
}

/// Replaces the eigenvectors of a degenerate cluster with the orthonormalized
/// projections of the best-matching reference states onto the cluster span.
fn align_cluster(eig: &mut Eigen, start: usize, end: usize, refs: &[ReferenceState]) {
    let dim = eig.vectors[0].len();
    let cluster: Vec<Vec<f64>> = eig.vectors[start..end].to_vec();
    // project refs onto the cluster subspace
    let mut projected: Vec<(f64, Vec<f64>)> = Vec::new();
    for r in refs {
        let mut pvec = vec![0.0; dim];
        for cv in &cluster {
            let ov = dot(&r.vector, cv);
            for (pi, ci) in pvec.iter_mut().zip(cv) {
                *pi += ov * ci;
            }
        }
        let nn = norm(&pvec);
        if nn > 0.5 {
            projected.push((nn, pvec));
        }
    }
    projected.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());

    // Gram-Schmidt the projections, fill up with original cluster vectors
    let mut new_vecs: Vec<Vec<f64>> = Vec::new();
    let push_orthonormalized = |mut v: Vec<f64>, new_vecs: &mut Vec<Vec<f64>>| {
        for u in new_vecs.iter() {
            let ov = dot(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= ov * ui;
            }
        }
        let nn = norm(&v);
        if nn > 1e-6 {
            for c in v.iter_mut() {
                *c /= nn;
            }
            new_vecs.push(v);
        }
    };
    for (_, pv) in projected {
        if new_vecs.len() == cluster.len() {
            break;
        }
        push_orthonormalized(pv, &mut new_vecs);
    }
    for cv in &cluster {
        if new_vecs.len() == cluster.len() {
            break;
        }
        push_orthonormalized(cv.clone(), &mut new_vecs);
    }
    if new_vecs.len() == cluster.len() {
        for (k, v) in new_vecs.into_iter().enumerate() {
            eig.vectors[start + k] = v;
        }
    }
}

/// Builds, diagonalizes and labels every block of a manifold.
///
/// Entries are ordered by block (A, then B, then C) and ascending frequency
/// within each block.
pub fn solve_manifold(p: &SystemParams, manifold: Manifold) -> Result<LabeledSpectrum> {
    let blocks = match manifold {
        Manifold::One => build_blocks_m1(p),
        Manifold::Two => build_blocks_m2(p),
    };
    let mut entries = Vec::new();
    for block in &blocks {
        entries.extend(solve_block(p, block)?);
    }
    Ok(LabeledSpectrum {
        manifold: manifold.as_u8(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{morse_gamma, EmitterModel};

    fn ho(n: u64, w0: f64, cg: f64) -> SystemParams {
        SystemParams::with_collective_g(n, w0, 1.0, cg, EmitterModel::Harmonic).unwrap()
    }

    #[test]
    fn m1_blocks_shape() {
        let p = ho(4, 1.0, 0.07);
        let blocks = build_blocks_m1(&p);
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].matrix.dim(), 2);
        assert!((blocks[0].matrix.get(0, 1) - 0.07).abs() < 1e-15);
        assert_eq!(blocks[1].multiplicity, 3);

        // N = 1: no B block
        let p1 = ho(1, 1.0, 0.07);
        assert_eq!(build_blocks_m1(&p1).len(), 1);
    }

    #[test]
    fn m1_spectrum_example() {
        // N=4, resonant, g = 0.035: A eigenvalues 1 -/+ sqrt(N) g = {0.93, 1.07}
        let p = SystemParams::new(4, 1.0, 1.0, 0.035, EmitterModel::Harmonic).unwrap();
        let s = solve_manifold(&p, Manifold::One).unwrap();
        let freqs: Vec<f64> = s.entries.iter().map(|e| e.frequency).collect();
        assert!((freqs[0] - 0.93).abs() < 1e-12);
        assert!((freqs[1] - 1.07).abs() < 1e-12);
        assert!((freqs[2] - 1.0).abs() < 1e-15);
        assert_eq!(s.entries[2].multiplicity, 3);
        assert_eq!(s.total_multiplicity(), 5);
        // decoupled limit
        let p0 = SystemParams::new(4, 1.3, 1.0, 0.0, EmitterModel::Harmonic).unwrap();
        let s0 = solve_manifold(&p0, Manifold::One).unwrap();
        assert!(s0.entries.iter().any(|e| (e.frequency - 1.3).abs() < 1e-15));
    }

    #[test]
    fn m2_dimension_rules() {
        for (n, model, a_dim, b_dim) in [
            (1u64, EmitterModel::TavisCummings, 2usize, 0usize),
            (2, EmitterModel::TavisCummings, 3, 1),
            (4, EmitterModel::TavisCummings, 3, 2),
            (1, EmitterModel::Harmonic, 3, 0),
            (2, EmitterModel::Harmonic, 4, 2),
            (4, EmitterModel::Harmonic, 4, 3),
        ] {
            let p = SystemParams::new(n, 1.0, 1.0, 0.01, model).unwrap();
            let blocks = build_blocks_m2(&p);
            assert_eq!(blocks[0].matrix.dim(), a_dim, "A dim at N={n} {model:?}");
            if b_dim == 0 {
                assert!(blocks.iter().all(|b| b.irrep != Irrep::B));
            } else {
                let b = blocks.iter().find(|b| b.irrep == Irrep::B).unwrap();
                assert_eq!(b.matrix.dim(), b_dim, "B dim at N={n} {model:?}");
            }
            let has_c = blocks.iter().any(|b| b.irrep == Irrep::C);
            assert_eq!(has_c, n >= 4);
        }
    }

    #[test]
    fn m2_tc_n2_b_block_trivial() {
        let p = SystemParams::new(2, 1.1, 1.0, 0.05, EmitterModel::TavisCummings).unwrap();
        let blocks = build_blocks_m2(&p);
        let b = blocks.iter().find(|b| b.irrep == Irrep::B).unwrap();
        assert_eq!(b.matrix.dim(), 1);
        assert!((b.matrix.get(0, 0) - 2.1).abs() < 1e-15);
    }

    #[test]
    fn c_block_energy_all_models() {
        for model in [
            EmitterModel::TavisCummings,
            EmitterModel::Harmonic,
            EmitterModel::Anharmonic {
                chi: 0.2,
                gamma: 0.05,
            },
        ] {
            let p = SystemParams::new(6, 1.02, 1.0, 0.01, model).unwrap();
            let blocks = build_blocks_m2(&p);
            let c = blocks.iter().find(|b| b.irrep == Irrep::C).unwrap();
            assert_eq!(c.matrix.get(0, 0), 2.0);
            assert_eq!(c.multiplicity, 9);
        }
    }

    #[test]
    fn harmonic_a_block_closed_form() {
        // HO, N=4, resonant, sqrt(N) g = 0.07: A eigenvalues {1.86, 2, 2, 2.14}
        let p = ho(4, 1.0, 0.07);
        let s = solve_manifold(&p, Manifold::Two).unwrap();
        let a: Vec<&SpectrumEntry> = s.entries.iter().filter(|e| e.irrep == Irrep::A).collect();
        let mut freqs: Vec<f64> = a.iter().map(|e| e.frequency).collect();
        freqs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (f, expect) in freqs.iter().zip([1.86, 2.0, 2.0, 2.14]) {
            assert!((f - expect).abs() < 1e-12, "{f} vs {expect}");
        }
    }

    #[test]
    fn model_identity_anh00_is_harmonic_bitwise() {
        let p_ho = ho(5, 1.04, 0.07);
        let p_anh = p_ho.with_model(EmitterModel::Anharmonic {
            chi: 0.0,
            gamma: 0.0,
        });
        for (bh, ba) in build_blocks_m2(&p_ho)
            .iter()
            .zip(build_blocks_m2(&p_anh).iter())
        {
            assert_eq!(bh.matrix, ba.matrix);
            assert_eq!(bh.basis, ba.basis);
        }
    }

    #[test]
    fn multiplicity_accounting() {
        for n in 1..=8u64 {
            for model in [EmitterModel::TavisCummings, EmitterModel::Harmonic] {
                let p = SystemParams::new(n, 1.03, 1.0, 0.02, model).unwrap();
                for m in [Manifold::One, Manifold::Two] {
                    let s = solve_manifold(&p, m).unwrap();
                    assert_eq!(
                        s.total_multiplicity(),
                        manifold_dim(&p, m),
                        "N={n} {model:?} manifold {m:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn labels_present_at_resonance() {
        let p = ho(6, 1.0, 0.07);
        let s = solve_manifold(&p, Manifold::Two).unwrap();
        for want in [
            StateLabel::TwoPlus,
            StateLabel::OnePlusOneMinus,
            StateLabel::TwoDarkA,
            StateLabel::TwoMinus,
            StateLabel::OnePlusOneB,
            StateLabel::TwoDarkB,
            StateLabel::OneMinusOneB,
            StateLabel::PairC,
        ] {
            assert!(s.find(want).is_some(), "missing {want:?}");
        }
        // degenerate pair resolved: 2_DA has zero photon content, 1+1- does not
        let da = s.find(StateLabel::TwoDarkA).unwrap();
        let pm = s.find(StateLabel::OnePlusOneMinus).unwrap();
        assert!(
            da.photon_content < 1e-10,
            "2_DA photon {}",
            da.photon_content
        );
        assert!(pm.photon_content > 0.9);
        assert!((da.frequency - 2.0).abs() < 1e-12);
    }

    #[test]
    fn photon_content_examples() {
        let p = ho(9, 1.0, 0.07);
        let s = solve_manifold(&p, Manifold::Two).unwrap();
        // |2+> at resonance: 2/4 + 1/2 = 1
        let tp = s.find(StateLabel::TwoPlus).unwrap();
        assert!((tp.photon_content - 1.0).abs() < 1e-10);
        let c = s.find(StateLabel::PairC).unwrap();
        assert_eq!(c.photon_content, 0.0);
    }

    #[test]
    fn eigenvector_orthonormality_within_blocks() {
        let p = SystemParams::new(
            7,
            0.94,
            1.0,
            0.013,
            EmitterModel::Anharmonic {
                chi: 0.1,
                gamma: morse_gamma(0.1).unwrap(),
            },
        )
        .unwrap();
        for block in build_blocks_m2(&p) {
            let entries = solve_block(&p, &block).unwrap();
            for i in 0..entries.len() {
                for j in 0..entries.len() {
                    let d = dot(&entries[i].eigenvector, &entries[j].eigenvector);
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((d - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn trace_preserved_per_block() {
        let p = SystemParams::new(5, 1.07, 1.0, 0.04, EmitterModel::Harmonic).unwrap();
        for block in build_blocks_m2(&p) {
            let eig = eigensolve_block(&block).unwrap();
            let sum: f64 = eig.values.iter().sum();
            assert!((sum - block.matrix.trace()).abs() < 1e-12 * block.matrix.max_abs().max(1.0));
        }
    }

    #[test]
    fn block_solver_contracts() {
        assert!(Manifold::from_u8(3).is_err());
        // reduced blocks never exceed dimension 4
        let big = Block {
            irrep: Irrep::A,
            basis: vec![BasisLabel::TwoPhoton; 5],
            matrix: crate::linalg::SymMatrix::zeros(5),
            multiplicity: 1,
        };
        assert!(matches!(eigensolve_block(&big), Err(Error::Contract(_))));
    }

    #[test]
    fn labeled_spectrum_serde_round_trip() {
        let p = ho(5, 1.02, 0.07);
        let s = solve_manifold(&p, Manifold::Two).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: LabeledSpectrum = serde_json::from_str(&text).unwrap();
        assert_eq!(back.entries.len(), s.entries.len());
        for (a, b) in s.entries.iter().zip(&back.entries) {
            assert_eq!(a.frequency.to_bits(), b.frequency.to_bits());
            assert_eq!(a.label, b.label);
            assert_eq!(a.multiplicity, b.multiplicity);
            for (x, y) in a.eigenvector.iter().zip(&b.eigenvector) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn tc_n2_dark_polariton_label_follows_detuning() {
        // the 1-dimensional TC B block at N = 2 holds 1+1_B for positive
        // detuning and 1-1_B for negative detuning
        for (w0, expect) in [
            (1.1, StateLabel::OnePlusOneB),
            (0.9, StateLabel::OneMinusOneB),
        ] {
            let p = SystemParams::new(2, w0, 1.0, 0.04, EmitterModel::TavisCummings).unwrap();
            let s = solve_manifold(&p, Manifold::Two).unwrap();
            let b: Vec<&SpectrumEntry> = s.entries.iter().filter(|e| e.irrep == Irrep::B).collect();
            assert_eq!(b.len(), 1);
            assert_eq!(b[0].label, expect, "at detuning {}", w0 - 1.0);
        }
    }

    #[test]
    fn tc_block_example_spectrum() {
        // N=4, resonant, g = 0.035: bipolariton split g sqrt(4N-2)
        let p = SystemParams::new(4, 1.0, 1.0, 0.035, EmitterModel::TavisCummings).unwrap();
        let blocks = build_blocks_m2(&p);
        let eig = eigensolve_block(&blocks[0]).unwrap();
        let split = 0.035 * (14.0_f64).sqrt();
        assert!((eig.values[0] - (2.0 - split)).abs() < 1e-12);
        assert!((eig.values[1] - 2.0).abs() < 1e-12);
        assert!((eig.values[2] - (2.0 + split)).abs() < 1e-12);
    }
}
