//! Dual codes, transversal CZ, domain walls and the SPT construction.

use serde::Serialize;

use crate::analysis::commuting_check;
use crate::complex::css_logical_reps;
use crate::error::{Error, Result};
use crate::gf2::{independent_subset, BitVec};
use crate::hamiltonian::Hamiltonian;
use crate::lattice::{stabilizer_hamiltonian, CssSubsystemCode, FractalGeometry, LatticeCode};
use crate::pauli::{conjugate_by_circuit, CliffordCircuit, Gate, PauliGroup, PauliOp};
use crate::ungauge::{make_setup, ungauge_pauli, UngaugeSetup};

/// X and Z generators exchanged (transversal Hadamard).
pub fn dual_code(c: &CssSubsystemCode) -> CssSubsystemCode {
    c.dual()
}

/// `C ⊗ C̃` on `2n` qubits: qubit `i` of `C` is paired with qubit `n + i` of the dual.
///
/// X stabilizers are those of `C` followed by those of `C̃`; same for Z.
pub fn tensor_with_dual(c: &CssSubsystemCode) -> Result<CssSubsystemCode> {
    if !c.is_stabilizer_code() {
        return Err(Error::InvalidParameters(format!("{} is not a stabilizer code", c.name)));
    }
    let d = dual_code(c);
    let n = c.n;
    let zero = BitVec::zeros(n);
    let left = |v: &BitVec| v.concat(&zero);
    let right = |v: &BitVec| zero.concat(v);
    let sx: Vec<BitVec> = c.stabilizer_x.iter().map(left).chain(d.stabilizer_x.iter().map(right)).collect();
    let sz: Vec<BitVec> = c.stabilizer_z.iter().map(left).chain(d.stabilizer_z.iter().map(right)).collect();
    let labels = c
        .qubit_labels
        .iter()
        .cloned()
        .chain(c.qubit_labels.iter().map(|l| format!("~{l}")))
        .collect();
    Ok(CssSubsystemCode::stabilizer(&format!("{}⊗dual", c.name), 2 * n, sx, sz)?
        .with_labels(labels)
        .with_meta("pairs", n))
}

/// `CZ(i, n + i)` for each listed `i`, on `2n` qubits.
pub fn transversal_cz(n: usize, positions: impl IntoIterator<Item = usize>) -> CliffordCircuit {
    let gates = positions.into_iter().map(|i| Gate::CZ(i, n + i)).collect();
    CliffordCircuit::from_gates(2 * n, gates).expect("paired qubits are in range")
}

/// Conjugated stabilizer generators and which of them leave the group.
#[derive(Clone, Debug, Serialize)]
pub struct CzCertificate {
    pub images: Vec<String>,
    /// Generators (X ones first, then Z) whose image is not a signed stabilizer.
    pub failures: Vec<usize>,
}

impl CzCertificate {
    pub fn is_logical(&self) -> bool {
        self.failures.is_empty()
    }
}

fn pairs_of(t: &CssSubsystemCode) -> Result<usize> {
    if !t.n.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("{} qubits cannot be paired", t.n)));
    }
    Ok(t.n / 2)
}

/// Conjugates every stabilizer generator of a paired code by the full
/// transversal CZ and tests signed membership in the stabilizer group.
pub fn cz_certificate(t: &CssSubsystemCode) -> Result<CzCertificate> {
    let n = pairs_of(t)?;
    let cz = transversal_cz(n, 0..n);
    let gens = t.stabilizer_ops();
    let group = PauliGroup::new(t.n, &gens);
    let images: Vec<PauliOp> = gens.iter().map(|g| conjugate_by_circuit(g, &cz)).collect();
    let failures = images
        .iter()
        .enumerate()
        .filter(|(_, p)| !group.contains(p, true))
        .map(|(i, _)| i)
        .collect();
    Ok(CzCertificate {
        images: images.iter().map(PauliOp::sparse_label).collect(),
        failures,
    })
}

pub fn transversal_cz_is_logical(t: &CssSubsystemCode) -> Result<bool> {
    Ok(cz_certificate(t)?.is_logical())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RegionShape {
    /// Full-depth slab between two parallel walls, given by its layer range.
    Slab { lo: i64, hi: i64 },
    Custom,
}

/// A set of paired positions `i` (qubits `i` and `n + i` together).
#[derive(Clone, Debug, Serialize)]
pub struct Region {
    pub n: usize,
    pub positions: Vec<usize>,
    pub shape: RegionShape,
}

impl Region {
    pub fn new(n: usize, positions: Vec<usize>, shape: RegionShape) -> Result<Self> {
        if let Some(&p) = positions.iter().find(|&&p| p >= n) {
            return Err(Error::InvalidParameters(format!("position {p} out of range for {n} pairs")));
        }
        let mut positions = positions;
        positions.sort_unstable();
        positions.dedup();
        Ok(Region { n, positions, shape })
    }

    /// A region from a subset of the `2n` tensor qubits; both members of a pair must be in or out together.
    pub fn from_qubits(n: usize, qubits: &BitVec) -> Result<Self> {
        if qubits.len() != 2 * n {
            return Err(Error::InvalidParameters(format!(
                "region has {} qubits, expected {}",
                qubits.len(),
                2 * n
            )));
        }
        if let Some(i) = (0..n).find(|&i| qubits.get(i) != qubits.get(n + i)) {
            return Err(Error::InvalidParameters(format!("pair {i} is split by the region")));
        }
        Region::new(n, (0..n).filter(|&i| qubits.get(i)).collect(), RegionShape::Custom)
    }

    /// Indicator over the `2n` tensor qubits.
    pub fn qubits(&self) -> BitVec {
        BitVec::from_indices(
            2 * self.n,
            self.positions.iter().flat_map(|&i| [i, self.n + i]),
        )
    }
}

/// Edges of a 2D toric code whose doubled y coordinate lies in `[2 lo, 2 hi]`:
/// horizontal edges of rows `lo..=hi` and vertical edges between them.
pub fn toric_slab(built: &LatticeCode, lo: i64, hi: i64) -> Result<Region> {
    let lat = built
        .lattice
        .as_ref()
        .ok_or_else(|| Error::InvalidParameters("toric slab needs a lattice".into()))?;
    if lat.dim() != 2 || built.qubit_dim != Some(1) {
        return Err(Error::InvalidParameters("toric slab needs a 2D code with qubits on edges".into()));
    }
    let period = 2 * lat.period().ok_or_else(|| Error::InvalidParameters("toric slab needs a torus".into()))?[1];
    if lo > hi || lo < 0 || 2 * hi >= period {
        return Err(Error::InvalidParameters(format!("slab {lo}:{hi} does not fit the lattice")));
    }
    let positions = (0..lat.count(1))
        .filter(|&e| {
            let pts = &lat.cell(1, e).points;
            let y2 = (pts[0][1] + pts[1][1]).rem_euclid(period);
            (2 * lo..=2 * hi).contains(&y2)
        })
        .collect();
    Region::new(lat.count(1), positions, RegionShape::Slab { lo, hi })
}

/// Both qubits of every fractal-code site with `lo <= z <= hi`.
pub fn fractal_slab(g: &FractalGeometry, lo: i64, hi: i64) -> Result<Region> {
    if lo > hi || lo < 0 || hi >= g.l as i64 {
        return Err(Error::InvalidParameters(format!("slab {lo}:{hi} does not fit L = {}", g.l)));
    }
    let positions = (0..g.sites())
        .filter(|&v| (lo..=hi).contains(&g.coords(v).2))
        .flat_map(|v| [FractalGeometry::qubit(v, 0), FractalGeometry::qubit(v, 1)])
        .collect();
    Region::new(2 * g.sites(), positions, RegionShape::Slab { lo, hi })
}

#[derive(Clone, Debug, Serialize)]
pub struct WallDecomposition {
    /// Terms inside R after the replacement step.
    pub h_r: Hamiltonian,
    pub h_wall: Hamiltonian,
    pub h_rc: Hamiltonian,
    /// Decorated interior terms replaced by their undecorated originals.
    pub replaced: usize,
    /// The replaced Hamiltonian generates the same signed stabilizer group
    /// as the conjugated one, so the ground space is unchanged.
    pub same_group: bool,
}

impl WallDecomposition {
    pub fn total(&self) -> Hamiltonian {
        let mut h = self.h_r.clone();
        h.extend(&self.h_wall);
        h.extend(&self.h_rc);
        h
    }
}

/// Conjugates the stabilizer Hamiltonian of the paired code `t` by CZ on
/// `r`, sorts terms by support and undoes the decoration of interior terms.
pub fn domain_wall(t: &CssSubsystemCode, r: &Region) -> Result<WallDecomposition> {
    let n = pairs_of(t)?;
    if r.n != n {
        return Err(Error::InvalidParameters(format!("region has {} pairs, code has {n}", r.n)));
    }
    let inside = r.qubits();
    let cz = transversal_cz(n, r.positions.iter().copied());
    let h = stabilizer_hamiltonian(t);
    let mut h_r = Hamiltonian::new(t.n);
    let mut h_wall = Hamiltonian::new(t.n);
    let mut h_rc = Hamiltonian::new(t.n);
    let mut conjugated = Vec::with_capacity(h.len());
    let mut replaced = 0;
    for term in h.terms() {
        let c = conjugate_by_circuit(&term.op, &cz);
        conjugated.push(c.clone());
        let sup = c.support();
        let n_in = sup.iter().filter(|&&q| inside.get(q)).count();
        if n_in == sup.len() {
            if c != term.op {
                replaced += 1;
            }
            h_r.push(term.op.clone(), &term.coupling);
        } else if n_in == 0 {
            h_rc.push(c, &term.coupling);
        } else {
            h_wall.push(c, &term.coupling);
        }
    }
    let mut d = WallDecomposition {
        h_r,
        h_wall,
        h_rc,
        replaced,
        same_group: false,
    };
    let before = PauliGroup::new(t.n, &conjugated);
    let after = PauliGroup::new(t.n, &d.total().ops_vec());
    d.same_group = before.same_group(&after, true);
    Ok(d)
}

/// Reads `N(v)` from terms of the form `±X_v Z(N(v))`. When `N` is
/// symmetric the CZ gates on its edges turn every term into `±X_v`.
pub fn find_cz_disentangler(h: &Hamiltonian) -> Result<Option<CliffordCircuit>> {
    let n = h.n();
    let mut nbrs: Vec<Option<BitVec>> = vec![None; n];
    for (i, t) in h.terms().iter().enumerate() {
        let xs = t.op.x().support();
        if xs.len() != 1 || t.op.z().get(xs[0]) {
            return Err(Error::Term {
                index: i,
                source: Box::new(Error::InvalidPauli(format!(
                    "{} is not a single X decorated by Z",
                    t.op.sparse_label()
                ))),
            });
        }
        let v = xs[0];
        match &nbrs[v] {
            Some(prev) if prev != t.op.z() => return Ok(None),
            _ => nbrs[v] = Some(t.op.z().clone()),
        }
    }
    let mut c = CliffordCircuit::new(n);
    for v in 0..n {
        let Some(nv) = &nbrs[v] else { continue };
        for u in nv.iter_ones() {
            let back = nbrs[u].as_ref().is_some_and(|nu| nu.get(v));
            if !back {
                return Ok(None);
            }
            if v < u {
                c.cz(v, u);
            }
        }
    }
    Ok(Some(c))
}

/// Everything produced by the SPT construction.
#[derive(Clone, Debug)]
pub struct SptResult {
    pub tensor: CssSubsystemCode,
    pub certificate: CzCertificate,
    pub wall: WallDecomposition,
    pub setup: UngaugeSetup,
    /// Γ̃ of the whole domain-wall Hamiltonian, in the order `h_r, h_wall, h_rc`.
    pub image: Hamiltonian,
    /// Non-identity images of the wall terms.
    pub h_spt: Hamiltonian,
    /// Every non-identity image of an interior or exterior term is a single X.
    pub bulk_trivial: bool,
    /// Final qubits touched by `h_spt`.
    pub wall_qubits: Vec<usize>,
    /// Emergent symmetries restricted to the wall qubits (independent, nonzero).
    pub symmetries: Vec<PauliOp>,
    pub disentangler: Option<CliffordCircuit>,
    pub warnings: Vec<String>,
}

/// Dual code, tensor product, CZ check, domain wall on `r`, then Γ̃ of the
/// tensor code's Z symmetries (stabilizers and logicals).
pub fn spt_pipeline(c: &CssSubsystemCode, r: &Region) -> Result<SptResult> {
    let tensor = tensor_with_dual(c)?;
    let certificate = cz_certificate(&tensor)?;
    if !certificate.is_logical() {
        return Err(Error::NotLogical(format!(
            "generators {:?} leave the stabilizer group",
            certificate.failures
        )));
    }
    let mut warnings = Vec::new();
    if r.shape == RegionShape::Custom {
        warnings.push("region is not a slab; wall properties are not guaranteed".to_string());
    }
    let wall = domain_wall(&tensor, r)?;
    let (z_reps, _) = css_logical_reps(&tensor.d_z(), &tensor.d_x());
    let z_syms: Vec<BitVec> = tensor.stabilizer_z.iter().cloned().chain(z_reps).collect();
    let setup = make_setup(tensor.n, &z_syms, Some(&tensor.stabilizer_x), None, None)?;
    let mut image = Hamiltonian::new(setup.n_fin());
    let mut h_spt = Hamiltonian::new(setup.n_fin());
    let mut bulk_trivial = true;
    for (part, is_wall) in [(&wall.h_r, false), (&wall.h_wall, true), (&wall.h_rc, false)] {
        for t in part.terms() {
            let img = ungauge_pauli(&t.op, &setup)?;
            if is_wall {
                if !img.is_identity() {
                    h_spt.push(img.clone(), &t.coupling);
                }
            } else if !img.is_identity() && !(img.is_x_type() && img.weight() == 1) {
                bulk_trivial = false;
            }
            image.push(img, &t.coupling);
        }
    }
    let mut wall_qubits: Vec<usize> = h_spt.ops().flat_map(PauliOp::support).collect();
    wall_qubits.sort_unstable();
    wall_qubits.dedup();
    let mask = BitVec::from_indices(setup.n_fin(), wall_qubits.iter().copied());
    let restricted: Vec<BitVec> = setup
        .relations()
        .iter()
        .map(|r| r.and(&mask))
        .filter(|r| !r.is_zero())
        .collect();
    let symmetries = independent_subset(setup.n_fin(), &restricted)
        .into_iter()
        .map(|i| PauliOp::x_type(restricted[i].clone()))
        .collect();
    let disentangler = find_cz_disentangler(&h_spt)?;
    Ok(SptResult {
        tensor,
        certificate,
        wall,
        setup,
        image,
        h_spt,
        bulk_trivial,
        wall_qubits,
        symmetries,
        disentangler,
        warnings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SptReport {
    pub cz_logical: bool,
    pub replaced_terms: usize,
    pub replacement_same_group: bool,
    pub wall_terms: Vec<String>,
    pub spt_terms: Vec<String>,
    pub spt_commuting: bool,
    pub bulk_trivial: bool,
    pub symmetries: Vec<String>,
    pub symmetries_commute: bool,
    pub disentangler: Option<Vec<(usize, usize)>>,
    pub disentangles: Option<bool>,
    pub warnings: Vec<String>,
}

pub fn report(r: &SptResult) -> SptReport {
    let commute_all = r
        .symmetries
        .iter()
        .all(|s| r.h_spt.ops().all(|t| t.commutes_with(s)));
    SptReport {
        cz_logical: r.certificate.is_logical(),
        replaced_terms: r.wall.replaced,
        replacement_same_group: r.wall.same_group,
        wall_terms: r.wall.h_wall.ops().map(PauliOp::sparse_label).collect(),
        spt_terms: r.h_spt.ops().map(PauliOp::sparse_label).collect(),
        spt_commuting: commuting_check(&r.h_spt),
        bulk_trivial: r.bulk_trivial,
        symmetries: r.symmetries.iter().map(PauliOp::sparse_label).collect(),
        symmetries_commute: commute_all,
        disentangler: r.disentangler.as_ref().map(|c| {
            c.gates()
                .iter()
                .filter_map(|g| match g {
                    Gate::CZ(a, b) => Some((*a, *b)),
                    Gate::H(_) => None,
                })
                .collect()
        }),
        disentangles: r.disentangler.as_ref().map(|c| {
            r.h_spt
                .ops()
                .all(|t| {
                    let p = conjugate_by_circuit(t, c);
                    p.is_x_type() && p.weight() == 1 && p.is_hermitian()
                })
        }),
        warnings: r.warnings.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cluster_ring_disentangles() {
        let n = 6;
        let mut h = Hamiltonian::new(n);
        for v in 0..n {
            let mut z = BitVec::zeros(n);
            z.set((v + 1) % n, true);
            z.set((v + n - 1) % n, true);
            h.push(PauliOp::from_parts(BitVec::unit(n, v), z, 0), "J");
        }
        let c = find_cz_disentangler(&h).unwrap().expect("symmetric neighborhoods");
        assert_eq!(c.len(), n);
        for t in h.ops() {
            let p = conjugate_by_circuit(t, &c);
            assert!(p.is_x_type() && p.weight() == 1 && p.sign() == Some(1));
        }
    }

    #[test]
    fn asymmetric_neighborhood_rejected() {
        let mut h = Hamiltonian::new(2);
        h.push(PauliOp::from_parts(BitVec::unit(2, 0), BitVec::unit(2, 1), 0), "J");
        h.push(PauliOp::x_on(2, [1]), "J");
        assert!(find_cz_disentangler(&h).unwrap().is_none());
    }

    #[test]
    fn y_term_is_a_shape_error() {
        let h = Hamiltonian::from_ops(1, "J", [PauliOp::y_on(1, [0])]);
        assert!(find_cz_disentangler(&h).is_err());
    }

    #[test]
    fn split_pair_rejected() {
        let q = BitVec::from_indices(4, [0]);
        assert!(Region::from_qubits(2, &q).is_err());
        let q = BitVec::from_indices(4, [0, 2]);
        assert_eq!(Region::from_qubits(2, &q).unwrap().positions, vec![0]);
    }
}
