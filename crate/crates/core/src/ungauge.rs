//! The ungauging map Γ̃ and its inverse Γ.
//!
//! A setup is the four-space complex `C_Z → C_Q → C_X → C_R`: columns of
//! `d_z` are the Z symmetries being removed, rows of `d_x` the chosen
//! X generators (one final qubit each), rows of `d_r` the relations among
//! them (the emergent X symmetries).

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Space, UngaugeComplex};
use crate::error::{Error, Result};
use crate::gf2::{complement_basis, kernel_basis, rank, BitMatrix, BitVec, Solver};
use crate::hamiltonian::Hamiltonian;
use crate::pauli::{hadamard_all, multiply, symplectic_product, PauliGroup, PauliOp};

#[derive(Clone, Debug)]
pub struct UngaugeSetup {
    n_ini: usize,
    d_z: BitMatrix,
    d_x: BitMatrix,
    d_r: BitMatrix,
    preserved_x_ini: Vec<BitVec>,
    x_lookup: HashMap<BitVec, usize>,
    /// Solves `d_x^T · c = x`.
    x_solver: Solver,
    /// Solves `d_x · c = z`.
    z_solver: Solver,
}

fn check_len(n: usize, what: &str, vs: &[BitVec]) -> Result<()> {
    match vs.iter().position(|v| v.len() != n) {
        Some(i) => Err(Error::InvalidParameters(format!(
            "{what} {i} has length {}, expected {n}",
            vs[i].len()
        ))),
        None => Ok(()),
    }
}

/// Relations among `x_gens`: the `natural` ones first (validated), then
/// kernel vectors completing them to a basis of all relations.
pub fn complete_relations(n: usize, x_gens: &[BitVec], natural: &[BitVec]) -> Result<Vec<BitVec>> {
    let d_x = BitMatrix::from_rows(n, x_gens);
    let m = x_gens.len();
    check_len(m, "relation", natural)?;
    let dxt = d_x.transpose();
    if let Some(i) = natural.iter().position(|r| !dxt.mul_vec(r).is_zero()) {
        return Err(Error::InvalidParameters(format!("relation {i} does not multiply to identity")));
    }
    let kernel = kernel_basis(&dxt).rows();
    let mut out = natural.to_vec();
    out.extend(complement_basis(m, natural, &kernel));
    Ok(out)
}

/// Builds and validates a setup.
///
/// Missing `x_gens` default to a kernel basis of `d_z^T`; missing
/// `relations` to a kernel basis of `d_x^T`. Supplied sets are checked, never
/// replaced.
pub fn make_setup(
    n: usize,
    z_syms: &[BitVec],
    x_gens: Option<&[BitVec]>,
    relations: Option<&[BitVec]>,
    preserved: Option<&[BitVec]>,
) -> Result<UngaugeSetup> {
    check_len(n, "Z symmetry", z_syms)?;
    let d_z = BitMatrix::from_columns(n, z_syms);
    let x_gens: Vec<BitVec> = match x_gens {
        Some(g) => {
            check_len(n, "X generator", g)?;
            g.to_vec()
        }
        None => kernel_basis(&d_z.transpose()).rows(),
    };
    for (i, x) in x_gens.iter().enumerate() {
        if let Some(j) = z_syms.iter().position(|z| x.dot(z)) {
            return Err(Error::NonCommuting(format!("X generator {i} and Z symmetry {j}")));
        }
    }
    let d_x = BitMatrix::from_rows(n, &x_gens);
    let rank_z = rank(&d_z);
    let rank_x = rank(&d_x);
    if rank_x != n - rank_z {
        return Err(Error::Incomplete {
            rank: rank_x,
            expected: n - rank_z,
        });
    }
    let m = x_gens.len();
    let dxt = d_x.transpose();
    let rels: Vec<BitVec> = match relations {
        Some(r) => {
            check_len(m, "relation", r)?;
            if let Some(i) = r.iter().position(|v| !dxt.mul_vec(v).is_zero()) {
                return Err(Error::InvalidParameters(format!("relation {i} does not multiply to identity")));
            }
            r.to_vec()
        }
        None => kernel_basis(&dxt).rows(),
    };
    let d_r = BitMatrix::from_rows(m, &rels);
    let rank_r = rank(&d_r);
    if rank_r != m - rank_x {
        return Err(Error::IncompleteRelations {
            rank: rank_r,
            expected: m - rank_x,
        });
    }
    let preserved = preserved.unwrap_or(&[]).to_vec();
    check_len(n, "preserved symmetry", &preserved)?;
    let x_solver = Solver::new(&dxt);
    for (i, p) in preserved.iter().enumerate() {
        if !x_solver.in_image(p) {
            return Err(Error::NotSymmetric(format!("preserved symmetry {i}")));
        }
        if let Some(j) = z_syms.iter().position(|z| p.dot(z)) {
            return Err(Error::NonCommuting(format!("preserved symmetry {i} and Z symmetry {j}")));
        }
    }
    let mut x_lookup = HashMap::new();
    for (i, g) in x_gens.iter().enumerate() {
        x_lookup.entry(g.clone()).or_insert(i);
    }
    Ok(UngaugeSetup {
        n_ini: n,
        z_solver: Solver::new(&d_x),
        x_solver,
        d_z,
        d_x,
        d_r,
        preserved_x_ini: preserved,
        x_lookup,
    })
}

/// Ranks of the three maps of a setup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupRanks {
    pub n_ini: usize,
    pub n_fin: usize,
    pub z_symmetries: usize,
    pub relations: usize,
    pub rank_d_z: usize,
    pub rank_d_x: usize,
    pub rank_d_r: usize,
}

impl UngaugeSetup {
    pub fn n_ini(&self) -> usize {
        self.n_ini
    }

    /// One final qubit per chosen X generator.
    pub fn n_fin(&self) -> usize {
        self.d_x.nrows()
    }

    pub fn d_z(&self) -> &BitMatrix {
        &self.d_z
    }

    pub fn d_x(&self) -> &BitMatrix {
        &self.d_x
    }

    pub fn d_r(&self) -> &BitMatrix {
        &self.d_r
    }

    pub fn z_symmetries(&self) -> Vec<BitVec> {
        self.d_z.columns()
    }

    pub fn x_generators(&self) -> Vec<BitVec> {
        self.d_x.rows()
    }

    pub fn relations(&self) -> Vec<BitVec> {
        self.d_r.rows()
    }

    pub fn preserved_x_ini(&self) -> &[BitVec] {
        &self.preserved_x_ini
    }

    pub fn ranks(&self) -> SetupRanks {
        SetupRanks {
            n_ini: self.n_ini,
            n_fin: self.n_fin(),
            z_symmetries: self.d_z.ncols(),
            relations: self.d_r.nrows(),
            rank_d_z: rank(&self.d_z),
            rank_d_x: rank(&self.d_x),
            rank_d_r: rank(&self.d_r),
        }
    }

    pub fn complex(&self) -> UngaugeComplex {
        UngaugeComplex {
            c_z: Space::indexed("C_Z", "z", self.d_z.ncols()),
            c_q: Space::indexed("C_Q", "q", self.n_ini),
            c_x: Space::indexed("C_X", "x", self.n_fin()),
            c_r: Space::indexed("C_R", "r", self.d_r.nrows()),
            d_z: self.d_z.clone(),
            d_x: self.d_x.clone(),
            d_r: self.d_r.clone(),
        }
    }

    /// True iff `d_x·d_z = 0` and `d_r·d_x = 0`.
    pub fn is_valid_complex(&self) -> bool {
        self.d_x.mul(&self.d_z).is_zero() && self.d_r.mul(&self.d_x).is_zero()
    }

    /// True iff the X part lies in the span of the generators.
    pub fn is_symmetric(&self, p: &PauliOp) -> bool {
        p.n() == self.n_ini && self.x_solver.in_image(p.x())
    }

    fn x_preimage(&self, x: &BitVec) -> Option<BitVec> {
        if let Some(&i) = self.x_lookup.get(x) {
            return Some(BitVec::unit(self.n_fin(), i));
        }
        self.x_solver.solve(x)
    }
}

fn check_hermitian(p: &PauliOp) -> Result<()> {
    if p.is_hermitian() {
        Ok(())
    } else {
        Err(Error::InvalidPauli(format!("{p} is not Hermitian")))
    }
}

/// Applies Γ̃. An X part equal to a chosen generator maps to the single X on
/// that generator's qubit; any other X part uses the canonical solve. The
/// Z part maps to `Z(d_x·z)`. The phase in `i^k X(x) Z(z)` form is kept.
pub fn ungauge_pauli(p: &PauliOp, s: &UngaugeSetup) -> Result<PauliOp> {
    if p.n() != s.n_ini {
        return Err(Error::InvalidPauli(format!(
            "operator acts on {} qubits, setup has {}",
            p.n(),
            s.n_ini
        )));
    }
    check_hermitian(p)?;
    let cx = s
        .x_preimage(p.x())
        .ok_or_else(|| Error::NotSymmetric(p.sparse_label()))?;
    Ok(PauliOp::from_parts(cx, s.d_x.mul_vec(p.z()), p.phase()))
}

/// Γ̃ with the X preimage restricted to the generators listed in `allowed`.
pub fn ungauge_pauli_within(p: &PauliOp, s: &UngaugeSetup, allowed: &[usize]) -> Result<PauliOp> {
    if p.n() != s.n_ini {
        return Err(Error::InvalidPauli(format!(
            "operator acts on {} qubits, setup has {}",
            p.n(),
            s.n_ini
        )));
    }
    check_hermitian(p)?;
    let sub = BitMatrix::from_columns(s.n_ini, &allowed.iter().map(|&i| s.d_x.row(i)).collect::<Vec<_>>());
    let c = Solver::new(&sub)
        .solve(p.x())
        .ok_or_else(|| Error::NotSymmetric(format!("{} within the allowed generators", p.sparse_label())))?;
    let cx = BitVec::from_indices(s.n_fin(), c.iter_ones().map(|j| allowed[j]));
    Ok(PauliOp::from_parts(cx, s.d_x.mul_vec(p.z()), p.phase()))
}

/// Termwise Γ̃ with coupling labels kept. Annihilated terms stay as identities.
pub fn ungauge_hamiltonian(h: &Hamiltonian, s: &UngaugeSetup) -> Result<Hamiltonian> {
    let mut out = Hamiltonian::new(s.n_fin());
    for (index, t) in h.terms().iter().enumerate() {
        let img = ungauge_pauli(&t.op, s).map_err(|e| Error::Term {
            index,
            source: Box::new(e),
        })?;
        out.push(img, &t.coupling);
    }
    Ok(out)
}

/// `X(r)` for every relation row.
pub fn emergent_symmetries(s: &UngaugeSetup) -> Vec<PauliOp> {
    s.d_r.rows().into_iter().map(PauliOp::x_type).collect()
}

/// Images of the preserved initial X symmetries.
pub fn preserved_symmetries(s: &UngaugeSetup) -> Result<Vec<PauliOp>> {
    s.preserved_x_ini
        .iter()
        .map(|p| ungauge_pauli(&PauliOp::x_type(p.clone()), s))
        .collect()
}

/// `n_ini − rank d_z = n_fin − rank d_r`.
pub fn dim_check(s: &UngaugeSetup) -> bool {
    s.n_ini - rank(&s.d_z) == s.n_fin() - rank(&s.d_r)
}

/// Applies Γ: `X(c) ↦ X(d_x^T c)` and `Z(d_x c) ↦ Z(c)`.
///
/// The Z preimage is the canonical solve, then lightened greedily by
/// multiplying with Z symmetries while that lowers its weight.
pub fn gauge_pauli(p: &PauliOp, s: &UngaugeSetup) -> Result<PauliOp> {
    if p.n() != s.n_fin() {
        return Err(Error::InvalidPauli(format!(
            "operator acts on {} qubits, setup has {} final qubits",
            p.n(),
            s.n_fin()
        )));
    }
    check_hermitian(p)?;
    let mut c = s
        .z_solver
        .solve(p.z())
        .ok_or_else(|| Error::NotSymmetric(format!("{} anticommutes with an emergent symmetry", p.sparse_label())))?;
    let syms = s.d_z.columns();
    loop {
        let mut improved = false;
        for z in &syms {
            let t = c.xor(z);
            if t.weight() < c.weight() {
                c = t;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let x = s.d_x.transpose().mul_vec(p.x());
    Ok(PauliOp::from_parts(x, c, p.phase()))
}

/// Termwise Γ.
pub fn gauge_hamiltonian(h: &Hamiltonian, s: &UngaugeSetup) -> Result<Hamiltonian> {
    let mut out = Hamiltonian::new(s.n_ini);
    for (index, t) in h.terms().iter().enumerate() {
        let img = gauge_pauli(&t.op, s).map_err(|e| Error::Term {
            index,
            source: Box::new(e),
        })?;
        out.push(img, &t.coupling);
    }
    Ok(out)
}

/// Outcome of `Γ ∘ Γ̃` on a Hamiltonian.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    /// Terms returned unchanged.
    pub exact_terms: usize,
    /// Terms returned up to a product of Z symmetries (sign included).
    pub equivalent_terms: usize,
    pub total: usize,
}

impl RoundTrip {
    pub fn is_exact(&self) -> bool {
        self.exact_terms == self.total
    }

    pub fn is_equivalent(&self) -> bool {
        self.equivalent_terms == self.total
    }
}

pub fn round_trip(h: &Hamiltonian, s: &UngaugeSetup) -> Result<RoundTrip> {
    let back = gauge_hamiltonian(&ungauge_hamiltonian(h, s)?, s)?;
    let zs: Vec<PauliOp> = s.z_symmetries().into_iter().map(PauliOp::z_type).collect();
    let group = PauliGroup::new(s.n_ini, &zs);
    let mut exact_terms = 0;
    let mut equivalent_terms = 0;
    for (a, b) in h.ops().zip(back.ops()) {
        if a == b {
            exact_terms += 1;
        }
        if group.contains(&multiply(a, b), true) {
            equivalent_terms += 1;
        }
    }
    Ok(RoundTrip {
        exact_terms,
        equivalent_terms,
        total: h.len(),
    })
}

/// Draws `pairs` pairs of random symmetric operators and counts those whose
/// commutation is unchanged by Γ̃.
pub fn commutation_sample<R: Rng + ?Sized>(s: &UngaugeSetup, pairs: usize, rng: &mut R) -> Result<usize> {
    let mut kept = 0;
    for _ in 0..pairs {
        let p = random_symmetric(s, rng);
        let q = random_symmetric(s, rng);
        let before = symplectic_product(&p, &q);
        let after = symplectic_product(&ungauge_pauli(&p, s)?, &ungauge_pauli(&q, s)?);
        kept += (before == after) as usize;
    }
    Ok(kept)
}

/// A random Hermitian symmetric operator: a random product of the X
/// generators, arbitrary Z content and a random sign.
pub fn random_symmetric<R: Rng + ?Sized>(s: &UngaugeSetup, rng: &mut R) -> PauliOp {
    let mut x = BitVec::zeros(s.n_ini);
    for r in 0..s.d_x.nrows() {
        if rng.gen_bool(0.5) {
            x.xor_assign(&s.d_x.row(r));
        }
    }
    let z = BitVec::from_bools(&(0..s.n_ini).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
    let p = PauliOp::hermitian(x, z);
    if rng.gen_bool(0.5) {
        p.neg()
    } else {
        p
    }
}

/// Gauging the entire final symmetry group of `h_fin`, done as Γ̃ on the
/// Hadamard-conjugated model: the Z symmetries are the (conjugated) final
/// symmetries and the X generators are the supports of the Z-type terms.
pub fn full_gauge_setup(h_fin: &Hamiltonian, symmetries: &[BitVec]) -> Result<UngaugeSetup> {
    let mut gens: Vec<BitVec> = Vec::new();
    for t in h_fin.terms() {
        if t.op.is_z_type() && !t.op.is_identity() && !gens.contains(t.op.z()) {
            gens.push(t.op.z().clone());
        }
    }
    make_setup(h_fin.n(), symmetries, Some(&gens), None, None)
}

/// Outcome of gauging all final symmetries of a model.
#[derive(Clone, Debug, Serialize)]
pub struct FullGaugeReport {
    /// `H̄ · Γ̃(H̄ h_fin H̄) · H̄`, relabeled onto the qubits of `h_fin`.
    pub gauged: Hamiltonian,
    /// `H̄ h_fin H̄`.
    pub expected: Hamiltonian,
    pub matches: bool,
}

/// Gauges every symmetry of `h_fin` with `s_full` (see [`full_gauge_setup`])
/// and compares the result with the Hadamard conjugate of `h_fin`, after
/// sending final qubit `i` to qubit `relabel[i]`. Terms are compared as an
/// operator multiset; coupling labels are exchanged by the duality.
pub fn full_gauge_comparison(h_fin: &Hamiltonian, s_full: &UngaugeSetup, relabel: &[usize]) -> Result<FullGaugeReport> {
    let conj = h_fin.map_ops(h_fin.n(), hadamard_all);
    let image = ungauge_hamiltonian(&conj, s_full)?;
    if relabel.len() != image.n() {
        return Err(Error::InvalidParameters(format!(
            "relabeling has {} entries, gauged model has {} qubits",
            relabel.len(),
            image.n()
        )));
    }
    let gauged = image.map_ops(h_fin.n(), |p| hadamard_all(p).remap(relabel, h_fin.n()));
    let gauged = gauged.filter(|t| !t.op.is_identity());
    let expected = conj.filter(|t| !t.op.is_identity());
    let matches = gauged.same_operators(&expected);
    Ok(FullGaugeReport {
        gauged,
        expected,
        matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MappedTerm {
    pub coupling: String,
    pub before: String,
    pub after: String,
}

/// Machine-readable summary of one ungauging run.
#[derive(Clone, Debug, Serialize)]
pub struct UngaugeReport {
    pub setup_ranks: SetupRanks,
    pub dim_check: bool,
    /// Number of Z-symmetry generators mapped to the identity, and whether that is all of them.
    pub annihilated_generators: usize,
    pub all_annihilated: bool,
    pub emergent: Vec<String>,
    pub preserved: Vec<String>,
    pub mapped_terms: Vec<MappedTerm>,
}

pub fn report(h: &Hamiltonian, s: &UngaugeSetup) -> Result<UngaugeReport> {
    let image = ungauge_hamiltonian(h, s)?;
    let mut annihilated = 0;
    for z in s.z_symmetries() {
        if ungauge_pauli(&PauliOp::z_type(z), s)?.is_identity() {
            annihilated += 1;
        }
    }
    Ok(UngaugeReport {
        setup_ranks: s.ranks(),
        dim_check: dim_check(s),
        annihilated_generators: annihilated,
        all_annihilated: annihilated == s.d_z.ncols(),
        emergent: emergent_symmetries(s).iter().map(PauliOp::sparse_label).collect(),
        preserved: preserved_symmetries(s)?.iter().map(PauliOp::sparse_label).collect(),
        mapped_terms: h
            .terms()
            .iter()
            .zip(image.terms())
            .map(|(a, b)| MappedTerm {
                coupling: a.coupling.clone(),
                before: a.op.sparse_label(),
                after: b.op.sparse_label(),
            })
            .collect(),
    })
}
