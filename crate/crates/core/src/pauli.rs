//! Phased Pauli operators in symplectic form and Clifford conjugation by
//! Hadamard and CZ gates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gf2::{BitMatrix, BitVec, Solver, SpanBasis};

/// `i^phase · X^x · Z^z`, with all X factors written to the left of the Z factors.
///
/// A Y on qubit `q` is stored as `x_q = z_q = 1` plus one unit of phase,
/// since `Y = i·X·Z`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOp {
    n: usize,
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp {
            n,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// `i^phase · X^x · Z^z` exactly as given.
    pub fn from_parts(x: BitVec, z: BitVec, phase: u8) -> Self {
        assert_eq!(x.len(), z.len(), "x and z supports differ in length");
        PauliOp {
            n: x.len(),
            x,
            z,
            phase: phase % 4,
        }
    }

    /// The Hermitian operator with +1 sign whose Pauli string has the given
    /// supports (Y wherever both bits are set).
    pub fn hermitian(x: BitVec, z: BitVec) -> Self {
        let w = x.overlap(&z);
        PauliOp::from_parts(x, z, (w % 4) as u8)
    }

    pub fn x_type(x: BitVec) -> Self {
        let n = x.len();
        PauliOp::from_parts(x, BitVec::zeros(n), 0)
    }

    pub fn z_type(z: BitVec) -> Self {
        let n = z.len();
        PauliOp::from_parts(BitVec::zeros(n), z, 0)
    }

    pub fn x_on<I: IntoIterator<Item = usize>>(n: usize, qubits: I) -> Self {
        PauliOp::x_type(BitVec::from_indices(n, qubits))
    }

    pub fn z_on<I: IntoIterator<Item = usize>>(n: usize, qubits: I) -> Self {
        PauliOp::z_type(BitVec::from_indices(n, qubits))
    }

    /// Y-type operator `±Y(c)` normalized to sign +1.
    pub fn y_on<I: IntoIterator<Item = usize>>(n: usize, qubits: I) -> Self {
        let s = BitVec::from_indices(n, qubits);
        PauliOp::hermitian(s.clone(), s)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// Number of qubits acted on nontrivially.
    pub fn weight(&self) -> usize {
        self.x.weight() + self.z.weight() - self.x.overlap(&self.z)
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.x.iter_ones().chain(self.z.iter_ones()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// True when the Pauli string is trivial, whatever the scalar.
    pub fn is_scalar(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// True for `+I` only.
    pub fn is_identity(&self) -> bool {
        self.is_scalar() && self.phase == 0
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    /// Phase relative to the plain Pauli string (0 for `+`, 1 for `+i`, ...).
    pub fn string_phase(&self) -> u8 {
        ((self.phase as usize + 4 - self.x.overlap(&self.z) % 4) % 4) as u8
    }

    pub fn is_hermitian(&self) -> bool {
        self.string_phase().is_multiple_of(2)
    }

    /// `Some(±1)` for Hermitian operators, `None` otherwise.
    pub fn sign(&self) -> Option<i8> {
        match self.string_phase() {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn neg(&self) -> PauliOp {
        self.times_i_pow(2)
    }

    pub fn times_i_pow(&self, k: u8) -> PauliOp {
        let mut out = self.clone();
        out.phase = (out.phase + k) % 4;
        out
    }

    /// Same Pauli string with sign +1.
    pub fn unsigned(&self) -> PauliOp {
        PauliOp::hermitian(self.x.clone(), self.z.clone())
    }

    /// The concatenated symplectic row `(x | z)`.
    pub fn symplectic_row(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic_row(row: &BitVec, phase: u8) -> PauliOp {
        assert!(row.len().is_multiple_of(2), "symplectic row must have even length");
        let n = row.len() / 2;
        PauliOp::from_parts(row.slice(0, n), row.slice(n, n), phase)
    }

    pub fn commutes_with(&self, other: &PauliOp) -> bool {
        !symplectic_product(self, other)
    }

    /// Tensor product `self ⊗ other` on `n + m` qubits.
    pub fn tensor(&self, other: &PauliOp) -> PauliOp {
        PauliOp::from_parts(
            self.x.concat(&other.x),
            self.z.concat(&other.z),
            (self.phase + other.phase) % 4,
        )
    }

    /// Copy of the qubits in `start..start + len`, keeping the string phase.
    pub fn restrict(&self, start: usize, len: usize) -> PauliOp {
        let x = self.x.slice(start, len);
        let z = self.z.slice(start, len);
        let w = x.overlap(&z);
        let sp = self.string_phase() as usize;
        PauliOp::from_parts(x, z, ((sp + w) % 4) as u8)
    }

    /// Re-index qubits: qubit `i` moves to `map[i]` on `new_n` qubits.
    /// The string phase is kept.
    pub fn remap(&self, map: &[usize], new_n: usize) -> PauliOp {
        let x = self.x.remap(map, new_n);
        let z = self.z.remap(map, new_n);
        let w = x.overlap(&z);
        let sp = self.string_phase() as usize;
        PauliOp::from_parts(x, z, ((sp + w) % 4) as u8)
    }

    pub fn conjugate(&self, circuit: &CliffordCircuit) -> PauliOp {
        conjugate_by_circuit(self, circuit)
    }

    /// Pauli string without sign, e.g. `XIZY`.
    pub fn label(&self) -> String {
        (0..self.n)
            .map(|q| match (self.x.get(q), self.z.get(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            })
            .collect()
    }

    /// Sparse description such as `X0 Z3 Y5`.
    pub fn sparse_label(&self) -> String {
        let body: Vec<String> = self
            .support()
            .into_iter()
            .map(|q| {
                let c = match (self.x.get(q), self.z.get(q)) {
                    (true, false) => 'X',
                    (false, true) => 'Z',
                    _ => 'Y',
                };
                format!("{c}{q}")
            })
            .collect();
        let prefix = sign_prefix(self.string_phase());
        if body.is_empty() {
            format!("{prefix}I")
        } else {
            format!("{prefix}{}", body.join(" "))
        }
    }
}

fn sign_prefix(string_phase: u8) -> &'static str {
    match string_phase {
        0 => "+",
        1 => "+i",
        2 => "-",
        _ => "-i",
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({})", self.sparse_label())
    }
}

/// Dense string form: a sign prefix (`+`, `-`, `+i`, `-i`) then one of
/// `I`, `X`, `Y`, `Z` per qubit.
impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", sign_prefix(self.string_phase()), self.label())
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (sp, body) = if let Some(rest) = s.strip_prefix("+i").or_else(|| s.strip_prefix("i")) {
            (1u8, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s.strip_prefix('+').unwrap_or(s))
        };
        let n = body.chars().count();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x.set(q, true),
                'Z' => z.set(q, true),
                'Y' => {
                    x.set(q, true);
                    z.set(q, true);
                }
                other => return Err(Error::InvalidPauli(format!("unexpected character {other:?} in {s:?}"))),
            }
        }
        let w = x.overlap(&z);
        Ok(PauliOp::from_parts(x, z, ((sp as usize + w) % 4) as u8))
    }
}

#[derive(Serialize, Deserialize)]
struct PauliRepr {
    n: usize,
    x: Vec<usize>,
    z: Vec<usize>,
    phase: u8,
}

/// JSON form `{n, x: [...], z: [...], phase}` where `phase` is the raw power
/// of `i` in `i^phase · X(x) · Z(z)`.
impl Serialize for PauliOp {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PauliRepr {
            n: self.n,
            x: self.x.support(),
            z: self.z.support(),
            phase: self.phase,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PauliOp {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PauliRepr::deserialize(deserializer)?;
        if r.phase > 3 {
            return Err(D::Error::custom(format!("phase {} outside 0..4", r.phase)));
        }
        let build = |idx: &[usize]| -> Result<BitVec, D::Error> {
            let mut v = BitVec::zeros(r.n);
            for &i in idx {
                if i >= r.n || v.get(i) {
                    return Err(D::Error::custom(format!("bad qubit index {i} for n = {}", r.n)));
                }
                v.set(i, true);
            }
            Ok(v)
        };
        Ok(PauliOp::from_parts(build(&r.x)?, build(&r.z)?, r.phase))
    }
}

/// `(P.x·Q.z + P.z·Q.x) mod 2`; true means the operators anticommute.
pub fn symplectic_product(p: &PauliOp, q: &PauliOp) -> bool {
    assert_eq!(p.n, q.n, "qubit counts differ");
    p.x.dot(&q.z) ^ p.z.dot(&q.x)
}

/// Operator product `P·Q` with exact phase.
pub fn multiply(p: &PauliOp, q: &PauliOp) -> PauliOp {
    assert_eq!(p.n, q.n, "qubit counts differ");
    // Moving Z^{z1} past X^{x2} costs (-1)^{z1·x2}.
    let swap = if p.z.dot(&q.x) { 2 } else { 0 };
    PauliOp {
        n: p.n,
        x: p.x.xor(&q.x),
        z: p.z.xor(&q.z),
        phase: (p.phase + q.phase + swap) % 4,
    }
}

/// Ordered product of a list of operators on `n` qubits.
pub fn product<'a, I: IntoIterator<Item = &'a PauliOp>>(n: usize, ops: I) -> PauliOp {
    ops.into_iter()
        .fold(PauliOp::identity(n), |acc, op| multiply(&acc, op))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    CZ(usize, usize),
}

/// An ordered list of Hadamard and CZ gates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl CliffordCircuit {
    pub fn new(n: usize) -> Self {
        CliffordCircuit { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self, Error> {
        let mut c = CliffordCircuit::new(n);
        for g in gates {
            c.try_push(g)?;
        }
        Ok(c)
    }

    pub fn try_push(&mut self, g: Gate) -> Result<(), Error> {
        match g {
            Gate::H(q) if q >= self.n => {
                return Err(Error::InvalidParameters(format!("H on qubit {q} with n = {}", self.n)))
            }
            Gate::CZ(a, b) if a >= self.n || b >= self.n || a == b => {
                return Err(Error::InvalidParameters(format!("CZ({a}, {b}) with n = {}", self.n)))
            }
            _ => {}
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.try_push(Gate::H(q)).expect("invalid H gate");
        self
    }

    pub fn cz(&mut self, a: usize, b: usize) -> &mut Self {
        self.try_push(Gate::CZ(a, b)).expect("invalid CZ gate");
        self
    }

    /// Transversal Hadamard on every qubit.
    pub fn hadamard_all(n: usize) -> Self {
        CliffordCircuit {
            n,
            gates: (0..n).map(Gate::H).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

/// `U·P·U†` for the circuit `U` whose first gate acts first.
pub fn conjugate_by_circuit(p: &PauliOp, c: &CliffordCircuit) -> PauliOp {
    assert_eq!(p.n, c.n, "circuit and operator qubit counts differ");
    let mut out = p.clone();
    for g in &c.gates {
        match *g {
            Gate::H(q) => {
                let (xq, zq) = (out.x.get(q), out.z.get(q));
                out.x.set(q, zq);
                out.z.set(q, xq);
                // H·XZ·H = ZX = -XZ
                if xq && zq {
                    out.phase = (out.phase + 2) % 4;
                }
            }
            Gate::CZ(a, b) => {
                let (xa, xb) = (out.x.get(a), out.x.get(b));
                if xa {
                    out.z.flip(b);
                }
                if xb {
                    out.z.flip(a);
                }
                if xa && xb {
                    out.phase = (out.phase + 2) % 4;
                }
            }
        }
    }
    out
}

/// Transversal Hadamard conjugation.
pub fn hadamard_all(p: &PauliOp) -> PauliOp {
    conjugate_by_circuit(p, &CliffordCircuit::hadamard_all(p.n))
}

fn symplectic_rows(gens: &[PauliOp]) -> Option<(usize, Vec<BitVec>)> {
    let n = gens.first()?.n;
    for g in gens {
        assert_eq!(g.n, n, "generators act on different qubit counts");
    }
    Some((n, gens.iter().map(PauliOp::symplectic_row).collect()))
}

/// GF(2) rank of the stacked `(x | z)` rows; phases are ignored.
pub fn group_rank(gens: &[PauliOp]) -> usize {
    match symplectic_rows(gens) {
        Some((_, rows)) => crate::gf2::rank_of(&rows),
        None => 0,
    }
}

/// Independent generators of the center of the group generated by `gens`,
/// each normalized to a Hermitian operator with sign +1.
pub fn center_of_group(gens: &[PauliOp]) -> Vec<PauliOp> {
    let Some((n, rows)) = symplectic_rows(gens) else {
        return Vec::new();
    };
    let basis: Vec<&PauliOp> = crate::gf2::independent_subset(2 * n, &rows)
        .into_iter()
        .map(|i| &gens[i])
        .collect();
    let b = basis.len();
    let mut gram = BitMatrix::zeros(b, b);
    for i in 0..b {
        for j in (i + 1)..b {
            if symplectic_product(basis[i], basis[j]) {
                gram.set(i, j, true);
                gram.set(j, i, true);
            }
        }
    }
    crate::gf2::kernel_basis(&gram)
        .rows()
        .iter()
        .map(|c| product(n, c.iter_ones().map(|i| basis[i])).unsigned())
        .collect()
}

/// A Pauli group given by generators, prepared for repeated membership tests.
#[derive(Clone, Debug)]
pub struct PauliGroup {
    n: usize,
    gens: Vec<PauliOp>,
    solver: Solver,
    /// Generator of the scalar subgroup `{i^k}` contained in the group, as a
    /// power of `i` (0 when the group holds no nontrivial scalar).
    scalar_step: u8,
}

impl PauliGroup {
    pub fn new(n: usize, gens: &[PauliOp]) -> Self {
        for g in gens {
            assert_eq!(g.n, n, "generator acts on {} qubits, expected {n}", g.n);
        }
        let rows: Vec<BitVec> = gens.iter().map(PauliOp::symplectic_row).collect();
        let m = BitMatrix::from_columns(2 * n, &rows);
        let solver = Solver::new(&m);
        let mut step = 4u8;
        for rel in crate::gf2::kernel_basis(&m).rows() {
            let p = product(n, rel.iter_ones().map(|i| &gens[i]));
            if p.phase != 0 {
                step = gcd4(step, p.phase);
            }
        }
        PauliGroup {
            n,
            gens: gens.to_vec(),
            solver,
            scalar_step: step % 4,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.solver.rank()
    }

    /// Coefficients expressing the Pauli string of `p` over the generators.
    pub fn express(&self, p: &PauliOp) -> Option<BitVec> {
        assert_eq!(p.n, self.n, "operator acts on {} qubits, expected {}", p.n, self.n);
        self.solver.solve(&p.symplectic_row())
    }

    pub fn contains(&self, p: &PauliOp, track_sign: bool) -> bool {
        let Some(c) = self.express(p) else {
            return false;
        };
        if !track_sign {
            return true;
        }
        let rebuilt = product(self.n, c.iter_ones().map(|i| &self.gens[i]));
        let diff = (p.phase + 4 - rebuilt.phase) % 4;
        match self.scalar_step {
            0 => diff == 0,
            s => diff.is_multiple_of(s),
        }
    }

    /// True when every operator of `other` lies in this group and vice versa.
    pub fn same_group(&self, other: &PauliGroup, track_sign: bool) -> bool {
        self.gens.iter().all(|g| other.contains(g, track_sign))
            && other.gens.iter().all(|g| self.contains(g, track_sign))
            && (!track_sign || self.scalar_step == other.scalar_step)
    }
}

fn gcd4(a: u8, b: u8) -> u8 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// True iff `p` lies in the group generated by `gens`; with `track_sign`
/// the phase must match as well.
pub fn in_group(p: &PauliOp, gens: &[PauliOp], track_sign: bool) -> bool {
    PauliGroup::new(p.n, gens).contains(p, track_sign)
}

/// True iff the two generating sets span the same Pauli strings.
pub fn same_span(a: &[PauliOp], b: &[PauliOp]) -> bool {
    let Some(n) = a.first().or(b.first()).map(PauliOp::n) else {
        return true;
    };
    let sa = SpanBasis::from_vectors(2 * n, a.iter().map(PauliOp::symplectic_row).collect::<Vec<_>>().iter());
    let sb = SpanBasis::from_vectors(2 * n, b.iter().map(PauliOp::symplectic_row).collect::<Vec<_>>().iter());
    sa.dim() == sb.dim() && b.iter().all(|p| sa.contains(&p.symplectic_row()))
}
