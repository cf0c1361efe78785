//! Dense `2^n × 2^n` matrices with exact Gaussian-integer entries, used to
//! check the symplectic Pauli and Clifford code against plain linear algebra.
//!
//! Qubit `q` is bit `q` of the basis index. Hadamards are applied as the
//! integer matrix `√2·H`; the accumulated factor is divided out when reading
//! the result back.

use num_complex::Complex;

use crate::gf2::BitVec;
use crate::pauli::{CliffordCircuit, Gate, PauliOp};

pub const MAX_QUBITS: usize = 10;

type C = Complex<i64>;

fn i_pow(k: u8) -> C {
    match k % 4 {
        0 => C::new(1, 0),
        1 => C::new(0, 1),
        2 => C::new(-1, 0),
        _ => C::new(0, -1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseOp {
    n: usize,
    dim: usize,
    data: Vec<C>,
    /// The stored matrix is `2^scale` times the operator.
    scale: u32,
}

impl DenseOp {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "dense oracle is limited to {MAX_QUBITS} qubits");
        let dim = 1 << n;
        let mut data = vec![C::new(0, 0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = C::new(1, 0);
        }
        DenseOp { n, dim, data, scale: 0 }
    }

    /// Builds `i^phase · X^x · Z^z` column by column: `|c⟩ ↦ i^phase (−1)^{z·c} |c ⊕ x⟩`.
    pub fn from_pauli(p: &PauliOp) -> Self {
        let n = p.n();
        assert!(n <= MAX_QUBITS, "dense oracle is limited to {MAX_QUBITS} qubits");
        let dim = 1usize << n;
        let x = mask(p.x());
        let z = mask(p.z());
        let mut data = vec![C::new(0, 0); dim * dim];
        let base = i_pow(p.phase());
        for c in 0..dim {
            let s = if (z & c).count_ones() % 2 == 1 { -base } else { base };
            data[(c ^ x) * dim + c] = s;
        }
        DenseOp { n, dim, data, scale: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.data[r * self.dim + c]
    }

    /// `M ↦ (√2 H_q) M (√2 H_q)`.
    pub fn conj_h(&mut self, q: usize) {
        let bit = 1usize << q;
        let dim = self.dim;
        // rows
        for r in 0..dim {
            if r & bit != 0 {
                continue;
            }
            for c in 0..dim {
                let a = self.data[r * dim + c];
                let b = self.data[(r | bit) * dim + c];
                self.data[r * dim + c] = a + b;
                self.data[(r | bit) * dim + c] = a - b;
            }
        }
        // columns
        for r in 0..dim {
            for c in 0..dim {
                if c & bit != 0 {
                    continue;
                }
                let a = self.data[r * dim + c];
                let b = self.data[r * dim + (c | bit)];
                self.data[r * dim + c] = a + b;
                self.data[r * dim + (c | bit)] = a - b;
            }
        }
        self.scale += 1;
    }

    pub fn conj_cz(&mut self, a: usize, b: usize) {
        let m = (1usize << a) | (1usize << b);
        let dim = self.dim;
        for r in 0..dim {
            for c in 0..dim {
                if ((r & m == m) as u8 ^ (c & m == m) as u8) == 1 {
                    let e = &mut self.data[r * dim + c];
                    *e = -*e;
                }
            }
        }
    }

    /// `U M U†` with the circuit's first gate acting first.
    pub fn conjugate(&self, circuit: &CliffordCircuit) -> DenseOp {
        assert_eq!(circuit.n(), self.n);
        let mut out = self.clone();
        for g in circuit.gates() {
            match *g {
                Gate::H(q) => out.conj_h(q),
                Gate::CZ(a, b) => out.conj_cz(a, b),
            }
        }
        out
    }

    pub fn mul(&self, other: &DenseOp) -> DenseOp {
        assert_eq!(self.n, other.n);
        let dim = self.dim;
        let mut data = vec![C::new(0, 0); dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.data[r * dim + k];
                if a == C::new(0, 0) {
                    continue;
                }
                for c in 0..dim {
                    data[r * dim + c] += a * other.data[k * dim + c];
                }
            }
        }
        DenseOp {
            n: self.n,
            dim,
            data,
            scale: self.scale + other.scale,
        }
    }

    /// Reads the matrix back as a phased Pauli operator, or `None` if it is not one.
    pub fn to_pauli(&self) -> Option<PauliOp> {
        let div = 1i64 << self.scale;
        let dim = self.dim;
        let entry = |r: usize, c: usize| -> Option<C> {
            let e = self.data[r * dim + c];
            if e.re % div != 0 || e.im % div != 0 {
                return None;
            }
            Some(C::new(e.re / div, e.im / div))
        };
        let x = (0..dim).find(|&r| self.data[r * dim] != C::new(0, 0))?;
        let v0 = entry(x, 0)?;
        let phase = (0..4u8).find(|&k| i_pow(k) == v0)?;
        let mut z = 0usize;
        for q in 0..self.n {
            let c = 1usize << q;
            if entry(c ^ x, c)? == -v0 {
                z |= c;
            }
        }
        let p = PauliOp::from_parts(
            BitVec::from_indices(self.n, (0..self.n).filter(|q| x >> q & 1 == 1)),
            BitVec::from_indices(self.n, (0..self.n).filter(|q| z >> q & 1 == 1)),
            phase,
        );
        let expect = DenseOp::from_pauli(&p);
        for r in 0..dim {
            for c in 0..dim {
                if entry(r, c)? != expect.data[r * dim + c] {
                    return None;
                }
            }
        }
        Some(p)
    }
}

fn mask(v: &BitVec) -> usize {
    v.iter_ones().fold(0, |m, q| m | 1 << q)
}

/// Conjugation computed with dense matrices.
pub fn conjugate_dense(p: &PauliOp, circuit: &CliffordCircuit) -> Option<PauliOp> {
    DenseOp::from_pauli(p).conjugate(circuit).to_pauli()
}

/// Product computed with dense matrices.
pub fn multiply_dense(p: &PauliOp, q: &PauliOp) -> Option<PauliOp> {
    DenseOp::from_pauli(p).mul(&DenseOp::from_pauli(q)).to_pauli()
}
