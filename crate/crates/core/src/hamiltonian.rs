use serde::{Deserialize, Serialize};

use crate::pauli::{conjugate_by_circuit, CliffordCircuit, PauliOp};

/// One Hamiltonian term `-J · P`, kept symbolic: the coupling is a label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Term {
    pub op: PauliOp,
    pub coupling: String,
}

/// A sum of Pauli terms on `n` qubits with symbolic couplings such as `J_X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hamiltonian {
    n: usize,
    terms: Vec<Term>,
}

impl Hamiltonian {
    pub fn new(n: usize) -> Self {
        Hamiltonian { n, terms: Vec::new() }
    }

    pub fn from_ops<I: IntoIterator<Item = PauliOp>>(n: usize, coupling: &str, ops: I) -> Self {
        let mut h = Hamiltonian::new(n);
        for op in ops {
            h.push(op, coupling);
        }
        h
    }

    pub fn push(&mut self, op: PauliOp, coupling: &str) {
        assert_eq!(op.n(), self.n, "term acts on {} qubits, expected {}", op.n(), self.n);
        self.terms.push(Term {
            op,
            coupling: coupling.to_string(),
        });
    }

    pub fn extend(&mut self, other: &Hamiltonian) {
        assert_eq!(other.n, self.n, "qubit counts differ");
        self.terms.extend(other.terms.iter().cloned());
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ops(&self) -> impl Iterator<Item = &PauliOp> + '_ {
        self.terms.iter().map(|t| &t.op)
    }

    pub fn ops_vec(&self) -> Vec<PauliOp> {
        self.ops().cloned().collect()
    }

    /// Terms whose coupling label equals `coupling`.
    pub fn with_coupling(&self, coupling: &str) -> Hamiltonian {
        self.filter(|t| t.coupling == coupling)
    }

    pub fn filter<F: Fn(&Term) -> bool>(&self, keep: F) -> Hamiltonian {
        Hamiltonian {
            n: self.n,
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    /// Applies `f` to every operator on a possibly different qubit count.
    pub fn map_ops<F: FnMut(&PauliOp) -> PauliOp>(&self, new_n: usize, mut f: F) -> Hamiltonian {
        let mut h = Hamiltonian::new(new_n);
        for t in &self.terms {
            h.push(f(&t.op), &t.coupling);
        }
        h
    }

    pub fn conjugate(&self, circuit: &CliffordCircuit) -> Hamiltonian {
        self.map_ops(self.n, |op| conjugate_by_circuit(op, circuit))
    }

    /// Sorted operators, for order-independent comparison.
    pub fn sorted_ops(&self) -> Vec<PauliOp> {
        let mut ops = self.ops_vec();
        ops.sort();
        ops
    }

    /// Multiset equality of operators (phases included, couplings ignored).
    pub fn same_operators(&self, other: &Hamiltonian) -> bool {
        self.n == other.n && self.sorted_ops() == other.sorted_ops()
    }

    /// Multiset equality of `(operator, coupling)` pairs.
    pub fn same_terms(&self, other: &Hamiltonian) -> bool {
        let mut a = self.terms.clone();
        let mut b = other.terms.clone();
        a.sort();
        b.sort();
        self.n == other.n && a == b
    }

    /// Histogram of term weights as `(weight, count)` pairs.
    pub fn weight_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = std::collections::BTreeMap::new();
        for op in self.ops() {
            *hist.entry(op.weight()).or_insert(0) += 1;
        }
        hist.into_iter().collect()
    }
}
