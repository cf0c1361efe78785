//! Code parameters, decoupling into components, and structural comparisons.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::rank_of;
use crate::hamiltonian::Hamiltonian;
use crate::lattice::CssSubsystemCode;
use crate::pauli::{symplectic_product, PauliOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub n: usize,
    /// Rank of the gauge group (X and Z generators together).
    pub g_rank: usize,
    /// Rank of the stabilizer group.
    pub s_rank: usize,
    pub k: usize,
    pub gauge_qubits: usize,
}

/// `k = n − s − (g − s)/2` from the symplectic ranks of gauge and stabilizer groups.
pub fn code_parameters(c: &CssSubsystemCode) -> CodeParameters {
    let g = rank_of(&c.gauge_x) + rank_of(&c.gauge_z);
    let s = rank_of(&c.stabilizer_x) + rank_of(&c.stabilizer_z);
    assert!(g >= s && (g - s).is_multiple_of(2), "gauge rank {g} and stabilizer rank {s} are inconsistent");
    let gauge_qubits = (g - s) / 2;
    CodeParameters {
        n: c.n,
        g_rank: g,
        s_rank: s,
        k: c.n - s - gauge_qubits,
        gauge_qubits,
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub qubits: Vec<usize>,
    /// Indices into the Hamiltonian's term list.
    pub terms: Vec<usize>,
    /// `(weight, count)` pairs of the component's terms.
    pub weight_histogram: Vec<(usize, usize)>,
}

/// Connected components of the term–qubit incidence graph. Identity terms
/// touch no qubit and are left out; so are qubits touched by no term.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub count: usize,
    pub components: Vec<Component>,
}

impl ComponentReport {
    /// Sizes of the qubit sets, sorted descending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.components.iter().map(|c| c.qubits.len()).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// The component's terms as a Hamiltonian on the full qubit set.
    pub fn hamiltonian(&self, h: &Hamiltonian, i: usize) -> Hamiltonian {
        let mut out = Hamiltonian::new(h.n());
        for &t in &self.components[i].terms {
            out.push(h.terms()[t].op.clone(), &h.terms()[t].coupling);
        }
        out
    }

    /// Term–qubit graph in DOT format: boxes for terms, circles for qubits.
    pub fn to_dot(&self, h: &Hamiltonian) -> String {
        let mut s = String::from("graph components {\n");
        for (ci, c) in self.components.iter().enumerate() {
            s.push_str(&format!("  subgraph cluster_{ci} {{\n"));
            for &q in &c.qubits {
                s.push_str(&format!("    q{q} [shape=circle];\n"));
            }
            for &t in &c.terms {
                s.push_str(&format!(
                    "    t{t} [shape=box,label=\"{}\"];\n",
                    h.terms()[t].op.sparse_label()
                ));
                for q in h.terms()[t].op.support() {
                    s.push_str(&format!("    t{t} -- q{q};\n"));
                }
            }
            s.push_str("  }\n");
        }
        s.push_str("}\n");
        s
    }
}

pub fn components(h: &Hamiltonian) -> ComponentReport {
    let n = h.n();
    let mut uf = UnionFind::new(n);
    let mut touched = vec![false; n];
    for t in h.terms() {
        let sup = t.op.support();
        for &q in &sup {
            touched[q] = true;
        }
        for w in sup.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut by_root: BTreeMap<usize, Component> = BTreeMap::new();
    for q in (0..n).filter(|&q| touched[q]) {
        let r = uf.find(q);
        by_root
            .entry(r)
            .or_insert_with(|| Component {
                qubits: Vec::new(),
                terms: Vec::new(),
                weight_histogram: Vec::new(),
            })
            .qubits
            .push(q);
    }
    for (i, t) in h.terms().iter().enumerate() {
        if let Some(&q) = t.op.support().first() {
            let r = uf.find(q);
            by_root.get_mut(&r).expect("touched qubit has a component").terms.push(i);
        }
    }
    let components: Vec<Component> = by_root
        .into_values()
        .map(|mut c| {
            let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
            for &t in &c.terms {
                *hist.entry(h.terms()[t].op.weight()).or_default() += 1;
            }
            c.weight_histogram = hist.into_iter().collect();
            c
        })
        .collect();
    ComponentReport {
        count: components.len(),
        components,
    }
}

/// Compares the terms of `component` with the stabilizer generators of
/// `reference`, sending reference qubit `j` to qubit `correspondence[j]`.
/// Operators are compared without signs, as sets.
pub fn match_against_builder(component: &Hamiltonian, reference: &CssSubsystemCode, correspondence: &[usize]) -> Result<bool> {
    if correspondence.len() != reference.n {
        return Err(Error::InvalidParameters(format!(
            "correspondence has {} entries, reference code has {} qubits",
            correspondence.len(),
            reference.n
        )));
    }
    let mut seen = vec![false; component.n()];
    for &q in correspondence {
        if q >= component.n() || seen[q] {
            return Err(Error::InvalidParameters(format!("correspondence is not injective at qubit {q}")));
        }
        seen[q] = true;
    }
    let touched: Vec<usize> = {
        let mut t: Vec<usize> = component.ops().flat_map(PauliOp::support).collect();
        t.sort_unstable();
        t.dedup();
        t
    };
    if touched.iter().any(|&q| !seen[q]) || touched.len() != reference.n {
        return Err(Error::InvalidParameters(
            "correspondence is not a bijection onto the qubits touched by the component".into(),
        ));
    }
    let mut ours: Vec<PauliOp> = component
        .ops()
        .filter(|p| !p.is_identity())
        .map(PauliOp::unsigned)
        .collect();
    let mut theirs: Vec<PauliOp> = reference
        .stabilizer_ops()
        .iter()
        .map(|p| p.remap(correspondence, component.n()).unsigned())
        .collect();
    ours.sort();
    ours.dedup();
    theirs.sort();
    theirs.dedup();
    Ok(ours == theirs)
}

/// True iff the X and Z gauge generator supports agree as multisets.
pub fn is_self_dual(c: &CssSubsystemCode) -> bool {
    let mut x: Vec<Vec<usize>> = c.gauge_x.iter().map(|v| v.support()).collect();
    let mut z: Vec<Vec<usize>> = c.gauge_z.iter().map(|v| v.support()).collect();
    x.sort();
    z.sort();
    x == z
}

/// First pair of anticommuting terms, if any.
pub fn first_anticommuting_pair(h: &Hamiltonian) -> Option<(usize, usize)> {
    let ops = h.ops_vec();
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            if symplectic_product(&ops[i], &ops[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn commuting_check(h: &Hamiltonian) -> bool {
    first_anticommuting_pair(h).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVec;

    #[test]
    fn two_blocks() {
        let mut h = Hamiltonian::new(5);
        h.push(PauliOp::x_on(5, [0, 1]), "J");
        h.push(PauliOp::z_on(5, [1]), "J");
        h.push(PauliOp::z_on(5, [3, 4]), "J");
        h.push(PauliOp::identity(5), "J");
        let r = components(&h);
        assert_eq!(r.count, 2);
        assert_eq!(r.components[0].qubits, vec![0, 1]);
        assert_eq!(r.components[0].terms, vec![0, 1]);
        assert_eq!(r.components[1].qubits, vec![3, 4]);
    }

    #[test]
    fn anticommuting_detected() {
        let mut h = Hamiltonian::new(2);
        h.push(PauliOp::x_on(2, [1]), "J");
        h.push(PauliOp::z_on(2, [1]), "J");
        assert!(!commuting_check(&h));
        assert_eq!(first_anticommuting_pair(&h), Some((0, 1)));
    }

    #[test]
    fn repetition_code_parameters() {
        let z = vec![BitVec::from_indices(3, [0, 1]), BitVec::from_indices(3, [1, 2])];
        let c = CssSubsystemCode::stabilizer("rep", 3, vec![], z).unwrap();
        let p = code_parameters(&c);
        assert_eq!((p.n, p.s_rank, p.k, p.gauge_qubits), (3, 2, 1, 0));
    }
}
