use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{css_logical_reps, ChainComplex};
use crate::error::Error;
use crate::gf2::{complement_basis, independent_subset, kernel_basis, rank_of, BitMatrix, BitVec, SpanBasis};
use crate::pauli::PauliOp;

/// A CSS subsystem code given by X- and Z-type gauge generators.
///
/// Stabilizer codes are the special case of an abelian gauge group, where
/// the gauge generators are the stabilizer generators.
#[derive(Clone, Debug)]
pub struct CssSubsystemCode {
    pub name: String,
    pub n: usize,
    pub gauge_x: Vec<BitVec>,
    pub gauge_z: Vec<BitVec>,
    pub stabilizer_x: Vec<BitVec>,
    pub stabilizer_z: Vec<BitVec>,
    pub qubit_labels: Vec<String>,
    /// Free-form builder metadata (lattice name, parameters, cell kinds).
    pub metadata: BTreeMap<String, String>,
}

/// Basis of `span(a) ∩ ker(b)`: combinations of the `a` vectors orthogonal to every `b` vector.
fn span_intersect_kernel(n: usize, a: &[BitVec], b: &[BitVec]) -> Vec<BitVec> {
    if a.is_empty() {
        return Vec::new();
    }
    let am = BitMatrix::from_rows(n, a);
    let bm = BitMatrix::from_rows(n, b);
    let gram = bm.mul(&am.transpose());
    let combos = kernel_basis(&gram);
    let vecs: Vec<BitVec> = combos.rows().iter().map(|c| am.transpose().mul_vec(c)).collect();
    independent_subset(n, &vecs).into_iter().map(|i| vecs[i].clone()).collect()
}

fn same_span(n: usize, a: &[BitVec], b: &[BitVec]) -> bool {
    let sa = SpanBasis::from_vectors(n, a);
    sa.dim() == rank_of(b) && b.iter().all(|v| sa.contains(v))
}

fn check_lengths(n: usize, what: &str, vs: &[BitVec]) -> Result<(), Error> {
    match vs.iter().position(|v| v.len() != n) {
        Some(i) => Err(Error::InvalidParameters(format!(
            "{what} generator {i} has length {}, expected {n}",
            vs[i].len()
        ))),
        None => Ok(()),
    }
}

impl CssSubsystemCode {
    /// A stabilizer code; X and Z generators must commute.
    pub fn stabilizer(name: &str, n: usize, sx: Vec<BitVec>, sz: Vec<BitVec>) -> Result<Self, Error> {
        check_lengths(n, "X", &sx)?;
        check_lengths(n, "Z", &sz)?;
        for (i, x) in sx.iter().enumerate() {
            if let Some(j) = sz.iter().position(|z| x.dot(z)) {
                return Err(Error::NonCommuting(format!("X stabilizer {i} and Z stabilizer {j}")));
            }
        }
        Ok(CssSubsystemCode {
            name: name.to_string(),
            n,
            gauge_x: sx.clone(),
            gauge_z: sz.clone(),
            stabilizer_x: sx,
            stabilizer_z: sz,
            qubit_labels: (0..n).map(|q| format!("q{q}")).collect(),
            metadata: BTreeMap::new(),
        })
    }

    /// A subsystem code. The stabilizer group is the center of the gauge
    /// group; `natural` stabilizer generators, when given, are checked to
    /// generate exactly that center and are kept as the generating set.
    pub fn subsystem(
        name: &str,
        n: usize,
        gx: Vec<BitVec>,
        gz: Vec<BitVec>,
        natural: Option<(Vec<BitVec>, Vec<BitVec>)>,
    ) -> Result<Self, Error> {
        check_lengths(n, "X gauge", &gx)?;
        check_lengths(n, "Z gauge", &gz)?;
        let cx = span_intersect_kernel(n, &gx, &gz);
        let cz = span_intersect_kernel(n, &gz, &gx);
        let (sx, sz) = match natural {
            Some((sx, sz)) => {
                check_lengths(n, "X stabilizer", &sx)?;
                check_lengths(n, "Z stabilizer", &sz)?;
                if !same_span(n, &sx, &cx) || !same_span(n, &sz, &cz) {
                    return Err(Error::InvalidParameters(format!(
                        "{name}: supplied stabilizers do not generate the center of the gauge group"
                    )));
                }
                (sx, sz)
            }
            None => (cx, cz),
        };
        Ok(CssSubsystemCode {
            name: name.to_string(),
            n,
            gauge_x: gx,
            gauge_z: gz,
            stabilizer_x: sx,
            stabilizer_z: sz,
            qubit_labels: (0..n).map(|q| format!("q{q}")).collect(),
            metadata: BTreeMap::new(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per qubit");
        self.qubit_labels = labels;
        self
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// True when every X gauge generator commutes with every Z gauge generator.
    pub fn is_stabilizer_code(&self) -> bool {
        self.gauge_x
            .iter()
            .all(|x| self.gauge_z.iter().all(|z| !x.dot(z)))
    }

    /// `n × |S_Z|` matrix whose columns are Z-stabilizer supports.
    pub fn d_z(&self) -> BitMatrix {
        BitMatrix::from_columns(self.n, &self.stabilizer_z)
    }

    /// `|S_X| × n` matrix whose rows are X-stabilizer supports.
    pub fn d_x(&self) -> BitMatrix {
        BitMatrix::from_rows(self.n, &self.stabilizer_x)
    }

    /// The CSS chain complex of the stabilizer group.
    pub fn css_complex(&self) -> ChainComplex {
        ChainComplex::css(self.d_z(), self.d_x()).expect("shapes agree by construction")
    }

    pub fn gauge_ops(&self) -> Vec<PauliOp> {
        self.gauge_x
            .iter()
            .map(|x| PauliOp::x_type(x.clone()))
            .chain(self.gauge_z.iter().map(|z| PauliOp::z_type(z.clone())))
            .collect()
    }

    pub fn stabilizer_ops(&self) -> Vec<PauliOp> {
        self.stabilizer_x
            .iter()
            .map(|x| PauliOp::x_type(x.clone()))
            .chain(self.stabilizer_z.iter().map(|z| PauliOp::z_type(z.clone())))
            .collect()
    }

    /// Representatives of the bare Z logicals: Z operators commuting with
    /// every X gauge generator, modulo the Z stabilizers.
    pub fn bare_z_logicals(&self) -> Vec<BitVec> {
        if self.is_stabilizer_code() {
            return css_logical_reps(&self.d_z(), &self.d_x()).0;
        }
        let gx = BitMatrix::from_rows(self.n, &self.gauge_x);
        complement_basis(self.n, &self.stabilizer_z, &kernel_basis(&gx).rows())
    }

    /// Representatives of the bare X logicals.
    pub fn bare_x_logicals(&self) -> Vec<BitVec> {
        if self.is_stabilizer_code() {
            return css_logical_reps(&self.d_z(), &self.d_x()).1;
        }
        let gz = BitMatrix::from_rows(self.n, &self.gauge_z);
        complement_basis(self.n, &self.stabilizer_x, &kernel_basis(&gz).rows())
    }

    /// The same code with X and Z exchanged.
    pub fn dual(&self) -> CssSubsystemCode {
        CssSubsystemCode {
            name: format!("dual({})", self.name),
            n: self.n,
            gauge_x: self.gauge_z.clone(),
            gauge_z: self.gauge_x.clone(),
            stabilizer_x: self.stabilizer_z.clone(),
            stabilizer_z: self.stabilizer_x.clone(),
            qubit_labels: self.qubit_labels.clone(),
            metadata: self.metadata.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CodeRepr {
    name: String,
    n: usize,
    gauge_x: Vec<Vec<usize>>,
    gauge_z: Vec<Vec<usize>>,
    stabilizer_x: Vec<Vec<usize>>,
    stabilizer_z: Vec<Vec<usize>>,
    #[serde(default)]
    qubit_labels: Vec<String>,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
}

fn supports(vs: &[BitVec]) -> Vec<Vec<usize>> {
    vs.iter().map(BitVec::support).collect()
}

/// JSON form with generators given as qubit-index lists.
impl Serialize for CssSubsystemCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CodeRepr {
            name: self.name.clone(),
            n: self.n,
            gauge_x: supports(&self.gauge_x),
            gauge_z: supports(&self.gauge_z),
            stabilizer_x: supports(&self.stabilizer_x),
            stabilizer_z: supports(&self.stabilizer_z),
            qubit_labels: self.qubit_labels.clone(),
            metadata: self.metadata.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CssSubsystemCode {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CodeRepr::deserialize(deserializer)?;
        let build = |lists: &[Vec<usize>]| -> Result<Vec<BitVec>, D::Error> {
            lists
                .iter()
                .map(|l| {
                    if let Some(&q) = l.iter().find(|&&q| q >= r.n) {
                        return Err(D::Error::custom(format!("qubit {q} out of range for n = {}", r.n)));
                    }
                    Ok(BitVec::from_indices(r.n, l.iter().copied()))
                })
                .collect()
        };
        let (gx, gz) = (build(&r.gauge_x)?, build(&r.gauge_z)?);
        let natural = (build(&r.stabilizer_x)?, build(&r.stabilizer_z)?);
        let mut code = CssSubsystemCode::subsystem(&r.name, r.n, gx, gz, Some(natural)).map_err(D::Error::custom)?;
        if !r.qubit_labels.is_empty() {
            if r.qubit_labels.len() != r.n {
                return Err(D::Error::custom("qubit_labels must have one entry per qubit"));
            }
            code.qubit_labels = r.qubit_labels;
        }
        code.metadata = r.metadata;
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_commuting_stabilizers_rejected() {
        let x = vec![BitVec::from_indices(2, [0])];
        let z = vec![BitVec::from_indices(2, [0])];
        assert!(CssSubsystemCode::stabilizer("bad", 2, x, z).is_err());
    }

    #[test]
    fn wrong_natural_stabilizers_rejected() {
        // Gauge XX, ZZ on two qubits is abelian; center is both.
        let gx = vec![BitVec::ones(2)];
        let gz = vec![BitVec::ones(2)];
        let ok = CssSubsystemCode::subsystem("pair", 2, gx.clone(), gz.clone(), None).unwrap();
        assert_eq!(ok.stabilizer_x.len(), 1);
        let bad = CssSubsystemCode::subsystem("pair", 2, gx, gz, Some((vec![], vec![])));
        assert!(bad.is_err());
    }
}
