//! Chain complexes over GF(2) with labeled bases.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gf2::{complement_basis, is_zero_product, kernel_basis, rank, BitMatrix, BitVec};

/// A basis of one space in a complex. Labels carry geometric metadata only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Space {
    pub name: String,
    pub labels: Vec<String>,
}

impl Space {
    pub fn new(name: &str, labels: Vec<String>) -> Self {
        Space {
            name: name.to_string(),
            labels,
        }
    }

    /// A space whose labels are `prefix0`, `prefix1`, ...
    pub fn indexed(name: &str, prefix: &str, dim: usize) -> Self {
        Space::new(name, (0..dim).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// Direction of the maps between consecutive spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `maps[i]` sends space `i` to space `i + 1` (rows indexed by space `i + 1`).
    Ascending,
    /// `maps[i]` sends space `i + 1` to space `i` (rows indexed by space `i`).
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplex {
    pub spaces: Vec<Space>,
    pub maps: Vec<BitMatrix>,
    pub orientation: Orientation,
}

impl ChainComplex {
    /// Builds a complex, checking only that map shapes match the spaces.
    pub fn new(spaces: Vec<Space>, maps: Vec<BitMatrix>, orientation: Orientation) -> Result<Self, Error> {
        let c = ChainComplex {
            spaces,
            maps,
            orientation,
        };
        c.check_shapes()?;
        Ok(c)
    }

    /// The CSS complex `C_Z → C_Q → C_X` with maps `d_z` and `d_x`.
    pub fn css(d_z: BitMatrix, d_x: BitMatrix) -> Result<Self, Error> {
        let spaces = vec![
            Space::indexed("C_Z", "z", d_z.ncols()),
            Space::indexed("C_Q", "q", d_z.nrows()),
            Space::indexed("C_X", "x", d_x.nrows()),
        ];
        ChainComplex::new(spaces, vec![d_z, d_x], Orientation::Ascending)
    }

    fn expected_shape(&self, i: usize) -> (usize, usize) {
        let (a, b) = (self.spaces[i].dim(), self.spaces[i + 1].dim());
        match self.orientation {
            Orientation::Ascending => (b, a),
            Orientation::Descending => (a, b),
        }
    }

    fn check_shapes(&self) -> Result<(), Error> {
        if self.maps.len() + 1 != self.spaces.len() && !(self.spaces.is_empty() && self.maps.is_empty()) {
            return Err(Error::InvalidComplex(format!(
                "{} spaces need {} maps, got {}",
                self.spaces.len(),
                self.spaces.len().saturating_sub(1),
                self.maps.len()
            )));
        }
        for (i, m) in self.maps.iter().enumerate() {
            let (r, c) = self.expected_shape(i);
            if (m.nrows(), m.ncols()) != (r, c) {
                return Err(Error::InvalidComplex(format!(
                    "map {i} is {}x{}, expected {r}x{c}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(())
    }

    /// True iff shapes are consistent and consecutive maps compose to zero.
    pub fn validate(&self) -> bool {
        if self.check_shapes().is_err() {
            return false;
        }
        self.maps.windows(2).all(|w| match self.orientation {
            Orientation::Ascending => is_zero_product(&w[1], &w[0]),
            Orientation::Descending => is_zero_product(&w[0], &w[1]),
        })
    }

    /// The map leaving space `p`, if any.
    pub fn outgoing(&self, p: usize) -> Option<&BitMatrix> {
        match self.orientation {
            Orientation::Ascending => self.maps.get(p),
            Orientation::Descending => p.checked_sub(1).and_then(|i| self.maps.get(i)),
        }
    }

    /// The map arriving at space `p`, if any.
    pub fn incoming(&self, p: usize) -> Option<&BitMatrix> {
        match self.orientation {
            Orientation::Ascending => p.checked_sub(1).and_then(|i| self.maps.get(i)),
            Orientation::Descending => self.maps.get(p),
        }
    }

    /// `dim ker(outgoing) − rank(incoming)` at space `p`.
    pub fn homology_dim(&self, p: usize) -> Result<usize, Error> {
        let space = self
            .spaces
            .get(p)
            .ok_or_else(|| Error::InvalidComplex(format!("no space at position {p}")))?;
        let ker = space.dim() - self.outgoing(p).map_or(0, rank);
        let im = self.incoming(p).map_or(0, rank);
        ker.checked_sub(im)
            .ok_or_else(|| Error::InvalidComplex(format!("complex is not valid at position {p}")))
    }

    fn css_maps(&self) -> Result<(&BitMatrix, &BitMatrix), Error> {
        if self.spaces.len() != 3 || self.orientation != Orientation::Ascending {
            return Err(Error::InvalidComplex(
                "expected an ascending three-space CSS complex".into(),
            ));
        }
        Ok((&self.maps[0], &self.maps[1]))
    }

    /// Z- and X-logical coset representatives of a CSS complex.
    pub fn css_logical_reps(&self) -> Result<(Vec<BitVec>, Vec<BitVec>), Error> {
        let (d_z, d_x) = self.css_maps()?;
        Ok(css_logical_reps(d_z, d_x))
    }

    /// Appends the given Z-logical representatives as extra columns of `d_z`.
    pub fn augment_with_logicals(&self, reps: &[BitVec]) -> Result<ChainComplex, Error> {
        let (d_z, d_x) = self.css_maps()?;
        let d_z = augment_columns(d_z, d_x, reps)?;
        let mut spaces = self.spaces.clone();
        let base = spaces[0].dim();
        spaces[0]
            .labels
            .extend((0..reps.len()).map(|i| format!("logical{}", base + i)));
        ChainComplex::new(spaces, vec![d_z, d_x.clone()], Orientation::Ascending)
    }
}

/// Columns of `d_z` extended by `reps`, each of which must satisfy `d_x·rep = 0`.
pub fn augment_columns(d_z: &BitMatrix, d_x: &BitMatrix, reps: &[BitVec]) -> Result<BitMatrix, Error> {
    for (i, r) in reps.iter().enumerate() {
        if r.len() != d_x.ncols() {
            return Err(Error::InvalidComplex(format!(
                "representative {i} has length {}, expected {}",
                r.len(),
                d_x.ncols()
            )));
        }
        if !d_x.mul_vec(r).is_zero() {
            return Err(Error::InvalidComplex(format!(
                "representative {i} has a nonzero syndrome"
            )));
        }
    }
    let mut cols = d_z.columns();
    cols.extend(reps.iter().cloned());
    Ok(BitMatrix::from_columns(d_x.ncols(), &cols))
}

/// Representatives of `ker d_x / im d_z` (Z-logicals) and of
/// `ker d_z^T / im d_x^T` (X-logicals).
pub fn css_logical_reps(d_z: &BitMatrix, d_x: &BitMatrix) -> (Vec<BitVec>, Vec<BitVec>) {
    let n = d_x.ncols();
    assert_eq!(d_z.nrows(), n, "d_z rows must match d_x columns");
    let z = complement_basis(n, &d_z.columns(), &kernel_basis(d_x).rows());
    let x = complement_basis(n, &d_x.rows(), &kernel_basis(&d_z.transpose()).rows());
    (z, x)
}

/// The four-space ungauging complex `C_Z → C_Q → C_X → C_R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UngaugeComplex {
    pub c_z: Space,
    pub c_q: Space,
    pub c_x: Space,
    pub c_r: Space,
    /// `|C_Q| × |C_Z|`; column j is the support of the j-th Z-symmetry.
    pub d_z: BitMatrix,
    /// `|C_X| × |C_Q|`; row i is the support of the i-th X-generator.
    pub d_x: BitMatrix,
    /// `|C_R| × |C_X|`; row r lists the X-generators multiplying to identity.
    pub d_r: BitMatrix,
}

impl UngaugeComplex {
    pub fn validate(&self) -> bool {
        self.to_chain_complex().is_ok_and(|c| c.validate())
    }

    pub fn to_chain_complex(&self) -> Result<ChainComplex, Error> {
        ChainComplex::new(
            vec![self.c_z.clone(), self.c_q.clone(), self.c_x.clone(), self.c_r.clone()],
            vec![self.d_z.clone(), self.d_x.clone(), self.d_r.clone()],
            Orientation::Ascending,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> BitMatrix {
        // Cycle graph: vertex-edge incidence, n vertices and n edges.
        BitMatrix::from_entries(n, n, (0..n).flat_map(|e| [(e, e), ((e + 1) % n, e)])).unwrap()
    }

    #[test]
    fn empty_complex_is_valid() {
        let c = ChainComplex::new(vec![], vec![], Orientation::Descending).unwrap();
        assert!(c.validate());
    }

    #[test]
    fn circle_homology() {
        let d1 = ring(4);
        let c = ChainComplex::new(
            vec![Space::indexed("V", "v", 4), Space::indexed("E", "e", 4)],
            vec![d1],
            Orientation::Descending,
        )
        .unwrap();
        assert_eq!(c.homology_dim(0).unwrap(), 1);
        assert_eq!(c.homology_dim(1).unwrap(), 1);
        assert!(c.homology_dim(2).is_err());
    }

    #[test]
    fn shape_mismatch_rejected() {
        let r = ChainComplex::new(
            vec![Space::indexed("A", "a", 2), Space::indexed("B", "b", 3)],
            vec![BitMatrix::zeros(2, 2)],
            Orientation::Ascending,
        );
        assert!(r.is_err());
    }

    #[test]
    fn syndrome_rejected_on_augment() {
        let d_x = BitMatrix::from_entries(1, 2, [(0, 0)]).unwrap();
        let c = ChainComplex::css(BitMatrix::zeros(2, 0), d_x).unwrap();
        assert!(c.augment_with_logicals(&[BitVec::from_indices(2, [0])]).is_err());
        let aug = c.augment_with_logicals(&[BitVec::from_indices(2, [1])]).unwrap();
        assert_eq!(aug.homology_dim(1).unwrap(), 0);
    }
}
