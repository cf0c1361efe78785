use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Error;
use crate::gf2::{is_zero_product, BitMatrix};

/// An integer lattice point in the covering space.
pub type Point = Vec<i64>;

/// Shape of the top cells a complex is generated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    /// A k-cell is a set of k+1 points; facets drop one point.
    Simplex,
    /// A k-cell is the 2^k corners of an axis-aligned unit cube.
    Cube,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Canonical corner points in covering-space coordinates.
    pub points: Vec<Point>,
    /// Sorted indices of the 0-cells of this cell.
    pub vertices: Vec<usize>,
}

/// A cell complex on a (possibly periodic) lattice, generated by closing a
/// set of top cells under taking facets.
///
/// Cells are identified by their corner points up to translation by the
/// period, so distinct cells with coinciding vertex sets (small tori) stay
/// distinct.
#[derive(Clone, Debug)]
pub struct CellComplex {
    name: String,
    kind: CellKind,
    dim: usize,
    period: Option<Vec<i64>>,
    cells: Vec<Vec<Cell>>,
    /// `boundaries[d - 1]` is `∂_d`, rows indexed by (d-1)-cells.
    boundaries: Vec<BitMatrix>,
    colors: Option<Vec<u8>>,
}

/// Letter used for vertex color `c` (`a`, `b`, `c`, `d`, ...).
pub fn color_letter(c: u8) -> char {
    (b'a' + c) as char
}

fn wrap(p: &[i64], period: Option<&[i64]>) -> Point {
    match period {
        Some(per) => p.iter().zip(per).map(|(x, l)| x.rem_euclid(*l)).collect(),
        None => p.to_vec(),
    }
}

/// Representative of the translation class of a point set: the
/// lexicographically least sorted set among all translates that move one
/// of its points into the fundamental domain.
fn canonical(points: &[Point], period: Option<&[i64]>) -> Vec<Point> {
    let Some(per) = period else {
        let mut s = points.to_vec();
        s.sort();
        return s;
    };
    let mut best: Option<Vec<Point>> = None;
    for anchor in points {
        let w = wrap(anchor, Some(per));
        let shift: Vec<i64> = w.iter().zip(anchor).map(|(a, b)| a - b).collect();
        let mut s: Vec<Point> = points
            .iter()
            .map(|p| p.iter().zip(&shift).map(|(x, d)| x + d).collect())
            .collect();
        s.sort();
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    }
    best.unwrap_or_default()
}

fn cell_dim(kind: CellKind, npoints: usize) -> usize {
    match kind {
        CellKind::Simplex => npoints - 1,
        CellKind::Cube => npoints.trailing_zeros() as usize,
    }
}

fn facets(kind: CellKind, points: &[Point]) -> Vec<Vec<Point>> {
    match kind {
        CellKind::Simplex => (0..points.len())
            .map(|skip| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect(),
        CellKind::Cube => {
            let d = points[0].len();
            let mut out = Vec::new();
            for axis in 0..d {
                let lo = points.iter().map(|p| p[axis]).min().unwrap_or(0);
                let hi = points.iter().map(|p| p[axis]).max().unwrap_or(0);
                if lo == hi {
                    continue;
                }
                for side in [lo, hi] {
                    out.push(points.iter().filter(|p| p[axis] == side).cloned().collect());
                }
            }
            out
        }
    }
}

fn point_label(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Vertex color as a function of wrapped coordinates.
pub type VertexColoring = dyn Fn(&[i64]) -> u8;

impl CellComplex {
    /// Closes `tops` under facets. `color` assigns a color to each vertex
    /// given its wrapped coordinates.
    pub fn from_top_cells(
        name: &str,
        kind: CellKind,
        period: Option<Vec<i64>>,
        tops: &[Vec<Point>],
        color: Option<&VertexColoring>,
    ) -> Result<Self, Error> {
        let first = tops
            .first()
            .ok_or_else(|| Error::InvalidParameters("no top cells given".into()))?;
        let dim = cell_dim(kind, first.len());
        let per = period.as_deref();
        let mut levels: Vec<BTreeSet<Vec<Point>>> = vec![BTreeSet::new(); dim + 1];
        for t in tops {
            if cell_dim(kind, t.len()) != dim {
                return Err(Error::InvalidParameters("top cells of mixed dimension".into()));
            }
            levels[dim].insert(canonical(t, per));
        }
        for d in (1..=dim).rev() {
            let facet_keys: Vec<Vec<Point>> = levels[d]
                .iter()
                .flat_map(|c| facets(kind, c))
                .map(|f| canonical(&f, per))
                .collect();
            levels[d - 1].extend(facet_keys);
        }
        let keys: Vec<Vec<Vec<Point>>> = levels.into_iter().map(|s| s.into_iter().collect()).collect();
        let index: Vec<HashMap<&Vec<Point>, usize>> = keys
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();

        let mut boundaries = Vec::with_capacity(dim);
        for d in 1..=dim {
            let mut entries: BTreeSet<(usize, usize)> = BTreeSet::new();
            for (j, c) in keys[d].iter().enumerate() {
                for f in facets(kind, c) {
                    let i = index[d - 1][&canonical(&f, per)];
                    // Mod-2 incidence: a repeated facet cancels.
                    if !entries.remove(&(i, j)) {
                        entries.insert((i, j));
                    }
                }
            }
            boundaries.push(BitMatrix::from_entries(keys[d - 1].len(), keys[d].len(), entries)?);
        }

        let cells: Vec<Vec<Cell>> = keys
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|pts| {
                        let mut vertices: Vec<usize> = pts
                            .iter()
                            .map(|p| index[0][&vec![wrap(p, per)]])
                            .collect();
                        vertices.sort_unstable();
                        vertices.dedup();
                        Cell {
                            points: pts.clone(),
                            vertices,
                        }
                    })
                    .collect()
            })
            .collect();
        let colors = color.map(|f| cells[0].iter().map(|c| f(&c.points[0])).collect());
        let cc = CellComplex {
            name: name.to_string(),
            kind,
            dim,
            period,
            cells,
            boundaries,
            colors,
        };
        if !cc.is_valid() {
            return Err(Error::InvalidComplex(format!("{name}: boundary of boundary is nonzero")));
        }
        Ok(cc)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn period(&self) -> Option<&[i64]> {
        self.period.as_deref()
    }

    pub fn count(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, Vec::len)
    }

    pub fn cells(&self, d: usize) -> &[Cell] {
        &self.cells[d]
    }

    pub fn cell(&self, d: usize, i: usize) -> &Cell {
        &self.cells[d][i]
    }

    /// Index of the d-cell with the given corner points, if present.
    pub fn find_cell(&self, points: &[Point]) -> Option<usize> {
        let d = cell_dim(self.kind, points.len());
        let key = canonical(points, self.period.as_deref());
        self.cells.get(d)?.iter().position(|c| c.points == key)
    }

    pub fn label(&self, d: usize, i: usize) -> String {
        let c = &self.cells[d][i];
        let pts: Vec<String> = c.points.iter().map(|p| point_label(p)).collect();
        let prefix = ["v", "e", "f", "c"].get(d).copied().unwrap_or("k");
        format!("{prefix}{}", pts.join(""))
    }

    pub fn labels(&self, d: usize) -> Vec<String> {
        (0..self.count(d)).map(|i| self.label(d, i)).collect()
    }

    /// `∂_d`, mapping d-cells to (d-1)-cells.
    pub fn boundary(&self, d: usize) -> &BitMatrix {
        assert!(d >= 1 && d <= self.dim, "no boundary map ∂_{d} in dimension {}", self.dim);
        &self.boundaries[d - 1]
    }

    pub fn is_valid(&self) -> bool {
        self.boundaries.windows(2).all(|w| is_zero_product(&w[0], &w[1]))
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim)
            .map(|d| if d % 2 == 0 { self.count(d) as i64 } else { -(self.count(d) as i64) })
            .sum()
    }

    pub fn colors(&self) -> Option<&[u8]> {
        self.colors.as_deref()
    }

    pub fn vertex_color(&self, v: usize) -> Option<u8> {
        self.colors.as_ref().map(|c| c[v])
    }

    /// Sorted colors of the vertices of a cell.
    pub fn cell_colors(&self, d: usize, i: usize) -> Option<Vec<u8>> {
        let colors = self.colors.as_ref()?;
        let mut cs: Vec<u8> = self.cells[d][i].vertices.iter().map(|&v| colors[v]).collect();
        cs.sort_unstable();
        Some(cs)
    }

    /// Color class such as `"ac"` for a cell.
    pub fn color_name(&self, d: usize, i: usize) -> Option<String> {
        self.cell_colors(d, i)
            .map(|cs| cs.into_iter().map(color_letter).collect())
    }

    /// The l-cells contained in each k-cell (k > l), or containing it (k < l).
    ///
    /// Column `δ` of the result lists the related l-cells; rows index l-cells.
    pub fn generalized_boundary(&self, k: usize, l: usize) -> Result<BitMatrix, Error> {
        if k == l || k > self.dim || l > self.dim {
            return Err(Error::InvalidParameters(format!(
                "generalized boundary needs distinct dimensions within 0..={}, got {k} and {l}",
                self.dim
            )));
        }
        if k < l {
            return Ok(self.generalized_boundary(l, k)?.transpose());
        }
        // Union (not sum) of iterated facets.
        let mut current: Vec<BTreeSet<usize>> = (0..self.count(k)).map(|j| BTreeSet::from([j])).collect();
        for d in ((l + 1)..=k).rev() {
            let bnd = self.boundary(d).transpose();
            current = current
                .into_iter()
                .map(|set| set.iter().flat_map(|&c| bnd.row_support(c).iter().copied()).collect())
                .collect();
        }
        BitMatrix::from_entries(
            self.count(l),
            self.count(k),
            current
                .iter()
                .enumerate()
                .flat_map(|(j, set)| set.iter().map(move |&i| (i, j))),
        )
    }

    /// Sorted l-cells related to the k-cell `i` (contained in it for k > l,
    /// containing it for k < l).
    pub fn star(&self, k: usize, i: usize, l: usize) -> Vec<usize> {
        self.generalized_boundary(k, l)
            .expect("valid dimensions")
            .column(i)
            .support()
    }

    /// All stars `k → l` at once, indexed by k-cell.
    pub fn stars(&self, k: usize, l: usize) -> Vec<Vec<usize>> {
        let g = self.generalized_boundary(k, l).expect("valid dimensions");
        g.transpose().rows().iter().map(|r| r.support()).collect()
    }

    /// n-cells sharing a top cell with the k-cell `i` but no vertex with it.
    pub fn link(&self, n: usize, k: usize, i: usize) -> Vec<usize> {
        let tops: Vec<usize> = if k == self.dim {
            vec![i]
        } else {
            self.star(k, i, self.dim)
        };
        let own: BTreeSet<usize> = self.cells[k][i].vertices.iter().copied().collect();
        let within = if n == self.dim {
            None
        } else {
            Some(self.generalized_boundary(self.dim, n).expect("valid dimensions"))
        };
        let mut out = BTreeSet::new();
        for t in tops {
            let candidates: Vec<usize> = match &within {
                Some(g) => g.column(t).support(),
                None => vec![t],
            };
            for c in candidates {
                if self.cells[n][c].vertices.iter().all(|v| !own.contains(v)) {
                    out.insert(c);
                }
            }
        }
        out.into_iter().collect()
    }

    /// The subcomplex of cells whose vertex colors all lie in `colors`,
    /// with maps from new to old indices for every dimension.
    pub fn sublattice_with_map(&self, colors: &[u8]) -> Result<(CellComplex, Vec<Vec<usize>>), Error> {
        let cv = self
            .colors
            .as_ref()
            .ok_or_else(|| Error::InvalidParameters("sublattice needs a colored lattice".into()))?;
        let keep: Vec<Vec<usize>> = self
            .cells
            .iter()
            .map(|level| {
                (0..level.len())
                    .filter(|&i| level[i].vertices.iter().all(|&v| colors.contains(&cv[v])))
                    .collect()
            })
            .collect();
        let mut dim = self.dim;
        while dim > 0 && keep[dim].is_empty() {
            dim -= 1;
        }
        let new_index: Vec<HashMap<usize, usize>> = keep
            .iter()
            .map(|k| k.iter().enumerate().map(|(new, &old)| (old, new)).collect())
            .collect();
        let cells: Vec<Vec<Cell>> = (0..=dim)
            .map(|d| {
                keep[d]
                    .iter()
                    .map(|&old| {
                        let c = &self.cells[d][old];
                        Cell {
                            points: c.points.clone(),
                            vertices: c.vertices.iter().map(|v| new_index[0][v]).collect(),
                        }
                    })
                    .collect()
            })
            .collect();
        let boundaries = (1..=dim)
            .map(|d| {
                let b = self.boundary(d);
                BitMatrix::from_entries(
                    keep[d - 1].len(),
                    keep[d].len(),
                    keep[d].iter().enumerate().flat_map(|(j, &old)| {
                        b.column(old)
                            .iter_ones()
                            .filter_map(|i| new_index[d - 1].get(&i).map(|&ni| (ni, j)))
                            .collect::<Vec<_>>()
                    }),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sub_colors = keep[0].iter().map(|&v| cv[v]).collect();
        let letters: String = colors.iter().map(|&c| color_letter(c)).collect();
        let sub = CellComplex {
            name: format!("{}[{letters}]", self.name),
            kind: self.kind,
            dim,
            period: self.period.clone(),
            cells,
            boundaries,
            colors: Some(sub_colors),
        };
        let mut maps = keep;
        maps.truncate(dim + 1);
        Ok((sub, maps))
    }

    pub fn sublattice(&self, colors: &[u8]) -> Result<CellComplex, Error> {
        Ok(self.sublattice_with_map(colors)?.0)
    }

    /// Graphviz description of the incidence between d-cells and (d-1)-cells.
    /// For `d = 1` this is the 1-skeleton drawn as an ordinary graph.
    pub fn to_dot(&self, d: usize) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{}\" {{", self.name);
        if d == 1 {
            for v in 0..self.count(0) {
                let color = self
                    .vertex_color(v)
                    .map(|c| format!(", group=\"{}\"", color_letter(c)))
                    .unwrap_or_default();
                let _ = writeln!(s, "  v{v} [label=\"{}\"{color}];", self.label(0, v));
            }
            for (e, cell) in self.cells[1].iter().enumerate() {
                if let [a, b] = cell.vertices[..] {
                    let _ = writeln!(s, "  v{a} -- v{b} [label=\"e{e}\"];");
                }
            }
        } else {
            for i in 0..self.count(d - 1) {
                let _ = writeln!(s, "  a{i} [label=\"{}\"];", self.label(d - 1, i));
            }
            for j in 0..self.count(d) {
                let _ = writeln!(s, "  b{j} [label=\"{}\", shape=box];", self.label(d, j));
            }
            for (i, j) in self.boundary(d).entries() {
                let _ = writeln!(s, "  a{i} -- b{j};");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize)]
struct LatticeRepr<'a> {
    name: &'a str,
    kind: CellKind,
    dim: usize,
    period: Option<&'a [i64]>,
    cells: Vec<Vec<String>>,
    incidence: &'a [BitMatrix],
    colors: Option<Vec<String>>,
}

/// JSON export: cell labels per dimension, incidence matrices and vertex colors.
impl Serialize for CellComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LatticeRepr {
            name: &self.name,
            kind: self.kind,
            dim: self.dim,
            period: self.period.as_deref(),
            cells: (0..=self.dim).map(|d| self.labels(d)).collect(),
            incidence: &self.boundaries,
            colors: self
                .colors
                .as_ref()
                .map(|cs| cs.iter().map(|&c| color_letter(c).to_string()).collect()),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> CellComplex {
        let pts: Vec<Point> = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        CellComplex::from_top_cells("tet", CellKind::Simplex, None, &[pts], None).unwrap()
    }

    #[test]
    fn tetrahedron_counts_and_link() {
        let t = tetrahedron();
        assert_eq!([t.count(0), t.count(1), t.count(2), t.count(3)], [4, 6, 4, 1]);
        assert_eq!(t.star(3, 0, 1).len(), 6);
        for e in 0..6 {
            let l = t.link(1, 1, e);
            assert_eq!(l.len(), 1);
            let (a, b) = (&t.cell(1, e).vertices, &t.cell(1, l[0]).vertices);
            assert!(a.iter().all(|v| !b.contains(v)));
        }
        assert!(t.link(1, 3, 0).is_empty());
        assert!(t.generalized_boundary(2, 2).is_err());
    }

    #[test]
    fn small_torus_keeps_distinct_edges() {
        // A ring of length 2: two edges share both endpoints.
        let tops = vec![vec![vec![0], vec![1]], vec![vec![1], vec![2]]];
        let c = CellComplex::from_top_cells("ring", CellKind::Cube, Some(vec![2]), &tops, None).unwrap();
        assert_eq!(c.count(0), 2);
        assert_eq!(c.count(1), 2);
        assert!(c.boundary(1).mul_vec(&crate::gf2::BitVec::ones(2)).is_zero());
    }
}
