use crate::error::Error;
use crate::gf2::{complement_basis, BitVec};
use crate::hamiltonian::Hamiltonian;
use crate::pauli::PauliOp;

use super::cells::{CellComplex, CellKind, Point};
use super::code::CssSubsystemCode;

/// A code together with the lattice it was built on.
#[derive(Clone, Debug)]
pub struct LatticeCode {
    pub code: CssSubsystemCode,
    pub lattice: Option<CellComplex>,
    /// Dimension of the cells carrying qubits, when qubits are cells.
    pub qubit_dim: Option<usize>,
}

fn params(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

fn rows_of(m: &crate::gf2::BitMatrix) -> Vec<BitVec> {
    m.rows()
}

/// Periodic hypercubic lattice `(Z_L)^D` with unit cubes as cells.
pub fn hypercubic_torus(d: usize, l: usize) -> Result<CellComplex, Error> {
    if d == 0 || l < 2 {
        return Err(params(format!("hypercubic torus needs D >= 1 and L >= 2, got D={d}, L={l}")));
    }
    let li = l as i64;
    let mut tops = Vec::new();
    for idx in 0..l.pow(d as u32) {
        let base: Point = (0..d).map(|a| ((idx / l.pow(a as u32)) % l) as i64).collect();
        let corners: Vec<Point> = (0..(1usize << d))
            .map(|mask| {
                base.iter()
                    .enumerate()
                    .map(|(a, &x)| x + ((mask >> a) & 1) as i64)
                    .collect()
            })
            .collect();
        tops.push(corners);
    }
    CellComplex::from_top_cells(&format!("torus{d}d_L{l}"), CellKind::Cube, Some(vec![li; d]), &tops, None)
}

/// Toric code of type `k` on a cell complex: qubits on k-cells, X
/// stabilizers on (k-1)-cells, Z stabilizers on (k+1)-cells.
pub fn toric_from_complex(name: &str, lattice: CellComplex, k: usize) -> Result<LatticeCode, Error> {
    let d = lattice.dim();
    if k == 0 || k >= d {
        return Err(params(format!("toric type k must satisfy 1 <= k <= D-1, got k={k}, D={d}")));
    }
    let sx = rows_of(lattice.boundary(k));
    let sz = lattice.boundary(k + 1).columns();
    let n = lattice.count(k);
    let code = CssSubsystemCode::stabilizer(name, n, sx, sz)?
        .with_labels(lattice.labels(k))
        .with_meta("lattice", lattice.name())
        .with_meta("qubits_on", format!("{k}-cells"));
    Ok(LatticeCode {
        code,
        lattice: Some(lattice),
        qubit_dim: Some(k),
    })
}

/// Toric code of type `k` on the periodic D-dimensional hypercubic lattice.
pub fn build_toric(d: usize, l: usize, k: usize) -> Result<LatticeCode, Error> {
    if d < 2 || l < 2 || k == 0 || k >= d {
        return Err(params(format!(
            "toric code needs D >= 2, L >= 2, 1 <= k <= D-1; got D={d}, L={l}, k={k}"
        )));
    }
    let lattice = hypercubic_torus(d, l)?;
    toric_from_complex(&format!("toric(D={d},L={l},k={k})"), lattice, k)
}

/// Boundary of the octahedron: a 2-sphere with V=6, E=12, F=8.
pub fn octahedron_sphere() -> CellComplex {
    let axis = |a: usize, s: i64| -> Point {
        let mut p = vec![0; 3];
        p[a] = s;
        p
    };
    let mut tops = Vec::new();
    for sx in [-1, 1] {
        for sy in [-1, 1] {
            for sz in [-1, 1] {
                tops.push(vec![axis(0, sx), axis(1, sy), axis(2, sz)]);
            }
        }
    }
    CellComplex::from_top_cells("octahedron", CellKind::Simplex, None, &tops, None)
        .expect("octahedron is a valid complex")
}

pub fn build_toric_sphere() -> LatticeCode {
    toric_from_complex("toric(sphere)", octahedron_sphere(), 1).expect("sphere toric code")
}

/// Bacon-Shor code with its symmetry data.
#[derive(Clone, Debug)]
pub struct BaconShor {
    pub built: LatticeCode,
    /// Horizontal edges, in the order of `gauge_x`.
    pub horizontal_edges: Vec<usize>,
    /// Vertical edges, in the order of `gauge_z`.
    pub vertical_edges: Vec<usize>,
    /// Single-row Z representatives of the bare logical Z, one per row.
    pub row_z: Vec<BitVec>,
    /// Two-column X stabilizers, one per adjacent column pair.
    pub two_column_x: Vec<BitVec>,
}

pub(crate) fn edge_axis(lattice: &CellComplex, e: usize) -> usize {
    let pts = &lattice.cell(1, e).points;
    (0..pts[0].len()).find(|&a| pts[0][a] != pts[1][a]).expect("edge spans one axis")
}

/// Lower corner of an edge, wrapped into the fundamental domain.
pub(crate) fn edge_base(lattice: &CellComplex, e: usize) -> Point {
    let per = lattice.period().expect("periodic lattice");
    let p = &lattice.cell(1, e).points[0];
    p.iter().zip(per).map(|(x, l)| x.rem_euclid(*l)).collect()
}

/// Bacon-Shor code on the L×L torus: qubits on vertices, XX on horizontal
/// edges, ZZ on vertical edges. Coordinates are `(x, y)` = (column, row).
pub fn build_bacon_shor(l: usize) -> Result<BaconShor, Error> {
    if l < 2 {
        return Err(params(format!("Bacon-Shor needs L >= 2, got {l}")));
    }
    let lattice = hypercubic_torus(2, l)?;
    let n = lattice.count(0);
    let (horizontal_edges, vertical_edges): (Vec<usize>, Vec<usize>) =
        (0..lattice.count(1)).partition(|&e| edge_axis(&lattice, e) == 0);
    let support = |e: usize| BitVec::from_indices(n, lattice.cell(1, e).vertices.iter().copied());
    let gx: Vec<BitVec> = horizontal_edges.iter().map(|&e| support(e)).collect();
    let gz: Vec<BitVec> = vertical_edges.iter().map(|&e| support(e)).collect();
    let li = l as i64;
    let line = |axis: usize, values: &[i64]| -> BitVec {
        BitVec::from_indices(
            n,
            (0..n).filter(|&v| values.contains(&lattice.cell(0, v).points[0][axis])),
        )
    };
    let two_column_x: Vec<BitVec> = (0..li).map(|c| line(0, &[c, (c + 1) % li])).collect();
    let two_row_z: Vec<BitVec> = (0..li).map(|r| line(1, &[r, (r + 1) % li])).collect();
    let row_z: Vec<BitVec> = (0..li).map(|r| line(1, &[r])).collect();
    let code = CssSubsystemCode::subsystem(
        &format!("bacon-shor(L={l})"),
        n,
        gx,
        gz,
        Some((two_column_x.clone(), two_row_z)),
    )?
    .with_labels(lattice.labels(0))
    .with_meta("lattice", lattice.name())
    .with_meta("qubits_on", "vertices");
    Ok(BaconShor {
        built: LatticeCode {
            code,
            lattice: Some(lattice),
            qubit_dim: Some(0),
        },
        horizontal_edges,
        vertical_edges,
        row_z,
        two_column_x,
    })
}

/// Xu-Moore model: qubits on horizontal edges of the L×L torus.
#[derive(Clone, Debug)]
pub struct XuMoore {
    pub hamiltonian: Hamiltonian,
    /// Lattice edge of each qubit.
    pub qubit_edges: Vec<usize>,
    /// Row X operators (one per row of horizontal edges).
    pub row_symmetries: Vec<BitVec>,
    /// Column X operators (one per column of horizontal edges).
    pub column_symmetries: Vec<BitVec>,
    pub lattice: CellComplex,
}

/// Builds the Xu-Moore Hamiltonian directly: `X` on every horizontal edge
/// (`J_X`) and, for every vertex `(x, y)`, `Z` on the four horizontal edges
/// starting at `(x-1, y)`, `(x, y)`, `(x-1, y+1)`, `(x, y+1)` (`J_Z`).
pub fn build_xu_moore(l: usize) -> Result<XuMoore, Error> {
    if l < 2 {
        return Err(params(format!("Xu-Moore needs L >= 2, got {l}")));
    }
    let lattice = hypercubic_torus(2, l)?;
    let qubit_edges: Vec<usize> = (0..lattice.count(1)).filter(|&e| edge_axis(&lattice, e) == 0).collect();
    let n = qubit_edges.len();
    let li = l as i64;
    let base: Vec<Point> = qubit_edges.iter().map(|&e| edge_base(&lattice, e)).collect();
    let at = |x: i64, y: i64| -> usize {
        let p = vec![x.rem_euclid(li), y.rem_euclid(li)];
        base.iter().position(|b| *b == p).expect("horizontal edge exists")
    };
    let mut h = Hamiltonian::new(n);
    for q in 0..n {
        h.push(PauliOp::x_on(n, [q]), "J_X");
    }
    for v in 0..lattice.count(0) {
        let p = &lattice.cell(0, v).points[0];
        let (x, y) = (p[0], p[1]);
        h.push(
            PauliOp::z_on(n, [at(x - 1, y), at(x, y), at(x - 1, y + 1), at(x, y + 1)]),
            "J_Z",
        );
    }
    let row_symmetries = (0..li)
        .map(|r| BitVec::from_indices(n, (0..n).filter(|&q| base[q][1] == r)))
        .collect();
    let column_symmetries = (0..li)
        .map(|c| BitVec::from_indices(n, (0..n).filter(|&q| base[q][0] == c)))
        .collect();
    Ok(XuMoore {
        hamiltonian: h,
        qubit_edges,
        row_symmetries,
        column_symmetries,
        lattice,
    })
}

/// Rotation of the square torus exchanging the axes, as a qubit map from
/// vertical edges (in the order of `vertical`) to horizontal edges (in the
/// order of `horizontal`): the vertical edge at `(x, y)` goes to the
/// horizontal edge at `(y, x)`.
pub fn transpose_vertical_to_horizontal(lattice: &CellComplex, vertical: &[usize], horizontal: &[usize]) -> Vec<usize> {
    let hbase: Vec<Point> = horizontal.iter().map(|&e| edge_base(lattice, e)).collect();
    vertical
        .iter()
        .map(|&e| {
            let b = edge_base(lattice, e);
            let t = vec![b[1], b[0]];
            hbase.iter().position(|h| *h == t).expect("rotated edge exists")
        })
        .collect()
}

/// Three-colorable triangulated torus: vertices `(i, j)` mod L colored
/// `(i + j) mod 3`, triangles `{(i,j),(i+1,j),(i+1,j+1)}` and
/// `{(i,j),(i,j+1),(i+1,j+1)}`.
pub fn triangular_torus(l: usize) -> Result<CellComplex, Error> {
    if l < 3 || !l.is_multiple_of(3) {
        return Err(params(format!("triangular torus coloring needs L divisible by 3, got {l}")));
    }
    let li = l as i64;
    let mut tops = Vec::new();
    for i in 0..li {
        for j in 0..li {
            tops.push(vec![vec![i, j], vec![i + 1, j], vec![i + 1, j + 1]]);
            tops.push(vec![vec![i, j], vec![i, j + 1], vec![i + 1, j + 1]]);
        }
    }
    let color = |p: &[i64]| ((p[0] + p[1]).rem_euclid(3)) as u8;
    CellComplex::from_top_cells(&format!("triangular_L{l}"), CellKind::Simplex, Some(vec![li, li]), &tops, Some(&color))
}

/// Stabilizer color code on the triangular torus: qubits on triangles, X
/// and Z stabilizers on the 2-star of every vertex.
pub fn build_color_code_2d(l: usize) -> Result<LatticeCode, Error> {
    let lattice = triangular_torus(l)?;
    let n = lattice.count(2);
    let stars: Vec<BitVec> = lattice
        .stars(0, 2)
        .into_iter()
        .map(|s| BitVec::from_indices(n, s))
        .collect();
    let code = CssSubsystemCode::stabilizer(&format!("color2d(L={l})"), n, stars.clone(), stars)?
        .with_labels(lattice.labels(2))
        .with_meta("lattice", lattice.name())
        .with_meta("qubits_on", "triangles");
    Ok(LatticeCode {
        code,
        lattice: Some(lattice),
        qubit_dim: Some(2),
    })
}

/// Toric code on the two-colored sublattice of a three-colored 2D lattice:
/// qubits on the sublattice edges, X stars on its vertices and Z plaquettes
/// on the 1-links of the vertices of the missing color.
///
/// Returns the code and, per qubit, the parent-lattice edge it sits on.
pub fn build_toric_on_sublattice(parent: &CellComplex, colors: [u8; 2]) -> Result<(CssSubsystemCode, Vec<usize>), Error> {
    let parent_colors = parent
        .colors()
        .ok_or_else(|| params("sublattice toric code needs a colored lattice".into()))?;
    let (sub, maps) = parent.sublattice_with_map(&colors)?;
    if sub.dim() < 1 {
        return Err(params("sublattice has no edges".into()));
    }
    let edge_map = maps[1].clone();
    let n = edge_map.len();
    let sx = sub.boundary(1).rows();
    let local = |parent_edge: usize| edge_map.iter().position(|&e| e == parent_edge);
    let mut sz = Vec::new();
    for (w, cw) in parent_colors.iter().enumerate() {
        if colors.contains(cw) {
            continue;
        }
        let link = parent.link(1, 0, w);
        let idx: Option<Vec<usize>> = link.iter().map(|&e| local(e)).collect();
        let idx = idx.ok_or_else(|| params(format!("link of vertex {w} leaves the sublattice")))?;
        sz.push(BitVec::from_indices(n, idx));
    }
    let letters: String = colors.iter().map(|&c| super::color_letter(c)).collect();
    let code = CssSubsystemCode::stabilizer(&format!("toric[{letters}]({})", parent.name()), n, sx, sz)?
        .with_labels(sub.labels(1))
        .with_meta("lattice", sub.name());
    Ok((code, edge_map))
}

/// Gauge color code lattice on the 3-torus in doubled coordinates (period 2L):
/// cube corners at even points (colors a/b by parity of the cube index sum),
/// cube centers at odd points (colors c/d). Every face of the cubic lattice,
/// with the two centers next to it, is split into 4 tetrahedra, one per face edge.
pub fn gcc_lattice(l: usize) -> Result<CellComplex, Error> {
    if l < 2 || !l.is_multiple_of(2) {
        return Err(params(format!("gauge color code lattice needs even L >= 2, got {l}")));
    }
    let li = l as i64;
    let unit = |a: usize| -> Point {
        let mut p = vec![0; 3];
        p[a] = 1;
        p
    };
    let add = |p: &Point, q: &Point, s: i64| -> Point { p.iter().zip(q).map(|(a, b)| a + s * b).collect() };
    let mut tops = Vec::new();
    for i in 0..li {
        for j in 0..li {
            for k in 0..li {
                let p: Point = vec![2 * i, 2 * j, 2 * k];
                for normal in 0..3 {
                    let e1 = unit((normal + 1) % 3);
                    let e2 = unit((normal + 2) % 3);
                    let en = unit(normal);
                    let p1 = add(&p, &e1, 2);
                    let p2 = add(&p, &e2, 2);
                    let p12 = add(&p1, &e2, 2);
                    let f = add(&add(&p, &e1, 1), &e2, 1);
                    let (c_plus, c_minus) = (add(&f, &en, 1), add(&f, &en, -1));
                    for (u, w) in [(&p, &p1), (&p, &p2), (&p1, &p12), (&p2, &p12)] {
                        tops.push(vec![u.clone(), w.clone(), c_plus.clone(), c_minus.clone()]);
                    }
                }
            }
        }
    }
    let color = |p: &[i64]| -> u8 {
        let odd = p[0].rem_euclid(2) == 1;
        let s: i64 = p.iter().map(|&x| x.div_euclid(2)).sum();
        (if odd { 2 } else { 0 }) + (s.rem_euclid(2) as u8)
    };
    CellComplex::from_top_cells(
        &format!("gcc_L{l}"),
        CellKind::Simplex,
        Some(vec![2 * li; 3]),
        &tops,
        Some(&color),
    )
}

/// 3D gauge color code: qubits on tetrahedra, X and Z gauge generators on the
/// 3-star of every edge, stabilizers on the 3-star of every vertex.
pub fn build_gcc(l: usize) -> Result<LatticeCode, Error> {
    let lattice = gcc_lattice(l)?;
    let n = lattice.count(3);
    let edge_stars: Vec<BitVec> = lattice
        .stars(1, 3)
        .into_iter()
        .map(|s| BitVec::from_indices(n, s))
        .collect();
    let vertex_stars: Vec<BitVec> = lattice
        .stars(0, 3)
        .into_iter()
        .map(|s| BitVec::from_indices(n, s))
        .collect();
    // On the 3-torus the center also holds non-local elements beyond the
    // vertex stars; they are appended after the vertex stars.
    let mut code = CssSubsystemCode::subsystem(&format!("gcc(L={l})"), n, edge_stars.clone(), edge_stars, None)?;
    let extra_x = complement_basis(n, &vertex_stars, &code.stabilizer_x);
    let extra_z = complement_basis(n, &vertex_stars, &code.stabilizer_z);
    let extra = extra_x.len();
    code.stabilizer_x = vertex_stars.iter().cloned().chain(extra_x).collect();
    code.stabilizer_z = vertex_stars.into_iter().chain(extra_z).collect();
    let code = code
    .with_meta("global_stabilizers", extra)
    .with_labels(lattice.labels(3))
    .with_meta("lattice", lattice.name())
    .with_meta("qubits_on", "tetrahedra");
    Ok(LatticeCode {
        code,
        lattice: Some(lattice),
        qubit_dim: Some(3),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FractalBoundary {
    Periodic,
    /// Open in the y direction: sites outside `0..L` are dropped.
    OpenY,
}

/// Site indexing of the fractal code on an L×L×L cubic lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FractalGeometry {
    pub l: usize,
    pub boundary: FractalBoundary,
}

impl FractalGeometry {
    pub fn sites(&self) -> usize {
        self.l.pow(3)
    }

    /// Site index of `(x, y, z)`, wrapping periodic directions; `None` when
    /// `y` falls off an open boundary.
    pub fn site(&self, x: i64, y: i64, z: i64) -> Option<usize> {
        let l = self.l as i64;
        let y = match self.boundary {
            FractalBoundary::Periodic => y.rem_euclid(l),
            FractalBoundary::OpenY if (0..l).contains(&y) => y,
            FractalBoundary::OpenY => return None,
        };
        Some((x.rem_euclid(l) + l * (y + l * z.rem_euclid(l))) as usize)
    }

    pub fn coords(&self, v: usize) -> (i64, i64, i64) {
        let l = self.l;
        ((v % l) as i64, ((v / l) % l) as i64, (v / (l * l)) as i64)
    }

    /// Qubit index of sublattice `A` (0) or `B` (1) at site `v`.
    pub fn qubit(v: usize, sub: usize) -> usize {
        2 * v + sub
    }
}

/// Fractal code data.
#[derive(Clone, Debug)]
pub struct Fractal {
    pub built: LatticeCode,
    pub geometry: FractalGeometry,
}

/// Two-qubit-per-site fractal code with
/// `S_v^X = X^A{v, v-z} X^B{v, v-x, v-y}` and
/// `S_v^Z = Z^A{v, v+x, v+y} Z^B{v, v+z}`; stabilizer `i` belongs to site `i`.
pub fn build_fractal_code(l: usize, boundary: FractalBoundary) -> Result<Fractal, Error> {
    if l < 3 {
        return Err(params(format!("fractal code needs L >= 3, got {l}")));
    }
    let g = FractalGeometry { l, boundary };
    let n = 2 * g.sites();
    let mut sx = Vec::with_capacity(g.sites());
    let mut sz = Vec::with_capacity(g.sites());
    for v in 0..g.sites() {
        let (x, y, z) = g.coords(v);
        let pick = |sub: usize, offs: &[(i64, i64, i64)]| -> Vec<usize> {
            offs.iter()
                .filter_map(|&(dx, dy, dz)| g.site(x + dx, y + dy, z + dz))
                .map(|w| FractalGeometry::qubit(w, sub))
                .collect()
        };
        let mut xs = pick(0, &[(0, 0, 0), (0, 0, -1)]);
        xs.extend(pick(1, &[(0, 0, 0), (-1, 0, 0), (0, -1, 0)]));
        let mut zs = pick(0, &[(0, 0, 0), (1, 0, 0), (0, 1, 0)]);
        zs.extend(pick(1, &[(0, 0, 0), (0, 0, 1)]));
        sx.push(BitVec::from_indices(n, xs));
        sz.push(BitVec::from_indices(n, zs));
    }
    let labels = (0..n)
        .map(|q| {
            let (x, y, z) = g.coords(q / 2);
            format!("{}({x},{y},{z})", if q % 2 == 0 { 'A' } else { 'B' })
        })
        .collect();
    let tag = match boundary {
        FractalBoundary::Periodic => "periodic",
        FractalBoundary::OpenY => "open_y",
    };
    let code = CssSubsystemCode::stabilizer(&format!("fractal(L={l},{tag})"), n, sx, sz)?
        .with_labels(labels)
        .with_meta("boundary", tag);
    let lattice = match boundary {
        FractalBoundary::Periodic => Some(hypercubic_torus(3, l)?),
        FractalBoundary::OpenY => None,
    };
    Ok(Fractal {
        built: LatticeCode {
            code,
            lattice,
            qubit_dim: None,
        },
        geometry: g,
    })
}

/// Hamiltonian `-J_X Σ X(gauge) - J_Z Σ Z(gauge)` of a CSS code.
pub fn gauge_hamiltonian(code: &CssSubsystemCode) -> Hamiltonian {
    let mut h = Hamiltonian::new(code.n);
    for x in &code.gauge_x {
        h.push(PauliOp::x_type(x.clone()), "J_X");
    }
    for z in &code.gauge_z {
        h.push(PauliOp::z_type(z.clone()), "J_Z");
    }
    h
}

/// Hamiltonian built from the stabilizer generators of a CSS code.
pub fn stabilizer_hamiltonian(code: &CssSubsystemCode) -> Hamiltonian {
    let mut h = Hamiltonian::new(code.n);
    for x in &code.stabilizer_x {
        h.push(PauliOp::x_type(x.clone()), "J_X");
    }
    for z in &code.stabilizer_z {
        h.push(PauliOp::z_type(z.clone()), "J_Z");
    }
    h
}
