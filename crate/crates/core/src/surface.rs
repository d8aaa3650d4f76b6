//! Fat-graph model of the fiber surface of a torus knot.
//!
//! The surface is the ribbon graph on the complete bipartite graph between
//! `p` horizontal flaps (0-handles) and `q` vertical flaps, with one band
//! (1-handle) for every pair `(m, n)`. Each vertex carries a cyclic order of
//! edge ends which determines the thickening, hence the boundary pattern and
//! the intersection form on `H_1`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::params::{ParamError, TorusKnotParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("edge {edge} end {end:?} is missing from the rotation at vertex {vertex}")]
    MissingDart { edge: usize, end: EdgeEnd, vertex: usize },
    #[error("rotation at vertex {vertex} lists a dart that does not belong there: {dart:?}")]
    ForeignDart { vertex: usize, dart: Dart },
    #[error("edge {edge} references vertex {vertex}, which does not exist")]
    DanglingEdge { edge: usize, vertex: usize },
    #[error("coefficient vector has length {got}, surface has {expected} edges")]
    WrongLength { expected: usize, got: usize },
    #[error("chain is not a cycle: net flow {flow} at vertex {vertex}")]
    NotACycle { vertex: usize, flow: i64 },
    #[error("the zero cycle has no Dehn twist")]
    ZeroCycle,
    #[error("operation needs a torus-knot surface built by build_seifert_surface")]
    NotTorusSurface,
    #[error("integer overflow in cycle arithmetic")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    Horizontal(u32),
    Vertical(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeEnd {
    Tail,
    Head,
}

/// One end of an edge (a half-edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub edge: usize,
    pub end: EdgeEnd,
}

impl Dart {
    pub fn tail(edge: usize) -> Self {
        Dart { edge, end: EdgeEnd::Tail }
    }

    pub fn head(edge: usize) -> Self {
        Dart { edge, end: EdgeEnd::Head }
    }

    pub fn opposite(self) -> Self {
        let end = match self.end {
            EdgeEnd::Tail => EdgeEnd::Head,
            EdgeEnd::Head => EdgeEnd::Tail,
        };
        Dart { edge: self.edge, end }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Counterclockwise order of the darts incident to this vertex.
    pub cyclic_order: Vec<Dart>,
}

/// Edges are oriented tail to head; for torus surfaces the tail is the
/// horizontal flap `m` and the head the vertical flap `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub label: (u32, u32),
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonSurface {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Set when the surface is the torus-knot fiber for these parameters.
    torus: Option<TorusKnotParams>,
}

/// Result of tracing the boundary of a fat graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryTrace {
    pub count: usize,
    /// Each walk lists the darts it leaves from, in order. Isolated vertices
    /// bound a disk and contribute an empty walk.
    pub walks: Vec<Vec<Dart>>,
}

/// Integer 1-chain on the edges with zero net flow at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    pub coefficients: Vec<i64>,
}

/// A twist curve `γ_{row,col}`: the boundary of the square cell spanned by
/// bands `(row,col)`, `(row+1,col)`, `(row+1,col+1)`, `(row,col+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCurve {
    pub row: u32,
    pub col: u32,
    pub cycle: Cycle,
}

/// Fundamental-cycle basis of the cycle space relative to a spanning
/// forest. The coordinates of a cycle are its coefficients on the cotree
/// edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleBasis {
    pub tag: String,
    pub cotree_edges: Vec<usize>,
    pub cycles: Vec<Cycle>,
}

impl RibbonSurface {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, SurfaceError> {
        let surface = RibbonSurface {
            vertices,
            edges,
            torus: None,
        };
        surface.check_rotations()?;
        Ok(surface)
    }

    fn check_rotations(&self) -> Result<(), SurfaceError> {
        let mut location: Vec<[Option<usize>; 2]> = vec![[None, None]; self.edges.len()];
        for (v, vertex) in self.vertices.iter().enumerate() {
            for &dart in &vertex.cyclic_order {
                if dart.edge >= self.edges.len() || self.dart_vertex(dart) != v {
                    return Err(SurfaceError::ForeignDart { vertex: v, dart });
                }
                let slot = &mut location[dart.edge][dart.end as usize];
                if slot.is_some() {
                    return Err(SurfaceError::ForeignDart { vertex: v, dart });
                }
                *slot = Some(v);
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            for (end, vertex) in [(EdgeEnd::Tail, edge.tail), (EdgeEnd::Head, edge.head)] {
                if vertex >= self.vertices.len() {
                    return Err(SurfaceError::DanglingEdge { edge: e, vertex });
                }
                if location[e][end as usize].is_none() {
                    return Err(SurfaceError::MissingDart { edge: e, end, vertex });
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn torus_params(&self) -> Option<TorusKnotParams> {
        self.torus
    }

    pub fn dart_vertex(&self, dart: Dart) -> usize {
        let e = &self.edges[dart.edge];
        match dart.end {
            EdgeEnd::Tail => e.tail,
            EdgeEnd::Head => e.head,
        }
    }

    /// Index of band `(m, n)` on a torus surface.
    pub fn band(&self, m: u32, n: u32) -> Option<usize> {
        let t = self.torus?;
        (m < t.p && n < t.q).then(|| (m * t.q + n) as usize)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    pub fn connected_components(&self) -> usize {
        let (_, roots) = self.spanning_forest();
        roots
    }

    pub fn betti_one(&self) -> usize {
        self.edges.len() + self.connected_components() - self.vertices.len()
    }

    /// Genus of a connected surface from `χ = 2 - 2g - b`.
    pub fn genus(&self) -> usize {
        let b = self.boundary_components().count as i64;
        let chi = self.euler_characteristic();
        ((2 * self.connected_components() as i64 - chi - b) / 2) as usize
    }

    fn rotation_successor(&self) -> Vec<[Dart; 2]> {
        let mut next = vec![[Dart::tail(0); 2]; self.edges.len()];
        for vertex in &self.vertices {
            let order = &vertex.cyclic_order;
            for (i, &d) in order.iter().enumerate() {
                next[d.edge][d.end as usize] = order[(i + 1) % order.len()];
            }
        }
        next
    }

    /// Traces boundary walks: leave along a dart, arrive at the far end,
    /// continue with the next dart counterclockwise at the arrival vertex.
    pub fn boundary_components(&self) -> BoundaryTrace {
        let next = self.rotation_successor();
        let mut seen = vec![[false; 2]; self.edges.len()];
        let mut walks = Vec::new();
        for vertex in &self.vertices {
            if vertex.cyclic_order.is_empty() {
                walks.push(Vec::new());
                continue;
            }
            for &start in &vertex.cyclic_order {
                if seen[start.edge][start.end as usize] {
                    continue;
                }
                let mut walk = Vec::new();
                let mut d = start;
                while !seen[d.edge][d.end as usize] {
                    seen[d.edge][d.end as usize] = true;
                    walk.push(d);
                    let arrive = d.opposite();
                    d = next[arrive.edge][arrive.end as usize];
                }
                walks.push(walk);
            }
        }
        BoundaryTrace {
            count: walks.len(),
            walks,
        }
    }

    /// BFS spanning forest exploring darts in rotation order. Returns, for
    /// every vertex, the tree edge towards its parent, plus the number of
    /// trees.
    fn spanning_forest(&self) -> (Vec<Option<Dart>>, usize) {
        let mut parent: Vec<Option<Dart>> = vec![None; self.vertices.len()];
        let mut visited = vec![false; self.vertices.len()];
        let mut roots = 0;
        for root in 0..self.vertices.len() {
            if visited[root] {
                continue;
            }
            roots += 1;
            visited[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &d in &self.vertices[v].cyclic_order {
                    let w = self.dart_vertex(d.opposite());
                    if !visited[w] {
                        visited[w] = true;
                        // dart at w pointing back up the tree
                        parent[w] = Some(d.opposite());
                        queue.push_back(w);
                    }
                }
            }
        }
        (parent, roots)
    }

    /// Chain of the tree path from `v` up to its root, oriented upwards.
    fn path_to_root(&self, parent: &[Option<Dart>], mut v: usize, chain: &mut [i64], sign: i64) {
        while let Some(d) = parent[v] {
            chain[d.edge] += match d.end {
                EdgeEnd::Tail => sign,
                EdgeEnd::Head => -sign,
            };
            v = self.dart_vertex(d.opposite());
        }
    }

    /// Fundamental cycles of the BFS spanning forest, one per cotree edge,
    /// in edge order. The rank is the first Betti number.
    pub fn cycle_basis(&self) -> CycleBasis {
        let (parent, _) = self.spanning_forest();
        let tree: Vec<bool> = {
            let mut t = vec![false; self.edges.len()];
            for d in parent.iter().flatten() {
                t[d.edge] = true;
            }
            t
        };
        let mut cotree_edges = Vec::new();
        let mut cycles = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if tree[e] {
                continue;
            }
            let mut chain = vec![0i64; self.edges.len()];
            chain[e] += 1;
            self.path_to_root(&parent, edge.head, &mut chain, 1);
            self.path_to_root(&parent, edge.tail, &mut chain, -1);
            cotree_edges.push(e);
            cycles.push(Cycle { coefficients: chain });
        }
        let tag = match self.torus {
            Some(t) => format!("fundamental-cycles/T({},{})", t.p, t.q),
            None => format!(
                "fundamental-cycles/V{}E{}",
                self.vertices.len(),
                self.edges.len()
            ),
        };
        CycleBasis {
            tag,
            cotree_edges,
            cycles,
        }
    }

    pub fn cycle(&self, coefficients: Vec<i64>) -> Result<Cycle, SurfaceError> {
        let c = Cycle { coefficients };
        self.check_cycle(&c)?;
        Ok(c)
    }

    pub fn check_cycle(&self, c: &Cycle) -> Result<(), SurfaceError> {
        if c.coefficients.len() != self.edges.len() {
            return Err(SurfaceError::WrongLength {
                expected: self.edges.len(),
                got: c.coefficients.len(),
            });
        }
        let mut flow = vec![0i64; self.vertices.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            let x = c.coefficients[e];
            flow[edge.tail] = flow[edge.tail].checked_add(x).ok_or(SurfaceError::Overflow)?;
            flow[edge.head] = flow[edge.head].checked_sub(x).ok_or(SurfaceError::Overflow)?;
        }
        match flow.iter().position(|&f| f != 0) {
            Some(vertex) => Err(SurfaceError::NotACycle {
                vertex,
                flow: flow[vertex],
            }),
            None => Ok(()),
        }
    }

    /// Net flow of `c` out of its vertex through `dart`.
    fn outflow(c: &Cycle, dart: Dart) -> i64 {
        match dart.end {
            EdgeEnd::Tail => c.coefficients[dart.edge],
            EdgeEnd::Head => -c.coefficients[dart.edge],
        }
    }

    /// Algebraic intersection number `⟨a, b⟩`.
    ///
    /// Inside each vertex disk the two cycles are relative 1-chains, so
    /// their intersection is the linking number of their boundary 0-chains
    /// on the disk's boundary circle. `a` meets the circle at the centre of
    /// each edge end; `b` is pushed off to the right of its direction of
    /// travel, i.e. just clockwise of the edge end where it leaves and just
    /// counterclockwise where it arrives. A strand running west to east
    /// crossing one running south to north counts `+1`.
    pub fn intersection_number(&self, a: &Cycle, b: &Cycle) -> Result<i64, SurfaceError> {
        self.check_cycle(a)?;
        self.check_cycle(b)?;
        let mut total: i64 = 0;
        let mut points: Vec<(usize, bool, i64)> = Vec::new();
        for vertex in &self.vertices {
            points.clear();
            for (k, &d) in vertex.cyclic_order.iter().enumerate() {
                let fa = Self::outflow(a, d);
                let fb = Self::outflow(b, d);
                if fa != 0 {
                    points.push((3 * k + 1, true, fa));
                }
                if fb != 0 {
                    let pos = if fb > 0 { 3 * k } else { 3 * k + 2 };
                    points.push((pos, false, fb));
                }
            }
            points.sort_unstable();
            let mut winding: i64 = 0;
            for &(_, is_a, w) in &points {
                if is_a {
                    winding += w;
                } else {
                    let term = w.checked_mul(winding).ok_or(SurfaceError::Overflow)?;
                    total = total.checked_add(term).ok_or(SurfaceError::Overflow)?;
                }
            }
        }
        Ok(total)
    }

    /// Gram matrix of the intersection form in the given basis.
    pub fn gram_matrix(&self, basis: &CycleBasis) -> IntMatrix {
        let n = basis.cycles.len();
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = self
                    .intersection_number(&basis.cycles[i], &basis.cycles[j])
                    .expect("basis elements are cycles");
                g[(i, j)] = BigInt::from(x);
            }
        }
        g
    }

    /// The `(p-1)(q-1)` square-cell curves, row-major in `(row, col)`.
    pub fn twist_curves(&self) -> Result<Vec<TwistCurve>, SurfaceError> {
        let t = self.torus.ok_or(SurfaceError::NotTorusSurface)?;
        let mut curves = Vec::with_capacity(t.betti_one());
        for i in 0..t.p - 1 {
            for j in 0..t.q - 1 {
                let mut c = vec![0i64; self.edges.len()];
                c[self.band(i, j).unwrap()] += 1;
                c[self.band(i + 1, j).unwrap()] -= 1;
                c[self.band(i + 1, j + 1).unwrap()] += 1;
                c[self.band(i, j + 1).unwrap()] -= 1;
                curves.push(TwistCurve {
                    row: i,
                    col: j,
                    cycle: Cycle { coefficients: c },
                });
            }
        }
        Ok(curves)
    }
}

impl Cycle {
    pub fn zero(edges: usize) -> Self {
        Cycle {
            coefficients: vec![0; edges],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&x| x == 0)
    }

    /// Nonzero with coprime coefficients.
    pub fn is_primitive(&self) -> bool {
        self.coefficients.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
    }

    pub fn add_scaled(&self, other: &Cycle, k: i64) -> Cycle {
        Cycle {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + k * b)
                .collect(),
        }
    }
}

impl CycleBasis {
    pub fn rank(&self) -> usize {
        self.cycles.len()
    }

    pub fn coordinates(&self, c: &Cycle) -> Vec<BigInt> {
        self.cotree_edges
            .iter()
            .map(|&e| BigInt::from(c.coefficients[e]))
            .collect()
    }

    pub fn combine(&self, coords: &[i64]) -> Cycle {
        assert_eq!(coords.len(), self.cycles.len());
        let edges = self.cycles.first().map_or(0, |c| c.coefficients.len());
        coords
            .iter()
            .zip(&self.cycles)
            .fold(Cycle::zero(edges), |acc, (&k, c)| acc.add_scaled(c, k))
    }
}

/// Builds the plumbed fiber surface of the `(p,q)` torus knot.
///
/// Horizontal flap `m` carries bands `(m,0), …, (m,q-1)` counterclockwise;
/// vertical flap `n` carries `(p-1,n), …, (0,n)` (decreasing `m`). This
/// thickening has a single boundary component and makes the product of
/// positive twists along the cell curves agree with the rotation
/// `(m,n) ↦ (m+1,n-1)` on homology.
pub fn build_seifert_surface(params: TorusKnotParams) -> Result<RibbonSurface, ParamError> {
    params.validate()?;
    let (p, q) = (params.p, params.q);
    let band = |m: u32, n: u32| (m * q + n) as usize;
    let mut edges = Vec::with_capacity(params.bands());
    for m in 0..p {
        for n in 0..q {
            edges.push(Edge {
                label: (m, n),
                tail: m as usize,
                head: (p + n) as usize,
            });
        }
    }
    let mut vertices = Vec::with_capacity((p + q) as usize);
    for m in 0..p {
        vertices.push(Vertex {
            kind: VertexKind::Horizontal(m),
            cyclic_order: (0..q).map(|n| Dart::tail(band(m, n))).collect(),
        });
    }
    for n in 0..q {
        vertices.push(Vertex {
            kind: VertexKind::Vertical(n),
            cyclic_order: (0..p).rev().map(|m| Dart::head(band(m, n))).collect(),
        });
    }
    Ok(RibbonSurface {
        vertices,
        edges,
        torus: Some(params),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trefoil() -> RibbonSurface {
        build_seifert_surface(TorusKnotParams::new(2, 3).unwrap()).unwrap()
    }

    #[test]
    fn trefoil_counts() {
        let s = trefoil();
        assert_eq!(s.vertices().len(), 5);
        assert_eq!(s.edges().len(), 6);
        assert_eq!(s.euler_characteristic(), -1);
        assert_eq!(s.boundary_components().count, 1);
        assert_eq!(s.genus(), 1);
        assert_eq!(s.betti_one(), 2);
    }

    #[test]
    fn three_four_counts() {
        let s = build_seifert_surface(TorusKnotParams::new(3, 4).unwrap()).unwrap();
        assert_eq!(s.betti_one(), 6);
        assert_eq!(s.genus(), 3);
        assert_eq!(s.euler_characteristic(), -5);
        assert_eq!(s.cycle_basis().rank(), 6);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(build_seifert_surface(TorusKnotParams { p: 2, q: 2, k: 0 }).is_err());
        assert!(build_seifert_surface(TorusKnotParams { p: 1, q: 3, k: 0 }).is_err());
    }

    #[test]
    fn isolated_vertex_is_a_disk() {
        let s = RibbonSurface::new(
            vec![Vertex {
                kind: VertexKind::Horizontal(0),
                cyclic_order: vec![],
            }],
            vec![],
        )
        .unwrap();
        assert_eq!(s.boundary_components().count, 1);
        assert_eq!(s.genus(), 0);
        assert_eq!(s.cycle_basis().rank(), 0);
    }

    /// One vertex with two loops interleaved (a, b, a', b') is a punctured
    /// torus; nested (a, a', b, b') is a pair of pants.
    #[test]
    fn one_vertex_two_loops() {
        let edges = vec![
            Edge { label: (0, 0), tail: 0, head: 0 },
            Edge { label: (0, 1), tail: 0, head: 0 },
        ];
        let torus = RibbonSurface::new(
            vec![Vertex {
                kind: VertexKind::Horizontal(0),
                cyclic_order: vec![Dart::tail(0), Dart::tail(1), Dart::head(0), Dart::head(1)],
            }],
            edges.clone(),
        )
        .unwrap();
        assert_eq!(torus.boundary_components().count, 1);
        assert_eq!(torus.genus(), 1);
        let a = torus.cycle(vec![1, 0]).unwrap();
        let b = torus.cycle(vec![0, 1]).unwrap();
        assert_eq!(torus.intersection_number(&a, &b).unwrap().abs(), 1);

        let pants = RibbonSurface::new(
            vec![Vertex {
                kind: VertexKind::Horizontal(0),
                cyclic_order: vec![Dart::tail(0), Dart::head(0), Dart::tail(1), Dart::head(1)],
            }],
            edges,
        )
        .unwrap();
        assert_eq!(pants.boundary_components().count, 3);
        assert_eq!(pants.genus(), 0);
        let a = pants.cycle(vec![1, 0]).unwrap();
        let b = pants.cycle(vec![0, 1]).unwrap();
        assert_eq!(pants.intersection_number(&a, &b).unwrap(), 0);
    }

    #[test]
    fn malformed_rotation_is_rejected() {
        let edges = vec![Edge { label: (0, 0), tail: 0, head: 1 }];
        let v = |kind, order| Vertex { kind, cyclic_order: order };
        let missing = RibbonSurface::new(
            vec![
                v(VertexKind::Horizontal(0), vec![Dart::tail(0)]),
                v(VertexKind::Vertical(0), vec![]),
            ],
            edges.clone(),
        );
        assert!(matches!(missing, Err(SurfaceError::MissingDart { .. })));
        let foreign = RibbonSurface::new(
            vec![
                v(VertexKind::Horizontal(0), vec![Dart::tail(0), Dart::head(0)]),
                v(VertexKind::Vertical(0), vec![]),
            ],
            edges,
        );
        assert!(matches!(foreign, Err(SurfaceError::ForeignDart { .. })));
    }

    #[test]
    fn l25_has_one_boundary() {
        let s = build_seifert_surface(TorusKnotParams::new(2, 5).unwrap()).unwrap();
        assert_eq!(s.boundary_components().count, 1);
        let trace = s.boundary_components();
        assert_eq!(trace.walks[0].len(), 20);
    }

    #[test]
    fn trefoil_twist_curves_meet_once() {
        let s = trefoil();
        let curves = s.twist_curves().unwrap();
        assert_eq!(curves.len(), 2);
        let (g1, g2) = (&curves[0].cycle, &curves[1].cycle);
        let x = s.intersection_number(g1, g2).unwrap();
        assert_eq!(x.abs(), 1);
        assert_eq!(s.intersection_number(g2, g1).unwrap(), -x);
        assert_eq!(s.intersection_number(g1, g1).unwrap(), 0);
        assert!(g1.is_primitive() && g2.is_primitive());
    }

    #[test]
    fn disjoint_cells_do_not_meet() {
        // γ_{0,0} and γ_{0,2} share only H0 and H1, γ_{0,0} and γ_{1,2} only
        // H1; in neither flap are the strands interleaved.
        let s = build_seifert_surface(TorusKnotParams::new(3, 5).unwrap()).unwrap();
        let curves = s.twist_curves().unwrap();
        let find = |r, c| &curves.iter().find(|t| t.row == r && t.col == c).unwrap().cycle;
        assert_eq!(s.intersection_number(find(0, 0), find(1, 2)).unwrap(), 0);
        assert_eq!(s.intersection_number(find(0, 0), find(0, 2)).unwrap(), 0);
    }

    #[test]
    fn non_cycle_rejected() {
        let s = trefoil();
        let mut c = vec![0; 6];
        c[0] = 1;
        let bad = Cycle { coefficients: c };
        let good = s.cycle_basis().cycles[0].clone();
        assert!(matches!(
            s.intersection_number(&bad, &good),
            Err(SurfaceError::NotACycle { .. })
        ));
        assert!(matches!(s.cycle(vec![1, 2]), Err(SurfaceError::WrongLength { .. })));
    }

    #[test]
    fn gram_matrix_is_unimodular() {
        for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5)] {
            let s = build_seifert_surface(TorusKnotParams::new(p, q).unwrap()).unwrap();
            let g = s.gram_matrix(&s.cycle_basis());
            assert_eq!(g, {
                let mut neg = g.transpose();
                for i in 0..neg.rows() {
                    for j in 0..neg.cols() {
                        neg[(i, j)] = -neg[(i, j)].clone();
                    }
                }
                neg
            });
            let det = g.determinant();
            assert!(det == BigInt::from(1) || det == BigInt::from(-1), "({p},{q}) det {det}");
        }
    }

    #[test]
    fn twist_curves_span_full_rank() {
        for (p, q) in [(2, 3), (3, 4), (3, 5)] {
            let s = build_seifert_surface(TorusKnotParams::new(p, q).unwrap()).unwrap();
            let basis = s.cycle_basis();
            let cols: Vec<Vec<BigInt>> = s
                .twist_curves()
                .unwrap()
                .iter()
                .map(|t| basis.coordinates(&t.cycle))
                .collect();
            let m = IntMatrix::from_columns(basis.rank(), &cols);
            assert_ne!(m.determinant(), BigInt::from(0));
        }
    }

    proptest! {
        #[test]
        fn intersection_is_bilinear_and_antisymmetric(
            (pq, xs, ys, zs) in prop_oneof![Just((2u32, 5u32)), Just((3, 4)), Just((3, 5))]
                .prop_flat_map(|(p, q)| {
                    let r = ((p - 1) * (q - 1)) as usize;
                    (Just((p, q)),
                     proptest::collection::vec(-3i64..4, r),
                     proptest::collection::vec(-3i64..4, r),
                     proptest::collection::vec(-3i64..4, r))
                }),
            k in -3i64..4,
        ) {
            let s = build_seifert_surface(TorusKnotParams::new(pq.0, pq.1).unwrap()).unwrap();
            let basis = s.cycle_basis();
            let (x, y, z) = (basis.combine(&xs), basis.combine(&ys), basis.combine(&zs));
            let i = |a: &Cycle, b: &Cycle| s.intersection_number(a, b).unwrap();
            prop_assert_eq!(i(&x, &x), 0);
            prop_assert_eq!(i(&x, &y), -i(&y, &x));
            prop_assert_eq!(i(&x.add_scaled(&z, k), &y), i(&x, &y) + k * i(&z, &y));
            prop_assert_eq!(i(&x, &y.add_scaled(&z, k)), i(&x, &y) + k * i(&x, &z));
        }

        #[test]
        fn invariants_hold_for_coprime_pairs(p in 2u32..8, q in 2u32..8) {
            prop_assume!(num_integer::gcd(p, q) == 1);
            let t = TorusKnotParams::new(p, q).unwrap();
            let s = build_seifert_surface(t).unwrap();
            prop_assert_eq!(s.vertices().len() as u32, p + q);
            prop_assert_eq!(s.edges().len() as u32, p * q);
            prop_assert_eq!(s.euler_characteristic(), t.euler_characteristic());
            prop_assert_eq!(s.boundary_components().count, 1);
            prop_assert_eq!(s.genus(), t.genus());
            prop_assert_eq!(s.cycle_basis().rank(), t.betti_one());
        }
    }
}
