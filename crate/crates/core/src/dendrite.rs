//! Finite metric trees modelling dendrites.
//!
//! A [`Dendrite`] is a connected acyclic graph with positive edge lengths.
//! Points of the underlying continuum are [`DPoint`]s: either a vertex or an
//! interior position on an edge, measured as a fraction of the edge length.
//! Between any two points there is a unique arc; [`Dendrite::path`] returns it
//! as an explicit traversal and [`Dendrite::distance`] gives its length.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Default tolerance for point equality, in normalized edge coordinates.
pub const DEFAULT_POINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub len: f64,
}

/// A point on a dendrite. Interior points are canonical: `t` lies strictly
/// inside `(0,1)`; positions within tolerance of an endpoint normalize to the
/// vertex form (see [`Dendrite::canon`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DPoint {
    Vertex(u32),
    Interior { edge: u32, t: f64 },
}

impl DPoint {
    pub fn vertex(v: u32) -> Self {
        DPoint::Vertex(v)
    }

    pub fn interior(edge: u32, t: f64) -> Self {
        DPoint::Interior { edge, t }
    }

    /// Compact display form: `v3` or `e2@0.25`.
    pub fn describe(&self) -> String {
        match self {
            DPoint::Vertex(v) => format!("v{v}"),
            DPoint::Interior { edge, t } => format!("e{edge}@{t}"),
        }
    }
}

/// One leg of an arc traversal: edge `edge` walked from coordinate `t0` to
/// `t1` (either direction).
#[derive(Debug, Clone, Copy)]
pub struct ArcStep {
    pub edge: u32,
    pub t0: f64,
    pub t1: f64,
}

/// The unique arc between two points, as an ordered traversal.
#[derive(Debug, Clone)]
pub struct ArcPath {
    pub start: DPoint,
    pub end: DPoint,
    pub steps: Vec<ArcStep>,
    pub len: f64,
}

impl ArcPath {
    pub fn degenerate(p: DPoint) -> Self {
        ArcPath { start: p, end: p, steps: Vec::new(), len: 0.0 }
    }

    /// Point at arc length `s` from the start; `s` is clamped to `[0, len]`.
    pub fn point_at(&self, dendrite: &Dendrite, s: f64) -> DPoint {
        if self.steps.is_empty() || s <= 0.0 {
            return self.start;
        }
        let mut remaining = s;
        for step in &self.steps {
            let step_len = (step.t1 - step.t0).abs() * dendrite.edge(step.edge).len;
            if remaining <= step_len {
                let frac = if step_len == 0.0 { 0.0 } else { remaining / step_len };
                let t = step.t0 + (step.t1 - step.t0) * frac;
                return dendrite.canon(DPoint::interior(step.edge, t));
            }
            remaining -= step_len;
        }
        self.end
    }

    /// The sub-arc between arc lengths `s0 <= s1`, as a new path.
    pub fn sub_path(&self, dendrite: &Dendrite, s0: f64, s1: f64) -> ArcPath {
        let s0 = s0.clamp(0.0, self.len);
        let s1 = s1.clamp(0.0, self.len);
        if s1 <= s0 {
            return ArcPath::degenerate(self.point_at(dendrite, s0));
        }
        let start = self.point_at(dendrite, s0);
        let end = self.point_at(dendrite, s1);
        let mut steps = Vec::new();
        let mut acc = 0.0;
        for step in &self.steps {
            let step_len = (step.t1 - step.t0).abs() * dendrite.edge(step.edge).len;
            let lo = acc;
            let hi = acc + step_len;
            acc = hi;
            if hi <= s0 || lo >= s1 || step_len == 0.0 {
                continue;
            }
            let a = ((s0.max(lo) - lo) / step_len).clamp(0.0, 1.0);
            let b = ((s1.min(hi) - lo) / step_len).clamp(0.0, 1.0);
            steps.push(ArcStep {
                edge: step.edge,
                t0: step.t0 + (step.t1 - step.t0) * a,
                t1: step.t0 + (step.t1 - step.t0) * b,
            });
        }
        ArcPath { start, end, steps, len: s1 - s0 }
    }
}

/// Finite metric tree. Immutable after construction; all operations are pure.
#[derive(Debug, Clone)]
pub struct Dendrite {
    edges: Vec<Edge>,
    /// adjacency: vertex -> list of (edge index, neighbor)
    adj: Vec<Vec<(u32, u32)>>,
    parent: Vec<u32>,
    parent_edge: Vec<u32>,
    depth: Vec<u32>,
    dist_root: Vec<f64>,
    tol: f64,
}

impl Dendrite {
    pub fn new(n_vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        Self::with_tolerance(n_vertices, edges, DEFAULT_POINT_TOL)
    }

    pub fn with_tolerance(n_vertices: usize, edges: Vec<Edge>, tol: f64) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidDendrite("no vertices".into()));
        }
        if edges.len() != n_vertices - 1 {
            return Err(Error::InvalidDendrite(format!(
                "a tree on {} vertices needs {} edges, got {}",
                n_vertices,
                n_vertices - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n_vertices];
        // union-find to catch the first cycle-closing edge
        let mut uf: Vec<u32> = (0..n_vertices as u32).collect();
        fn find(uf: &mut Vec<u32>, mut x: u32) -> u32 {
            while uf[x as usize] != x {
                uf[x as usize] = uf[uf[x as usize] as usize];
                x = uf[x as usize];
            }
            x
        }
        for (i, e) in edges.iter().enumerate() {
            if e.u as usize >= n_vertices || e.v as usize >= n_vertices {
                return Err(Error::InvalidDendrite(format!(
                    "edge {} = ({}, {}) references a vertex outside 0..{}",
                    i, e.u, e.v, n_vertices
                )));
            }
            if !(e.len > 0.0) || !e.len.is_finite() {
                return Err(Error::InvalidDendrite(format!(
                    "edge {} = ({}, {}) has non-positive length {}",
                    i, e.u, e.v, e.len
                )));
            }
            let (ru, rv) = (find(&mut uf, e.u), find(&mut uf, e.v));
            if ru == rv {
                return Err(Error::InvalidDendrite(format!(
                    "edge {} = ({}, {}) closes a cycle",
                    i, e.u, e.v
                )));
            }
            uf[ru as usize] = rv;
            adj[e.u as usize].push((i as u32, e.v));
            adj[e.v as usize].push((i as u32, e.u));
        }
        // edge count + acyclicity imply connectivity, but verify and name a witness
        let root0 = find(&mut uf, 0);
        for v in 0..n_vertices as u32 {
            if find(&mut uf, v) != root0 {
                return Err(Error::InvalidDendrite(format!(
                    "vertex {v} is not connected to vertex 0"
                )));
            }
        }

        let mut parent = vec![0u32; n_vertices];
        let mut parent_edge = vec![u32::MAX; n_vertices];
        let mut depth = vec![0u32; n_vertices];
        let mut dist_root = vec![0f64; n_vertices];
        let mut stack = vec![0u32];
        let mut seen = vec![false; n_vertices];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(e, w) in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = v;
                    parent_edge[w as usize] = e;
                    depth[w as usize] = depth[v as usize] + 1;
                    dist_root[w as usize] = dist_root[v as usize] + edges[e as usize].len;
                    stack.push(w);
                }
            }
        }
        Ok(Dendrite { edges, adj, parent, parent_edge, depth, dist_root, tol })
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: u32) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        &self.adj[v as usize]
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.len).sum()
    }

    /// Endpoint set `E(X)`: vertices of degree 1.
    pub fn endpoints(&self) -> Vec<u32> {
        (0..self.n_vertices() as u32).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Branch set `B(X)`: vertices of degree >= 3.
    pub fn branch_points(&self) -> Vec<u32> {
        (0..self.n_vertices() as u32).filter(|&v| self.degree(v) >= 3).collect()
    }

    fn check_point(&self, p: DPoint) -> Result<()> {
        match p {
            DPoint::Vertex(v) => {
                if (v as usize) < self.n_vertices() {
                    Ok(())
                } else {
                    Err(Error::PointNotOnDendrite(format!("vertex {v} out of range")))
                }
            }
            DPoint::Interior { edge, t } => {
                if (edge as usize) >= self.n_edges() {
                    Err(Error::PointNotOnDendrite(format!("edge {edge} out of range")))
                } else if !((-self.tol..=1.0 + self.tol).contains(&t)) || !t.is_finite() {
                    Err(Error::PointNotOnDendrite(format!(
                        "coordinate {t} outside [0,1] on edge {edge}"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Canonical form: interior coordinates within tolerance of 0 or 1 become
    /// the corresponding vertex.
    pub fn canon(&self, p: DPoint) -> DPoint {
        match p {
            DPoint::Vertex(_) => p,
            DPoint::Interior { edge, t } => {
                let e = self.edge(edge);
                if t <= self.tol {
                    DPoint::Vertex(e.u)
                } else if t >= 1.0 - self.tol {
                    DPoint::Vertex(e.v)
                } else {
                    p
                }
            }
        }
    }

    /// Decidable point equality (after canonicalization, within tolerance).
    pub fn points_eq(&self, a: DPoint, b: DPoint) -> bool {
        match (self.canon(a), self.canon(b)) {
            (DPoint::Vertex(x), DPoint::Vertex(y)) => x == y,
            (DPoint::Interior { edge: e1, t: t1 }, DPoint::Interior { edge: e2, t: t2 }) => {
                e1 == e2 && (t1 - t2).abs() <= self.tol
            }
            _ => false,
        }
    }

    /// Order of a point: the number of connected components of `X` minus it.
    /// Degree for vertices, 2 for interior edge points.
    pub fn order(&self, p: DPoint) -> Result<usize> {
        self.check_point(p)?;
        Ok(match self.canon(p) {
            DPoint::Vertex(v) => self.degree(v),
            DPoint::Interior { .. } => 2,
        })
    }

    fn lca(&self, mut a: u32, mut b: u32) -> u32 {
        while self.depth[a as usize] > self.depth[b as usize] {
            a = self.parent[a as usize];
        }
        while self.depth[b as usize] > self.depth[a as usize] {
            b = self.parent[b as usize];
        }
        while a != b {
            a = self.parent[a as usize];
            b = self.parent[b as usize];
        }
        a
    }

    pub fn vertex_distance(&self, a: u32, b: u32) -> f64 {
        let l = self.lca(a, b);
        self.dist_root[a as usize] + self.dist_root[b as usize]
            - 2.0 * self.dist_root[l as usize]
    }

    /// Anchor vertices of a point with the walk cost to reach them.
    fn anchors(&self, p: DPoint) -> Vec<(u32, f64)> {
        match p {
            DPoint::Vertex(v) => vec![(v, 0.0)],
            DPoint::Interior { edge, t } => {
                let e = self.edge(edge);
                vec![(e.u, t * e.len), (e.v, (1.0 - t) * e.len)]
            }
        }
    }

    /// Arc length of the unique path between two points.
    pub fn distance(&self, x: DPoint, y: DPoint) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        let (x, y) = (self.canon(x), self.canon(y));
        if let (DPoint::Interior { edge: e1, t: t1 }, DPoint::Interior { edge: e2, t: t2 }) = (x, y)
        {
            if e1 == e2 {
                return Ok((t1 - t2).abs() * self.edge(e1).len);
            }
        }
        let mut best = f64::INFINITY;
        for &(a, da) in &self.anchors(x) {
            for &(b, db) in &self.anchors(y) {
                let d = da + self.vertex_distance(a, b) + db;
                if d < best {
                    best = d;
                }
            }
        }
        Ok(best)
    }

    /// Edge sequence of the vertex path `a -> b` as (edge, from, to) triples.
    fn vertex_path_edges(&self, a: u32, b: u32) -> Vec<(u32, u32, u32)> {
        let l = self.lca(a, b);
        let mut up = Vec::new();
        let mut v = a;
        while v != l {
            up.push((self.parent_edge[v as usize], v, self.parent[v as usize]));
            v = self.parent[v as usize];
        }
        let mut down = Vec::new();
        let mut w = b;
        while w != l {
            down.push((self.parent_edge[w as usize], self.parent[w as usize], w));
            w = self.parent[w as usize];
        }
        down.reverse();
        up.extend(down);
        up
    }

    /// The unique arc from `x` to `y` as an ordered traversal.
    pub fn path(&self, x: DPoint, y: DPoint) -> Result<ArcPath> {
        self.check_point(x)?;
        self.check_point(y)?;
        let (x, y) = (self.canon(x), self.canon(y));
        if self.points_eq(x, y) {
            return Ok(ArcPath::degenerate(x));
        }
        if let (DPoint::Interior { edge: e1, t: t1 }, DPoint::Interior { edge: e2, t: t2 }) = (x, y)
        {
            if e1 == e2 {
                let len = (t1 - t2).abs() * self.edge(e1).len;
                return Ok(ArcPath {
                    start: x,
                    end: y,
                    steps: vec![ArcStep { edge: e1, t0: t1, t1: t2 }],
                    len,
                });
            }
        }
        // choose the anchor pair realizing the distance
        let (mut best, mut pick) = (f64::INFINITY, (0u32, 0.0f64, 0u32, 0.0f64));
        for &(a, da) in &self.anchors(x) {
            for &(b, db) in &self.anchors(y) {
                let d = da + self.vertex_distance(a, b) + db;
                if d < best {
                    best = d;
                    pick = (a, da, b, db);
                }
            }
        }
        let (a, da, b, db) = pick;
        let mut steps = Vec::new();
        if let DPoint::Interior { edge, t } = x {
            let e = self.edge(edge);
            let target = if a == e.u { 0.0 } else { 1.0 };
            if da > 0.0 {
                steps.push(ArcStep { edge, t0: t, t1: target });
            }
        }
        for (e, from, to) in self.vertex_path_edges(a, b) {
            let ed = self.edge(e);
            let (t0, t1) = if ed.u == from && ed.v == to { (0.0, 1.0) } else { (1.0, 0.0) };
            steps.push(ArcStep { edge: e, t0, t1 });
        }
        if let DPoint::Interior { edge, t } = y {
            let e = self.edge(edge);
            let source = if b == e.u { 0.0 } else { 1.0 };
            if db > 0.0 {
                steps.push(ArcStep { edge, t0: source, t1: t });
            }
        }
        Ok(ArcPath { start: x, end: y, steps, len: best })
    }

    /// Diameter of the whole tree (max leaf-to-leaf distance).
    pub fn diameter(&self) -> f64 {
        if self.n_vertices() == 1 {
            return 0.0;
        }
        let ends = self.endpoints();
        let p0 = ends[0];
        let far = |from: u32| -> (u32, f64) {
            let mut best = (from, 0.0);
            for &e in &ends {
                let d = self.vertex_distance(from, e);
                if d > best.1 {
                    best = (e, d);
                }
            }
            best
        };
        let (q, _) = far(p0);
        far(q).1
    }

    /// Grid of points with spacing at most `spacing` along every edge,
    /// including all vertices. Deterministic order.
    pub fn grid(&self, spacing: f64) -> Vec<DPoint> {
        let mut pts: Vec<DPoint> = (0..self.n_vertices() as u32).map(DPoint::Vertex).collect();
        for (i, e) in self.edges.iter().enumerate() {
            let k = (e.len / spacing).ceil().max(1.0) as usize;
            for j in 1..k {
                pts.push(DPoint::interior(i as u32, j as f64 / k as f64));
            }
        }
        pts
    }
}

// ---------------------------------------------------------------------------
// Construction helpers and the random corpus generator
// ---------------------------------------------------------------------------

/// Path graph with the given edge lengths: vertices 0-1-...-n.
pub fn path_graph(lens: &[f64]) -> Dendrite {
    let edges = lens
        .iter()
        .enumerate()
        .map(|(i, &len)| Edge { u: i as u32, v: i as u32 + 1, len })
        .collect();
    Dendrite::new(lens.len() + 1, edges).expect("valid path graph")
}

/// Star with hub 0 and one leaf per arm length.
pub fn star_graph(arms: &[f64]) -> Dendrite {
    let edges = arms
        .iter()
        .enumerate()
        .map(|(i, &len)| Edge { u: 0, v: i as u32 + 1, len })
        .collect();
    Dendrite::new(arms.len() + 1, edges).expect("valid star graph")
}

/// Deterministic-for-seed random tree with `n` vertices and edge lengths in
/// `(0, 1]`.
pub fn random_dendrite(n: usize, seed: u64) -> Result<Dendrite> {
    if n == 0 {
        return Err(Error::domain("random_dendrite requires n >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n as u32 {
        let parent = rng.gen_range(0..i);
        let len = 1.0 - rng.gen::<f64>(); // uniform in (0, 1]
        edges.push(Edge { u: parent, v: i, len });
    }
    Dendrite::new(n, edges)
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct DendriteFile {
    pub vertices: usize,
    pub edges: Vec<(u32, u32, f64)>,
}

impl Dendrite {
    pub fn from_json(json: &str) -> Result<Self> {
        let file: DendriteFile =
            serde_json::from_str(json).map_err(|e| Error::Format(e.to_string()))?;
        let edges = file.edges.iter().map(|&(u, v, len)| Edge { u, v, len }).collect();
        Dendrite::new(file.vertices, edges)
    }

    pub fn to_json(&self) -> String {
        let file = DendriteFile {
            vertices: self.n_vertices(),
            edges: self.edges.iter().map(|e| (e.u, e.v, e.len)).collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_on_path_and_star() {
        let p = path_graph(&[1.0, 1.0]);
        assert_eq!(p.order(DPoint::vertex(1)).unwrap(), 2);
        assert_eq!(p.order(DPoint::vertex(0)).unwrap(), 1);
        let s = star_graph(&[1.0, 1.0, 1.0]);
        assert_eq!(s.order(DPoint::vertex(0)).unwrap(), 3);
        assert_eq!(s.order(DPoint::interior(1, 0.5)).unwrap(), 2);
    }

    #[test]
    fn order_rejects_bad_points() {
        let p = path_graph(&[1.0]);
        assert!(p.order(DPoint::vertex(9)).is_err());
        assert!(p.order(DPoint::interior(3, 0.5)).is_err());
        assert!(p.order(DPoint::interior(0, 1.5)).is_err());
    }

    #[test]
    fn distances_on_small_graphs() {
        let p = path_graph(&[1.0, 1.0]);
        assert_eq!(p.distance(DPoint::vertex(0), DPoint::vertex(2)).unwrap(), 2.0);
        let s = star_graph(&[1.0, 1.0, 1.0]);
        assert_eq!(s.distance(DPoint::vertex(1), DPoint::vertex(2)).unwrap(), 2.0);
        assert_eq!(s.distance(DPoint::vertex(1), DPoint::vertex(1)).unwrap(), 0.0);
        // interior-to-interior across the hub
        let d = s
            .distance(DPoint::interior(0, 0.25), DPoint::interior(1, 0.5))
            .unwrap();
        assert!((d - 0.75).abs() < 1e-12);
    }

    #[test]
    fn path_traversal_point_at() {
        let p = path_graph(&[0.5, 0.5]);
        let path = p.path(DPoint::vertex(0), DPoint::vertex(2)).unwrap();
        assert_eq!(path.steps.len(), 2);
        assert!((path.len - 1.0).abs() < 1e-12);
        let mid = path.point_at(&p, 0.5);
        assert!(p.points_eq(mid, DPoint::vertex(1)));
        let q = path.point_at(&p, 0.25);
        assert!(p.points_eq(q, DPoint::interior(0, 0.5)));
    }

    #[test]
    fn path_between_interior_points_same_edge() {
        let p = path_graph(&[2.0]);
        let path = p.path(DPoint::interior(0, 0.75), DPoint::interior(0, 0.25)).unwrap();
        assert_eq!(path.steps.len(), 1);
        assert!((path.len - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonicalization_snaps_to_vertices() {
        let p = path_graph(&[1.0]);
        assert!(p.points_eq(DPoint::interior(0, 1e-12), DPoint::vertex(0)));
        assert!(p.points_eq(DPoint::interior(0, 1.0 - 1e-12), DPoint::vertex(1)));
    }

    #[test]
    fn loader_rejects_cycles_naming_edge() {
        let json = r#"{"vertices": 3, "edges": [[0,1,1.0],[1,2,1.0],[2,0,1.0]]}"#;
        let err = Dendrite::from_json(json).unwrap_err();
        // 3 edges on 3 vertices is caught by the count check first
        assert!(err.to_string().contains("edges"), "{err}");
        let json = r#"{"vertices": 4, "edges": [[0,1,1.0],[1,2,1.0],[2,0,1.0]]}"#;
        let err = Dendrite::from_json(json).unwrap_err();
        assert!(err.to_string().contains("edge 2 = (2, 0) closes a cycle"), "{err}");
    }

    #[test]
    fn loader_rejects_disconnection_and_bad_lengths() {
        let json = r#"{"vertices": 4, "edges": [[0,1,1.0],[0,1,1.0],[2,3,1.0]]}"#;
        let err = Dendrite::from_json(json).unwrap_err();
        assert!(err.to_string().contains("cycle"), "{err}");
        let json = r#"{"vertices": 2, "edges": [[0,1,0.0]]}"#;
        let err = Dendrite::from_json(json).unwrap_err();
        assert!(err.to_string().contains("non-positive length"), "{err}");
    }

    #[test]
    fn random_dendrite_contract() {
        assert!(random_dendrite(0, 1).is_err());
        let d1 = random_dendrite(1, 7).unwrap();
        assert_eq!(d1.n_vertices(), 1);
        assert_eq!(d1.n_edges(), 0);
        let d2 = random_dendrite(2, 7).unwrap();
        assert_eq!(d2.n_edges(), 1);
        let a = random_dendrite(20, 42).unwrap();
        let b = random_dendrite(20, 42).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        for e in a.edges() {
            assert!(e.len > 0.0 && e.len <= 1.0);
        }
    }

    #[test]
    fn endpoint_and_branch_census() {
        let s = star_graph(&[1.0, 0.5, 0.25, 0.125]);
        assert_eq!(s.endpoints(), vec![1, 2, 3, 4]);
        assert_eq!(s.branch_points(), vec![0]);
        assert!((s.diameter() - 1.5).abs() < 1e-12);
    }
}
