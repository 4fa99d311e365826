//! Piecewise-linear dendrite self-maps.
//!
//! A map is given by an image point for every vertex (plus optional per-edge
//! subdivision points with their own images); each (sub)edge is carried onto
//! the unique arc between its endpoint images at constant speed in normalized
//! arc length. This is the canonical continuous extension of the vertex data
//! and keeps preimages and return equations exactly solvable.

use crate::dendrite::{ArcPath, DPoint, Dendrite, DendriteFile};
use crate::error::{Error, Result};
use crate::subdendrite::Subdendrite;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct DendriteMap {
    dendrite: Arc<Dendrite>,
    vertex_images: Vec<DPoint>,
    /// per edge: (t, image) breakpoints, strictly increasing t with the two
    /// endpoint entries always present
    edge_breaks: Vec<Vec<(f64, DPoint)>>,
    /// per edge: image arc of each breakpoint interval
    piece_arcs: Vec<Vec<ArcPath>>,
}

impl DendriteMap {
    pub fn new(
        dendrite: Arc<Dendrite>,
        vertex_images: Vec<DPoint>,
        subdivisions: Vec<(u32, f64, DPoint)>,
    ) -> Result<Self> {
        if vertex_images.len() != dendrite.n_vertices() {
            return Err(Error::domain(format!(
                "expected {} vertex images, got {}",
                dendrite.n_vertices(),
                vertex_images.len()
            )));
        }
        let vertex_images: Vec<DPoint> = vertex_images
            .into_iter()
            .map(|p| {
                dendrite.order(p)?;
                Ok(dendrite.canon(p))
            })
            .collect::<Result<_>>()?;
        let mut edge_breaks: Vec<Vec<(f64, DPoint)>> = (0..dendrite.n_edges())
            .map(|e| {
                let ed = dendrite.edge(e as u32);
                vec![
                    (0.0, vertex_images[ed.u as usize]),
                    (1.0, vertex_images[ed.v as usize]),
                ]
            })
            .collect();
        for (e, t, img) in subdivisions {
            if e as usize >= dendrite.n_edges() {
                return Err(Error::domain(format!("subdivision on unknown edge {e}")));
            }
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::domain(format!(
                    "subdivision coordinate {t} on edge {e} must lie in (0,1)"
                )));
            }
            dendrite.order(img)?;
            edge_breaks[e as usize].push((t, dendrite.canon(img)));
        }
        for brk in &mut edge_breaks {
            brk.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for w in brk.windows(2) {
                if w[1].0 - w[0].0 <= dendrite.tol() {
                    return Err(Error::domain(format!(
                        "subdivision points too close: {} and {}",
                        w[0].0, w[1].0
                    )));
                }
            }
        }
        let mut piece_arcs = Vec::with_capacity(dendrite.n_edges());
        for brk in &edge_breaks {
            let mut arcs = Vec::with_capacity(brk.len() - 1);
            for w in brk.windows(2) {
                arcs.push(dendrite.path(w[0].1, w[1].1)?);
            }
            piece_arcs.push(arcs);
        }
        Ok(DendriteMap { dendrite, vertex_images, edge_breaks, piece_arcs })
    }

    pub fn identity(dendrite: Arc<Dendrite>) -> Self {
        let images = (0..dendrite.n_vertices() as u32).map(DPoint::Vertex).collect();
        DendriteMap::new(dendrite, images, Vec::new()).expect("identity map is valid")
    }

    pub fn dendrite(&self) -> &Arc<Dendrite> {
        &self.dendrite
    }

    pub fn vertex_image(&self, v: u32) -> DPoint {
        self.vertex_images[v as usize]
    }

    /// Image of a point under one application of the map.
    pub fn eval(&self, p: DPoint) -> DPoint {
        match self.dendrite.canon(p) {
            DPoint::Vertex(v) => self.vertex_images[v as usize],
            DPoint::Interior { edge, t } => {
                let brk = &self.edge_breaks[edge as usize];
                // find the piece with t in [brk[i].0, brk[i+1].0]
                let mut i = match brk.binary_search_by(|probe| probe.0.partial_cmp(&t).unwrap()) {
                    Ok(i) => return brk[i].1,
                    Err(i) => i - 1,
                };
                if i + 1 >= brk.len() {
                    i = brk.len() - 2;
                }
                let (t0, _) = brk[i];
                let (t1, _) = brk[i + 1];
                let lam = (t - t0) / (t1 - t0);
                let arc = &self.piece_arcs[edge as usize][i];
                arc.point_at(&self.dendrite, lam * arc.len)
            }
        }
    }

    pub fn eval_n(&self, p: DPoint, n: usize) -> DPoint {
        let mut q = self.dendrite.canon(p);
        for _ in 0..n {
            q = self.eval(q);
        }
        q
    }

    /// Exact image of a subdendrite: the union of the sub-arc images of its
    /// segments together with the images of its vertices. The image of a
    /// connected set is connected, so the per-edge union is exact.
    pub fn image_of(&self, y: &Subdendrite) -> Result<Subdendrite> {
        let d = &*self.dendrite;
        let mut parts: Vec<Subdendrite> = Vec::new();
        for v in y.vertices() {
            parts.push(Subdendrite::single_point(d, self.vertex_images[v as usize]));
        }
        for (e, lo, hi) in y.segments() {
            let brk = &self.edge_breaks[e as usize];
            for i in 0..brk.len() - 1 {
                let (t0, _) = brk[i];
                let (t1, _) = brk[i + 1];
                let a = lo.max(t0);
                let b = hi.min(t1);
                if b < a {
                    continue;
                }
                let arc = &self.piece_arcs[e as usize][i];
                let la = (a - t0) / (t1 - t0) * arc.len;
                let lb = (b - t0) / (t1 - t0) * arc.len;
                if arc.len == 0.0 {
                    parts.push(Subdendrite::single_point(d, arc.start));
                } else {
                    let sub = arc.sub_path(d, la, lb);
                    parts.push(Subdendrite::from_path(d, &sub));
                }
            }
        }
        if parts.is_empty() {
            return Err(Error::domain("image of an empty subdendrite"));
        }
        Ok(Subdendrite::union_connected(d, &parts))
    }

    pub fn image_of_n(&self, y: &Subdendrite, n: usize) -> Result<Subdendrite> {
        let mut img = y.clone();
        for _ in 0..n {
            img = self.image_of(&img)?;
        }
        Ok(img)
    }
}

// ---------------------------------------------------------------------------
// Linear piece structure of iterates
// ---------------------------------------------------------------------------

/// Image of a linear piece: either a nondegenerate linear stretch of one edge
/// or a single point (a collapsed piece).
#[derive(Debug, Clone)]
pub enum PieceImage {
    Linear { edge: u32, u0: f64, u1: f64 },
    Constant(DPoint),
}

/// Restriction of an iterate to a domain interval on which it is linear.
#[derive(Debug, Clone)]
pub struct LinPiece {
    pub edge: u32,
    pub t0: f64,
    pub t1: f64,
    pub img: PieceImage,
}

const MAX_PIECES: usize = 400_000;
const DEGENERATE: f64 = 1e-14;

impl DendriteMap {
    /// Linear pieces of the map itself, grouped per domain edge.
    fn level1_pieces(&self) -> Vec<Vec<LinPiece>> {
        let d = &*self.dendrite;
        let mut per_edge = Vec::with_capacity(d.n_edges());
        for e in 0..d.n_edges() {
            let brk = &self.edge_breaks[e];
            let mut pieces = Vec::new();
            for i in 0..brk.len() - 1 {
                let (t0, _) = brk[i];
                let (t1, _) = brk[i + 1];
                let arc = &self.piece_arcs[e][i];
                if arc.len <= DEGENERATE {
                    pieces.push(LinPiece {
                        edge: e as u32,
                        t0,
                        t1,
                        img: PieceImage::Constant(arc.start),
                    });
                    continue;
                }
                let mut acc = 0.0;
                for step in &arc.steps {
                    let step_len = (step.t1 - step.t0).abs() * d.edge(step.edge).len;
                    if step_len <= DEGENERATE {
                        continue;
                    }
                    let a = t0 + (t1 - t0) * (acc / arc.len);
                    let b = t0 + (t1 - t0) * ((acc + step_len) / arc.len);
                    acc += step_len;
                    pieces.push(LinPiece {
                        edge: e as u32,
                        t0: a,
                        t1: b,
                        img: PieceImage::Linear { edge: step.edge, u0: step.t0, u1: step.t1 },
                    });
                }
            }
            per_edge.push(pieces);
        }
        per_edge
    }

    /// Linear pieces of `f^k`. Errors out if the structure explodes.
    pub fn iterate_pieces(&self, k: usize) -> Result<Vec<LinPiece>> {
        let level1 = self.level1_pieces();
        let mut current: Vec<LinPiece> = level1.iter().flatten().cloned().collect();
        for _ in 1..k {
            let mut next: Vec<LinPiece> = Vec::with_capacity(current.len());
            for piece in &current {
                match &piece.img {
                    PieceImage::Constant(p) => next.push(LinPiece {
                        edge: piece.edge,
                        t0: piece.t0,
                        t1: piece.t1,
                        img: PieceImage::Constant(self.eval(*p)),
                    }),
                    PieceImage::Linear { edge, u0, u1 } => {
                        let (ulo, uhi) = (u0.min(*u1), u0.max(*u1));
                        for next_piece in &level1[*edge as usize] {
                            let lo = ulo.max(next_piece.t0);
                            let hi = uhi.min(next_piece.t1);
                            if hi - lo <= DEGENERATE {
                                continue;
                            }
                            // pull the u-overlap back to the base coordinate
                            let du = u1 - u0;
                            let ta = piece.t0 + (lo - u0) / du * (piece.t1 - piece.t0);
                            let tb = piece.t0 + (hi - u0) / du * (piece.t1 - piece.t0);
                            let (ta, tb) = (ta.min(tb), ta.max(tb));
                            if tb - ta <= DEGENERATE {
                                continue;
                            }
                            // forward through the next piece
                            let ua = if ta == piece.t0.min(piece.t1) { 0.0 } else { 0.0 };
                            let _ = ua;
                            let u_at = |t: f64| u0 + (t - piece.t0) / (piece.t1 - piece.t0) * du;
                            let img = match &next_piece.img {
                                PieceImage::Constant(p) => PieceImage::Constant(*p),
                                PieceImage::Linear { edge: e2, u0: w0, u1: w1 } => {
                                    let fwd = |u: f64| {
                                        w0 + (u - next_piece.t0)
                                            / (next_piece.t1 - next_piece.t0)
                                            * (w1 - w0)
                                    };
                                    let wa = fwd(u_at(ta));
                                    let wb = fwd(u_at(tb));
                                    if (wa - wb).abs() <= DEGENERATE {
                                        PieceImage::Constant(
                                            self.dendrite.canon(DPoint::interior(*e2, wa)),
                                        )
                                    } else {
                                        PieceImage::Linear { edge: *e2, u0: wa, u1: wb }
                                    }
                                }
                            };
                            next.push(LinPiece { edge: piece.edge, t0: ta, t1: tb, img });
                        }
                    }
                }
                if next.len() > MAX_PIECES {
                    return Err(Error::Diagnostic(format!(
                        "piecewise structure of the iterate exceeds {MAX_PIECES} pieces"
                    )));
                }
            }
            current = next;
        }
        Ok(current)
    }
}

// ---------------------------------------------------------------------------
// Fixed and periodic points
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct FixedPointReport {
    pub points: Vec<DPoint>,
    /// set when the fixed set is a continuum covering the whole space
    pub entire_space: bool,
}

/// Solutions of `f^k(p) = p` from the linear piece structure plus vertex and
/// breakpoint checks. Returns canonical deduplicated points.
fn return_points(map: &DendriteMap, k: usize, tol: f64) -> Result<(Vec<DPoint>, bool)> {
    let d = &**map.dendrite();
    let mut sols: Vec<DPoint> = Vec::new();
    let mut push = |p: DPoint, sols: &mut Vec<DPoint>| {
        let p = d.canon(p);
        if !sols.iter().any(|&q| d.points_eq(p, q)) {
            sols.push(p);
        }
    };
    for v in 0..d.n_vertices() as u32 {
        let img = map.eval_n(DPoint::Vertex(v), k);
        if d.distance(img, DPoint::Vertex(v))? <= tol {
            push(DPoint::Vertex(v), &mut sols);
        }
    }
    let pieces = map.iterate_pieces(k)?;
    let mut continuum_pieces = 0usize;
    let mut total_pieces = 0usize;
    for piece in &pieces {
        total_pieces += 1;
        match &piece.img {
            PieceImage::Constant(p) => {
                if let DPoint::Interior { edge, t } = d.canon(*p) {
                    if edge == piece.edge && t >= piece.t0 - tol && t <= piece.t1 + tol {
                        push(DPoint::interior(edge, t), &mut sols);
                    }
                }
                if let DPoint::Vertex(_) = d.canon(*p) {
                    // vertex solutions handled above
                }
            }
            PieceImage::Linear { edge, u0, u1 } => {
                if *edge != piece.edge {
                    continue;
                }
                let m = (u1 - u0) / (piece.t1 - piece.t0);
                if (1.0 - m).abs() < 1e-12 {
                    if (u0 - piece.t0).abs() <= tol {
                        // identity on the whole piece: a continuum of solutions
                        continuum_pieces += 1;
                        push(DPoint::interior(piece.edge, piece.t0), &mut sols);
                        push(DPoint::interior(piece.edge, piece.t1), &mut sols);
                    }
                    continue;
                }
                let t_star = (u0 - m * piece.t0) / (1.0 - m);
                if t_star >= piece.t0 - tol && t_star <= piece.t1 + tol {
                    let p = d.canon(DPoint::interior(piece.edge, t_star.clamp(0.0, 1.0)));
                    // confirm against the actual iterate to discard edge dust
                    if d.distance(map.eval_n(p, k), p)? <= 10.0 * tol.max(d.tol()) {
                        push(p, &mut sols);
                    }
                }
            }
        }
    }
    let entire = total_pieces > 0 && continuum_pieces == total_pieces;
    Ok((sols, entire))
}

/// Fixed points of the map. Nonempty for every valid dendrite map.
pub fn fixed_points(map: &DendriteMap, tol: f64) -> Result<FixedPointReport> {
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let (points, entire_space) = return_points(map, 1, tol)?;
    Ok(FixedPointReport { points, entire_space })
}

/// Periodic points of minimal period up to `max_period`.
pub fn periodic_points(
    map: &DendriteMap,
    max_period: usize,
    tol: f64,
) -> Result<Vec<(DPoint, usize)>> {
    if max_period < 1 {
        return Err(Error::domain("max_period must be at least 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let d = &**map.dendrite();
    let mut out: Vec<(DPoint, usize)> = Vec::new();
    for k in 1..=max_period {
        let (sols, _) = return_points(map, k, tol)?;
        'sol: for p in sols {
            for (q, _) in &out {
                if d.points_eq(p, *q) {
                    continue 'sol;
                }
            }
            // minimal period: no earlier return
            for dvr in 1..k {
                if k % dvr == 0 && d.distance(map.eval_n(p, dvr), p)? <= tol {
                    continue 'sol;
                }
            }
            out.push((p, k));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Preimages
// ---------------------------------------------------------------------------

/// A finite union of closed segments and vertices, not necessarily connected.
/// Used for backward orbits, where preimages of connected sets can split.
#[derive(Debug, Clone, Default)]
pub struct RegionSet {
    verts: BTreeSet<u32>,
    segs: BTreeMap<u32, Vec<(f64, f64)>>,
}

impl RegionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_point(&mut self, dendrite: &Dendrite, p: DPoint) {
        match dendrite.canon(p) {
            DPoint::Vertex(v) => {
                self.verts.insert(v);
            }
            DPoint::Interior { edge, t } => self.insert_seg(dendrite, edge, t, t),
        }
    }

    pub fn insert_seg(&mut self, dendrite: &Dendrite, edge: u32, lo: f64, hi: f64) {
        let tol = dendrite.tol();
        let (mut lo, mut hi) = (lo.min(hi).max(0.0), lo.max(hi).min(1.0));
        let e = dendrite.edge(edge);
        if lo <= tol {
            lo = 0.0;
            self.verts.insert(e.u);
        }
        if hi >= 1.0 - tol {
            hi = 1.0;
            self.verts.insert(e.v);
        }
        let list = self.segs.entry(edge).or_default();
        list.push((lo, hi));
        list.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(list.len());
        for &(a, b) in list.iter() {
            match merged.last_mut() {
                Some(last) if a <= last.1 + tol => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        *list = merged;
    }

    pub fn absorb(&mut self, dendrite: &Dendrite, other: &RegionSet) {
        for &v in &other.verts {
            self.verts.insert(v);
        }
        for (&e, list) in &other.segs {
            for &(lo, hi) in list {
                self.insert_seg(dendrite, e, lo, hi);
            }
        }
    }

    pub fn contains(&self, dendrite: &Dendrite, p: DPoint) -> bool {
        let tol = dendrite.tol();
        match dendrite.canon(p) {
            DPoint::Vertex(v) => self.verts.contains(&v),
            DPoint::Interior { edge, t } => self
                .segs
                .get(&edge)
                .map(|list| list.iter().any(|&(lo, hi)| t >= lo - tol && t <= hi + tol))
                .unwrap_or(false),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty() && self.segs.is_empty()
    }

    /// Representative points: vertices and segment endpoints. The convex hull
    /// of these covers every segment of the region.
    pub fn sample_points(&self, dendrite: &Dendrite) -> Vec<DPoint> {
        let mut pts: Vec<DPoint> = self.verts.iter().map(|&v| DPoint::Vertex(v)).collect();
        for (&e, list) in &self.segs {
            for &(lo, hi) in list {
                for t in [lo, hi] {
                    let p = dendrite.canon(DPoint::interior(e, t));
                    if matches!(p, DPoint::Interior { .. })
                        && !pts.iter().any(|&q| dendrite.points_eq(p, q))
                    {
                        pts.push(p);
                    }
                }
            }
        }
        pts
    }

    /// Isolated points only, when every segment is degenerate.
    pub fn points(&self, dendrite: &Dendrite) -> Vec<DPoint> {
        self.sample_points(dendrite)
    }

    pub fn has_positive_length(&self, dendrite: &Dendrite) -> bool {
        self.segs
            .values()
            .flatten()
            .any(|&(lo, hi)| hi - lo > dendrite.tol())
    }
}

/// Result of a truncated backward orbit: everything mapping into the target
/// within `depth` steps.
#[derive(Debug, Clone)]
pub struct PreimageSet {
    pub region: RegionSet,
    /// isolated solution points (always included in `region` too)
    pub points: Vec<DPoint>,
    /// true when some preimage is a whole interval (a collapsed piece)
    pub has_continuum: bool,
}

/// One-step preimage of a region.
fn backward_step(map: &DendriteMap, target: &RegionSet) -> RegionSet {
    let d = &**map.dendrite();
    let tol = d.tol();
    let mut out = RegionSet::new();
    for v in 0..d.n_vertices() as u32 {
        if target.contains(d, map.vertex_image(v)) {
            out.verts.insert(v);
        }
    }
    // target coordinates per edge, including vertex coordinates
    let mut target_on_edge: BTreeMap<u32, Vec<(f64, f64)>> = BTreeMap::new();
    for (&e, list) in &target.segs {
        target_on_edge.entry(e).or_default().extend(list.iter().copied());
    }
    for &v in &target.verts {
        for &(e, _) in d.neighbors(v) {
            let c = if d.edge(e).u == v { 0.0 } else { 1.0 };
            target_on_edge.entry(e).or_default().push((c, c));
        }
    }
    for pieces in map.level1_pieces() {
        for piece in pieces {
            match &piece.img {
                PieceImage::Constant(p) => {
                    if target.contains(d, *p) {
                        out.insert_seg(d, piece.edge, piece.t0, piece.t1);
                    }
                }
                PieceImage::Linear { edge, u0, u1 } => {
                    let Some(list) = target_on_edge.get(edge) else { continue };
                    let (ulo, uhi) = (u0.min(*u1), u0.max(*u1));
                    for &(a, b) in list {
                        let lo = a.max(ulo);
                        let hi = b.min(uhi);
                        if hi < lo - tol {
                            continue;
                        }
                        let pull = |u: f64| {
                            piece.t0 + (u - u0) / (u1 - u0) * (piece.t1 - piece.t0)
                        };
                        let (ta, tb) = (pull(lo.min(hi)), pull(hi.max(lo)));
                        out.insert_seg(d, piece.edge, ta.min(tb), ta.max(tb));
                    }
                }
            }
        }
    }
    out
}

/// All solutions of `f^k(q) = p` for `k <= depth`.
pub fn preimages(map: &DendriteMap, p: DPoint, depth: usize) -> Result<PreimageSet> {
    let d = &**map.dendrite();
    d.order(p)?;
    let mut acc = RegionSet::new();
    acc.insert_point(d, p);
    let mut frontier = acc.clone();
    for _ in 0..depth {
        let next = backward_step(map, &frontier);
        let mut fresh = RegionSet::new();
        for q in next.sample_points(d) {
            if !acc.contains(d, q) {
                fresh.insert_point(d, q);
            }
        }
        acc.absorb(d, &next);
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let has_continuum = acc.has_positive_length(d);
    let points = acc.sample_points(d);
    Ok(PreimageSet { region: acc, points, has_continuum })
}

// ---------------------------------------------------------------------------
// Random maps (test corpus)
// ---------------------------------------------------------------------------

/// Deterministic-for-seed random PL self-map: every vertex is sent to a
/// uniformly random point of the dendrite.
pub fn random_map(dendrite: &Arc<Dendrite>, seed: u64) -> DendriteMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = dendrite.n_vertices();
    let images = (0..n)
        .map(|_| {
            if dendrite.n_edges() == 0 || rng.gen_bool(0.2) {
                DPoint::Vertex(rng.gen_range(0..n as u32))
            } else {
                let e = rng.gen_range(0..dendrite.n_edges() as u32);
                dendrite.canon(DPoint::interior(e, rng.gen::<f64>()))
            }
        })
        .collect();
    DendriteMap::new(dendrite.clone(), images, Vec::new()).expect("random map is valid")
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Point spec in files: `[vertex]` or `[edge, t]`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Vertex((u32,)),
    Interior(u32, f64),
}

impl PointSpec {
    pub fn to_point(self) -> DPoint {
        match self {
            PointSpec::Vertex((v,)) => DPoint::Vertex(v),
            PointSpec::Interior(e, t) => DPoint::interior(e, t),
        }
    }

    pub fn from_point(p: DPoint) -> Self {
        match p {
            DPoint::Vertex(v) => PointSpec::Vertex((v,)),
            DPoint::Interior { edge, t } => PointSpec::Interior(edge, t),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DendriteSource {
    Path(String),
    Inline(DendriteFile),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MapFile {
    pub dendrite: DendriteSource,
    pub vertex_images: BTreeMap<String, PointSpec>,
    #[serde(default)]
    pub subdivisions: Vec<(u32, f64, PointSpec)>,
}

impl DendriteMap {
    /// Build from parsed file parts once the dendrite itself is resolved.
    pub fn from_file_parts(dendrite: Arc<Dendrite>, file: &MapFile) -> Result<Self> {
        let mut images = vec![None; dendrite.n_vertices()];
        for (key, spec) in &file.vertex_images {
            let v: usize = key
                .parse()
                .map_err(|_| Error::Format(format!("bad vertex key {key:?}")))?;
            if v >= dendrite.n_vertices() {
                return Err(Error::Format(format!("vertex image key {v} out of range")));
            }
            images[v] = Some(spec.to_point());
        }
        let images: Vec<DPoint> = images
            .into_iter()
            .enumerate()
            .map(|(v, img)| img.ok_or_else(|| Error::Format(format!("missing image for vertex {v}"))))
            .collect::<Result<_>>()?;
        let subs = file
            .subdivisions
            .iter()
            .map(|&(e, t, spec)| (e, t, spec.to_point()))
            .collect();
        DendriteMap::new(dendrite, images, subs)
    }

    pub fn to_file(&self, inline: bool, dendrite_path: Option<String>) -> MapFile {
        let dendrite = if inline || dendrite_path.is_none() {
            let file: DendriteFile =
                serde_json::from_str(&self.dendrite.to_json()).expect("roundtrip");
            DendriteSource::Inline(file)
        } else {
            DendriteSource::Path(dendrite_path.unwrap())
        };
        let vertex_images = self
            .vertex_images
            .iter()
            .enumerate()
            .map(|(v, &p)| (v.to_string(), PointSpec::from_point(p)))
            .collect();
        let mut subdivisions = Vec::new();
        for (e, brk) in self.edge_breaks.iter().enumerate() {
            for &(t, img) in &brk[1..brk.len() - 1] {
                subdivisions.push((e as u32, t, PointSpec::from_point(img)));
            }
        }
        MapFile { dendrite, vertex_images, subdivisions }
    }
}
