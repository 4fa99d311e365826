//! Closed connected subsets of a dendrite.
//!
//! A connected subset meets each edge in a (possibly degenerate) interval, so
//! a [`Subdendrite`] stores one closed interval per touched edge plus the set
//! of contained vertices. Subdendrites are stored closed; open cells are
//! handled elsewhere as a closed body minus listed boundary points.

use crate::dendrite::{ArcPath, DPoint, Dendrite};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subdendrite {
    verts: BTreeSet<u32>,
    /// edge -> closed interval [lo, hi] of the intersection, kept only when
    /// the intersection meets the open edge
    segs: BTreeMap<u32, (f64, f64)>,
}

/// How two subdendrites meet, as a point set.
#[derive(Debug, Clone, PartialEq)]
pub enum Intersection {
    Empty,
    SinglePoint(DPoint),
    Larger,
}

/// A connected component of `base` minus `y`, returned as its closure.
#[derive(Debug, Clone)]
pub struct Component {
    pub closure: Subdendrite,
    /// the unique point of `y` this component attaches to
    pub attachment: DPoint,
}

impl Subdendrite {
    pub fn empty() -> Self {
        Subdendrite { verts: BTreeSet::new(), segs: BTreeMap::new() }
    }

    pub fn single_point(dendrite: &Dendrite, p: DPoint) -> Self {
        let mut s = Subdendrite::empty();
        match dendrite.canon(p) {
            DPoint::Vertex(v) => {
                s.verts.insert(v);
            }
            DPoint::Interior { edge, t } => {
                s.segs.insert(edge, (t, t));
            }
        }
        s
    }

    /// The whole dendrite as a subdendrite.
    pub fn whole(dendrite: &Dendrite) -> Self {
        let mut s = Subdendrite::empty();
        for v in 0..dendrite.n_vertices() as u32 {
            s.verts.insert(v);
        }
        for e in 0..dendrite.n_edges() as u32 {
            s.segs.insert(e, (0.0, 1.0));
        }
        s
    }

    pub fn from_path(dendrite: &Dendrite, path: &ArcPath) -> Self {
        let mut s = Subdendrite::single_point(dendrite, path.start);
        for step in &path.steps {
            let (lo, hi) = (step.t0.min(step.t1), step.t0.max(step.t1));
            s.insert_seg(dendrite, step.edge, lo, hi);
        }
        s.include_point(dendrite, path.end);
        s
    }

    fn include_point(&mut self, dendrite: &Dendrite, p: DPoint) {
        match dendrite.canon(p) {
            DPoint::Vertex(v) => {
                self.verts.insert(v);
            }
            DPoint::Interior { edge, t } => {
                self.insert_seg(dendrite, edge, t, t);
            }
        }
    }

    fn insert_seg(&mut self, dendrite: &Dendrite, edge: u32, lo: f64, hi: f64) {
        let tol = dendrite.tol();
        let entry = self.segs.entry(edge).or_insert((lo, hi));
        entry.0 = entry.0.min(lo);
        entry.1 = entry.1.max(hi);
        let e = dendrite.edge(edge);
        if entry.0 <= tol {
            entry.0 = 0.0;
            self.verts.insert(e.u);
        }
        if entry.1 >= 1.0 - tol {
            entry.1 = 1.0;
            self.verts.insert(e.v);
        }
    }

    /// Union of pieces whose overall union is connected. Per-edge intervals
    /// convexify, which is exact for connected unions in a tree.
    pub fn union_connected(dendrite: &Dendrite, parts: &[Subdendrite]) -> Subdendrite {
        let mut out = Subdendrite::empty();
        for p in parts {
            for &v in &p.verts {
                out.verts.insert(v);
            }
            for (&e, &(lo, hi)) in &p.segs {
                out.insert_seg(dendrite, e, lo, hi);
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty() && self.segs.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.verts.iter().copied()
    }

    pub fn segments(&self) -> impl Iterator<Item = (u32, f64, f64)> + '_ {
        self.segs.iter().map(|(&e, &(lo, hi))| (e, lo, hi))
    }

    pub fn seg(&self, edge: u32) -> Option<(f64, f64)> {
        self.segs.get(&edge).copied()
    }

    pub fn contains(&self, dendrite: &Dendrite, p: DPoint) -> bool {
        let tol = dendrite.tol();
        match dendrite.canon(p) {
            DPoint::Vertex(v) => self.verts.contains(&v),
            DPoint::Interior { edge, t } => match self.segs.get(&edge) {
                Some(&(lo, hi)) => t >= lo - tol && t <= hi + tol,
                None => false,
            },
        }
    }

    /// Some point of the subdendrite (lowest vertex, else a segment point).
    pub fn any_point(&self) -> Option<DPoint> {
        if let Some(&v) = self.verts.iter().next() {
            return Some(DPoint::Vertex(v));
        }
        self.segs
            .iter()
            .next()
            .map(|(&e, &(lo, hi))| DPoint::interior(e, 0.5 * (lo + hi)))
    }

    /// Total arc length of the subdendrite.
    pub fn length(&self, dendrite: &Dendrite) -> f64 {
        self.segs
            .iter()
            .map(|(&e, &(lo, hi))| (hi - lo) * dendrite.edge(e).len)
            .sum()
    }

    /// First point map (retraction) `r_Y`: the unique point of `Y` lying on
    /// every arc from `x` into `Y`; `x` itself when `x` is in `Y`.
    pub fn first_point(&self, dendrite: &Dendrite, x: DPoint) -> Result<DPoint> {
        if self.is_empty() {
            return Err(Error::domain("first point map of an empty subdendrite"));
        }
        let x = dendrite.canon(x);
        if self.contains(dendrite, x) {
            return Ok(x);
        }
        let target = self.any_point().expect("nonempty");
        let path = dendrite.path(x, target)?;
        let tol = dendrite.tol();
        // walk the arc and stop at the first point of Y
        for step in &path.steps {
            let start_pt = dendrite.canon(DPoint::interior(step.edge, step.t0));
            if self.contains(dendrite, start_pt) {
                return Ok(start_pt);
            }
            if let Some(&(lo, hi)) = self.segs.get(&step.edge) {
                // entering the interval while traversing t0 -> t1
                if step.t1 > step.t0 {
                    if lo >= step.t0 - tol && lo <= step.t1 + tol {
                        return Ok(dendrite.canon(DPoint::interior(step.edge, lo)));
                    }
                } else if hi <= step.t0 + tol && hi >= step.t1 - tol {
                    return Ok(dendrite.canon(DPoint::interior(step.edge, hi)));
                }
            }
            let end_pt = dendrite.canon(DPoint::interior(step.edge, step.t1));
            if self.contains(dendrite, end_pt) {
                return Ok(end_pt);
            }
        }
        Ok(path.end)
    }

    /// Distance from a point to the subdendrite (0 when contained).
    pub fn distance_to(&self, dendrite: &Dendrite, p: DPoint) -> Result<f64> {
        if self.contains(dendrite, p) {
            return Ok(0.0);
        }
        let gate = self.first_point(dendrite, p)?;
        dendrite.distance(p, gate)
    }

    /// Order of `p` relative to the subdendrite: number of directions out of
    /// `p` that remain inside it. 0 for an isolated point.
    pub fn order_in(&self, dendrite: &Dendrite, p: DPoint) -> usize {
        let tol = dendrite.tol();
        match dendrite.canon(p) {
            DPoint::Interior { edge, t } => match self.segs.get(&edge) {
                Some(&(lo, hi)) => {
                    let mut ord = 0;
                    if t > lo + tol {
                        ord += 1;
                    }
                    if t < hi - tol {
                        ord += 1;
                    }
                    ord
                }
                None => 0,
            },
            DPoint::Vertex(v) => {
                if !self.verts.contains(&v) {
                    return 0;
                }
                let mut ord = 0;
                for &(e, _) in dendrite.neighbors(v) {
                    if let Some(&(lo, hi)) = self.segs.get(&e) {
                        let at_u = dendrite.edge(e).u == v;
                        if at_u && lo <= tol && hi > tol {
                            ord += 1;
                        }
                        if !at_u && hi >= 1.0 - tol && lo < 1.0 - tol {
                            ord += 1;
                        }
                    }
                }
                ord
            }
        }
    }

    /// Candidate boundary-ish points: contained vertices plus segment ends.
    fn node_points(&self, dendrite: &Dendrite) -> Vec<DPoint> {
        let mut pts: Vec<DPoint> = self.verts.iter().map(|&v| DPoint::Vertex(v)).collect();
        for (&e, &(lo, hi)) in &self.segs {
            for t in [lo, hi] {
                let p = dendrite.canon(DPoint::interior(e, t));
                if matches!(p, DPoint::Interior { .. }) {
                    pts.push(p);
                }
            }
        }
        // dedup interior duplicates (lo == hi)
        let mut out: Vec<DPoint> = Vec::new();
        for p in pts {
            if !out.iter().any(|&q| dendrite.points_eq(p, q)) {
                out.push(p);
            }
        }
        out
    }

    /// Endpoints `E(Y)`: points of order <= 1 in `Y` (an isolated point is
    /// its own endpoint).
    pub fn endpoints_in(&self, dendrite: &Dendrite) -> Vec<DPoint> {
        self.node_points(dendrite)
            .into_iter()
            .filter(|&p| self.order_in(dendrite, p) <= 1)
            .collect()
    }

    /// Branch points of `Y`: order >= 3 in `Y`.
    pub fn branch_points_in(&self, dendrite: &Dendrite) -> Vec<DPoint> {
        self.node_points(dendrite)
            .into_iter()
            .filter(|&p| self.order_in(dendrite, p) >= 3)
            .collect()
    }

    /// Diameter via a double sweep over the endpoint set.
    pub fn diameter(&self, dendrite: &Dendrite) -> f64 {
        let ends = self.endpoints_in(dendrite);
        if ends.len() <= 1 {
            return 0.0;
        }
        let far = |from: DPoint| -> (DPoint, f64) {
            let mut best = (from, 0.0);
            for &e in &ends {
                let d = dendrite.distance(from, e).unwrap_or(0.0);
                if d > best.1 {
                    best = (e, d);
                }
            }
            best
        };
        let (q, _) = far(ends[0]);
        far(q).1
    }

    /// Sample points with spacing at most `spacing` along every segment,
    /// including segment ends and contained vertices.
    pub fn grid(&self, dendrite: &Dendrite, spacing: f64) -> Vec<DPoint> {
        let mut pts: Vec<DPoint> = self.verts.iter().map(|&v| DPoint::Vertex(v)).collect();
        for (&e, &(lo, hi)) in &self.segs {
            let len = (hi - lo) * dendrite.edge(e).len;
            let k = (len / spacing).ceil().max(1.0) as usize;
            for j in 0..=k {
                let t = lo + (hi - lo) * j as f64 / k as f64;
                let p = dendrite.canon(DPoint::interior(e, t));
                if matches!(p, DPoint::Interior { .. }) {
                    pts.push(p);
                }
            }
        }
        pts
    }

    /// Set equality within the dendrite tolerance.
    pub fn set_eq(&self, dendrite: &Dendrite, other: &Subdendrite) -> bool {
        self.contains_subd(dendrite, other) && other.contains_subd(dendrite, self)
    }

    /// Does `self` contain `other` (within tolerance)?
    pub fn contains_subd(&self, dendrite: &Dendrite, other: &Subdendrite) -> bool {
        let tol = dendrite.tol();
        for &v in &other.verts {
            if !self.verts.contains(&v) {
                return false;
            }
        }
        for (&e, &(lo, hi)) in &other.segs {
            if hi - lo <= tol {
                // degenerate: point membership
                if !self.contains(dendrite, DPoint::interior(e, 0.5 * (lo + hi))) {
                    return false;
                }
                continue;
            }
            match self.segs.get(&e) {
                Some(&(slo, shi)) => {
                    if lo < slo - tol || hi > shi + tol {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }

    /// Exact point-set intersection summary of two subdendrites.
    pub fn intersection_summary(&self, dendrite: &Dendrite, other: &Subdendrite) -> Intersection {
        let tol = dendrite.tol();
        let mut found: Option<DPoint> = None;
        let mut record = |p: DPoint, found: &mut Option<DPoint>| -> bool {
            match *found {
                None => {
                    *found = Some(p);
                    false
                }
                Some(q) => !dendrite.points_eq(p, q),
            }
        };
        for &v in self.verts.intersection(&other.verts) {
            if record(DPoint::Vertex(v), &mut found) {
                return Intersection::Larger;
            }
        }
        for (&e, &(lo, hi)) in &self.segs {
            if let Some(&(olo, ohi)) = other.segs.get(&e) {
                let lo2 = lo.max(olo);
                let hi2 = hi.min(ohi);
                if hi2 < lo2 - tol {
                    continue;
                }
                if hi2 - lo2 > tol {
                    return Intersection::Larger;
                }
                let p = dendrite.canon(DPoint::interior(e, 0.5 * (lo2 + hi2)));
                if record(p, &mut found) {
                    return Intersection::Larger;
                }
            }
        }
        match found {
            None => Intersection::Empty,
            Some(p) => Intersection::SinglePoint(p),
        }
    }

    pub fn intersects(&self, dendrite: &Dendrite, other: &Subdendrite) -> bool {
        !matches!(self.intersection_summary(dendrite, other), Intersection::Empty)
    }

    /// Intersection of two subdendrites (connected or empty in a tree).
    pub fn intersection(&self, dendrite: &Dendrite, other: &Subdendrite) -> Subdendrite {
        let tol = dendrite.tol();
        let mut out = Subdendrite::empty();
        for &v in self.verts.intersection(&other.verts) {
            out.verts.insert(v);
        }
        for (&e, &(lo, hi)) in &self.segs {
            if let Some(&(olo, ohi)) = other.segs.get(&e) {
                let lo2 = lo.max(olo);
                let hi2 = hi.min(ohi);
                if hi2 >= lo2 - tol {
                    let lo2 = lo2.min(hi2);
                    out.segs.insert(e, (lo2, hi2.max(lo2)));
                }
            }
        }
        out
    }

    /// Minimal distance between two disjoint subdendrites (0 if they meet).
    pub fn gap_to(&self, dendrite: &Dendrite, other: &Subdendrite) -> Result<f64> {
        if self.intersects(dendrite, other) {
            return Ok(0.0);
        }
        let a0 = self
            .any_point()
            .ok_or_else(|| Error::domain("gap of empty subdendrite"))?;
        let p = other.first_point(dendrite, a0)?;
        let q = self.first_point(dendrite, p)?;
        dendrite.distance(q, p)
    }
}

// ---------------------------------------------------------------------------
// Hull and complements
// ---------------------------------------------------------------------------

/// Convex hull `[F]`: the smallest subdendrite containing `F`, computed as the
/// union of arcs from a fixed base point to every other point of `F`.
pub fn convex_hull(dendrite: &Dendrite, points: &[DPoint]) -> Result<Subdendrite> {
    if points.is_empty() {
        return Err(Error::domain("convex hull of an empty set"));
    }
    let base = dendrite.canon(points[0]);
    let mut parts = vec![Subdendrite::single_point(dendrite, base)];
    for &p in &points[1..] {
        let path = dendrite.path(base, p)?;
        parts.push(Subdendrite::from_path(dendrite, &path));
    }
    Ok(Subdendrite::union_connected(dendrite, &parts))
}

/// The unique arc `[x, y]` as a subdendrite, with its length.
pub fn arc(dendrite: &Dendrite, x: DPoint, y: DPoint) -> Result<(Subdendrite, f64)> {
    let path = dendrite.path(x, y)?;
    Ok((Subdendrite::from_path(dendrite, &path), path.len))
}

/// Connected components of `base` minus `y`, as closures with their
/// attachment points. `y` must be a nonempty subset of `base`.
pub fn components_within(
    dendrite: &Dendrite,
    base: &Subdendrite,
    y: &Subdendrite,
) -> Result<Vec<Component>> {
    let tol = dendrite.tol();
    if y.is_empty() {
        return Err(Error::domain("components_within: empty cut set"));
    }

    // pieces of base-edge intervals not covered by y
    struct Piece {
        edge: u32,
        lo: f64,
        hi: f64,
        // vertex joins when the piece reaches a vertex not in y
        join_u: bool,
        join_v: bool,
        // candidate attachment point on y, if the piece abuts y
        attach: Option<DPoint>,
    }

    let mut pieces: Vec<Piece> = Vec::new();
    for (e, lo, hi) in base.segments() {
        let ed = dendrite.edge(e);
        let vert_in_y = |v: u32| y.contains(dendrite, DPoint::Vertex(v));
        let mut push = |plo: f64, phi: f64, attach_lo: bool, attach_hi: bool| {
            if phi - plo <= tol && !(attach_lo || attach_hi) {
                return;
            }
            let reaches_u = plo <= tol;
            let reaches_v = phi >= 1.0 - tol;
            let mut attach = None;
            if attach_lo {
                attach = Some(dendrite.canon(DPoint::interior(e, plo)));
            }
            if attach_hi {
                attach = Some(dendrite.canon(DPoint::interior(e, phi)));
            }
            // a piece reaching a vertex that lies in y attaches there
            if attach.is_none() && reaches_u && vert_in_y(ed.u) {
                attach = Some(DPoint::Vertex(ed.u));
            }
            if attach.is_none() && reaches_v && vert_in_y(ed.v) {
                attach = Some(DPoint::Vertex(ed.v));
            }
            pieces.push(Piece {
                edge: e,
                lo: plo,
                hi: phi,
                join_u: reaches_u && !vert_in_y(ed.u),
                join_v: reaches_v && !vert_in_y(ed.v),
                attach,
            });
        };
        match y.seg(e) {
            None => push(lo, hi, false, false),
            Some((ylo, yhi)) => {
                if ylo > lo + tol {
                    push(lo, ylo, false, true);
                }
                if yhi < hi - tol {
                    push(yhi, hi, true, false);
                }
            }
        }
    }

    // union-find over pieces and free vertices
    let piece_count = pieces.len();
    let free_verts: Vec<u32> = base
        .vertices()
        .filter(|&v| !y.contains(dendrite, DPoint::Vertex(v)))
        .collect();
    let vert_slot: BTreeMap<u32, usize> = free_verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, piece_count + i))
        .collect();
    let mut uf: Vec<usize> = (0..piece_count + free_verts.len()).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for (i, p) in pieces.iter().enumerate() {
        let ed = dendrite.edge(p.edge);
        if p.join_u {
            if let Some(&s) = vert_slot.get(&ed.u) {
                let (a, b) = (find(&mut uf, i), find(&mut uf, s));
                uf[a] = b;
            }
        }
        if p.join_v {
            if let Some(&s) = vert_slot.get(&ed.v) {
                let (a, b) = (find(&mut uf, i), find(&mut uf, s));
                uf[a] = b;
            }
        }
    }

    let mut groups: BTreeMap<usize, (Vec<usize>, Vec<u32>)> = BTreeMap::new();
    for i in 0..piece_count {
        let r = find(&mut uf, i);
        groups.entry(r).or_default().0.push(i);
    }
    for (&v, &slot) in &vert_slot {
        let r = find(&mut uf, slot);
        groups.entry(r).or_default().1.push(v);
    }

    let mut out = Vec::new();
    for (_, (piece_ids, verts)) in groups {
        let mut sd = Subdendrite::empty();
        for &v in &verts {
            sd.verts.insert(v);
        }
        let mut attach: Option<DPoint> = None;
        for &pi in &piece_ids {
            let p = &pieces[pi];
            sd.insert_seg(dendrite, p.edge, p.lo, p.hi);
            if let Some(a) = p.attach {
                match attach {
                    None => attach = Some(a),
                    Some(prev) => {
                        if !dendrite.points_eq(prev, a) {
                            return Err(Error::Diagnostic(format!(
                                "component touches the cut set at two points: {} and {}",
                                prev.describe(),
                                a.describe()
                            )));
                        }
                    }
                }
            }
        }
        let attachment = match attach {
            Some(a) => a,
            None => {
                // component never abuts y: only possible when y misses base
                return Err(Error::Diagnostic(
                    "component of the complement has no attachment on the cut set".into(),
                ));
            }
        };
        if !sd.is_empty() {
            out.push(Component { closure: sd, attachment });
        }
    }
    Ok(out)
}

/// Components of the full dendrite minus `y`.
pub fn components_minus(dendrite: &Dendrite, y: &Subdendrite) -> Result<Vec<Component>> {
    components_within(dendrite, &Subdendrite::whole(dendrite), y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendrite::{path_graph, star_graph};

    #[test]
    fn arc_examples() {
        let p = path_graph(&[1.0, 1.0]);
        let (sd, len) = arc(&p, DPoint::vertex(0), DPoint::vertex(2)).unwrap();
        assert_eq!(len, 2.0);
        assert_eq!(sd.segments().count(), 2);
        let s = star_graph(&[1.0, 1.0, 1.0]);
        let (_, len) = arc(&s, DPoint::vertex(1), DPoint::vertex(2)).unwrap();
        assert_eq!(len, 2.0);
        let (sd, len) = arc(&s, DPoint::vertex(1), DPoint::vertex(1)).unwrap();
        assert_eq!(len, 0.0);
        assert!(sd.contains(&s, DPoint::vertex(1)));
    }

    #[test]
    fn first_point_map_examples() {
        let p = path_graph(&[1.0, 1.0]);
        // Y = first edge, x = far endpoint -> gate is the middle vertex
        let (y, _) = arc(&p, DPoint::vertex(0), DPoint::vertex(1)).unwrap();
        let r = y.first_point(&p, DPoint::vertex(2)).unwrap();
        assert!(p.points_eq(r, DPoint::vertex(1)));
        // x in Y -> identity
        let r = y.first_point(&p, DPoint::interior(0, 0.5)).unwrap();
        assert!(p.points_eq(r, DPoint::interior(0, 0.5)));
        // star with Y = hub
        let s = star_graph(&[1.0, 1.0, 1.0]);
        let hub = Subdendrite::single_point(&s, DPoint::vertex(0));
        for leaf in 1..=3 {
            let r = hub.first_point(&s, DPoint::vertex(leaf)).unwrap();
            assert!(s.points_eq(r, DPoint::vertex(0)));
        }
        assert!(Subdendrite::empty().first_point(&s, DPoint::vertex(0)).is_err());
    }

    #[test]
    fn first_point_is_constant_on_components() {
        let s = star_graph(&[1.0, 1.0, 1.0]);
        let (y, _) = arc(&s, DPoint::vertex(0), DPoint::vertex(1)).unwrap();
        let r1 = y.first_point(&s, DPoint::vertex(2)).unwrap();
        let r2 = y.first_point(&s, DPoint::interior(1, 0.7)).unwrap();
        assert!(s.points_eq(r1, DPoint::vertex(0)));
        assert!(s.points_eq(r1, r2));
    }

    #[test]
    fn convex_hull_examples() {
        let s = star_graph(&[1.0, 1.0, 1.0]);
        // two leaves: hull is the arc through the hub
        let h = convex_hull(&s, &[DPoint::vertex(1), DPoint::vertex(2)]).unwrap();
        assert!(h.contains(&s, DPoint::vertex(0)));
        assert!(!h.contains(&s, DPoint::interior(2, 0.5)));
        // all three leaves: hull is the whole star, endpoints recovered
        let f = vec![DPoint::vertex(1), DPoint::vertex(2), DPoint::vertex(3)];
        let h = convex_hull(&s, &f).unwrap();
        assert!(h.set_eq(&s, &Subdendrite::whole(&s)));
        let ends = h.endpoints_in(&s);
        assert_eq!(ends.len(), 3);
        for e in ends {
            assert!(f.iter().any(|&p| s.points_eq(p, e)));
        }
        // singleton
        let h = convex_hull(&s, &[DPoint::interior(0, 0.5)]).unwrap();
        assert!(h.contains(&s, DPoint::interior(0, 0.5)));
        assert_eq!(h.diameter(&s), 0.0);
        assert!(convex_hull(&s, &[]).is_err());
    }

    #[test]
    fn components_examples() {
        let p = path_graph(&[1.0, 1.0]);
        // cut at middle vertex -> two components attached at it
        let y = Subdendrite::single_point(&p, DPoint::vertex(1));
        let comps = components_minus(&p, &y).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert!(p.points_eq(c.attachment, DPoint::vertex(1)));
        }
        // Y = X -> nothing left
        let comps = components_minus(&p, &Subdendrite::whole(&p)).unwrap();
        assert!(comps.is_empty());
        // star minus one closed edge -> two components attached at the hub
        let s = star_graph(&[1.0, 1.0, 1.0]);
        let (y, _) = arc(&s, DPoint::vertex(0), DPoint::vertex(1)).unwrap();
        let comps = components_minus(&s, &y).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert!(s.points_eq(c.attachment, DPoint::vertex(0)));
        }
    }

    #[test]
    fn components_cut_at_interior_point() {
        let p = path_graph(&[2.0]);
        let y = Subdendrite::single_point(&p, DPoint::interior(0, 0.5));
        let comps = components_minus(&p, &y).unwrap();
        assert_eq!(comps.len(), 2);
        let total: f64 = comps.iter().map(|c| c.closure.length(&p)).sum();
        assert!((total - 2.0).abs() < 1e-9);
    }

    #[test]
    fn intersection_summaries() {
        let p = path_graph(&[1.0, 1.0]);
        let (a, _) = arc(&p, DPoint::vertex(0), DPoint::vertex(1)).unwrap();
        let (b, _) = arc(&p, DPoint::vertex(1), DPoint::vertex(2)).unwrap();
        assert_eq!(
            a.intersection_summary(&p, &b),
            Intersection::SinglePoint(DPoint::Vertex(1))
        );
        let (c, _) = arc(&p, DPoint::interior(0, 0.2), DPoint::interior(0, 0.6)).unwrap();
        let (d, _) = arc(&p, DPoint::interior(0, 0.5), DPoint::vertex(2)).unwrap();
        assert_eq!(c.intersection_summary(&p, &d), Intersection::Larger);
        let far = Subdendrite::single_point(&p, DPoint::interior(1, 0.9));
        assert_eq!(c.intersection_summary(&p, &far), Intersection::Empty);
        assert!((c.gap_to(&p, &far).unwrap() - 1.2).abs() < 1e-9);
    }

    #[test]
    fn order_in_and_endpoints() {
        let s = star_graph(&[1.0, 1.0, 1.0]);
        let whole = Subdendrite::whole(&s);
        assert_eq!(whole.order_in(&s, DPoint::vertex(0)), 3);
        assert_eq!(whole.order_in(&s, DPoint::interior(0, 0.5)), 2);
        assert_eq!(whole.order_in(&s, DPoint::vertex(1)), 1);
        let (a, _) = arc(&s, DPoint::interior(0, 0.5), DPoint::interior(1, 0.5)).unwrap();
        assert_eq!(a.order_in(&s, DPoint::vertex(0)), 2);
        let ends = a.endpoints_in(&s);
        assert_eq!(ends.len(), 2);
        assert!((a.diameter(&s) - 1.0).abs() < 1e-12);
    }
}
