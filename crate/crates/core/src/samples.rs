//! Canonical small systems used across tests and the CLI examples.

use crate::dendrite::{path_graph, star_graph, DPoint, Dendrite};
use crate::map::DendriteMap;
use std::sync::Arc;

/// Unit interval as a path 0 - M - 1 with the midpoint as a vertex, plus the
/// full tent map f(0)=0, f(M)=1, f(1)=0.
pub fn tent_map() -> (Arc<Dendrite>, DendriteMap) {
    let d = Arc::new(path_graph(&[0.5, 0.5]));
    let f = DendriteMap::new(
        d.clone(),
        vec![DPoint::vertex(0), DPoint::vertex(2), DPoint::vertex(0)],
        Vec::new(),
    )
    .expect("tent map is valid");
    (d, f)
}

/// Star with `arms` unit branches and the rotation cyclically permuting them.
pub fn star_rotation(arms: usize) -> (Arc<Dendrite>, DendriteMap) {
    let d = Arc::new(star_graph(&vec![1.0; arms]));
    let mut images = vec![DPoint::vertex(0)];
    for leaf in 1..=arms as u32 {
        let next = if leaf == arms as u32 { 1 } else { leaf + 1 };
        images.push(DPoint::vertex(next));
    }
    let f = DendriteMap::new(d.clone(), images, Vec::new()).expect("rotation is valid");
    (d, f)
}

/// Absolute coordinate in [0,1] of a point on the tent-map interval.
pub fn interval_coord(d: &Dendrite, p: DPoint) -> Option<f64> {
    match d.canon(p) {
        DPoint::Vertex(0) => Some(0.0),
        DPoint::Vertex(1) => Some(0.5),
        DPoint::Vertex(2) => Some(1.0),
        DPoint::Interior { edge: 0, t } => Some(0.5 * t),
        DPoint::Interior { edge: 1, t } => Some(0.5 + 0.5 * t),
        _ => None,
    }
}

/// Point of the tent-map interval at absolute coordinate `x` in [0,1].
pub fn interval_point(d: &Dendrite, x: f64) -> DPoint {
    if x <= 0.5 {
        d.canon(DPoint::interior(0, x / 0.5))
    } else {
        d.canon(DPoint::interior(1, (x - 0.5) / 0.5))
    }
}
