//! Orbits, omega-limit approximations, and orbit-pair classification.

use crate::dendrite::{DPoint, Dendrite};
use crate::error::{Error, Result};
use crate::map::DendriteMap;
use std::collections::HashMap;

/// Forward orbit `[x, f(x), ..., f^N(x)]`.
pub fn orbit(map: &DendriteMap, x: DPoint, n: usize) -> Vec<DPoint> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = map.dendrite().canon(x);
    out.push(p);
    for _ in 0..n {
        p = map.eval(p);
        out.push(p);
    }
    out
}

/// An orbit stored as a preperiod plus a detected cycle, so that arbitrary
/// indices are O(1). Detection quantizes coordinates to the point tolerance;
/// when no cycle shows up within the scan budget the prefix simply grows.
#[derive(Debug, Clone)]
pub struct CompressedOrbit {
    pub prefix: Vec<DPoint>,
    pub cycle: Vec<DPoint>,
}

fn quantize_key(d: &Dendrite, p: DPoint) -> (u32, u64) {
    match d.canon(p) {
        DPoint::Vertex(v) => (u32::MAX, v as u64),
        DPoint::Interior { edge, t } => {
            let q = (t / d.tol().max(1e-12)).round() as u64;
            (edge, q)
        }
    }
}

impl CompressedOrbit {
    /// Follow the orbit of `x`, stopping once a state repeats (within the
    /// point tolerance) or after `max_scan` steps.
    pub fn compute(map: &DendriteMap, x: DPoint, max_scan: usize) -> CompressedOrbit {
        let d = &**map.dendrite();
        let mut seen: HashMap<(u32, u64), usize> = HashMap::new();
        let mut pts: Vec<DPoint> = Vec::new();
        let mut p = d.canon(x);
        for i in 0..=max_scan {
            let key = quantize_key(d, p);
            if let Some(&j) = seen.get(&key) {
                if d.distance(pts[j], p).unwrap_or(f64::INFINITY) <= d.tol() {
                    let cycle = pts.split_off(j);
                    return CompressedOrbit { prefix: pts, cycle };
                }
            }
            seen.insert(key, i);
            pts.push(p);
            p = map.eval(p);
        }
        CompressedOrbit { prefix: pts, cycle: Vec::new() }
    }

    pub fn point_at(&self, n: usize) -> DPoint {
        if n < self.prefix.len() {
            self.prefix[n]
        } else if !self.cycle.is_empty() {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        } else {
            *self.prefix.last().expect("nonempty orbit")
        }
    }

    /// Index of the stored point used for index `n`, for value caching.
    pub fn slot_of(&self, n: usize) -> usize {
        if n < self.prefix.len() {
            n
        } else if !self.cycle.is_empty() {
            self.prefix.len() + (n - self.prefix.len()) % self.cycle.len()
        } else {
            self.prefix.len() - 1
        }
    }

    pub fn distinct_points(&self) -> Vec<DPoint> {
        let mut out = self.prefix.clone();
        out.extend(self.cycle.iter().copied());
        out
    }

    pub fn is_eventually_periodic(&self) -> bool {
        !self.cycle.is_empty()
    }
}

/// Finite approximation of an omega-limit set: an eps-net of the orbit points
/// with indices in `[burn_in, burn_in + samples]`.
#[derive(Debug, Clone)]
pub struct OmegaApprox {
    pub points: Vec<DPoint>,
    pub burn_in: usize,
    pub samples: usize,
    pub resolution: f64,
    /// detected eventual period of the orbit tail, if any
    pub finite_cycle: Option<usize>,
}

pub const OMEGA_DEFAULT_BURN_IN: usize = 1_000;
pub const OMEGA_DEFAULT_SAMPLES: usize = 10_000;
pub const OMEGA_DEFAULT_RESOLUTION: f64 = 1e-3;

impl OmegaApprox {
    /// Wrap an explicit point set (e.g. an embedded sample of a known
    /// invariant set) in the interface of an orbit-derived approximation.
    pub fn from_points(points: Vec<DPoint>, resolution: f64) -> Self {
        OmegaApprox { points, burn_in: 0, samples: 0, resolution, finite_cycle: None }
    }
}

/// Omega-limit approximation by greedy eps-merging of the sampled orbit tail.
pub fn omega_limit(
    map: &DendriteMap,
    x: DPoint,
    burn_in: usize,
    samples: usize,
    resolution: f64,
) -> Result<OmegaApprox> {
    if burn_in < 1 || samples < 1 {
        return Err(Error::domain("burn-in and sample count must be at least 1"));
    }
    if !(resolution > 0.0) {
        return Err(Error::domain("resolution must be positive"));
    }
    let d = &**map.dendrite();
    let orbit = CompressedOrbit::compute(map, x, burn_in + samples);
    let mut net: Vec<DPoint> = Vec::new();
    let upper = if orbit.is_eventually_periodic() {
        // one full cycle past the burn-in suffices
        (burn_in + orbit.cycle.len()).min(burn_in + samples)
    } else {
        burn_in + samples
    };
    for n in burn_in..=upper {
        let p = orbit.point_at(n);
        if !net
            .iter()
            .any(|&q| d.distance(p, q).unwrap_or(f64::INFINITY) <= resolution)
        {
            net.push(p);
        }
    }
    Ok(OmegaApprox {
        points: net,
        burn_in,
        samples,
        resolution,
        finite_cycle: if orbit.is_eventually_periodic() { Some(orbit.cycle.len()) } else { None },
    })
}

/// Verdict of the finite-horizon pair classification. Always evidence, never
/// a theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    Neither,
    ProximalOnly,
    Asymptotic,
    LiYorkeCandidate,
}

#[derive(Debug, Clone)]
pub struct PairReport {
    pub class: PairClass,
    pub min_distance: f64,
    pub tail_max: f64,
    pub tail_min: f64,
}

/// Classify an orbit pair at horizon `h`: proximality evidence when some
/// iterate comes within `delta_prox`, non-asymptotic evidence when the tail
/// window keeps exceeding `delta_asym`. A Li-Yorke candidate needs both
/// recurring proximity and recurring separation in the tail.
pub fn classify_pair(
    map: &DendriteMap,
    x: DPoint,
    y: DPoint,
    horizon: usize,
    delta_prox: f64,
    delta_asym: f64,
) -> Result<PairReport> {
    if horizon < 1 {
        return Err(Error::domain("horizon must be at least 1"));
    }
    if !(delta_prox > 0.0 && delta_asym > 0.0) {
        return Err(Error::domain("thresholds must be positive"));
    }
    let d = &**map.dendrite();
    let ox = CompressedOrbit::compute(map, x, horizon);
    let oy = CompressedOrbit::compute(map, y, horizon);
    let mut min_distance = f64::INFINITY;
    let tail_start = horizon - horizon / 4;
    let mut tail_max: f64 = 0.0;
    let mut tail_min = f64::INFINITY;
    for n in 0..=horizon {
        let dist = d.distance(ox.point_at(n), oy.point_at(n))?;
        min_distance = min_distance.min(dist);
        if n >= tail_start {
            tail_max = tail_max.max(dist);
            tail_min = tail_min.min(dist);
        }
    }
    let proximal = min_distance < delta_prox;
    let class = if tail_max < delta_asym {
        PairClass::Asymptotic
    } else if proximal && tail_min < delta_prox && tail_max > delta_asym {
        PairClass::LiYorkeCandidate
    } else if proximal {
        PairClass::ProximalOnly
    } else {
        PairClass::Neither
    };
    Ok(PairReport { class, min_distance, tail_max, tail_min })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::DendriteMap;
    use crate::samples;
    use std::sync::Arc;

    #[test]
    fn orbit_examples() {
        let d = Arc::new(crate::dendrite::star_graph(&[1.0, 1.0, 1.0]));
        let id = DendriteMap::identity(d.clone());
        let o = orbit(&id, DPoint::vertex(1), 3);
        assert_eq!(o.len(), 4);
        assert!(o.iter().all(|&p| d.points_eq(p, DPoint::vertex(1))));

        let (d, rot) = samples::star_rotation(3);
        let o = orbit(&rot, DPoint::vertex(1), 3);
        let want = [1u32, 2, 3, 1];
        for (p, w) in o.iter().zip(want) {
            assert!(d.points_eq(*p, DPoint::vertex(w)));
        }

        let (d, tent) = samples::tent_map();
        let o = orbit(&tent, DPoint::vertex(0), 5);
        assert!(o.iter().all(|&p| d.points_eq(p, DPoint::vertex(0))));
    }

    #[test]
    fn compressed_orbit_detects_cycles() {
        let (_, rot) = samples::star_rotation(3);
        let c = CompressedOrbit::compute(&rot, DPoint::vertex(1), 100);
        assert_eq!(c.cycle.len(), 3);
        assert!(c.prefix.is_empty());
        let d = rot.dendrite();
        assert!(d.points_eq(c.point_at(7), DPoint::vertex(2)));
    }

    #[test]
    fn omega_limit_examples() {
        let (d, rot) = samples::star_rotation(3);
        let om = omega_limit(&rot, DPoint::vertex(1), 10, 100, 1e-3).unwrap();
        assert_eq!(om.points.len(), 3);
        assert_eq!(om.finite_cycle, Some(3));
        for leaf in 1..=3u32 {
            assert!(om
                .points
                .iter()
                .any(|&p| d.points_eq(p, DPoint::vertex(leaf))));
        }

        let id = DendriteMap::identity(d.clone());
        let om = omega_limit(&id, DPoint::interior(0, 0.5), 10, 100, 1e-3).unwrap();
        assert_eq!(om.points.len(), 1);
        assert_eq!(om.finite_cycle, Some(1));
    }

    #[test]
    fn omega_limit_tent_interior_fixed_point() {
        // oracle: on the decreasing lap f(x) = 2 - 2x, the fixed point solves
        // x = 2 - 2x, i.e. x = 2/3
        let (d, tent) = samples::tent_map();
        let x0 = samples::interval_point(&d, 2.0 / 3.0);
        let om = omega_limit(&tent, x0, 100, 1000, 1e-3).unwrap();
        assert_eq!(om.points.len(), 1);
        let c = samples::interval_coord(&d, om.points[0]).unwrap();
        assert!((c - 2.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn classify_pair_examples() {
        let d = Arc::new(crate::dendrite::path_graph(&[1.0]));
        let id = DendriteMap::identity(d.clone());
        let r = classify_pair(&id, DPoint::interior(0, 0.25), DPoint::interior(0, 0.75), 100, 0.1, 0.1)
            .unwrap();
        assert_eq!(r.class, PairClass::Neither);

        let (d, tent) = samples::tent_map();
        let r = classify_pair(&tent, DPoint::vertex(0), DPoint::vertex(2), 100, 0.1, 0.1).unwrap();
        assert_eq!(r.class, PairClass::Asymptotic);
        let _ = d;

        let (_, rot) = samples::star_rotation(3);
        let r = classify_pair(&rot, DPoint::vertex(1), DPoint::vertex(2), 100, 0.1, 0.1).unwrap();
        assert_eq!(r.class, PairClass::Neither);
    }

    #[test]
    fn classify_pair_symmetric() {
        let (d, tent) = samples::tent_map();
        let x = samples::interval_point(&d, 0.1234);
        let y = samples::interval_point(&d, 0.8);
        let a = classify_pair(&tent, x, y, 200, 0.05, 0.2).unwrap();
        let b = classify_pair(&tent, y, x, 200, 0.05, 0.2).unwrap();
        assert_eq!(a.class, b.class);
        assert!((a.min_distance - b.min_distance).abs() < 1e-12);
    }
}
