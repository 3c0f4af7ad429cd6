//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{jitter_to_general_position, Point, Rect};
use crate::setsystem::{Cost, SetCoverInstance, SetEntry, FORMAT_VERSION};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverParams {
    pub n: usize,
    pub m: usize,
    /// Inclusive capacity range.
    pub capacity: (u32, u32),
    /// Inclusive integer cost range.
    pub cost: (u64, u64),
    /// Probability that an element belongs to a set.
    pub density: f64,
}

impl CoverParams {
    pub fn new(n: usize, m: usize) -> Self {
        CoverParams { n, m, capacity: (1, 3), cost: (1, 10), density: 0.4 }
    }

    fn check(&self) -> Result<()> {
        if self.capacity.0 == 0 || self.capacity.0 > self.capacity.1 || self.cost.0 > self.cost.1 {
            return Err(Error::Precondition("capacity and cost ranges must be nonempty, capacities positive".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::Precondition(format!("density must lie in [0, 1], got {}", self.density)));
        }
        Ok(())
    }
}

pub fn random_cover(params: &CoverParams, seed: u64) -> Result<SetCoverInstance> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = (0..params.m)
        .map(|id| {
            let members: Vec<usize> = (0..params.n).filter(|_| rng.random_bool(params.density)).collect();
            let capacity = rng.random_range(params.capacity.0..=params.capacity.1);
            let cost = Cost::from_int(rng.random_range(params.cost.0..=params.cost.1));
            SetEntry::new(id, members, cost, capacity)
        })
        .collect();
    SetCoverInstance::new(params.n, sets)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Antenna {
    pub center: Point,
    pub radius: f64,
    pub capacity: u32,
    pub cost: Cost,
}

/// Users and disk-shaped antenna ranges in the unit square.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AntennaScene {
    pub format_version: u32,
    pub users: Vec<Point>,
    pub antennas: Vec<Antenna>,
}

impl AntennaScene {
    pub fn covers(&self, antenna: usize, user: usize) -> bool {
        let (a, u) = (&self.antennas[antenna], self.users[user]);
        let (dx, dy) = (u.x - a.center.x, u.y - a.center.y);
        dx * dx + dy * dy <= a.radius * a.radius
    }

    /// One set per antenna holding the users inside its disk.
    pub fn to_instance(&self) -> Result<SetCoverInstance> {
        let sets = (0..self.antennas.len())
            .map(|a| {
                let members = (0..self.users.len()).filter(|&u| self.covers(a, u));
                SetEntry::new(a, members, self.antennas[a].cost, self.antennas[a].capacity)
            })
            .collect();
        SetCoverInstance::new(self.users.len(), sets)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Radii in [0.2, 0.45], capacities in [2, 2·users/antennas + 2], cost growing with
/// the covered area.
pub fn antenna(users: usize, antennas: usize, seed: u64) -> Result<AntennaScene> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let user_points = (0..users).map(|_| Point::new(rng.random(), rng.random())).collect();
    let cap_hi = (2 * users / antennas.max(1) + 2) as u32;
    let antennas = (0..antennas)
        .map(|_| {
            let center = Point::new(rng.random(), rng.random());
            let radius: f64 = rng.random_range(0.2..=0.45);
            let capacity = rng.random_range(2..=cap_hi);
            let cost = Cost::from_int(1 + (radius * radius * 40.0).round() as u64);
            Antenna { center, radius, capacity, cost }
        })
        .collect();
    Ok(AntennaScene { format_version: FORMAT_VERSION, users: user_points, antennas })
}

fn general_position(mut points: Vec<Point>, seed: u64) -> Vec<Point> {
    jitter_to_general_position(&mut points, seed);
    points
}

pub fn uniform_points(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n).map(|_| Point::new(rng.random(), rng.random())).collect();
    general_position(points, seed)
}

/// Gaussian blobs (standard deviation 0.03) around uniform centers.
pub fn clustered_points(n: usize, clusters: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<Point> = (0..clusters.max(1)).map(|_| Point::new(rng.random(), rng.random())).collect();
    let noise = Normal::new(0.0, 0.03).expect("valid deviation");
    let points = (0..n)
        .map(|i| {
            let c = centers[i % centers.len()];
            Point::new(c.x + noise.sample(&mut rng), c.y + noise.sample(&mut rng))
        })
        .collect();
    general_position(points, seed)
}

/// Two parallel descending staircases of `s` points each: one in the upper right,
/// one in the lower left. Each upper step and each lower step bound a common
/// maximal empty rectangle, so there are at least s² of them.
pub fn staircase(s: usize) -> Vec<Point> {
    let h = (s + 1) as f64;
    let upper = (1..=s).map(|i| Point::new(i as f64, h - i as f64));
    let lower = (1..=s).map(|j| Point::new(-(j as f64), j as f64 - h));
    upper.chain(lower).collect()
}

/// Integer lattice points `(col, row)`, row-major.
pub fn grid(rows: usize, cols: usize) -> Vec<Point> {
    (0..rows * cols).map(|i| Point::new((i % cols) as f64, (i / cols) as f64)).collect()
}

/// Rectangles placed around random input points, so each holds at least one.
/// Side lengths are uniform in `(0, max_side]`.
pub fn random_rects(points: &[Point], m: usize, max_side: f64, seed: u64) -> Result<Vec<Rect>> {
    if points.is_empty() && m > 0 {
        return Err(Error::Precondition("cannot place rectangles without points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..m)
        .map(|_| {
            let p = points[rng.random_range(0..points.len())];
            let (w, h) = (rng.random::<f64>() * max_side, rng.random::<f64>() * max_side);
            let (fx, fy) = (rng.random::<f64>(), rng.random::<f64>());
            Rect::new(p.x - fx * w, p.y - fy * h, p.x + (1.0 - fx) * w, p.y + (1.0 - fy) * h)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointSet;

    #[test]
    fn generators_are_seeded() {
        assert_eq!(uniform_points(20, 4), uniform_points(20, 4));
        assert_ne!(uniform_points(20, 4), uniform_points(20, 5));
        assert_eq!(random_cover(&CoverParams::new(6, 4), 2).unwrap(), random_cover(&CoverParams::new(6, 4), 2).unwrap());
    }

    #[test]
    fn point_generators_give_general_position() {
        for pts in [uniform_points(500, 1), clustered_points(500, 5, 1), staircase(50)] {
            assert!(PointSet::new(pts).unwrap().in_general_position());
        }
        assert_eq!(staircase(10).len(), 20);
    }

    #[test]
    fn rects_are_stabbed() {
        let pts = uniform_points(30, 9);
        for r in random_rects(&pts, 40, 0.3, 9).unwrap() {
            assert!(pts.iter().any(|&p| r.contains(p)));
        }
    }

    #[test]
    fn antenna_membership_is_disk_containment() {
        let scene = antenna(50, 8, 3).unwrap();
        let inst = scene.to_instance().unwrap();
        for (a, set) in inst.sets().iter().enumerate() {
            let ant = &scene.antennas[a];
            for u in 0..50 {
                let d = ((scene.users[u].x - ant.center.x).powi(2) + (scene.users[u].y - ant.center.y).powi(2)).sqrt();
                assert_eq!(set.contains(u), d <= ant.radius);
            }
        }
    }
}
