//! Planar points, axis-parallel rectangles with infinite sides, and range counting.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// Input ground set; a point's id is its index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointSet {
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::Malformed(format!("point {i} has a non-finite coordinate")));
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, id: usize) -> Point {
        self.points[id]
    }

    pub fn subset(&self, ids: &[usize]) -> Vec<Point> {
        ids.iter().map(|&i| self.points[i]).collect()
    }

    /// All x distinct and all y distinct.
    pub fn in_general_position(&self) -> bool {
        first_tie(&self.points).is_none()
    }

    pub fn require_general_position(&self) -> Result<()> {
        match first_tie(&self.points) {
            None => Ok(()),
            Some((axis, a, b)) => Err(Error::DegenerateInput(format!("points {a} and {b} share a {axis} coordinate"))),
        }
    }
}

fn first_tie(points: &[Point]) -> Option<(&'static str, usize, usize)> {
    for (axis, key) in [("x", (|p: &Point| p.x) as fn(&Point) -> f64), ("y", |p: &Point| p.y)] {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| key(&points[a]).total_cmp(&key(&points[b])));
        for w in order.windows(2) {
            if key(&points[w[0]]) == key(&points[w[1]]) {
                return Some((axis, w[0].min(w[1]), w[0].max(w[1])));
            }
        }
    }
    None
}

/// Breaks coordinate ties with rank-preserving offsets.
///
/// Strictly ordered coordinates keep their order. Within a group of equal values the
/// order is drawn from `seed` and the copies are spread over less than half the gap
/// to the next distinct value. Returns whether anything moved.
pub fn jitter_to_general_position(points: &mut [Point], seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut changed = false;
    for axis in 0..2 {
        let get = |p: &Point| if axis == 0 { p.x } else { p.y };
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| get(&points[a]).total_cmp(&get(&points[b])).then(a.cmp(&b)));
        let mut start = 0;
        while start < order.len() {
            let value = get(&points[order[start]]);
            let mut end = start + 1;
            while end < order.len() && get(&points[order[end]]) == value {
                end += 1;
            }
            if end - start > 1 {
                let gap = if end < order.len() { get(&points[order[end]]) - value } else { 1.0 };
                let step = gap / (2.0 * (end - start) as f64);
                let mut group: Vec<usize> = order[start..end].to_vec();
                for i in (1..group.len()).rev() {
                    group.swap(i, rng.random_range(0..=i));
                }
                for (k, &id) in group.iter().enumerate() {
                    let moved = value + step * k as f64;
                    if axis == 0 {
                        points[id].x = moved;
                    } else {
                        points[id].y = moved;
                    }
                }
                changed = true;
            }
            start = end;
        }
    }
    changed
}

/// Which vertical side of a strip a rectangle is pinned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AnchorSide {
    Left,
    Right,
}

/// The vertical slab `x_lo < x < x_hi` (either side may be infinite).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Strip {
    #[serde(serialize_with = "ser_coord")]
    pub x_lo: f64,
    #[serde(serialize_with = "ser_coord")]
    pub x_hi: f64,
}

impl Strip {
    pub const PLANE: Strip = Strip { x_lo: f64::NEG_INFINITY, x_hi: f64::INFINITY };

    pub fn contains_x(&self, x: f64) -> bool {
        self.x_lo < x && x < self.x_hi
    }
}

fn ser_coord<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// Axis-parallel rectangle; infinite sides use ±∞.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rect {
    #[serde(serialize_with = "ser_coord")]
    pub x_lo: f64,
    #[serde(serialize_with = "ser_coord")]
    pub y_lo: f64,
    #[serde(serialize_with = "ser_coord")]
    pub x_hi: f64,
    #[serde(serialize_with = "ser_coord")]
    pub y_hi: f64,
}

impl Rect {
    pub const PLANE: Rect =
        Rect { x_lo: f64::NEG_INFINITY, y_lo: f64::NEG_INFINITY, x_hi: f64::INFINITY, y_hi: f64::INFINITY };

    pub const fn new(x_lo: f64, y_lo: f64, x_hi: f64, y_hi: f64) -> Self {
        Rect { x_lo, y_lo, x_hi, y_hi }
    }

    /// Closed containment.
    pub fn contains(&self, p: Point) -> bool {
        self.x_lo <= p.x && p.x <= self.x_hi && self.y_lo <= p.y && p.y <= self.y_hi
    }

    pub fn contains_interior(&self, p: Point) -> bool {
        self.x_lo < p.x && p.x < self.x_hi && self.y_lo < p.y && p.y < self.y_hi
    }

    /// `self ⊆ other`.
    pub fn is_within(&self, other: &Rect) -> bool {
        other.x_lo <= self.x_lo && self.x_hi <= other.x_hi && other.y_lo <= self.y_lo && self.y_hi <= other.y_hi
    }

    pub fn bounding_box(points: impl IntoIterator<Item = Point>) -> Option<Rect> {
        points.into_iter().fold(None, |acc, p| {
            Some(match acc {
                None => Rect::new(p.x, p.y, p.x, p.y),
                Some(r) => Rect::new(r.x_lo.min(p.x), r.y_lo.min(p.y), r.x_hi.max(p.x), r.y_hi.max(p.y)),
            })
        })
    }

    /// Total order used to canonicalize rectangle lists.
    pub fn lex_cmp(&self, other: &Rect) -> Ordering {
        self.x_lo
            .total_cmp(&other.x_lo)
            .then(self.x_hi.total_cmp(&other.x_hi))
            .then(self.y_lo.total_cmp(&other.y_lo))
            .then(self.y_hi.total_cmp(&other.y_hi))
    }
}

/// Static orthogonal range counter (merge-sort tree over x-order).
#[derive(Clone, Debug)]
pub struct RangeCounter {
    xs: Vec<f64>,
    ids: Vec<usize>,
    /// `tree[level]` holds y-values of x-sorted points, sorted within blocks of 2^level.
    tree: Vec<Vec<f64>>,
}

impl RangeCounter {
    pub fn new(points: &[Point]) -> Self {
        let mut ids: Vec<usize> = (0..points.len()).collect();
        ids.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(points[a].y.total_cmp(&points[b].y)));
        let xs: Vec<f64> = ids.iter().map(|&i| points[i].x).collect();
        let mut tree = vec![ids.iter().map(|&i| points[i].y).collect::<Vec<f64>>()];
        let mut width = 1;
        while width < ids.len() {
            let prev = tree.last().unwrap();
            let mut next = Vec::with_capacity(prev.len());
            for chunk in prev.chunks(2 * width) {
                let (a, b) = chunk.split_at(width.min(chunk.len()));
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    if j == b.len() || (i < a.len() && a[i] <= b[j]) {
                        next.push(a[i]);
                        i += 1;
                    } else {
                        next.push(b[j]);
                        j += 1;
                    }
                }
            }
            tree.push(next);
            width *= 2;
        }
        RangeCounter { xs, ids, tree }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Index range of x-sorted points with `x_lo < x < x_hi`.
    fn open_x_range(&self, x_lo: f64, x_hi: f64) -> (usize, usize) {
        let lo = self.xs.partition_point(|&x| x <= x_lo);
        let hi = self.xs.partition_point(|&x| x < x_hi);
        (lo, hi.max(lo))
    }

    fn count_sorted_open(ys: &[f64], y_lo: f64, y_hi: f64) -> usize {
        let a = ys.partition_point(|&y| y <= y_lo);
        let b = ys.partition_point(|&y| y < y_hi);
        b.saturating_sub(a)
    }

    /// Points strictly inside `r`.
    pub fn count_interior(&self, r: &Rect) -> usize {
        let (mut lo, hi) = self.open_x_range(r.x_lo, r.x_hi);
        let mut total = 0;
        while lo < hi {
            let mut level = 0;
            while level + 1 < self.tree.len() && lo % (1 << (level + 1)) == 0 && lo + (1 << (level + 1)) <= hi {
                level += 1;
            }
            let width = 1 << level;
            total += Self::count_sorted_open(&self.tree[level][lo..lo + width], r.y_lo, r.y_hi);
            lo += width;
        }
        total
    }

    /// Ids of points strictly inside `r`, in x-order.
    pub fn interior_ids(&self, r: &Rect, points: &[Point]) -> Vec<usize> {
        let (lo, hi) = self.open_x_range(r.x_lo, r.x_hi);
        self.ids[lo..hi].iter().copied().filter(|&i| r.y_lo < points[i].y && points[i].y < r.y_hi).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_points(n: usize, seed: u64, grid: Option<u32>) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| match grid {
                Some(g) => Point::new(rng.random_range(0..g) as f64, rng.random_range(0..g) as f64),
                None => Point::new(rng.random(), rng.random()),
            })
            .collect()
    }

    #[test]
    fn range_counter_matches_scan() {
        for seed in 0..20 {
            let pts = random_points(1 + seed as usize * 7, seed, if seed % 2 == 0 { Some(6) } else { None });
            let rc = RangeCounter::new(&pts);
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
            for _ in 0..200 {
                let mut c = [0.0f64; 4];
                for v in &mut c {
                    *v = if seed % 2 == 0 { rng.random_range(-1..7) as f64 } else { rng.random_range(-0.1..1.1) };
                }
                let r = Rect::new(c[0].min(c[1]), c[2].min(c[3]), c[0].max(c[1]), c[2].max(c[3]));
                let want = pts.iter().filter(|p| r.contains_interior(**p)).count();
                assert_eq!(rc.count_interior(&r), want);
                assert_eq!(rc.interior_ids(&r, &pts).len(), want);
            }
            assert_eq!(rc.count_interior(&Rect::PLANE), pts.len());
        }
    }

    #[test]
    fn jitter_breaks_ties_and_preserves_strict_order() {
        for seed in 0..10 {
            let orig = random_points(60, seed, Some(5));
            let mut pts = orig.clone();
            assert!(jitter_to_general_position(&mut pts, seed));
            assert!(PointSet::new(pts.clone()).unwrap().in_general_position());
            for i in 0..pts.len() {
                for j in 0..pts.len() {
                    if orig[i].x < orig[j].x {
                        assert!(pts[i].x < pts[j].x);
                    }
                    if orig[i].y < orig[j].y {
                        assert!(pts[i].y < pts[j].y);
                    }
                }
            }
        }
        let mut clean = vec![Point::new(0.0, 1.0), Point::new(1.0, 0.0)];
        assert!(!jitter_to_general_position(&mut clean, 1));
    }

    #[test]
    fn general_position_detection() {
        let ps = PointSet::new(vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0)]).unwrap();
        assert!(matches!(ps.require_general_position(), Err(Error::DegenerateInput(_))));
        assert!(PointSet::new(vec![Point::new(f64::NAN, 0.0)]).is_err());
    }
}
