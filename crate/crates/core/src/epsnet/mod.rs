//! ε-nets for axis-parallel rectangles by two-level sampling.
//!
//! Points are split by a balanced tree over x. A first-level sample R is drawn with
//! probability s/n per point. In each non-root node, every maximal R-empty rectangle
//! anchored on the side the node shares with its sibling gets a weight factor
//! t_M = s·|M ∩ P|/n; those with t_M at or above c·log log r receive a verified
//! (1/t_M)-net of their interior points. The net is R together with those secondary
//! nets.
//!
//! A heavy rectangle that misses R either lies inside one leaf, which is too small
//! to hold it, or crosses the split line of the lowest node containing it. Its
//! heavier half is then anchored at a child's entry side, sits inside one of the
//! maximal anchored rectangles above threshold, and is caught by that secondary net.

mod anchored;
mod bbt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use anchored::{maximal_anchored_empty, AnchoredShape};
pub use bbt::{build_bbt, Bbt, BbtNode};

use crate::error::{Error, Result};
use crate::exact::verify_epsnet;
use crate::geometry::{AnchorSide, Point, PointSet, RangeCounter, Rect};
use crate::setsystem::FORMAT_VERSION;

/// `max(1, log₂ log₂ max(x, 4))`.
pub fn loglog2(x: f64) -> f64 {
    x.max(4.0).log2().log2().max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NetConfig {
    pub eps: f64,
    /// First-level sample constant.
    pub c: f64,
    /// Secondary net size constant.
    pub k_hw: f64,
    pub seed: u64,
    pub max_retries: u32,
}

impl NetConfig {
    pub fn new(eps: f64, seed: u64) -> Self {
        NetConfig { eps, c: 2.0, k_hw: 4.0, seed, max_retries: 20 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Precondition(format!("eps must lie in (0, 1), got {}", self.eps)));
        }
        if !(self.c > 0.0 && self.c.is_finite() && self.k_hw > 0.0 && self.k_hw.is_finite()) {
            return Err(Error::Precondition("constants c and k_hw must be positive".into()));
        }
        if self.max_retries == 0 {
            return Err(Error::Precondition("max_retries must be positive".into()));
        }
        Ok(())
    }

    /// `r = 2/ε`.
    pub fn r(&self) -> f64 {
        2.0 / self.eps
    }

    /// Expected first-level sample size `s = c·r·log log r`.
    pub fn s(&self) -> f64 {
        self.c * self.r() * loglog2(self.r())
    }

    /// Smallest weight factor that receives a secondary net, `c·log log r`.
    pub fn threshold(&self) -> f64 {
        self.c * loglog2(self.r())
    }

    /// Size of a secondary net for weight factor `t`: `max(1, ⌈k·t·log₂ t⌉)`.
    pub fn secondary_size(&self, t: f64) -> usize {
        ((self.k_hw * t * t.log2()).ceil() as usize).max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnchoredRect {
    pub node: usize,
    pub level: u32,
    pub side: AnchorSide,
    pub rect: Rect,
    pub defining: Vec<usize>,
    /// Input points strictly inside.
    pub interior: usize,
    /// `s · interior / n`.
    pub weight: f64,
    /// Whether the weight factor reached the threshold.
    pub kept: bool,
    /// The secondary net; empty unless kept.
    pub secondary: Vec<usize>,
    /// Sampling attempts spent on the secondary net (0 when it was taken whole).
    pub attempts: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecayRow {
    pub level: u32,
    pub j: u32,
    /// Rectangles on this level with weight factor at least `j`.
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsNetResult {
    pub format_version: u32,
    pub config: NetConfig,
    pub n: usize,
    pub r: f64,
    pub s: f64,
    pub threshold: f64,
    /// Sorted net point ids.
    pub net: Vec<usize>,
    /// Sorted first-level sample.
    pub first_level: Vec<usize>,
    pub tree: Bbt,
    /// Ordered by node id, then rectangle coordinates.
    pub rects: Vec<AnchoredRect>,
    /// Failed secondary-net samples across all rectangles.
    pub retries: u32,
    pub decay: Vec<DecayRow>,
}

impl EpsNetResult {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Points of the first-level sample inside each node's strip, summed per level.
    pub fn samples_per_level(&self) -> Vec<usize> {
        let mut in_r = vec![false; self.n];
        for &i in &self.first_level {
            in_r[i] = true;
        }
        let mut out = vec![0; self.tree.levels() as usize];
        for v in &self.tree.nodes {
            out[v.level as usize] += self.tree.members(v).iter().filter(|&&i| in_r[i]).count();
        }
        out
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream seed for one (seed, a, b) triple.
pub fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    splitmix(splitmix(seed ^ splitmix(a)) ^ b)
}

/// Each point joins independently with probability `min(1, s/n)`.
pub fn sample_first_level(n: usize, s: f64, seed: u64) -> Vec<usize> {
    let pi = if n == 0 { 0.0 } else { (s / n as f64).min(1.0) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).filter(|_| rng.random::<f64>() < pi).collect()
}

/// A verified (1/t)-net of the points `local`, or all of them when they do not
/// exceed the size bound. Returns the net and the number of sampling attempts.
pub fn secondary_net(points: &[Point], local: &[usize], t: f64, config: &NetConfig, seed: u64) -> Result<(Vec<usize>, u32)> {
    let size = config.secondary_size(t);
    if local.len() <= size {
        return Ok((local.to_vec(), 0));
    }
    if t <= 1.0 {
        // Only a rectangle holding every local point counts; any one point hits it.
        return Ok((vec![local[0]], 0));
    }
    let local_points: Vec<Point> = local.iter().map(|&i| points[i]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=config.max_retries {
        let mut picked = sample(&mut rng, local.len(), size).into_vec();
        picked.sort_unstable();
        if verify_epsnet(&local_points, 1.0 / t, &picked)?.ok {
            return Ok((picked.into_iter().map(|i| local[i]).collect(), attempt));
        }
    }
    Err(Error::NetSampleFailure { attempts: config.max_retries, weight_factor: t })
}

/// Builds an ε-net of `points` (which must be in general position, n ≥ 2r).
pub fn build_epsnet(points: &[Point], config: &NetConfig) -> Result<EpsNetResult> {
    config.validate()?;
    let n = points.len();
    let (r, s, threshold) = (config.r(), config.s(), config.threshold());
    if (n as f64) < 2.0 * r {
        return Err(Error::Precondition(format!("need at least 2r = {} points for eps = {}, got {n}", 2.0 * r, config.eps)));
    }
    PointSet::new(points.to_vec())?.require_general_position()?;

    let tree = build_bbt(points, r)?;
    let first_level = sample_first_level(n, s, config.seed);
    let mut in_r = vec![false; n];
    for &i in &first_level {
        in_r[i] = true;
    }
    let counter = RangeCounter::new(points);
    let cut = threshold * (1.0 - 1e-12);

    let mut rects = Vec::new();
    let mut retries = 0;
    let mut net = first_level.clone();
    for v in &tree.nodes {
        let Some(side) = v.entry else { continue };
        let probes: Vec<(usize, Point)> =
            tree.members(v).iter().filter(|&&i| in_r[i]).map(|&i| (i, points[i])).collect();
        for (k, shape) in maximal_anchored_empty(v.strip, side, &probes).into_iter().enumerate() {
            let interior = counter.count_interior(&shape.rect);
            let weight = s * interior as f64 / n as f64;
            let kept = weight >= cut;
            let (secondary, attempts) = if kept {
                let local = counter.interior_ids(&shape.rect, points);
                secondary_net(points, &local, weight, config, derive_seed(config.seed, v.id as u64, k as u64))?
            } else {
                (Vec::new(), 0)
            };
            retries += attempts.saturating_sub(1);
            net.extend(&secondary);
            rects.push(AnchoredRect {
                node: v.id,
                level: v.level,
                side,
                rect: shape.rect,
                defining: shape.defining,
                interior,
                weight,
                kept,
                secondary,
                attempts,
            });
        }
    }
    net.sort_unstable();
    net.dedup();

    let mut result = EpsNetResult {
        format_version: FORMAT_VERSION,
        config: *config,
        n,
        r,
        s,
        threshold,
        net,
        first_level,
        tree,
        rects,
        retries,
        decay: Vec::new(),
    };
    result.decay = decay_profile(&result);
    Ok(result)
}

/// `|CT_j(R)|` for every level and every integer `j` from 0 to the largest weight
/// factor seen anywhere in the build.
pub fn decay_profile(result: &EpsNetResult) -> Vec<DecayRow> {
    let levels = result.tree.levels();
    let top = result.rects.iter().map(|m| m.weight.floor() as u32).max().unwrap_or(0);
    let mut out = Vec::with_capacity(levels as usize * (top as usize + 1));
    for level in 0..levels {
        let weights: Vec<f64> = result.rects.iter().filter(|m| m.level == level).map(|m| m.weight).collect();
        for j in 0..=top {
            out.push(DecayRow { level, j, count: weights.iter().filter(|&&w| w >= j as f64).count() });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(n: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| Point::new(rng.random(), rng.random())).collect()
    }

    #[test]
    fn config_derivations() {
        let c = NetConfig::new(0.1, 0);
        assert_eq!(c.r(), 20.0);
        assert!((c.s() - 2.0 * 20.0 * 20f64.log2().log2()).abs() < 1e-12);
        assert_eq!(NetConfig::new(0.5, 0).threshold(), 2.0);
        assert_eq!(loglog2(2.0), 1.0);
        assert!(NetConfig::new(1.0, 0).validate().is_err());
    }

    #[test]
    fn sample_everything_when_s_is_n() {
        assert_eq!(sample_first_level(30, 30.0, 9), (0..30).collect::<Vec<_>>());
        assert!(sample_first_level(30, 0.0, 9).is_empty());
    }

    #[test]
    fn small_build_is_a_net() {
        let pts = uniform(400, 1);
        let cfg = NetConfig::new(0.125, 5);
        let res = build_epsnet(&pts, &cfg).unwrap();
        assert!(verify_epsnet(&pts, cfg.eps, &res.net).unwrap().ok);
        assert!(res.tree.levels() <= 1 + cfg.r().log2().ceil() as u32);
        for m in res.rects.iter().filter(|m| m.kept) {
            assert!(m.secondary.iter().all(|&i| m.rect.contains_interior(pts[i])));
        }
    }

    #[test]
    fn rejects_small_inputs() {
        let pts = uniform(10, 2);
        assert!(build_epsnet(&pts, &NetConfig::new(0.5, 0)).is_ok());
        assert!(matches!(build_epsnet(&pts[..7], &NetConfig::new(0.5, 0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn build_is_deterministic() {
        let pts = uniform(300, 3);
        let cfg = NetConfig::new(0.2, 77);
        assert_eq!(build_epsnet(&pts, &cfg).unwrap(), build_epsnet(&pts, &cfg).unwrap());
    }
}
