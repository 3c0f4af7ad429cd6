//! Hitting sets for rectangles by iterative reweighting.
//!
//! For a guess k of the optimum, each round asks for a weighted (1/(2k))-net. If
//! the net misses some rectangle, the weights of the points inside it double and
//! the round repeats; after the round limit the guess doubles. Weighted nets come
//! from replicating points in proportion to weight and running the unweighted
//! construction on the copies.

use serde::Serialize;

use crate::epsnet::{build_epsnet, derive_seed, NetConfig};
use crate::error::{Error, Result};
use crate::exact::verify_weighted_epsnet;
use crate::geometry::{jitter_to_general_position, Point, Rect};
use crate::setsystem::FORMAT_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingRound {
    pub guess: usize,
    pub round: usize,
    pub net_size: usize,
    /// First rectangle the net missed; its points had their weights doubled.
    pub unhit: Option<usize>,
    /// Points whose weight doubled in this round.
    pub doubled: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingResult {
    pub format_version: u32,
    /// Sorted point ids hitting every rectangle.
    pub points: Vec<usize>,
    /// The guess under which the net hit everything.
    pub guess: usize,
    pub rounds: Vec<HittingRound>,
    pub net_calls: usize,
}

impl HittingResult {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// First rectangle containing none of `chosen`, if any.
pub fn verify_hitting(points: &[Point], chosen: &[usize], rects: &[Rect]) -> Option<usize> {
    rects.iter().position(|r| !chosen.iter().any(|&i| r.contains(points[i])))
}

fn check_rects(points: &[Point], rects: &[Rect]) -> Result<Vec<Vec<usize>>> {
    rects
        .iter()
        .enumerate()
        .map(|(id, r)| {
            let finite = [r.x_lo, r.y_lo, r.x_hi, r.y_hi].iter().all(|v| v.is_finite());
            if !finite || r.x_lo > r.x_hi || r.y_lo > r.y_hi {
                return Err(Error::Malformed(format!("rectangle {id} is not a finite closed rectangle")));
            }
            let inside: Vec<usize> = (0..points.len()).filter(|&i| r.contains(points[i])).collect();
            if inside.is_empty() {
                return Err(Error::Infeasible { reason: format!("rectangle {id} contains no point"), best: id });
            }
            Ok(inside)
        })
        .collect()
}

/// A net for the weight measure: every rectangle of weight at least `eps · W`
/// contains a returned point.
///
/// Point i is copied `⌈w_i · D / W⌉` times with `D = 2·max(n, 3)/eps`; copies are
/// spread by rank-preserving jitter so a closed rectangle around original points
/// maps to one holding exactly their copies. Rounding up adds at most n copies, so
/// the copies get an `eps / (1 + eps/2)`-net, which can only be larger. Each try
/// is checked against the weighted verifier and retried with a fresh seed.
pub fn weighted_net(points: &[Point], weights: &[f64], eps: f64, config: &NetConfig) -> Result<Vec<usize>> {
    let n = points.len();
    if weights.len() != n || weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::Malformed("weights must be positive and one per point".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Precondition(format!("eps must lie in (0, 1), got {eps}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let total: f64 = weights.iter().sum();
    let scale = 2.0 * n.max(3) as f64 / eps / total;
    let mut owner = Vec::new();
    for (i, &w) in weights.iter().enumerate() {
        let copies = (w * scale).ceil() as usize;
        owner.extend(std::iter::repeat_n(i, copies.max(1)));
    }
    let inner_eps = eps / (1.0 + eps / 2.0);

    for attempt in 0..config.max_retries as u64 {
        let mut copies: Vec<Point> = owner.iter().map(|&i| points[i]).collect();
        let seed = derive_seed(config.seed, 0x5eed, attempt);
        jitter_to_general_position(&mut copies, seed);
        let inner = NetConfig { eps: inner_eps, seed, ..*config };
        let built = build_epsnet(&copies, &inner)?;
        let mut net: Vec<usize> = built.net.iter().map(|&c| owner[c]).collect();
        net.sort_unstable();
        net.dedup();
        if verify_weighted_epsnet(points, weights, eps, &net)?.ok {
            return Ok(net);
        }
    }
    Err(Error::NetSampleFailure { attempts: config.max_retries, weight_factor: 1.0 / eps })
}

/// Round limit for guess k: `max(1, ⌈4k·log₂ max(2, n/k)⌉)`.
pub fn round_limit(n: usize, k: usize) -> usize {
    let ratio = (n as f64 / k as f64).max(2.0);
    ((4.0 * k as f64 * ratio.log2()).ceil() as usize).max(1)
}

/// Hits every rectangle with few points. `config.eps` is ignored; the net
/// parameter follows the guess. Fails with `BgDivergence` once the guess passes 2n.
pub fn solve_hitting(points: &[Point], rects: &[Rect], config: &NetConfig) -> Result<HittingResult> {
    let members = check_rects(points, rects)?;
    let n = points.len();
    let mut rounds = Vec::new();
    let mut net_calls = 0;
    if rects.is_empty() {
        return Ok(HittingResult { format_version: FORMAT_VERSION, points: Vec::new(), guess: 0, rounds, net_calls });
    }

    let mut guess = 1;
    while guess <= 2 * n {
        let eps = 1.0 / (2 * guess) as f64;
        let mut weights = vec![1.0; n];
        for round in 0..round_limit(n, guess) {
            let cfg = NetConfig { eps, seed: derive_seed(config.seed, guess as u64, round as u64), ..*config };
            let net = weighted_net(points, &weights, eps, &cfg)?;
            net_calls += 1;
            let unhit = verify_hitting(points, &net, rects);
            let doubled = unhit.map_or(0, |r| members[r].len());
            rounds.push(HittingRound { guess, round, net_size: net.len(), unhit, doubled });
            match unhit {
                None => {
                    debug_assert!(verify_hitting(points, &net, rects).is_none());
                    return Ok(HittingResult { format_version: FORMAT_VERSION, points: net, guess, rounds, net_calls });
                }
                Some(r) => {
                    for &i in &members[r] {
                        weights[i] *= 2.0;
                    }
                    let top = weights.iter().cloned().fold(0.0, f64::max);
                    if top > 1e200 {
                        weights.iter_mut().for_each(|w| *w /= top);
                    }
                }
            }
        }
        guess *= 2;
    }
    Err(Error::BgDivergence(format!("no guess up to {} produced a hitting net in {} rounds", 2 * n, rounds.len())))
}
