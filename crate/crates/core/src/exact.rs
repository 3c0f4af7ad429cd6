//! Brute-force oracles: optimal capacitated cover, optimal hitting set, maximal
//! empty rectangles and ε-net verification. These are exhaustive by design and
//! meant for desk-scale inputs.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use ordered_float::OrderedFloat;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flowcheck::max_cover_value;
use crate::geometry::{AnchorSide, Point, Rect, Strip};
use crate::setsystem::{family_cost, AssignmentCover, Cost, SetCoverInstance};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleBudget {
    pub max_subsets: u64,
    pub max_candidates: u64,
    pub timeout: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_subsets: 1 << 20, max_candidates: 10_000_000, timeout: None }
    }
}

struct Clock {
    start: Instant,
    limit: Option<Duration>,
}

impl Clock {
    fn new(budget: &OracleBudget) -> Self {
        Clock { start: Instant::now(), limit: budget.timeout }
    }

    fn check(&self) -> Result<()> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(Error::BudgetExceeded(format!("timeout after {l:?}"))),
            _ => Ok(()),
        }
    }
}

/// Smallest integer point count that is at least `eps · n` (and at least 1).
pub fn heavy_threshold(eps: f64, n: usize) -> usize {
    ((eps * n as f64 - 1e-9).ceil().max(1.0)) as usize
}

// ---------------------------------------------------------------------------
// Set cover oracles
// ---------------------------------------------------------------------------

/// Maximum number of elements assignable to `family` under capacities, by
/// exhaustive search over element → (set | unassigned) maps. Memoized on the
/// vector of residual capacities, so it stays independent of any flow code.
pub fn brute_force_max_cover(inst: &SetCoverInstance, family: &[usize]) -> Result<usize> {
    inst.check_family(family)?;
    let mut fam = family.to_vec();
    fam.sort_unstable();
    fam.dedup();
    let options: Vec<Vec<usize>> = (0..inst.n_elements())
        .map(|e| (0..fam.len()).filter(|&i| inst.sets()[fam[i]].contains(e)).collect())
        .collect();
    let caps: Vec<u32> = fam.iter().map(|&s| inst.sets()[s].capacity.min(inst.n_elements() as u32)).collect();

    fn go(e: usize, caps: &mut Vec<u32>, options: &[Vec<usize>], memo: &mut HashMap<(usize, Vec<u32>), usize>) -> usize {
        if e == options.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(e, caps.clone())) {
            return v;
        }
        let mut best = go(e + 1, caps, options, memo);
        for &i in &options[e] {
            if caps[i] > 0 {
                caps[i] -= 1;
                best = best.max(1 + go(e + 1, caps, options, memo));
                caps[i] += 1;
            }
        }
        memo.insert((e, caps.clone()), best);
        best
    }

    let mut caps = caps;
    Ok(go(0, &mut caps, &options, &mut HashMap::new()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimalCover {
    pub cost: Cost,
    pub family: Vec<usize>,
    pub cover: AssignmentCover,
}

/// Minimum-cost feasible family by enumerating all 2^m families.
pub fn opt_capacitated_cover(inst: &SetCoverInstance, budget: &OracleBudget) -> Result<OptimalCover> {
    let m = inst.n_sets();
    if m >= 64 || (1u64 << m) > budget.max_subsets {
        return Err(Error::BudgetExceeded(format!("2^{m} families exceed the subset budget {}", budget.max_subsets)));
    }
    let clock = Clock::new(budget);
    let n = inst.n_elements();
    let mut best: Option<(Cost, u64)> = None;
    for mask in 0..(1u64 << m) {
        if mask % 1024 == 0 {
            clock.check()?;
        }
        let family: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let cost = family_cost(inst, family.iter().copied())?;
        if best.is_some_and(|(c, _)| cost >= c) {
            continue;
        }
        let reach: usize = family.iter().map(|&s| inst.sets()[s].usable()).sum();
        if reach < n {
            continue;
        }
        if max_cover_value(inst, &family)?.0 == n {
            best = Some((cost, mask));
        }
    }
    let Some((cost, mask)) = best else {
        return Err(Error::Infeasible {
            reason: "no family admits a complete feasible assignment".into(),
            best: crate::flowcheck::max_value(inst),
        });
    };
    let family: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
    let cover = max_cover_value(inst, &family)?.1;
    Ok(OptimalCover { cost, family, cover })
}

// ---------------------------------------------------------------------------
// Hitting set oracle
// ---------------------------------------------------------------------------

/// Minimum number of points hitting every rectangle (closed containment), by
/// iterative-deepening branch and bound: branch on the points of an unhit
/// rectangle with the fewest members.
pub fn opt_hitting_set(points: &[Point], rects: &[Rect], budget: &OracleBudget) -> Result<(usize, Vec<usize>)> {
    let members: Vec<Vec<usize>> =
        rects.iter().map(|r| (0..points.len()).filter(|&i| r.contains(points[i])).collect()).collect();
    if let Some(bad) = members.iter().position(|m| m.is_empty()) {
        return Err(Error::Infeasible { reason: format!("rectangle {bad} contains no point"), best: 0 });
    }
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for (r, ms) in members.iter().enumerate() {
        for &p in ms {
            containing[p].push(r);
        }
    }

    struct Search<'a> {
        members: &'a [Vec<usize>],
        containing: &'a [Vec<usize>],
        hits: Vec<u32>,
        chosen: Vec<usize>,
        nodes: u64,
        budget: u64,
        clock: Clock,
    }

    impl Search<'_> {
        fn dfs(&mut self, depth_left: usize) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(format!("explored {} branch-and-bound nodes", self.budget)));
            }
            if self.nodes.is_multiple_of(4096) {
                self.clock.check()?;
            }
            let target = (0..self.members.len())
                .filter(|&r| self.hits[r] == 0)
                .min_by_key(|&r| self.members[r].len());
            let Some(target) = target else {
                return Ok(true);
            };
            if depth_left == 0 {
                return Ok(false);
            }
            for &p in &self.members[target] {
                for &r in &self.containing[p] {
                    self.hits[r] += 1;
                }
                self.chosen.push(p);
                if self.dfs(depth_left - 1)? {
                    return Ok(true);
                }
                self.chosen.pop();
                for &r in &self.containing[p] {
                    self.hits[r] -= 1;
                }
            }
            Ok(false)
        }
    }

    let mut search = Search {
        members: &members,
        containing: &containing,
        hits: vec![0; rects.len()],
        chosen: Vec::new(),
        nodes: 0,
        budget: budget.max_candidates,
        clock: Clock::new(budget),
    };
    for k in 0..=points.len() {
        if search.dfs(k)? {
            let mut chosen = search.chosen.clone();
            chosen.sort_unstable();
            return Ok((chosen.len(), chosen));
        }
    }
    unreachable!("all points hit every nonempty rectangle")
}

// ---------------------------------------------------------------------------
// Maximal empty rectangles
// ---------------------------------------------------------------------------

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// All maximal probe-empty rectangles inside `strip` pinned to its `anchor` side,
/// by checking every candidate whose free sides lie on probe coordinates, the far
/// strip side, or ±∞.
///
/// A candidate qualifies when no probe lies in its open interior and each free side
/// is either at its limit or touches a probe strictly inside that side's extent.
pub fn enum_maximal_empty_rects(strip: Strip, anchor: AnchorSide, probes: &[Point]) -> Vec<Rect> {
    let xs = sorted_unique(probes.iter().map(|p| p.x).collect());
    let ys = sorted_unique(probes.iter().map(|p| p.y).collect());
    let (fixed, far) = match anchor {
        AnchorSide::Left => (strip.x_lo, strip.x_hi),
        AnchorSide::Right => (strip.x_hi, strip.x_lo),
    };
    let mut far_options = xs.clone();
    far_options.push(far);
    let mut lows = vec![f64::NEG_INFINITY];
    lows.extend(&ys);
    let mut highs = ys.clone();
    highs.push(f64::INFINITY);

    let mut out = Vec::new();
    for &free_x in &far_options {
        let (x_lo, x_hi) = match anchor {
            AnchorSide::Left => (fixed, free_x),
            AnchorSide::Right => (free_x, fixed),
        };
        if x_lo >= x_hi {
            continue;
        }
        for &y_lo in &lows {
            for &y_hi in &highs {
                if y_lo >= y_hi {
                    continue;
                }
                let r = Rect::new(x_lo, y_lo, x_hi, y_hi);
                if probes.iter().any(|&p| r.contains_interior(p)) {
                    continue;
                }
                let side_ok = free_x == far
                    || probes.iter().any(|p| p.x == free_x && y_lo < p.y && p.y < y_hi);
                let top_ok = y_hi == f64::INFINITY || probes.iter().any(|p| p.y == y_hi && x_lo < p.x && p.x < x_hi);
                let bottom_ok =
                    y_lo == f64::NEG_INFINITY || probes.iter().any(|p| p.y == y_lo && x_lo < p.x && p.x < x_hi);
                if side_ok && top_ok && bottom_ok {
                    out.push(r);
                }
            }
        }
    }
    out.sort_by(Rect::lex_cmp);
    out
}

/// Visits every maximal obstacle-empty rectangle of the plane (open interior empty
/// of obstacles, each side at ±∞ or touching an obstacle strictly inside it).
///
/// For each bottom level (−∞ or an obstacle y) the sweep moves the top upward,
/// keeping the x-coordinates of obstacles strictly between bottom and top. A top
/// obstacle supports the gap of that set containing it; the gap is emitted when
/// the bottom level also has an obstacle inside it. `visit` returns `false` to stop.
/// Runs in O(k² log k) for k obstacles plus the cost of `visit`.
pub fn for_each_maximal_empty(obstacles: &[Point], mut visit: impl FnMut(Rect) -> bool) {
    let mut levels: BTreeMap<OrderedFloat<f64>, Vec<f64>> = BTreeMap::new();
    for p in obstacles {
        levels.entry(OrderedFloat(p.y)).or_default().push(p.x);
    }
    let levels: Vec<(f64, Vec<f64>)> = levels.into_iter().map(|(k, xs)| (k.0, sorted_unique(xs))).collect();

    let supported_below = |bottom: Option<usize>, lo: f64, hi: f64| match bottom {
        None => true,
        Some(b) => {
            let xs = &levels[b].1;
            let i = xs.partition_point(|&x| x <= lo);
            i < xs.len() && xs[i] < hi
        }
    };

    for bottom in std::iter::once(None).chain((0..levels.len()).map(Some)) {
        let y_lo = bottom.map_or(f64::NEG_INFINITY, |b| levels[b].0);
        let mut between: BTreeMap<OrderedFloat<f64>, u32> = BTreeMap::new();
        let first_top = bottom.map_or(0, |b| b + 1);
        for (y_hi, top_xs) in &levels[first_top..] {
            let mut last_gap: Option<(f64, f64)> = None;
            for &x in top_xs {
                if between.contains_key(&OrderedFloat(x)) {
                    continue;
                }
                let lo = between.range(..OrderedFloat(x)).next_back().map_or(f64::NEG_INFINITY, |(k, _)| k.0);
                let hi = between.range(OrderedFloat(x)..).next().map_or(f64::INFINITY, |(k, _)| k.0);
                if last_gap == Some((lo, hi)) {
                    continue;
                }
                last_gap = Some((lo, hi));
                if supported_below(bottom, lo, hi) && !visit(Rect::new(lo, y_lo, hi, *y_hi)) {
                    return;
                }
            }
            for &x in top_xs {
                *between.entry(OrderedFloat(x)).or_default() += 1;
            }
        }
        let mut lo = f64::NEG_INFINITY;
        for hi in between.keys().map(|k| k.0).chain(std::iter::once(f64::INFINITY)) {
            if supported_below(bottom, lo, hi) && !visit(Rect::new(lo, y_lo, hi, f64::INFINITY)) {
                return;
            }
            lo = hi;
        }
    }
}

/// All maximal probe-empty rectangles of the plane, canonically ordered.
pub fn maximal_empty_rects(probes: &[Point]) -> Vec<Rect> {
    let mut out = Vec::new();
    for_each_maximal_empty(probes, |r| {
        out.push(r);
        true
    });
    out.sort_by(Rect::lex_cmp);
    out
}

pub fn count_all_maximal_empty_rects(probes: &[Point], budget: &OracleBudget) -> Result<u64> {
    let mut count = 0u64;
    let mut over = false;
    for_each_maximal_empty(probes, |_| {
        count += 1;
        over = count > budget.max_candidates;
        !over
    });
    if over {
        return Err(Error::BudgetExceeded(format!("more than {} maximal empty rectangles", budget.max_candidates)));
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// ε-net verification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetCheck {
    pub ok: bool,
    /// A closed net-free rectangle holding at least the threshold of input points.
    pub witness: Option<Rect>,
    /// Points (or weight) inside the witness.
    pub witness_load: f64,
    pub rects_checked: u64,
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Precondition(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

fn check_net_ids(n: usize, net: &[usize]) -> Result<()> {
    match net.iter().find(|&&i| i >= n) {
        Some(i) => Err(Error::Malformed(format!("net id {i} is not an input point"))),
        None => Ok(()),
    }
}

/// Whether `net` (ids into `points`) hits every rectangle holding at least
/// `eps · |points|` points.
///
/// The heaviest net-free closed rectangle has exactly as many points as the
/// heaviest maximal net-empty open rectangle has in its interior, so checking
/// those O(|net|²) candidates is exhaustive.
pub fn verify_epsnet(points: &[Point], eps: f64, net: &[usize]) -> Result<NetCheck> {
    check_eps(eps)?;
    check_net_ids(points.len(), net)?;
    let threshold = heavy_threshold(eps, points.len());
    let counter = crate::geometry::RangeCounter::new(points);
    let obstacles: Vec<Point> = net.iter().map(|&i| points[i]).collect();
    let mut checked = 0;
    let mut witness = None;
    for_each_maximal_empty(&obstacles, |r| {
        checked += 1;
        let c = counter.count_interior(&r);
        if c >= threshold {
            let inside = counter.interior_ids(&r, points);
            witness = Some((Rect::bounding_box(inside.iter().map(|&i| points[i])).expect("nonempty"), c));
            return false;
        }
        true
    });
    Ok(NetCheck {
        ok: witness.is_none(),
        witness: witness.map(|w| w.0),
        witness_load: witness.map_or(0.0, |w| w.1 as f64),
        rects_checked: checked,
    })
}

/// Weighted variant: every rectangle of weight at least `eps · W` must contain a
/// net point. Weights must be positive.
pub fn verify_weighted_epsnet(points: &[Point], weights: &[f64], eps: f64, net: &[usize]) -> Result<NetCheck> {
    check_eps(eps)?;
    check_net_ids(points.len(), net)?;
    if weights.len() != points.len() || weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::Malformed("weights must be positive and one per point".into()));
    }
    let total: f64 = weights.iter().sum();
    let threshold = eps * total * (1.0 - 1e-12);
    let obstacles: Vec<Point> = net.iter().map(|&i| points[i]).collect();
    let mut checked = 0;
    let mut witness = None;
    for_each_maximal_empty(&obstacles, |r| {
        checked += 1;
        let inside: Vec<usize> = (0..points.len()).filter(|&i| r.contains_interior(points[i])).collect();
        let w: f64 = inside.iter().map(|&i| weights[i]).sum();
        if w >= threshold && !inside.is_empty() {
            witness = Some((Rect::bounding_box(inside.iter().map(|&i| points[i])).expect("nonempty"), w));
            return false;
        }
        true
    });
    Ok(NetCheck {
        ok: witness.is_none(),
        witness: witness.map(|w| w.0),
        witness_load: witness.map_or(0.0, |w| w.1),
        rects_checked: checked,
    })
}
