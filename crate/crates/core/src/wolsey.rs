//! Greedy set cover.
//!
//! [`solve_capacitated`] repeatedly adds the set minimizing `w(S) / f_P(S)` where
//! `f_P(S)` is the marginal increase of the max-flow cover value. Ties go to the
//! lowest set id; ratios are compared exactly by cross-multiplying integer costs.
//! [`solve_uncapacitated`] is the classic weighted greedy on uncovered counts.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flowcheck::IncrementalCover;
use crate::setsystem::{AssignmentCover, Cost, SetCoverInstance};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedyStep {
    pub set: usize,
    /// Marginal gain `f_P(S)` at selection time.
    pub gain: usize,
    /// `w(S) / f_P(S)`, for display only; selection uses exact comparison.
    pub ratio: f64,
    /// `f(P)` after adding the set.
    pub covered: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
    pub cover: AssignmentCover,
    pub cost: Cost,
}

impl GreedyTrace {
    pub fn chosen_sequence(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.set).collect()
    }
}

/// `cost / gain` as an exactly comparable key, ordered by ratio then set id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct RatioKey {
    cost: u64,
    gain: u64,
    set: usize,
}

impl Ord for RatioKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.cost as u128 * other.gain as u128;
        let rhs = other.cost as u128 * self.gain as u128;
        lhs.cmp(&rhs).then(self.set.cmp(&other.set))
    }
}

impl PartialOrd for RatioKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn step(inst: &SetCoverInstance, set: usize, gain: usize, covered: usize) -> GreedyStep {
    let cost = inst.sets()[set].cost;
    GreedyStep { set, gain, ratio: cost.to_f64() / gain as f64, covered }
}

/// Wolsey's greedy for hard capacities.
///
/// Gains are evaluated lazily: `f` is submodular, so a stale key never overstates a
/// set's current ratio and the popped set is the true arg-min once its refreshed
/// key still beats the next stale key.
pub fn solve_capacitated(inst: &SetCoverInstance) -> Result<GreedyTrace> {
    let n = inst.n_elements();
    let mut flow = IncrementalCover::new(inst);
    let mut heap: BinaryHeap<Reverse<RatioKey>> = inst
        .sets()
        .iter()
        .filter(|s| s.usable() > 0)
        .map(|s| Reverse(RatioKey { cost: s.cost.units(), gain: s.usable() as u64, set: s.id }))
        .collect();
    let mut steps = Vec::new();

    while flow.value() < n {
        let Some(Reverse(stale)) = heap.pop() else {
            return Err(Error::Infeasible {
                reason: format!("no set has positive marginal gain; at most {} of {n} elements coverable", flow.value()),
                best: flow.value(),
            });
        };
        let gain = flow.gain(stale.set);
        if gain == 0 {
            continue;
        }
        let fresh = RatioKey { gain: gain as u64, ..stale };
        if heap.peek().is_some_and(|Reverse(next)| *next < fresh) {
            heap.push(Reverse(fresh));
            continue;
        }
        let got = flow.activate(fresh.set);
        debug_assert_eq!(got, gain);
        steps.push(step(inst, fresh.set, gain, flow.value()));
    }

    let cover = flow.cover();
    let cost = cover.chosen().iter().map(|&s| inst.sets()[s].cost).sum();
    Ok(GreedyTrace { steps, cover, cost })
}

/// Classic greedy ignoring capacities: pick the set minimizing `w(S) / |S ∩ Y|`
/// over uncovered elements Y.
pub fn solve_uncapacitated(inst: &SetCoverInstance) -> Result<GreedyTrace> {
    let n = inst.n_elements();
    let mut uncovered = vec![true; n];
    let mut remaining = n;
    let mut cover = AssignmentCover::new();
    let mut steps = Vec::new();
    let mut used = vec![false; inst.n_sets()];

    while remaining > 0 {
        let best = inst
            .sets()
            .iter()
            .filter(|s| !used[s.id])
            .filter_map(|s| {
                let gain = s.members.iter().filter(|&&e| uncovered[e]).count();
                (gain > 0).then_some(RatioKey { cost: s.cost.units(), gain: gain as u64, set: s.id })
            })
            .min();
        let Some(best) = best else {
            return Err(Error::Infeasible {
                reason: format!("{remaining} elements belong to no set"),
                best: n - remaining,
            });
        };
        used[best.set] = true;
        cover.choose(best.set);
        for &e in &inst.sets()[best.set].members {
            if uncovered[e] {
                uncovered[e] = false;
                cover.assign(e, best.set);
            }
        }
        remaining -= best.gain as usize;
        steps.push(step(inst, best.set, best.gain as usize, n - remaining));
    }

    let cost = cover.chosen().iter().map(|&s| inst.sets()[s].cost).sum();
    Ok(GreedyTrace { steps, cover, cost })
}
