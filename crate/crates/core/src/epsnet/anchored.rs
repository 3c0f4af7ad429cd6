//! Maximal sample-empty rectangles anchored on one side of a strip.

use std::collections::BTreeMap;
use std::ops::Bound::{Excluded, Unbounded};

use ordered_float::OrderedFloat;
use serde::Serialize;

use crate::geometry::{AnchorSide, Point, Rect, Strip};

/// A maximal empty anchored rectangle and the probes on its free sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnchoredShape {
    pub rect: Rect,
    /// At most three probe ids.
    pub defining: Vec<usize>,
}

/// Enumerates the maximal probe-empty rectangles of `strip` pinned to `anchor`.
///
/// With r probes in general position there are exactly 2r + 1 of them:
/// one whose free vertical side rests on each probe (its top and bottom are the
/// nearest probes above and below among those closer to the anchor), one spanning
/// the strip between each pair of y-consecutive probes, and the two spanning the
/// strip above the highest and below the lowest probe. No probes gives the strip.
pub fn maximal_anchored_empty(strip: Strip, anchor: AnchorSide, probes: &[(usize, Point)]) -> Vec<AnchoredShape> {
    let mut by_distance = probes.to_vec();
    match anchor {
        AnchorSide::Left => by_distance.sort_by(|a, b| a.1.x.total_cmp(&b.1.x)),
        AnchorSide::Right => by_distance.sort_by(|a, b| b.1.x.total_cmp(&a.1.x)),
    }
    let span = |free_x: f64| match anchor {
        AnchorSide::Left => (strip.x_lo, free_x),
        AnchorSide::Right => (free_x, strip.x_hi),
    };

    let mut out = Vec::with_capacity(2 * probes.len() + 1);
    let mut seen: BTreeMap<OrderedFloat<f64>, usize> = BTreeMap::new();
    for &(id, p) in &by_distance {
        let below = seen.range((Unbounded, Excluded(OrderedFloat(p.y)))).next_back().map(|(y, &i)| (y.0, i));
        let above = seen.range((Excluded(OrderedFloat(p.y)), Unbounded)).next().map(|(y, &i)| (y.0, i));
        let (x_lo, x_hi) = span(p.x);
        let mut defining = vec![id];
        defining.extend(below.map(|b| b.1));
        defining.extend(above.map(|a| a.1));
        out.push(AnchoredShape {
            rect: Rect::new(x_lo, below.map_or(f64::NEG_INFINITY, |b| b.0), x_hi, above.map_or(f64::INFINITY, |a| a.0)),
            defining,
        });
        seen.insert(OrderedFloat(p.y), id);
    }

    let mut bottom = (f64::NEG_INFINITY, None);
    for (&OrderedFloat(y), &id) in &seen {
        out.push(AnchoredShape {
            rect: Rect::new(strip.x_lo, bottom.0, strip.x_hi, y),
            defining: bottom.1.into_iter().chain([id]).collect(),
        });
        bottom = (y, Some(id));
    }
    out.push(AnchoredShape {
        rect: Rect::new(strip.x_lo, bottom.0, strip.x_hi, f64::INFINITY),
        defining: bottom.1.into_iter().collect(),
    });

    out.sort_by(|a, b| a.rect.lex_cmp(&b.rect));
    out.dedup_by(|a, b| a.rect == b.rect);
    out
}
