//! Balanced binary tree over the x-order of the input.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{AnchorSide, Point, Strip};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BbtNode {
    pub id: usize,
    pub level: u32,
    pub strip: Strip,
    /// Split line between the children; `None` for leaves.
    pub split: Option<f64>,
    /// Half-open range into [`Bbt::order`].
    pub range: (usize, usize),
    pub children: Option<(usize, usize)>,
    /// The side shared with the sibling, where rectangles of this node are anchored.
    /// `None` at the root.
    pub entry: Option<AnchorSide>,
}

impl BbtNode {
    pub fn len(&self) -> usize {
        self.range.1 - self.range.0
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bbt {
    /// Point ids sorted by x.
    pub order: Vec<usize>,
    /// Preorder.
    pub nodes: Vec<BbtNode>,
    /// Nodes with more points than this are split.
    pub leaf_max: usize,
}

impl Bbt {
    pub fn levels(&self) -> u32 {
        self.nodes.iter().map(|v| v.level + 1).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> impl Iterator<Item = &BbtNode> {
        self.nodes.iter().filter(|v| v.is_leaf())
    }

    /// Point ids of `node`, in x-order.
    pub fn members(&self, node: &BbtNode) -> &[usize] {
        &self.order[node.range.0..node.range.1]
    }
}

/// Splits at the median x until every node holds at most ⌈n/r⌉ points.
///
/// Halving from n reaches ⌈n/r⌉ after at most ⌈log₂ r⌉ splits, and a split node has
/// more than ⌈n/r⌉ points, so leaves hold between ⌈n/(2r)⌉ and ⌈n/r⌉ points.
/// With fewer than 2r points the root is the only leaf.
pub fn build_bbt(points: &[Point], r: f64) -> Result<Bbt> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::Precondition(format!("tree parameter r must be at least 1, got {r}")));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x));
    if let Some(w) = order.windows(2).find(|w| points[w[0]].x == points[w[1]].x) {
        return Err(Error::DegenerateInput(format!("points {} and {} share an x coordinate", w[0], w[1])));
    }
    let n = points.len();
    let leaf_max = if (n as f64) < 2.0 * r { n.max(1) } else { (n as f64 / r).ceil() as usize };
    let mut tree = Bbt { order, nodes: Vec::new(), leaf_max };
    grow(&mut tree, points, 0, Strip::PLANE, (0, points.len()), None);
    Ok(tree)
}

fn grow(tree: &mut Bbt, points: &[Point], level: u32, strip: Strip, range: (usize, usize), entry: Option<AnchorSide>) -> usize {
    let id = tree.nodes.len();
    tree.nodes.push(BbtNode { id, level, strip, split: None, range, children: None, entry });
    let (lo, hi) = range;
    if hi - lo <= tree.leaf_max {
        return id;
    }
    let mid = lo + (hi - lo) / 2;
    let split = (points[tree.order[mid - 1]].x + points[tree.order[mid]].x) / 2.0;
    let left = grow(tree, points, level + 1, Strip { x_lo: strip.x_lo, x_hi: split }, (lo, mid), Some(AnchorSide::Right));
    let right = grow(tree, points, level + 1, Strip { x_lo: split, x_hi: strip.x_hi }, (mid, hi), Some(AnchorSide::Left));
    let node = &mut tree.nodes[id];
    node.split = Some(split);
    node.children = Some((left, right));
    id
}
