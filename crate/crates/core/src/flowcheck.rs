//! Maximum partial cover value `f(P)` via max-flow.
//!
//! The network has a source, one node per set of the family, one node per element
//! and a sink. Source → set arcs carry the set's capacity, set → element arcs exist
//! for memberships with capacity 1, element → sink arcs have capacity 1. An integral
//! maximum flow is a maximum feasible partial cover; the family covers X iff the
//! flow value equals n.

use crate::error::Result;
use crate::maxflow::Dinic;
use crate::setsystem::{AssignmentCover, SetCoverInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeRole {
    Source,
    Set(usize),
    Element(usize),
    Sink,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    pub arcs: Vec<FlowArc>,
    pub source: usize,
    pub sink: usize,
    /// Role of each node, indexed by node id.
    pub roles: Vec<NodeRole>,
}

/// A maximum flow with per-arc flows aligned to [`FlowNetwork::arcs`].
#[derive(Clone, Debug)]
pub struct FlowSolution {
    pub value: u64,
    pub arc_flow: Vec<u64>,
}

impl FlowNetwork {
    pub fn node_count(&self) -> usize {
        self.roles.len()
    }

    pub fn max_flow(&self) -> FlowSolution {
        let mut g = Dinic::new(self.node_count());
        let handles: Vec<usize> = self.arcs.iter().map(|a| g.add_arc(a.from, a.to, a.capacity)).collect();
        let value = g.augment(self.source, self.sink);
        FlowSolution { value, arc_flow: handles.iter().map(|&h| g.flow(h)).collect() }
    }

    /// Reads the partial cover off the saturated set → element arcs of `flow`.
    pub fn witness(&self, flow: &FlowSolution) -> AssignmentCover {
        let mut cov = AssignmentCover::new();
        for role in &self.roles {
            if let NodeRole::Set(s) = role {
                cov.choose(*s);
            }
        }
        for (arc, &f) in self.arcs.iter().zip(&flow.arc_flow) {
            if let (NodeRole::Set(s), NodeRole::Element(e), true) = (self.roles[arc.from], self.roles[arc.to], f > 0) {
                cov.assign(e, s);
            }
        }
        cov
    }
}

fn dedup_family(family: &[usize]) -> Vec<usize> {
    let mut fam = family.to_vec();
    fam.sort_unstable();
    fam.dedup();
    fam
}

/// Builds the network for `family ⊆ S` (duplicates ignored).
pub fn build_network(inst: &SetCoverInstance, family: &[usize]) -> Result<FlowNetwork> {
    inst.check_family(family)?;
    let family = dedup_family(family);
    let n = inst.n_elements();
    let set_node = |i: usize| 1 + i;
    let elem_node = |e: usize| 1 + family.len() + e;
    let sink = 1 + family.len() + n;

    let mut roles = Vec::with_capacity(sink + 1);
    roles.push(NodeRole::Source);
    roles.extend(family.iter().map(|&s| NodeRole::Set(s)));
    roles.extend((0..n).map(NodeRole::Element));
    roles.push(NodeRole::Sink);

    let mut arcs = Vec::new();
    for (i, &s) in family.iter().enumerate() {
        arcs.push(FlowArc { from: 0, to: set_node(i), capacity: inst.sets()[s].capacity as u64 });
    }
    for (i, &s) in family.iter().enumerate() {
        for &e in &inst.sets()[s].members {
            arcs.push(FlowArc { from: set_node(i), to: elem_node(e), capacity: 1 });
        }
    }
    for e in 0..n {
        arcs.push(FlowArc { from: elem_node(e), to: sink, capacity: 1 });
    }
    Ok(FlowNetwork { arcs, source: 0, sink, roles })
}

/// `f(family)` together with a feasible partial cover attaining it.
pub fn max_cover_value(inst: &SetCoverInstance, family: &[usize]) -> Result<(usize, AssignmentCover)> {
    let net = build_network(inst, family)?;
    let flow = net.max_flow();
    Ok((flow.value as usize, net.witness(&flow)))
}

/// `f(family ∪ {s}) − f(family)`, recomputed from scratch.
pub fn marginal_gain(inst: &SetCoverInstance, family: &[usize], s: usize) -> Result<usize> {
    inst.set(s)?;
    let base = max_cover_value(inst, family)?.0;
    let mut with = family.to_vec();
    with.push(s);
    Ok(max_cover_value(inst, &with)?.0 - base)
}

/// Whether the whole family S admits a complete feasible assignment.
pub fn is_feasible(inst: &SetCoverInstance) -> bool {
    max_value(inst) == inst.n_elements()
}

/// `f(S)` for the full family.
pub fn max_value(inst: &SetCoverInstance) -> usize {
    let all: Vec<usize> = (0..inst.n_sets()).collect();
    max_cover_value(inst, &all).expect("full family is well formed").0
}

/// Flow state over all sets of an instance where only activated sets may carry
/// flow. Supports evaluating `f_P(S)` by augmenting a copy of the current flow.
#[derive(Clone, Debug)]
pub struct IncrementalCover<'a> {
    inst: &'a SetCoverInstance,
    graph: Dinic,
    source_arcs: Vec<usize>,
    member_arcs: Vec<Vec<(usize, usize)>>,
    active: Vec<bool>,
    value: usize,
    sink: usize,
}

impl<'a> IncrementalCover<'a> {
    pub fn new(inst: &'a SetCoverInstance) -> Self {
        let m = inst.n_sets();
        let n = inst.n_elements();
        let sink = 1 + m + n;
        let mut graph = Dinic::new(sink + 1);
        let source_arcs = (0..m).map(|i| graph.add_arc(0, 1 + i, 0)).collect();
        let member_arcs = inst
            .sets()
            .iter()
            .enumerate()
            .map(|(i, set)| set.members.iter().map(|&e| (e, graph.add_arc(1 + i, 1 + m + e, 1))).collect())
            .collect();
        for e in 0..n {
            graph.add_arc(1 + m + e, sink, 1);
        }
        IncrementalCover { inst, graph, source_arcs, member_arcs, active: vec![false; m], value: 0, sink }
    }

    /// Current `f(P)`.
    pub fn value(&self) -> usize {
        self.value
    }

    pub fn is_active(&self, s: usize) -> bool {
        self.active[s]
    }

    /// Adds `s` to P and returns its marginal gain.
    pub fn activate(&mut self, s: usize) -> usize {
        if self.active[s] {
            return 0;
        }
        self.active[s] = true;
        self.graph.raise_capacity(self.source_arcs[s], self.inst.sets()[s].capacity as u64);
        let gain = self.graph.augment(0, self.sink) as usize;
        self.value += gain;
        gain
    }

    /// `f_P(s)` without changing P.
    pub fn gain(&self, s: usize) -> usize {
        if self.active[s] {
            return 0;
        }
        self.clone().activate(s)
    }

    pub fn cover(&self) -> AssignmentCover {
        let mut cov = AssignmentCover::new();
        for (s, &on) in self.active.iter().enumerate() {
            if on {
                cov.choose(s);
            }
        }
        for (s, arcs) in self.member_arcs.iter().enumerate() {
            for &(e, a) in arcs {
                if self.graph.flow(a) > 0 {
                    cov.assign(e, s);
                }
            }
        }
        cov
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::{validate_cover, Cost, SetEntry};
    use crate::fixtures::six_element_example;

    #[test]
    fn single_set_network() {
        let inst = SetCoverInstance::new(2, vec![SetEntry::new(0, [0, 1], Cost::ZERO, 2)]).unwrap();
        let net = build_network(&inst, &[0]).unwrap();
        assert_eq!(net.node_count(), 5);
        let expected = vec![
            FlowArc { from: 0, to: 1, capacity: 2 },
            FlowArc { from: 1, to: 2, capacity: 1 },
            FlowArc { from: 1, to: 3, capacity: 1 },
            FlowArc { from: 2, to: 4, capacity: 1 },
            FlowArc { from: 3, to: 4, capacity: 1 },
        ];
        assert_eq!(net.arcs, expected);
    }

    #[test]
    fn empty_family_has_no_supply() {
        let inst = six_element_example();
        let net = build_network(&inst, &[]).unwrap();
        assert_eq!(net.node_count(), 2 + 6);
        assert!(net.arcs.iter().all(|a| net.roles[a.to] == NodeRole::Sink));
        assert_eq!(net.max_flow().value, 0);
    }

    #[test]
    fn six_element_example_network_shape() {
        let net = build_network(&six_element_example(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(net.node_count(), 12);
        assert_eq!(net.arcs.len(), 4 + 10 + 6);
    }

    #[test]
    fn capacity_caps_coverage() {
        let inst = SetCoverInstance::new(3, vec![SetEntry::new(0, [0, 1, 2], Cost::ZERO, 2)]).unwrap();
        let (value, witness) = max_cover_value(&inst, &[0]).unwrap();
        assert_eq!(value, 2);
        assert_eq!(witness.n_assigned(), 2);
        assert!(validate_cover(&inst, &witness).unwrap().is_valid());
    }

    #[test]
    fn six_element_example_values() {
        let inst = six_element_example();
        assert_eq!(max_cover_value(&inst, &[0, 1, 2, 3]).unwrap().0, 6);
        assert!(is_feasible(&inst));
        let tight = inst.with_uniform_capacity(1);
        assert_eq!(max_cover_value(&tight, &[0, 1, 2, 3]).unwrap().0, 4);
        assert!(!is_feasible(&tight));
        assert!(is_feasible(&SetCoverInstance::new(0, vec![]).unwrap()));
    }

    #[test]
    fn marginal_gains() {
        let inst = six_element_example();
        let big = SetCoverInstance::new(3, vec![SetEntry::new(0, [0, 1, 2], Cost::ZERO, 2)]).unwrap();
        assert_eq!(marginal_gain(&big, &[], 0).unwrap(), 2);
        assert_eq!(marginal_gain(&inst, &[1], 1).unwrap(), 0);
        assert_eq!(marginal_gain(&inst, &[0], 1).unwrap(), 2);
        assert!(marginal_gain(&inst, &[0], 9).is_err());
    }

    #[test]
    fn incremental_matches_scratch() {
        let inst = six_element_example().with_uniform_capacity(2);
        let mut inc = IncrementalCover::new(&inst);
        let mut fam = vec![];
        for s in [2, 0, 3, 1] {
            assert_eq!(inc.gain(s), marginal_gain(&inst, &fam, s).unwrap());
            inc.activate(s);
            fam.push(s);
            assert_eq!(inc.value(), max_cover_value(&inst, &fam).unwrap().0);
            assert!(validate_cover(&inst, &inc.cover()).unwrap().is_valid());
        }
    }
}
