//! Capacitated set systems and (partial) covers.
//!
//! Elements and sets are dense integer ids. A cover is a family of chosen sets plus
//! a relation assigning elements to chosen sets; it is valid when every pair is a
//! membership of a chosen set, no element is assigned twice, and no set is
//! assigned more elements than its capacity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Non-negative cost stored as an integer number of 10⁻⁹ units, so that greedy
/// ratio comparisons are exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(u64);

impl Cost {
    /// Units per 1.0 of cost.
    pub const SCALE: u64 = 1_000_000_000;
    pub const ZERO: Cost = Cost(0);

    pub const fn from_units(units: u64) -> Self {
        Cost(units)
    }

    pub const fn from_int(value: u64) -> Self {
        Cost(value * Self::SCALE)
    }

    pub fn from_f64(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Malformed(format!("cost must be finite and non-negative, got {value}")));
        }
        let scaled = (value * Self::SCALE as f64).round();
        if scaled >= u64::MAX as f64 {
            return Err(Error::Malformed(format!("cost {value} is too large")));
        }
        Ok(Cost(scaled as u64))
    }

    pub fn units(self) -> u64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / Self::SCALE as f64
    }

    pub fn checked_add(self, other: Cost) -> Option<Cost> {
        self.0.checked_add(other.0).map(Cost)
    }
}

impl std::iter::Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |a, b| a.checked_add(b).expect("cost overflow"))
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(Self::SCALE) {
            write!(f, "{}", self.0 / Self::SCALE)
        } else {
            write!(f, "{}", self.to_f64())
        }
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_multiple_of(Self::SCALE) {
            s.serialize_u64(self.0 / Self::SCALE)
        } else {
            s.serialize_f64(self.to_f64())
        }
    }
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Cost::from_f64(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetEntry {
    pub capacity: u32,
    pub cost: Cost,
    pub id: usize,
    pub members: Vec<usize>,
}

impl SetEntry {
    pub fn new(id: usize, members: impl IntoIterator<Item = usize>, cost: Cost, capacity: u32) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        SetEntry { capacity, cost, id, members }
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    /// Most elements this set can ever absorb: `min(k(S), |S|)`.
    pub fn usable(&self) -> usize {
        (self.capacity as usize).min(self.members.len())
    }
}

#[derive(Deserialize)]
struct RawInstance {
    #[serde(default)]
    format_version: Option<u32>,
    n: usize,
    sets: Vec<SetEntry>,
}

/// A hard-capacitated set cover instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct SetCoverInstance {
    format_version: u32,
    #[serde(rename = "n")]
    n_elements: usize,
    sets: Vec<SetEntry>,
}

impl TryFrom<RawInstance> for SetCoverInstance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        if let Some(v) = raw.format_version {
            if v != FORMAT_VERSION {
                return Err(Error::Parse(format!("unsupported instance format_version {v}")));
            }
        }
        SetCoverInstance::new(raw.n, raw.sets)
    }
}

impl SetCoverInstance {
    /// Builds an instance, collapsing duplicate members. Set ids must equal their
    /// position in `sets`.
    pub fn new(n_elements: usize, sets: Vec<SetEntry>) -> Result<Self> {
        let mut out = Vec::with_capacity(sets.len());
        for (pos, set) in sets.into_iter().enumerate() {
            if set.id != pos {
                return Err(Error::Malformed(format!("set at position {pos} has id {}; ids must be dense 0..m", set.id)));
            }
            if set.capacity == 0 {
                return Err(Error::Malformed(format!("set {pos} has capacity 0")));
            }
            let set = SetEntry::new(set.id, set.members, set.cost, set.capacity);
            if let Some(&e) = set.members.last() {
                if e >= n_elements {
                    return Err(Error::Malformed(format!("set {pos} references element {e} but n = {n_elements}")));
                }
            }
            out.push(set);
        }
        Ok(SetCoverInstance { format_version: FORMAT_VERSION, n_elements, sets: out })
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn n_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[SetEntry] {
        &self.sets
    }

    pub fn set(&self, id: usize) -> Result<&SetEntry> {
        self.sets.get(id).ok_or_else(|| Error::Malformed(format!("unknown set id {id}")))
    }

    /// Same system with every capacity replaced by the set's size, so capacities never bind.
    pub fn with_capacities_as_sizes(&self) -> Self {
        let mut inst = self.clone();
        for s in &mut inst.sets {
            s.capacity = s.members.len().max(1) as u32;
        }
        inst
    }

    pub fn with_uniform_capacity(&self, capacity: u32) -> Self {
        assert!(capacity >= 1);
        let mut inst = self.clone();
        for s in &mut inst.sets {
            s.capacity = capacity;
        }
        inst
    }

    pub fn with_cost(&self, id: usize, cost: Cost) -> Self {
        let mut inst = self.clone();
        inst.sets[id].cost = cost;
        inst
    }

    pub fn check_family(&self, family: &[usize]) -> Result<()> {
        match family.iter().find(|&&s| s >= self.sets.len()) {
            Some(s) => Err(Error::Malformed(format!("unknown set id {s}"))),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A family of chosen sets plus the element → set relation `C`.
///
/// The relation is stored as pairs rather than a map so that a malformed cover
/// assigning one element twice can still be represented and reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentCover {
    #[serde(serialize_with = "ser_pairs", deserialize_with = "de_pairs")]
    assignment: Vec<(usize, usize)>,
    chosen: BTreeSet<usize>,
    #[serde(default = "default_version")]
    format_version: u32,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

impl Default for AssignmentCover {
    fn default() -> Self {
        AssignmentCover { assignment: Vec::new(), chosen: BTreeSet::new(), format_version: FORMAT_VERSION }
    }
}

fn ser_pairs<S: Serializer>(pairs: &[(usize, usize)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    let mut map = s.serialize_map(Some(sorted.len()))?;
    for (e, set) in sorted {
        map.serialize_entry(&e.to_string(), &set)?;
    }
    map.end()
}

fn de_pairs<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<(usize, usize)>, D::Error> {
    struct PairVisitor;
    impl<'de> Visitor<'de> for PairVisitor {
        type Value = Vec<(usize, usize)>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map from element id to set id")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
            let mut out = Vec::new();
            while let Some((k, v)) = map.next_entry::<String, usize>()? {
                let e = k.parse::<usize>().map_err(|_| serde::de::Error::custom(format!("bad element key {k:?}")))?;
                out.push((e, v));
            }
            Ok(out)
        }
    }
    d.deserialize_map(PairVisitor)
}

impl AssignmentCover {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(chosen: impl IntoIterator<Item = usize>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        AssignmentCover {
            assignment: pairs.into_iter().collect(),
            chosen: chosen.into_iter().collect(),
            format_version: FORMAT_VERSION,
        }
    }

    pub fn choose(&mut self, set: usize) {
        self.chosen.insert(set);
    }

    /// Records `element → set`. Does not check anything; see [`validate_cover`].
    pub fn assign(&mut self, element: usize, set: usize) {
        self.assignment.push((element, set));
    }

    pub fn chosen(&self) -> &BTreeSet<usize> {
        &self.chosen
    }

    /// `(element, set)` pairs in insertion order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.assignment
    }

    pub fn n_assigned(&self) -> usize {
        self.assignment.len()
    }

    pub fn assigned_set(&self, element: usize) -> Option<usize> {
        self.assignment.iter().find(|&&(e, _)| e == element).map(|&(_, s)| s)
    }

    pub fn load(&self, set: usize) -> usize {
        self.assignment.iter().filter(|&&(_, s)| s == set).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("cover serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cov: AssignmentCover = serde_json::from_str(text)?;
        if cov.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported cover format_version {}", cov.format_version)));
        }
        Ok(cov)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Pair whose set is not in the chosen family.
    NotChosen { element: usize, set: usize },
    /// Pair `(S, e)` with `e ∉ S`.
    NotMember { element: usize, set: usize },
    OverCapacity { set: usize, assigned: usize, capacity: u32 },
    DuplicateAssignment { element: usize, sets: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotChosen { element, set } => write!(f, "({set},{element}): set {set} is not chosen"),
            Violation::NotMember { element, set } => write!(f, "({set},{element}): {element} is not a member of set {set}"),
            Violation::OverCapacity { set, assigned, capacity } => {
                write!(f, "set {set}: {assigned} elements assigned, capacity {capacity}")
            }
            Violation::DuplicateAssignment { element, sets } => write!(f, "element {element} assigned {} times: {sets:?}", sets.len()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_ids(inst: &SetCoverInstance, cov: &AssignmentCover) -> Result<()> {
    for &s in &cov.chosen {
        inst.set(s)?;
    }
    for &(e, s) in &cov.assignment {
        inst.set(s)?;
        if e >= inst.n_elements {
            return Err(Error::Malformed(format!("unknown element id {e}")));
        }
    }
    Ok(())
}

/// Lists every membership, chosen-family, capacity and duplicate-assignment violation.
pub fn validate_cover(inst: &SetCoverInstance, cov: &AssignmentCover) -> Result<ValidityReport> {
    check_ids(inst, cov)?;
    let mut violations = Vec::new();
    let mut by_element: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut load: BTreeMap<usize, usize> = BTreeMap::new();
    for &(e, s) in &cov.assignment {
        if !cov.chosen.contains(&s) {
            violations.push(Violation::NotChosen { element: e, set: s });
        }
        if !inst.sets[s].contains(e) {
            violations.push(Violation::NotMember { element: e, set: s });
        }
        by_element.entry(e).or_default().push(s);
        *load.entry(s).or_default() += 1;
    }
    for (s, assigned) in load {
        let capacity = inst.sets[s].capacity;
        if assigned > capacity as usize {
            violations.push(Violation::OverCapacity { set: s, assigned, capacity });
        }
    }
    for (element, sets) in by_element {
        if sets.len() > 1 {
            violations.push(Violation::DuplicateAssignment { element, sets });
        }
    }
    Ok(ValidityReport { violations })
}

/// Σ w(S) over the chosen family. Sets with nothing assigned still pay.
pub fn cover_cost(inst: &SetCoverInstance, cov: &AssignmentCover) -> Result<Cost> {
    family_cost(inst, cov.chosen.iter().copied())
}

pub fn family_cost(inst: &SetCoverInstance, family: impl IntoIterator<Item = usize>) -> Result<Cost> {
    let mut total = Cost::ZERO;
    for s in family {
        total = total
            .checked_add(inst.set(s)?.cost)
            .ok_or_else(|| Error::Malformed("cost overflow".into()))?;
    }
    Ok(total)
}

/// True iff every element of X is assigned.
pub fn is_complete(inst: &SetCoverInstance, cov: &AssignmentCover) -> bool {
    let mut seen = vec![false; inst.n_elements];
    for &(e, _) in &cov.assignment {
        if let Some(slot) = seen.get_mut(e) {
            *slot = true;
        }
    }
    seen.into_iter().all(|b| b)
}
