//! Small hand-checkable instances used by tests, examples and the CLI.

use crate::setsystem::{Cost, SetCoverInstance, SetEntry};

/// X = {1..6} (ids 0..5), S1={1,2}, S2={2,3,4}, S3={4,5,6}, S4={5,6}, costs 1,2,5,3,
/// capacities equal to set sizes. The minimum cover is {S1,S2,S4} with cost 6.
pub fn six_element_example() -> SetCoverInstance {
    let members: [&[usize]; 4] = [&[0, 1], &[1, 2, 3], &[3, 4, 5], &[4, 5]];
    let costs = [1, 2, 5, 3];
    let sets = members
        .iter()
        .zip(costs)
        .enumerate()
        .map(|(i, (m, c))| SetEntry::new(i, m.iter().copied(), Cost::from_int(c), m.len() as u32))
        .collect();
    SetCoverInstance::new(6, sets).expect("fixture is well formed")
}

/// a={1,3,4}, b={2,5,6}, c={3,8,5,9} over elements 0..9, unit costs, capacities = sizes.
pub fn partial_cover_example() -> SetCoverInstance {
    let sets = vec![
        SetEntry::new(0, [1, 3, 4], Cost::from_int(1), 3),
        SetEntry::new(1, [2, 5, 6], Cost::from_int(1), 3),
        SetEntry::new(2, [3, 8, 5, 9], Cost::from_int(1), 4),
    ];
    SetCoverInstance::new(10, sets).expect("fixture is well formed")
}
