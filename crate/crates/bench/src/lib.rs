//! Shared fixtures for the criterion benches.

use critickit::graph::{clique, cycle, ekab, join};
use critickit::{EkabParams, Graph};

/// Graphs whose robust scans finish in well under a second.
pub fn robust_fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("C7", cycle(7).unwrap()),
        ("K4", clique(4).unwrap()),
        ("E4,2,2", ekab(EkabParams::new(4, 2, 2).unwrap())),
        (
            "C5+K1",
            join(&cycle(5).unwrap(), &clique(1).unwrap()).unwrap(),
        ),
    ]
}

/// Graphs for the list-assignment search.
pub fn strong_fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("C5", cycle(5).unwrap()),
        ("K4", clique(4).unwrap()),
        ("E4,1,2", ekab(EkabParams::new(4, 1, 2).unwrap())),
    ]
}
