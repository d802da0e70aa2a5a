//! A fixed catalog of small connected graphs used by tests and benchmarks.

use super::generate::{clique, complete_bipartite, cycle, ekab, join, path, EkabParams};
use super::Graph;

fn kt(t: usize) -> Graph {
    clique(t).unwrap()
}

/// Named connected graphs, smallest first within each family.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 1..=5 {
        out.push((format!("K{n}"), kt(n)));
    }
    for n in 3..=9 {
        out.push((format!("C{n}"), cycle(n).unwrap()));
    }
    for n in 2..=6 {
        out.push((format!("P{n}"), path(n).unwrap()));
    }
    for (a, b) in [(1, 3), (2, 2), (2, 3), (2, 4), (3, 3)] {
        out.push((format!("K{a},{b}"), complete_bipartite(a, b).unwrap()));
    }
    for (k, a, b) in [(4, 1, 2), (4, 2, 1), (4, 2, 2), (3, 1, 1)] {
        let g = ekab(EkabParams::new(k, a, b).unwrap());
        out.push((format!("E{k},{a},{b}"), g));
    }
    out.push(("W5".into(), join(&cycle(5).unwrap(), &kt(1)).unwrap()));
    out.push(("W4".into(), join(&cycle(4).unwrap(), &kt(1)).unwrap()));
    out.push(("C5+K2".into(), join(&cycle(5).unwrap(), &kt(2)).unwrap()));
    out.push((
        "K3+pendant".into(),
        Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap(),
    ));
    out.push((
        "diamond".into(),
        Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap(),
    ));
    out.push((
        "Moser spindle".into(),
        Graph::from_edges(
            7,
            [
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (0, 5),
                (4, 5),
                (4, 6),
                (5, 6),
                (3, 6),
            ],
        )
        .unwrap(),
    ));
    out
}
