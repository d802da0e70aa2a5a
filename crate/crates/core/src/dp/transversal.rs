//! Independent transversals by backtracking in ascending vertex order, with
//! forbidden indices pushed forward to later neighbors.

use super::Cover;

struct Search<'a> {
    sizes: &'a [usize],
    /// For each vertex, its later neighbors with the index map into them.
    forward: Vec<Vec<(usize, Vec<Option<usize>>)>>,
    forbidden: Vec<u64>,
    choice: Vec<usize>,
}

fn full(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

impl<'a> Search<'a> {
    fn new(c: &'a Cover) -> Self {
        let n = c.graph().n();
        let mut forward: Vec<Vec<(usize, Vec<Option<usize>>)>> = vec![Vec::new(); n];
        for (e, &(u, v)) in c.edges().iter().enumerate() {
            forward[u].push((v, c.map(e).to_vec()));
        }
        Search {
            sizes: c.sizes(),
            forward,
            forbidden: vec![0; n],
            choice: vec![0; n],
        }
    }

    /// Visits transversals; `visit` returns true to stop.
    fn run(&mut self, v: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if v == self.sizes.len() {
            return visit(&self.choice);
        }
        let mut avail = full(self.sizes[v]) & !self.forbidden[v];
        while avail != 0 {
            let i = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            self.choice[v] = i;
            let mut touched: Vec<(usize, u64)> = Vec::new();
            let mut dead = false;
            for (w, map) in &self.forward[v] {
                if let Some(j) = map[i] {
                    let b = 1u64 << j;
                    if self.forbidden[*w] & b == 0 {
                        self.forbidden[*w] |= b;
                        touched.push((*w, b));
                        if self.forbidden[*w] == full(self.sizes[*w]) {
                            dead = true;
                        }
                    }
                }
            }
            let stop = !dead && self.run(v + 1, visit);
            for (w, b) in touched {
                self.forbidden[w] &= !b;
            }
            if stop {
                return true;
            }
        }
        false
    }
}

/// A proper coloring of the cover: one index per vertex, no matched pair chosen.
pub fn find_transversal(c: &Cover) -> Option<Vec<usize>> {
    let mut s = Search::new(c);
    let mut found = None;
    s.run(0, &mut |t| {
        found = Some(t.to_vec());
        true
    });
    found
}

/// Exact number of transversals.
pub fn count_transversals(c: &Cover) -> u64 {
    let mut s = Search::new(c);
    let mut count = 0u64;
    s.run(0, &mut |_| {
        count += 1;
        false
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::count_proper_colorings;
    use crate::dp::{cover_from_assignment, make_canonical_cover, make_near_canonical};
    use crate::graph::{clique, cycle, Graph};
    use crate::list::ListAssignment;

    fn brute_count(c: &Cover) -> u64 {
        let n = c.graph().n();
        let total: usize = c.sizes().iter().product();
        let mut count = 0;
        for mut code in 0..total {
            let t: Vec<usize> = (0..n)
                .map(|v| {
                    let i = code % c.size(v);
                    code /= c.size(v);
                    i
                })
                .collect();
            if c.is_transversal(&t) {
                count += 1;
            }
        }
        count
    }

    fn swap_edge(c: &Cover, e: usize) -> Cover {
        let mut c = c.clone();
        c.set_map(e, vec![Some(1), Some(0)]).unwrap();
        c
    }

    #[test]
    fn canonical_counts() {
        let c5 = cycle(5).unwrap();
        assert_eq!(
            count_transversals(&make_canonical_cover(&c5, 3).unwrap()),
            30
        );
        assert_eq!(
            count_transversals(&make_canonical_cover(&clique(4).unwrap(), 4).unwrap()),
            24
        );
        assert!(find_transversal(&make_canonical_cover(&clique(3).unwrap(), 2).unwrap()).is_none());
        assert!(find_transversal(&make_canonical_cover(&c5, 2).unwrap()).is_none());
        let t = find_transversal(&make_canonical_cover(&c5, 3).unwrap()).unwrap();
        assert!(make_canonical_cover(&c5, 3).unwrap().is_transversal(&t));
    }

    #[test]
    fn one_swap_covers() {
        let c5 = make_canonical_cover(&cycle(5).unwrap(), 2).unwrap();
        let swapped = swap_edge(&c5, 2);
        assert_eq!(count_transversals(&swapped), brute_count(&swapped));
        assert!(find_transversal(&swapped).is_some());

        let c4 = make_canonical_cover(&cycle(4).unwrap(), 2).unwrap();
        assert!(find_transversal(&c4).is_some());
        assert!(find_transversal(&swap_edge(&c4, 3)).is_none());
    }

    #[test]
    fn zero_fold_and_empty_matchings() {
        let c = make_canonical_cover(&cycle(5).unwrap(), 0).unwrap();
        assert!(find_transversal(&c).is_none());
        let empty = make_canonical_cover(&Graph::empty(0).unwrap(), 0).unwrap();
        assert_eq!(count_transversals(&empty), 1);
        let disjoint = ListAssignment::from_slices(&[&[1, 2], &[3, 4, 5], &[6]]);
        let c = cover_from_assignment(&clique(3).unwrap(), &disjoint).unwrap();
        assert_eq!(count_transversals(&c), 6);
    }

    #[test]
    fn near_canonical_examples() {
        // K_3 with a pendant vertex 3 on vertex 0
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let c = make_near_canonical(&g, 2, 0, 3).unwrap();
        assert_eq!(brute_count(&c), 0);
        assert!(find_transversal(&c).is_none());
        let c5 = make_near_canonical(&cycle(5).unwrap(), 2, 1, 2).unwrap();
        assert!(find_transversal(&c5).is_some());
        let k2 = make_near_canonical(&clique(2).unwrap(), 1, 0, 1).unwrap();
        assert_eq!(count_transversals(&k2), 1);
    }

    #[test]
    fn counts_match_colorings() {
        for g in [cycle(4).unwrap(), cycle(5).unwrap(), clique(3).unwrap()] {
            for k in 0..4u64 {
                let c = make_canonical_cover(&g, k as usize).unwrap();
                assert_eq!(
                    num_bigint::BigUint::from(count_transversals(&c)),
                    count_proper_colorings(&g, k)
                );
                assert_eq!(count_transversals(&c), brute_count(&c));
            }
        }
    }
}
