//! Per-edge matching choices and the product space of covers they span.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dp::{Cover, DpError};
use crate::graph::Graph;

/// The matched-pair set of a map as a bitmask over the `a x b` grid.
fn pair_mask(map: &[Option<usize>], b: usize) -> u64 {
    map.iter()
        .enumerate()
        .filter_map(|(i, j)| j.map(|j| 1u64 << (i * b + j)))
        .fold(0, |m, x| m | x)
}

/// All partial injections from `0..a` into `0..b`, ascending by matched-pair
/// set (bit `i * b + j` for the pair `(i, j)`). Needs `a * b <= 64`.
pub fn partial_injections(a: usize, b: usize) -> Vec<Vec<Option<usize>>> {
    assert!(a * b <= 64, "grid too large for pair masks");
    fn rec(
        i: usize,
        b: usize,
        used: u64,
        map: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if i == map.len() {
            out.push(map.clone());
            return;
        }
        map[i] = None;
        rec(i + 1, b, used, map, out);
        for j in (0..b).filter(|j| used & (1 << j) == 0) {
            map[i] = Some(j);
            rec(i + 1, b, used | 1 << j, map, out);
        }
        map[i] = None;
    }
    let mut out = Vec::new();
    rec(0, b, 0, &mut vec![None; a], &mut out);
    out.sort_by_key(|m| pair_mask(m, b));
    out
}

/// Injections that saturate the smaller side, in the same order.
pub(crate) fn maximal_injections(a: usize, b: usize) -> Vec<Vec<Option<usize>>> {
    let mut all = partial_injections(a, b);
    all.retain(|m| m.iter().flatten().count() == a.min(b));
    all
}

/// All full matchings of one edge that contain `map`.
pub(crate) fn completions(map: &[Option<usize>], b: usize) -> Vec<Vec<Option<usize>>> {
    let mut all = partial_injections(map.len(), b);
    all.retain(|m| {
        m.iter().flatten().count() == map.len().min(b)
            && map.iter().zip(m).all(|(p, q)| p.is_none() || p == q)
    });
    all
}

/// Covers of a fixed host and list sizes, one choice per edge. Digits are
/// indices into the per-edge choice lists; the first edge is most
/// significant.
pub(crate) struct CoverSpace {
    base: Cover,
    choices: Vec<Vec<Vec<Option<usize>>>>,
}

impl CoverSpace {
    pub fn new(
        g: &Graph,
        sizes: Vec<usize>,
        choose: impl Fn(usize, usize) -> Vec<Vec<Option<usize>>>,
    ) -> Result<Self, DpError> {
        let base = Cover::empty(g, sizes)?;
        let choices = base
            .edges()
            .iter()
            .map(|&(u, v)| choose(base.size(u), base.size(v)))
            .collect();
        Ok(CoverSpace { base, choices })
    }

    /// Explicit choice lists, one per edge of `g` in edge order.
    pub fn with_choices(
        g: &Graph,
        sizes: Vec<usize>,
        choices: Vec<Vec<Vec<Option<usize>>>>,
    ) -> Result<Self, DpError> {
        let base = Cover::empty(g, sizes)?;
        assert_eq!(choices.len(), base.edges().len());
        Ok(CoverSpace { base, choices })
    }

    pub fn total(&self) -> u128 {
        self.choices
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    pub fn cover_for(&self, digits: &[usize]) -> Cover {
        let mut c = self.base.clone();
        for (e, (&d, options)) in digits.iter().zip(&self.choices).enumerate() {
            c.set_map(e, options[d].clone())
                .expect("choices are injective");
        }
        c
    }

    /// Visits every cover in digit order until `visit` returns false.
    pub fn for_each(&self, mut visit: impl FnMut(&Cover) -> bool) {
        if self.choices.iter().any(Vec::is_empty) {
            return;
        }
        let mut digits = vec![0; self.choices.len()];
        loop {
            if !visit(&self.cover_for(&digits)) {
                return;
            }
            let mut e = digits.len();
            loop {
                if e == 0 {
                    return;
                }
                e -= 1;
                digits[e] += 1;
                if digits[e] < self.choices[e].len() {
                    break;
                }
                digits[e] = 0;
            }
        }
    }

    /// Visits `samples` uniformly drawn covers from a seeded stream.
    pub fn sample(&self, seed: u64, samples: u64, mut visit: impl FnMut(&Cover) -> bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let digits: Vec<usize> = self
                .choices
                .iter()
                .map(|c| rng.gen_range(0..c.len()))
                .collect();
            if !visit(&self.cover_for(&digits)) {
                return;
            }
        }
    }
}
