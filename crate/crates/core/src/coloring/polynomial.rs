use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::graph::{bit, bits, Graph};

/// Integer polynomial in the monomial basis, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        Polynomial { coeffs }
    }

    /// `x (x - 1) ... (x - n + 1)`.
    pub fn falling_factorial(n: usize) -> Self {
        (0..n).fold(Polynomial::monomial(0), |p, i| {
            p.mul(&Polynomial::from_coeffs(vec![
                -BigInt::from(i),
                BigInt::one(),
            ]))
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_u64(&self, x: u64) -> BigInt {
        self.evaluate(&BigInt::from(x))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = !mag.is_one() || deg == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "k")?,
                _ => write!(f, "k^{deg}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Chromatic polynomial by deletion–contraction. Contractions merge parallel
/// edges, and intermediate graphs are memoized on their adjacency masks.
pub fn chromatic_polynomial(g: &Graph) -> Polynomial {
    let adj: Vec<u64> = (0..g.n()).map(|v| g.neighbor_mask(v)).collect();
    let mut memo = HashMap::new();
    delete_contract(adj, &mut memo)
}

fn remove_vertex(adj: &[u64], v: usize) -> Vec<u64> {
    let low = bit(v) - 1;
    adj.iter()
        .enumerate()
        .filter(|&(w, _)| w != v)
        .map(|(_, &m)| (m & low) | (m.checked_shr(v as u32 + 1).unwrap_or(0) << v))
        .collect()
}

fn delete_contract(adj: Vec<u64>, memo: &mut HashMap<Vec<u64>, Polynomial>) -> Polynomial {
    let n = adj.len();
    let degree_sum: u32 = adj.iter().map(|m| m.count_ones()).sum();
    let m = degree_sum as usize / 2;
    if m == 0 {
        return Polynomial::monomial(n);
    }
    if m == n * (n - 1) / 2 {
        return Polynomial::falling_factorial(n);
    }
    if let Some(isolated) = adj.iter().position(|&mask| mask == 0) {
        let rest = delete_contract(remove_vertex(&adj, isolated), memo);
        return rest.mul(&Polynomial::monomial(1));
    }
    if let Some(p) = memo.get(&adj) {
        return p.clone();
    }

    let u = adj.iter().position(|&mask| mask != 0).unwrap();
    let v = 63 - adj[u].leading_zeros() as usize;

    let mut deleted = adj.clone();
    deleted[u] &= !bit(v);
    deleted[v] &= !bit(u);

    let mut merged = adj.clone();
    merged[u] = (adj[u] | adj[v]) & !bit(u) & !bit(v);
    for w in bits(adj[v]) {
        if w != u {
            merged[w] = (merged[w] & !bit(v)) | bit(u);
        }
    }
    merged[v] = 0;
    let contracted = remove_vertex(&merged, v);

    let p = delete_contract(deleted, memo).sub(&delete_contract(contracted, memo));
    memo.insert(adj, p.clone());
    p
}
