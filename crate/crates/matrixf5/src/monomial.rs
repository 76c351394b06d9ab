//! Exponent-vector monomials and the grevlex order.
//!
//! Variables are indexed 1..n with `x1` the largest in grevlex. Among
//! monomials of equal degree, `a > b` when the last nonzero entry of the
//! exponent difference `a - b` is negative. The enumeration of the sets
//! `T^i_d` (monomials of degree d in the first i variables) is generated
//! directly in decreasing grevlex order, which is the column order of all
//! matrices in the crate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial in n variables, stored as its exponent vector.
///
/// `Ord` is the grevlex order, so a `BTreeMap<Monomial, _>` keeps terms
/// sorted with the leading monomial last.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u8>,
}

impl Monomial {
    pub fn new(exps: Vec<u8>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial in n variables.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_j`, 1-based.
    pub fn var(j: usize, n: usize) -> Self {
        assert!(j >= 1 && j <= n);
        let mut exps = vec![0; n];
        exps[j - 1] = 1;
        Monomial { exps }
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        }
    }

    /// Multiplies by the single variable `x_j` (1-based).
    pub fn mul_var(&self, j: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[j - 1] = exps[j - 1].checked_add(1).expect("exponent overflow");
        Monomial { exps }
    }

    /// True when `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `self / divisor`; errors when `divisor` does not divide `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        if !divisor.divides(self) {
            return Err(Error::NotDivisible(
                divisor.to_string(),
                self.to_string(),
            ));
        }
        Ok(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&divisor.exps)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    /// Largest index j (1-based) with a positive exponent; 0 for the
    /// constant monomial.
    pub fn max_var(&self) -> usize {
        for j in (0..self.exps.len()).rev() {
            if self.exps[j] > 0 {
                return j + 1;
            }
        }
        0
    }

    /// Grevlex comparison. Panics on mismatched variable counts.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        assert_eq!(
            self.exps.len(),
            other.exps.len(),
            "grevlex comparison needs equal variable counts"
        );
        let da = self.degree();
        let db = other.degree();
        if da != db {
            return da.cmp(&db);
        }
        for j in (0..self.exps.len()).rev() {
            if self.exps[j] != other.exps[j] {
                // last nonzero difference negative => self is larger
                return if self.exps[j] < other.exps[j] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }

    /// Renders with the given variable names, e.g. `x^2*y`.
    pub fn format(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = names
                .get(j)
                .map(|s| s.as_str())
                .unwrap_or("?");
            if e == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.exps.len()).map(|j| format!("x{j}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

/// Enumerates `T^i_d`: all monomials of degree d in the variables
/// `x1..xi`, as n-variable exponent vectors, in strictly decreasing
/// grevlex order. The length is `C(i+d-1, d)`.
pub fn enumerate(i: usize, d: u32, n: usize) -> Vec<Monomial> {
    assert!(i <= n);
    let mut out = Vec::new();
    if i == 0 {
        if d == 0 {
            out.push(Monomial::one(n));
        }
        return out;
    }
    let mut tail = vec![0u8; n - i];
    rec(i, d, &mut tail, &mut out, n);
    out
}

// Exponent of x_i ascending gives decreasing grevlex; recurse on the
// first i-1 variables inside each block.
fn rec(i: usize, d: u32, tail: &mut Vec<u8>, out: &mut Vec<Monomial>, n: usize) {
    if i == 1 {
        let mut exps = vec![0u8; n];
        exps[0] = u8::try_from(d).expect("degree too large for u8 exponent");
        exps[1..1 + tail.len()].copy_from_slice(tail);
        // tail holds exponents for variables i+1..n in reverse build order;
        // it is built by pushing x_i's exponent at the front each level, so
        // here tail[0] is x_2's exponent and so on.
        out.push(Monomial::new(exps));
        return;
    }
    for e in 0..=d {
        tail.insert(0, u8::try_from(e).expect("degree too large"));
        rec(i - 1, d - e, tail, out, n);
        tail.remove(0);
    }
}

/// Number of monomials of degree d in i variables, `C(i+d-1, d)`, as u64.
/// Panics on overflow; desk-scale parameters stay far below that.
pub fn count(i: usize, d: u32) -> u64 {
    binomial(i as u64 + d as u64 - 1, d as u64)
}

/// Exact binomial coefficient in u64 with overflow checks.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for t in 0..k {
        acc = acc
            .checked_mul(n - t)
            .expect("binomial overflow; use bounds::binomial_big")
            / (t + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u8]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn grevlex_chain_two_vars() {
        // x1^2 > x1 x2 > x2^2
        let x1sq = m(&[2, 0]);
        let x1x2 = m(&[1, 1]);
        let x2sq = m(&[0, 2]);
        assert!(x1sq > x1x2);
        assert!(x1x2 > x2sq);
    }

    #[test]
    fn grevlex_three_vars() {
        // x2^2 > x1 x3
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
    }

    #[test]
    fn grevlex_equal() {
        assert_eq!(m(&[1, 2, 0]).grevlex_cmp(&m(&[1, 2, 0])), Ordering::Equal);
    }

    #[test]
    fn graded_before_tie_break() {
        assert!(m(&[0, 0, 3]) > m(&[1, 1, 0]));
    }

    #[test]
    fn four_var_mid_degree() {
        // x2 x3 > x1 x4 in n=4
        assert!(m(&[0, 1, 1, 0]) > m(&[1, 0, 0, 1]));
    }

    #[test]
    fn enumerate_t4_degree2() {
        let list = enumerate(4, 2, 4);
        assert_eq!(list.len(), 10);
        assert_eq!(list[0], m(&[2, 0, 0, 0]));
        assert_eq!(list[9], m(&[0, 0, 0, 2]));
        for w in list.windows(2) {
            assert!(w[0] > w[1], "not strictly decreasing");
        }
    }

    #[test]
    fn enumerate_single_var() {
        assert_eq!(enumerate(1, 3, 1), vec![m(&[3])]);
        assert_eq!(enumerate(1, 3, 4), vec![m(&[3, 0, 0, 0])]);
    }

    #[test]
    fn enumerate_degree_one() {
        let list = enumerate(3, 1, 3);
        assert_eq!(list, vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]);
    }

    #[test]
    fn enumerate_matches_sorted_bruteforce() {
        for n in 1..=4usize {
            for d in 0..=5u32 {
                let mut brute = brute_force(n, d);
                brute.sort_by(|a, b| b.cmp(a));
                assert_eq!(enumerate(n, d, n), brute, "n={n} d={d}");
            }
        }
    }

    fn brute_force(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u8; n];
        fill(0, d, &mut exps, &mut out);
        out
    }

    fn fill(j: usize, rem: u32, exps: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if j + 1 == exps.len() {
            exps[j] = rem as u8;
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for e in 0..=rem {
            exps[j] = e as u8;
            fill(j + 1, rem - e, exps, out);
        }
        exps[j] = 0;
    }

    #[test]
    fn enumerate_counts() {
        for i in 1..=6usize {
            for d in 0..=8u32 {
                assert_eq!(
                    enumerate(i, d, i).len() as u64,
                    count(i, d),
                    "i={i} d={d}"
                );
            }
        }
    }

    #[test]
    fn division_and_max_var() {
        let x1 = Monomial::var(1, 3);
        let x1sq_x2 = m(&[2, 1, 0]);
        assert_eq!(m(&[1, 0, 1]).max_var(), 3);
        assert_eq!(Monomial::one(4).max_var(), 0);
        assert!(x1.divides(&x1sq_x2));
        assert_eq!(x1sq_x2.quotient(&x1).unwrap(), m(&[1, 1, 0]));
        assert!(x1sq_x2.quotient(&m(&[0, 0, 1])).is_err());
    }

    #[test]
    fn order_compatible_with_multiplication() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let n = rng.gen_range(1..=5);
            let gen_mono = |rng: &mut rand_chacha::ChaCha8Rng| {
                Monomial::new((0..n).map(|_| rng.gen_range(0..4u8)).collect())
            };
            let a = gen_mono(&mut rng);
            let b = gen_mono(&mut rng);
            let c = gen_mono(&mut rng);
            let ord = a.grevlex_cmp(&b);
            assert_eq!(a.mul(&c).grevlex_cmp(&b.mul(&c)), ord);
        }
    }
}
