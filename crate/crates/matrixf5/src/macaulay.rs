//! Macaulay matrices, baseline row echelon, and Hilbert functions.
//!
//! The matrix at degree d has one row per product `t*f_i` with
//! `t` of degree `d - deg(f_i)`, and one column per degree-d monomial in
//! decreasing grevlex. Row reduction never swaps columns, so the pivot
//! columns are exactly the degree-d leading terms of the ideal and the
//! rank gives the Hilbert function. This module is the auditable
//! correctness baseline; the signature engine must agree with it.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{self, Monomial};
use crate::polynomial::Polynomial;

/// Label of a Macaulay row: the polynomial index (1-based) and the
/// monomial multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLabel {
    pub poly_index: usize,
    pub multiplier: Monomial,
}

/// A fully materialised Macaulay matrix (dense rows).
#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    pub degree: u32,
    pub columns: Vec<Monomial>,
    pub rows: Vec<(RowLabel, Vec<u64>)>,
}

/// Result of row echelon reduction.
#[derive(Clone, Debug)]
pub struct EchelonForm {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub pivot_monomials: Vec<Monomial>,
    /// Echelon basis rows, monic, in pivot discovery order.
    pub rows: Vec<Vec<u64>>,
}

/// Builds the full Macaulay matrix of the system at degree d.
pub fn build(system: &[Polynomial], d: u32) -> Result<MacaulayMatrix> {
    let n = check_system(system)?;
    let columns = monomial::enumerate(n, d, n);
    let col_of: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(j, m)| (m, j)).collect();
    let mut rows = Vec::new();
    for (idx, f) in system.iter().enumerate() {
        let df = f.degree().expect("nonzero");
        if df > d {
            continue;
        }
        for t in monomial::enumerate(n, d - df, n) {
            let mut dense = vec![0u64; columns.len()];
            for (m, &c) in f.terms() {
                dense[col_of[&t.mul(m)]] = c;
            }
            rows.push((
                RowLabel {
                    poly_index: idx + 1,
                    multiplier: t,
                },
                dense,
            ));
        }
    }
    Ok(MacaulayMatrix {
        degree: d,
        columns,
        rows,
    })
}

/// Row echelon without column pivoting: rows are processed in storage
/// order, each reduced against the pivots found so far; its leftmost
/// surviving entry becomes a new pivot.
pub fn echelon(field: &PrimeField, matrix: &MacaulayMatrix) -> EchelonForm {
    let cols = matrix.columns.len();
    let mut red = Reducer::new(field, cols);
    let mut scratch = vec![0u64; cols];
    for (_, row) in &matrix.rows {
        scratch.copy_from_slice(row);
        red.insert(&mut scratch);
    }
    let pivot_monomials = red
        .pivot_cols
        .iter()
        .map(|&c| matrix.columns[c].clone())
        .collect::<Vec<_>>();
    EchelonForm {
        rank: red.rows.len(),
        pivot_columns: red.pivot_cols.clone(),
        pivot_monomials,
        rows: red
            .rows
            .iter()
            .map(|r| {
                let mut dense = vec![0u64; cols];
                for (k, &v) in r.data.iter().enumerate() {
                    dense[r.start + k] = v as u64;
                }
                dense
            })
            .collect(),
    }
}

/// `HF(d) = C(n+d-1, d) - rank(Mac_d)`, computed by streaming rows
/// through the reducer one at a time so the full matrix never has to fit
/// in memory. Stops early once the rank saturates the column count.
pub fn hilbert_function(field: &PrimeField, system: &[Polynomial], d: u32) -> Result<u64> {
    let n = check_system(system)?;
    let columns = monomial::enumerate(n, d, n);
    let cols = columns.len();
    let col_of: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(j, m)| (m, j)).collect();
    let mut red = Reducer::new(field, cols);
    let mut scratch = vec![0u64; cols];
    'outer: for f in system {
        let df = f.degree().expect("nonzero");
        if df > d {
            continue;
        }
        for t in monomial::enumerate(n, d - df, n) {
            scratch.iter_mut().for_each(|v| *v = 0);
            for (m, &c) in f.terms() {
                scratch[col_of[&t.mul(m)]] = c;
            }
            red.insert(&mut scratch);
            if red.rows.len() == cols {
                break 'outer;
            }
        }
    }
    Ok(cols as u64 - red.rows.len() as u64)
}

/// Number of rows `Σ_i C(n + d - d_i - 1, d - d_i)` the degree-d matrix
/// would have; used by work estimators.
pub fn row_count(degrees: &[u32], n: usize, d: u32) -> u64 {
    degrees
        .iter()
        .filter(|&&df| df <= d)
        .map(|&df| monomial::count(n, d - df))
        .sum()
}

/// Rough operation-count estimate for echelonising the degree-d matrix:
/// rows x cols x min(rows, cols).
pub fn work_estimate(degrees: &[u32], n: usize, d: u32) -> f64 {
    let r = row_count(degrees, n, d) as f64;
    let c = monomial::count(n, d) as f64;
    r * c * r.min(c)
}

/// Dumps the matrix entries as CSV (`row label, column monomial, value`).
pub fn dump_csv(matrix: &MacaulayMatrix, names: &[String]) -> String {
    let mut out = String::from("poly,multiplier,column,value\n");
    for (label, row) in &matrix.rows {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                out.push_str(&format!(
                    "f{},{},{},{}\n",
                    label.poly_index,
                    label.multiplier.format(names),
                    matrix.columns[j].format(names),
                    v
                ));
            }
        }
    }
    out
}

fn check_system(system: &[Polynomial]) -> Result<usize> {
    let n = system
        .first()
        .map(|f| f.n_vars())
        .ok_or_else(|| Error::InvalidInput("empty system".into()))?;
    for f in system {
        if f.n_vars() != n {
            return Err(Error::InvalidInput("mixed variable counts".into()));
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("zero polynomial in system".into()));
        }
        if !f.is_homogeneous() {
            return Err(Error::InvalidInput("system is not homogeneous".into()));
        }
    }
    Ok(n)
}

/// Incremental row reducer shared by `echelon` and `hilbert_function`.
///
/// Pivot rows are stored monic and reduced. Incoming rows live in a u64
/// scratch buffer; for p < 2^16 the axpy loop accumulates without
/// intermediate reduction (a row tolerates ~2^31 accumulated axpys before
/// overflow, far beyond any desk-scale matrix), otherwise every update is
/// reduced immediately.
struct Reducer<'a> {
    field: &'a PrimeField,
    cols: usize,
    fast: bool,
    pivot_of_col: Vec<Option<u32>>,
    pivot_cols: Vec<usize>,
    rows: Vec<PivotRow>,
}

struct PivotRow {
    start: usize,
    data: Vec<u32>, // columns start..cols, reduced, data[0] == 1
}

impl<'a> Reducer<'a> {
    fn new(field: &'a PrimeField, cols: usize) -> Self {
        Reducer {
            field,
            cols,
            fast: field.modulus() < (1 << 16),
            pivot_of_col: vec![None; cols],
            pivot_cols: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Reduces the scratch row in place and absorbs it as a new pivot if
    /// nonzero. Returns the pivot column, or None on reduction to zero.
    fn insert(&mut self, scratch: &mut [u64]) -> Option<usize> {
        let p = self.field.modulus();
        let mut pos = 0;
        let lead = loop {
            if pos == self.cols {
                return None;
            }
            let v = scratch[pos] % p;
            scratch[pos] = v;
            if v == 0 {
                pos += 1;
                continue;
            }
            match self.pivot_of_col[pos] {
                Some(r) => {
                    let row = &self.rows[r as usize];
                    let c_neg = p - v;
                    debug_assert_eq!(row.start, pos);
                    if self.fast {
                        for (k, &w) in row.data.iter().enumerate() {
                            scratch[pos + k] += c_neg * w as u64;
                        }
                    } else {
                        for (k, &w) in row.data.iter().enumerate() {
                            scratch[pos + k] =
                                (scratch[pos + k] + c_neg * w as u64) % p;
                        }
                    }
                    // leading entry cancels exactly
                    scratch[pos] = 0;
                    pos += 1;
                }
                None => break pos,
            }
        };
        // normalise to monic and store
        let inv = self.field.inv(scratch[lead] % p).expect("nonzero lead");
        let mut data = Vec::with_capacity(self.cols - lead);
        for cell in &scratch[lead..self.cols] {
            data.push(self.field.mul(cell % p, inv) as u32);
        }
        debug_assert_eq!(data[0], 1);
        self.pivot_of_col[lead] = Some(self.rows.len() as u32);
        self.pivot_cols.push(lead);
        self.rows.push(PivotRow { start: lead, data });
        Some(lead)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::circles_system;

    fn circles() -> (PrimeField, Vec<Polynomial>) {
        let sys = circles_system(PrimeField::default_field());
        (sys.field, sys.polys)
    }

    fn mono(exps: &[u8]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn circles_degree2_matrix() {
        let (f, polys) = circles();
        let m = build(&polys, 2).unwrap();
        assert_eq!(m.rows.len(), 3);
        assert_eq!(m.columns.len(), 10);
        let p = f.modulus();
        let neg = |x: u64| p - x;
        // rows in the printed column order x^2, xy, y^2, xz, yz, z^2, xh, yh, zh, h^2
        assert_eq!(
            m.rows[0].1,
            vec![1, 0, 1, neg(2), neg(2), 1, 0, 0, 0, 1]
        );
        assert_eq!(m.rows[1].1, vec![1, 1, 0, 0, 1, neg(1), 0, 0, 0, neg(2)]);
        assert_eq!(m.rows[2].1, vec![1, 0, neg(1), 0, 2, neg(2), 0, 0, 0, 0]);
    }

    #[test]
    fn circles_degree4_has_35_columns() {
        let (_f, polys) = circles();
        let m = build(&polys, 4).unwrap();
        assert_eq!(m.columns.len(), 35);
        assert_eq!(m.rows.len() as u64, row_count(&[2, 2, 2], 4, 4));
    }

    #[test]
    fn degree_below_system_has_no_rows() {
        let (f, polys) = circles();
        let m = build(&polys, 1).unwrap();
        assert_eq!(m.rows.len(), 0);
        assert_eq!(echelon(&f, &m).rank, 0);
    }

    #[test]
    fn circles_degree2_echelon() {
        let (f, polys) = circles();
        let m = build(&polys, 2).unwrap();
        let e = echelon(&f, &m);
        assert_eq!(e.rank, 3);
        assert_eq!(
            e.pivot_monomials,
            vec![mono(&[2, 0, 0, 0]), mono(&[1, 1, 0, 0]), mono(&[0, 2, 0, 0])]
        );
    }

    #[test]
    fn circles_pair_degree2_rank() {
        let (f, polys) = circles();
        let m = build(&polys[..2], 2).unwrap();
        assert_eq!(echelon(&f, &m).rank, 2);
    }

    #[test]
    fn hilbert_values() {
        let (f, polys) = circles();
        assert_eq!(hilbert_function(&f, &polys[..2], 2).unwrap(), 8);
        assert_eq!(hilbert_function(&f, &polys[..2], 0).unwrap(), 1);
        assert_eq!(hilbert_function(&f, &polys, 2).unwrap(), 7);
    }

    #[test]
    fn rank_invariant_under_row_shuffle() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let (f, polys) = circles();
        let mut m = build(&polys, 3).unwrap();
        let base = echelon(&f, &m).rank;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            m.rows.shuffle(&mut rng);
            assert_eq!(echelon(&f, &m).rank, base);
        }
    }

    #[test]
    fn general_path_matches_fast_path() {
        // a prime above 2^16 exercises the reduce-every-op path
        let slow = PrimeField::new(2147483647).unwrap();
        let fast = PrimeField::new(65521).unwrap();
        for field in [slow, fast] {
            let sys = circles_system(field);
            let m = build(&sys.polys, 3).unwrap();
            let e = echelon(&field, &m);
            // HF(3) = 8 for the circles ideal, so rank = C(6,3) - 8 = 12
            assert_eq!(e.rank, 12, "p={}", field.modulus());
        }
    }
}
