//! Regular sequences, Noether position, and random test systems.
//!
//! Regularity is certified by comparing Macaulay-matrix ranks against the
//! Hilbert series `Π(1-z^{d_j}) / (1-z)^n` degree by degree, so the check
//! is independent of the signature engine. Noether position of the first
//! i variables is tested through the equivalent Artinian criterion: kill
//! the variables `x_{i+1}..x_n` and test regularity of the projected
//! system of i forms in i variables. (For homogeneous sequences the
//! extended sequence `(f_1..f_i, x_{i+1}..x_n)` is regular exactly when
//! the projection is a regular sequence: homogeneous regular sequences
//! are permutable, and quotienting by the trailing variables is the
//! projection.)

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::macaulay;
use crate::monomial::{self, Monomial};
use crate::polynomial::Polynomial;
use crate::system::PolySystem;

/// Truncated power series with integer coefficients, index = degree.
///
/// Coefficients are signed so that over-determined inputs (m > n) simply
/// produce a series no Hilbert function can match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    coeffs: Vec<i64>,
}

impl HilbertSeries {
    pub fn coefficient(&self, d: u32) -> i64 {
        self.coeffs.get(d as usize).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn truncation(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }
}

/// Truncated expansion of `Π_j (1-z^{d_j}) / (1-z)^n`, the Hilbert series
/// of an ideal generated by a regular sequence with the given degrees.
pub fn regular_series(degrees: &[u32], n: usize, trunc: u32) -> HilbertSeries {
    let len = trunc as usize + 1;
    // 1/(1-z)^n: c_d = C(n+d-1, d)
    let mut coeffs: Vec<i64> = Vec::with_capacity(len);
    let mut c: i64 = 1;
    for d in 0..len {
        if d > 0 {
            let num = (n as i64 + d as i64 - 1)
                .checked_mul(c)
                .expect("series coefficient overflow");
            c = num / d as i64;
        }
        coeffs.push(c);
    }
    for &dj in degrees {
        let dj = dj as usize;
        for d in (0..len).rev() {
            if d >= dj {
                coeffs[d] -= coeffs[d - dj];
            }
        }
    }
    HilbertSeries { coeffs }
}

/// First degree `<= up_to` where the measured Hilbert function deviates
/// from the regular prediction, or None if they agree everywhere.
pub fn first_hilbert_mismatch(
    field: &PrimeField,
    system: &[Polynomial],
    up_to: u32,
) -> Result<Option<u32>> {
    let n = system
        .first()
        .map(|f| f.n_vars())
        .ok_or_else(|| Error::InvalidInput("empty system".into()))?;
    let degrees: Vec<u32> = system
        .iter()
        .map(|f| {
            f.degree()
                .ok_or_else(|| Error::InvalidInput("zero polynomial in system".into()))
        })
        .collect::<Result<_>>()?;
    let series = regular_series(&degrees, n, up_to);
    for d in 0..=up_to {
        let hf = macaulay::hilbert_function(field, system, d)? as i64;
        if hf != series.coefficient(d) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// True when the system's Hilbert function matches the regular-sequence
/// prediction for every degree `<= up_to`. With `up_to` the Macaulay
/// bound and m = n this certifies regularity outright (the series is then
/// a polynomial).
pub fn is_regular(field: &PrimeField, system: &[Polynomial], up_to: u32) -> Result<bool> {
    if system.is_empty() {
        return Ok(true);
    }
    if system.iter().any(|f| f.is_zero()) {
        return Ok(false);
    }
    Ok(first_hilbert_mismatch(field, system, up_to)?.is_none())
}

/// Projects the first `i` polynomials onto `k[x_1..x_i]` by killing the
/// trailing variables. Terms involving `x_{i+1}..x_n` are dropped.
pub fn project_prefix(system: &[Polynomial], i: usize, field: &PrimeField) -> Vec<Polynomial> {
    system[..i]
        .iter()
        .map(|f| {
            let terms = f
                .terms()
                .filter(|(m, _)| m.max_var() <= i)
                .map(|(m, &c)| (Monomial::new(m.exponents()[..i].to_vec()), c));
            Polynomial::from_terms(i, terms, field)
        })
        .collect()
}

/// Macaulay bound of a degree list: `Σ (d_j - 1) + 1`.
fn prefix_bound(degrees: &[u32]) -> u32 {
    degrees.iter().map(|&d| d - 1).sum::<u32>() + 1
}

/// Are `(x_1..x_i)` in Noether position with respect to `(f_1..f_i)`?
pub fn is_noether_position(field: &PrimeField, system: &[Polynomial], i: usize) -> Result<bool> {
    assert!(i >= 1 && i <= system.len());
    let projected = project_prefix(system, i, field);
    if projected.iter().any(|f| f.is_zero()) {
        return Ok(false);
    }
    let degrees: Vec<u32> = projected.iter().map(|f| f.degree().unwrap()).collect();
    is_regular(field, &projected, prefix_bound(&degrees))
}

/// Simultaneous Noether position: Noether position of every prefix.
pub fn is_snp(field: &PrimeField, system: &[Polynomial]) -> Result<bool> {
    Ok(snp_check(field, system, None)?.all_pass())
}

/// Outcome of one prefix check inside [`snp_check`].
#[derive(Clone, Debug, Serialize)]
pub struct SnpComponent {
    pub i: usize,
    /// Degree bound the certificate requires.
    pub bound: u32,
    /// Largest degree actually checked (== bound when fully verified).
    pub checked_up_to: u32,
    pub ok: bool,
}

/// Report of a (possibly work-capped) SNP verification.
#[derive(Clone, Debug, Serialize)]
pub struct SnpReport {
    pub components: Vec<SnpComponent>,
    /// True when every component ran to its full degree bound.
    pub complete: bool,
}

impl SnpReport {
    pub fn all_pass(&self) -> bool {
        self.components.iter().all(|c| c.ok)
    }
}

/// Verifies simultaneous Noether position, optionally skipping rank
/// computations whose estimated cost exceeds `work_cap` field operations.
/// Every skipped degree is visible in the report, so a capped run is an
/// explicit partial certificate rather than a silent pass.
pub fn snp_check(
    field: &PrimeField,
    system: &[Polynomial],
    work_cap: Option<f64>,
) -> Result<SnpReport> {
    let mut components = Vec::new();
    let mut complete = true;
    for i in 1..=system.len() {
        let projected = project_prefix(system, i, field);
        if projected.iter().any(|f| f.is_zero()) {
            components.push(SnpComponent {
                i,
                bound: 0,
                checked_up_to: 0,
                ok: false,
            });
            continue;
        }
        let degrees: Vec<u32> = projected.iter().map(|f| f.degree().unwrap()).collect();
        let bound = prefix_bound(&degrees);
        let series = regular_series(&degrees, i, bound);
        let mut ok = true;
        let mut checked_up_to = 0;
        for d in 0..=bound {
            if let Some(cap) = work_cap {
                if macaulay::work_estimate(&degrees, i, d) > cap {
                    complete = false;
                    continue;
                }
            }
            let hf = macaulay::hilbert_function(field, &projected, d)? as i64;
            checked_up_to = d;
            if hf != series.coefficient(d) {
                ok = false;
                break;
            }
        }
        if checked_up_to < bound && ok {
            complete = false;
        }
        components.push(SnpComponent {
            i,
            bound,
            checked_up_to,
            ok,
        });
        if !ok {
            // later prefixes are still reported, but a failure already
            // settles the answer; keep going for diagnostics only when
            // the caller asked for a full report
        }
    }
    Ok(SnpReport {
        components,
        complete,
    })
}

/// Parameters of a random dense system.
#[derive(Clone, Debug, Serialize)]
pub struct SystemSpec {
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<u32>,
    pub p: u64,
    pub seed: u64,
}

impl SystemSpec {
    /// Uniform-degree spec with m = n.
    pub fn square(n: usize, delta: u32, p: u64, seed: u64) -> Self {
        SystemSpec {
            n,
            m: n,
            degrees: vec![delta; n],
            p,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 || self.m > self.n {
            return Err(Error::InvalidSpec(format!(
                "need 1 <= m <= n, got m={} n={}",
                self.m, self.n
            )));
        }
        if self.degrees.len() != self.m {
            return Err(Error::InvalidSpec("degree list length != m".into()));
        }
        if self.degrees.contains(&0) {
            return Err(Error::InvalidSpec("degrees must be positive".into()));
        }
        if self.degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpec("degrees must be sorted ascending".into()));
        }
        Ok(())
    }
}

/// Generates a dense homogeneous system with uniform random coefficients
/// from a seeded generator. Deterministic per spec; callers wanting a
/// certificate should follow up with [`snp_check`].
pub fn gen_system(spec: &SystemSpec) -> Result<PolySystem> {
    spec.validate()?;
    let field = PrimeField::new(spec.p)?;
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let var_names: Vec<String> = (1..=spec.n).map(|j| format!("x{j}")).collect();
    let mut polys = Vec::with_capacity(spec.m);
    for &d in &spec.degrees {
        let terms = monomial::enumerate(spec.n, d, spec.n)
            .into_iter()
            .map(|m| (m, rng.gen_range(0..field.modulus())));
        polys.push(Polynomial::from_terms(spec.n, terms, &field));
    }
    Ok(PolySystem {
        field,
        var_names,
        polys,
    })
}

/// Applies the invertible linear substitution `x_j -> Σ_k A[j][k] x_k`.
pub fn apply_linear_change(
    field: &PrimeField,
    system: &[Polynomial],
    matrix: &[Vec<u64>],
) -> Result<Vec<Polynomial>> {
    let n = system
        .first()
        .map(|f| f.n_vars())
        .ok_or_else(|| Error::InvalidInput("empty system".into()))?;
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("substitution matrix must be n x n".into()));
    }
    let images: Vec<Polynomial> = matrix
        .iter()
        .map(|row| {
            Polynomial::from_terms(
                n,
                row.iter()
                    .enumerate()
                    .map(|(k, &c)| (Monomial::var(k + 1, n), c)),
                field,
            )
        })
        .collect();
    if images.iter().any(|l| l.is_zero()) {
        return Err(Error::InvalidInput("substitution matrix is singular".into()));
    }
    let mut out = Vec::with_capacity(system.len());
    for f in system {
        let mut acc = Polynomial::zero(n);
        for (m, &c) in f.terms() {
            let mut term = Polynomial::from_terms(n, [(Monomial::one(n), c)], field);
            for (j, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[j], field);
                }
            }
            acc = acc.add(&term, field);
        }
        out.push(acc);
    }
    Ok(out)
}

fn random_invertible(field: &PrimeField, n: usize, rng: &mut ChaCha20Rng) -> Vec<Vec<u64>> {
    loop {
        let m: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..field.modulus())).collect())
            .collect();
        if matrix_rank(field, &m) == n {
            return m;
        }
    }
}

fn matrix_rank(field: &PrimeField, m: &[Vec<u64>]) -> usize {
    let mut rows: Vec<Vec<u64>> = m.to_vec();
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).unwrap();
        for cell in rows[rank][col..].iter_mut() {
            *cell = field.mul(*cell, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (cell, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *cell = field.sub(*cell, field.mul(c, pv));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Result of [`random_change_of_vars`].
pub struct ChangeOfVars {
    pub system: Vec<Polynomial>,
    pub matrix: Vec<Vec<u64>>,
    pub attempts: usize,
}

/// Retries random invertible substitutions until the transformed system
/// passes the (optionally work-capped) SNP check. Errors after
/// `max_attempts`, which usually signals a non-regular input. The field
/// should be large relative to n for a generic substitution to work with
/// high probability; callers may warn otherwise.
pub fn random_change_of_vars(
    field: &PrimeField,
    system: &[Polynomial],
    seed: u64,
    max_attempts: usize,
    work_cap: Option<f64>,
) -> Result<ChangeOfVars> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let n = system
        .first()
        .map(|f| f.n_vars())
        .ok_or_else(|| Error::InvalidInput("empty system".into()))?;
    for attempt in 1..=max_attempts {
        // first attempt keeps the input untouched: an already-SNP system
        // should come back unchanged
        let (matrix, candidate) = if attempt == 1 {
            let id: Vec<Vec<u64>> = (0..n)
                .map(|r| (0..n).map(|c| u64::from(r == c)).collect())
                .collect();
            (id, system.to_vec())
        } else {
            let m = random_invertible(field, n, &mut rng);
            let sys = apply_linear_change(field, system, &m)?;
            (m, sys)
        };
        if snp_check(field, &candidate, work_cap)?.all_pass() {
            return Ok(ChangeOfVars {
                system: candidate,
                matrix,
                attempts: attempt,
            });
        }
    }
    Err(Error::ChangeOfVariablesExhausted(max_attempts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::circles_system;

    fn circles() -> (PrimeField, Vec<Polynomial>) {
        let sys = circles_system(PrimeField::default_field());
        (sys.field, sys.polys)
    }

    #[test]
    fn series_two_quadrics_in_four_vars() {
        let s = regular_series(&[2, 2], 4, 6);
        assert_eq!(&s.coefficients()[..4], &[1, 4, 8, 12]);
    }

    #[test]
    fn series_three_quadrics_in_four_vars() {
        let s = regular_series(&[2, 2, 2], 4, 6);
        assert_eq!(&s.coefficients()[..7], &[1, 4, 7, 8, 8, 8, 8]);
    }

    #[test]
    fn series_empty_system_counts_monomials() {
        let s = regular_series(&[], 3, 5);
        for d in 0..=5u32 {
            assert_eq!(s.coefficient(d), monomial::count(3, d) as i64);
        }
    }

    #[test]
    fn circles_prefixes_regular() {
        let (f, polys) = circles();
        assert!(is_regular(&f, &polys[..2], 3).unwrap());
        assert!(is_regular(&f, &polys, 4).unwrap());
    }

    #[test]
    fn duplicated_polynomial_not_regular() {
        let (f, polys) = circles();
        let dup = vec![polys[0].clone(), polys[0].clone()];
        assert!(!is_regular(&f, &dup, 4).unwrap());
        // the first rank deficiency appears at degree deg(f) where the
        // duplicate contributes no new rows to the span
        assert_eq!(first_hilbert_mismatch(&f, &dup, 4).unwrap(), Some(2));
    }

    #[test]
    fn circles_noether_and_snp() {
        let (f, polys) = circles();
        assert!(is_noether_position(&f, &polys, 2).unwrap());
        assert!(is_snp(&f, &polys).unwrap());
    }

    #[test]
    fn reordered_variables_break_noether_position() {
        // variables (y, z) are not in Noether position for (f1, f2):
        // reorder the ring to (y, z, x, h) and test the 2-prefix
        let f = PrimeField::default_field();
        let names: Vec<String> = ["y", "z", "x", "h"].iter().map(|s| s.to_string()).collect();
        let f1 = Polynomial::parse("x^2 + y^2 - 2*x*z - 2*y*z + z^2 + h^2", &names, &f).unwrap();
        let f2 = Polynomial::parse("x^2 + x*y + y*z - z^2 - 2*h^2", &names, &f).unwrap();
        let sys = vec![f1, f2];
        assert!(!is_noether_position(&f, &sys, 2).unwrap());
    }

    #[test]
    fn single_trailing_monomial_not_snp() {
        let f = PrimeField::default_field();
        let names = vec!["x1".to_string(), "x2".to_string()];
        let sys = vec![Polynomial::parse("x2^2", &names, &f).unwrap()];
        assert!(!is_snp(&f, &sys).unwrap());
    }

    #[test]
    fn empty_system_is_snp() {
        let f = PrimeField::default_field();
        assert!(is_snp(&f, &[]).unwrap());
    }

    #[test]
    fn generated_system_shape_and_determinism() {
        let spec = SystemSpec::square(5, 2, 65521, 17);
        let a = gen_system(&spec).unwrap();
        let b = gen_system(&spec).unwrap();
        assert_eq!(a.polys, b.polys);
        assert_eq!(a.polys.len(), 5);
        for f in &a.polys {
            assert_eq!(f.num_terms(), 15); // dense quadratic in 5 vars
            assert!(f.is_homogeneous());
        }
    }

    #[test]
    fn spec_rejects_m_above_n() {
        let spec = SystemSpec {
            n: 2,
            m: 3,
            degrees: vec![2, 2, 2],
            p: 65521,
            seed: 0,
        };
        assert!(gen_system(&spec).is_err());
    }

    #[test]
    fn random_quadratic_system_is_snp() {
        let spec = SystemSpec::square(5, 2, 65521, 1);
        let sys = gen_system(&spec).unwrap();
        let report = snp_check(&sys.field, &sys.polys, None).unwrap();
        assert!(report.complete);
        assert!(report.all_pass());
    }

    #[test]
    fn identity_substitution_is_noop() {
        let (f, polys) = circles();
        let id: Vec<Vec<u64>> = (0..4)
            .map(|r| (0..4).map(|c| u64::from(r == c)).collect())
            .collect();
        assert_eq!(apply_linear_change(&f, &polys, &id).unwrap(), polys);
    }

    #[test]
    fn change_of_vars_accepts_snp_input_unchanged() {
        let (f, polys) = circles();
        let out = random_change_of_vars(&f, &polys, 9, 4, None).unwrap();
        assert_eq!(out.attempts, 1);
        assert_eq!(out.system, polys);
    }

    #[test]
    fn change_of_vars_rejects_degenerate_ideal() {
        // <x2^2, x1*x2> cuts out a line; no substitution can make it SNP
        let f = PrimeField::default_field();
        let names = vec!["x1".to_string(), "x2".to_string()];
        let sys = vec![
            Polynomial::parse("x2^2", &names, &f).unwrap(),
            Polynomial::parse("x1*x2", &names, &f).unwrap(),
        ];
        assert!(matches!(
            random_change_of_vars(&f, &sys, 3, 6, None),
            Err(Error::ChangeOfVariablesExhausted(6))
        ));
    }

    #[test]
    fn zero_divisor_scaling_law() {
        // for a regular sequence, appending the next element scales the
        // series by (1 - z^delta)
        let (f, polys) = circles();
        for i in 1..=2usize {
            let prefix: Vec<u32> = vec![2; i];
            let with_next: Vec<u32> = vec![2; i + 1];
            let a = regular_series(&prefix, 4, 5);
            let b = regular_series(&with_next, 4, 5);
            for d in 0..=5u32 {
                let scaled = a.coefficient(d) - if d >= 2 { a.coefficient(d - 2) } else { 0 };
                assert_eq!(b.coefficient(d), scaled);
            }
            // and the measured Hilbert functions follow the same law
            let hf_a = macaulay::hilbert_function(&f, &polys[..i], 4).unwrap() as i64;
            let hf_a2 = macaulay::hilbert_function(&f, &polys[..i], 2).unwrap() as i64;
            let hf_b = macaulay::hilbert_function(&f, &polys[..i + 1], 4).unwrap() as i64;
            assert_eq!(hf_b, hf_a - hf_a2);
        }
    }
}
