//! Complexity calculators: the Macaulay bound, the `b_d^(i)` generating
//! series, the exact operation-count bound `N_F5`, its asymptotic form
//! `B(δ)^n · n · A(δ,ℓ)`, the baseline cost of row-reducing the full
//! Macaulay matrix, and the solver for the most expensive degree.
//!
//! Combinatorial sums use exact big integers; logarithms are taken only
//! for reporting.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `Σ (d_i - 1) + 1`, an upper bound on the index of regularity and on
/// grevlex basis degrees for regular systems in Noether position.
pub fn macaulay_bound(degrees: &[u32]) -> u32 {
    assert!(!degrees.is_empty(), "macaulay_bound needs a nonempty system");
    degrees.iter().map(|&d| d - 1).sum::<u32>() + 1
}

/// Exact binomial coefficient as a big integer.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// Coefficients 0..=trunc of `B_i(z) = z^{d_i} Π_{k<i} (1-z^{d_k})/(1-z)`,
/// the series bounding the number of new basis polynomials per degree
/// contributed by the i-th generator.
pub fn b_series(i: usize, degrees: &[u32], trunc: u32) -> Vec<BigUint> {
    assert!(i >= 1 && i <= degrees.len());
    let len = trunc as usize + 1;
    let mut coeffs = vec![BigUint::zero(); len];
    let shift = degrees[i - 1] as usize;
    if shift < len {
        coeffs[shift] = BigUint::one();
    } else {
        return coeffs;
    }
    for &dk in &degrees[..i - 1] {
        // multiply by 1 + z + ... + z^{dk-1}
        let mut next = vec![BigUint::zero(); len];
        for (d, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for t in 0..dk as usize {
                if d + t < len {
                    next[d + t] += c;
                }
            }
        }
        coeffs = next;
    }
    coeffs
}

/// Single coefficient `b_d^(i)`.
pub fn b_coeff(i: usize, d: u32, degrees: &[u32]) -> BigUint {
    b_series(i, degrees, d)
        .into_iter()
        .nth(d as usize)
        .unwrap_or_else(BigUint::zero)
}

/// The exact double sum
/// `N_F5 = Σ_i Σ_d b_d^(i) C(i+d-1, d) C(n+d-1, d)`,
/// with d running from the smallest input degree to `d_max`
/// (default: the Macaulay bound). For uniform degrees this is the printed
/// formula; for mixed degrees the same series is used and reports flag
/// the value as extrapolated.
pub fn nf5_exact(n: usize, m: usize, degrees: &[u32], d_max: Option<u32>) -> BigUint {
    assert_eq!(degrees.len(), m);
    let cap = d_max.unwrap_or_else(|| macaulay_bound(degrees));
    let mut total = BigUint::zero();
    for i in 1..=m {
        let series = b_series(i, degrees, cap);
        for d in degrees[0]..=cap {
            let b = &series[d as usize];
            if b.is_zero() {
                continue;
            }
            total += b
                * binomial_big(i as u64 + d as u64 - 1, d as u64)
                * binomial_big(n as u64 + d as u64 - 1, d as u64);
        }
    }
    total
}

/// log2 of a positive big integer, accurate to ~1e-15 relative.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.log2() + shift as f64
}

/// `(δ^m - 1)/(δ - 1)`: the total of the `b` series for uniform degree δ,
/// bounding the number of polynomials the run computes.
pub fn polys_bound(m: usize, delta: u32) -> BigUint {
    assert!(delta >= 2);
    let d = BigUint::from(delta);
    (d.pow(m as u32) - BigUint::one()) / (BigUint::from(delta - 1))
}

/// The unique positive root λ0 of
/// `((λ+1)/λ)^{2δ} = 1 / (1 - δ ((λ+1)² - λ²) / ((λ+1)³ - λ³))`
/// in [(δ-1)/2, δ-1], found by bisecting the equivalent fixed-point form
/// `λ = δ/(1-(1+1/λ)^{-2δ}) - 1/(1-(1+1/λ)^{-2})`, which changes sign on
/// the bracket.
pub fn lambda0(delta: u32) -> f64 {
    assert!(delta >= 2);
    let delta = delta as f64;
    let h = |lam: f64| -> f64 {
        let u = 1.0 + 1.0 / lam;
        delta / (1.0 - u.powf(-2.0 * delta)) - 1.0 / (1.0 - u.powi(-2)) - lam
    };
    let mut lo = (delta - 1.0) / 2.0;
    let mut hi = delta - 1.0;
    debug_assert!(h(lo) > 0.0 && h(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) / hi < 1e-16 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// `B(δ) = (((λ0+1)/λ0)^{2δ} - 1) / (1/λ0² - 1/(λ0+1)²)`, the base of the
/// asymptotic bound; sits between δ³ and 3δ³.
pub fn big_b(delta: u32) -> f64 {
    let l0 = lambda0(delta);
    let num = ((l0 + 1.0) / l0).powf(2.0 * delta as f64) - 1.0;
    let den = 1.0 / (l0 * l0) - 1.0 / ((l0 + 1.0) * (l0 + 1.0));
    num / den
}

/// `A(δ, ℓ) = (1 - 1/δ)/(2π) · ((1 + 1/λ0)³ - 1) / (1 + λ0)^{1+ℓ}`.
pub fn big_a(delta: u32, ell: u32) -> f64 {
    let l0 = lambda0(delta);
    (1.0 - 1.0 / delta as f64) / (2.0 * std::f64::consts::PI)
        * (((1.0 + 1.0 / l0).powi(3) - 1.0) / (1.0 + l0).powi(1 + ell as i32))
}

/// Leading term of the asymptotic operation bound: `B(δ)^n · n · A(δ,ℓ)`.
/// Overflows to infinity for very large n; use the log2 variant then.
pub fn nf5_asymptotic(n: usize, delta: u32, ell: u32) -> f64 {
    big_b(delta).powi(n as i32) * n as f64 * big_a(delta, ell)
}

pub fn log2_nf5_asymptotic(n: usize, delta: u32, ell: u32) -> f64 {
    n as f64 * big_b(delta).log2() + (n as f64).log2() + big_a(delta, ell).log2()
}

/// Per-variable exponent of the Macaulay-matrix baseline,
/// `ω · log2(δ^δ / (δ-1)^{δ-1})`.
pub fn baseline_exponent(delta: u32, omega: f64) -> f64 {
    let d = delta as f64;
    omega * (d * d.log2() - (d - 1.0) * (d - 1.0).log2())
}

/// log2 of the baseline cost `m · D · C(n+D-1, D)^ω` of computing the
/// basis by row echelon on every Macaulay matrix up to the Macaulay
/// bound D, with matrix-multiplication exponent ω.
pub fn log2_baseline_cost(n: usize, m: usize, delta: u32, omega: f64) -> f64 {
    let degrees = vec![delta; m];
    let d = macaulay_bound(&degrees);
    let binom = binomial_big(n as u64 + d as u64 - 1, d as u64);
    (m as f64).log2() + (d as f64).log2() + omega * log2_big(&binom)
}

pub fn baseline_cost(n: usize, m: usize, delta: u32, omega: f64) -> f64 {
    log2_baseline_cost(n, m, delta, omega).exp2()
}

/// Digamma via upward recurrence to x >= 10 followed by the asymptotic
/// series `ln x - 1/(2x) - Σ B_{2k}/(2k x^{2k})` truncated after four
/// terms; the error is far below the solver tolerance.
fn digamma(mut x: f64) -> f64 {
    assert!(x > 0.0);
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    acc + x.ln()
        - 0.5 / x
        - inv2
            * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)))
}

/// ln Γ via the same shift-then-Stirling scheme.
fn ln_gamma(mut x: f64) -> f64 {
    assert!(x > 0.0);
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + (x - 0.5) * x.ln() - x
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// ln C(a, b) for real arguments via ln Γ.
fn ln_binomial(a: f64, b: f64) -> f64 {
    ln_gamma(a + 1.0) - ln_gamma(b + 1.0) - ln_gamma(a - b + 1.0)
}

/// Solution of the coupled most-expensive-degree equations.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExpensiveDegree {
    /// Degree d(m) where the per-degree bound peaks.
    pub d: f64,
    /// The optimal Laplace radius ρ(m) ≥ 1.
    pub rho: f64,
    /// λ(m) = d(m)/m; tends to λ0 as m grows.
    pub lambda: f64,
}

/// Solves, for i = m, the pair
/// `2ψ(d+m) - 2ψ(d+1) = ln r` and
/// `m = 1 + (d-δ) / (δ/(1-r^{-δ}) - 1/(1-r^{-1}))`
/// by nested bisection: the inner equation pins r as a function of d, and
/// the outer residual is strictly decreasing in d.
pub fn solve_d_rho(m: usize, delta: u32) -> Result<ExpensiveDegree> {
    if m < 2 || delta < 2 {
        return Err(Error::InvalidInput(
            "solve_d_rho needs m >= 2 and delta >= 2".into(),
        ));
    }
    let mf = m as f64;
    let df = delta as f64;
    let g = |r: f64| -> f64 { df / (1.0 - r.powf(-df)) - 1.0 / (1.0 - 1.0 / r) };
    let solve_r = |d: f64| -> Result<f64> {
        let target = (d - df) / (mf - 1.0);
        let mut lo = 1.0 + 1e-9;
        let mut hi = 2.0;
        let mut guard = 0;
        while g(hi) < target {
            hi *= 2.0;
            guard += 1;
            if guard > 200 {
                return Err(Error::NoConvergence("inner radius bracket".into()));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    };
    let residual = |d: f64| -> Result<f64> {
        let r = solve_r(d)?;
        Ok(2.0 * (digamma(d + mf) - digamma(d + 1.0)) - r.ln())
    };
    let mut lo = df + (mf - 1.0) * (df - 1.0) / 2.0 + 1e-6;
    let mut hi = df + (mf - 1.0) * (df - 1.0) - 1e-6;
    if !(residual(lo)? > 0.0 && residual(hi)? < 0.0) {
        return Err(Error::NoConvergence("outer degree bracket".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if residual(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d = 0.5 * (lo + hi);
    let rho = solve_r(d)?;
    Ok(ExpensiveDegree {
        d,
        rho,
        lambda: d / mf,
    })
}

/// log2 of the single-term cap
/// `m (m(δ-1)+1-(δ-1)) · B_m(ρ)/ρ^d · C(m+d-1, d) C(m+ℓ+d-1, d)`
/// evaluated at the most expensive degree.
pub fn log2_nf5_capped_bound(m: usize, delta: u32, ell: u32) -> Result<f64> {
    let sol = solve_d_rho(m, delta)?;
    let mf = m as f64;
    let df = delta as f64;
    let geom: f64 = (0..delta).map(|k| sol.rho.powi(k as i32)).sum();
    let ln_bm = df * sol.rho.ln() + (mf - 1.0) * geom.ln();
    let ln_total = mf.ln()
        + (mf * (df - 1.0) + 1.0 - (df - 1.0)).ln()
        + ln_bm
        - sol.d * sol.rho.ln()
        + ln_binomial(mf + sol.d - 1.0, sol.d)
        + ln_binomial(mf + ell as f64 + sol.d - 1.0, sol.d);
    Ok(ln_total / std::f64::consts::LN_2)
}

pub fn nf5_capped_bound(m: usize, delta: u32, ell: u32) -> Result<f64> {
    Ok(log2_nf5_capped_bound(m, delta, ell)?.exp2())
}

/// Baseline exponents for the conventional set of ω values.
pub const OMEGA_GAUSS: f64 = 3.0;
pub const OMEGA_STRASSEN: f64 = 2.807354922057604; // log2(7)
pub const OMEGA_CW: f64 = 2.376;

/// Everything the `bounds` command reports for one (n, m, δ, ℓ) cell.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub delta: u32,
    pub ell: u32,
    pub macaulay_bound: u32,
    pub nf5_exact: String,
    pub log2_nf5_exact: f64,
    pub log2_nf5_asymptotic: f64,
    pub lambda0: f64,
    pub log2_b: f64,
    pub a: f64,
    pub polys_bound: String,
    pub baseline_exponents: Vec<(f64, f64)>,
    /// Set when the input degrees are mixed: the printed double sum is
    /// stated for uniform degrees, so the value is an extrapolation.
    pub extrapolated: bool,
}

pub fn bound_report(n: usize, m: usize, degrees: &[u32], ell: u32, omegas: &[f64]) -> BoundReport {
    let uniform = degrees.windows(2).all(|w| w[0] == w[1]);
    let delta = degrees[0];
    let exact = nf5_exact(n, m, degrees, None);
    BoundReport {
        n,
        m,
        delta,
        ell,
        macaulay_bound: macaulay_bound(degrees),
        log2_nf5_exact: log2_big(&exact),
        nf5_exact: exact.to_string(),
        log2_nf5_asymptotic: log2_nf5_asymptotic(n, delta, ell),
        lambda0: lambda0(delta),
        log2_b: big_b(delta).log2(),
        a: big_a(delta, ell),
        polys_bound: if delta >= 2 {
            polys_bound(m, delta).to_string()
        } else {
            "1".into()
        },
        baseline_exponents: omegas
            .iter()
            .map(|&w| (w, baseline_exponent(delta, w)))
            .collect(),
        extrapolated: !uniform,
    }
}
