//! A small Buchberger implementation used as an independent correctness
//! oracle on tiny instances.
//!
//! Pairs are processed lowest lcm-degree first; homogeneity makes the
//! degree cap a clean termination criterion. No signature machinery and
//! no pair-elimination criteria: reductions to zero are fine here, the
//! oracle optimises for auditability.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;

/// `lcm/LT(f)·f/lc(f) - lcm/LT(g)·g/lc(g)`: leading terms cancel.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, field: &PrimeField) -> Polynomial {
    let lf = f.leading_term().expect("nonzero");
    let lg = g.leading_term().expect("nonzero");
    let lcm = lf.monomial.lcm(&lg.monomial);
    let a = f.mul_term(
        &lcm.quotient(&lf.monomial).unwrap(),
        field.inv(lf.coefficient).unwrap(),
        field,
    );
    let b = g.mul_term(
        &lcm.quotient(&lg.monomial).unwrap(),
        field.inv(lg.coefficient).unwrap(),
        field,
    );
    a.sub(&b, field)
}

/// Degree-capped Buchberger with the normal (lowest-degree-first)
/// strategy, returning the reduced monic basis. Errors if the pair queue
/// ever exceeds `pair_limit` (the instance is too large for an oracle).
pub fn buchberger(
    system: &[Polynomial],
    degree_cap: u32,
    pair_limit: usize,
    field: &PrimeField,
) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = Vec::new();
    // (lcm degree, i, j) ordered queue; homogeneity means processing by
    // degree never needs to revisit lower degrees
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();

    for f in system {
        if f.is_zero() {
            continue;
        }
        if !f.is_homogeneous() {
            return Err(Error::InvalidInput("oracle needs homogeneous input".into()));
        }
        add_element(&mut basis, &mut pairs, f.monic(field), degree_cap)?;
        if pairs.len() > pair_limit {
            return Err(Error::OracleOverflow(pairs.len()));
        }
    }

    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        let s = s_polynomial(&basis[i], &basis[j], field);
        let nf = s.normal_form(&basis, field);
        if nf.is_zero() {
            continue;
        }
        add_element(&mut basis, &mut pairs, nf.monic(field), degree_cap)?;
        if pairs.len() > pair_limit {
            return Err(Error::OracleOverflow(pairs.len()));
        }
    }

    Ok(crate::f5::reduce_basis(field, &basis))
}

fn add_element(
    basis: &mut Vec<Polynomial>,
    pairs: &mut BTreeSet<(u32, usize, usize)>,
    f: Polynomial,
    degree_cap: u32,
) -> Result<()> {
    let k = basis.len();
    let lf = f.leading_monomial().unwrap().clone();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial().unwrap();
        let lcm = lf.lcm(lg);
        if lcm.degree() <= degree_cap {
            pairs.insert((lcm.degree(), i, k));
        }
    }
    basis.push(f);
    Ok(())
}

/// Minimal generating set of the monomial ideal spanned by the leading
/// terms of a basis.
pub fn minimal_lt_set(basis: &[Polynomial]) -> Vec<Monomial> {
    let mut lts: Vec<Monomial> = basis
        .iter()
        .filter_map(|f| f.leading_monomial().cloned())
        .collect();
    lts.sort();
    lts.dedup();
    let mut minimal: Vec<Monomial> = Vec::new();
    for t in lts {
        if !minimal.iter().any(|s| s.divides(&t)) {
            minimal.push(t);
        }
    }
    minimal
}

/// True when the two bases generate the same leading-term ideal.
pub fn compare_lt_ideals(a: &[Polynomial], b: &[Polynomial]) -> bool {
    minimal_lt_set(a) == minimal_lt_set(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f5;
    use crate::system::circles_system;

    fn setup() -> (PrimeField, Vec<Polynomial>, Vec<String>) {
        let sys = circles_system(PrimeField::default_field());
        (sys.field, sys.polys, sys.var_names)
    }

    #[test]
    fn s_polynomial_with_self_vanishes() {
        let (f, polys, _) = setup();
        assert!(s_polynomial(&polys[0], &polys[0], &f).is_zero());
    }

    #[test]
    fn monomial_s_pair_cancels() {
        let f = PrimeField::default_field();
        let names = vec!["x".to_string(), "y".to_string()];
        let a = Polynomial::parse("x^2", &names, &f).unwrap();
        let b = Polynomial::parse("x*y", &names, &f).unwrap();
        assert!(s_polynomial(&a, &b, &f).is_zero());
    }

    #[test]
    fn circles_pair_s_polynomial_degree() {
        let (f, polys, _) = setup();
        // both leading monomials are x^2, so the S-polynomial stays in
        // degree 2 and drops below x^2
        let s = s_polynomial(&polys[1], &polys[2], &f);
        assert_eq!(s.degree(), Some(2));
        assert!(
            s.leading_monomial().unwrap() < &Monomial::new(vec![2, 0, 0, 0])
        );
    }

    #[test]
    fn buchberger_circles_lt_set() {
        let (f, polys, _) = setup();
        let gb = buchberger(&polys, 4, 100_000, &f).unwrap();
        let lts = minimal_lt_set(&gb);
        let want: Vec<Monomial> = [
            vec![2u8, 0, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 2, 0, 0],
            vec![1, 0, 2, 0],
            vec![0, 1, 2, 0],
            vec![0, 0, 4, 0],
        ]
        .into_iter()
        .map(Monomial::new)
        .collect();
        let mut want_sorted = want.clone();
        want_sorted.sort();
        assert_eq!(lts, want_sorted);
    }

    #[test]
    fn buchberger_single_polynomial() {
        let (f, polys, _) = setup();
        let gb = buchberger(&polys[..1], 4, 1000, &f).unwrap();
        assert_eq!(gb, vec![polys[0].monic(&f)]);
    }

    #[test]
    fn buchberger_variable_ideal() {
        let f = PrimeField::default_field();
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let sys: Vec<Polynomial> = names
            .iter()
            .map(|v| Polynomial::parse(v, &names, &f).unwrap())
            .collect();
        let gb = buchberger(&sys, 3, 1000, &f).unwrap();
        assert_eq!(gb.len(), 3);
        assert_eq!(minimal_lt_set(&gb).len(), 3);
    }

    #[test]
    fn compare_handles_redundant_generators() {
        let f = PrimeField::default_field();
        let names = vec!["x".to_string(), "y".to_string()];
        let a = vec![Polynomial::parse("x^2", &names, &f).unwrap()];
        let b = vec![
            Polynomial::parse("x^2", &names, &f).unwrap(),
            Polynomial::parse("x^3", &names, &f).unwrap(),
        ];
        assert!(compare_lt_ideals(&a, &b));
        assert!(compare_lt_ideals(&a, &a));
    }

    #[test]
    fn buchberger_invariant_under_permutation() {
        let (f, polys, _) = setup();
        let mut permuted = polys.clone();
        permuted.rotate_left(1);
        let a = buchberger(&polys, 4, 100_000, &f).unwrap();
        let b = buchberger(&permuted, 4, 100_000, &f).unwrap();
        let as_set = |v: &[Polynomial]| {
            let mut v: Vec<String> = v.iter().map(|g| format!("{g:?}")).collect();
            v.sort();
            v
        };
        assert_eq!(as_set(&a), as_set(&b));
    }

    #[test]
    fn f5_matches_oracle_on_circles() {
        let (f, polys, _) = setup();
        let out = f5::run(&f, &polys, 4, f5::RunOptions::default()).unwrap();
        let raw: Vec<Polynomial> = out.bases[2].iter().map(|e| e.polynomial.clone()).collect();
        let f5_reduced = f5::reduce_basis(&f, &raw);
        let oracle = buchberger(&polys, 4, 100_000, &f).unwrap();
        assert!(compare_lt_ideals(&f5_reduced, &oracle));
        // the reduced bases themselves coincide (reduced GB is unique)
        assert_eq!(f5_reduced, oracle);
    }
}
