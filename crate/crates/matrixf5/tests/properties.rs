//! Cross-module invariants and property tests.

use proptest::prelude::*;

use matrixf5::bounds;
use matrixf5::f5::{self, ReductionMode, RunOptions};
use matrixf5::field::PrimeField;
use matrixf5::macaulay;
use matrixf5::monomial::{self, Monomial};
use matrixf5::oracle;
use matrixf5::polynomial::Polynomial;
use matrixf5::regularity::{self, SystemSpec};
use matrixf5::system::circles_system;

/// The engine's reduced matrices span the same leading-term sets as the
/// plain Macaulay echelon, step by step, on random systems.
#[test]
fn f5_leading_terms_match_macaulay_pivots() {
    for (n, delta, seed) in [(3usize, 2u32, 11u64), (4, 2, 12), (3, 3, 13)] {
        let spec = SystemSpec::square(n, delta, 65521, seed);
        let sys = regularity::gen_system(&spec).unwrap();
        let dmax = bounds::macaulay_bound(&vec![delta; n]);
        let out = f5::run(
            &sys.field,
            &sys.polys,
            dmax,
            RunOptions {
                mode: ReductionMode::Top,
                trace: true,
            },
        )
        .unwrap();
        for step in &out.trace.unwrap().steps {
            let mac = macaulay::build(&sys.polys[..step.i], step.d).unwrap();
            let ech = macaulay::echelon(&sys.field, &mac);
            let mut f5_lts: Vec<Monomial> =
                step.rows.iter().map(|r| r.leading_monomial.clone()).collect();
            f5_lts.sort();
            let mut mac_lts = ech.pivot_monomials;
            mac_lts.sort();
            assert_eq!(f5_lts, mac_lts, "n={n} delta={delta} d={} i={}", step.d, step.i);
        }
    }
}

/// Identical configuration (including seed) produces byte-identical
/// stats and identical bases.
#[test]
fn runs_are_deterministic() {
    let spec = SystemSpec::square(5, 2, 65521, 33);
    let a_sys = regularity::gen_system(&spec).unwrap();
    let b_sys = regularity::gen_system(&spec).unwrap();
    assert_eq!(a_sys.polys, b_sys.polys);
    let run = |sys: &matrixf5::system::PolySystem| {
        f5::run(&sys.field, &sys.polys, 6, RunOptions::default()).unwrap()
    };
    let a = run(&a_sys);
    let b = run(&b_sys);
    assert_eq!(a.stats.to_json(), b.stats.to_json());
    for (x, y) in a.bases.iter().flatten().zip(b.bases.iter().flatten()) {
        assert_eq!(x.signature, y.signature);
        assert_eq!(x.polynomial, y.polynomial);
    }
}

/// Ideal membership through the oracle: the product f1*f2 lies in the
/// circles ideal, so its normal form against the Groebner basis vanishes.
#[test]
fn normal_form_detects_membership() {
    let sys = circles_system(PrimeField::default_field());
    let gb = oracle::buchberger(&sys.polys, 4, 100_000, &sys.field).unwrap();
    let prod = sys.polys[0].mul(&sys.polys[1], &sys.field);
    assert!(prod.normal_form(&gb, &sys.field).is_zero());
    // and a random combination c1 f1 + c2 f2 likewise
    let comb = sys.polys[0]
        .scale(12345, &sys.field)
        .add(&sys.polys[1].scale(54321, &sys.field), &sys.field);
    assert!(comb.normal_form(&gb, &sys.field).is_zero());
}

/// Full reduction only cleans tails: leading terms, bases and counters
/// other than mults/norms agree between the two modes.
#[test]
fn full_mode_preserves_leading_structure() {
    let spec = SystemSpec::square(4, 3, 65521, 5);
    let sys = regularity::gen_system(&spec).unwrap();
    let dmax = bounds::macaulay_bound(&[3; 4]);
    let top = f5::run(&sys.field, &sys.polys, dmax, RunOptions::default()).unwrap();
    let full = f5::run(
        &sys.field,
        &sys.polys,
        dmax,
        RunOptions {
            mode: ReductionMode::Full,
            trace: false,
        },
    )
    .unwrap();
    assert_eq!(top.stats.totals.zero_reductions, 0);
    assert_eq!(full.stats.totals.zero_reductions, 0);
    assert_eq!(
        top.stats.totals.polys_computed,
        full.stats.totals.polys_computed
    );
    for (a, b) in top.bases.iter().zip(full.bases.iter()) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.signature, y.signature);
            assert_eq!(
                x.polynomial.leading_monomial(),
                y.polynomial.leading_monomial()
            );
        }
    }
    // in full mode, no basis polynomial contains another element's
    // leading monomial of smaller signature in its support
    for basis in &full.bases {
        for (k, el) in basis.iter().enumerate() {
            for smaller in &basis[..k] {
                if smaller.signature.index > el.signature.index {
                    continue;
                }
                let lt = smaller.polynomial.leading_monomial().unwrap();
                if smaller.signature < el.signature {
                    assert_eq!(
                        el.polynomial.coefficient(lt),
                        0,
                        "{} still contains pivot {lt} of {}",
                        el.signature,
                        smaller.signature
                    );
                }
            }
        }
    }
}

/// Mixed degrees exercise the d < d_i steps (shared matrices) and the
/// per-generator criterion degrees; the reduced basis must still agree
/// with Buchberger.
#[test]
fn mixed_degree_system_matches_oracle() {
    for seed in [3u64, 4, 5] {
        let spec = SystemSpec {
            n: 3,
            m: 3,
            degrees: vec![2, 3, 3],
            p: 65521,
            seed,
        };
        let sys = regularity::gen_system(&spec).unwrap();
        let dmax = bounds::macaulay_bound(&[2, 3, 3]);
        let out = f5::run(&sys.field, &sys.polys, dmax, RunOptions::default()).unwrap();
        assert_eq!(out.stats.totals.zero_reductions, 0, "seed {seed}");
        let raw: Vec<Polynomial> = out.bases[2].iter().map(|e| e.polynomial.clone()).collect();
        let mine = f5::reduce_basis(&sys.field, &raw);
        let gb = oracle::buchberger(&sys.polys, dmax, 200_000, &sys.field).unwrap();
        assert_eq!(mine, gb, "seed {seed}");
    }
}

fn arb_monomial(n: usize, max_exp: u8) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// grevlex is a total order compatible with multiplication.
    #[test]
    fn grevlex_total_order_and_mul_compatible(
        (a, b, c) in (1usize..=5).prop_flat_map(|n| {
            (arb_monomial(n, 5), arb_monomial(n, 5), arb_monomial(n, 5))
        })
    ) {
        use std::cmp::Ordering;
        let ab = a.grevlex_cmp(&b);
        prop_assert_eq!(b.grevlex_cmp(&a), ab.reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        // transitivity via sorted triple
        let mut sorted = [a.clone(), b.clone(), c.clone()];
        sorted.sort();
        prop_assert!(sorted[0] <= sorted[1] && sorted[1] <= sorted[2]);
        // multiplication preserves the order
        prop_assert_eq!(a.mul(&c).grevlex_cmp(&b.mul(&c)), ab);
    }

    /// Parse of the canonical rendering gives the polynomial back.
    #[test]
    fn print_parse_roundtrip(
        terms in (1usize..=4).prop_flat_map(|n| {
            proptest::collection::vec((arb_monomial(n, 4), 0u64..65521), 0..8)
                .prop_map(move |ts| (n, ts))
        })
    ) {
        let (n, ts) = terms;
        let field = PrimeField::default_field();
        let names: Vec<String> = (1..=n).map(|j| format!("x{j}")).collect();
        let poly = Polynomial::from_terms(n, ts, &field);
        let rendered = poly.format(&names);
        let back = Polynomial::parse(&rendered, &names, &field).unwrap();
        prop_assert_eq!(back, poly);
    }

    /// Enumeration agrees with brute force generation plus sorting.
    #[test]
    fn enumeration_is_sorted_and_complete(i in 1usize..=5, d in 0u32..=6) {
        let list = monomial::enumerate(i, d, i);
        prop_assert_eq!(list.len() as u64, monomial::binomial(i as u64 + d as u64 - 1, d as u64));
        for w in list.windows(2) {
            prop_assert!(w[0] > w[1]);
        }
        for m in &list {
            prop_assert_eq!(m.degree(), d);
        }
    }

    /// Normal form is idempotent and leaves no reducible monomials.
    #[test]
    fn normal_form_idempotent(seed in 0u64..50) {
        let field = PrimeField::default_field();
        let spec = SystemSpec::square(3, 2, 65521, seed);
        let sys = regularity::gen_system(&spec).unwrap();
        let basis = &sys.polys[..2];
        let target = sys.polys[2].mul(&sys.polys[0], &field);
        let nf = target.normal_form(basis, &field);
        for (m, _) in nf.terms() {
            for g in basis {
                prop_assert!(!g.leading_monomial().unwrap().divides(m));
            }
        }
        prop_assert_eq!(nf.normal_form(basis, &field), nf.clone());
    }
}
