//! Walkthrough on the three-conics system: watch the signed matrices
//! grow degree by degree, see the signature criterion fire, and read off
//! the Gröbner bases.
//!
//!     cargo run --release --example worked_example

use matrixf5::f5::{self, ReductionMode, RunOptions};
use matrixf5::field::PrimeField;
use matrixf5::system::circles_system;

fn main() {
    let sys = circles_system(PrimeField::default_field());
    let names = &sys.var_names;
    println!("system over GF({}):", sys.field.modulus());
    for (k, f) in sys.polys.iter().enumerate() {
        println!("  f{} = {}", k + 1, f.format_signed(names, &sys.field));
    }

    let out = f5::run(
        &sys.field,
        &sys.polys,
        4,
        RunOptions {
            mode: ReductionMode::Top,
            trace: true,
        },
    )
    .unwrap();
    let trace = out.trace.as_ref().unwrap();

    // degree 2: the full signed matrix and its reduction
    let step = trace.step(2, 3).unwrap();
    println!("\nreduced degree-2 matrix ({} rows x {} columns):", step.rows.len(), step.columns.len());
    print!("{:>12}", "");
    for c in &step.columns {
        print!("{:>7}", c.format(names));
    }
    println!();
    for row in &step.rows {
        print!(
            "  ({}, {:<4})  ",
            row.signature.index,
            row.signature.multiplier.format(names)
        );
        // pivots are stored monic; rescale for display so the entries are
        // the smallest integers possible
        let p = sys.field.modulus();
        let signed = |v: u64| -> i64 {
            if v > p / 2 {
                -((p - v) as i64)
            } else {
                v as i64
            }
        };
        let scale = (1..=32u64)
            .min_by_key(|&k| {
                row.terms
                    .iter()
                    .map(|&(_, v)| signed(sys.field.mul(v, k)).unsigned_abs())
                    .max()
                    .unwrap_or(0)
            })
            .unwrap();
        for c in &step.columns {
            let v = row
                .terms
                .iter()
                .find(|(m, _)| m == c)
                .map(|&(_, v)| sys.field.mul(v, scale))
                .unwrap_or(0);
            print!("{:>7}", signed(v));
        }
        println!();
    }

    // degree 3: signatures and leading terms
    let step = trace.step(3, 3).unwrap();
    println!("\ndegree-3 rows (signature -> leading term):");
    for row in &step.rows {
        println!(
            "  ({}, {:<4}) -> {}",
            row.signature.index,
            row.signature.multiplier.format(names),
            row.leading_monomial.format(names)
        );
    }

    // degree 4: the criterion removes predictable rows
    println!("\ndegree-4 rows skipped by the signature criterion:");
    for i in 2..=3 {
        for s in &trace.step(4, i).unwrap().excluded {
            println!("  ({}, {})", s.index, s.multiplier.format(names));
        }
    }
    let step = trace.step(4, 3).unwrap();
    println!(
        "degree-4 matrix: {} rows x {} columns",
        step.rows.len(),
        step.columns.len()
    );

    println!("\nbases (signature, polynomial):");
    for (i, basis) in out.bases.iter().enumerate() {
        println!("  G_{}:", i + 1);
        for el in basis {
            println!(
                "    (({}, {}), {})",
                el.signature.index,
                el.signature.multiplier.format(names),
                el.polynomial.format_signed(names, &sys.field)
            );
        }
    }

    let raw: Vec<_> = out.bases[2].iter().map(|e| e.polynomial.clone()).collect();
    println!("\nreduced basis:");
    for g in f5::reduce_basis(&sys.field, &raw) {
        println!("  {}", g.format_signed(names, &sys.field));
    }

    let t = &out.stats.totals;
    println!(
        "\n{} multiplications, {} rows built, {} excluded, {} reductions to zero",
        t.mults, t.rows, t.excluded, t.zero_reductions
    );
}
