//! Hilbert functions measured from Macaulay ranks against the
//! regular-sequence series, plus Noether-position verification and a
//! random change of variables repairing a badly-positioned system.
//!
//!     cargo run --release --example hilbert_and_position

use matrixf5::field::PrimeField;
use matrixf5::macaulay;
use matrixf5::polynomial::Polynomial;
use matrixf5::regularity::{self, SystemSpec};
use matrixf5::system::circles_system;

fn main() {
    let sys = circles_system(PrimeField::default_field());
    println!("three-conics system, measured Hilbert function vs prediction:");
    let series = regularity::regular_series(&[2, 2, 2], 4, 6);
    print!("  measured: ");
    for d in 0..=6u32 {
        print!("{} ", macaulay::hilbert_function(&sys.field, &sys.polys, d).unwrap());
    }
    print!("\n  predicted:");
    for d in 0..=6u32 {
        print!(" {}", series.coefficient(d));
    }
    println!(
        "\n  regular: {}",
        regularity::is_regular(&sys.field, &sys.polys, 4).unwrap()
    );

    for i in 1..=3 {
        println!(
            "  x1..x{i} in Noether position w.r.t. (f1..f{i}): {}",
            regularity::is_noether_position(&sys.field, &sys.polys, i).unwrap()
        );
    }
    println!(
        "  simultaneous Noether position: {}",
        regularity::is_snp(&sys.field, &sys.polys).unwrap()
    );

    // the same polynomials with (y, z) promoted to the leading variables
    // are NOT in Noether position
    let names: Vec<String> = ["y", "z", "x", "h"].iter().map(|s| s.to_string()).collect();
    let f = sys.field;
    let reordered = vec![
        Polynomial::parse("x^2 + y^2 - 2*x*z - 2*y*z + z^2 + h^2", &names, &f).unwrap(),
        Polynomial::parse("x^2 + x*y + y*z - z^2 - 2*h^2", &names, &f).unwrap(),
    ];
    println!(
        "\nwith variables reordered to (y,z,x,h), the 2-prefix is in Noether position: {}",
        regularity::is_noether_position(&f, &reordered, 2).unwrap()
    );
    match regularity::random_change_of_vars(&f, &reordered, 42, 8, None) {
        Ok(out) => println!(
            "a random linear change of variables repairs it after {} attempt(s)",
            out.attempts
        ),
        Err(e) => println!("change of variables failed: {e}"),
    }

    // a dense random square system is in simultaneous Noether position
    // with overwhelming probability
    let spec = SystemSpec::square(5, 2, 65521, 7);
    let rnd = regularity::gen_system(&spec).unwrap();
    let report = regularity::snp_check(&rnd.field, &rnd.polys, None).unwrap();
    println!(
        "\nrandom dense quadratic system (n = m = 5, seed 7): SNP = {} (certificate complete: {})",
        report.all_pass(),
        report.complete
    );
}
