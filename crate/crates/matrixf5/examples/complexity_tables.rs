//! The complexity calculators: exact N_F5 tables for quadratic and cubic
//! square systems, the asymptotic base B(δ) against Macaulay-matrix
//! baselines for several matrix-multiplication exponents, and per-variable
//! rates.
//!
//!     cargo run --release --example complexity_tables

use matrixf5::bounds;

fn main() {
    println!("exact operation bound N_F5, quadratic systems (m = n):");
    println!("{:>4} {:>12} {:>10}", "n", "log2 N_F5", "per var");
    for n in 7..=16usize {
        let l2 = bounds::log2_big(&bounds::nf5_exact(n, n, &vec![2; n], None));
        println!("{n:>4} {l2:>12.2} {:>10.3}", l2 / n as f64);
    }

    println!("\nexact operation bound N_F5, cubic systems (m = n):");
    println!("{:>4} {:>12} {:>10}", "n", "log2 N_F5", "per var");
    for n in 5..=10usize {
        let l2 = bounds::log2_big(&bounds::nf5_exact(n, n, &vec![3; n], None));
        println!("{n:>4} {l2:>12.2} {:>10.3}", l2 / n as f64);
    }

    println!("\nasymptotic base vs Macaulay-matrix row reduction:");
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "delta", "log2 B", "omega=3", "omega=lg7", "omega=2.376"
    );
    for delta in 2..=10u32 {
        println!(
            "{delta:>6} {:>12.6} {:>12.4} {:>12.4} {:>12.4}",
            bounds::big_b(delta).log2(),
            bounds::baseline_exponent(delta, bounds::OMEGA_GAUSS),
            bounds::baseline_exponent(delta, bounds::OMEGA_STRASSEN),
            bounds::baseline_exponent(delta, bounds::OMEGA_CW),
        );
    }
    println!(
        "\nB(delta)/delta^3 stays in [1, 3]: {:.4}, {:.4}, {:.4}, ... -> {:.8} at delta = 10^4",
        bounds::big_b(2) / 8.0,
        bounds::big_b(3) / 27.0,
        bounds::big_b(4) / 64.0,
        bounds::big_b(10_000) / 1e12
    );

    println!("\nper-variable rate of the exact bound vs its asymptote (delta = 2):");
    for n in [10usize, 20, 50, 100] {
        let exact = bounds::log2_big(&bounds::nf5_exact(n, n, &vec![2; n], None)) / n as f64;
        println!(
            "  n = {n:>3}: log2(N_F5)/n = {exact:.3}   asymptote {:.3}",
            bounds::big_b(2).log2()
        );
    }
}
