//! The most-expensive-degree machinery: solve the coupled digamma/radius
//! equations for d(m) and ρ(m), watch λ(m) = d(m)/m converge to λ0, and
//! compare the resulting single-term cap with the exact double sum.
//!
//!     cargo run --release --example expensive_degree

use matrixf5::bounds;

fn main() {
    for delta in [2u32, 3, 4] {
        let l0 = bounds::lambda0(delta);
        println!(
            "delta = {delta}: lambda0 = {l0:.9}, (1 + 1/lambda0)^2 = {:.6}",
            (1.0 + 1.0 / l0).powi(2)
        );
        println!(
            "{:>7} {:>12} {:>10} {:>10} {:>12}",
            "m", "d(m)", "rho(m)", "lambda(m)", "|l - l0|"
        );
        for m in [5usize, 10, 20, 50, 100, 1000] {
            let sol = bounds::solve_d_rho(m, delta).unwrap();
            println!(
                "{m:>7} {:>12.3} {:>10.6} {:>10.6} {:>12.2e}",
                sol.d,
                sol.rho,
                sol.lambda,
                (sol.lambda - l0).abs()
            );
        }
        println!();
    }

    println!("single-term cap vs exact double sum vs asymptote (delta = 2, ell = 0):");
    println!(
        "{:>5} {:>12} {:>12} {:>12}",
        "m", "log2 cap", "log2 exact", "log2 asym"
    );
    for m in [10usize, 20, 50, 100] {
        println!(
            "{m:>5} {:>12.2} {:>12.2} {:>12.2}",
            bounds::log2_nf5_capped_bound(m, 2, 0).unwrap(),
            bounds::log2_big(&bounds::nf5_exact(m, m, &vec![2; m], None)),
            bounds::log2_nf5_asymptotic(m, 2, 0),
        );
    }
}
