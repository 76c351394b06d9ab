//! Measured work against the closed-form bound on random dense systems
//! in simultaneous Noether position: multiplications in top and full
//! reduction mode, the polynomial count against (δ^m - 1)/(δ - 1), and
//! the reductions-to-zero column that stays at zero on regular input.
//!
//!     cargo run --release --example operation_counts

use matrixf5::bounds;
use matrixf5::f5::{self, ReductionMode, RunOptions};
use matrixf5::regularity::{self, SystemSpec};
use num_traits::ToPrimitive;

fn main() {
    println!(
        "{:>3} {:>6} {:>10} {:>10} {:>10} {:>7} {:>7} {:>6}",
        "n", "delta", "top", "full", "log2 NF5", "polys", "bound", "zero"
    );
    for (delta, ns) in [(2u32, 4..=8usize), (3, 4..=6)] {
        for n in ns {
            let spec = SystemSpec::square(n, delta, 65521, 1);
            let sys = regularity::gen_system(&spec).unwrap();
            let degrees = vec![delta; n];
            let dmax = bounds::macaulay_bound(&degrees);
            let run = |mode| {
                f5::run(&sys.field, &sys.polys, dmax, RunOptions { mode, trace: false })
                    .unwrap()
                    .stats
            };
            let top = run(ReductionMode::Top);
            let full = run(ReductionMode::Full);
            let bound = bounds::polys_bound(n, delta).to_u64().unwrap();
            println!(
                "{n:>3} {delta:>6} {:>10.2} {:>10.2} {:>10.2} {:>7} {:>7} {:>6}",
                (top.totals.mults as f64).log2(),
                (full.totals.mults as f64).log2(),
                bounds::log2_big(&bounds::nf5_exact(n, n, &degrees, None)),
                top.totals.polys_computed,
                bound,
                top.totals.zero_reductions + full.totals.zero_reductions,
            );
        }
    }
    println!("\ncolumns top/full/log2 NF5 are log2 of multiplication counts;");
    println!("polys counts rows whose leading monomial moved during reduction.");
}
