//! Congruence solves and wall time as the prime and the factor count grow.

use extraspecial::cli::commands::bench;

fn main() {
    let report = bench(&[16, 32, 48, 62], &[1, 2, 4, 8, 16, 32], 20, 1).unwrap();
    println!("{:>6} {:>6} {:>10} {:>10} {:>6}", "p_bits", "r+s", "median_us", "mean_us", "solves");
    for r in &report.rows {
        println!("{:>6} {:>6} {:>10.1} {:>10.1} {:>6}", r.p_bits, r.components, r.median_us, r.mean_us, r.max_solves);
    }
    println!("within 3(r+s)+1: {}, independent of p: {}", report.within_bound, report.independent_of_p);
}
