//! Arithmetic and conjugacy search in M(p) = C_{p^2} ⋊ C_p.

use extraspecial::mp::{self, MpParams};

fn main() {
    let m = MpParams::new(29).unwrap();
    let g = m.element(14, 2);
    let h = m.element(3, 7);
    println!("g = {g}, h = {h}");
    println!("g*h = {}", g * h);
    println!("g^-1 = {}", g.inv());
    println!("h^-1 g h = {}", g.conjugate_by(&h));
    println!("zeta = {}, central: {}", m.zeta(), m.zeta().is_central());

    let target = m.element(797, 2);
    match mp::solve_csp(&g, &target) {
        Some(c) => println!("{c} conjugates {g} to {target}"),
        None => println!("{g} and {target} are not conjugate"),
    }
    println!("x^14 y^2 ~ x^15 y^2: {}", mp::is_conjugate(&g, &m.element(15, 2)));

    let big = MpParams::new((1 << 61) - 1).unwrap();
    let a = big.element(1 << 100, 5);
    let b = a.conjugate_by(&big.element(12345, 678));
    println!("p = 2^61-1: recovered {}", mp::solve_csp(&a, &b).unwrap());
}
