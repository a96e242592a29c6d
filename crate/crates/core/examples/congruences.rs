//! Linear congruences: one variable, two variables, and the solve counter.

use extraspecial::Residue;
use extraspecial::modlin::{count_congruence_solves, ext_gcd, solve_congruence, solve_two_var};

fn main() {
    let (g, u, v) = ext_gcd(240, 46);
    println!("gcd(240, 46) = {g} = 240*{u} + 46*{v}");

    let n = 29;
    let sol = solve_congruence(Residue::new(7, n), Residue::new(1, n)).unwrap();
    println!("7x = 1 (mod 29): x = {}", sol.base);

    let sol = solve_congruence(Residue::new(6, 18), Residue::new(12, 18)).unwrap();
    let all: Vec<_> = sol.iter().map(|x| x.value()).collect();
    println!("6x = 12 (mod 18): {all:?}");
    println!("6x = 5 (mod 18): {:?}", solve_congruence(Residue::new(6, 18), Residue::new(5, 18)));

    let ((x, y), solves) =
        count_congruence_solves(|| solve_two_var(Residue::new(6, 15), Residue::new(10, 15), Residue::new(1, 15)).unwrap());
    println!("6x + 10y = 1 (mod 15): least (x, y) = ({x}, {y}) using {solves} congruence solves");

    let p = (1u128 << 61) - 1;
    let big = solve_congruence(Residue::new(123456789, p), Residue::new(987654321, p)).unwrap();
    println!("mod 2^61-1: x = {}", big.base);
}
