//! The p = 29 instance in M(29) ∘ N(29), solved factor by factor.

use extraspecial::esp::{self, CspOutcome, EspParams, Factor};

fn main() {
    let g = EspParams::new(29, 1, 1).unwrap();
    let m = g.mp();
    let n = g.np();
    let g_tilde = g.normalize(&[Factor::M(m.element(14, 2)), Factor::N(n.element(22, 12, 23))]).unwrap();
    let g_prime = g.normalize(&[Factor::M(m.element(797, 2)), Factor::N(n.element(22, 5, 23))]).unwrap();
    println!("g~ = {g_tilde}");
    println!("g' = {g_prime}");

    match esp::solve_csp(&g_tilde, &g_prime).unwrap() {
        CspOutcome::Solved { conjugator, trace } => {
            for step in &trace {
                println!("factor {} ({}): t = zeta^{}, local conjugator {}", step.factor, step.kind, step.t, step.local);
            }
            println!("conjugator {conjugator}, verified: {}", esp::verify(&g_tilde, &g_prime, &conjugator));
        }
        CspOutcome::NotConjugate(why) => println!("not conjugate: {why}"),
    }

    let other = g.element(&[(14, 0)], &[(0, 26)], 0).unwrap();
    println!("x0^14 z1^26 also works: {}", esp::verify(&g_tilde, &g_prime, &other));
}
