//! Random instances in a large central product, refusals, and class cosets.

use extraspecial::cli::commands::{random_element, seeded_rng};
use extraspecial::esp::{self, EspClassCoset, EspParams};
use extraspecial::modlin::count_congruence_solves;
use extraspecial::Residue;

fn main() {
    let params = EspParams::new((1 << 61) - 1, 4, 3).unwrap();
    let mut rng = seeded_rng(2024);
    let g = random_element(&params, &mut rng);
    let h = random_element(&params, &mut rng);
    let g2 = g.conjugate_by(&h);

    let (out, solves) = count_congruence_solves(|| esp::solve_csp(&g, &g2).unwrap());
    let c = out.conjugator().unwrap();
    println!("order p^{} group, {solves} congruence solves", 1 + 2 * params.factor_count());
    println!("conjugator verifies: {}", esp::verify(&g, &g2, c));
    println!("same as the planted one: {}", *c == h);

    let mut parts: Vec<_> = g.m_parts().iter().map(|u| (u.x.value(), u.y.value())).collect();
    parts[2].1 += 1;
    let n: Vec<_> = g.n_parts().iter().map(|u| (u.x.value(), u.z.value())).collect();
    let moved = params.element(&parts, &n, 0).unwrap();
    if let esp::CspOutcome::NotConjugate(why) = esp::solve_csp(&g, &moved).unwrap() {
        println!("refused: {why}");
    }

    let coset = EspClassCoset::new(&g, &h).unwrap();
    let zero = vec![Residue::zero(params.p() as u128); 2 * params.factor_count()];
    println!("g*C_h contains g*h: {}", coset.contains(&coset.member(&zero)));
}
