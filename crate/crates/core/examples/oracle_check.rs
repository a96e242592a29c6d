//! Brute-force ground truth: classes, conjugators and class intersections.

use extraspecial::esp::{self, EspParams};
use extraspecial::oracle::{enumerate_group, oracle_cap};
use extraspecial::showcase::Dihedral;

fn main() {
    let params = EspParams::new(3, 1, 1).unwrap();
    let g = enumerate_group(&params, oracle_cap()).unwrap();
    let classes = g.conjugacy_classes();
    println!("|G| = {}, |Z| = {}, {} classes", g.order(), g.center().len(), classes.len());

    let mut mismatches = 0;
    for a in g.elements() {
        for b in g.elements().iter().step_by(11) {
            let brute = g.brute_csp(a, b).unwrap().is_some();
            mismatches += usize::from(brute != esp::solve_csp(a, b).unwrap().is_solved());
        }
    }
    println!("solver vs brute force: {mismatches} mismatches");

    let d4 = Dihedral::new(4).unwrap();
    let gd = enumerate_group(&d4, oracle_cap()).unwrap();
    let x = d4.element(1, 0).unwrap();
    let class: Vec<String> = gd.brute_class(&x).unwrap().iter().map(|e| e.to_string()).collect();
    println!("class of x in D4: {class:?}");
}
