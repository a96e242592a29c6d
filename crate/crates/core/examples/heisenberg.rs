//! N(p) as x^a y^b z^c and as unitriangular 3x3 matrices.

use extraspecial::np::{self, NpElement, NpParams};

fn main() {
    let n = NpParams::new(5).unwrap();
    let g = n.element(2, 1, 3);
    let h = n.element(4, 0, 1);
    for (name, e) in [("g", g), ("h", h), ("g*h", g * h)] {
        println!("{name} = {e}");
        for row in e.to_matrix().rows() {
            println!("    {row:?}");
        }
    }
    assert_eq!((g * h).to_matrix(), g.to_matrix() * h.to_matrix());
    assert_eq!(NpElement::from_matrix(&g.to_matrix()).unwrap(), g);

    let target = g.conjugate_by(&h);
    println!("h^-1 g h = {target}");
    println!("solver finds {}", np::solve_csp(&g, &target).unwrap());
    println!("y ~ y^2: {}", np::is_conjugate(&n.zeta(), &n.element(0, 2, 0)));
}
