//! Common elements of translated conjugacy classes in D_n and Q_{2^n}.

use extraspecial::showcase::{Dihedral, Quaternion, dihedral_coset_intersect, quaternion_coset_intersect};

fn main() {
    let d = Dihedral::new(12).unwrap();
    let (h, u) = (d.element(5, 1).unwrap(), d.element(3, 0).unwrap());
    let (k, v) = (d.element(2, 0).unwrap(), d.element(7, 1).unwrap());
    match dihedral_coset_intersect(&h, &u, &k, &v).unwrap() {
        Some((e, w)) => println!("D12: {e} via (i1, j1, i2, j2) = ({}, {}, {}, {})", w.i1, w.j1, w.i2, w.j2),
        None => println!("D12: hC_u and kC_v are disjoint"),
    }
    let common = h * u.conjugate_by(&d.element(1, 1).unwrap());
    let v2 = d.element(4, 1).unwrap();
    let k2 = common * v2.conjugate_by(&d.element(2, 0).unwrap()).inv();
    let (e, _) = dihedral_coset_intersect(&h, &u, &k2, &v2).unwrap().unwrap();
    println!("D12 with k = {k2}, v = {v2}: found {e}");

    let q = Quaternion::new(32).unwrap();
    let (h, u) = (q.element(123456789, 1).unwrap(), q.element(42, 1).unwrap());
    let a = q.element(999, 1).unwrap();
    let common = h * u.conjugate_by(&a);
    let v = q.element(77, 0).unwrap();
    let k = common * v.conjugate_by(&q.element(5, 0).unwrap()).inv();
    let (e, _) = quaternion_coset_intersect(&h, &u, &k, &v).unwrap().unwrap();
    println!("Q_(2^32): found {e}");
}
