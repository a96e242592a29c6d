//! The Heisenberg group `N(p) = (C_p × C_p) ⋊ C_p`.
//!
//! Presentation: `x^p = y^p = z^p = 1`, `y` central, `z x z^{-1} = x y^{-1}`.
//! Normal form is `x^a y^b z^c`; moving `z^c` past `x^a` costs `y^{-ca}`.
//! The center is `<y>` and
//!
//! ```text
//! (x^i y^j z^k)^{-1} (x^a y^b z^c) (x^i y^j z^k) = x^a y^{b + ka - ic} z^c
//! ```

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::modlin::{self, Residue};
use crate::mp::check_odd_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NpParams {
    p: u64,
}

impl NpParams {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(NpParams { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u128 {
        let p = self.p as u128;
        p * p * p
    }

    fn modulus(&self) -> u128 {
        self.p as u128
    }

    pub fn identity(&self) -> NpElement {
        self.element(0, 0, 0)
    }

    pub fn element(&self, a: u128, b: u128, c: u128) -> NpElement {
        let n = self.modulus();
        NpElement { a: Residue::new(a, n), b: Residue::new(b, n), c: Residue::new(c, n) }
    }

    pub fn element_signed(&self, a: i128, b: i128, c: i128) -> NpElement {
        let n = self.modulus();
        NpElement {
            a: Residue::from_signed(a, n),
            b: Residue::from_signed(b, n),
            c: Residue::from_signed(c, n),
        }
    }

    /// The central generator `y`.
    pub fn zeta(&self) -> NpElement {
        self.element(0, 1, 0)
    }

    /// All elements in lexicographic order of `(a, b, c)`.
    pub fn elements(&self) -> impl Iterator<Item = NpElement> + '_ {
        let p = self.modulus();
        (0..p).flat_map(move |a| (0..p).flat_map(move |b| (0..p).map(move |c| self.element(a, b, c))))
    }
}

/// `x^a y^b z^c` in normal form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NpElement {
    a: Residue,
    b: Residue,
    c: Residue,
}

impl NpElement {
    pub fn from_residues(a: Residue, b: Residue, c: Residue) -> Result<Self> {
        let n = a.modulus();
        if b.modulus() != n || c.modulus() != n {
            return Err(Error::ModulusMismatch(n, if b.modulus() != n { b.modulus() } else { c.modulus() }));
        }
        let p = u64::try_from(n).map_err(|_| Error::BadParams("p exceeds 64 bits".into()))?;
        check_odd_prime(p)?;
        Ok(NpElement { a, b, c })
    }

    pub fn params(&self) -> NpParams {
        NpParams { p: self.a.modulus() as u64 }
    }

    pub fn a(&self) -> Residue {
        self.a
    }

    pub fn b(&self) -> Residue {
        self.b
    }

    pub fn c(&self) -> Residue {
        self.c
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_central(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }

    pub fn checked_mul(&self, rhs: &NpElement) -> Result<NpElement> {
        if self.params() != rhs.params() {
            return Err(Error::ParamMismatch);
        }
        Ok(NpElement { a: self.a + rhs.a, b: self.b + rhs.b - self.c * rhs.a, c: self.c + rhs.c })
    }

    /// `(x^a y^b z^c)^{-1} = x^{-a} y^{-b-ac} z^{-c}`.
    pub fn inv(&self) -> NpElement {
        NpElement { a: -self.a, b: -(self.b + self.a * self.c), c: -self.c }
    }

    /// `h^{-1} self h`; the `y`-exponent of `h` never matters.
    pub fn conjugate_by(&self, h: &NpElement) -> NpElement {
        assert_eq!(self.params(), h.params(), "{}", Error::ParamMismatch);
        self.shift_center(h.c * self.a - h.a * self.c)
    }

    /// Multiplies by `y^k`.
    pub fn shift_center(&self, k: Residue) -> NpElement {
        NpElement { b: self.b + k, ..*self }
    }

    pub fn central_exponent(&self) -> Option<Residue> {
        self.is_central().then_some(self.b)
    }

    pub fn to_matrix(&self) -> NpMatrix {
        NpMatrix { m01: self.a, m02: self.b + self.a * self.c, m12: self.c }
    }

    pub fn from_matrix(m: &NpMatrix) -> Result<NpElement> {
        NpElement::from_residues(m.m01, m.m02 - m.m01 * m.m12, m.m12)
    }
}

impl Mul for NpElement {
    type Output = NpElement;

    fn mul(self, rhs: NpElement) -> NpElement {
        self.checked_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Debug for NpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}*y^{}*z^{} in N({})", self.a, self.b, self.c, self.a.modulus())
    }
}

impl fmt::Display for NpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}*y^{}*z^{}", self.a, self.b, self.c)
    }
}

/// Upper unitriangular matrix
///
/// ```text
/// [1 m01 m02]
/// [0  1  m12]
/// [0  0   1 ]
/// ```
///
/// `x^a y^b z^c` maps to `X^a Y^b Z^c`, which has `m01 = a`, `m12 = c` and
/// `m02 = b + ac`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NpMatrix {
    pub m01: Residue,
    pub m02: Residue,
    pub m12: Residue,
}

impl NpMatrix {
    pub fn identity(p: u64) -> NpMatrix {
        let z = Residue::zero(p as u128);
        NpMatrix { m01: z, m02: z, m12: z }
    }

    /// Dense rows, for interchange.
    pub fn rows(&self) -> [[u128; 3]; 3] {
        [[1, self.m01.value(), self.m02.value()], [0, 1, self.m12.value()], [0, 0, 1]]
    }

    pub fn from_rows(rows: [[u128; 3]; 3], p: u64) -> Result<NpMatrix> {
        let n = p as u128;
        let unit = rows[0][0] % n == 1 && rows[1][1] % n == 1 && rows[2][2] % n == 1;
        let lower_zero = rows[1][0].is_multiple_of(n) && rows[2][0].is_multiple_of(n) && rows[2][1].is_multiple_of(n);
        if !unit || !lower_zero {
            return Err(Error::Parse("matrix is not upper unitriangular".into()));
        }
        Ok(NpMatrix {
            m01: Residue::new(rows[0][1], n),
            m02: Residue::new(rows[0][2], n),
            m12: Residue::new(rows[1][2], n),
        })
    }
}

impl Mul for NpMatrix {
    type Output = NpMatrix;

    fn mul(self, o: NpMatrix) -> NpMatrix {
        NpMatrix { m01: self.m01 + o.m01, m02: self.m02 + self.m01 * o.m12 + o.m02, m12: self.m12 + o.m12 }
    }
}

/// Conjugacy decision in `N(p)`: `a = A`, `c = C`, and for central
/// elements also `b = B`.
pub fn is_conjugate(g: &NpElement, g2: &NpElement) -> bool {
    g.params() == g2.params() && g.a == g2.a && g.c == g2.c && (!g.is_central() || g.b == g2.b)
}

/// Finds `h = x^i z^k` with `h^{-1} g h = g2`, where `(i, k)` solves
/// `k a - i c = B - b (mod p)` with the least `i`, then least `k`.
pub fn solve_csp(g: &NpElement, g2: &NpElement) -> Option<NpElement> {
    if !is_conjugate(g, g2) {
        return None;
    }
    let (i, k) = modlin::solve_two_var(-g.c, g.a, g2.b - g.b)?;
    let h = g.params().element(i.value(), 0, k.value());
    assert_eq!(g.conjugate_by(&h), *g2, "N(p) conjugator failed verification");
    Some(h)
}

/// The translated class `g · C_{g2}`: members are
/// `x^{x_exp} y^{y_base + c_k k + c_i i} z^{z_exp}` for `i, k` in `Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NpClassCoset {
    pub x_exp: Residue,
    pub z_exp: Residue,
    pub y_base: Residue,
    pub c_k: Residue,
    pub c_i: Residue,
}

impl NpClassCoset {
    pub fn params(&self) -> NpParams {
        NpParams { p: self.x_exp.modulus() as u64 }
    }

    fn base(&self) -> NpElement {
        NpElement { a: self.x_exp, b: self.y_base, c: self.z_exp }
    }

    pub fn member(&self, i: Residue, k: Residue) -> NpElement {
        self.base().shift_center(self.c_k * k + self.c_i * i)
    }

    pub fn is_singleton(&self) -> bool {
        self.c_k.is_zero() && self.c_i.is_zero()
    }

    pub fn contains(&self, e: &NpElement) -> bool {
        e.params() == self.params()
            && e.a == self.x_exp
            && e.c == self.z_exp
            && (!self.is_singleton() || e.b == self.y_base)
    }
}

pub fn class_coset(g: &NpElement, g2: &NpElement) -> NpClassCoset {
    let prod = *g * *g2;
    NpClassCoset { x_exp: prod.a, z_exp: prod.c, y_base: prod.b, c_k: g2.a, c_i: -g2.c }
}

/// A common element of two class cosets with witnesses `[i1, k1, i2, k2]`;
/// the first parameter with a nonzero coefficient is solved for, the rest
/// are zero.
pub fn coset_intersect(c1: &NpClassCoset, c2: &NpClassCoset) -> Option<(NpElement, [Residue; 4])> {
    if c1.params() != c2.params() || c1.x_exp != c2.x_exp || c1.z_exp != c2.z_exp {
        return None;
    }
    let p = c1.params().p() as u128;
    let gap = c2.y_base - c1.y_base;
    let coeffs = [c1.c_i, c1.c_k, -c2.c_i, -c2.c_k];
    let mut params = [Residue::zero(p); 4];
    match coeffs.iter().position(|c| !c.is_zero()) {
        None if gap.is_zero() => {}
        None => return None,
        Some(idx) => params[idx] = modlin::solve_congruence(coeffs[idx], gap)?.base,
    }
    let [i1, k1, i2, k2] = params;
    let common = c1.member(i1, k1);
    debug_assert_eq!(common, c2.member(i2, k2));
    Some((common, params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(p: u64) -> NpParams {
        NpParams::new(p).unwrap()
    }

    /// Plain 3x3 product mod p, independent of `NpMatrix`'s shortcut.
    fn dense_mul(x: [[u128; 3]; 3], y: [[u128; 3]; 3], p: u128) -> [[u128; 3]; 3] {
        let mut out = [[0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                out[r][c] = (0..3).map(|k| x[r][k] * y[k][c]).sum::<u128>() % p;
            }
        }
        out
    }

    #[test]
    fn multiplication_examples() {
        let g = n(3);
        assert_eq!(g.element(0, 0, 1) * g.element(1, 0, 0), g.element(1, 2, 1));
        let v = g.element(2, 1, 1);
        assert_eq!(g.identity() * v, v);
        let g = n(29);
        assert_eq!(g.element(22, 5, 23) * g.element(0, 28, 0), g.element(22, 4, 23));
    }

    #[test]
    fn inverse_examples() {
        let g = n(29);
        assert_eq!(g.element(7, 4, 6).inv(), g.element(22, 12, 23));
        let g = n(3);
        assert_eq!(g.element(1, 0, 1).inv(), g.element(2, 2, 2));
        assert_eq!(g.element(1, 0, 1) * g.element(2, 2, 2), g.identity());
    }

    #[test]
    fn matrix_homomorphism_exhaustive() {
        for p in [3u64, 5] {
            let g = n(p);
            for u in g.elements() {
                assert_eq!(NpElement::from_matrix(&u.to_matrix()).unwrap(), u);
                for v in g.elements() {
                    let dense = dense_mul(u.to_matrix().rows(), v.to_matrix().rows(), p as u128);
                    assert_eq!((u * v).to_matrix().rows(), dense);
                    assert_eq!(u.to_matrix() * v.to_matrix(), (u * v).to_matrix());
                }
            }
        }
    }

    #[test]
    fn generator_matrices() {
        let g = n(7);
        let x = g.element(1, 0, 0).to_matrix().rows();
        assert_eq!(x, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(g.zeta().to_matrix().rows(), [[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(g.element(0, 0, 1).to_matrix().rows(), [[1, 0, 0], [0, 1, 1], [0, 0, 1]]);
        assert_eq!(g.identity().to_matrix(), NpMatrix::identity(7));
        assert!(NpMatrix::from_rows([[1, 0, 0], [1, 1, 0], [0, 0, 1]], 7).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let g = n(29);
        assert_eq!(g.element(22, 12, 23).conjugate_by(&g.element(0, 0, 26)), g.element(22, 4, 23));
        let g = n(3);
        assert_eq!(g.element(1, 0, 0).conjugate_by(&g.element(0, 0, 1)), g.element(1, 1, 0));
        for u in g.elements() {
            for h in g.elements() {
                assert_eq!(u.conjugate_by(&h), h.inv() * u * h);
                let h_shifted = h.shift_center(Residue::one(3));
                assert_eq!(u.conjugate_by(&h), u.conjugate_by(&h_shifted));
            }
        }
    }

    #[test]
    fn conjugacy_and_csp_examples() {
        let g = n(3);
        assert!(!is_conjugate(&g.element(0, 1, 0), &g.element(0, 2, 0)));
        assert_eq!(solve_csp(&g.element(0, 1, 0), &g.element(0, 2, 0)), None);
        let g = n(29);
        let (u, v) = (g.element(22, 12, 23), g.element(22, 4, 23));
        assert!(is_conjugate(&u, &v));
        assert_eq!(solve_csp(&u, &v), Some(g.element(0, 0, 26)));
        assert_eq!(solve_csp(&u, &u), Some(g.identity()));
    }

    #[test]
    fn class_coset_p29() {
        let g = n(29);
        let c = class_coset(&g.element(22, 5, 23), &g.element(7, 4, 6));
        assert!(c.x_exp.is_zero() && c.z_exp.is_zero());
        // 5 - 23*7 + 4
        assert_eq!(c.y_base, Residue::from_signed(5 - 23 * 7 + 4, 29));
        assert_eq!(c.c_k.value(), 7);
        assert_eq!(c.c_i, Residue::from_signed(-6, 29));
        let central = class_coset(&g.identity(), &g.zeta());
        assert!(central.is_singleton());
        assert_eq!(central.member(Residue::new(3, 29), Residue::new(4, 29)), g.zeta());
    }

    #[test]
    fn coset_intersect_with_center() {
        let g = n(29);
        let c = class_coset(&g.element(22, 5, 23), &g.element(7, 4, 6));
        let zeta = class_coset(&g.identity(), &g.zeta());
        let (common, params) = coset_intersect(&c, &zeta).unwrap();
        assert_eq!(common, g.zeta());
        assert!(c.contains(&common) && zeta.contains(&common));
        assert!(params[2].is_zero() && params[3].is_zero());
        let (same, params) = coset_intersect(&c, &c).unwrap();
        assert!(c.contains(&same));
        assert!(params.iter().skip(1).all(|r| r.is_zero()));
        let off = class_coset(&g.element(1, 0, 0), &g.zeta());
        assert!(coset_intersect(&c, &off).is_none());
    }
}
