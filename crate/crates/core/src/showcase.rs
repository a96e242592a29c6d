//! Dihedral groups `D_n` and generalized quaternion groups `Q_{2^n}`.
//!
//! Both are written `x^i y^j` with `j` in `{0, 1}` and `y x = x^{-1} y`.
//! In `D_n`, `x^n = y^2 = 1`. In `Q_{2^n}`, `x^N = 1` and `y^2 = x^{N/2}`
//! with `N = 2^{n-1}`, so a product landing on `y^2` folds into `x`.
//!
//! Translated classes `h C_u` are parametrized by a conjugator `x^i y^j`,
//! and their members have `x`-exponent linear in `i` for each fixed `j`.
//! Intersecting two of them therefore costs one two-variable congruence per
//! choice of `(j1, j2)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::modlin::{self, Residue};

fn sign(bit: u8, r: Residue) -> Residue {
    if bit & 1 == 1 { -r } else { r }
}

fn check_bit(j: u8) -> Result<u8> {
    if j > 1 {
        return Err(Error::ExponentOutOfRange { value: j as u128, modulus: 2 });
    }
    Ok(j)
}

/// `(x^i y^j)(x^k y^l)`, with `y^2 = x^fold`.
fn twisted_mul(i: Residue, j: u8, k: Residue, l: u8, fold: Residue) -> (Residue, u8) {
    let x = i + sign(j, k);
    if j + l == 2 { (x + fold, 0) } else { (x, j | l) }
}

/// Witnessing parameters for a common element of `h C_u` and `k C_v`:
/// the element equals `h·c(u)` and `k·c'(v)` for the conjugations selected by
/// `(i1, j1)` and `(i2, j2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub i1: Residue,
    pub j1: u8,
    pub i2: Residue,
    pub j2: u8,
}

/// `x`-exponent of a member of `h C_u` as `alpha(j)·i + beta(j)`, together
/// with the member's `y`-exponent.
struct LinearClass {
    alpha: [Residue; 2],
    beta: [Residue; 2],
    y: u8,
}

impl LinearClass {
    fn eval(&self, i: Residue, j: u8) -> Residue {
        self.alpha[j as usize] * i + self.beta[j as usize]
    }
}

fn linear_intersect(c1: &LinearClass, c2: &LinearClass) -> Option<(Residue, Witness)> {
    if c1.y != c2.y {
        return None;
    }
    for (j1, j2) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let a = c1.alpha[j1 as usize];
        let b = -c2.alpha[j2 as usize];
        let c = c2.beta[j2 as usize] - c1.beta[j1 as usize];
        if let Some((i1, i2)) = modlin::solve_two_var(a, b, c) {
            let x = c1.eval(i1, j1);
            debug_assert_eq!(x, c2.eval(i2, j2));
            return Some((x, Witness { i1, j1, i2, j2 }));
        }
    }
    None
}

/// The dihedral group of order `2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dihedral {
    n: u128,
}

impl Dihedral {
    pub fn new(n: u128) -> Result<Self> {
        if n == 0 || n > modlin::MAX_MODULUS {
            return Err(Error::BadParams(format!("dihedral n must lie in 1..=2^127, got {n}")));
        }
        Ok(Dihedral { n })
    }

    pub fn n(&self) -> u128 {
        self.n
    }

    pub fn order(&self) -> Option<u128> {
        self.n.checked_mul(2)
    }

    pub fn identity(&self) -> DihedralElement {
        DihedralElement { i: Residue::zero(self.n), j: 0 }
    }

    pub fn element(&self, i: u128, j: u8) -> Result<DihedralElement> {
        Ok(DihedralElement { i: Residue::new(i, self.n), j: check_bit(j)? })
    }

    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> + '_ {
        (0..self.n).flat_map(move |i| (0..2).map(move |j| DihedralElement { i: Residue::new(i, self.n), j }))
    }
}

/// `x^i y^j` in `D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    i: Residue,
    j: u8,
}

impl DihedralElement {
    pub fn group(&self) -> Dihedral {
        Dihedral { n: self.i.modulus() }
    }

    pub fn i(&self) -> Residue {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    pub fn checked_mul(&self, rhs: &DihedralElement) -> Result<DihedralElement> {
        if self.group() != rhs.group() {
            return Err(Error::ParamMismatch);
        }
        let (i, j) = twisted_mul(self.i, self.j, rhs.i, rhs.j, Residue::zero(self.i.modulus()));
        Ok(DihedralElement { i, j })
    }

    pub fn inv(&self) -> DihedralElement {
        if self.j == 1 { *self } else { DihedralElement { i: -self.i, j: 0 } }
    }

    /// `h^{-1} self h`.
    pub fn conjugate_by(&self, h: &DihedralElement) -> DihedralElement {
        h.inv() * *self * *h
    }

    fn class_form(&self, u: &DihedralElement) -> LinearClass {
        // h·g u g^{-1} with g = x^i y^j: x^{k + (-1)^l [i + A(-1)^j - i(-1)^B]} y^{l+B}
        let one = Residue::one(self.i.modulus());
        let alpha = sign(self.j, one - sign(u.j, one));
        let beta = |j: u8| self.i + sign(self.j, sign(j, u.i));
        LinearClass { alpha: [alpha, alpha], beta: [beta(0), beta(1)], y: self.j ^ u.j }
    }

    /// The member of `self · C_u` selected by the conjugator `x^i y^j`.
    pub fn class_member(&self, u: &DihedralElement, i: Residue, j: u8) -> DihedralElement {
        let c = self.class_form(u);
        DihedralElement { i: c.eval(i, j & 1), j: c.y }
    }
}

impl std::ops::Mul for DihedralElement {
    type Output = DihedralElement;

    fn mul(self, rhs: DihedralElement) -> DihedralElement {
        self.checked_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}*y^{}", self.i, self.j)
    }
}

/// A common element of `h C_u` and `k C_v` in `D_n`.
pub fn dihedral_coset_intersect(
    h: &DihedralElement,
    u: &DihedralElement,
    k: &DihedralElement,
    v: &DihedralElement,
) -> Result<Option<(DihedralElement, Witness)>> {
    let g = h.group();
    if [u, k, v].iter().any(|e| e.group() != g) {
        return Err(Error::ParamMismatch);
    }
    let c1 = h.class_form(u);
    let c2 = k.class_form(v);
    Ok(linear_intersect(&c1, &c2).map(|(i, w)| (DihedralElement { i, j: c1.y }, w)))
}

/// The generalized quaternion group of order `2^n`, `n >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    n: u32,
}

impl Quaternion {
    pub fn new(n: u32) -> Result<Self> {
        if !(3..=128).contains(&n) {
            return Err(Error::BadParams(format!("quaternion n must lie in 3..=128, got {n}")));
        }
        Ok(Quaternion { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `N = 2^{n-1}`, the order of `x`.
    pub fn big_n(&self) -> u128 {
        1 << (self.n - 1)
    }

    pub fn order(&self) -> Option<u128> {
        self.big_n().checked_mul(2)
    }

    fn fold(&self) -> Residue {
        Residue::new(self.big_n() / 2, self.big_n())
    }

    pub fn identity(&self) -> QuaternionElement {
        QuaternionElement { i: Residue::zero(self.big_n()), j: 0 }
    }

    pub fn element(&self, i: u128, j: u8) -> Result<QuaternionElement> {
        Ok(QuaternionElement { i: Residue::new(i, self.big_n()), j: check_bit(j)? })
    }

    pub fn elements(&self) -> impl Iterator<Item = QuaternionElement> + '_ {
        let big_n = self.big_n();
        (0..big_n).flat_map(move |i| (0..2).map(move |j| QuaternionElement { i: Residue::new(i, big_n), j }))
    }
}

/// `x^i y^j` in `Q_{2^n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuaternionElement {
    i: Residue,
    j: u8,
}

impl QuaternionElement {
    pub fn group(&self) -> Quaternion {
        Quaternion { n: self.i.modulus().trailing_zeros() + 1 }
    }

    pub fn i(&self) -> Residue {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    pub fn checked_mul(&self, rhs: &QuaternionElement) -> Result<QuaternionElement> {
        let q = self.group();
        if q != rhs.group() {
            return Err(Error::ParamMismatch);
        }
        let (i, j) = twisted_mul(self.i, self.j, rhs.i, rhs.j, q.fold());
        Ok(QuaternionElement { i, j })
    }

    pub fn inv(&self) -> QuaternionElement {
        // (x^i y)^{-1} = x^{i + N/2} y
        if self.j == 1 {
            QuaternionElement { i: self.i + self.group().fold(), j: 1 }
        } else {
            QuaternionElement { i: -self.i, j: 0 }
        }
    }

    pub fn conjugate_by(&self, h: &QuaternionElement) -> QuaternionElement {
        h.inv() * *self * *h
    }

    fn class_form(&self, u: &QuaternionElement) -> LinearClass {
        // h·g^{-1} u g with g = x^i y^j: x^{k + (-1)^{j+l} [A - i + i(-1)^B]} y^{l+B},
        // plus N/2 when l = B = 1.
        let one = Residue::one(self.i.modulus());
        let fold = if self.j + u.j == 2 { self.group().fold() } else { Residue::zero(self.i.modulus()) };
        let alpha = |j: u8| sign(j ^ self.j, sign(u.j, one) - one);
        let beta = |j: u8| self.i + fold + sign(j ^ self.j, u.i);
        LinearClass { alpha: [alpha(0), alpha(1)], beta: [beta(0), beta(1)], y: self.j ^ u.j }
    }

    /// The member of `self · C_u` selected by the conjugator `x^i y^j`.
    pub fn class_member(&self, u: &QuaternionElement, i: Residue, j: u8) -> QuaternionElement {
        let c = self.class_form(u);
        QuaternionElement { i: c.eval(i, j & 1), j: c.y }
    }
}

impl std::ops::Mul for QuaternionElement {
    type Output = QuaternionElement;

    fn mul(self, rhs: QuaternionElement) -> QuaternionElement {
        self.checked_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for QuaternionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}*y^{}", self.i, self.j)
    }
}

/// A common element of `h C_u` and `k C_v` in `Q_{2^n}`.
pub fn quaternion_coset_intersect(
    h: &QuaternionElement,
    u: &QuaternionElement,
    k: &QuaternionElement,
    v: &QuaternionElement,
) -> Result<Option<(QuaternionElement, Witness)>> {
    let g = h.group();
    if [u, k, v].iter().any(|e| e.group() != g) {
        return Err(Error::ParamMismatch);
    }
    let c1 = h.class_form(u);
    let c2 = k.class_form(v);
    Ok(linear_intersect(&c1, &c2).map(|(i, w)| (QuaternionElement { i, j: c1.y }, w)))
}
