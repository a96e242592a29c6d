//! The extraspecial group `M(p) = C_{p^2} ⋊ C_p`.
//!
//! Presentation: `x^{p^2} = y^p = 1`, `y x y^{-1} = x^{1+p}`. Every element
//! has a unique normal form `x^a y^b` with `0 <= a < p^2`, `0 <= b < p`, and
//! moving `y^b` past `x^c` gives `y^b x^c = x^{c(1+bp)} y^b`.
//!
//! The center is `<x^p>`. Conjugating `x^a y^b` by `x^i y^j` only moves the
//! exponent of `x` by a multiple of `p`:
//!
//! ```text
//! (x^i y^j)^{-1} (x^a y^b) (x^i y^j) = x^{a + p(b i - a j)} y^b
//! ```
//!
//! so the CSP reduces to one two-variable congruence modulo `p`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::modlin::{self, Residue};

/// Largest prime accepted for `M(p)`, `N(p)` and their central products.
pub const MAX_PRIME: u64 = 1 << 63;

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    if p < 3 || !modlin::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MpParams {
    p: u64,
    p_squared: u128,
}

impl MpParams {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(MpParams { p, p_squared: p as u128 * p as u128 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p_squared(&self) -> u128 {
        self.p_squared
    }

    pub fn order(&self) -> u128 {
        self.p_squared * self.p as u128
    }

    pub fn identity(&self) -> MpElement {
        self.element(0, 0)
    }

    /// `x^a y^b`, exponents reduced.
    pub fn element(&self, a: u128, b: u128) -> MpElement {
        MpElement { a: Residue::new(a, self.p_squared), b: Residue::new(b, self.p as u128) }
    }

    pub fn element_signed(&self, a: i128, b: i128) -> MpElement {
        MpElement {
            a: Residue::from_signed(a, self.p_squared),
            b: Residue::from_signed(b, self.p as u128),
        }
    }

    /// Generator of the center, `x^p`.
    pub fn zeta(&self) -> MpElement {
        self.element(self.p as u128, 0)
    }

    /// All elements in lexicographic order of `(a, b)`.
    pub fn elements(&self) -> impl Iterator<Item = MpElement> + '_ {
        let p = self.p as u128;
        (0..self.p_squared).flat_map(move |a| (0..p).map(move |b| self.element(a, b)))
    }
}

/// `x^a y^b` in normal form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MpElement {
    a: Residue,
    b: Residue,
}

impl MpElement {
    /// Builds an element from residues, checking that `a` lives modulo `p^2`
    /// and `b` modulo the prime `p`.
    pub fn from_residues(a: Residue, b: Residue) -> Result<Self> {
        let p = u64::try_from(b.modulus()).map_err(|_| Error::BadParams("p exceeds 64 bits".into()))?;
        let params = MpParams::new(p)?;
        if a.modulus() != params.p_squared {
            return Err(Error::ModulusMismatch(a.modulus(), params.p_squared));
        }
        Ok(MpElement { a, b })
    }

    pub fn params(&self) -> MpParams {
        MpParams { p: self.b.modulus() as u64, p_squared: self.a.modulus() }
    }

    /// Exponent of `x`, modulo `p^2`.
    pub fn a(&self) -> Residue {
        self.a
    }

    /// Exponent of `y`, modulo `p`.
    pub fn b(&self) -> Residue {
        self.b
    }

    fn p(&self) -> u128 {
        self.b.modulus()
    }

    /// `x`-exponent reduced modulo `p`.
    pub fn a_mod_p(&self) -> Residue {
        self.a.reduce_to(self.p())
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Central elements are exactly the powers of `x^p`.
    pub fn is_central(&self) -> bool {
        self.a_mod_p().is_zero() && self.b.is_zero()
    }

    pub fn checked_mul(&self, rhs: &MpElement) -> Result<MpElement> {
        if self.params() != rhs.params() {
            return Err(Error::ParamMismatch);
        }
        // x^a y^b x^c y^d = x^{a + c(1 + bp)} y^{b + d}
        let twist = Residue::one(self.a.modulus()) + self.b.reduce_to(self.a.modulus()).scale(self.p());
        Ok(MpElement { a: self.a + rhs.a * twist, b: self.b + rhs.b })
    }

    /// `(x^a y^b)^{-1} = x^{-a(1 - bp)} y^{-b}`.
    pub fn inv(&self) -> MpElement {
        let n = self.a.modulus();
        let twist = Residue::one(n) - self.b.reduce_to(n).scale(self.p());
        MpElement { a: -(self.a * twist), b: -self.b }
    }

    /// `h^{-1} self h`.
    pub fn conjugate_by(&self, h: &MpElement) -> MpElement {
        assert_eq!(self.params(), h.params(), "{}", Error::ParamMismatch);
        let shift = self.b * h.a_mod_p() - self.a_mod_p() * h.b;
        self.shift_center(shift)
    }

    /// Multiplies by `(x^p)^k`.
    pub fn shift_center(&self, k: Residue) -> MpElement {
        let n = self.a.modulus();
        MpElement { a: self.a + k.reduce_to(n).scale(self.p()), b: self.b }
    }

    /// Exponent of `x^p` for a central element.
    pub fn central_exponent(&self) -> Option<Residue> {
        self.is_central().then(|| Residue::new(self.a.value() / self.p(), self.p()))
    }

    pub fn pow(&self, mut e: u128) -> MpElement {
        let mut acc = self.params().identity();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Mul for MpElement {
    type Output = MpElement;

    /// Panics if the operands come from different groups.
    fn mul(self, rhs: MpElement) -> MpElement {
        self.checked_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Debug for MpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}*y^{} in M({})", self.a, self.b, self.p())
    }
}

impl fmt::Display for MpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}*y^{}", self.a, self.b)
    }
}

/// Right-hand side `(A - a)/p` of the conjugacy congruence, if `A = a mod p`.
fn central_gap(g: &MpElement, g2: &MpElement) -> Option<Residue> {
    let diff = g2.a - g.a;
    let p = g.p();
    diff.value().is_multiple_of(p).then(|| Residue::new(diff.value() / p, p))
}

/// Conjugacy decision in `M(p)`.
///
/// Non-central `g, g2` are conjugate iff `a = A (mod p)` and `b = B`.
/// Central elements have singleton classes, so there the full exponents
/// must match.
pub fn is_conjugate(g: &MpElement, g2: &MpElement) -> bool {
    if g.params() != g2.params() || g.b != g2.b {
        return false;
    }
    match central_gap(g, g2) {
        None => false,
        Some(gap) => !g.is_central() || gap.is_zero(),
    }
}

/// Finds `h = x^i y^j` with `h^{-1} g h = g2`.
///
/// `(i, j)` solves `b i - a j = (A - a)/p (mod p)`; among all solutions the
/// one with the least `j`, then least `i`, is returned. The conjugator is
/// checked before it is handed back.
pub fn solve_csp(g: &MpElement, g2: &MpElement) -> Option<MpElement> {
    if !is_conjugate(g, g2) {
        return None;
    }
    let gap = central_gap(g, g2)?;
    let (j, i) = modlin::solve_two_var(-g.a_mod_p(), g.b, gap)?;
    let h = g.params().element(i.value(), j.value());
    assert_eq!(g.conjugate_by(&h), *g2, "M(p) conjugator failed verification");
    Some(h)
}

/// The translated class `g · C_{g2}` as a parametrized set:
/// members are `x^{x_base + p(c_j j + c_i i)} y^{y_exp}` for `i, j` in `Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MpClassCoset {
    pub y_exp: Residue,
    pub x_base: Residue,
    pub c_j: Residue,
    pub c_i: Residue,
}

impl MpClassCoset {
    pub fn params(&self) -> MpParams {
        MpParams { p: self.y_exp.modulus() as u64, p_squared: self.x_base.modulus() }
    }

    pub fn member(&self, i: Residue, j: Residue) -> MpElement {
        let central = self.c_j * j + self.c_i * i;
        MpElement { a: self.x_base, b: self.y_exp }.shift_center(central)
    }

    /// True when the translated class has a single element.
    pub fn is_singleton(&self) -> bool {
        self.c_j.is_zero() && self.c_i.is_zero()
    }

    pub fn contains(&self, e: &MpElement) -> bool {
        if e.params() != self.params() || e.b != self.y_exp {
            return false;
        }
        let base = MpElement { a: self.x_base, b: self.y_exp };
        match central_gap(&base, e) {
            None => false,
            Some(gap) => !self.is_singleton() || gap.is_zero(),
        }
    }
}

pub fn class_coset(g: &MpElement, g2: &MpElement) -> MpClassCoset {
    let prod = *g * *g2;
    MpClassCoset { y_exp: prod.b, x_base: prod.a, c_j: -g2.a_mod_p(), c_i: g2.b }
}

/// A common element of two class cosets, with witnessing parameters
/// `[i1, j1, i2, j2]`.
///
/// Equating the two parametrizations leaves one congruence modulo `p`. The
/// first parameter (in the order above) with a nonzero coefficient is solved
/// for and the others are set to zero.
pub fn coset_intersect(c1: &MpClassCoset, c2: &MpClassCoset) -> Option<(MpElement, [Residue; 4])> {
    if c1.params() != c2.params() || c1.y_exp != c2.y_exp {
        return None;
    }
    let p = c1.params().p() as u128;
    let base1 = MpElement { a: c1.x_base, b: c1.y_exp };
    let base2 = MpElement { a: c2.x_base, b: c2.y_exp };
    let gap = central_gap(&base1, &base2)?;
    let coeffs = [c1.c_i, c1.c_j, -c2.c_i, -c2.c_j];
    let mut params = [Residue::zero(p); 4];
    match coeffs.iter().position(|c| !c.is_zero()) {
        None if gap.is_zero() => {}
        None => return None,
        Some(k) => params[k] = modlin::solve_congruence(coeffs[k], gap)?.base,
    }
    let [i1, j1, i2, j2] = params;
    let common = c1.member(i1, j1);
    debug_assert_eq!(common, c2.member(i2, j2));
    Some((common, params))
}
