//! Exact modular arithmetic and linear congruences.
//!
//! Residues are stored as `u128` with moduli up to `2^127`, which covers
//! arithmetic modulo `p^2` for every prime `p < 2^63`. Sums of two reduced
//! values never overflow; products fall back to a double-and-add routine
//! once either operand exceeds 64 bits.
//!
//! Every call to [`solve_congruence`] bumps a thread-local counter so callers
//! can measure how many congruences an algorithm needed (see
//! [`count_congruence_solves`]).

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const MAX_MODULUS: u128 = 1 << 127;

thread_local! {
    static SOLVES: Cell<u64> = const { Cell::new(0) };
}

/// Number of [`solve_congruence`] calls made on this thread so far.
pub fn congruence_solve_count() -> u64 {
    SOLVES.with(Cell::get)
}

/// Runs `f` and reports how many linear congruences it solved.
pub fn count_congruence_solves<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let before = congruence_solve_count();
    let out = f();
    (out, congruence_solve_count() - before)
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    primal_check::miller_rabin(n)
}

pub fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    debug_assert!(a < n && b < n && n <= MAX_MODULUS);
    let s = a + b;
    if s >= n { s - n } else { s }
}

pub fn sub_mod(a: u128, b: u128, n: u128) -> u128 {
    debug_assert!(a < n && b < n);
    if a >= b { a - b } else { n - (b - a) }
}

pub fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    debug_assert!(a < n && b < n && n <= MAX_MODULUS);
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return (a * b) % n;
    }
    let (mut acc, mut base, mut e) = (0u128, a, b);
    while e > 0 {
        if e & 1 == 1 {
            acc = add_mod(acc, base, n);
        }
        base = add_mod(base, base, n);
        e >>= 1;
    }
    acc
}

/// Reduces a signed integer into `[0, n)`.
pub fn reduce_signed(v: i128, n: u128) -> u128 {
    let r = v.unsigned_abs() % n;
    if v < 0 && r != 0 { n - r } else { r }
}

/// An integer modulo `modulus`, always held in `[0, modulus)`.
///
/// Arithmetic operators panic when the operands carry different moduli;
/// the `checked_*` methods return [`Error::ModulusMismatch`] instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u128,
    modulus: u128,
}

impl Residue {
    pub fn try_new(value: u128, modulus: u128) -> Result<Self> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(Error::BadModulus(modulus));
        }
        Ok(Residue { value: value % modulus, modulus })
    }

    /// Panics if `modulus` is zero or larger than `2^127`.
    pub fn new(value: u128, modulus: u128) -> Self {
        Self::try_new(value, modulus).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn from_signed(value: i128, modulus: u128) -> Self {
        let zero = Self::new(0, modulus);
        Residue { value: reduce_signed(value, modulus), ..zero }
    }

    pub fn zero(modulus: u128) -> Self {
        Self::new(0, modulus)
    }

    pub fn one(modulus: u128) -> Self {
        Self::new(1, modulus)
    }

    pub fn value(self) -> u128 {
        self.value
    }

    pub fn modulus(self) -> u128 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Same integer, reduced into a different modulus.
    pub fn reduce_to(self, modulus: u128) -> Self {
        Self::new(self.value, modulus)
    }

    fn same_modulus(self, rhs: Self) -> Result<u128> {
        if self.modulus == rhs.modulus {
            Ok(self.modulus)
        } else {
            Err(Error::ModulusMismatch(self.modulus, rhs.modulus))
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let n = self.same_modulus(rhs)?;
        Ok(Residue { value: add_mod(self.value, rhs.value, n), modulus: n })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        let n = self.same_modulus(rhs)?;
        Ok(Residue { value: sub_mod(self.value, rhs.value, n), modulus: n })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let n = self.same_modulus(rhs)?;
        Ok(Residue { value: mul_mod(self.value, rhs.value, n), modulus: n })
    }

    /// Multiplies by a plain integer, reducing it first.
    pub fn scale(self, k: u128) -> Self {
        let n = self.modulus;
        Residue { value: mul_mod(self.value, k % n, n), modulus: n }
    }

    pub fn pow(self, mut e: u128) -> Self {
        let n = self.modulus;
        let mut acc = Residue::one(n);
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, if `gcd(value, modulus) = 1`.
    pub fn inverse(self) -> Option<Self> {
        if self.modulus == 1 {
            return Some(self);
        }
        let (g, u, _) = ext_gcd(BigInt::from(self.value), BigInt::from(self.modulus));
        if !g.is_one() {
            return None;
        }
        let u = u.mod_floor(&BigInt::from(self.modulus));
        let v = u128::try_from(u).expect("reduced Bezout coefficient fits u128");
        Some(Residue { value: v, modulus: self.modulus })
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! residue_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Residue {
            type Output = Residue;
            fn $method(self, rhs: Residue) -> Residue {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

residue_binop!(Add, add, checked_add);
residue_binop!(Sub, sub, checked_sub);
residue_binop!(Mul, mul, checked_mul);

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue { value: sub_mod(0, self.value, self.modulus), modulus: self.modulus }
    }
}

/// Extended Euclid: `(g, u, v)` with `g = gcd(|a|, |b|)` and `a*u + b*v = g`.
///
/// When `b != 0` the coefficient `u` is normalized into `[0, |b|/g)`, which
/// fixes the answer uniquely. For `b = 0` the result is `(|a|, sign(a), 0)`.
pub fn ext_gcd(a: impl Into<BigInt>, b: impl Into<BigInt>) -> (BigInt, BigInt, BigInt) {
    let (a, b) = (a.into(), b.into());
    if b.is_zero() {
        return (a.abs(), a.signum(), BigInt::zero());
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    let g = r0.abs();
    let period = b.abs() / &g;
    let u = (s0 * r0.signum()).mod_floor(&period);
    let v = (&g - &a * &u) / &b;
    (g, u, v)
}

/// The solution set `{base + k*period : 0 <= k < count}` of `a*x = b (mod n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceSolution {
    pub base: Residue,
    pub period: u128,
    pub count: u128,
}

impl CongruenceSolution {
    pub fn modulus(&self) -> u128 {
        self.base.modulus()
    }

    /// All solutions in `[0, n)`, ascending.
    pub fn iter(&self) -> impl Iterator<Item = Residue> + '_ {
        let n = self.modulus();
        (0..self.count).map(move |k| Residue::new(self.base.value() + k * self.period, n))
    }

    pub fn contains(&self, x: Residue) -> bool {
        x.modulus() == self.modulus() && x.value() % self.period == self.base.value()
    }
}

/// Solves `a*x = b (mod n)`, where `n` is the shared modulus of `a` and `b`.
///
/// A solution exists iff `gcd(a, n)` divides `b`; `base` is then the least
/// nonnegative one and `period = n / gcd(a, n)`.
///
/// Panics if `a` and `b` carry different moduli.
pub fn solve_congruence(a: Residue, b: Residue) -> Option<CongruenceSolution> {
    let n = a.same_modulus(b).unwrap_or_else(|e| panic!("{e}"));
    SOLVES.with(|c| c.set(c.get() + 1));
    let g = a.value().gcd(&n);
    if !b.value().is_multiple_of(g) {
        return None;
    }
    let period = n / g;
    let a_red = Residue::new(a.value() / g, period);
    let b_red = Residue::new(b.value() / g, period);
    let inv = a_red.inverse().expect("a/g is a unit modulo n/g");
    let base = (b_red * inv).value();
    Some(CongruenceSolution { base: Residue::new(base, n), period, count: g })
}

/// Solves `a*x + b*y = c (mod n)` and returns the lexicographically least
/// solution `(x, y)` over `[0, n)^2`.
///
/// Solvable iff `gcd(a, b, n)` divides `c`. When `b` is a unit after
/// dividing out that gcd the answer has `x = 0`; otherwise `x` is the least
/// value for which the remaining congruence in `y` is solvable.
///
/// Panics on mixed moduli.
pub fn solve_two_var(a: Residue, b: Residue, c: Residue) -> Option<(Residue, Residue)> {
    let n = a.same_modulus(b).and_then(|_| a.same_modulus(c)).unwrap_or_else(|e| panic!("{e}"));
    let g = a.value().gcd(&b.value()).gcd(&n);
    if !c.value().is_multiple_of(g) {
        return None;
    }
    let n_red = n / g;
    let a_red = Residue::new(a.value() / g, n_red);
    let b_red = Residue::new(b.value() / g, n_red);
    let c_red = Residue::new(c.value() / g, n_red);

    // x must satisfy a*x = c modulo gcd(b, n) for y to exist.
    let d = b_red.value().gcd(&n_red);
    let x = if d == 1 {
        0
    } else {
        solve_congruence(a_red.reduce_to(d), c_red.reduce_to(d))
            .expect("gcd(a, d) = 1 after reduction")
            .base
            .value()
    };
    let rest = c_red - a_red.scale(x);
    let y = solve_congruence(b_red, rest).expect("x chosen so y is solvable").base.value();
    Some((Residue::new(x, n), Residue::new(y, n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i128) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn ext_gcd_examples() {
        assert_eq!(ext_gcd(12, 8), (big(4), big(1), big(-1)));
        assert_eq!(ext_gcd(7, 29), (big(1), big(25), big(-6)));
        assert_eq!(ext_gcd(-9, 0), (big(9), big(-1), big(0)));
        assert_eq!(ext_gcd(9, 0), (big(9), big(1), big(0)));
        assert_eq!(ext_gcd(0, 0), (big(0), big(0), big(0)));
        let (g, u, v) = ext_gcd(0, -5);
        assert_eq!(g, big(5));
        assert_eq!(big(-5) * v + big(0) * u, g);
    }

    #[test]
    fn congruence_examples() {
        let s = solve_congruence(Residue::new(2, 6), Residue::new(4, 6)).unwrap();
        assert_eq!((s.base.value(), s.period, s.count), (2, 3, 2));
        let s = solve_congruence(Residue::new(1, 5), Residue::new(0, 5)).unwrap();
        assert_eq!((s.base.value(), s.period, s.count), (0, 5, 1));
        assert!(solve_congruence(Residue::new(2, 4), Residue::new(3, 4)).is_none());
    }

    #[test]
    fn two_var_examples() {
        let n = 29;
        let (x, y) = solve_two_var(
            Residue::new(14, n),
            Residue::from_signed(-2, n),
            Residue::new(1, n),
        )
        .unwrap();
        assert_eq!((x.value(), y.value()), (0, 14));
        let z = Residue::zero(7);
        assert_eq!(solve_two_var(z, z, z), Some((z, z)));
        assert_eq!(solve_two_var(z, z, Residue::new(3, 7)), None);
    }

    #[test]
    fn negative_inputs_normalize() {
        assert_eq!(Residue::from_signed(-1, 29).value(), 28);
        assert_eq!(Residue::from_signed(-58, 29).value(), 0);
        assert_eq!(Residue::from_signed(i128::MIN, 7).value(), reduce_signed(i128::MIN, 7));
        assert_eq!((-Residue::new(0, 5)).value(), 0);
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = Residue::new(1, 5);
        let b = Residue::new(1, 7);
        assert_eq!(a.checked_add(b), Err(Error::ModulusMismatch(5, 7)));
        assert!(std::panic::catch_unwind(|| a * b).is_err());
        assert_eq!(Residue::try_new(1, 0), Err(Error::BadModulus(0)));
        assert!(Residue::try_new(0, MAX_MODULUS).is_ok());
        assert!(Residue::try_new(0, MAX_MODULUS + 1).is_err());
    }

    #[test]
    fn wide_multiplication_matches_bigint() {
        let n = MAX_MODULUS - 159;
        let a = n - 3;
        let b = (1u128 << 100) + 12345;
        let want = (BigInt::from(a) * BigInt::from(b)) % BigInt::from(n);
        assert_eq!(BigInt::from(mul_mod(a, b, n)), want);
    }

    #[test]
    fn inverse_and_pow() {
        let p = (1u128 << 61) - 1;
        let x = Residue::new(123_456_789, p);
        let inv = x.inverse().unwrap();
        assert_eq!((x * inv).value(), 1);
        // Fermat
        assert_eq!(x.pow(p - 1).value(), 1);
        assert!(Residue::new(6, 9).inverse().is_none());
    }

    #[test]
    fn counter_tracks_solves() {
        let (_, n) = count_congruence_solves(|| {
            solve_congruence(Residue::new(3, 7), Residue::new(1, 7));
            solve_congruence(Residue::new(2, 4), Residue::new(3, 4));
        });
        assert_eq!(n, 2);
    }

    #[test]
    fn primality() {
        assert!(is_prime(29));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(1009 * 1013));
        assert!(!is_prime(1));
    }
}
