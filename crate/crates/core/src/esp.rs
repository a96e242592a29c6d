//! Extraspecial groups as central products of `r` copies of `M(p)` and `s`
//! copies of `N(p)`.
//!
//! All factor centers are identified with one cyclic group `<ζ>`, where
//! `ζ = x^p` inside every `M(p)` factor and `ζ = y` inside every `N(p)`
//! factor. An element is stored canonically as
//!
//! ```text
//! Π (x_i^{a_i} y_i^{b_i}) · Π (x_j^{A_j} z_j^{C_j}) · ζ^{zc}
//! ```
//!
//! with every exponent in `[0, p)`, so the group has order `p^{1+2(r+s)}`.
//! Factors are indexed `0..r` for the `M(p)` copies and `r..r+s` for the
//! `N(p)` copies.
//!
//! Conjugation never changes the factor coordinates; it only shifts `zc` by
//! a linear form in the conjugator's coordinates. [`solve_csp`] walks the
//! factors left to right, splitting the instance as `H · K` with `H` the
//! current factor and `K` everything after it (plus the center), finds a
//! central `t` in `h'^{-1} C_{h̃} ∩ k' C_{k̃^{-1}}`, solves the local problem
//! `h^{-1} h̃ h = h' t` in `H` and carries `k' t^{-1}` forward.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::modlin::{self, Residue};
use crate::mp::{self, MpElement, MpParams, check_odd_prime};
use crate::np::{self, NpElement, NpParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EspParams {
    p: u64,
    r: usize,
    s: usize,
}

impl EspParams {
    pub fn new(p: u64, r: usize, s: usize) -> Result<Self> {
        check_odd_prime(p)?;
        if r + s == 0 {
            return Err(Error::BadParams("need at least one factor (r + s >= 1)".into()));
        }
        Ok(EspParams { p, r, s })
    }

    /// The factors from index `from` on, together with the center. With
    /// `from == r + s` this is just `<ζ>`.
    pub(crate) fn tail(&self, from: usize) -> EspParams {
        debug_assert!(from <= self.factor_count());
        let r = self.r.saturating_sub(from);
        let s = self.s - from.saturating_sub(self.r);
        EspParams { p: self.p, r, s }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn factor_count(&self) -> usize {
        self.r + self.s
    }

    pub fn kind_of(&self, factor: usize) -> FactorKind {
        if factor < self.r { FactorKind::M } else { FactorKind::N }
    }

    pub fn mp(&self) -> MpParams {
        MpParams::new(self.p).expect("validated prime")
    }

    pub fn np(&self) -> NpParams {
        NpParams::new(self.p).expect("validated prime")
    }

    fn modulus(&self) -> u128 {
        self.p as u128
    }

    /// `p^{1+2(r+s)}`, if it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        let exp = u32::try_from(1 + 2 * self.factor_count()).ok()?;
        self.modulus().checked_pow(exp)
    }

    pub fn identity(&self) -> EspElement {
        let z = Residue::zero(self.modulus());
        EspElement {
            params: *self,
            m: vec![MPart { x: z, y: z }; self.r],
            n: vec![NPart { x: z, z }; self.s],
            zc: z,
        }
    }

    /// `ζ^k`.
    pub fn zeta_pow(&self, k: u128) -> EspElement {
        let mut e = self.identity();
        e.zc = Residue::new(k, self.modulus());
        e
    }

    /// Builds a canonical element; exponents are reduced mod `p`.
    pub fn element(&self, m: &[(u128, u128)], n: &[(u128, u128)], zc: u128) -> Result<EspElement> {
        if m.len() != self.r || n.len() != self.s {
            return Err(Error::BadParams(format!(
                "expected {} M(p) and {} N(p) coordinates, got {} and {}",
                self.r,
                self.s,
                m.len(),
                n.len()
            )));
        }
        let q = self.modulus();
        Ok(EspElement {
            params: *self,
            m: m.iter().map(|&(x, y)| MPart { x: Residue::new(x, q), y: Residue::new(y, q) }).collect(),
            n: n.iter().map(|&(x, z)| NPart { x: Residue::new(x, q), z: Residue::new(z, q) }).collect(),
            zc: Residue::new(zc, q),
        })
    }

    /// Canonical form of a product of full factor words, one per factor.
    /// Multiples of `p` in `M(p)` exponents of `x` and every `N(p)`
    /// exponent of `y` are moved into `zc`.
    pub fn normalize(&self, raw: &[Factor]) -> Result<EspElement> {
        if raw.len() != self.factor_count() {
            return Err(Error::BadParams(format!("expected {} factors, got {}", self.factor_count(), raw.len())));
        }
        let mut out = self.identity();
        for (idx, f) in raw.iter().enumerate() {
            if f.p() != self.p || f.kind() != self.kind_of(idx) {
                return Err(Error::ParamMismatch);
            }
            out = out * self.embed(idx, f)?;
        }
        Ok(out)
    }

    /// The image of a full factor word in factor `idx`.
    pub fn embed(&self, idx: usize, f: &Factor) -> Result<EspElement> {
        if idx >= self.factor_count() || f.p() != self.p || f.kind() != self.kind_of(idx) {
            return Err(Error::ParamMismatch);
        }
        let q = self.modulus();
        let mut e = self.identity();
        match f {
            Factor::M(u) => {
                e.m[idx] = MPart { x: u.a_mod_p(), y: u.b() };
                e.zc = Residue::new(u.a().value() / q, q);
            }
            Factor::N(u) => {
                e.n[idx - self.r] = NPart { x: u.a(), z: u.c() };
                e.zc = u.b();
            }
        }
        Ok(e)
    }

    /// Every element, in lexicographic order of the tuple
    /// `(a_1, b_1, ..., A_1, C_1, ..., zc)`.
    pub fn elements(&self) -> Result<impl Iterator<Item = EspElement> + '_> {
        let order = self.order().ok_or(Error::OracleCapExceeded { order: u128::MAX, cap: usize::MAX })?;
        let q = self.modulus();
        let digits = 1 + 2 * self.factor_count();
        Ok((0..order).map(move |mut idx| {
            let mut d = vec![0u128; digits];
            for slot in d.iter_mut().rev() {
                *slot = idx % q;
                idx /= q;
            }
            let m: Vec<_> = (0..self.r).map(|i| (d[2 * i], d[2 * i + 1])).collect();
            let n: Vec<_> = (self.r..self.factor_count()).map(|i| (d[2 * i], d[2 * i + 1])).collect();
            self.element(&m, &n, d[digits - 1]).expect("shape matches params")
        }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    M,
    N,
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorKind::M => "M(p)",
            FactorKind::N => "N(p)",
        })
    }
}

/// Non-central coordinates of an `M(p)` factor: `x^x y^y`, `x < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPart {
    pub x: Residue,
    pub y: Residue,
}

/// Non-central coordinates of an `N(p)` factor: `x^x z^z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NPart {
    pub x: Residue,
    pub z: Residue,
}

/// An element of a single `M(p)` or `N(p)` factor, as a full word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    M(MpElement),
    N(NpElement),
}

impl Factor {
    pub fn kind(&self) -> FactorKind {
        match self {
            Factor::M(_) => FactorKind::M,
            Factor::N(_) => FactorKind::N,
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            Factor::M(u) => u.params().p(),
            Factor::N(u) => u.params().p(),
        }
    }

    pub fn is_central(&self) -> bool {
        match self {
            Factor::M(u) => u.is_central(),
            Factor::N(u) => u.is_central(),
        }
    }

    pub fn inv(&self) -> Factor {
        match self {
            Factor::M(u) => Factor::M(u.inv()),
            Factor::N(u) => Factor::N(u.inv()),
        }
    }

    pub fn checked_mul(&self, rhs: &Factor) -> Result<Factor> {
        match (self, rhs) {
            (Factor::M(u), Factor::M(v)) => u.checked_mul(v).map(Factor::M),
            (Factor::N(u), Factor::N(v)) => u.checked_mul(v).map(Factor::N),
            _ => Err(Error::ParamMismatch),
        }
    }

    pub fn conjugate_by(&self, h: &Factor) -> Result<Factor> {
        match (self, h) {
            (Factor::M(u), Factor::M(v)) if u.params() == v.params() => Ok(Factor::M(u.conjugate_by(v))),
            (Factor::N(u), Factor::N(v)) if u.params() == v.params() => Ok(Factor::N(u.conjugate_by(v))),
            _ => Err(Error::ParamMismatch),
        }
    }

    /// Multiplies by `ζ^k`.
    pub fn shift_center(&self, k: Residue) -> Factor {
        match self {
            Factor::M(u) => Factor::M(u.shift_center(k)),
            Factor::N(u) => Factor::N(u.shift_center(k)),
        }
    }

    /// The local CSP in `M(p)` or `N(p)`.
    pub fn solve_csp(&self, target: &Factor) -> Option<Factor> {
        match (self, target) {
            (Factor::M(u), Factor::M(v)) => mp::solve_csp(u, v).map(Factor::M),
            (Factor::N(u), Factor::N(v)) => np::solve_csp(u, v).map(Factor::N),
            _ => None,
        }
    }

    /// `self^{-1} C_{other}` restricted to the center, as an affine form
    /// `base + Σ coeffs·params` in the exponent of `ζ`. `None` when the set
    /// misses the center entirely.
    fn central_form(&self, class_rep: &Factor) -> Option<CentralForm> {
        match (self, class_rep) {
            (Factor::M(u), Factor::M(v)) => {
                let c = mp::class_coset(&u.inv(), v);
                let p = c.y_exp.modulus();
                (c.y_exp.is_zero() && c.x_base.value().is_multiple_of(p)).then(|| CentralForm {
                    base: Residue::new(c.x_base.value() / p, p),
                    coeffs: vec![c.c_i, c.c_j],
                })
            }
            (Factor::N(u), Factor::N(v)) => {
                let c = np::class_coset(&u.inv(), v);
                (c.x_exp.is_zero() && c.z_exp.is_zero())
                    .then(|| CentralForm { base: c.y_base, coeffs: vec![c.c_i, c.c_k] })
            }
            _ => None,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::M(u) => write!(f, "{u}"),
            Factor::N(u) => write!(f, "{u}"),
        }
    }
}

/// Canonical element of the central product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EspElement {
    params: EspParams,
    m: Vec<MPart>,
    n: Vec<NPart>,
    zc: Residue,
}

impl EspElement {
    pub fn params(&self) -> EspParams {
        self.params
    }

    pub fn m_parts(&self) -> &[MPart] {
        &self.m
    }

    pub fn n_parts(&self) -> &[NPart] {
        &self.n
    }

    /// Exponent of the central generator `ζ`.
    pub fn zc(&self) -> Residue {
        self.zc
    }

    /// True when all factor coordinates are zero, i.e. the element is a
    /// power of `ζ`.
    pub fn is_central(&self) -> bool {
        self.m.iter().all(|u| u.x.is_zero() && u.y.is_zero()) && self.n.iter().all(|u| u.x.is_zero() && u.z.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_central() && self.zc.is_zero()
    }

    /// Same factor coordinates, ignoring the center.
    pub fn same_coordinates(&self, other: &EspElement) -> bool {
        self.params == other.params && self.m == other.m && self.n == other.n
    }

    pub fn checked_mul(&self, rhs: &EspElement) -> Result<EspElement> {
        if self.params != rhs.params {
            return Err(Error::ParamMismatch);
        }
        let q = self.params.modulus();
        let mut zc = self.zc + rhs.zc;
        let m = self
            .m
            .iter()
            .zip(&rhs.m)
            .map(|(u, v)| {
                // x^a y^b x^c y^d = x^{a+c} ζ^{cb} y^{b+d}; a + c may wrap past p.
                let sum = u.x.value() + v.x.value();
                if sum >= q {
                    zc = zc + Residue::one(q);
                }
                zc = zc + v.x * u.y;
                MPart { x: Residue::new(sum, q), y: u.y + v.y }
            })
            .collect();
        let n = self
            .n
            .iter()
            .zip(&rhs.n)
            .map(|(u, v)| {
                zc = zc - u.z * v.x;
                NPart { x: u.x + v.x, z: u.z + v.z }
            })
            .collect();
        Ok(EspElement { params: self.params, m, n, zc })
    }

    pub fn inv(&self) -> EspElement {
        let q = self.params.modulus();
        let mut zc = -self.zc;
        let m = self
            .m
            .iter()
            .map(|u| {
                // (x^a y^b)^{-1} = x^{-a} ζ^{ab} y^{-b}, and x^{-a} = x^{p-a} ζ^{-1} for a != 0.
                zc = zc + u.x * u.y;
                if !u.x.is_zero() {
                    zc = zc - Residue::one(q);
                }
                MPart { x: -u.x, y: -u.y }
            })
            .collect();
        let n = self
            .n
            .iter()
            .map(|u| {
                zc = zc - u.x * u.z;
                NPart { x: -u.x, z: -u.z }
            })
            .collect();
        EspElement { params: self.params, m, n, zc }
    }

    /// Multiplies by `ζ^k`.
    pub fn shift_center(&self, k: Residue) -> EspElement {
        EspElement { zc: self.zc + k, ..self.clone() }
    }

    /// The exponent by which conjugating `self` by `h` moves `zc`:
    /// `Σ_M (b i_h - a j_h) + Σ_N (k_h A - i_h C)`.
    pub fn conjugation_shift(&self, h: &EspElement) -> Residue {
        let mut shift = Residue::zero(self.params.modulus());
        for (g, h) in self.m.iter().zip(&h.m) {
            shift = shift + g.y * h.x - g.x * h.y;
        }
        for (g, h) in self.n.iter().zip(&h.n) {
            shift = shift + h.z * g.x - h.x * g.z;
        }
        shift
    }

    /// `h^{-1} self h`.
    pub fn checked_conjugate_by(&self, h: &EspElement) -> Result<EspElement> {
        if self.params != h.params {
            return Err(Error::ParamMismatch);
        }
        Ok(self.shift_center(self.conjugation_shift(h)))
    }

    /// `h^{-1} self h`; panics on mismatched groups.
    pub fn conjugate_by(&self, h: &EspElement) -> EspElement {
        self.checked_conjugate_by(h).unwrap_or_else(|e| panic!("{e}"))
    }

    /// The coordinates of factor `idx` as a full word with no central part.
    pub fn factor(&self, idx: usize) -> Factor {
        let r = self.params.r;
        if idx < r {
            let u = self.m[idx];
            Factor::M(self.params.mp().element(u.x.value(), u.y.value()))
        } else {
            let u = self.n[idx - r];
            Factor::N(self.params.np().element(u.x.value(), 0, u.z.value()))
        }
    }

    /// Full factor words whose product is `self`; the central part rides on
    /// the first factor.
    pub fn to_factors(&self) -> Vec<Factor> {
        let mut out: Vec<Factor> = (0..self.params.factor_count()).map(|i| self.factor(i)).collect();
        if let Some(first) = out.first_mut() {
            *first = first.shift_center(self.zc);
        }
        out
    }

    /// Splits `self = h·k` with `h` the first factor (no central part) and
    /// `k` the remaining factors together with the whole center.
    pub fn split_first(&self) -> (Factor, EspElement) {
        let h = self.factor(0);
        let tail = self.params.tail(1);
        let (m, n) = if self.params.r > 0 {
            (self.m[1..].to_vec(), self.n.clone())
        } else {
            (Vec::new(), self.n[1..].to_vec())
        };
        (h, EspElement { params: tail, m, n, zc: self.zc })
    }
}

impl Mul for EspElement {
    type Output = EspElement;

    fn mul(self, rhs: EspElement) -> EspElement {
        self.checked_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Debug for EspElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EspElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let s = if first { "" } else { " " };
            first = false;
            f.write_str(s)
        };
        for (i, u) in self.m.iter().enumerate() {
            sep(f)?;
            write!(f, "(x{i}^{} y{i}^{})", u.x, u.y)?;
        }
        for (j, u) in self.n.iter().enumerate() {
            let i = j + self.params.r;
            sep(f)?;
            write!(f, "(x{i}^{} z{i}^{})", u.x, u.z)?;
        }
        sep(f)?;
        write!(f, "ζ^{}", self.zc)
    }
}

/// `{ζ^{base + Σ coeffs[i]·t_i}}` over free parameters `t_i` in `Z_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CentralForm {
    base: Residue,
    coeffs: Vec<Residue>,
}

impl CentralForm {
    fn eval(&self, params: &[Residue]) -> Residue {
        self.coeffs.iter().zip(params).fold(self.base, |acc, (c, t)| acc + *c * *t)
    }

    /// A common value of two forms. Equates them and solves for the first
    /// parameter (left form first) with a nonzero coefficient, all others
    /// zero. Costs at most one congruence.
    fn intersect(&self, other: &CentralForm) -> Option<(Residue, Vec<Residue>, Vec<Residue>)> {
        let q = self.base.modulus();
        let gap = other.base - self.base;
        let coeffs: Vec<Residue> = self.coeffs.iter().copied().chain(other.coeffs.iter().map(|c| -*c)).collect();
        let mut params = vec![Residue::zero(q); coeffs.len()];
        match coeffs.iter().position(|c| !c.is_zero()) {
            None if gap.is_zero() => {}
            None => return None,
            Some(k) => params[k] = modlin::solve_congruence(coeffs[k], gap)?.base,
        }
        let right = params.split_off(self.coeffs.len());
        let value = self.eval(&params);
        debug_assert_eq!(value, other.eval(&right));
        Some((value, params, right))
    }
}

/// The translated class `g · C_{g2}` in the central product: every member
/// shares the factor coordinates of `g·g2`, and the central exponent is
/// `base.zc + Σ coeffs·params`, with two parameters per factor (`(i, j)`
/// for `M(p)`, `(i, k)` for `N(p)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EspClassCoset {
    pub base: EspElement,
    pub coeffs: Vec<Residue>,
}

impl EspClassCoset {
    pub fn new(g: &EspElement, g2: &EspElement) -> Result<EspClassCoset> {
        let base = g.checked_mul(g2)?;
        let mut coeffs = Vec::with_capacity(2 * g2.params.factor_count());
        for u in &g2.m {
            // i·b - j·a
            coeffs.extend([u.y, -u.x]);
        }
        for u in &g2.n {
            // k·A - i·C
            coeffs.extend([-u.z, u.x]);
        }
        Ok(EspClassCoset { base, coeffs })
    }

    pub fn is_singleton(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn member(&self, params: &[Residue]) -> EspElement {
        EspElement { zc: self.central_form().eval(params), ..self.base.clone() }
    }

    pub fn contains(&self, e: &EspElement) -> bool {
        e.same_coordinates(&self.base) && (!self.is_singleton() || e.zc == self.base.zc)
    }

    fn central_form(&self) -> CentralForm {
        CentralForm { base: self.base.zc, coeffs: self.coeffs.clone() }
    }
}

/// A common element of two translated classes, with the parameters that
/// witness membership on each side. One congruence at most.
pub fn coset_intersect(
    c1: &EspClassCoset,
    c2: &EspClassCoset,
) -> Option<(EspElement, Vec<Residue>, Vec<Residue>)> {
    if !c1.base.same_coordinates(&c2.base) {
        return None;
    }
    let (zc, left, right) = c1.central_form().intersect(&c2.central_form())?;
    Some((EspElement { zc, ..c1.base.clone() }, left, right))
}

/// Central exponent of some `t` in `h'^{-1} C_{h̃} ∩ k' C_{k̃^{-1}}`, where
/// `h̃, h'` live in one factor `H` and `k̃, k'` in the remaining factors `K`
/// (plus the center). The intersection lies inside `H ∩ K = <ζ>`.
///
/// When both `h̃` and `k̃` are non-central every central value is reachable
/// and one congruence picks `t` (solving on the `H` side first). When either
/// side is central its value is forced and checked against the other.
pub fn center_intersect(h_tilde: &Factor, h_prime: &Factor, k_tilde: &EspElement, k_prime: &EspElement) -> Option<Residue> {
    if h_tilde.p() != k_tilde.params.p || k_tilde.params != k_prime.params {
        return None;
    }
    let h_side = h_prime.central_form(h_tilde)?;
    let k_coset = EspClassCoset::new(k_prime, &k_tilde.inv()).ok()?;
    if !k_coset.base.is_central() {
        return None;
    }
    let (t, _, _) = h_side.intersect(&k_coset.central_form())?;
    Some(t)
}

/// One iteration of the factor-by-factor solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorStep {
    pub factor: usize,
    pub kind: FactorKind,
    /// Exponent of the central element `t_j = ζ^t`.
    pub t: Residue,
    /// Local conjugator `h_j`, as a word in its own factor.
    pub local: Factor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refusal {
    /// The non-central coordinates of this factor differ, which no
    /// conjugation can repair.
    FactorMismatch { factor: usize, kind: FactorKind },
    /// Both elements are central and distinct; central classes are
    /// singletons.
    CentralMismatch { tilde: Residue, prime: Residue },
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::FactorMismatch { factor, kind } => {
                write!(f, "factor {factor} ({kind}) has different non-central coordinates")
            }
            Refusal::CentralMismatch { tilde, prime } => {
                write!(f, "central elements ζ^{tilde} and ζ^{prime} differ")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CspOutcome {
    Solved { conjugator: EspElement, trace: Vec<FactorStep> },
    NotConjugate(Refusal),
}

impl CspOutcome {
    pub fn conjugator(&self) -> Option<&EspElement> {
        match self {
            CspOutcome::Solved { conjugator, .. } => Some(conjugator),
            CspOutcome::NotConjugate(_) => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, CspOutcome::Solved { .. })
    }
}

fn first_mismatch(g_tilde: &EspElement, g_prime: &EspElement) -> Option<Refusal> {
    let params = g_tilde.params;
    let m = g_tilde.m.iter().zip(&g_prime.m).position(|(u, v)| u != v);
    let n = g_tilde.n.iter().zip(&g_prime.n).position(|(u, v)| u != v).map(|j| j + params.r);
    m.or(n).map(|factor| Refusal::FactorMismatch { factor, kind: params.kind_of(factor) })
}

/// Conjugacy decision: same factor coordinates, and equal centers when the
/// elements are central.
pub fn is_conjugate(g_tilde: &EspElement, g_prime: &EspElement) -> bool {
    g_tilde.same_coordinates(g_prime) && (!g_tilde.is_central() || g_tilde.zc == g_prime.zc)
}

/// Finds `g` with `g^{-1} g̃ g = g'`, or explains why none exists.
///
/// Needs at most three congruences per factor. The returned conjugator is
/// re-checked with [`EspElement::conjugate_by`] before it is returned.
pub fn solve_csp(g_tilde: &EspElement, g_prime: &EspElement) -> Result<CspOutcome> {
    if g_tilde.params != g_prime.params {
        return Err(Error::ParamMismatch);
    }
    if let Some(refusal) = first_mismatch(g_tilde, g_prime) {
        return Ok(CspOutcome::NotConjugate(refusal));
    }
    let params = g_tilde.params;
    let mut cur_tilde = g_tilde.clone();
    let mut cur_prime = g_prime.clone();
    let mut trace = Vec::with_capacity(params.factor_count());
    for factor in 0..params.factor_count() {
        let (h_tilde, k_tilde) = cur_tilde.split_first();
        let (h_prime, k_prime) = cur_prime.split_first();
        let Some(t) = center_intersect(&h_tilde, &h_prime, &k_tilde, &k_prime) else {
            // Coordinates already agree, so only an all-central instance
            // can get here.
            return Ok(CspOutcome::NotConjugate(Refusal::CentralMismatch {
                tilde: g_tilde.zc,
                prime: g_prime.zc,
            }));
        };
        let local = h_tilde
            .solve_csp(&h_prime.shift_center(t))
            .ok_or_else(|| Error::Verification(format!("local CSP in factor {factor} has no solution")))?;
        trace.push(FactorStep { factor, kind: params.kind_of(factor), t, local });
        cur_tilde = k_tilde;
        cur_prime = k_prime.shift_center(-t);
    }
    let conjugator = trace.iter().try_fold(params.identity(), |acc, step| {
        params.embed(step.factor, &step.local).map(|e| acc * e)
    })?;
    if g_tilde.conjugate_by(&conjugator) != *g_prime {
        return Err(Error::Verification("assembled conjugator does not conjugate g̃ to g'".into()));
    }
    Ok(CspOutcome::Solved { conjugator, trace })
}

/// Checks `candidate^{-1} g̃ candidate = g'`.
pub fn verify(g_tilde: &EspElement, g_prime: &EspElement, candidate: &EspElement) -> bool {
    g_tilde.params == g_prime.params
        && candidate.params == g_tilde.params
        && g_tilde.conjugate_by(candidate) == *g_prime
}
