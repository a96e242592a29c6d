//! Brute-force ground truth for small groups.
//!
//! A [`SmallGroup`] stores every element in enumeration order together with
//! dense multiplication and inverse tables built from the group's own
//! multiplication. Enumeration order is lexicographic on the canonical
//! exponent tuple, so the identity always comes first.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::esp::{EspElement, EspParams};
use crate::mp::{MpElement, MpParams};
use crate::np::{NpElement, NpParams};
use crate::showcase::{Dihedral, DihedralElement, Quaternion, QuaternionElement};

/// Largest group order enumerated when `ESP_ORACLE_CAP` is unset.
pub const DEFAULT_CAP: usize = 4096;

pub const CAP_ENV: &str = "ESP_ORACLE_CAP";

/// The active cap: `ESP_ORACLE_CAP` if it parses, else [`DEFAULT_CAP`].
pub fn oracle_cap() -> usize {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// A group small enough to list.
pub trait FiniteGroup {
    type Elem: Clone + Eq + Hash + Debug;

    fn order(&self) -> Option<u128>;
    fn all_elements(&self) -> Vec<Self::Elem>;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl FiniteGroup for MpParams {
    type Elem = MpElement;

    fn order(&self) -> Option<u128> {
        Some(MpParams::order(self))
    }

    fn all_elements(&self) -> Vec<MpElement> {
        self.elements().collect()
    }

    fn op(&self, a: &MpElement, b: &MpElement) -> MpElement {
        *a * *b
    }
}

impl FiniteGroup for NpParams {
    type Elem = NpElement;

    fn order(&self) -> Option<u128> {
        Some(NpParams::order(self))
    }

    fn all_elements(&self) -> Vec<NpElement> {
        self.elements().collect()
    }

    fn op(&self, a: &NpElement, b: &NpElement) -> NpElement {
        *a * *b
    }
}

impl FiniteGroup for EspParams {
    type Elem = EspElement;

    fn order(&self) -> Option<u128> {
        EspParams::order(self)
    }

    fn all_elements(&self) -> Vec<EspElement> {
        self.elements().map(|it| it.collect()).unwrap_or_default()
    }

    fn op(&self, a: &EspElement, b: &EspElement) -> EspElement {
        a.clone() * b.clone()
    }
}

impl FiniteGroup for Dihedral {
    type Elem = DihedralElement;

    fn order(&self) -> Option<u128> {
        Dihedral::order(self)
    }

    fn all_elements(&self) -> Vec<DihedralElement> {
        self.elements().collect()
    }

    fn op(&self, a: &DihedralElement, b: &DihedralElement) -> DihedralElement {
        *a * *b
    }
}

impl FiniteGroup for Quaternion {
    type Elem = QuaternionElement;

    fn order(&self) -> Option<u128> {
        Quaternion::order(self)
    }

    fn all_elements(&self) -> Vec<QuaternionElement> {
        self.elements().collect()
    }

    fn op(&self, a: &QuaternionElement, b: &QuaternionElement) -> QuaternionElement {
        *a * *b
    }
}

/// Names one of the supported groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Mp { p: u64 },
    Np { p: u64 },
    Esp { p: u64, r: usize, s: usize },
    Dihedral { n: u128 },
    Quaternion { n: u32 },
}

impl GroupDescriptor {
    /// Order of the described group, if it fits in 128 bits.
    pub fn order(&self) -> Result<Option<u128>> {
        Ok(match *self {
            GroupDescriptor::Mp { p } => Some(MpParams::new(p)?.order()),
            GroupDescriptor::Np { p } => Some(NpParams::new(p)?.order()),
            GroupDescriptor::Esp { p, r, s } => EspParams::new(p, r, s)?.order(),
            GroupDescriptor::Dihedral { n } => Dihedral::new(n)?.order(),
            GroupDescriptor::Quaternion { n } => Quaternion::new(n)?.order(),
        })
    }
}

/// A fully tabulated finite group.
#[derive(Clone, Debug)]
pub struct SmallGroup<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
}

/// Tabulates `g`, refusing when its order exceeds `cap`.
pub fn enumerate_group<G: FiniteGroup>(g: &G, cap: usize) -> Result<SmallGroup<G::Elem>> {
    let order = g.order().unwrap_or(u128::MAX);
    if order > cap as u128 || order > u32::MAX as u128 {
        return Err(Error::OracleCapExceeded { order, cap });
    }
    let elements = g.all_elements();
    if elements.len() as u128 != order {
        return Err(Error::Verification(format!("enumerated {} elements, expected {order}", elements.len())));
    }
    let index: HashMap<_, _> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    if index.len() != elements.len() {
        return Err(Error::Verification("enumeration repeats an element".into()));
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            let c = g.op(a, b);
            let k = *index.get(&c).ok_or_else(|| Error::Verification(format!("{c:?} is not enumerated")))?;
            table.push(k as u32);
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
        .ok_or_else(|| Error::Verification("no identity".into()))?;
    let mut inverse = vec![u32::MAX; n];
    for a in 0..n {
        let b = (0..n)
            .find(|&b| table[a * n + b] as usize == identity)
            .ok_or_else(|| Error::Verification(format!("{:?} has no inverse", elements[a])))?;
        if table[b * n + a] as usize != identity {
            return Err(Error::Verification("left and right inverses differ".into()));
        }
        inverse[a] = b as u32;
    }
    Ok(SmallGroup { elements, index, table, inverse, identity })
}

impl<E: Clone + Eq + Hash + Debug> SmallGroup<E> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &E {
        &self.elements[idx]
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `h^{-1} g h` on indices.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    fn idx(&self, e: &E) -> Result<usize> {
        self.index_of(e).ok_or_else(|| Error::BadParams(format!("{e:?} is not in this group")))
    }

    /// Exhaustive associativity check.
    pub fn check_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&z| (0..n).all(|a| self.mul(z, a) == self.mul(a, z))).collect()
    }

    /// The first `h` in enumeration order with `h^{-1} g h = g2`.
    pub fn brute_csp(&self, g: &E, g2: &E) -> Result<Option<E>> {
        let (g, g2) = (self.idx(g)?, self.idx(g2)?);
        Ok((0..self.order()).find(|&h| self.conj(g, h) == g2).map(|h| self.elements[h].clone()))
    }

    fn class_of(&self, g: usize) -> BTreeSet<usize> {
        (0..self.order()).map(|h| self.conj(g, h)).collect()
    }

    /// The conjugacy class of `g`.
    pub fn brute_class(&self, g: &E) -> Result<Vec<E>> {
        Ok(self.class_of(self.idx(g)?).into_iter().map(|i| self.elements[i].clone()).collect())
    }

    /// All conjugacy classes as index sets, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if !seen[g] {
                let c = self.class_of(g);
                for &m in &c {
                    seen[m] = true;
                }
                out.push(c);
            }
        }
        out
    }

    fn translate(&self, h: usize, class: &BTreeSet<usize>) -> BTreeSet<usize> {
        class.iter().map(|&c| self.mul(h, c)).collect()
    }

    /// `h C_u ∩ k C_v`, in enumeration order.
    pub fn brute_coset_intersect(&self, h: &E, u: &E, k: &E, v: &E) -> Result<Vec<E>> {
        let left = self.translate(self.idx(h)?, &self.class_of(self.idx(u)?));
        let right = self.translate(self.idx(k)?, &self.class_of(self.idx(v)?));
        Ok(left.intersection(&right).map(|&i| self.elements[i].clone()).collect())
    }

    /// Index-level `h C_u ∩ k C_v` for tight loops.
    pub fn coset_intersect_indices(&self, h: usize, u: usize, k: usize, v: usize) -> BTreeSet<usize> {
        let left = self.translate(h, &self.class_of(u));
        let right = self.translate(k, &self.class_of(v));
        left.intersection(&right).copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_identity() {
        let m3 = enumerate_group(&MpParams::new(3).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(m3.order(), 27);
        assert_eq!(m3.identity(), 0);
        let esp = enumerate_group(&EspParams::new(3, 1, 1).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(esp.order(), 243);
        assert_eq!(esp.center().len(), 3);
        let d6 = enumerate_group(&Dihedral::new(6).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(d6.order(), 12);
        assert!(d6.check_associative());
        let q16 = enumerate_group(&Quaternion::new(4).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(q16.center().len(), 2);
    }

    #[test]
    fn cap_enforced() {
        let err = enumerate_group(&EspParams::new(3, 2, 1).unwrap(), 100).unwrap_err();
        assert_eq!(err, Error::OracleCapExceeded { order: 2187, cap: 100 });
        let huge = EspParams::new((1 << 61) - 1, 1, 0).unwrap();
        assert!(enumerate_group(&huge, DEFAULT_CAP).is_err());
    }

    #[test]
    fn brute_examples() {
        let n3 = NpParams::new(3).unwrap();
        let g = enumerate_group(&n3, DEFAULT_CAP).unwrap();
        let y = n3.element(0, 1, 0);
        assert_eq!(g.brute_csp(&y, &y).unwrap(), Some(n3.identity()));
        assert_eq!(g.brute_csp(&y, &n3.element(0, 2, 0)).unwrap(), None);
        assert_eq!(g.brute_class(&n3.identity()).unwrap(), vec![n3.identity()]);

        let d4 = Dihedral::new(4).unwrap();
        let g = enumerate_group(&d4, DEFAULT_CAP).unwrap();
        let x = d4.element(1, 0).unwrap();
        assert_eq!(g.brute_class(&x).unwrap(), vec![x, d4.element(3, 0).unwrap()]);

        let e = EspParams::new(3, 1, 1).unwrap();
        let g = enumerate_group(&e, DEFAULT_CAP).unwrap();
        let u = e.element(&[(1, 0)], &[(0, 2)], 1).unwrap();
        let class = g.brute_class(&u).unwrap();
        let expected: Vec<_> = (0..3).map(|k| u.shift_center(crate::Residue::new(k, 3))).collect();
        let mut sorted = expected.clone();
        sorted.sort_by_key(|x| g.index_of(x));
        assert_eq!(class, sorted);
        let hc = g.brute_coset_intersect(&u, &u, &u, &u).unwrap();
        assert_eq!(hc.len(), 3);
    }
}
