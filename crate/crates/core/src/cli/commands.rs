//! The subcommands as plain functions returning serializable reports.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use super::json::{
    ElementJson, Elem, Group, GroupJson, InstanceFile, IntersectFile, esp_json, factor_json, json_diff,
};
use crate::error::{Error, Result};
use crate::esp::{self, CspOutcome, EspClassCoset, EspElement, EspParams, Refusal};
use crate::modlin::{self, Residue, count_congruence_solves};
use crate::mp::{self, MpElement};
use crate::np::{self, NpElement};
use crate::oracle::{FiniteGroup, SmallGroup, enumerate_group, oracle_cap};
use crate::showcase::{self, DihedralElement, QuaternionElement, Witness};

macro_rules! with_group {
    ($group:expr, $g:ident => $body:expr) => {
        match $group {
            Group::Esp($g) => $body,
            Group::Mp($g) => $body,
            Group::Np($g) => $body,
            Group::Dihedral($g) => $body,
            Group::Quaternion($g) => $body,
        }
    };
}

/// Moves between [`Elem`] and a concrete element type.
pub trait ElemVariant: Sized + Clone {
    fn from_elem(e: &Elem) -> Result<Self>;
    fn into_elem(self) -> Elem;
}

macro_rules! variant {
    ($ty:ty, $v:ident) => {
        impl ElemVariant for $ty {
            fn from_elem(e: &Elem) -> Result<Self> {
                match e {
                    Elem::$v(x) => Ok(x.clone()),
                    _ => Err(Error::ParamMismatch),
                }
            }

            fn into_elem(self) -> Elem {
                Elem::$v(self)
            }
        }
    };
}

variant!(EspElement, Esp);
variant!(MpElement, Mp);
variant!(NpElement, Np);
variant!(DihedralElement, Dihedral);
variant!(QuaternionElement, Quaternion);

/// The seeded generator behind every random choice: ChaCha8 keyed by
/// `seed_from_u64(seed)`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform value in `[0, p)` by rejection sampling on 64-bit outputs.
pub fn draw_residue(rng: &mut ChaCha8Rng, p: u64) -> u128 {
    let p = p as u128;
    let zone = (1u128 << 64) - (1u128 << 64) % p;
    loop {
        let v = rng.next_u64() as u128;
        if v < zone {
            return v % p;
        }
    }
}

/// Uniform element: `m` coordinates, then `n` coordinates, then `zc`.
pub fn random_element(params: &EspParams, rng: &mut ChaCha8Rng) -> EspElement {
    let p = params.p();
    let m: Vec<_> = (0..params.r()).map(|_| (draw_residue(rng, p), draw_residue(rng, p))).collect();
    let n: Vec<_> = (0..params.s()).map(|_| (draw_residue(rng, p), draw_residue(rng, p))).collect();
    let zc = draw_residue(rng, p);
    params.element(&m, &n, zc).expect("shape matches params")
}

/// `g̃` uniform, `h` uniform, and the instance `(g̃, h^{-1} g̃ h)`.
pub fn random(p: u64, r: usize, s: usize, seed: u64) -> Result<InstanceFile> {
    let params = EspParams::new(p, r, s)?;
    let mut rng = seeded_rng(seed);
    let g_tilde = random_element(&params, &mut rng);
    let h = random_element(&params, &mut rng);
    let g_prime = g_tilde.conjugate_by(&h);
    Ok(InstanceFile {
        group: Group::Esp(params).to_json(),
        g_tilde: esp_json(&g_tilde),
        g_prime: esp_json(&g_prime),
        known_conjugator: Some(esp_json(&h)),
        seed: Some(seed.to_string()),
    })
}

/// A parsed [`InstanceFile`].
#[derive(Clone, Debug)]
pub struct Instance {
    pub group: Group,
    pub g_tilde: Elem,
    pub g_prime: Elem,
    pub known_conjugator: Option<Elem>,
}

impl Instance {
    pub fn parse(file: &InstanceFile) -> Result<Instance> {
        let group = file.group.parse()?;
        let inst = Instance {
            group,
            g_tilde: group.parse_elem(&file.g_tilde)?,
            g_prime: group.parse_elem(&file.g_prime)?,
            known_conjugator: file.known_conjugator.as_ref().map(|e| group.parse_elem(e)).transpose()?,
        };
        if let Some(h) = &inst.known_conjugator
            && inst.g_tilde.conjugate_by(h)? != inst.g_prime {
                return Err(Error::Parse("known_conjugator does not conjugate g_tilde to g_prime".into()));
            }
        Ok(inst)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub factor: usize,
    pub kind: String,
    pub t: String,
    pub local: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<ElementJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub agrees: bool,
}

impl OracleCheck {
    fn skipped(err: Error) -> OracleCheck {
        OracleCheck { skipped: Some(err.to_string()), order: None, result: None, size: None, agrees: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub group: GroupJson,
    pub conjugate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<ElementJson>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refusal: Option<String>,
    pub congruence_solves: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

fn refusal_text(r: &Refusal) -> String {
    r.to_string()
}

/// Conjugator for a dihedral or quaternion pair from a common element of
/// their classes, given conjugators `a`, `b` built from the witness.
/// `left_first` gives `a^{-1} b` (class members written `a g a^{-1}`),
/// otherwise `a b^{-1}` (members written `a^{-1} g a`).
fn showcase_conjugator<E>(w: &Witness, make: impl Fn(Residue, u8) -> E, inv: impl Fn(&E) -> E, mul: impl Fn(&E, &E) -> E, left_first: bool) -> E {
    let a = make(w.i1, w.j1);
    let b = make(w.i2, w.j2);
    if left_first { mul(&inv(&a), &b) } else { mul(&a, &inv(&b)) }
}

/// Runs the structural solver for the instance's group.
fn structural_solve(inst: &Instance) -> Result<(Option<Elem>, Vec<TraceStep>, Option<String>)> {
    let (g, g2) = (&inst.g_tilde, &inst.g_prime);
    Ok(match inst.group {
        Group::Esp(_) => {
            let (a, b) = (EspElement::from_elem(g)?, EspElement::from_elem(g2)?);
            match esp::solve_csp(&a, &b)? {
                CspOutcome::Solved { conjugator, trace } => {
                    let steps = trace
                        .iter()
                        .map(|s| TraceStep {
                            factor: s.factor,
                            kind: s.kind.to_string(),
                            t: s.t.to_string(),
                            local: factor_json(&s.local),
                        })
                        .collect();
                    (Some(Elem::Esp(conjugator)), steps, None)
                }
                CspOutcome::NotConjugate(r) => (None, Vec::new(), Some(refusal_text(&r))),
            }
        }
        Group::Mp(_) => {
            let (a, b) = (MpElement::from_elem(g)?, MpElement::from_elem(g2)?);
            match mp::solve_csp(&a, &b) {
                Some(h) => (Some(Elem::Mp(h)), Vec::new(), None),
                None => (None, Vec::new(), Some(mp_refusal(&a, &b))),
            }
        }
        Group::Np(_) => {
            let (a, b) = (NpElement::from_elem(g)?, NpElement::from_elem(g2)?);
            match np::solve_csp(&a, &b) {
                Some(h) => (Some(Elem::Np(h)), Vec::new(), None),
                None => (None, Vec::new(), Some(np_refusal(&a, &b))),
            }
        }
        Group::Dihedral(d) => {
            let (a, b) = (DihedralElement::from_elem(g)?, DihedralElement::from_elem(g2)?);
            let id = d.identity();
            match showcase::dihedral_coset_intersect(&id, &a, &id, &b)? {
                Some((_, w)) => {
                    let make = |i: Residue, j| d.element(i.value(), j).expect("bit");
                    let h = showcase_conjugator(&w, make, |e| e.inv(), |x, y| *x * *y, true);
                    (Some(Elem::Dihedral(h)), Vec::new(), None)
                }
                None => (None, Vec::new(), Some("the two conjugacy classes are disjoint".into())),
            }
        }
        Group::Quaternion(q) => {
            let (a, b) = (QuaternionElement::from_elem(g)?, QuaternionElement::from_elem(g2)?);
            let id = q.identity();
            match showcase::quaternion_coset_intersect(&id, &a, &id, &b)? {
                Some((_, w)) => {
                    let make = |i: Residue, j| q.element(i.value(), j).expect("bit");
                    let h = showcase_conjugator(&w, make, |e| e.inv(), |x, y| *x * *y, false);
                    (Some(Elem::Quaternion(h)), Vec::new(), None)
                }
                None => (None, Vec::new(), Some("the two conjugacy classes are disjoint".into())),
            }
        }
    })
}

fn mp_refusal(a: &MpElement, b: &MpElement) -> String {
    if a.b() != b.b() {
        "y exponents differ".into()
    } else if a.a_mod_p() != b.a_mod_p() {
        "x exponents differ modulo p".into()
    } else {
        "distinct central elements".into()
    }
}

fn np_refusal(a: &NpElement, b: &NpElement) -> String {
    if a.a() != b.a() {
        "x exponents differ".into()
    } else if a.c() != b.c() {
        "z exponents differ".into()
    } else {
        "distinct central elements".into()
    }
}

fn oracle_csp<G>(g: &G, a: &Elem, b: &Elem, found: bool) -> OracleCheck
where
    G: FiniteGroup,
    G::Elem: ElemVariant,
{
    let run = || -> Result<OracleCheck> {
        let sg = enumerate_group(g, oracle_cap())?;
        let hit = sg.brute_csp(&G::Elem::from_elem(a)?, &G::Elem::from_elem(b)?)?;
        Ok(OracleCheck {
            skipped: None,
            order: Some(sg.order().to_string()),
            agrees: hit.is_some() == found,
            result: hit.map(|h| h.into_elem().to_json()),
            size: None,
        })
    };
    run().unwrap_or_else(OracleCheck::skipped)
}

/// Solves the instance; with `oracle`, cross-checks existence by brute force.
pub fn solve(file: &InstanceFile, oracle: bool) -> Result<SolveReport> {
    let inst = Instance::parse(file)?;
    let (res, solves) = count_congruence_solves(|| structural_solve(&inst));
    let (conj, trace, refusal) = res?;
    let verified = match &conj {
        Some(h) => inst.g_tilde.conjugate_by(h)? == inst.g_prime,
        None => false,
    };
    if conj.is_some() && !verified {
        return Err(Error::Verification("solver returned a conjugator that does not verify".into()));
    }
    let oracle = oracle.then(|| with_group!(&inst.group, g => oracle_csp(g, &inst.g_tilde, &inst.g_prime, conj.is_some())));
    Ok(SolveReport {
        group: file.group.clone(),
        conjugate: conj.is_some(),
        conjugator: conj.map(|h| h.to_json()),
        verified,
        trace,
        refusal,
        congruence_solves: solves,
        oracle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecideReport {
    pub conjugate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

/// Conjugacy decision without constructing a conjugator where possible.
pub fn decide(file: &InstanceFile, oracle: bool) -> Result<DecideReport> {
    let inst = Instance::parse(file)?;
    let (conjugate, reason) = match inst.group {
        Group::Esp(_) => {
            let (a, b) = (EspElement::from_elem(&inst.g_tilde)?, EspElement::from_elem(&inst.g_prime)?);
            (esp::is_conjugate(&a, &b), None)
        }
        Group::Mp(_) => {
            let (a, b) = (MpElement::from_elem(&inst.g_tilde)?, MpElement::from_elem(&inst.g_prime)?);
            let yes = mp::is_conjugate(&a, &b);
            (yes, (!yes).then(|| mp_refusal(&a, &b)))
        }
        Group::Np(_) => {
            let (a, b) = (NpElement::from_elem(&inst.g_tilde)?, NpElement::from_elem(&inst.g_prime)?);
            let yes = np::is_conjugate(&a, &b);
            (yes, (!yes).then(|| np_refusal(&a, &b)))
        }
        Group::Dihedral(_) | Group::Quaternion(_) => {
            let (h, _, refusal) = structural_solve(&inst)?;
            (h.is_some(), refusal)
        }
    };
    let reason = match (&inst.group, conjugate) {
        (Group::Esp(_), false) => {
            let (_, _, r) = structural_solve(&inst)?;
            r
        }
        _ => reason,
    };
    let oracle = oracle.then(|| with_group!(&inst.group, g => oracle_csp(g, &inst.g_tilde, &inst.g_prime, conjugate)));
    Ok(DecideReport { conjugate, reason, oracle })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub conjugated: ElementJson,
    pub expected: ElementJson,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diff: Vec<String>,
}

/// Checks `candidate^{-1} g̃ candidate = g'`. Without a candidate the
/// instance's `known_conjugator` is used.
pub fn verify(file: &InstanceFile, candidate: Option<&ElementJson>) -> Result<VerifyReport> {
    let group = file.group.parse()?;
    let g_tilde = group.parse_elem(&file.g_tilde)?;
    let g_prime = group.parse_elem(&file.g_prime)?;
    let cand = candidate
        .or(file.known_conjugator.as_ref())
        .ok_or_else(|| Error::Parse("no candidate given and the instance has no known_conjugator".into()))?;
    let h = group.parse_elem(cand)?;
    let got = g_tilde.conjugate_by(&h)?;
    let (conjugated, expected) = (got.to_json(), g_prime.to_json());
    let diff = json_diff(
        &serde_json::to_value(&conjugated).expect("json"),
        &serde_json::to_value(&expected).expect("json"),
    );
    Ok(VerifyReport { valid: got == g_prime, conjugated, expected, diff })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub p_bits: u32,
    pub p: String,
    pub components: usize,
    pub r: usize,
    pub s: usize,
    pub trials: usize,
    pub median_us: f64,
    pub mean_us: f64,
    pub max_solves: u64,
    pub solve_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Every instance stayed within `3(r+s)+1` congruence solves.
    pub within_bound: bool,
    /// For each component count, the solve count did not change with `p`.
    pub independent_of_p: bool,
}

/// Largest prime below `2^bits`, `2 <= bits <= 63`.
pub fn prime_below_pow2(bits: u32) -> Result<u64> {
    if !(2..=63).contains(&bits) {
        return Err(Error::BadParams(format!("p_bits must lie in 2..=63, got {bits}")));
    }
    let top = (1u64 << bits) - 1;
    (3..=top).rev().step_by(2).find(|&q| modlin::is_prime(q)).ok_or_else(|| Error::BadParams("no odd prime".into()))
}

pub fn bench(p_bits: &[u32], components: &[usize], trials: usize, seed: u64) -> Result<BenchReport> {
    if trials == 0 || components.contains(&0) {
        return Err(Error::BadParams("trials and component counts must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut rng = seeded_rng(seed);
    for &bits in p_bits {
        let p = prime_below_pow2(bits)?;
        for &c in components {
            let (r, s) = (c.div_ceil(2), c / 2);
            let params = EspParams::new(p, r, s)?;
            let mut times = Vec::with_capacity(trials);
            let mut max_solves = 0;
            for _ in 0..trials {
                let g = random_element(&params, &mut rng);
                let h = random_element(&params, &mut rng);
                let g2 = g.conjugate_by(&h);
                let start = Instant::now();
                let (out, solves) = count_congruence_solves(|| esp::solve_csp(&g, &g2));
                times.push(start.elapsed().as_secs_f64() * 1e6);
                if !out?.is_solved() {
                    return Err(Error::Verification("constructed instance was refused".into()));
                }
                max_solves = max_solves.max(solves);
            }
            times.sort_by(f64::total_cmp);
            rows.push(BenchRow {
                p_bits: bits,
                p: p.to_string(),
                components: c,
                r,
                s,
                trials,
                median_us: times[trials / 2],
                mean_us: times.iter().sum::<f64>() / trials as f64,
                max_solves,
                solve_bound: 3 * c as u64 + 1,
            });
        }
    }
    let within_bound = rows.iter().all(|r| r.max_solves <= r.solve_bound);
    let independent_of_p = components.iter().all(|&c| {
        let mut counts = rows.iter().filter(|r| r.components == c).map(|r| r.max_solves);
        let first = counts.next();
        counts.all(|v| Some(v) == first)
    });
    Ok(BenchReport { rows, within_bound, independent_of_p })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attack {
    pub conjugator: ElementJson,
    pub key: ElementJson,
    pub success: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub group: GroupJson,
    pub seed: String,
    pub public: ElementJson,
    pub alice_secret: ElementJson,
    pub bob_secret: ElementJson,
    pub alice_sends: ElementJson,
    pub bob_sends: ElementJson,
    pub alice_key: ElementJson,
    pub bob_key: ElementJson,
    pub keys_agree: bool,
    pub attacker: Attack,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Attack>,
}

/// A secret supported on one block of factors; `m_side` picks the `M(p)`
/// block, otherwise the `N(p)` block.
fn secret(params: &EspParams, rng: &mut ChaCha8Rng, m_side: bool) -> EspElement {
    let p = params.p();
    let mut pair = |on: bool| if on { (draw_residue(rng, p), draw_residue(rng, p)) } else { (0, 0) };
    let m: Vec<_> = (0..params.r()).map(|_| pair(m_side)).collect();
    let n: Vec<_> = (0..params.s()).map(|_| pair(!m_side)).collect();
    params.element(&m, &n, 0).expect("shape matches params")
}

/// A toy commuting-subgroup key exchange and the attack that breaks it.
///
/// Alice's secret lives in the `M(p)` factors and Bob's in the `N(p)`
/// factors, so the two commute and both parties reach
/// `(ab)^{-1} g̃ (ab)`. The attacker solves the CSP for Alice's public
/// value and applies the recovered conjugator to Bob's.
pub fn demo_keyexchange(p: u64, r: usize, s: usize, seed: u64, oracle: bool) -> Result<Transcript> {
    if r == 0 || s == 0 {
        return Err(Error::BadParams("the exchange needs r >= 1 and s >= 1".into()));
    }
    let params = EspParams::new(p, r, s)?;
    let mut rng = seeded_rng(seed);
    let public = random_element(&params, &mut rng);
    let a = secret(&params, &mut rng, true);
    let b = secret(&params, &mut rng, false);
    let alice_sends = public.conjugate_by(&a);
    let bob_sends = public.conjugate_by(&b);
    let alice_key = bob_sends.conjugate_by(&a);
    let bob_key = alice_sends.conjugate_by(&b);

    let recovered = esp::solve_csp(&public, &alice_sends)?
        .conjugator()
        .cloned()
        .ok_or_else(|| Error::Verification("attacker could not solve a valid instance".into()))?;
    let stolen = bob_sends.conjugate_by(&recovered);
    let attacker = Attack { conjugator: esp_json(&recovered), key: esp_json(&stolen), success: stolen == alice_key };

    let oracle = if oracle {
        let sg: SmallGroup<EspElement> = enumerate_group(&params, oracle_cap())?;
        let h = sg.brute_csp(&public, &alice_sends)?.expect("alice's secret is a conjugator");
        let key = bob_sends.conjugate_by(&h);
        Some(Attack { conjugator: esp_json(&h), success: key == stolen, key: esp_json(&key) })
    } else {
        None
    };

    Ok(Transcript {
        group: Group::Esp(params).to_json(),
        seed: seed.to_string(),
        public: esp_json(&public),
        alice_secret: esp_json(&a),
        bob_secret: esp_json(&b),
        alice_sends: esp_json(&alice_sends),
        bob_sends: esp_json(&bob_sends),
        keys_agree: alice_key == bob_key,
        alice_key: esp_json(&alice_key),
        bob_key: esp_json(&bob_key),
        attacker,
        oracle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectReport {
    pub group: GroupJson,
    pub common: Option<ElementJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

fn w4(w: [Residue; 4]) -> Vec<String> {
    w.iter().map(|r| r.to_string()).collect()
}

fn wshow(w: &Witness) -> Vec<String> {
    vec![w.i1.to_string(), w.j1.to_string(), w.i2.to_string(), w.j2.to_string()]
}

/// Structural `h C_u ∩ k C_v` for any supported group.
pub fn intersect_elems(group: &Group, h: &Elem, u: &Elem, k: &Elem, v: &Elem) -> Result<Option<(Elem, Vec<String>)>> {
    Ok(match group {
        Group::Esp(_) => {
            let [h, u, k, v] = [h, u, k, v].map(EspElement::from_elem);
            let c1 = EspClassCoset::new(&h?, &u?)?;
            let c2 = EspClassCoset::new(&k?, &v?)?;
            esp::coset_intersect(&c1, &c2).map(|(e, l, r)| {
                (Elem::Esp(e), l.iter().chain(&r).map(|x| x.to_string()).collect())
            })
        }
        Group::Mp(_) => {
            let [h, u, k, v] = [h, u, k, v].map(MpElement::from_elem);
            let c1 = mp::class_coset(&h?, &u?);
            let c2 = mp::class_coset(&k?, &v?);
            mp::coset_intersect(&c1, &c2).map(|(e, w)| (Elem::Mp(e), w4(w)))
        }
        Group::Np(_) => {
            let [h, u, k, v] = [h, u, k, v].map(NpElement::from_elem);
            let c1 = np::class_coset(&h?, &u?);
            let c2 = np::class_coset(&k?, &v?);
            np::coset_intersect(&c1, &c2).map(|(e, w)| (Elem::Np(e), w4(w)))
        }
        Group::Dihedral(_) => {
            let [h, u, k, v] = [h, u, k, v].map(DihedralElement::from_elem);
            showcase::dihedral_coset_intersect(&h?, &u?, &k?, &v?)?.map(|(e, w)| (Elem::Dihedral(e), wshow(&w)))
        }
        Group::Quaternion(_) => {
            let [h, u, k, v] = [h, u, k, v].map(QuaternionElement::from_elem);
            showcase::quaternion_coset_intersect(&h?, &u?, &k?, &v?)?
                .map(|(e, w)| (Elem::Quaternion(e), wshow(&w)))
        }
    })
}

fn oracle_intersect<G>(g: &G, q: [&Elem; 4], found: Option<&Elem>) -> OracleCheck
where
    G: FiniteGroup,
    G::Elem: ElemVariant,
{
    let run = || -> Result<OracleCheck> {
        let sg = enumerate_group(g, oracle_cap())?;
        let [h, u, k, v] = q.map(G::Elem::from_elem);
        let set = sg.brute_coset_intersect(&h?, &u?, &k?, &v?)?;
        let agrees = match found {
            Some(e) => set.contains(&G::Elem::from_elem(e)?),
            None => set.is_empty(),
        };
        Ok(OracleCheck {
            skipped: None,
            order: Some(sg.order().to_string()),
            result: None,
            size: Some(set.len()),
            agrees,
        })
    };
    run().unwrap_or_else(OracleCheck::skipped)
}

pub fn intersect(file: &IntersectFile, oracle: bool) -> Result<IntersectReport> {
    let group = file.group.parse()?;
    let [h, u, k, v] = [&file.h, &file.u, &file.k, &file.v].map(|e| group.parse_elem(e));
    let (h, u, k, v) = (h?, u?, k?, v?);
    let found = intersect_elems(&group, &h, &u, &k, &v)?;
    let oracle = oracle
        .then(|| with_group!(&group, g => oracle_intersect(g, [&h, &u, &k, &v], found.as_ref().map(|f| &f.0))));
    let (common, witness) = match found {
        Some((e, w)) => (Some(e.to_json()), w),
        None => (None, Vec::new()),
    };
    Ok(IntersectReport { group: file.group.clone(), common, witness, oracle })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub group: GroupJson,
    pub quadruples: u64,
    pub nonempty: u64,
    pub mismatches: u64,
}

/// Largest group order accepted by [`sweep`].
pub const SWEEP_LIMIT: usize = 64;

fn sweep_group<G>(g: &G, group: &Group) -> Result<(u64, u64, u64)>
where
    G: FiniteGroup,
    G::Elem: ElemVariant,
{
    let sg = enumerate_group(g, SWEEP_LIMIT)?;
    let n = sg.order();
    let elems: Vec<Elem> = sg.elements().iter().cloned().map(ElemVariant::into_elem).collect();
    let (mut total, mut nonempty, mut bad) = (0, 0, 0);
    for h in 0..n {
        for u in 0..n {
            for k in 0..n {
                for v in 0..n {
                    total += 1;
                    let truth = sg.coset_intersect_indices(h, u, k, v);
                    let got = intersect_elems(group, &elems[h], &elems[u], &elems[k], &elems[v])?;
                    nonempty += u64::from(!truth.is_empty());
                    let ok = match got {
                        Some((e, _)) => {
                            let idx = sg.index_of(&G::Elem::from_elem(&e)?);
                            idx.is_some_and(|i| truth.contains(&i))
                        }
                        None => truth.is_empty(),
                    };
                    bad += u64::from(!ok);
                }
            }
        }
    }
    Ok((total, nonempty, bad))
}

/// Every quadruple `(h, u, k, v)` of a small group, solver against brute
/// force.
pub fn sweep(group: &GroupJson) -> Result<SweepReport> {
    let g = group.parse()?;
    let (quadruples, nonempty, mismatches) = with_group!(&g, inner => sweep_group(inner, &g))?;
    Ok(SweepReport { group: group.clone(), quadruples, nonempty, mismatches })
}
