//! File formats. Every residue is a decimal string.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::esp::{EspElement, EspParams, Factor};
use crate::modlin::Residue;
use crate::mp::{MpElement, MpParams};
use crate::np::{NpElement, NpParams};
use crate::oracle::GroupDescriptor;
use crate::showcase::{Dihedral, DihedralElement, Quaternion, QuaternionElement};

pub fn dec<T: FromStr>(field: &str, s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("{field}: expected a decimal integer, got {s:?}")))
}

fn residue(field: &str, s: &str, modulus: u128) -> Result<Residue> {
    let value: u128 = dec(field, s)?;
    if value >= modulus {
        return Err(Error::ExponentOutOfRange { value, modulus });
    }
    Ok(Residue::new(value, modulus))
}

fn need<'a>(field: &str, v: &'a Option<String>) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Parse(format!("missing field {field:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupJson {
    Esp { p: String, r: String, s: String },
    Mp { p: String },
    Np { p: String },
    Dihedral { n: String },
    Quaternion { n: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MPartJson {
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NPartJson {
    pub x: String,
    pub z: String,
}

/// An element of any supported group. Which fields apply depends on the
/// group kind:
///
/// * `mp`: `a`, `b` for `x^a y^b`
/// * `np`: `a`, `b`, `c` for `x^a y^b z^c`
/// * `dihedral`, `quaternion`: `i`, `j` for `x^i y^j`
/// * `esp`: canonical `m`, `n`, `zc`, or `factors`, a list of `mp`/`np`
///   words (one per factor) whose product is the element
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<MPartJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<NPartJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zc: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<ElementJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub group: GroupJson,
    pub g_tilde: ElementJson,
    pub g_prime: ElementJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_conjugator: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectFile {
    pub group: GroupJson,
    pub h: ElementJson,
    pub u: ElementJson,
    pub k: ElementJson,
    pub v: ElementJson,
}

/// A parsed group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Esp(EspParams),
    Mp(MpParams),
    Np(NpParams),
    Dihedral(Dihedral),
    Quaternion(Quaternion),
}

/// A parsed element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Esp(EspElement),
    Mp(MpElement),
    Np(NpElement),
    Dihedral(DihedralElement),
    Quaternion(QuaternionElement),
}

impl GroupJson {
    pub fn parse(&self) -> Result<Group> {
        Ok(match self {
            GroupJson::Esp { p, r, s } => Group::Esp(EspParams::new(dec("p", p)?, dec("r", r)?, dec("s", s)?)?),
            GroupJson::Mp { p } => Group::Mp(MpParams::new(dec("p", p)?)?),
            GroupJson::Np { p } => Group::Np(NpParams::new(dec("p", p)?)?),
            GroupJson::Dihedral { n } => Group::Dihedral(Dihedral::new(dec("n", n)?)?),
            GroupJson::Quaternion { n } => Group::Quaternion(Quaternion::new(dec("n", n)?)?),
        })
    }
}

impl Group {
    pub fn to_json(&self) -> GroupJson {
        match self {
            Group::Esp(g) => GroupJson::Esp { p: g.p().to_string(), r: g.r().to_string(), s: g.s().to_string() },
            Group::Mp(g) => GroupJson::Mp { p: g.p().to_string() },
            Group::Np(g) => GroupJson::Np { p: g.p().to_string() },
            Group::Dihedral(g) => GroupJson::Dihedral { n: g.n().to_string() },
            Group::Quaternion(g) => GroupJson::Quaternion { n: g.n().to_string() },
        }
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        match *self {
            Group::Esp(g) => GroupDescriptor::Esp { p: g.p(), r: g.r(), s: g.s() },
            Group::Mp(g) => GroupDescriptor::Mp { p: g.p() },
            Group::Np(g) => GroupDescriptor::Np { p: g.p() },
            Group::Dihedral(g) => GroupDescriptor::Dihedral { n: g.n() },
            Group::Quaternion(g) => GroupDescriptor::Quaternion { n: g.n() },
        }
    }

    pub fn identity(&self) -> Elem {
        match self {
            Group::Esp(g) => Elem::Esp(g.identity()),
            Group::Mp(g) => Elem::Mp(g.identity()),
            Group::Np(g) => Elem::Np(g.identity()),
            Group::Dihedral(g) => Elem::Dihedral(g.identity()),
            Group::Quaternion(g) => Elem::Quaternion(g.identity()),
        }
    }

    pub fn parse_elem(&self, e: &ElementJson) -> Result<Elem> {
        match self {
            Group::Esp(g) => parse_esp(g, e).map(Elem::Esp),
            Group::Mp(g) => parse_mp(g, e).map(Elem::Mp),
            Group::Np(g) => parse_np(g, e).map(Elem::Np),
            Group::Dihedral(g) => {
                let (i, j) = parse_ij(g.n(), e)?;
                Ok(Elem::Dihedral(g.element(i, j)?))
            }
            Group::Quaternion(g) => {
                let (i, j) = parse_ij(g.big_n(), e)?;
                Ok(Elem::Quaternion(g.element(i, j)?))
            }
        }
    }
}

fn parse_mp(g: &MpParams, e: &ElementJson) -> Result<MpElement> {
    let a = residue("a", need("a", &e.a)?, g.p_squared())?;
    let b = residue("b", need("b", &e.b)?, g.p() as u128)?;
    MpElement::from_residues(a, b)
}

fn parse_np(g: &NpParams, e: &ElementJson) -> Result<NpElement> {
    let p = g.p() as u128;
    let a = residue("a", need("a", &e.a)?, p)?;
    let b = residue("b", need("b", &e.b)?, p)?;
    let c = residue("c", need("c", &e.c)?, p)?;
    NpElement::from_residues(a, b, c)
}

fn parse_ij(modulus: u128, e: &ElementJson) -> Result<(u128, u8)> {
    let i = residue("i", need("i", &e.i)?, modulus)?.value();
    let j = residue("j", need("j", &e.j)?, 2)?.value() as u8;
    Ok((i, j))
}

fn parse_esp(g: &EspParams, e: &ElementJson) -> Result<EspElement> {
    if let Some(words) = &e.factors {
        if e.m.is_some() || e.n.is_some() || e.zc.is_some() {
            return Err(Error::Parse("give either `factors` or `m`/`n`/`zc`, not both".into()));
        }
        if words.len() != g.factor_count() {
            return Err(Error::Parse(format!("expected {} factors, got {}", g.factor_count(), words.len())));
        }
        let raw = words
            .iter()
            .enumerate()
            .map(|(idx, w)| {
                if idx < g.r() {
                    parse_mp(&g.mp(), w).map(Factor::M)
                } else {
                    parse_np(&g.np(), w).map(Factor::N)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        return g.normalize(&raw);
    }
    let p = g.p() as u128;
    let m = e.m.as_deref().unwrap_or_default();
    let n = e.n.as_deref().unwrap_or_default();
    let m = m
        .iter()
        .map(|u| Ok((residue("m.x", &u.x, p)?.value(), residue("m.y", &u.y, p)?.value())))
        .collect::<Result<Vec<_>>>()?;
    let n = n
        .iter()
        .map(|u| Ok((residue("n.x", &u.x, p)?.value(), residue("n.z", &u.z, p)?.value())))
        .collect::<Result<Vec<_>>>()?;
    let zc = residue("zc", need("zc", &e.zc)?, p)?.value();
    g.element(&m, &n, zc).map_err(|err| Error::Parse(err.to_string()))
}

impl Elem {
    pub fn to_json(&self) -> ElementJson {
        let s = |r: Residue| Some(r.value().to_string());
        match self {
            Elem::Esp(e) => esp_json(e),
            Elem::Mp(e) => ElementJson { a: s(e.a()), b: s(e.b()), ..Default::default() },
            Elem::Np(e) => ElementJson { a: s(e.a()), b: s(e.b()), c: s(e.c()), ..Default::default() },
            Elem::Dihedral(e) => ElementJson { i: s(e.i()), j: Some(e.j().to_string()), ..Default::default() },
            Elem::Quaternion(e) => ElementJson { i: s(e.i()), j: Some(e.j().to_string()), ..Default::default() },
        }
    }

    pub fn conjugate_by(&self, h: &Elem) -> Result<Elem> {
        Ok(match (self, h) {
            (Elem::Esp(g), Elem::Esp(h)) => Elem::Esp(g.checked_conjugate_by(h)?),
            (Elem::Mp(g), Elem::Mp(h)) if g.params() == h.params() => Elem::Mp(g.conjugate_by(h)),
            (Elem::Np(g), Elem::Np(h)) if g.params() == h.params() => Elem::Np(g.conjugate_by(h)),
            (Elem::Dihedral(g), Elem::Dihedral(h)) if g.group() == h.group() => Elem::Dihedral(g.conjugate_by(h)),
            (Elem::Quaternion(g), Elem::Quaternion(h)) if g.group() == h.group() => {
                Elem::Quaternion(g.conjugate_by(h))
            }
            _ => return Err(Error::ParamMismatch),
        })
    }
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Elem::Esp(e) => write!(f, "{e}"),
            Elem::Mp(e) => write!(f, "{e}"),
            Elem::Np(e) => write!(f, "{e}"),
            Elem::Dihedral(e) => write!(f, "{e}"),
            Elem::Quaternion(e) => write!(f, "{e}"),
        }
    }
}

pub fn esp_json(e: &EspElement) -> ElementJson {
    ElementJson {
        m: Some(e.m_parts().iter().map(|u| MPartJson { x: u.x.to_string(), y: u.y.to_string() }).collect()),
        n: Some(e.n_parts().iter().map(|u| NPartJson { x: u.x.to_string(), z: u.z.to_string() }).collect()),
        zc: Some(e.zc().to_string()),
        ..Default::default()
    }
}

pub fn factor_json(f: &Factor) -> ElementJson {
    match f {
        Factor::M(u) => Elem::Mp(*u).to_json(),
        Factor::N(u) => Elem::Np(*u).to_json(),
    }
}

/// Paths of the leaves at which two JSON values differ.
pub fn json_diff(a: &serde_json::Value, b: &serde_json::Value) -> Vec<String> {
    fn walk(a: &serde_json::Value, b: &serde_json::Value, path: &str, out: &mut Vec<String>) {
        use serde_json::Value;
        match (a, b) {
            (Value::Object(x), Value::Object(y)) => {
                let keys: std::collections::BTreeSet<_> = x.keys().chain(y.keys()).collect();
                for k in keys {
                    let sub = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    walk(x.get(k).unwrap_or(&Value::Null), y.get(k).unwrap_or(&Value::Null), &sub, out);
                }
            }
            (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
                for (i, (u, v)) in x.iter().zip(y).enumerate() {
                    walk(u, v, &format!("{path}[{i}]"), out);
                }
            }
            _ if a != b => out.push(path.to_string()),
            _ => {}
        }
    }
    let mut out = Vec::new();
    walk(a, b, "", &mut out);
    out
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
