//! Report-level classifier over the algebraically decided families.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::criteria::{
    brieskorn_report, case23r_report, exceptional_pair, find_inner_inversion, Family,
};
use super::{torus_kb_pair_check, SeifertError, SeifertPresentation, TwistedPresentation};
use crate::orbifold::{BaseOrbifold, GeometryClass};

const SEARCH_RADIUS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairType {
    /// Both generators map to elliptic elements of the base group.
    Elliptic,
    Exceptional,
}

/// `seifert base=<base> e1=<n> e2=<n> fiberExp=<n> [eta=<n>] [pairs=elliptic|exceptional]`
/// or `graph c1=<bool> c2=<bool> c3=<bool> c4=<bool> [delta=<n>]`, where
/// `c1..c4` are the four gluing conditions for a twisted I-bundle glued to a
/// torus-knot exterior and `delta` is the fiber intersection number `Δ(f1, f2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyDescriptor {
    Seifert {
        base: BaseOrbifold,
        e1: i64,
        e2: i64,
        fiber_exp: i64,
        pairs: PairType,
    },
    Graph {
        conditions: [bool; 4],
    },
}

fn bad(msg: impl Into<String>) -> SeifertError {
    SeifertError::UnsupportedDescriptor(msg.into())
}

fn int(key: &str, v: &str) -> Result<i64, SeifertError> {
    v.parse()
        .map_err(|_| bad(format!("`{key}` is not an integer: `{v}`")))
}

impl FromStr for FamilyDescriptor {
    type Err = SeifertError;

    fn from_str(s: &str) -> Result<Self, SeifertError> {
        let mut tokens = s.split_whitespace();
        let kind = tokens.next().ok_or_else(|| bad("empty descriptor"))?;
        let mut kv = Vec::new();
        for t in tokens {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got `{t}`")))?;
            if kv.iter().any(|(k2, _)| *k2 == k) {
                return Err(bad(format!("duplicate key `{k}`")));
            }
            kv.push((k, v));
        }
        let get = |k: &str| kv.iter().find(|(k2, _)| *k2 == k).map(|(_, v)| *v);
        let need = |k: &str| get(k).ok_or_else(|| bad(format!("missing key `{k}`")));
        let check_keys = |allowed: &[&str]| -> Result<(), SeifertError> {
            match kv.iter().find(|(k, _)| !allowed.contains(k)) {
                Some((k, _)) => Err(bad(format!("unknown key `{k}`"))),
                None => Ok(()),
            }
        };
        match kind {
            "seifert" => {
                check_keys(&["base", "e1", "e2", "fiberExp", "eta", "pairs"])?;
                let base: BaseOrbifold = need("base")?.parse()?;
                let e1 = get("e1").map(|v| int("e1", v)).transpose()?.unwrap_or(1);
                let eta = get("eta").map(|v| int("eta", v)).transpose()?;
                let e2 = match (get("e2").map(|v| int("e2", v)).transpose()?, eta) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(bad(format!("e2={a} conflicts with eta={b}")))
                    }
                    (Some(a), _) | (None, Some(a)) => a,
                    (None, None) => 1,
                };
                let fiber_exp = int("fiberExp", need("fiberExp")?)?;
                let pairs = match get("pairs").unwrap_or("exceptional") {
                    "elliptic" => PairType::Elliptic,
                    "exceptional" => PairType::Exceptional,
                    other => return Err(bad(format!("unknown pair type `{other}`"))),
                };
                Ok(FamilyDescriptor::Seifert {
                    base,
                    e1,
                    e2,
                    fiber_exp,
                    pairs,
                })
            }
            "graph" => {
                check_keys(&["c1", "c2", "c3", "c4", "delta"])?;
                let mut conditions = [false; 4];
                for (i, c) in conditions.iter_mut().enumerate() {
                    let key = format!("c{}", i + 1);
                    *c = match get(&key) {
                        Some("true") => true,
                        Some("false") | None => false,
                        Some(v) => {
                            return Err(bad(format!("`{key}` must be true or false, got `{v}`")))
                        }
                    };
                }
                if let Some(d) = get("delta") {
                    let d = int("delta", d)?;
                    if get("c2").is_some() && conditions[1] != (d.abs() == 1) {
                        return Err(bad(format!("c2 conflicts with delta={d}")));
                    }
                    conditions[1] = d.abs() == 1;
                }
                Ok(FamilyDescriptor::Graph { conditions })
            }
            other => Err(bad(format!("unknown family kind `{other}`"))),
        }
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::Seifert {
                base,
                e1,
                e2,
                fiber_exp,
                pairs,
            } => {
                let pairs = match pairs {
                    PairType::Elliptic => "elliptic",
                    PairType::Exceptional => "exceptional",
                };
                write!(
                    f,
                    "seifert base={base} e1={e1} e2={e2} fiberExp={fiber_exp} pairs={pairs}"
                )
            }
            FamilyDescriptor::Graph { conditions: c } => {
                write!(f, "graph c1={} c2={} c3={} c4={}", c[0], c[1], c[2], c[3])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub descriptor: String,
    pub verdict: String,
    /// Which result the verdict rests on.
    pub rule: String,
    /// `Some(true)` inversion exists, `Some(false)` excluded, `None` open.
    pub inversion: Option<bool>,
    pub evidence: Vec<String>,
}

pub fn classify_family(descriptor: &FamilyDescriptor) -> Result<Classification, SeifertError> {
    let out = |verdict: &str, rule: &str, inversion, evidence| Classification {
        descriptor: descriptor.to_string(),
        verdict: verdict.to_string(),
        rule: rule.to_string(),
        inversion,
        evidence,
    };
    match *descriptor {
        FamilyDescriptor::Graph { conditions } => {
            if conditions.iter().all(|&c| c) {
                Ok(out(
                    "rank 2, genus 3, no inversion",
                    "graph manifolds with a twisted I-bundle piece satisfying the four gluing conditions",
                    Some(false),
                    vec!["conditions c1..c4 supplied by the caller".into()],
                ))
            } else {
                let missing: Vec<String> = (1..=4)
                    .filter(|i| !conditions[i - 1])
                    .map(|i| format!("c{i}"))
                    .collect();
                Err(bad(format!(
                    "graph manifold without conditions {} is outside the decided families",
                    missing.join(",")
                )))
            }
        }
        FamilyDescriptor::Seifert {
            base,
            e1,
            e2,
            fiber_exp,
            pairs,
        } => classify_seifert(base, e1, e2, fiber_exp, pairs, out),
    }
}

fn classify_seifert(
    base: BaseOrbifold,
    e1: i64,
    e2: i64,
    fiber_exp: i64,
    pairs: PairType,
    out: impl Fn(&str, &str, Option<bool>, Vec<String>) -> Classification,
) -> Result<Classification, SeifertError> {
    base.validate()?;
    match base {
        BaseOrbifold::Torus
        | BaseOrbifold::KleinBottle
        | BaseOrbifold::TorusCone { .. }
        | BaseOrbifold::KleinBottleCone { .. } => {
            let t = TwistedPresentation::new(base)?;
            let r = torus_kb_pair_check(1, 1);
            return Ok(out(
                "inversion exists; every generating pair is conjugate to a twisted standard pair",
                "torus and Klein bottle bases",
                Some(true),
                vec![format!(
                    "fiber action {:?}; twisted standard pair identities torus={} klein_bottle={}",
                    t.action, r.torus, r.klein_bottle
                )],
            ));
        }
        BaseOrbifold::Triangle { .. } => {}
        other => return Err(bad(format!("base {other} is outside the decided families"))),
    }
    let BaseOrbifold::Triangle { p, q, r } = base else {
        unreachable!()
    };
    if base.geometry() == GeometryClass::Spherical {
        return Err(bad(format!(
            "spherical base {base} is outside the decided families"
        )));
    }
    if pairs == PairType::Elliptic {
        SeifertPresentation::triangle(p, q, r, e1, e2, fiber_exp)?;
        return Ok(out(
            "inversion exists; Heegaard genus 2",
            "pairs mapping to elliptic elements of the base are inverted by the Montesinos involution",
            Some(true),
            vec![format!("base {base} has elliptic generators s1, s2 of orders {p}, {q}")],
        ));
    }
    let family = Family::from_orders(p, q)
        .ok_or_else(|| bad(format!("no exceptional family over {base}")))?;
    let want_e2 = if family == Family::ThreeThree { e2 } else { 1 };
    if e1 != 1 || e2 != want_e2 || (family == Family::ThreeThree && e2.abs() != 1) {
        return Err(bad(format!(
            "exceptional families need e1=1 and e2={}, got e1={e1} e2={e2}",
            if family == Family::ThreeThree {
                "±1"
            } else {
                "1"
            }
        )));
    }
    let (k, l) = match family {
        Family::ThreeThree => (0, 0),
        _ => (-1, -1),
    };
    let report = case23r_report(family, r, fiber_exp, k, l, e2)?;
    let mut evidence = vec![format!(
        "exceptional pair at k={k} l={l}: fiber intersection d={}, generates={}, conjugacy condition={}",
        report.intersection.d, report.generates, report.conjugacy_condition
    )];
    let mut invertible = false;
    if report.invertible_candidate {
        let pres = SeifertPresentation::triangle(p, q, r, 1, e2, fiber_exp)?;
        match find_inner_inversion(&pres, &exceptional_pair(family, k, l), SEARCH_RADIUS)? {
            super::InnerInversion::YesWithWitness(w) => {
                evidence.push(format!("inner inversion witness {w}"));
                invertible = true;
            }
            other => evidence.push(format!("inner inversion search: {other:?}")),
        }
    }
    if (p, q, r) == (2, 3, 7) {
        let b = brieskorn_report(fiber_exp, fiber_exp - 8, 3 - fiber_exp)?;
        evidence.push(format!(
            "second (2,3,7) pair at k={} l={}: index={} generates={} witness verified={}",
            b.k, b.l, b.constrained_index, b.generates, b.witness_verified
        ));
        if !b.constrained_index.is_one() {
            evidence.push("constraint fiberExp=6 fails".into());
        }
        invertible |= b.invertible;
    }
    if invertible {
        Ok(out(
            "inversion exists; Heegaard genus 2",
            "generating exceptional pair with an inner inversion",
            Some(true),
            evidence,
        ))
    } else if report.invertible_candidate {
        Ok(out(
            "invertible candidate; no inner witness found",
            "exceptional pair criteria",
            None,
            evidence,
        ))
    } else {
        Ok(out(
            "no invertible pair in the studied families",
            "exceptional pair criteria",
            Some(false),
            evidence,
        ))
    }
}
