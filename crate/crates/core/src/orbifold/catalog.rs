//! Known generating pairs of the 2-generated base groups, and the
//! commutator identities of the exceptional triangle-group pairs.

use serde::{Deserialize, Serialize};

use super::free_product::fp_normal_form;
use super::triangle::TriangleGroup;
use super::{BaseOrbifold, GeometryClass};
use crate::words::{parse_word, GeneratingPair, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub pair: GeneratingPair,
    pub label: String,
}

fn entry(g: &str, h: &str, label: &str) -> CatalogEntry {
    CatalogEntry {
        pair: GeneratingPair::new(
            parse_word(g).expect("catalog word"),
            parse_word(h).expect("catalog word"),
        ),
        label: label.to_string(),
    }
}

pub(crate) const CASE_A: (&str, &str) = ("s1 s2 s1 s2^-1", "s2^-1 s1 s2 s1");
pub(crate) const CASE_B: (&str, &str) = ("s1 s2^2", "s2^-1 s1 s2^-1");
pub(crate) const CASE_C: (&str, &str) = ("s1 s2^-1", "s2^-1 s1");
pub(crate) const CASE_D: (&str, &str) = (
    "s1 s2^-1 s1 s2 s1 s2^-1 s1 s2^-1 s1 s2",
    "s2^-1 s1 s2 s1 s2^-1 s1 s2 s1 s2 s1",
);

/// Representatives of the Nielsen classes of generating pairs, with labels.
pub fn exceptional_catalog(base: &BaseOrbifold) -> Vec<CatalogEntry> {
    if base.validate().is_err() {
        return Vec::new();
    }
    match *base {
        BaseOrbifold::Torus
        | BaseOrbifold::KleinBottle
        | BaseOrbifold::TorusCone { .. }
        | BaseOrbifold::KleinBottleCone { .. } => vec![entry("a", "b", "standard")],
        BaseOrbifold::Projective { p, q } => {
            let mut out = vec![entry("x", "s1", "standard")];
            if p == 2 && q % 2 == 1 {
                out.push(entry("x^2", "x s1", "square"));
            }
            out
        }
        BaseOrbifold::FourCone { .. } => vec![entry("s1 s2", "s1 s3", "standard")],
        BaseOrbifold::Triangle { p, q, r } => {
            let mut out = vec![entry("s1", "s2", "standard")];
            if base.geometry() != GeometryClass::Hyperbolic {
                return out;
            }
            if (p, q) == (2, 3) && r % 2 == 1 && r % 3 != 0 {
                out.push(entry(CASE_A.0, CASE_A.1, "case-a"));
            }
            if (p, q) == (2, 4) && r % 2 == 1 {
                out.push(entry(CASE_B.0, CASE_B.1, "case-b"));
            }
            if (p, q) == (3, 3) && r % 3 != 0 {
                out.push(entry(CASE_C.0, CASE_C.1, "case-c"));
            }
            if (p, q, r) == (2, 3, 7) {
                out.push(entry(CASE_D.0, CASE_D.1, "case-d"));
            }
            out
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RemarkCase {
    A,
    B,
    C,
    D,
}

impl RemarkCase {
    pub const ALL: [RemarkCase; 4] = [RemarkCase::A, RemarkCase::B, RemarkCase::C, RemarkCase::D];

    pub fn parse(s: &str) -> Option<RemarkCase> {
        match s {
            "a" => Some(RemarkCase::A),
            "b" => Some(RemarkCase::B),
            "c" => Some(RemarkCase::C),
            "d" => Some(RemarkCase::D),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RemarkCase::A => "a",
            RemarkCase::B => "b",
            RemarkCase::C => "c",
            RemarkCase::D => "d",
        }
    }

    /// Triangle group used for the check.
    pub fn triple(self) -> (u32, u32, u32) {
        match self {
            RemarkCase::A => (2, 3, 7),
            RemarkCase::B => (2, 4, 5),
            RemarkCase::C => (3, 3, 4),
            RemarkCase::D => (2, 3, 7),
        }
    }

    /// The power of `s1 s2` the commutator is asserted to equal.
    pub fn claimed_power(self) -> i64 {
        match self {
            RemarkCase::A => 6,
            RemarkCase::B => 4,
            RemarkCase::C => 3,
            RemarkCase::D => 4,
        }
    }

    pub fn pair(self) -> GeneratingPair {
        let (g, h) = match self {
            RemarkCase::A => CASE_A,
            RemarkCase::B => CASE_B,
            RemarkCase::C => CASE_C,
            RemarkCase::D => CASE_D,
        };
        GeneratingPair::new(parse_word(g).unwrap(), parse_word(h).unwrap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkReport {
    pub case: RemarkCase,
    pub claimed_power: i64,
    /// `k` with `[g',h'] = (s1 s2)^k` in `Z_p * Z_q`, if any.
    pub free_product_power: Option<i64>,
    pub holds_in_free_product: bool,
    /// `k` in `0..r` with `[g',h'] = (s1 s2)^k` in `Δ(p,q,r)`, if any.
    pub triangle_power: Option<i64>,
    pub holds_in_triangle_group: bool,
}

const POWER_SEARCH: i64 = 32;

pub fn verify_remark(case: RemarkCase) -> RemarkReport {
    let (p, q, r) = case.triple();
    let pair = case.pair();
    let comm = pair.commutator();
    let s12 = parse_word("s1 s2").unwrap();
    let nf = |w: &Word| fp_normal_form(w, p, q).expect("words over s1, s2");
    let target = nf(&comm);
    // in Z_p * Z_q, s1 s2 has infinite order, so at most one k matches
    let free_product_power = (-POWER_SEARCH..=POWER_SEARCH).find(|&k| nf(&s12.pow(k)) == target);
    let group = TriangleGroup::new(p, q, r).expect("hyperbolic triple");
    let triangle_power = (0..r as i64).find(|&k| group.equal(&comm, &s12.pow(k)).unwrap());
    let claimed = case.claimed_power();
    let holds_in_triangle_group = group.equal(&comm, &s12.pow(claimed)).unwrap();
    RemarkReport {
        case,
        claimed_power: claimed,
        free_product_power,
        holds_in_free_product: free_product_power == Some(claimed),
        triangle_power,
        holds_in_triangle_group,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_three_seven_catalog() {
        let cat = exceptional_catalog(&"S2(2,3,7)".parse().unwrap());
        let labels: Vec<&str> = cat.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["standard", "case-a", "case-d"]);
        assert_eq!(
            cat[2].pair.first.to_string(),
            "s1 s2^-1 s1 s2 s1 s2^-1 s1 s2^-1 s1 s2"
        );
    }

    #[test]
    fn other_catalogs() {
        let cat = exceptional_catalog(&"S2(3,3,4)".parse().unwrap());
        assert_eq!(cat.len(), 2);
        assert_eq!(cat[1].pair.first.to_string(), "s1 s2^-1");
        assert_eq!(cat[1].pair.second.to_string(), "s2^-1 s1");
        let cat = exceptional_catalog(&"S2(2,2,2,2l+1;l=2)".parse().unwrap());
        assert_eq!(cat[0].pair.second.to_string(), "s1 s3");
        assert_eq!(exceptional_catalog(&"S2(2,3,6)".parse().unwrap()).len(), 1);
        assert_eq!(exceptional_catalog(&"S2(2,4,5)".parse().unwrap()).len(), 2);
        assert_eq!(exceptional_catalog(&"P2(2,3)".parse().unwrap()).len(), 2);
    }

    #[test]
    fn remark_cases() {
        let a = verify_remark(RemarkCase::A);
        assert_eq!(a.free_product_power, Some(6));
        assert!(a.holds_in_free_product && a.holds_in_triangle_group);
        let c = verify_remark(RemarkCase::C);
        assert_eq!(c.free_product_power, Some(3));
        assert!(c.holds_in_free_product);
        let d = verify_remark(RemarkCase::D);
        assert!(!d.holds_in_free_product);
        assert!(d.holds_in_triangle_group);
    }

    #[test]
    fn remark_case_b() {
        let b = verify_remark(RemarkCase::B);
        assert_eq!(b.free_product_power, Some(4));
        assert!(b.holds_in_free_product && b.holds_in_triangle_group);
    }
}
