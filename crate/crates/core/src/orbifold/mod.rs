//! Base 2-orbifold groups: descriptors, geometry, the exceptional generating
//! pairs, free product normal forms and an exact word problem for triangle
//! groups.

mod catalog;
mod field;
mod free_product;
mod tits;
mod triangle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::OracleError;
use crate::words::Generator;

pub use catalog::{exceptional_catalog, verify_remark, CatalogEntry, RemarkCase, RemarkReport};
pub use field::{FieldElement, NumberField};
pub use free_product::{fp_normal_form, FreeProductNF, Syllable};
pub use tits::{TriangleMatrix, TriangleRep};
pub use triangle::{
    conjugate_to_inverse_base, triangle_equal, BaseConjugacy, TriangleGroup,
    DEFAULT_CONJUGATOR_RADIUS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error("cone order {0} is below 2")]
    ParameterTooSmall(u32),
    #[error("parameter l must be at least 1")]
    BadL,
    #[error("cannot parse base descriptor `{0}`")]
    BadDescriptor(String),
    #[error("unsupported base {0} for this operation")]
    Unsupported(String),
    #[error("word uses generator `{0}` outside the base alphabet")]
    ForeignGenerator(Generator),
    #[error("finite oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("coset enumeration of the spherical group overflowed")]
    EnumerationOverflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeometryClass {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryClass::Spherical => "spherical",
            GeometryClass::Euclidean => "euclidean",
            GeometryClass::Hyperbolic => "hyperbolic",
        })
    }
}

/// Compares `1/p + 1/q + 1/r` with 1 in integer arithmetic.
pub fn geometry_class(p: u32, q: u32, r: u32) -> Result<GeometryClass, OrbifoldError> {
    for m in [p, q, r] {
        if m < 2 {
            return Err(OrbifoldError::ParameterTooSmall(m));
        }
    }
    let (p, q, r) = (p as u64, q as u64, r as u64);
    let lhs = q * r + p * r + p * q;
    let rhs = p * q * r;
    Ok(match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => GeometryClass::Spherical,
        std::cmp::Ordering::Equal => GeometryClass::Euclidean,
        std::cmp::Ordering::Less => GeometryClass::Hyperbolic,
    })
}

/// Base orbifolds with 2-generated fundamental group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseOrbifold {
    /// Sphere with three cone points.
    Triangle {
        p: u32,
        q: u32,
        r: u32,
    },
    /// Projective plane with two cone points.
    Projective {
        p: u32,
        q: u32,
    },
    /// `S²(2,2,2,2l+1)`.
    FourCone {
        l: u32,
    },
    Torus,
    KleinBottle,
    TorusCone {
        p: u32,
    },
    KleinBottleCone {
        p: u32,
    },
}

impl BaseOrbifold {
    pub fn triangle(p: u32, q: u32, r: u32) -> Result<BaseOrbifold, OrbifoldError> {
        let b = BaseOrbifold::Triangle { p, q, r };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), OrbifoldError> {
        let check = |m: u32| {
            if m < 2 {
                Err(OrbifoldError::ParameterTooSmall(m))
            } else {
                Ok(())
            }
        };
        match *self {
            BaseOrbifold::Triangle { p, q, r } => {
                check(p)?;
                check(q)?;
                check(r)
            }
            BaseOrbifold::Projective { p, q } => {
                check(p)?;
                check(q)
            }
            BaseOrbifold::FourCone { l } => {
                if l < 1 {
                    Err(OrbifoldError::BadL)
                } else {
                    Ok(())
                }
            }
            BaseOrbifold::TorusCone { p } | BaseOrbifold::KleinBottleCone { p } => check(p),
            BaseOrbifold::Torus | BaseOrbifold::KleinBottle => Ok(()),
        }
    }

    /// Geometry of the orbifold, from its Euler characteristic.
    pub fn geometry(&self) -> GeometryClass {
        match *self {
            BaseOrbifold::Triangle { p, q, r } => {
                geometry_class(p, q, r).expect("validated parameters")
            }
            // χ = 1 - (1 - 1/p) - (1 - 1/q) = 1/p + 1/q - 1
            BaseOrbifold::Projective { p, q } => {
                if p == 2 && q == 2 {
                    GeometryClass::Euclidean
                } else {
                    GeometryClass::Hyperbolic
                }
            }
            BaseOrbifold::FourCone { .. } => GeometryClass::Hyperbolic,
            BaseOrbifold::Torus | BaseOrbifold::KleinBottle => GeometryClass::Euclidean,
            BaseOrbifold::TorusCone { .. } | BaseOrbifold::KleinBottleCone { .. } => {
                GeometryClass::Hyperbolic
            }
        }
    }
}

impl fmt::Display for BaseOrbifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BaseOrbifold::Triangle { p, q, r } => write!(f, "S2({p},{q},{r})"),
            BaseOrbifold::Projective { p, q } => write!(f, "P2({p},{q})"),
            BaseOrbifold::FourCone { l } => write!(f, "S2(2,2,2,2l+1;l={l})"),
            BaseOrbifold::Torus => f.write_str("T2"),
            BaseOrbifold::KleinBottle => f.write_str("KB"),
            BaseOrbifold::TorusCone { p } => write!(f, "T2(p={p})"),
            BaseOrbifold::KleinBottleCone { p } => write!(f, "KB(p={p})"),
        }
    }
}

impl FromStr for BaseOrbifold {
    type Err = OrbifoldError;

    /// Accepts `S2(2,3,7)`, `P2(3,2)`, `S2(2,2,2,2l+1;l=3)`, `T2`, `KB`,
    /// `T2(p=4)` and `KB(p=5)`, case-sensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OrbifoldError::BadDescriptor(s.to_string());
        let num = |t: &str| -> Result<u32, OrbifoldError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        let base = match s {
            "T2" => BaseOrbifold::Torus,
            "KB" => BaseOrbifold::KleinBottle,
            _ => {
                if let Some(rest) = s.strip_prefix("S2(2,2,2,2l+1;l=") {
                    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
                    BaseOrbifold::FourCone { l: num(inner)? }
                } else if let Some(rest) = s.strip_prefix("S2(") {
                    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
                    let parts: Vec<&str> = inner.split(',').collect();
                    let [p, q, r] = parts.as_slice() else {
                        return Err(bad());
                    };
                    BaseOrbifold::Triangle {
                        p: num(p)?,
                        q: num(q)?,
                        r: num(r)?,
                    }
                } else if let Some(rest) = s.strip_prefix("P2(") {
                    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
                    let parts: Vec<&str> = inner.split(',').collect();
                    let [p, q] = parts.as_slice() else {
                        return Err(bad());
                    };
                    BaseOrbifold::Projective {
                        p: num(p)?,
                        q: num(q)?,
                    }
                } else if let Some(rest) = s.strip_prefix("T2(p=") {
                    BaseOrbifold::TorusCone {
                        p: num(rest.strip_suffix(')').ok_or_else(bad)?)?,
                    }
                } else if let Some(rest) = s.strip_prefix("KB(p=") {
                    BaseOrbifold::KleinBottleCone {
                        p: num(rest.strip_suffix(')').ok_or_else(bad)?)?,
                    }
                } else {
                    return Err(bad());
                }
            }
        };
        base.validate()?;
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_examples() {
        assert_eq!(geometry_class(2, 3, 6).unwrap(), GeometryClass::Euclidean);
        assert_eq!(geometry_class(2, 3, 7).unwrap(), GeometryClass::Hyperbolic);
        assert_eq!(geometry_class(2, 3, 5).unwrap(), GeometryClass::Spherical);
        assert_eq!(
            geometry_class(1, 3, 5),
            Err(OrbifoldError::ParameterTooSmall(1))
        );
    }

    #[test]
    fn euclidean_triples_below_fifty() {
        let mut found = Vec::new();
        for p in 2..=50 {
            for q in p..=50 {
                for r in q..=50 {
                    if geometry_class(p, q, r).unwrap() == GeometryClass::Euclidean {
                        found.push((p, q, r));
                    }
                }
            }
        }
        assert_eq!(found, [(2, 3, 6), (2, 4, 4), (3, 3, 3)]);
    }

    #[test]
    fn descriptor_round_trip() {
        for s in [
            "S2(2,3,7)",
            "P2(3,2)",
            "S2(2,2,2,2l+1;l=3)",
            "T2",
            "KB",
            "T2(p=4)",
            "KB(p=5)",
        ] {
            let b: BaseOrbifold = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
        }
    }

    #[test]
    fn descriptor_errors() {
        for s in [
            "s2(2,3,7)",
            "S2(2,3)",
            "S2(2,3,7",
            "T2(4)",
            "kb",
            "S2(2,a,7)",
            "S2(2,3,-7)",
        ] {
            assert!(
                matches!(
                    s.parse::<BaseOrbifold>(),
                    Err(OrbifoldError::BadDescriptor(_))
                ),
                "{s}"
            );
        }
        assert_eq!(
            "S2(1,3,7)".parse::<BaseOrbifold>(),
            Err(OrbifoldError::ParameterTooSmall(1))
        );
        assert_eq!(
            "S2(2,2,2,2l+1;l=0)".parse::<BaseOrbifold>(),
            Err(OrbifoldError::BadL)
        );
    }
}
