//! Word problem and a conjugacy semi-decision for `Δ(p,q,r)`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::tits::{TriangleMatrix, TriangleRep};
use super::{BaseOrbifold, GeometryClass, OrbifoldError};
use crate::oracle::{
    quotient_refute, todd_coxeter, Claim, CosetTable, FiniteHom, FinitePresentation, Refutation,
    DEFAULT_MAX_COSETS,
};
use crate::words::{Generator, Letter, Word};

pub const DEFAULT_CONJUGATOR_RADIUS: usize = 12;

/// BFS letter order.
const LETTERS: [Letter; 4] = [
    Letter::pos(Generator::S1),
    Letter::neg(Generator::S1),
    Letter::pos(Generator::S2),
    Letter::neg(Generator::S2),
];

#[derive(Debug)]
enum Engine {
    Matrix(TriangleRep),
    /// Regular permutation representation of a finite group.
    Finite(FinitePresentation, CosetTable),
}

/// `Δ(p,q,r) = ⟨s1, s2 | s1^p, s2^q, (s1 s2)^r⟩`, with `s3 = (s1 s2)^-1`.
#[derive(Debug)]
pub struct TriangleGroup {
    p: u32,
    q: u32,
    r: u32,
    geometry: GeometryClass,
    engine: Engine,
}

/// Rewrites `s3` as `s2^-1 s1^-1` and rejects every other foreign letter.
fn eliminate_s3(w: &Word) -> Result<Word, OrbifoldError> {
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        match l.gen {
            Generator::S1 | Generator::S2 => out.push(l),
            Generator::S3 => {
                let (a, b) = (Letter::pos(Generator::S1), Letter::pos(Generator::S2));
                if l.inverse {
                    out.extend([a, b]);
                } else {
                    out.extend([b.inv(), a.inv()]);
                }
            }
            g => return Err(OrbifoldError::ForeignGenerator(g)),
        }
    }
    Ok(Word::from_letters(out))
}

impl TriangleGroup {
    pub fn new(p: u32, q: u32, r: u32) -> Result<TriangleGroup, OrbifoldError> {
        let geometry = super::geometry_class(p, q, r)?;
        let engine = match geometry {
            GeometryClass::Spherical => {
                let pres = FinitePresentation::triangle(p, q, r);
                let table = todd_coxeter(&pres, &[], DEFAULT_MAX_COSETS)?;
                if table.index().is_none() {
                    return Err(OrbifoldError::EnumerationOverflow);
                }
                Engine::Finite(pres, table)
            }
            _ => Engine::Matrix(TriangleRep::new(p, q, r)?),
        };
        Ok(TriangleGroup {
            p,
            q,
            r,
            geometry,
            engine,
        })
    }

    pub fn from_base(base: &BaseOrbifold) -> Result<TriangleGroup, OrbifoldError> {
        match *base {
            BaseOrbifold::Triangle { p, q, r } => TriangleGroup::new(p, q, r),
            other => Err(OrbifoldError::Unsupported(other.to_string())),
        }
    }

    pub fn params(&self) -> (u32, u32, u32) {
        (self.p, self.q, self.r)
    }

    pub fn geometry(&self) -> GeometryClass {
        self.geometry
    }

    /// The matrix representation, for Euclidean and hyperbolic groups.
    pub fn rep(&self) -> Option<&TriangleRep> {
        match &self.engine {
            Engine::Matrix(rep) => Some(rep),
            Engine::Finite(..) => None,
        }
    }

    pub fn presentation(&self) -> FinitePresentation {
        FinitePresentation::triangle(self.p, self.q, self.r)
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool, OrbifoldError> {
        match &self.engine {
            Engine::Matrix(rep) => Ok(rep.is_identity(&rep.eval(w)?)),
            Engine::Finite(pres, table) => {
                let w = eliminate_s3(w)?;
                Ok(table.act(pres, 0, &w)? == 0)
            }
        }
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool, OrbifoldError> {
        match &self.engine {
            Engine::Matrix(rep) => Ok(rep.eval(u)? == rep.eval(v)?),
            Engine::Finite(..) => self.is_identity(&u.mul(&v.inv())),
        }
    }

    /// Shortest `w` (in BFS order `s1, s1^-1, s2, s2^-1`) with `w g w^-1 = g^-1`.
    pub fn find_inverting_conjugator(
        &self,
        g: &Word,
        radius: usize,
    ) -> Result<Option<Word>, OrbifoldError> {
        match &self.engine {
            Engine::Matrix(rep) => {
                let mg = rep.eval(g)?;
                let mg_inv = rep.eval(&g.inv())?;
                let test = |m: &TriangleMatrix| rep.mul(m, &mg) == rep.mul(&mg_inv, m);
                let mut seen: HashSet<TriangleMatrix> = HashSet::new();
                let mut queue = VecDeque::new();
                let id = rep.identity();
                seen.insert(id.clone());
                queue.push_back((Word::identity(), id));
                while let Some((w, m)) = queue.pop_front() {
                    if test(&m) {
                        return Ok(Some(w));
                    }
                    if w.len() >= radius {
                        continue;
                    }
                    for l in LETTERS {
                        let next = rep.mul(&m, rep.letter(l)?);
                        if seen.insert(next.clone()) {
                            queue.push_back((w.mul(&Word::from_letters([l])), next));
                        }
                    }
                }
                Ok(None)
            }
            Engine::Finite(pres, table) => {
                let g = eliminate_s3(g)?;
                let mut seen: HashSet<usize> = HashSet::from([0]);
                let mut queue = VecDeque::from([Word::identity()]);
                while let Some(w) = queue.pop_front() {
                    let probe = w.mul(&g).mul(&w.inv()).mul(&g);
                    if table.act(pres, 0, &probe)? == 0 {
                        return Ok(Some(w));
                    }
                    if w.len() >= radius {
                        continue;
                    }
                    for l in LETTERS {
                        let next = w.mul(&Word::from_letters([l]));
                        if seen.insert(table.act(pres, 0, &next)?) {
                            queue.push_back(next);
                        }
                    }
                }
                Ok(None)
            }
        }
    }
}

pub fn triangle_equal(u: &Word, v: &Word, base: &BaseOrbifold) -> Result<bool, OrbifoldError> {
    TriangleGroup::from_base(base)?.equal(u, v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseConjugacy {
    YesWithWitness(Word),
    RefutedByQuotient(FiniteHom),
    Unknown,
}

/// Is `g` conjugate to `g^-1` in the triangle group? Witness search first,
/// then quotient refutation over the default catalog.
pub fn conjugate_to_inverse_base(
    g: &Word,
    base: &BaseOrbifold,
    radius: usize,
) -> Result<BaseConjugacy, OrbifoldError> {
    let group = TriangleGroup::from_base(base)?;
    if let Some(w) = group.find_inverting_conjugator(g, radius)? {
        return Ok(BaseConjugacy::YesWithWitness(w));
    }
    let g = eliminate_s3(g)?;
    let claim = Claim::Conjugate(g.clone(), g.inv());
    Ok(match quotient_refute(&group.presentation(), &claim)? {
        Refutation::Refuted(h) => BaseConjugacy::RefutedByQuotient(h),
        Refutation::NotRefuted => BaseConjugacy::Unknown,
    })
}
