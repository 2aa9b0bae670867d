//! Brute-force verification machinery: coset enumeration, homomorphisms into
//! small finite groups, quotient refutation and abelianization.
//!
//! Nothing here shares code with the rewriting or matrix engines, so agreement
//! between the two sides is meaningful.

mod coset;
mod groups;
mod homs;
mod snf;

use thiserror::Error;

use crate::words::{Generator, Letter, Word};

pub use coset::{todd_coxeter, CosetStatus, CosetTable, DEFAULT_MAX_COSETS};
pub use groups::{Perm, Psl2, Target, TargetElement};
pub use homs::{
    default_catalog, enumerate_homs, quotient_refute, quotient_refute_with, Claim, FiniteHom,
    HomBudget, Refutation,
};
pub use snf::{abelianization_snf, smith_normal_form, SmithForm, SnfResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("word uses generator `{0}` outside the presentation")]
    ForeignGenerator(Generator),
    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),
    #[error("presentation needs at least one generator")]
    NoGenerators,
}

/// Generators plus relator words. Relators are stored cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePresentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl FinitePresentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, OracleError> {
        if generators.is_empty() {
            return Err(OracleError::NoGenerators);
        }
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(l) = r.letters().iter().find(|l| !generators.contains(&l.gen)) {
                return Err(OracleError::ForeignGenerator(l.gen));
            }
            let (_, core) = r.cyclic_reduction();
            if !core.is_empty() {
                rels.push(core);
            }
        }
        Ok(FinitePresentation {
            generators,
            relators: rels,
        })
    }

    /// `⟨s1, s2 | s1^p, s2^q, (s1 s2)^r⟩`.
    pub fn triangle(p: u32, q: u32, r: u32) -> Self {
        let (s1, s2) = (Word::gen(Generator::S1), Word::gen(Generator::S2));
        FinitePresentation::new(
            vec![Generator::S1, Generator::S2],
            vec![
                s1.pow(p as i64),
                s2.pow(q as i64),
                s1.mul(&s2).pow(r as i64),
            ],
        )
        .expect("triangle relators use s1, s2")
    }

    /// `⟨s1, s2, s3 | s1^p, s2^q, s3^r, s1 s2 s3⟩`.
    pub fn triangle_three_generator(p: u32, q: u32, r: u32) -> Self {
        use Generator::*;
        let (s1, s2, s3) = (Word::gen(S1), Word::gen(S2), Word::gen(S3));
        FinitePresentation::new(
            vec![S1, S2, S3],
            vec![
                s1.pow(p as i64),
                s2.pow(q as i64),
                s3.pow(r as i64),
                s1.mul(&s2).mul(&s3),
            ],
        )
        .expect("relators use s1, s2, s3")
    }

    /// Central extension `⟨s1, s2, f | s1^p = f^e1, s2^q = f^e2, (s1 s2)^r = f^c, f central⟩`.
    #[allow(clippy::too_many_arguments)]
    pub fn central_extension(p: u32, q: u32, r: u32, e1: i64, e2: i64, c: i64) -> Self {
        use Generator::*;
        let (s1, s2, f) = (Word::gen(S1), Word::gen(S2), Word::gen(F));
        FinitePresentation::new(
            vec![S1, S2, F],
            vec![
                s1.pow(p as i64).mul(&f.pow(-e1)),
                s2.pow(q as i64).mul(&f.pow(-e2)),
                s1.mul(&s2).pow(r as i64).mul(&f.pow(-c)),
                crate::words::commutator(&s1, &f),
                crate::words::commutator(&s2, &f),
            ],
        )
        .expect("relators use s1, s2, f")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Column index of a letter: `2i` for the generator, `2i + 1` for its inverse.
    pub(crate) fn column(&self, l: Letter) -> Result<usize, OracleError> {
        let i = self
            .generators
            .iter()
            .position(|&g| g == l.gen)
            .ok_or(OracleError::ForeignGenerator(l.gen))?;
        Ok(2 * i + usize::from(l.inverse))
    }

    pub(crate) fn columns(&self, w: &Word) -> Result<Vec<usize>, OracleError> {
        w.letters().iter().map(|&l| self.column(l)).collect()
    }
}
