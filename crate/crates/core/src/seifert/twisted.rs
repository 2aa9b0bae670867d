//! Extensions over the torus and Klein bottle bases, where `f` is central or
//! inverted by both generators.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::SeifertError;
use crate::oracle::FinitePresentation;
use crate::orbifold::BaseOrbifold;
use crate::words::{commutator, Generator, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiberAction {
    Central,
    /// `a f a^-1 = f^-1` and `b f b^-1 = f^-1`.
    InvertedByAB,
}

/// `⟨a, b, f | [a,b]^p = f` (torus bases) or `(a^2 b^2)^p = f` (Klein bottle
/// bases), with the fiber action above; `p = 1` without a cone point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedPresentation {
    pub base: BaseOrbifold,
    pub p: u32,
    pub action: FiberAction,
}

impl TwistedPresentation {
    pub fn new(base: BaseOrbifold) -> Result<Self, SeifertError> {
        base.validate()?;
        let (p, action) = match base {
            BaseOrbifold::Torus => (1, FiberAction::Central),
            BaseOrbifold::TorusCone { p } => (p, FiberAction::Central),
            BaseOrbifold::KleinBottle => (1, FiberAction::InvertedByAB),
            BaseOrbifold::KleinBottleCone { p } => (p, FiberAction::InvertedByAB),
            other => return Err(SeifertError::UnsupportedBase(other.to_string())),
        };
        Ok(TwistedPresentation { base, p, action })
    }

    /// Moves every `f` to the right and freely reduces the rest.
    ///
    /// This is a normal form in the extension of the free group on `a, b`;
    /// equal normal forms imply equality in the quotient.
    pub fn push_fibers_right(&self, w: &Word) -> Result<(Word, BigInt), SeifertError> {
        let mut t = BigInt::zero();
        let mut flips = 0usize;
        let mut rest = Vec::new();
        for l in w.letters().iter().rev() {
            match l.gen {
                Generator::F => {
                    let odd = self.action == FiberAction::InvertedByAB && flips % 2 == 1;
                    t += if odd { -l.sign() } else { l.sign() };
                }
                Generator::A | Generator::B => {
                    flips += 1;
                    rest.push(*l);
                }
                g => return Err(SeifertError::ForeignGenerator(g)),
            }
        }
        rest.reverse();
        Ok((Word::from_letters(rest), t))
    }

    pub fn equal_in_free_extension(&self, u: &Word, v: &Word) -> Result<bool, SeifertError> {
        Ok(self.push_fibers_right(u)? == self.push_fibers_right(v)?)
    }

    pub fn finite_presentation(&self) -> FinitePresentation {
        let (a, b, f) = (
            Word::gen(Generator::A),
            Word::gen(Generator::B),
            Word::gen(Generator::F),
        );
        let (fiber_rel_a, fiber_rel_b, top) = match self.action {
            FiberAction::Central => (commutator(&a, &f), commutator(&b, &f), commutator(&a, &b)),
            FiberAction::InvertedByAB => (
                f.conjugate_by(&a).mul(&f),
                f.conjugate_by(&b).mul(&f),
                a.pow(2).mul(&b.pow(2)),
            ),
        };
        FinitePresentation::new(
            vec![Generator::A, Generator::B, Generator::F],
            vec![
                fiber_rel_a,
                fiber_rel_b,
                top.pow(self.p as i64).mul(&f.inv()),
            ],
        )
        .expect("relators use a, b, f")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusKbReport {
    pub l: i64,
    pub k: i64,
    /// `[a f^l, b f^k] = [a, b]` with `f` central.
    pub torus: bool,
    /// `(a f^l)^2 (b f^k)^2 = a^2 b^2` with `f` inverted by `a` and `b`.
    pub klein_bottle: bool,
}

pub fn torus_kb_pair_check(l: i64, k: i64) -> TorusKbReport {
    let (a, b) = (Word::gen(Generator::A), Word::gen(Generator::B));
    let al = a.mul(&Word::gen_pow(Generator::F, l));
    let bk = b.mul(&Word::gen_pow(Generator::F, k));
    let torus = TwistedPresentation::new(BaseOrbifold::Torus).unwrap();
    let kb = TwistedPresentation::new(BaseOrbifold::KleinBottle).unwrap();
    TorusKbReport {
        l,
        k,
        torus: torus
            .equal_in_free_extension(&commutator(&al, &bk), &commutator(&a, &b))
            .unwrap(),
        klein_bottle: kb
            .equal_in_free_extension(&al.pow(2).mul(&bk.pow(2)), &a.pow(2).mul(&b.pow(2)))
            .unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::abelianization_snf;
    use crate::words::parse_word;

    #[test]
    fn identities_hold() {
        for (l, k) in [(2, 5), (0, 0), (-3, 1)] {
            let r = torus_kb_pair_check(l, k);
            assert!(r.torus && r.klein_bottle, "{r:?}");
        }
    }

    #[test]
    fn klein_bottle_action_matters() {
        // a f a^-1 = f^-1 only in the Klein bottle extension
        let kb = TwistedPresentation::new(BaseOrbifold::KleinBottle).unwrap();
        let t2 = TwistedPresentation::new(BaseOrbifold::Torus).unwrap();
        let u = parse_word("a f a^-1").unwrap();
        let v = parse_word("f^-1").unwrap();
        assert!(kb.equal_in_free_extension(&u, &v).unwrap());
        assert!(!t2.equal_in_free_extension(&u, &v).unwrap());
        // the square of the same commutator twist does not collapse
        let al = parse_word("a f").unwrap();
        let b = parse_word("b").unwrap();
        assert!(!kb
            .equal_in_free_extension(
                &commutator(&al, &b),
                &commutator(&Word::gen(Generator::A), &b)
            )
            .unwrap());
    }

    #[test]
    fn presentations() {
        let t = TwistedPresentation::new("T2(p=3)".parse().unwrap()).unwrap();
        assert_eq!(t.p, 3);
        let snf = abelianization_snf(&t.finite_presentation());
        // [a,b]^3 = f kills f in the abelianization
        assert_eq!(snf.free_rank(), 2);
        assert!(TwistedPresentation::new("S2(2,3,7)".parse().unwrap()).is_err());
    }
}
