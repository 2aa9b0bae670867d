//! Free-group words over a small fixed alphabet.
//!
//! Every [`Word`] is kept freely reduced. The alphabet is closed: presentations
//! pick the sub-alphabet they need, which keeps parsing and ordering fixed.

mod nielsen;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use nielsen::{
    apply_move, free_conjugacy_to_pm, transport_inner_witness, ElementaryMove, FreeConjugacy,
    GeneratingPair, InnerWitness, Side, Slot,
};
pub use parse::{parse_word, ParseError};

/// Generator names, ordered `s1 < s2 < s3 < f < a < b < x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    S1,
    S2,
    S3,
    F,
    A,
    B,
    X,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::S1,
        Generator::S2,
        Generator::S3,
        Generator::F,
        Generator::A,
        Generator::B,
        Generator::X,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::S1 => "s1",
            Generator::S2 => "s2",
            Generator::S3 => "s3",
            Generator::F => "f",
            Generator::A => "a",
            Generator::B => "b",
            Generator::X => "x",
        }
    }

    pub fn from_name(name: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == name)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: Generator, inverse: bool) -> Letter {
        Letter { gen, inverse }
    }

    pub const fn pos(gen: Generator) -> Letter {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub const fn neg(gen: Generator) -> Letter {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    /// Builds a word from arbitrary letters, reducing on the way in.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn gen(g: Generator) -> Word {
        Word {
            letters: vec![Letter::pos(g)],
        }
    }

    /// `g^n` for a single generator.
    pub fn gen_pow(g: Generator, n: i64) -> Word {
        let l = Letter::new(g, n < 0);
        Word {
            letters: vec![l; n.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn inv(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `u v u^-1`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.inv())
    }

    /// Generators occurring in the word.
    pub fn support(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self.letters.iter().map(|l| l.gen).collect();
        gens.sort();
        gens.dedup();
        gens
    }

    pub fn uses_only(&self, alphabet: &[Generator]) -> bool {
        self.letters.iter().all(|l| alphabet.contains(&l.gen))
    }

    /// Exponent sum of one generator.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == g)
            .map(|l| l.sign())
            .sum()
    }

    /// Strips inverse pairs from both ends. Returns the conjugator `c` and the
    /// cyclically reduced core `k` with `self = c k c^-1`.
    pub fn cyclic_reduction(&self) -> (Word, Word) {
        let ls = &self.letters;
        let mut i = 0;
        let mut j = ls.len();
        while j >= i + 2 && ls[i] == ls[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        (
            Word {
                letters: ls[..i].to_vec(),
            },
            Word {
                letters: ls[i..j].to_vec(),
            },
        )
    }
}

/// Free reduction of an arbitrary letter sequence. Idempotent on reduced input.
pub fn free_reduce(letters: &[Letter]) -> Word {
    Word::from_letters(letters.iter().copied())
}

pub fn word_mul(u: &Word, v: &Word) -> Word {
    u.mul(v)
}

pub fn word_inv(u: &Word) -> Word {
    u.inv()
}

/// `g h g^-1 h^-1`.
pub fn commutator(g: &Word, h: &Word) -> Word {
    g.mul(h).mul(&g.inv()).mul(&h.inv())
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl fmt::Display for Word {
    /// Prints in the word DSL, grouping runs into exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = run as i64 * l.sign();
            if exp == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Word, ParseError> {
        parse_word(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn free_cancellation() {
        assert_eq!(word_mul(&w("s1 s1^-1 s2"), &Word::identity()), w("s2"));
        assert_eq!(word_mul(&w("s1 s2"), &w("s2^-1 s1")), w("s1 s1"));
    }

    #[test]
    fn inverse_law() {
        let g = w("s1 s2^-1 f^3 a b^-2");
        assert!(word_mul(&g, &word_inv(&g)).is_empty());
        assert!(word_mul(&word_inv(&g), &g).is_empty());
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(commutator(&w("a"), &w("b")), w("a b a^-1 b^-1"));
        let g = w("s1 s2 s1");
        assert!(commutator(&g, &g).is_empty());
        // [gh, h] = [g, h]
        let (g, h) = (w("a b^2 x"), w("b a^-1"));
        assert_eq!(commutator(&g.mul(&h), &h), commutator(&g, &h));
    }

    #[test]
    fn display_groups_runs() {
        assert_eq!(w("s1 s2^-1 f^3").to_string(), "s1 s2^-1 f^3");
        assert_eq!(Word::identity().to_string(), "1");
        assert_eq!(w("f f f^-1").to_string(), "f");
    }

    #[test]
    fn cyclic_reduction_core() {
        let (c, k) = w("a b x b^-1 a^-1").cyclic_reduction();
        assert_eq!(c, w("a b"));
        assert_eq!(k, w("x"));
        let (c, k) = w("a b").cyclic_reduction();
        assert!(c.is_empty());
        assert_eq!(k, w("a b"));
    }

    #[test]
    fn generator_order_is_fixed() {
        let mut gens = Generator::ALL.to_vec();
        gens.reverse();
        gens.sort();
        let names: Vec<_> = gens.iter().map(|g| g.name()).collect();
        assert_eq!(names, ["s1", "s2", "s3", "f", "a", "b", "x"]);
    }
}
