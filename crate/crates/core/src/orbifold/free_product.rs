//! Normal forms in the free product `Z_p * Z_q = ⟨s1, s2 | s1^p, s2^q⟩`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::OrbifoldError;
use crate::words::{Generator, Letter, Word};

/// One syllable `s_factor^exp` with `0 < exp < order(factor)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub factor: u8,
    pub exp: u32,
}

/// Alternating syllable sequence; equal elements have equal normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeProductNF {
    pub p: u32,
    pub q: u32,
    pub syllables: Vec<Syllable>,
}

impl FreeProductNF {
    fn order(&self, factor: u8) -> u32 {
        if factor == 1 {
            self.p
        } else {
            self.q
        }
    }

    fn push(&mut self, factor: u8, exp: u32) {
        let order = self.order(factor);
        let exp = exp % order;
        if exp == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.factor == factor => {
                let e = (last.exp + exp) % order;
                if e == 0 {
                    self.syllables.pop();
                } else {
                    last.exp = e;
                }
            }
            _ => self.syllables.push(Syllable { factor, exp }),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn mul(&self, other: &FreeProductNF) -> FreeProductNF {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.factor, s.exp);
        }
        out
    }

    /// Back to a word with positive exponents.
    pub fn to_word(&self) -> Word {
        Word::from_letters(self.syllables.iter().flat_map(|s| {
            let g = if s.factor == 1 {
                Generator::S1
            } else {
                Generator::S2
            };
            std::iter::repeat_n(Letter::pos(g), s.exp as usize)
        }))
    }
}

impl fmt::Display for FreeProductNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

pub fn fp_normal_form(w: &Word, p: u32, q: u32) -> Result<FreeProductNF, OrbifoldError> {
    for m in [p, q] {
        if m < 2 {
            return Err(OrbifoldError::ParameterTooSmall(m));
        }
    }
    let mut nf = FreeProductNF {
        p,
        q,
        syllables: Vec::new(),
    };
    for l in w.letters() {
        let (factor, order) = match l.gen {
            Generator::S1 => (1u8, p),
            Generator::S2 => (2u8, q),
            g => return Err(OrbifoldError::ForeignGenerator(g)),
        };
        let exp = if l.inverse { order - 1 } else { 1 };
        nf.push(factor, exp);
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;
    use proptest::prelude::*;

    fn nf(s: &str, p: u32, q: u32) -> FreeProductNF {
        fp_normal_form(&parse_word(s).unwrap(), p, q).unwrap()
    }

    #[test]
    fn involution_wraps() {
        let n = nf("s1^3", 2, 3);
        assert_eq!(n.syllables, [Syllable { factor: 1, exp: 1 }]);
    }

    #[test]
    fn inverse_letters_use_positive_exponents() {
        assert_eq!(nf("s2^-1", 2, 3), nf("s2^2", 2, 3));
        assert!(nf("s1 s2 s2 s2 s1", 2, 3).is_identity());
    }

    #[test]
    fn rejects_other_letters() {
        assert_eq!(
            fp_normal_form(&parse_word("s1 f").unwrap(), 2, 3),
            Err(OrbifoldError::ForeignGenerator(Generator::F))
        );
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec((0u8..2, any::<bool>()), 0..24).prop_map(|v| {
            Word::from_letters(v.into_iter().map(|(g, inv)| {
                Letter::new(if g == 0 { Generator::S1 } else { Generator::S2 }, inv)
            }))
        })
    }

    proptest! {
        #[test]
        fn alternating_and_in_range(w in word_strategy(), p in 2u32..6, q in 2u32..6) {
            let n = fp_normal_form(&w, p, q).unwrap();
            for pair in n.syllables.windows(2) {
                prop_assert_ne!(pair[0].factor, pair[1].factor);
            }
            for s in &n.syllables {
                let order = if s.factor == 1 { p } else { q };
                prop_assert!(s.exp > 0 && s.exp < order);
            }
        }

        #[test]
        fn product_depends_only_on_normal_forms(u in word_strategy(), v in word_strategy(), p in 2u32..6, q in 2u32..6) {
            let nu = fp_normal_form(&u, p, q).unwrap();
            let nv = fp_normal_form(&v, p, q).unwrap();
            let direct = fp_normal_form(&u.mul(&v), p, q).unwrap();
            prop_assert_eq!(&direct, &nu.mul(&nv));
            let via_words = fp_normal_form(&nu.to_word().mul(&nv.to_word()), p, q).unwrap();
            prop_assert_eq!(direct, via_words);
        }
    }
}
