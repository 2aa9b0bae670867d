//! Generating pairs, elementary Nielsen moves and inner inversion witnesses.

use serde::{Deserialize, Serialize};

use super::{commutator, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratingPair {
    pub first: Word,
    pub second: Word,
}

impl GeneratingPair {
    pub fn new(first: Word, second: Word) -> Self {
        GeneratingPair { first, second }
    }

    pub fn commutator(&self) -> Word {
        commutator(&self.first, &self.second)
    }

    pub fn get(&self, slot: Slot) -> &Word {
        match slot {
            Slot::First => &self.first,
            Slot::Second => &self.second,
        }
    }

    fn with(&self, slot: Slot, w: Word) -> GeneratingPair {
        match slot {
            Slot::First => GeneratingPair::new(w, self.second.clone()),
            Slot::Second => GeneratingPair::new(self.first.clone(), w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    First,
    Second,
}

impl Slot {
    pub fn other(self) -> Slot {
        match self {
            Slot::First => Slot::Second,
            Slot::Second => Slot::First,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// The three elementary equivalences, spelled out for every slot and side.
///
/// `Multiply { target, side: Right, inverse }` replaces the target `t` by
/// `t·o^{±1}` where `o` is the other component; `Left` gives `o^{±1}·t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementaryMove {
    Swap,
    Invert(Slot),
    Multiply {
        target: Slot,
        side: Side,
        inverse: bool,
    },
}

impl ElementaryMove {
    /// All eleven concrete moves on pairs. The set is closed under inverses.
    pub fn all() -> Vec<ElementaryMove> {
        let mut out = vec![
            ElementaryMove::Swap,
            ElementaryMove::Invert(Slot::First),
            ElementaryMove::Invert(Slot::Second),
        ];
        for target in [Slot::First, Slot::Second] {
            for side in [Side::Right, Side::Left] {
                for inverse in [false, true] {
                    out.push(ElementaryMove::Multiply {
                        target,
                        side,
                        inverse,
                    });
                }
            }
        }
        out
    }

    pub fn inverse(self) -> ElementaryMove {
        match self {
            ElementaryMove::Multiply {
                target,
                side,
                inverse,
            } => ElementaryMove::Multiply {
                target,
                side,
                inverse: !inverse,
            },
            m => m,
        }
    }

    pub fn apply(self, p: &GeneratingPair) -> GeneratingPair {
        match self {
            ElementaryMove::Swap => GeneratingPair::new(p.second.clone(), p.first.clone()),
            ElementaryMove::Invert(slot) => p.with(slot, p.get(slot).inv()),
            ElementaryMove::Multiply {
                target,
                side,
                inverse,
            } => {
                let t = p.get(target);
                let o = multiplier(p, target, inverse);
                let moved = match side {
                    Side::Right => t.mul(&o),
                    Side::Left => o.mul(t),
                };
                p.with(target, moved)
            }
        }
    }
}

fn multiplier(p: &GeneratingPair, target: Slot, inverse: bool) -> Word {
    let o = p.get(target.other());
    if inverse {
        o.inv()
    } else {
        o.clone()
    }
}

pub fn apply_move(p: &GeneratingPair, m: ElementaryMove) -> GeneratingPair {
    m.apply(p)
}

/// Conjugator `w` of an inner inversion, read as `x ↦ w x w^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InnerWitness {
    pub conjugator: Word,
}

impl InnerWitness {
    pub fn new(conjugator: Word) -> Self {
        InnerWitness { conjugator }
    }
}

/// Moves a witness for `p` to a witness for `m.apply(p)`.
///
/// If `w` inverts `(t, o)` then for `t·o^ε` the conjugator `o^{-ε} w` works,
/// and for `o^ε·t` the conjugator `o^{ε} w` works. Swaps and inversions keep `w`.
pub fn transport_inner_witness(
    m: ElementaryMove,
    p: &GeneratingPair,
    w: &InnerWitness,
) -> InnerWitness {
    match m {
        ElementaryMove::Swap | ElementaryMove::Invert(_) => w.clone(),
        ElementaryMove::Multiply {
            target,
            side,
            inverse,
        } => {
            let o = multiplier(p, target, inverse);
            let prefix = match side {
                Side::Right => o.inv(),
                Side::Left => o,
            };
            InnerWitness::new(prefix.mul(&w.conjugator))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FreeConjugacy {
    Equal,
    ConjugateToV,
    ConjugateToVInverse,
    No,
}

/// Decides in the free group whether `u` is conjugate to `v` or to `v^-1`.
pub fn free_conjugacy_to_pm(u: &Word, v: &Word) -> FreeConjugacy {
    if u == v {
        return FreeConjugacy::Equal;
    }
    let (_, cu) = u.cyclic_reduction();
    let (_, cv) = v.cyclic_reduction();
    if is_rotation(&cu, &cv) {
        FreeConjugacy::ConjugateToV
    } else if is_rotation(&cu, &cv.inv()) {
        FreeConjugacy::ConjugateToVInverse
    } else {
        FreeConjugacy::No
    }
}

fn is_rotation(a: &Word, b: &Word) -> bool {
    let (a, b) = (a.letters(), b.letters());
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| a[k..].iter().chain(&a[..k]).eq(b.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn gh() -> GeneratingPair {
        GeneratingPair::new(w("a b^2"), w("x a^-1"))
    }

    #[test]
    fn schema_moves() {
        let p = gh();
        let right = ElementaryMove::Multiply {
            target: Slot::First,
            side: Side::Right,
            inverse: false,
        };
        assert_eq!(
            right.apply(&p),
            GeneratingPair::new(p.first.mul(&p.second), p.second.clone())
        );
        assert_eq!(
            ElementaryMove::Swap.apply(&p),
            GeneratingPair::new(p.second.clone(), p.first.clone())
        );
        assert_eq!(
            ElementaryMove::Invert(Slot::First).apply(&p),
            GeneratingPair::new(p.first.inv(), p.second.clone())
        );
    }

    #[test]
    fn every_move_has_an_inverse() {
        let p = gh();
        let moves = ElementaryMove::all();
        assert_eq!(moves.len(), 11);
        for m in moves {
            assert!(ElementaryMove::all().contains(&m.inverse()));
            assert_eq!(m.inverse().apply(&m.apply(&p)), p, "{m:?}");
        }
    }

    #[test]
    fn transport_table() {
        let p = gh();
        let wit = InnerWitness::new(w("b x"));
        let right = ElementaryMove::Multiply {
            target: Slot::First,
            side: Side::Right,
            inverse: false,
        };
        assert_eq!(
            transport_inner_witness(right, &p, &wit).conjugator,
            p.second.inv().mul(&wit.conjugator)
        );
        assert_eq!(transport_inner_witness(ElementaryMove::Swap, &p, &wit), wit);
        assert_eq!(
            transport_inner_witness(ElementaryMove::Invert(Slot::First), &p, &wit),
            wit
        );
    }

    #[test]
    fn conjugacy_examples() {
        let (g, h) = (w("a b^2"), w("x a^-1 b"));
        let c = super::commutator(&g, &h);
        assert_eq!(
            free_conjugacy_to_pm(&super::commutator(&h, &g), &c),
            FreeConjugacy::ConjugateToVInverse
        );
        assert_eq!(
            free_conjugacy_to_pm(&super::commutator(&g.inv(), &h), &c),
            FreeConjugacy::ConjugateToVInverse
        );
        assert_eq!(
            free_conjugacy_to_pm(&w("a b"), &w("b a")),
            FreeConjugacy::ConjugateToV
        );
        assert_eq!(free_conjugacy_to_pm(&c, &c), FreeConjugacy::Equal);
        assert_eq!(free_conjugacy_to_pm(&w("a"), &w("b")), FreeConjugacy::No);
        assert_eq!(
            free_conjugacy_to_pm(&w("a b"), &w("a b^-1")),
            FreeConjugacy::No
        );
    }
}
