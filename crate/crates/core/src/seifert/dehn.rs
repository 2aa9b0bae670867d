//! Fiber exponent of a word with trivial base image.
//!
//! The base group is `Z_p * Z_q / ⟨⟨(s1 s2)^r⟩⟩`. The symmetrized relator set
//! has pieces of at most one syllable, so when `2r > 6` (or no pieces occur)
//! it is `C'(1/6)` over the free product and Dehn's algorithm reduces every
//! word of the normal closure to the empty word. Each replacement uses one
//! relator, whose central value we add up. The total does not depend on the
//! path: the relation module of a triangle group is free on its three relators.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::words::{Generator, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Syllable {
    /// 0 for `s1`, 1 for `s2`.
    g: usize,
    /// In `1..order`.
    e: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct FiberCounter {
    orders: [u32; 2],
    /// `s1^p = f^e[0]`, `s2^q = f^e[1]`.
    e: [BigInt; 2],
    r: usize,
    /// Central values of `(s1 s2)^r` and `(s2^(q-1) s1^(p-1))^r`.
    values: [BigInt; 2],
}

struct Acc<'a> {
    c: &'a FiberCounter,
    syls: Vec<Syllable>,
    t: BigInt,
}

impl Acc<'_> {
    fn push(&mut self, g: usize, e: u32) {
        let o = self.c.orders[g];
        if e.is_multiple_of(o) {
            return;
        }
        match self.syls.last_mut() {
            Some(s) if s.g == g => {
                let mut n = s.e + e;
                if n >= o {
                    n -= o;
                    self.t += &self.c.e[g];
                }
                if n == 0 {
                    self.syls.pop();
                } else {
                    s.e = n;
                }
            }
            _ => self.syls.push(Syllable { g, e }),
        }
    }

    /// `x^-e = x^(o-e) f^-e_x`.
    fn push_inv(&mut self, g: usize, e: u32) {
        self.push(g, self.c.orders[g] - e);
        self.t -= &self.c.e[g];
    }
}

impl FiberCounter {
    /// `None` when the relator set is not small cancellation.
    pub(crate) fn new(p: u32, q: u32, r: u32, e1: i64, e2: i64, fiber_exp: i64) -> Option<Self> {
        let pieces = p == 2 || q == 2;
        if (pieces && r < 5) || r < 4 {
            return None;
        }
        let ri = r as i64;
        Some(FiberCounter {
            orders: [p, q],
            e: [e1.into(), e2.into()],
            r: r as usize,
            values: [fiber_exp.into(), (ri * (e1 + e2) - fiber_exp).into()],
        })
    }

    fn class_exp(&self, class: usize, g: usize) -> u32 {
        if class == 0 {
            1
        } else {
            self.orders[g] - 1
        }
    }

    /// `t` with `w = f^t`, for a word in `s1, s2` whose base image is trivial.
    pub(crate) fn count(&self, w: &[Letter]) -> BigInt {
        let mut acc = Acc {
            c: self,
            syls: Vec::with_capacity(w.len()),
            t: BigInt::zero(),
        };
        for l in w {
            let g = usize::from(l.gen == Generator::S2);
            debug_assert!(matches!(l.gen, Generator::S1 | Generator::S2));
            if l.inverse {
                acc.push_inv(g, 1);
            } else {
                acc.push(g, 1);
            }
        }
        while !acc.syls.is_empty() {
            acc = self
                .dehn_step(&acc)
                .unwrap_or_else(|| panic!("Dehn's algorithm stalled on {:?}", acc.syls));
        }
        acc.t
    }

    fn dehn_step<'a>(&'a self, acc: &Acc<'a>) -> Option<Acc<'a>> {
        let syls = &acc.syls;
        let n = syls.len();
        for class in 0..2 {
            for i in 0..n {
                // extend over interior syllables matching the relator exactly
                let mut j = i + 1;
                while j < n
                    && j - i + 1 < 2 * self.r
                    && syls[j].e == self.class_exp(class, syls[j].g)
                {
                    j += 1;
                }
                if j >= n {
                    j = n - 1;
                }
                if j <= i || j - i < self.r {
                    continue;
                }
                let next = self.replace(acc, class, i, j);
                if next.syls.len() < n {
                    return Some(next);
                }
            }
        }
        None
    }

    /// Replaces syllables `i..=j`, which spell a piece `c` of the relator
    /// `c d`, by `d^-1`.
    fn replace<'a>(&'a self, acc: &Acc<'a>, class: usize, i: usize, j: usize) -> Acc<'a> {
        let syls = &acc.syls;
        let mut out = Acc {
            c: self,
            syls: Vec::with_capacity(syls.len()),
            t: &acc.t + &self.values[class],
        };
        for s in &syls[..i] {
            out.push(s.g, s.e);
        }
        let (gi, gj) = (syls[i].g, syls[j].g);
        out.push(gi, syls[i].e);
        out.push_inv(gi, self.class_exp(class, gi));
        let m = j - i + 1;
        for k in (m + 1..=2 * self.r).rev() {
            let g = if (k - m) % 2 == 1 { 1 - gj } else { gj };
            out.push_inv(g, self.class_exp(class, g));
        }
        out.push_inv(gj, self.class_exp(class, gj));
        out.push(gj, syls[j].e);
        for s in &syls[j + 1..] {
            out.push(s.g, s.e);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn count(c: &FiberCounter, s: &str) -> i64 {
        i64::try_from(&c.count(parse_word(s.trim()).unwrap().letters())).unwrap()
    }

    #[test]
    fn relators() {
        let c = FiberCounter::new(2, 3, 7, 1, 1, 6).unwrap();
        assert_eq!(count(&c, "s1 s1"), 1);
        assert_eq!(count(&c, "s2^-3"), -1);
        assert_eq!(count(&c, &"s1 s2 ".repeat(7)), 6);
        assert_eq!(count(&c, &"s2 s1 ".repeat(7)), 6);
        assert_eq!(count(&c, &"s2^-1 s1^-1 ".repeat(7)), -6);
        // a conjugate of the long relator
        let w = format!("s2^-1 s1 {} s1^-1 s2", "s1 s2 ".repeat(7));
        assert_eq!(count(&c, &w), 6);
    }

    #[test]
    fn rejects_large_pieces() {
        assert!(FiberCounter::new(2, 5, 4, 1, 1, 1).is_none());
        assert!(FiberCounter::new(3, 3, 4, 1, 1, 1).is_some());
        assert!(FiberCounter::new(2, 3, 6, 1, 1, 1).is_some());
    }
}
