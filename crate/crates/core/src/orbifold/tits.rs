//! Faithful linear representation of the rotation triangle group.
//!
//! `Δ(p,q,r)` is the index-2 rotation subgroup of the Coxeter group with
//! reflections `ρ1, ρ2, ρ3` and `m12 = p`, `m23 = q`, `m13 = r`; we send
//! `s1 ↦ ρ1ρ2`, `s2 ↦ ρ2ρ3`, `s3 ↦ ρ3ρ1`. The geometric (Tits)
//! representation of a Coxeter group is faithful, so matrix equality decides
//! the word problem exactly.

use std::cmp::Ordering;
use std::sync::Arc;

use super::field::{FieldElement, NumberField};
use super::OrbifoldError;
use crate::words::{Generator, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriangleMatrix {
    pub entries: [[FieldElement; 3]; 3],
}

#[derive(Debug)]
pub struct TriangleRep {
    p: u32,
    q: u32,
    r: u32,
    field: Arc<NumberField>,
    /// `2cos(π/m_ij)`; the diagonal is unused.
    cos2: [[FieldElement; 3]; 3],
    /// Images of s1, s2, s3 and their inverses, indexed by `slot`.
    images: [TriangleMatrix; 6],
}

fn slot(l: Letter) -> Result<usize, OrbifoldError> {
    let i = match l.gen {
        Generator::S1 => 0,
        Generator::S2 => 1,
        Generator::S3 => 2,
        g => return Err(OrbifoldError::ForeignGenerator(g)),
    };
    Ok(2 * i + usize::from(l.inverse))
}

impl TriangleRep {
    pub fn new(p: u32, q: u32, r: u32) -> Result<TriangleRep, OrbifoldError> {
        for m in [p, q, r] {
            if m < 2 {
                return Err(OrbifoldError::ParameterTooSmall(m));
            }
        }
        let field = NumberField::for_orders(&[p, q, r]);
        let c = |m: u32| field.two_cos_pi_over(m);
        // m[i][j] for i != j
        let orders = [[0, p, r], [p, 0, q], [r, q, 0]];
        let reflection = |i: usize| -> TriangleMatrix {
            let entries = std::array::from_fn(|row| {
                std::array::from_fn(|col| {
                    if row != i {
                        if row == col {
                            field.one()
                        } else {
                            field.zero()
                        }
                    } else if col == i {
                        field.from_int(-1)
                    } else {
                        c(orders[i][col])
                    }
                })
            });
            TriangleMatrix { entries }
        };
        let rho = [reflection(0), reflection(1), reflection(2)];
        let mul = |a: &TriangleMatrix, b: &TriangleMatrix| mat_mul(&field, a, b);
        let images = [
            mul(&rho[0], &rho[1]),
            mul(&rho[1], &rho[0]),
            mul(&rho[1], &rho[2]),
            mul(&rho[2], &rho[1]),
            mul(&rho[2], &rho[0]),
            mul(&rho[0], &rho[2]),
        ];
        let cos2 = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i == j {
                    field.zero()
                } else {
                    c(orders[i][j])
                }
            })
        });
        Ok(TriangleRep {
            p,
            q,
            r,
            field,
            cos2,
            images,
        })
    }

    pub fn params(&self) -> (u32, u32, u32) {
        (self.p, self.q, self.r)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn identity(&self) -> TriangleMatrix {
        let f = &self.field;
        TriangleMatrix {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { f.one() } else { f.zero() })
            }),
        }
    }

    pub fn letter(&self, l: Letter) -> Result<&TriangleMatrix, OrbifoldError> {
        Ok(&self.images[slot(l)?])
    }

    pub fn mul(&self, a: &TriangleMatrix, b: &TriangleMatrix) -> TriangleMatrix {
        mat_mul(&self.field, a, b)
    }

    pub fn eval(&self, w: &Word) -> Result<TriangleMatrix, OrbifoldError> {
        let mut acc = self.identity();
        for &l in w.letters() {
            acc = self.mul(&acc, self.letter(l)?);
        }
        Ok(acc)
    }

    pub fn trace(&self, m: &TriangleMatrix) -> FieldElement {
        let f = &self.field;
        let t = f.add(&m.entries[0][0], &m.entries[1][1]);
        f.add(&t, &m.entries[2][2])
    }

    pub fn is_identity(&self, m: &TriangleMatrix) -> bool {
        *m == self.identity()
    }

    /// Column `j` is `g(α_j)`, a root; it is negative exactly when `ρ_j` is a
    /// right descent of `g`.
    fn is_descent(&self, g: &TriangleMatrix, j: usize) -> bool {
        let f = &self.field;
        (0..3)
            .map(|i| f.sign(&g.entries[i][j]))
            .find(|s| *s != Ordering::Equal)
            .expect("roots are nonzero")
            == Ordering::Less
    }

    /// Reduced Coxeter word of `m`, letters `0, 1, 2` for `ρ1, ρ2, ρ3`,
    /// peeling off the smallest right descent each time.
    pub fn coxeter_word(&self, m: &TriangleMatrix) -> Vec<u8> {
        let f = &self.field;
        let mut g = m.clone();
        let mut picks = Vec::new();
        while let Some(j) = (0..3).find(|&j| self.is_descent(&g, j)) {
            // g ← g ρ_j: column j flips, column k gains 2cos(π/m_jk) · column j
            let col: [FieldElement; 3] = std::array::from_fn(|i| g.entries[i][j].clone());
            for k in (0..3).filter(|&k| k != j) {
                let c = &self.cos2[j][k];
                if c.is_zero() {
                    continue;
                }
                for (i, x) in col.iter().enumerate() {
                    g.entries[i][k] = f.add(&g.entries[i][k], &f.mul(c, x));
                }
            }
            for (i, x) in col.iter().enumerate() {
                g.entries[i][j] = f.neg(x);
            }
            picks.push(j as u8);
        }
        debug_assert!(self.is_identity(&g));
        picks.reverse();
        picks
    }

    /// Canonical word in `s1, s2` for an element of the rotation subgroup.
    pub fn normal_form(&self, m: &TriangleMatrix) -> Word {
        let rho = self.coxeter_word(m);
        assert!(rho.len().is_multiple_of(2), "orientation-reversing element");
        let (s1, s2) = (Generator::S1, Generator::S2);
        let mut letters = Vec::with_capacity(rho.len());
        for pair in rho.chunks(2) {
            match (pair[0], pair[1]) {
                (0, 1) => letters.push(Letter::pos(s1)),
                (1, 0) => letters.push(Letter::neg(s1)),
                (1, 2) => letters.push(Letter::pos(s2)),
                (2, 1) => letters.push(Letter::neg(s2)),
                // s3 = ρ3ρ1 = s2^-1 s1^-1
                (2, 0) => letters.extend([Letter::neg(s2), Letter::neg(s1)]),
                (0, 2) => letters.extend([Letter::pos(s1), Letter::pos(s2)]),
                _ => unreachable!("reduced words have no repeated letter"),
            }
        }
        balance_syllables(&letters, self.p, self.q)
    }
}

/// Collapses powers of `s1`, `s2` to exponents in `(-order/2, order/2]`.
fn balance_syllables(letters: &[Letter], p: u32, q: u32) -> Word {
    let order = |g: Generator| if g == Generator::S1 { p } else { q } as i64;
    let mut stack: Vec<(Generator, i64)> = Vec::new();
    for l in letters {
        let o = order(l.gen);
        match stack.last_mut() {
            Some((g, e)) if *g == l.gen => {
                *e = (*e + l.sign()).rem_euclid(o);
                if *e == 0 {
                    stack.pop();
                }
            }
            _ => stack.push((l.gen, l.sign().rem_euclid(o))),
        }
    }
    let mut out = Vec::new();
    for (g, e) in stack {
        let o = order(g);
        let e = if 2 * e > o { e - o } else { e };
        out.extend(std::iter::repeat_n(
            Letter::new(g, e < 0),
            e.unsigned_abs() as usize,
        ));
    }
    Word::from_letters(out)
}

fn mat_mul(f: &NumberField, a: &TriangleMatrix, b: &TriangleMatrix) -> TriangleMatrix {
    TriangleMatrix {
        entries: std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut s = f.zero();
                for k in 0..3 {
                    let a_ik = &a.entries[i][k];
                    let b_kj = &b.entries[k][j];
                    if !a_ik.is_zero() && !b_kj.is_zero() {
                        s = f.add(&s, &f.mul(a_ik, b_kj));
                    }
                }
                s
            })
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn order_of(rep: &TriangleRep, w: &Word, limit: u32) -> Option<u32> {
        let m = rep.eval(w).unwrap();
        let mut acc = m.clone();
        for k in 1..=limit {
            if rep.is_identity(&acc) {
                return Some(k);
            }
            acc = rep.mul(&acc, &m);
        }
        None
    }

    #[test]
    fn generator_orders_are_exact() {
        for (p, q, r) in [
            (2, 3, 7),
            (2, 3, 6),
            (2, 4, 4),
            (3, 3, 3),
            (3, 3, 4),
            (2, 4, 5),
            (2, 3, 11),
            (2, 3, 13),
            (4, 5, 6),
            (2, 3, 5),
        ] {
            let rep = TriangleRep::new(p, q, r).unwrap();
            let s1 = parse_word("s1").unwrap();
            let s2 = parse_word("s2").unwrap();
            let s12 = parse_word("s1 s2").unwrap();
            assert_eq!(order_of(&rep, &s1, 20), Some(p), "({p},{q},{r})");
            assert_eq!(order_of(&rep, &s2, 20), Some(q), "({p},{q},{r})");
            assert_eq!(order_of(&rep, &s12, 20), Some(r), "({p},{q},{r})");
            assert!(rep.is_identity(&rep.eval(&parse_word("s1 s2 s3").unwrap()).unwrap()));
        }
    }

    #[test]
    fn normal_forms_are_canonical() {
        for (p, q, r) in [(2, 3, 7), (3, 3, 4), (2, 4, 5), (2, 3, 6), (3, 3, 3)] {
            let rep = TriangleRep::new(p, q, r).unwrap();
            let nf = |s: &str| rep.normal_form(&rep.eval(&parse_word(s).unwrap()).unwrap());
            assert_eq!(nf("1"), Word::identity());
            assert_eq!(nf("s1").to_string(), "s1");
            assert_eq!(nf("s2 s2^-1 s1"), nf("s1"));
            assert_eq!(nf("s1 s2 s3"), Word::identity());
            let rel = format!("s2 (s1 s2)^{r} s1");
            let rel = rel.replace(&format!("(s1 s2)^{r}"), &"s1 s2 ".repeat(r as usize));
            assert_eq!(nf(&rel), nf("s2 s1"));
            let w = "s1 s2^-1 s1 s2 s1 s2^-1 s1 s2^-1 s1 s2";
            let m = rep.eval(&nf(w)).unwrap();
            assert_eq!(m, rep.eval(&parse_word(w).unwrap()).unwrap());
        }
    }

    #[test]
    fn rejects_foreign_letters() {
        let rep = TriangleRep::new(2, 3, 7).unwrap();
        assert_eq!(
            rep.eval(&parse_word("s1 f").unwrap()),
            Err(OrbifoldError::ForeignGenerator(Generator::F))
        );
    }
}
