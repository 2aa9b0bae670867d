//! Smith normal form over the integers and the abelianization it computes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::FinitePresentation;

pub type Matrix = Vec<Vec<BigInt>>;

/// `u · a · v = diag`, with `u`, `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: Matrix,
    pub u: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    /// Diagonal entries, one per column; rows missing below the matrix count as 0.
    pub fn factors(&self) -> Vec<BigInt> {
        let cols = self.v.len();
        (0..cols)
            .map(|i| {
                self.diag
                    .get(i)
                    .map(|row| row[i].clone())
                    .unwrap_or_else(BigInt::zero)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    /// Invariant factors, one per generator: each divides the next, zeros last.
    pub factors: Vec<BigInt>,
}

impl SnfResult {
    /// Factors other than 1, i.e. the cyclic decomposition of the group.
    pub fn abelian_invariants(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|f| f.is_one())
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_zero()).count()
    }
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = a.len();
    let k = b.len();
    let n = b.first().map_or(0, |r| r.len());
    (0..m)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for t in 0..k {
                        s += &a[i][t] * &b[t][j];
                    }
                    s
                })
                .collect()
        })
        .collect()
}

// row ops act on d and u, column ops on d and v

fn swap_rows(d: &mut Matrix, u: &mut Matrix, a: usize, b: usize) {
    d.swap(a, b);
    u.swap(a, b);
}

fn swap_cols(d: &mut Matrix, v: &mut Matrix, a: usize, b: usize) {
    for row in d.iter_mut() {
        row.swap(a, b);
    }
    for row in v.iter_mut() {
        row.swap(a, b);
    }
}

/// row[dst] += k * row[src]
fn add_row(d: &mut Matrix, u: &mut Matrix, dst: usize, src: usize, k: &BigInt) {
    for m in [d, u] {
        let src_row = m[src].clone();
        for (x, y) in m[dst].iter_mut().zip(src_row) {
            *x += k * y;
        }
    }
}

/// col[dst] += k * col[src]
fn add_col(d: &mut Matrix, v: &mut Matrix, dst: usize, src: usize, k: &BigInt) {
    for m in [d, v] {
        for row in m.iter_mut() {
            let s = row[src].clone();
            row[dst] += k * s;
        }
    }
}

pub fn smith_normal_form(a: &Matrix, cols: usize) -> SmithForm {
    let m = a.len();
    let n = cols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { diag: d, u, v };
            };
            swap_rows(&mut d, &mut u, t, pi);
            swap_cols(&mut d, &mut v, t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                add_row(&mut d, &mut u, i, t, &-q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                add_col(&mut d, &mut v, j, t, &-q);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[i][j] % &d[t][t]).is_zero());
            match bad {
                Some((i, _)) => add_row(&mut d, &mut u, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    SmithForm { diag: d, u, v }
}

/// Exponent-sum matrix of the relators, reduced to Smith form.
pub fn abelianization_snf(pres: &FinitePresentation) -> SnfResult {
    let a: Matrix = pres
        .relators()
        .iter()
        .map(|r| {
            pres.generators()
                .iter()
                .map(|&g| BigInt::from(r.exponent_sum(g)))
                .collect()
        })
        .collect();
    let sf = smith_normal_form(&a, pres.generators().len());
    SnfResult {
        factors: sf.factors(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, Generator};

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn textbook_example() {
        let a = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let sf = smith_normal_form(&a, 3);
        assert_eq!(ints(&sf.factors()), [2, 6, 12]);
        assert_eq!(mat_mul(&mat_mul(&sf.u, &a), &sf.v), sf.diag);
    }

    #[test]
    fn torus_is_free_abelian_rank_two() {
        let pres = FinitePresentation::new(
            vec![Generator::A, Generator::B],
            vec![parse_word("a b a^-1 b^-1").unwrap()],
        )
        .unwrap();
        let snf = abelianization_snf(&pres);
        assert_eq!(ints(&snf.factors), [0, 0]);
        assert_eq!(snf.free_rank(), 2);
    }

    #[test]
    fn brieskorn_sphere_is_perfect() {
        let pres = FinitePresentation::central_extension(2, 3, 7, 1, 1, 6);
        assert!(abelianization_snf(&pres).is_trivial());
    }

    #[test]
    fn two_and_three_generator_triangle_presentations_agree() {
        for (p, q, r) in [(2, 3, 7), (3, 3, 4), (2, 4, 6), (4, 4, 4)] {
            let a = abelianization_snf(&FinitePresentation::triangle(p, q, r));
            let b = abelianization_snf(&FinitePresentation::triangle_three_generator(p, q, r));
            assert_eq!(
                a.abelian_invariants(),
                b.abelian_invariants(),
                "({p},{q},{r})"
            );
        }
    }

    #[test]
    fn zero_and_wide_matrices() {
        let sf = smith_normal_form(&mat(&[&[0, 0, 0]]), 3);
        assert_eq!(ints(&sf.factors()), [0, 0, 0]);
        let a = mat(&[&[3, 0, 6], &[0, 0, 9]]);
        let sf = smith_normal_form(&a, 3);
        assert_eq!(ints(&sf.factors()), [3, 9, 0]);
        assert_eq!(mat_mul(&mat_mul(&sf.u, &a), &sf.v), sf.diag);
    }
}
