//! HLT coset enumeration with a lookahead pass and compaction.
//!
//! Definitions happen in a fixed order, so a given presentation, subgroup and
//! coset limit always produce the same table or the same overflow.

use serde::{Deserialize, Serialize};

use super::{FinitePresentation, OracleError};
use crate::words::Word;

pub const DEFAULT_MAX_COSETS: usize = 200_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetStatus {
    Index(usize),
    Overflow,
}

/// A completed (or abandoned) coset table. Rows are cosets, columns are
/// generators and their inverses; coset 0 is the subgroup itself.
#[derive(Clone, Debug)]
pub struct CosetTable {
    ncols: usize,
    rows: Vec<u32>,
    status: CosetStatus,
}

impl CosetTable {
    pub fn status(&self) -> CosetStatus {
        self.status
    }

    pub fn index(&self) -> Option<usize> {
        match self.status {
            CosetStatus::Index(n) => Some(n),
            CosetStatus::Overflow => None,
        }
    }

    pub fn columns(&self) -> usize {
        self.ncols
    }

    /// Image of `coset` under a word given as column indices.
    pub fn act_columns(&self, coset: usize, cols: &[usize]) -> usize {
        cols.iter()
            .fold(coset, |c, &x| self.rows[c * self.ncols + x] as usize)
    }

    /// Image of `coset` under `w`.
    pub fn act(
        &self,
        pres: &FinitePresentation,
        coset: usize,
        w: &Word,
    ) -> Result<usize, OracleError> {
        Ok(self.act_columns(coset, &pres.columns(w)?))
    }

    /// Checks that every relator fixes every coset and that the columns of a
    /// generator and its inverse are mutually inverse permutations.
    pub fn is_consistent(&self, pres: &FinitePresentation) -> bool {
        let Some(n) = self.index() else {
            return false;
        };
        for c in 0..n {
            for x in 0..self.ncols {
                let d = self.rows[c * self.ncols + x] as usize;
                if d >= n || self.rows[d * self.ncols + (x ^ 1)] as usize != c {
                    return false;
                }
            }
        }
        pres.relators().iter().all(|r| {
            let cols = pres
                .columns(r)
                .expect("relators use presentation generators");
            (0..n).all(|c| self.act_columns(c, &cols) == c)
        })
    }
}

struct Full;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    max: usize,
}

impl Enumerator {
    fn new(ncols: usize, max: usize) -> Self {
        Enumerator {
            ncols,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            max,
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.ncols + x]
    }

    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.ncols + x] = v;
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, Full> {
        if self.len() >= self.max {
            return Err(Full);
        }
        let d = self.len();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.set(c, x, d as u32);
        self.set(d, x ^ 1, c as u32);
        Ok(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = c;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo as u32;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                let f = f as usize;
                let xi = x ^ 1;
                self.set(f, xi, UNDEF);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let t = self.get(e1, x);
                if t != UNDEF {
                    self.merge(f1, t as usize, &mut queue);
                    continue;
                }
                let t2 = self.get(f1, xi);
                if t2 != UNDEF {
                    self.merge(e1, t2 as usize, &mut queue);
                } else {
                    self.set(e1, x, f1 as u32);
                    self.set(f1, xi, e1 as u32);
                }
            }
        }
    }

    /// Traces `w` at `c` from both ends, defining cosets when `fill` is set.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]) as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j] ^ 1) != UNDEF {
                b = self.get(b, w[j] ^ 1) as usize;
                if j == 0 {
                    // fully traced backwards; i must be 0 here
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.set(f, w[i], b as u32);
                self.set(b, w[i] ^ 1, f as u32);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Scans every relator at every live coset without defining anything.
    fn lookahead(&mut self, relators: &[Vec<usize>], subgens: &[Vec<usize>]) {
        for sg in subgens {
            let _ = self.scan(0, sg, false);
        }
        let mut c = 0;
        while c < self.len() {
            for r in relators {
                if !self.alive(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
    }

    /// Drops dead rows. Returns the new position of `pos`.
    fn compact(&mut self, pos: usize) -> usize {
        let n = self.len();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        let mut new_pos = 0;
        for c in 0..n {
            if self.alive(c) {
                map[c] = next;
                next += 1;
            }
            if c + 1 == pos {
                new_pos = next as usize;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..n {
            if !self.alive(c) {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.get(c, x);
                table.push(if v == UNDEF {
                    UNDEF
                } else {
                    let r = self.rep(v as usize);
                    map[r]
                });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        new_pos
    }

    fn live(&self) -> usize {
        (0..self.len()).filter(|&c| self.alive(c)).count()
    }
}

/// Enumerates the cosets of `⟨subgens⟩` in the group of `pres`.
///
/// Index 1 certifies that `subgens` generate the whole group. Overflow means
/// the limit was reached; it never says anything about the group.
pub fn todd_coxeter(
    pres: &FinitePresentation,
    subgens: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, OracleError> {
    let max_cosets = max_cosets.max(1);
    let ncols = 2 * pres.generators().len();
    let relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .map(|r| pres.columns(r))
        .collect::<Result<_, _>>()?;
    let subgens: Vec<Vec<usize>> = subgens
        .iter()
        .map(|w| pres.columns(w))
        .collect::<Result<_, _>>()?;

    let mut e = Enumerator::new(ncols, max_cosets);
    let overflow = CosetTable {
        ncols,
        rows: Vec::new(),
        status: CosetStatus::Overflow,
    };

    let mut pos = 0usize;
    let mut subgroup_done = false;
    loop {
        let step = run(&mut e, &relators, &subgens, &mut pos, &mut subgroup_done);
        match step {
            Ok(()) => break,
            Err(Full) => {
                let before = e.live();
                e.lookahead(&relators, &subgens);
                let after = e.live();
                pos = e.compact(pos);
                if after >= before && after >= max_cosets {
                    return Ok(overflow);
                }
                if e.len() >= max_cosets {
                    return Ok(overflow);
                }
            }
        }
    }

    let n = e.live();
    let new_pos = e.compact(e.len());
    debug_assert_eq!(new_pos, n);
    Ok(CosetTable {
        ncols,
        rows: e.table,
        status: CosetStatus::Index(n),
    })
}

fn run(
    e: &mut Enumerator,
    relators: &[Vec<usize>],
    subgens: &[Vec<usize>],
    pos: &mut usize,
    subgroup_done: &mut bool,
) -> Result<(), Full> {
    if !*subgroup_done {
        for sg in subgens {
            let c = e.rep(0);
            e.scan(c, sg, true)?;
        }
        *subgroup_done = true;
    }
    while *pos < e.len() {
        let c = *pos;
        if e.alive(c) {
            for r in relators {
                if !e.alive(c) {
                    break;
                }
                e.scan(c, r, true)?;
            }
            if e.alive(c) {
                for x in 0..e.ncols {
                    if !e.alive(c) {
                        break;
                    }
                    if e.get(c, x) == UNDEF {
                        e.define(c, x)?;
                    }
                }
            }
        }
        *pos += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, Generator};

    #[test]
    fn icosahedral_rotation_group_has_order_60() {
        let pres = FinitePresentation::triangle(2, 3, 5);
        let t = todd_coxeter(&pres, &[], DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.status(), CosetStatus::Index(60));
        assert!(t.is_consistent(&pres));
    }

    #[test]
    fn small_triangle_groups() {
        for (p, q, r, order) in [(2, 2, 3, 6), (2, 3, 3, 12), (2, 3, 4, 24), (2, 2, 7, 14)] {
            let pres = FinitePresentation::triangle(p, q, r);
            let t = todd_coxeter(&pres, &[], DEFAULT_MAX_COSETS).unwrap();
            assert_eq!(t.index(), Some(order), "({p},{q},{r})");
            assert!(t.is_consistent(&pres));
        }
    }

    #[test]
    fn full_generating_set_has_index_one() {
        let pres = FinitePresentation::triangle(2, 3, 7);
        let gens = [Word::gen(Generator::S1), Word::gen(Generator::S2)];
        let t = todd_coxeter(&pres, &gens, 1000).unwrap();
        assert_eq!(t.status(), CosetStatus::Index(1));
    }

    #[test]
    fn cyclic_subgroup_index() {
        // s1 generates a subgroup of order 2 in the group of order 60
        let pres = FinitePresentation::triangle(2, 3, 5);
        let t = todd_coxeter(&pres, &[Word::gen(Generator::S1)], 1000).unwrap();
        assert_eq!(t.index(), Some(30));
        assert!(t.is_consistent(&pres));
    }

    #[test]
    fn overflow_on_infinite_index() {
        let pres = FinitePresentation::triangle(2, 3, 7);
        let t = todd_coxeter(&pres, &[], 500).unwrap();
        assert_eq!(t.status(), CosetStatus::Overflow);
    }

    #[test]
    fn free_abelian_quotient_by_subgroup() {
        let pres = FinitePresentation::new(
            vec![Generator::A, Generator::B],
            vec![parse_word("a b a^-1 b^-1").unwrap()],
        )
        .unwrap();
        let sub = [parse_word("a^3").unwrap(), parse_word("b^2").unwrap()];
        let t = todd_coxeter(&pres, &sub, 1000).unwrap();
        assert_eq!(t.index(), Some(6));
        assert!(t.is_consistent(&pres));
    }
}
