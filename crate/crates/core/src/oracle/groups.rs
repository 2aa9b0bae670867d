//! Concrete finite target groups: symmetric groups and `PSL(2, p)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::OracleError;

pub const MAX_DEGREE: usize = 8;

/// Permutation of `{0, .., n-1}` with `n <= 8`. Products act left to right:
/// `(a * b)(i) = b(a(i))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        let mut img = [0u8; MAX_DEGREE];
        for (i, v) in img.iter_mut().enumerate() {
            *v = i as u8;
        }
        Perm { n: n as u8, img }
    }

    pub fn from_images(images: &[u8]) -> Option<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return None;
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = Perm::identity(n);
        for (i, &v) in images.iter().enumerate() {
            if v as usize >= n || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
            p.img[i] = v;
        }
        Some(p)
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn then(&self, other: &Perm) -> Perm {
        let mut out = *self;
        for i in 0..self.n as usize {
            out.img[i] = other.img[self.img[i] as usize];
        }
        out
    }

    pub fn inv(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.n as usize {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n as usize).all(|i| self.img[i] as usize == i)
    }

    /// Sorted cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n as usize;
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                c = self.img[c] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// All permutations of degree `n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut cur: Vec<u8> = (0..n as u8).collect();
        let mut out = vec![Perm::from_images(&cur).expect("identity")];
        while next_permutation(&mut cur) {
            out.push(Perm::from_images(&cur).expect("valid"));
        }
        out
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as usize;
        let mut seen = [false; MAX_DEGREE];
        let mut any = false;
        for s in 0..n {
            if seen[s] || self.img[s] as usize == s {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut c = s;
            let mut first = true;
            while !seen[c] {
                seen[c] = true;
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{}", c + 1)?;
                c = self.img[c] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Element of `PSL(2, p)`: a determinant-one matrix modulo `±1`, stored with a
/// canonical sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Psl2 {
    p: u16,
    m: [u16; 4],
}

impl Psl2 {
    pub fn new(p: u16, a: i64, b: i64, c: i64, d: i64) -> Option<Psl2> {
        let pm = p as i64;
        let r = |x: i64| x.rem_euclid(pm) as u16;
        let m = [r(a), r(b), r(c), r(d)];
        let det = (m[0] as i64 * m[3] as i64 - m[1] as i64 * m[2] as i64).rem_euclid(pm);
        if det != 1 {
            return None;
        }
        Some(Psl2::canonical(p, m))
    }

    fn canonical(p: u16, m: [u16; 4]) -> Psl2 {
        let neg = m.map(|x| if x == 0 { 0 } else { p - x });
        Psl2 {
            p,
            m: if neg < m { neg } else { m },
        }
    }

    pub fn identity(p: u16) -> Psl2 {
        Psl2::canonical(p, [1, 0, 0, 1])
    }

    pub fn entries(&self) -> [u16; 4] {
        self.m
    }

    pub fn mul(&self, o: &Psl2) -> Psl2 {
        let p = self.p as u32;
        let [a, b, c, d] = self.m.map(u32::from);
        let [e, f, g, h] = o.m.map(u32::from);
        let m = [
            ((a * e + b * g) % p) as u16,
            ((a * f + b * h) % p) as u16,
            ((c * e + d * g) % p) as u16,
            ((c * f + d * h) % p) as u16,
        ];
        Psl2::canonical(self.p, m)
    }

    pub fn inv(&self) -> Psl2 {
        let p = self.p;
        let [a, b, c, d] = self.m;
        let neg = |x: u16| if x == 0 { 0 } else { p - x };
        Psl2::canonical(p, [d, neg(b), neg(c), a])
    }

    pub fn all(p: u16) -> Vec<Psl2> {
        let mut set = std::collections::BTreeSet::new();
        let pi = p as i64;
        for a in 0..pi {
            for b in 0..pi {
                for c in 0..pi {
                    for d in 0..pi {
                        if let Some(x) = Psl2::new(p, a, b, c, d) {
                            set.insert(x);
                        }
                    }
                }
            }
        }
        set.into_iter().collect()
    }
}

impl fmt::Display for Psl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// A finite target group for homomorphism search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    Symmetric(usize),
    Psl2(u16),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TargetElement {
    Perm(Perm),
    Psl(Psl2),
}

impl fmt::Display for TargetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetElement::Perm(p) => p.fmt(f),
            TargetElement::Psl(m) => m.fmt(f),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Symmetric(n) => write!(f, "S{n}"),
            Target::Psl2(p) => write!(f, "PSL(2,{p})"),
        }
    }
}

impl TargetElement {
    pub fn mul(&self, o: &TargetElement) -> TargetElement {
        match (self, o) {
            (TargetElement::Perm(a), TargetElement::Perm(b)) => TargetElement::Perm(a.then(b)),
            (TargetElement::Psl(a), TargetElement::Psl(b)) => TargetElement::Psl(a.mul(b)),
            _ => panic!("mixed target elements"),
        }
    }

    pub fn inv(&self) -> TargetElement {
        match self {
            TargetElement::Perm(a) => TargetElement::Perm(a.inv()),
            TargetElement::Psl(a) => TargetElement::Psl(a.inv()),
        }
    }
}

impl Target {
    pub fn validate(&self) -> Result<(), OracleError> {
        match *self {
            Target::Symmetric(n) if (1..=MAX_DEGREE).contains(&n) => Ok(()),
            Target::Psl2(p) if is_small_prime(p) => Ok(()),
            t => Err(OracleError::UnsupportedTarget(t.to_string())),
        }
    }

    pub fn identity(&self) -> TargetElement {
        match *self {
            Target::Symmetric(n) => TargetElement::Perm(Perm::identity(n)),
            Target::Psl2(p) => TargetElement::Psl(Psl2::identity(p)),
        }
    }

    pub fn elements(&self) -> Vec<TargetElement> {
        match *self {
            Target::Symmetric(n) => Perm::all(n).into_iter().map(TargetElement::Perm).collect(),
            Target::Psl2(p) => Psl2::all(p).into_iter().map(TargetElement::Psl).collect(),
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            Target::Symmetric(n) => (1..=n).product(),
            Target::Psl2(2) => 6,
            Target::Psl2(p) => {
                let p = p as usize;
                p * (p * p - 1) / 2
            }
        }
    }

    /// One representative per conjugacy class, in a fixed order.
    pub fn class_representatives(&self) -> Vec<TargetElement> {
        match *self {
            Target::Symmetric(n) => partitions(n)
                .into_iter()
                .map(|parts| {
                    let mut img: Vec<u8> = (0..n as u8).collect();
                    let mut start = 0;
                    for len in parts {
                        for k in 0..len {
                            img[start + k] = (start + (k + 1) % len) as u8;
                        }
                        start += len;
                    }
                    TargetElement::Perm(Perm::from_images(&img).expect("cycle product"))
                })
                .collect(),
            Target::Psl2(_) => {
                let all = self.elements();
                let mut seen: HashSet<TargetElement> = HashSet::new();
                let mut reps = Vec::new();
                for x in &all {
                    if seen.contains(x) {
                        continue;
                    }
                    reps.push(*x);
                    for y in &all {
                        seen.insert(y.inv().mul(x).mul(y));
                    }
                }
                reps
            }
        }
    }
}

fn is_small_prime(p: u16) -> bool {
    (2..=31).contains(&p)
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Size of the subgroup generated by `gens`.
pub fn subgroup_order(gens: &[TargetElement], id: TargetElement) -> usize {
    let mut seen: HashSet<TargetElement> = HashSet::new();
    seen.insert(id);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// Conjugacy class of `x` inside the subgroup generated by `gens`.
pub fn class_in_subgroup(x: TargetElement, gens: &[TargetElement]) -> HashSet<TargetElement> {
    let mut seen = HashSet::from([x]);
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for g in gens {
            let z = g.inv().mul(&y).mul(g);
            if seen.insert(z) {
                queue.push_back(z);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(Perm::all(5).len(), 120);
        assert_eq!(Psl2::all(7).len(), 168);
        assert_eq!(Psl2::all(11).len(), 660);
        assert_eq!(Target::Psl2(13).order(), 1092);
    }

    #[test]
    fn class_counts() {
        assert_eq!(Target::Symmetric(5).class_representatives().len(), 7);
        assert_eq!(Target::Psl2(7).class_representatives().len(), 6);
    }

    #[test]
    fn perm_product_acts_left_to_right() {
        let a = Perm::from_images(&[1, 0, 2]).unwrap();
        let b = Perm::from_images(&[0, 2, 1]).unwrap();
        let ab = a.then(&b);
        assert_eq!(ab.apply(0), b.apply(a.apply(0)));
        assert!(ab.then(&ab.inv()).is_identity());
        assert_eq!(a.to_string(), "(1 2)");
    }

    #[test]
    fn psl_inverse() {
        for x in Psl2::all(7) {
            assert_eq!(x.mul(&x.inv()), Psl2::identity(7));
        }
    }
}
