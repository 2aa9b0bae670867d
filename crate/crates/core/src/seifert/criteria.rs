//! Fiber intersections, generation and inversion criteria for the exceptional
//! generating pairs of Seifert fibered groups.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{AnnotatedElement, SeifertError, SeifertPresentation};
use crate::oracle::FiniteHom;
use crate::orbifold::{conjugate_to_inverse_base, BaseConjugacy};
use crate::words::{parse_word, GeneratingPair, Generator, InnerWitness, Letter, Word};

/// `⟨f^d⟩`; `d = 0` is the trivial subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberSubgroup {
    pub d: BigInt,
}

impl FiberSubgroup {
    pub fn from_exponents<'a, I: IntoIterator<Item = &'a BigInt>>(ts: I) -> FiberSubgroup {
        let d = ts.into_iter().fold(BigInt::zero(), |acc, t| acc.gcd(t));
        FiberSubgroup { d }
    }

    /// Whether the subgroup is all of `⟨f⟩`.
    pub fn is_full(&self) -> bool {
        self.d.is_one()
    }

    pub fn contains(&self, t: &BigInt) -> bool {
        if self.d.is_zero() {
            t.is_zero()
        } else {
            (t % &self.d).is_zero()
        }
    }
}

/// `⟨g1, g2, f^c : c ∈ centrals⟩ ∩ ⟨f⟩`, for `g1`, `g2` lifting `s1`, `s2`.
pub fn fiber_intersection(
    pres: &SeifertPresentation,
    g1: &AnnotatedElement,
    g2: &AnnotatedElement,
    centrals: &[BigInt],
) -> Result<FiberSubgroup, SeifertError> {
    let (p, q, r) = pres.params();
    if g1.base != pres.gen(Generator::S1).base || g2.base != pres.gen(Generator::S2).base {
        return Err(SeifertError::PreconditionViolated(format!(
            "base images {} and {} are not s1 and s2",
            g1.base, g2.base
        )));
    }
    let a = pres.pow(g1, p as i64);
    let b = pres.pow(g2, q as i64);
    let c = pres.pow(&pres.mul(g1, g2), r as i64);
    debug_assert!(a.is_central() && b.is_central() && c.is_central());
    Ok(FiberSubgroup::from_exponents(
        centrals.iter().chain([&a.t, &b.t, &c.t]),
    ))
}

/// The three infinite families of exceptional pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    TwoThree,
    TwoFour,
    ThreeThree,
}

impl Family {
    pub fn from_orders(p: u32, q: u32) -> Option<Family> {
        match (p, q) {
            (2, 3) => Some(Family::TwoThree),
            (2, 4) => Some(Family::TwoFour),
            (3, 3) => Some(Family::ThreeThree),
            _ => None,
        }
    }

    pub fn orders(self) -> (u32, u32) {
        match self {
            Family::TwoThree => (2, 3),
            Family::TwoFour => (2, 4),
            Family::ThreeThree => (3, 3),
        }
    }

    /// Base words of the exceptional pair.
    pub fn base_pair(self) -> (&'static str, &'static str) {
        match self {
            Family::TwoThree => ("s1 s2 s1 s2^-1", "s2^-1 s1 s2 s1"),
            Family::TwoFour => ("s1 s2^2", "s2^-1 s1 s2^-1"),
            Family::ThreeThree => ("s1 s2^-1", "s2^-1 s1"),
        }
    }

    /// Splits `r = m·p̂ + ε` with `ε = ±1`, where `m` is 6, 4 or 3.
    pub fn split(self, r: u32) -> Result<(i64, i64), SeifertError> {
        let (m, ok, what) = match self {
            Family::TwoThree => (6, r.gcd(&6) == 1 && r >= 7, "gcd(6,r) = 1, r >= 7"),
            Family::TwoFour => (4, r % 2 == 1 && r >= 5, "r odd, r >= 5"),
            Family::ThreeThree => (3, !r.is_multiple_of(3) && r >= 4, "gcd(3,r) = 1, r >= 4"),
        };
        if !ok {
            return Err(SeifertError::FamilyConstraint(format!(
                "{what} fails for r = {r}"
            )));
        }
        let r = r as i64;
        let p_hat = (r + m / 2) / m;
        let eps = r - m * p_hat;
        debug_assert!(eps == 1 || eps == -1);
        Ok((p_hat, eps))
    }
}

fn with_fiber(base: &str, t: i64) -> Word {
    parse_word(base)
        .expect("family word")
        .mul(&Word::gen_pow(Generator::F, t))
}

/// The exceptional pair of `family` twisted by `f^k`, `f^l`.
pub fn exceptional_pair(family: Family, k: i64, l: i64) -> GeneratingPair {
    let (g, h) = family.base_pair();
    GeneratingPair::new(with_fiber(g, k), with_fiber(h, l))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case23rReport {
    pub family: Family,
    pub r: u32,
    pub fiber_exp: i64,
    pub k: i64,
    pub l: i64,
    pub eta: i64,
    pub p_hat: i64,
    pub epsilon: i64,
    pub commutator: AnnotatedElement,
    /// Fiber exponents of the reduced tuple, by name.
    pub exponents: Vec<(String, BigInt)>,
    pub intersection: FiberSubgroup,
    pub generates: bool,
    pub conjugacy_condition: bool,
    pub invertible_candidate: bool,
}

impl Case23rReport {
    pub fn exponent(&self, name: &str) -> Option<&BigInt> {
        self.exponents
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }
}

fn expect_base(
    pres: &SeifertPresentation,
    x: &AnnotatedElement,
    want: &str,
    name: &str,
) -> Result<(), SeifertError> {
    let w = pres.normalize(&parse_word(want).unwrap())?;
    if x.base != w.base {
        return Err(SeifertError::PreconditionViolated(format!(
            "{name} has base image {}, expected {want}",
            x.base
        )));
    }
    Ok(())
}

/// Replays the reduction of an exceptional pair to a tuple lifting the
/// standard generators, and reads off the fiber intersection.
pub fn case23r_report(
    family: Family,
    r: u32,
    fiber_exp: i64,
    k: i64,
    l: i64,
    eta: i64,
) -> Result<Case23rReport, SeifertError> {
    let (p_hat, eps) = family.split(r)?;
    let (p, q) = family.orders();
    let e2 = if family == Family::ThreeThree { eta } else { 1 };
    let pres = SeifertPresentation::triangle(p, q, r, 1, e2, fiber_exp)?;
    let pair = exceptional_pair(family, k, l);
    let g = pres.normalize(&pair.first)?;
    let h = pres.normalize(&pair.second)?;
    let comm = pres.commutator(&g, &h);
    let c = pres.pow(&comm, p_hat);
    let ri = r as i64;

    let (x1, x2, x, names) = match family {
        Family::TwoThree => {
            let g1 = pres.mul(&pres.pow(&c, 2 * eps), &g);
            let h1 = pres.mul(&pres.mul(&pres.inv(&g1), &pres.pow(&c, -eps)), &h);
            expect_base(&pres, &g1, "s2", "g'")?;
            expect_base(&pres, &h1, "s1", "h'")?;
            let x = pres.mul(&c, &pres.pow(&pres.mul(&h1, &g1), eps));
            (h1, g1, x, ["h'^2", "g'^3", "(h'g')^r"])
        }
        Family::TwoFour => {
            let g1 = pres.mul(&pres.pow(&c, eps), &g);
            let h1 = pres.mul(&pres.mul(&g1, &h), &g1);
            expect_base(&pres, &g1, "s2", "g'")?;
            expect_base(&pres, &h1, "s1", "h'")?;
            let x = pres.mul(&c, &pres.pow(&pres.mul(&h1, &g1), eps));
            (h1, g1, x, ["h'^2", "g'^4", "(h'g')^r"])
        }
        Family::ThreeThree => {
            let g1 = pres.mul(&pres.mul(&pres.pow(&c, -eps), &h), &g);
            let b = pres.inv(&g1);
            let a = pres.mul(&g, &b);
            expect_base(&pres, &a, "s1", "a")?;
            expect_base(&pres, &b, "s2", "b")?;
            let x = pres.mul(&c, &pres.pow(&pres.mul(&a, &b), eps));
            (a, b, x, ["a^3", "b^3", "(ab)^r"])
        }
    };
    if !x.is_central() {
        return Err(SeifertError::PreconditionViolated(format!(
            "x has base image {}",
            x.base
        )));
    }
    let intersection = fiber_intersection(&pres, &x1, &x2, std::slice::from_ref(&x.t))?;
    let exponents = vec![
        (names[0].to_string(), pres.pow(&x1, p as i64).t),
        (names[1].to_string(), pres.pow(&x2, q as i64).t),
        ("x".to_string(), x.t.clone()),
        (names[2].to_string(), pres.pow(&pres.mul(&x1, &x2), ri).t),
    ];
    let generates = intersection.is_full();
    let conjugacy_condition = match family {
        Family::TwoThree | Family::TwoFour => k == -1 && l == -1,
        Family::ThreeThree => eta == 1 && k == 0 && l == 0,
    };
    Ok(Case23rReport {
        family,
        r,
        fiber_exp,
        k,
        l,
        eta,
        p_hat,
        epsilon: eps,
        commutator: comm,
        exponents,
        intersection,
        generates,
        conjugacy_condition,
        invertible_candidate: generates && conjugacy_condition,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genset237 {
    pub exponents: [BigInt; 4],
    pub gcd: BigInt,
    pub generates: bool,
}

impl Genset237 {
    fn from_exponents(exponents: [BigInt; 4]) -> Genset237 {
        let gcd = FiberSubgroup::from_exponents(&exponents).d;
        Genset237 {
            generates: gcd.is_one(),
            exponents,
            gcd,
        }
    }
}

/// Closed-form exponents for the `(2,3,7)` exceptional pair.
pub fn genset237_criterion(fiber_exp: i64, k: i64, l: i64) -> Genset237 {
    let (q, k, l) = (BigInt::from(fiber_exp), BigInt::from(k), BigInt::from(l));
    let exps = [
        &k + &l + 5,
        2 * &k - 20 * &q + 121,
        6 * &k + 6 * &l + 12 * &q - 40,
        -7 * &k - 14 * &l - 97 * &q + 511,
    ];
    Genset237::from_exponents(exps)
}

/// Same four exponents, computed by rewriting along the reduction chain;
/// the gcd comes from `fiber_intersection`.
pub fn genset237_engine(fiber_exp: i64, k: i64, l: i64) -> Result<Genset237, SeifertError> {
    let pres = SeifertPresentation::triangle(2, 3, 7, 1, 1, fiber_exp)?;
    let pair = brieskorn_pair(k, l);
    let g = pres.normalize(&pair.first)?;
    let h = pres.normalize(&pair.second)?;
    let c = pres.pow(&pres.commutator(&g, &h), 2);
    let ci = pres.inv(&c);
    let g1 = pres.mul(&pres.mul(&ci, &g), &ci);
    let h1 = pres.mul(&pres.mul(&c, &h), &c);
    // x -> (s2 s1)^-1 x (s2 s1)
    let u = pres.normalize(&parse_word("s1^-1 s2^-1").unwrap())?;
    let g2 = pres.conjugate(&g1, &u);
    let h2 = pres.conjugate(&h1, &u);
    let c1 = pres.conjugate(&c, &u);
    let c2 = pres.mul(&pres.mul(&g2, &c1), &h2);
    let c3 = pres.mul(&pres.mul(&h2, &c2), &g2);
    let c3i = pres.inv(&c3);
    let g3 = pres.mul(&pres.mul(&c3, &g2), &c3i);
    let h3 = pres.mul(&pres.mul(&c3i, &h2), &c3);
    let hbar = pres.mul(&g3, &h3);
    expect_base(&pres, &g3, "s1", "g'''")?;
    expect_base(&pres, &c3, "s2^-1", "c'''")?;
    if !hbar.is_central() {
        return Err(SeifertError::PreconditionViolated(
            "h-bar is not central".into(),
        ));
    }
    let exps = [
        hbar.t.clone(),
        pres.pow(&g3, 2).t,
        pres.pow(&c3, 3).t,
        pres.pow(&pres.mul(&g3, &c3i), 7).t,
    ];
    let fi = fiber_intersection(&pres, &g3, &c3i, std::slice::from_ref(&hbar.t))?;
    let out = Genset237::from_exponents(exps);
    if fi.d != out.gcd {
        return Err(SeifertError::PreconditionViolated(format!(
            "fiber intersection {} disagrees with gcd {}",
            fi.d, out.gcd
        )));
    }
    Ok(out)
}

pub const BRIESKORN_WITNESS: &str = "s2 s1 s2^-1";

/// The `(2,3,7)` exceptional pair twisted by `f^k`, `f^l`.
pub fn brieskorn_pair(k: i64, l: i64) -> GeneratingPair {
    GeneratingPair::new(
        with_fiber("s1 s2^-1 s1 s2 s1 s2^-1 s1 s2^-1 s1 s2", k),
        with_fiber("s2^-1 s1 s2 s1 s2^-1 s1 s2 s1 s2 s1", l),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrieskornReport {
    pub fiber_exp: i64,
    pub k: i64,
    pub l: i64,
    /// `k = fiberExp - 8`.
    pub k_constraint: bool,
    /// `l = 3 - fiberExp`.
    pub l_constraint: bool,
    /// `|6·fiberExp - 35|`, the intersection index once both constraints hold.
    pub constrained_index: BigInt,
    pub formula_invertible: bool,
    /// Rewriting verdicts: the fixed conjugator inverts both words, and the pair generates.
    pub witness_verified: bool,
    pub generates: bool,
    pub invertible: bool,
    pub witness: Option<Word>,
}

pub fn brieskorn_report(fiber_exp: i64, k: i64, l: i64) -> Result<BrieskornReport, SeifertError> {
    let k_constraint = k == fiber_exp - 8;
    let l_constraint = l == 3 - fiber_exp;
    let constrained_index = (BigInt::from(6) * fiber_exp - BigInt::from(35)).abs();
    let formula_invertible = k_constraint && l_constraint && constrained_index.is_one();
    let pres = SeifertPresentation::triangle(2, 3, 7, 1, 1, fiber_exp)?;
    let w = InnerWitness {
        conjugator: parse_word(BRIESKORN_WITNESS).unwrap(),
    };
    let witness_verified = verify_inner_inversion(&pres, &brieskorn_pair(k, l), &w)?;
    let generates = genset237_engine(fiber_exp, k, l)?.generates;
    let invertible = witness_verified && generates;
    Ok(BrieskornReport {
        fiber_exp,
        k,
        l,
        k_constraint,
        l_constraint,
        constrained_index,
        formula_invertible,
        witness_verified,
        generates,
        invertible,
        witness: invertible.then_some(w.conjugator),
    })
}

/// Does conjugation by `w` send both members of `pair` to their inverses?
pub fn verify_inner_inversion(
    pres: &SeifertPresentation,
    pair: &GeneratingPair,
    w: &InnerWitness,
) -> Result<bool, SeifertError> {
    let c = pres.normalize(&w.conjugator)?;
    for x in [&pair.first, &pair.second] {
        let x = pres.normalize(x)?;
        let y = pres.mul(&pres.conjugate(&x, &c), &x);
        if !y.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InnerInversion {
    YesWithWitness(Word),
    /// The base image of `element` is not conjugate to its inverse.
    RefutedConjugacy {
        element: Word,
        hom: FiniteHom,
    },
    Unknown,
}

const BFS_LETTERS: [Letter; 4] = [
    Letter::pos(Generator::S1),
    Letter::neg(Generator::S1),
    Letter::pos(Generator::S2),
    Letter::neg(Generator::S2),
];

/// Breadth-first search for an inner inversion, then refutation through the
/// base group. Conjugators are base words only: `f` is central.
pub fn find_inner_inversion(
    pres: &SeifertPresentation,
    pair: &GeneratingPair,
    radius: usize,
) -> Result<InnerInversion, SeifertError> {
    let g = pres.normalize(&pair.first)?;
    let h = pres.normalize(&pair.second)?;
    let inverts = |c: &AnnotatedElement| {
        [&g, &h]
            .iter()
            .all(|x| pres.mul(&pres.conjugate(x, c), x).is_identity())
    };
    let mut seen: HashSet<Word> = HashSet::from([Word::identity()]);
    let mut queue = VecDeque::from([(Word::identity(), pres.identity())]);
    while let Some((w, c)) = queue.pop_front() {
        if inverts(&c) {
            return Ok(InnerInversion::YesWithWitness(w));
        }
        if w.len() >= radius {
            continue;
        }
        for l in BFS_LETTERS {
            let step = Word::from_letters([l]);
            let next = pres.mul(&c, &pres.normalize(&step)?);
            if seen.insert(next.base.clone()) {
                queue.push_back((w.mul(&step), next));
            }
        }
    }
    for x in [&g, &h] {
        if let BaseConjugacy::RefutedByQuotient(hom) =
            conjugate_to_inverse_base(&x.base, &pres.base(), 0)?
        {
            return Ok(InnerInversion::RefutedConjugacy {
                element: x.base.clone(),
                hom,
            });
        }
    }
    Ok(InnerInversion::Unknown)
}
