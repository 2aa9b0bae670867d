//! Seifert fibered groups over triangle orbifolds as central extensions,
//! with elements stored as (base normal form, fiber exponent).
//!
//! The base normal form comes from the Coxeter group containing the triangle
//! group; the fiber exponent of `w · nf(w)^-1` comes from Dehn's algorithm.

mod classify;
mod criteria;
mod dehn;
mod files;
mod slope;
mod twisted;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orbifold::{BaseOrbifold, GeometryClass, OrbifoldError, TriangleRep};
use crate::words::{Generator, Word};
use dehn::FiberCounter;

pub use classify::{classify_family, Classification, FamilyDescriptor, PairType};
pub use criteria::{
    brieskorn_pair, brieskorn_report, case23r_report, exceptional_pair, fiber_intersection,
    find_inner_inversion, genset237_criterion, genset237_engine, verify_inner_inversion,
    BrieskornReport, Case23rReport, Family, FiberSubgroup, Genset237, InnerInversion,
    BRIESKORN_WITNESS,
};
pub use files::{parse_pair_file, parse_presentation_file, PairFile, PresentationFile};
pub use slope::{prop6_arithmetic, slope_intersection, Prop6Report, Slope};
pub use twisted::{torus_kb_pair_check, FiberAction, TorusKbReport, TwistedPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
    #[error("word of length {len} exceeds the budget of {max} letters")]
    BudgetExhausted { len: usize, max: usize },
    #[error("base {0} fails small cancellation over the free product")]
    NotSmallCancellation(String),
    #[error("base {0} is spherical; the fiber would have finite order")]
    SphericalBase(String),
    #[error("base {0} is not a triangle orbifold")]
    UnsupportedBase(String),
    #[error("word uses generator `{0}` outside s1, s2, f")]
    ForeignGenerator(Generator),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("family constraint violated: {0}")]
    FamilyConstraint(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported descriptor: {0}")]
    UnsupportedDescriptor(String),
    #[error("invalid slope ({0}, {1})")]
    InvalidSlope(i64, i64),
}

/// `σ(base) · f^t`, where `σ` reads the base word letter by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnnotatedElement {
    pub base: Word,
    pub t: BigInt,
}

impl AnnotatedElement {
    pub fn is_central(&self) -> bool {
        self.base.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.base.is_empty() && self.t.is_zero()
    }
}

impl fmt::Display for AnnotatedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, f^{})", self.base, self.t)
    }
}

type RepCache = Mutex<HashMap<(u32, u32, u32), Arc<TriangleRep>>>;

fn reps() -> &'static RepCache {
    static REPS: OnceLock<RepCache> = OnceLock::new();
    REPS.get_or_init(|| Mutex::new(HashMap::new()))
}

fn shared_rep(p: u32, q: u32, r: u32) -> Result<Arc<TriangleRep>, SeifertError> {
    let mut map = reps().lock().unwrap();
    if let Some(rep) = map.get(&(p, q, r)) {
        return Ok(rep.clone());
    }
    let rep = Arc::new(TriangleRep::new(p, q, r)?);
    map.insert((p, q, r), rep.clone());
    Ok(rep)
}

/// Default cap on the length of words accepted by `normalize`.
pub const DEFAULT_MAX_WORD: usize = 100_000;

#[derive(Clone, Debug)]
pub struct SeifertPresentation {
    p: u32,
    q: u32,
    r: u32,
    e1: i64,
    e2: i64,
    fiber_exp: i64,
    rep: Arc<TriangleRep>,
    counter: Arc<FiberCounter>,
    max_word: usize,
}

impl SeifertPresentation {
    pub fn new(base: BaseOrbifold, e1: i64, e2: i64, fiber_exp: i64) -> Result<Self, SeifertError> {
        Self::with_budget(base, e1, e2, fiber_exp, DEFAULT_MAX_WORD)
    }

    pub fn with_budget(
        base: BaseOrbifold,
        e1: i64,
        e2: i64,
        fiber_exp: i64,
        max_word: usize,
    ) -> Result<Self, SeifertError> {
        base.validate()?;
        let BaseOrbifold::Triangle { p, q, r } = base else {
            return Err(SeifertError::UnsupportedBase(base.to_string()));
        };
        if base.geometry() == GeometryClass::Spherical {
            return Err(SeifertError::SphericalBase(base.to_string()));
        }
        let counter = FiberCounter::new(p, q, r, e1, e2, fiber_exp)
            .ok_or_else(|| SeifertError::NotSmallCancellation(base.to_string()))?;
        Ok(SeifertPresentation {
            p,
            q,
            r,
            e1,
            e2,
            fiber_exp,
            rep: shared_rep(p, q, r)?,
            counter: Arc::new(counter),
            max_word,
        })
    }

    /// `S2(p,q,r)` with `s1^p = f^e1`, `s2^q = f^e2`, `(s1 s2)^r = f^fiberExp`.
    pub fn triangle(
        p: u32,
        q: u32,
        r: u32,
        e1: i64,
        e2: i64,
        fiber_exp: i64,
    ) -> Result<Self, SeifertError> {
        Self::new(BaseOrbifold::Triangle { p, q, r }, e1, e2, fiber_exp)
    }

    pub fn base(&self) -> BaseOrbifold {
        BaseOrbifold::Triangle {
            p: self.p,
            q: self.q,
            r: self.r,
        }
    }

    pub fn params(&self) -> (u32, u32, u32) {
        (self.p, self.q, self.r)
    }

    pub fn e1(&self) -> i64 {
        self.e1
    }

    pub fn e2(&self) -> i64 {
        self.e2
    }

    pub fn fiber_exp(&self) -> i64 {
        self.fiber_exp
    }

    pub fn rep(&self) -> &TriangleRep {
        &self.rep
    }

    /// `(nf(b), t)` with `b = nf(b) · f^t` for a word `b` in `s1, s2`.
    fn reduce(&self, b: &Word) -> AnnotatedElement {
        let m = self.rep.eval(b).expect("s1, s2 only");
        let nf = self.rep.normal_form(&m);
        let trivial = b.mul(&nf.inv());
        AnnotatedElement {
            t: self.counter.count(trivial.letters()),
            base: nf,
        }
    }

    /// The finite presentation with generators `s1, s2, f`.
    pub fn finite_presentation(&self) -> crate::oracle::FinitePresentation {
        crate::oracle::FinitePresentation::central_extension(
            self.p,
            self.q,
            self.r,
            self.e1,
            self.e2,
            self.fiber_exp,
        )
    }

    pub fn normalize(&self, w: &Word) -> Result<AnnotatedElement, SeifertError> {
        let mut t = BigInt::zero();
        let mut base = Vec::with_capacity(w.len());
        for l in w.letters() {
            match l.gen {
                Generator::F => t += l.sign(),
                Generator::S1 | Generator::S2 => base.push(*l),
                g => return Err(SeifertError::ForeignGenerator(g)),
            }
        }
        if base.len() > self.max_word {
            return Err(SeifertError::BudgetExhausted {
                len: base.len(),
                max: self.max_word,
            });
        }
        let mut x = self.reduce(&Word::from_letters(base));
        x.t += t;
        Ok(x)
    }

    pub fn identity(&self) -> AnnotatedElement {
        AnnotatedElement {
            base: Word::identity(),
            t: BigInt::zero(),
        }
    }

    pub fn fiber(&self, t: BigInt) -> AnnotatedElement {
        AnnotatedElement {
            base: Word::identity(),
            t,
        }
    }

    pub fn mul(&self, a: &AnnotatedElement, b: &AnnotatedElement) -> AnnotatedElement {
        let mut x = self.reduce(&a.base.mul(&b.base));
        x.t += &a.t + &b.t;
        x
    }

    pub fn inv(&self, a: &AnnotatedElement) -> AnnotatedElement {
        let mut x = self.reduce(&a.base.inv());
        x.t -= &a.t;
        x
    }

    pub fn pow(&self, a: &AnnotatedElement, n: i64) -> AnnotatedElement {
        let base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: &AnnotatedElement, b: &AnnotatedElement) -> AnnotatedElement {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&ab, &self.inv(&ba))
    }

    /// `w x w^-1`.
    pub fn conjugate(&self, x: &AnnotatedElement, w: &AnnotatedElement) -> AnnotatedElement {
        self.mul(&self.mul(w, x), &self.inv(w))
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool, SeifertError> {
        Ok(self.normalize(u)? == self.normalize(v)?)
    }

    /// `s1` or `s2` as an element.
    pub fn gen(&self, g: Generator) -> AnnotatedElement {
        self.normalize(&Word::gen(g)).expect("base generator")
    }

    /// The lift as an explicit word, `base · f^t`.
    pub fn lift(&self, a: &AnnotatedElement) -> Word {
        let t = i64::try_from(&a.t).expect("fiber exponent fits a word");
        a.base.mul(&Word::gen_pow(Generator::F, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold::triangle_equal;
    use crate::words::{parse_word, Letter};
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn sigma() -> SeifertPresentation {
        SeifertPresentation::triangle(2, 3, 7, 1, 1, 6).unwrap()
    }

    #[test]
    fn defining_relations() {
        let s = sigma();
        assert_eq!(s.normalize(&w("s1 s1")).unwrap(), s.fiber(1.into()));
        assert_eq!(s.normalize(&w("s1 s2").pow(7)).unwrap(), s.fiber(6.into()));
        assert_eq!(s.normalize(&w("s2^3 f^-1")).unwrap(), s.identity());
        assert_eq!(
            s.normalize(&w("s1 s2").pow(7)).unwrap().to_string(),
            "(1, f^6)"
        );
    }

    #[test]
    fn rejects_spherical_and_foreign() {
        assert!(matches!(
            SeifertPresentation::triangle(2, 3, 5, 1, 1, 1),
            Err(SeifertError::SphericalBase(_))
        ));
        assert!(matches!(
            SeifertPresentation::triangle(1, 3, 7, 1, 1, 1),
            Err(SeifertError::Orbifold(OrbifoldError::ParameterTooSmall(1)))
        ));
        assert!(matches!(
            SeifertPresentation::new(BaseOrbifold::Torus, 1, 1, 1),
            Err(SeifertError::UnsupportedBase(_))
        ));
        assert_eq!(
            sigma().normalize(&w("s1 a")),
            Err(SeifertError::ForeignGenerator(Generator::A))
        );
    }

    #[test]
    fn euclidean_base() {
        let s = SeifertPresentation::triangle(2, 3, 6, 0, 0, 0).unwrap();
        assert!(s.normalize(&w("s1 s2").pow(6)).unwrap().is_identity());
    }

    fn base_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0u8..2, any::<bool>()), 0..30).prop_map(|v| {
            Word::from_letters(v.into_iter().map(|(g, inv)| {
                Letter::new(if g == 0 { Generator::S1 } else { Generator::S2 }, inv)
            }))
        })
    }

    fn fiber_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0u8..3, any::<bool>()), 0..30).prop_map(|v| {
            Word::from_letters(v.into_iter().map(|(g, inv)| {
                let g = [Generator::S1, Generator::S2, Generator::F][g as usize];
                Letter::new(g, inv)
            }))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn normalize_is_idempotent_and_multiplicative(u in fiber_word(), v in fiber_word()) {
            let s = sigma();
            let nu = s.normalize(&u).unwrap();
            let nv = s.normalize(&v).unwrap();
            prop_assert_eq!(s.normalize(&s.lift(&nu)).unwrap(), nu.clone());
            prop_assert_eq!(s.normalize(&u.mul(&v)).unwrap(), s.mul(&nu, &nv));
            prop_assert!(s.mul(&nu, &s.inv(&nu)).is_identity());
        }

        #[test]
        fn forgetting_fibers_matches_triangle_group(u in base_word(), v in base_word()) {
            for (p, q, r) in [(2, 3, 7), (3, 3, 4), (2, 4, 5), (2, 3, 6)] {
                let s = SeifertPresentation::triangle(p, q, r, 0, 0, 0).unwrap();
                let base = BaseOrbifold::Triangle { p, q, r };
                let a = s.normalize(&u).unwrap().base == s.normalize(&v).unwrap().base;
                prop_assert_eq!(a, triangle_equal(&u, &v, &base).unwrap());
            }
        }
    }
}
