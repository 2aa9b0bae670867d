use invpair::oracle::{enumerate_homs, FiniteHom, FinitePresentation, HomBudget, Target};
use invpair::orbifold::{triangle_equal, BaseOrbifold, TriangleRep};
use invpair::words::{Generator, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BASES: [(u32, u32, u32); 5] = [(2, 3, 7), (3, 3, 4), (2, 4, 5), (2, 3, 6), (2, 3, 5)];

fn random_word(rng: &mut ChaCha8Rng, max: usize) -> Word {
    let n = rng.gen_range(0..=max);
    Word::from_letters((0..n).map(|_| {
        let g = if rng.gen() {
            Generator::S1
        } else {
            Generator::S2
        };
        Letter::new(g, rng.gen())
    }))
}

fn homs(p: u32, q: u32, r: u32) -> Vec<FiniteHom> {
    let pres = FinitePresentation::triangle(p, q, r);
    let mut out = Vec::new();
    for t in [
        Target::Symmetric(5),
        Target::Symmetric(6),
        Target::Psl2(7),
        Target::Psl2(13),
    ] {
        out.extend(enumerate_homs(&pres, t, HomBudget::default()).unwrap());
    }
    out
}

#[test]
fn quotients_never_contradict_the_word_problem() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, q, r) in BASES {
        let base = BaseOrbifold::Triangle { p, q, r };
        let hs = homs(p, q, r);
        let (mut separated, mut equal) = (0, 0);
        for i in 0..1000 {
            let u = random_word(&mut rng, 14);
            // every fourth pair is equal by construction
            let v = if i % 4 == 0 {
                let c = random_word(&mut rng, 6);
                u.mul(&c.mul(&Word::gen(Generator::S1).pow(p as i64)).mul(&c.inv()))
            } else {
                random_word(&mut rng, 14)
            };
            let eq = triangle_equal(&u, &v, &base).unwrap();
            let sep = hs
                .iter()
                .any(|h| h.image(&u).unwrap() != h.image(&v).unwrap());
            assert!(
                !(eq && sep),
                "({p},{q},{r}): {u} = {v} yet a quotient separates them"
            );
            separated += usize::from(sep);
            equal += usize::from(eq);
        }
        assert!(
            equal >= 250 && separated > 0,
            "({p},{q},{r}): eq={equal} sep={separated}"
        );
    }
}

#[test]
fn traces_are_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, q, r) in [(2, 3, 7), (3, 3, 4), (2, 4, 5), (2, 3, 6)] {
        let rep = TriangleRep::new(p, q, r).unwrap();
        for _ in 0..300 {
            let g = random_word(&mut rng, 12);
            let w = random_word(&mut rng, 12);
            let a = rep.trace(&rep.eval(&g.conjugate_by(&w)).unwrap());
            assert_eq!(
                a,
                rep.trace(&rep.eval(&g).unwrap()),
                "({p},{q},{r}) {g} by {w}"
            );
        }
    }
}

#[test]
fn generator_orders() {
    for (p, q, r) in [
        (2, 3, 7),
        (3, 3, 4),
        (2, 4, 5),
        (2, 3, 6),
        (3, 3, 3),
        (2, 4, 4),
        (4, 5, 6),
    ] {
        let rep = TriangleRep::new(p, q, r).unwrap();
        for (word, n) in [("s1", p), ("s2", q), ("s1 s2", r)] {
            let x = invpair::words::parse_word(word).unwrap();
            for k in 1..n {
                assert!(
                    !rep.is_identity(&rep.eval(&x.pow(k as i64)).unwrap()),
                    "({p},{q},{r}) {word}^{k}"
                );
            }
            assert!(rep.is_identity(&rep.eval(&x.pow(n as i64)).unwrap()));
        }
    }
}
