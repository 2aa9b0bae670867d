//! Homomorphisms from finitely presented groups into small finite groups, and
//! refutation of equalities, conjugacies and generation claims through them.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::groups::{class_in_subgroup, subgroup_order};
use super::{FinitePresentation, OracleError, Target, TargetElement};
use crate::words::{Generator, Word};

/// Search limits. `max_nodes` counts candidate images tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomBudget {
    pub max_homs: usize,
    pub max_nodes: usize,
}

impl Default for HomBudget {
    fn default() -> Self {
        HomBudget {
            max_homs: 1_000_000,
            max_nodes: 2_000_000,
        }
    }
}

/// Images of the presentation generators in a target group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteHom {
    pub target: Target,
    pub generators: Vec<Generator>,
    pub images: Vec<TargetElement>,
}

impl FiniteHom {
    pub fn image(&self, w: &Word) -> Result<TargetElement, OracleError> {
        let mut acc = self.target.identity();
        for l in w.letters() {
            let i = self
                .generators
                .iter()
                .position(|&g| g == l.gen)
                .ok_or(OracleError::ForeignGenerator(l.gen))?;
            let x = if l.inverse {
                self.images[i].inv()
            } else {
                self.images[i]
            };
            acc = acc.mul(&x);
        }
        Ok(acc)
    }

    /// Order of the image subgroup.
    pub fn image_order(&self) -> usize {
        subgroup_order(&self.images, self.target.identity())
    }

    pub fn is_onto(&self) -> bool {
        self.image_order() == self.target.order()
    }

    pub fn describe(&self) -> String {
        let imgs: Vec<String> = self
            .generators
            .iter()
            .zip(&self.images)
            .map(|(g, x)| format!("{g}->{x}"))
            .collect();
        format!("{}:{}", self.target, imgs.join(","))
    }
}

struct Search<'a> {
    pres: &'a FinitePresentation,
    target: Target,
    order: Vec<usize>,
    candidates: Vec<Vec<TargetElement>>,
    checks: Vec<Vec<Vec<(usize, bool)>>>,
    nodes: usize,
    budget: HomBudget,
    found: usize,
}

impl<'a> Search<'a> {
    fn new(
        pres: &'a FinitePresentation,
        target: Target,
        budget: HomBudget,
    ) -> Result<Self, OracleError> {
        target.validate()?;
        let ngen = pres.generators().len();
        let rels: Vec<Vec<(usize, bool)>> = pres
            .relators()
            .iter()
            .map(|r| {
                r.letters()
                    .iter()
                    .map(|l| {
                        let i = pres.generators().iter().position(|&g| g == l.gen).unwrap();
                        (i, l.inverse)
                    })
                    .collect()
            })
            .collect();

        // Greedy order: next generator completes the most relators.
        let mut order = Vec::with_capacity(ngen);
        let mut assigned = vec![false; ngen];
        while order.len() < ngen {
            let mut best = None;
            let mut best_score = -1i64;
            for g in 0..ngen {
                if assigned[g] {
                    continue;
                }
                let score = rels
                    .iter()
                    .filter(|r| r.iter().any(|&(i, _)| i == g))
                    .filter(|r| r.iter().all(|&(i, _)| assigned[i] || i == g))
                    .count() as i64;
                if score > best_score {
                    best_score = score;
                    best = Some(g);
                }
            }
            let g = best.expect("unassigned generator exists");
            assigned[g] = true;
            order.push(g);
        }

        let all = target.elements();
        let id = target.identity();
        let mut candidates = Vec::with_capacity(ngen);
        let mut checks = Vec::with_capacity(ngen);
        let mut done = vec![false; ngen];
        for (level, &g) in order.iter().enumerate() {
            let power = rels
                .iter()
                .filter(|r| !r.is_empty() && r.iter().all(|&(i, inv)| i == g && inv == r[0].1))
                .map(|r| r.len())
                .min();
            let pool = if level == 0 {
                target.class_representatives()
            } else {
                all.clone()
            };
            let cands: Vec<TargetElement> = pool
                .into_iter()
                .filter(|x| power.is_none_or(|m| pow(x, m, id) == id))
                .collect();
            candidates.push(cands);
            done[g] = true;
            checks.push(
                rels.iter()
                    .filter(|r| r.iter().any(|&(i, _)| i == g))
                    .filter(|r| r.iter().all(|&(i, _)| done[i]))
                    .cloned()
                    .collect(),
            );
        }
        Ok(Search {
            pres,
            target,
            order,
            candidates,
            checks,
            nodes: 0,
            budget,
            found: 0,
        })
    }

    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&FiniteHom) -> ControlFlow<()>,
    {
        let ngen = self.pres.generators().len();
        let mut images = vec![self.target.identity(); ngen];
        self.descend(0, &mut images, visit)
    }

    fn descend<F>(
        &mut self,
        level: usize,
        images: &mut Vec<TargetElement>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&FiniteHom) -> ControlFlow<()>,
    {
        if level == self.order.len() {
            self.found += 1;
            let hom = FiniteHom {
                target: self.target,
                generators: self.pres.generators().to_vec(),
                images: images.clone(),
            };
            visit(&hom)?;
            if self.found >= self.budget.max_homs {
                return ControlFlow::Break(());
            }
            return ControlFlow::Continue(());
        }
        let g = self.order[level];
        let id = self.target.identity();
        for ci in 0..self.candidates[level].len() {
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes {
                return ControlFlow::Break(());
            }
            images[g] = self.candidates[level][ci];
            let ok = self.checks[level].iter().all(|r| {
                let mut acc = id;
                for &(i, inv) in r {
                    let x = if inv { images[i].inv() } else { images[i] };
                    acc = acc.mul(&x);
                }
                acc == id
            });
            if ok {
                self.descend(level + 1, images, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn pow(x: &TargetElement, m: usize, id: TargetElement) -> TargetElement {
    (0..m).fold(id, |acc, _| acc.mul(x))
}

/// All homomorphisms to `target` found within the budget, first generator up
/// to conjugacy in the target. Every returned map kills every relator.
pub fn enumerate_homs(
    pres: &FinitePresentation,
    target: Target,
    budget: HomBudget,
) -> Result<Vec<FiniteHom>, OracleError> {
    let mut out = Vec::new();
    let mut search = Search::new(pres, target, budget)?;
    let _ = search.run(&mut |h: &FiniteHom| {
        out.push(h.clone());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Symmetric groups of degree 2..=7, then `PSL(2, p)` for `p` in 7, 11, 13.
pub fn default_catalog() -> Vec<Target> {
    let mut t: Vec<Target> = (2..=7).map(Target::Symmetric).collect();
    t.extend([Target::Psl2(7), Target::Psl2(11), Target::Psl2(13)]);
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    Equal(Word, Word),
    Conjugate(Word, Word),
    Generates(Vec<Word>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Refutation {
    Refuted(FiniteHom),
    NotRefuted,
}

impl Refutation {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Refutation::Refuted(_))
    }
}

/// Whether `hom` separates the two sides of `claim`.
pub fn hom_refutes(hom: &FiniteHom, claim: &Claim) -> Result<bool, OracleError> {
    Ok(match claim {
        Claim::Equal(u, v) => hom.image(u)? != hom.image(v)?,
        Claim::Conjugate(u, v) => {
            let x = hom.image(u)?;
            let y = hom.image(v)?;
            x != y && !class_in_subgroup(x, &hom.images).contains(&y)
        }
        Claim::Generates(ws) => {
            let imgs: Vec<TargetElement> =
                ws.iter().map(|w| hom.image(w)).collect::<Result<_, _>>()?;
            let id = hom.target.identity();
            subgroup_order(&imgs, id) < subgroup_order(&hom.images, id)
        }
    })
}

/// Searches the default catalog for a homomorphism refuting `claim`.
pub fn quotient_refute(
    pres: &FinitePresentation,
    claim: &Claim,
) -> Result<Refutation, OracleError> {
    quotient_refute_with(pres, claim, &default_catalog(), HomBudget::default())
}

pub fn quotient_refute_with(
    pres: &FinitePresentation,
    claim: &Claim,
    targets: &[Target],
    budget: HomBudget,
) -> Result<Refutation, OracleError> {
    // validate words up front so a bad claim is an error, not "not refuted"
    let words: Vec<&Word> = match claim {
        Claim::Equal(u, v) | Claim::Conjugate(u, v) => vec![u, v],
        Claim::Generates(ws) => ws.iter().collect(),
    };
    for w in words {
        pres.columns(w)?;
    }
    for &t in targets {
        let mut search = Search::new(pres, t, budget)?;
        let mut found = None;
        let _ = search.run(&mut |h: &FiniteHom| {
            if hom_refutes(h, claim).unwrap_or(false) {
                found = Some(h.clone());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(h) = found {
            return Ok(Refutation::Refuted(h));
        }
    }
    Ok(Refutation::NotRefuted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn homs_kill_relators() {
        let pres = FinitePresentation::triangle(2, 3, 7);
        let homs = enumerate_homs(&pres, Target::Psl2(7), HomBudget::default()).unwrap();
        assert!(!homs.is_empty());
        for h in &homs {
            for r in pres.relators() {
                assert_eq!(h.image(r).unwrap(), h.target.identity());
            }
        }
        assert!(homs.iter().any(|h| h.image_order() == 168));
    }

    #[test]
    fn klein_four_quotient_of_222() {
        let pres = FinitePresentation::triangle(2, 2, 2);
        let homs = enumerate_homs(&pres, Target::Symmetric(4), HomBudget::default()).unwrap();
        assert!(homs.iter().any(|h| {
            h.image_order() == 4 && h.images.iter().all(|x| *x != h.target.identity())
        }));
    }

    #[test]
    fn torus_images_commute() {
        let pres =
            FinitePresentation::new(vec![Generator::A, Generator::B], vec![w("a b a^-1 b^-1")])
                .unwrap();
        let homs = enumerate_homs(&pres, Target::Symmetric(4), HomBudget::default()).unwrap();
        assert!(!homs.is_empty());
        for h in homs {
            let (a, b) = (h.images[0], h.images[1]);
            assert_eq!(a.mul(&b), b.mul(&a));
        }
    }

    #[test]
    fn refutations() {
        let p334 = FinitePresentation::triangle(3, 3, 4);
        let r = quotient_refute(&p334, &Claim::Conjugate(w("s1 s2^-1"), w("s2 s1^-1"))).unwrap();
        assert!(r.is_refuted());

        let p237 = FinitePresentation::triangle(2, 3, 7);
        let r = quotient_refute(&p237, &Claim::Equal(w("s1"), w("s1"))).unwrap();
        assert_eq!(r, Refutation::NotRefuted);
        let r = quotient_refute(&p237, &Claim::Generates(vec![w("s1"), w("s1")])).unwrap();
        assert!(r.is_refuted());
        let r = quotient_refute(&p237, &Claim::Equal(w("s1"), w("s2"))).unwrap();
        assert!(r.is_refuted());
    }

    #[test]
    fn unsupported_target() {
        let pres = FinitePresentation::triangle(2, 3, 7);
        assert!(enumerate_homs(&pres, Target::Symmetric(9), HomBudget::default()).is_err());
        assert!(enumerate_homs(&pres, Target::Psl2(9), HomBudget::default()).is_err());
    }
}
