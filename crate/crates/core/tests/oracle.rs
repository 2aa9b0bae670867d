use invpair::oracle::{
    abelianization_snf, todd_coxeter, CosetStatus, FinitePresentation, DEFAULT_MAX_COSETS,
};
use invpair::orbifold::{exceptional_catalog, BaseOrbifold};
use invpair::seifert::{exceptional_pair, Family, TwistedPresentation};
use invpair::words::{Generator, Word};

fn presentations() -> Vec<(String, FinitePresentation)> {
    let mut out = Vec::new();
    for (p, q, r) in [
        (2, 3, 5),
        (2, 3, 7),
        (3, 3, 4),
        (2, 4, 5),
        (2, 3, 6),
        (2, 2, 5),
    ] {
        out.push((
            format!("D({p},{q},{r})"),
            FinitePresentation::triangle(p, q, r),
        ));
        out.push((
            format!("D3({p},{q},{r})"),
            FinitePresentation::triangle_three_generator(p, q, r),
        ));
    }
    for fe in [5, 6, 7] {
        out.push((
            format!("S(2,3,7;{fe})"),
            FinitePresentation::central_extension(2, 3, 7, 1, 1, fe),
        ));
    }
    for base in ["T2", "KB", "T2(p=3)", "KB(p=2)"] {
        let b: BaseOrbifold = base.parse().unwrap();
        out.push((
            base.to_string(),
            TwistedPresentation::new(b).unwrap().finite_presentation(),
        ));
    }
    out
}

#[test]
fn all_generators_give_index_one() {
    for (name, pres) in presentations() {
        let gens: Vec<Word> = pres.generators().iter().map(|&g| Word::gen(g)).collect();
        let t = todd_coxeter(&pres, &gens, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.status(), CosetStatus::Index(1), "{name}");
        assert!(t.is_consistent(&pres), "{name}");
    }
}

fn exceptional() -> Vec<Word> {
    let p = exceptional_pair(Family::TwoThree, -1, -1);
    vec![p.first, p.second]
}

#[test]
fn completed_tables_satisfy_relators() {
    let cases = [
        (FinitePresentation::triangle(2, 3, 5), vec![], 60),
        (FinitePresentation::triangle(2, 3, 4), vec![], 24),
        (
            FinitePresentation::triangle(2, 3, 5),
            vec![Word::gen(Generator::S1)],
            30,
        ),
        (
            FinitePresentation::triangle_three_generator(2, 3, 3),
            vec![],
            12,
        ),
        (
            FinitePresentation::central_extension(2, 3, 7, 1, 1, 7),
            exceptional(),
            7,
        ),
    ];
    for (pres, sub, index) in cases {
        let t = todd_coxeter(&pres, &sub, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.status(), CosetStatus::Index(index));
        assert!(t.is_consistent(&pres));
    }
}

#[test]
fn catalog_pairs_generate_their_base() {
    for base in ["S2(2,3,7)", "S2(3,3,4)", "S2(2,4,5)", "S2(2,3,6)"] {
        let b: BaseOrbifold = base.parse().unwrap();
        let BaseOrbifold::Triangle { p, q, r } = b else {
            unreachable!()
        };
        let pres = FinitePresentation::triangle(p, q, r);
        for e in exceptional_catalog(&b) {
            let t = todd_coxeter(
                &pres,
                &[e.pair.first.clone(), e.pair.second.clone()],
                DEFAULT_MAX_COSETS,
            )
            .unwrap();
            assert_eq!(t.status(), CosetStatus::Index(1), "{base} {}", e.label);
        }
    }
}

#[test]
fn abelianizations() {
    let inv = |pres: &FinitePresentation| -> Vec<String> {
        abelianization_snf(pres)
            .abelian_invariants()
            .iter()
            .map(|x| x.to_string())
            .collect()
    };
    assert_eq!(
        inv(&FinitePresentation::triangle(2, 3, 7)),
        Vec::<String>::new()
    );
    assert_eq!(inv(&FinitePresentation::triangle(3, 3, 4)), ["3"]);
    assert_eq!(inv(&FinitePresentation::triangle(2, 4, 6)), ["2", "2"]);
    // |H1| of the (2,3,7) extension with (s1 s2)^7 = f^q is |6q - 35|
    for fe in [4, 5, 7, 8] {
        let want = (6 * fe - 35_i64).abs().to_string();
        assert_eq!(
            inv(&FinitePresentation::central_extension(2, 3, 7, 1, 1, fe)),
            [want]
        );
    }
}
