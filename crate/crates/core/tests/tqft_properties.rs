use proptest::prelude::*;
use qcskit::bord::{euler_char, evaluate, genus_term, parse, relation_pairs, typecheck, Generator, Term};
use qcskit::frobenius::{
    closed_surface_invariant, random_semisimple, semisimple_invariant, validate_frobenius, AlgebraData,
    FrobeniusAlgebra,
};
use qcskit::random::rng;
use qcskit::{CMat, C64};
use rand::Rng;

fn corpus() -> Vec<AlgebraData> {
    let mut r = rng(20);
    let mut v = vec![
        AlgebraData::ground_field(),
        AlgebraData::z2_group_algebra(),
        AlgebraData::semisimple(&[2.0, 3.0]).unwrap(),
        AlgebraData::semisimple(&[1.0, 1.0]).unwrap(),
    ];
    for k in 1..=3 {
        v.push(random_semisimple(k, &mut r).unwrap().0);
    }
    v
}

#[test]
fn torus_counts_dimension() {
    for data in corpus() {
        let k = data.dim;
        let a = FrobeniusAlgebra::new(data).unwrap();
        let z = closed_surface_invariant(&a, 1).unwrap();
        assert!((z - C64::new(k as f64, 0.0)).norm() <= 1e-9, "{z} vs {k}");
    }
}

#[test]
fn composite_matches_weight_oracle() {
    let mut r = rng(21);
    for _ in 0..20 {
        let k = r.random_range(1..=4);
        let theta: Vec<f64> = (0..k).map(|_| 0.25 + 3.0 * r.random::<f64>()).collect();
        let a = FrobeniusAlgebra::new(AlgebraData::semisimple(&theta).unwrap()).unwrap();
        for g in 0..=3 {
            let z = closed_surface_invariant(&a, g).unwrap();
            let want = semisimple_invariant(&theta, g);
            assert!((z.re - want).abs() <= 1e-9 * want.abs().max(1.0) && z.im.abs() <= 1e-9);
        }
    }
}

#[test]
fn multiplication_is_swap_invariant() {
    for data in corpus() {
        let a = FrobeniusAlgebra::new(data).unwrap();
        let m = a.generator_map(Generator::Mul).matrix;
        let ms = m.matmul(&a.generator_map(Generator::Swap).matrix);
        assert!(m.max_abs_diff(&ms) <= 1e-12);
    }
}

#[test]
fn generator_shapes() {
    let a = FrobeniusAlgebra::new(AlgebraData::semisimple(&[2.0, 3.0]).unwrap()).unwrap();
    let shapes = [
        (Generator::Cap, (2, 1)),
        (Generator::Cup, (1, 2)),
        (Generator::Mul, (2, 4)),
        (Generator::Comul, (4, 2)),
        (Generator::Id, (2, 2)),
        (Generator::Swap, (4, 4)),
    ];
    for (g, s) in shapes {
        let gm = a.generator_map(g);
        assert_eq!(gm.matrix.shape(), s, "{g}");
        assert_eq!(gm.euler, g.euler());
    }
    // Comultiplication of an idempotent is (1/θ) e⊗e.
    let d = a.generator_map(Generator::Comul).matrix;
    let want = CMat::from_fn(4, 2, |r, c| match (r, c) {
        (0, 0) => C64::new(0.5, 0.0),
        (3, 1) => C64::new(1.0 / 3.0, 0.0),
        _ => C64::new(0.0, 0.0),
    });
    assert!(d.max_abs_diff(&want) <= 1e-15);
}

#[test]
fn relations_hold_across_the_corpus() {
    for data in corpus() {
        let report = validate_frobenius(&data).unwrap();
        assert!(report.pass());
        let a = FrobeniusAlgebra::new(data).unwrap();
        for rel in relation_pairs() {
            assert_eq!(euler_char(&rel.lhs), euler_char(&rel.rhs));
            let l = evaluate(&rel.lhs, &a).unwrap();
            let r = evaluate(&rel.rhs, &a).unwrap();
            assert!(l.max_abs_diff(&r) <= 1e-9, "{}", rel.name);
        }
    }
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop::sample::select(Generator::ALL.to_vec()).prop_map(Term::atom);
    leaf.prop_recursive(5, 40, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, seq)| if seq { Term::seq(a, b) } else { Term::par(a, b) })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pretty_print_roundtrips(t in arb_term()) {
        let s = t.to_string();
        let back = parse(&s).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.to_string(), s);
    }

    #[test]
    fn whitespace_is_insignificant(t in arb_term(), pad in "[ \t\n]{0,3}") {
        let spaced = t.to_string().replace(' ', &format!(" {pad}"));
        prop_assert_eq!(parse(&spaced).unwrap(), t);
    }

    #[test]
    fn euler_is_additive(a in arb_term(), b in arb_term()) {
        let both = Term::par(a.clone(), b.clone());
        prop_assert_eq!(euler_char(&both), euler_char(&a) + euler_char(&b));
        if let (Ok(ta), Ok(tb)) = (typecheck(&a), typecheck(&b)) {
            let t = typecheck(&both).unwrap();
            prop_assert_eq!(t.inputs, ta.inputs + tb.inputs);
            prop_assert_eq!(t.outputs, ta.outputs + tb.outputs);
        }
    }

    #[test]
    fn closed_surfaces_have_even_euler(g in 0usize..8) {
        let t = genus_term(g);
        prop_assert!(typecheck(&t).unwrap().is_closed());
        prop_assert_eq!(euler_char(&t), 2 - 2 * g as i64);
    }
}
