use betanum::confluent::*;
use betanum::integersets::{delta_neg, delta_pos};
use betanum::words::{conjugacy_test, project_and_induce, Conjugacy};
use betanum::Error;

fn params(d: usize, m: u32, n: u32) -> ConfluentParams {
    ConfluentParams::new(d, m, n).unwrap()
}

#[test]
fn parameter_validation() {
    assert!(ConfluentParams::new(0, 1, 1).is_err());
    assert!(ConfluentParams::new(2, 1, 2).is_err());
    assert_eq!(ConfluentParams::new(1, 1, 1), Err(Error::NoRootAboveOne));
    assert_eq!(ConfluentParams::grid(5, 3).len(), 27);
}

#[test]
fn fields_of_examples() {
    let t = confluent_field(params(3, 1, 1));
    assert_eq!(t.minpoly().to_string(), "x^3 - x^2 - x - 1");
    let b = t.beta();
    assert!((b.pow(3).unwrap() - &b * &b - b.clone()).add_int(-1).is_zero());
    assert_eq!(confluent_field(params(1, 3, 2)).minpoly().to_string(), "x - 2");
}

#[test]
fn expected_words_display() {
    let w = |p| (expected_d_beta_one(p).to_string(), expected_d_minus_beta_ell(p).to_string());
    assert_eq!(w(params(3, 1, 1)), ("1110^ω".into(), "101^ω".into()));
    assert_eq!(w(params(4, 1, 1)), ("11110^ω".into(), "1010^ω".into()));
    assert_eq!(w(params(3, 2, 1)), ("2210^ω".into(), "201^ω".into()));
}

#[test]
fn expected_words_match_computation_on_grid() {
    for p in ConfluentParams::grid(5, 3) {
        let base = confluent_base(p).unwrap();
        let one = base.d_beta_one().unwrap();
        assert_eq!(one.periodic(), Some(&expected_d_beta_one(p)), "{p}");
        let ell = base.d_minus_beta_ell().unwrap();
        assert_eq!(ell.periodic(), Some(&expected_d_minus_beta_ell(p)), "{p}");
    }
}

#[test]
fn expected_delta_examples() {
    let p = params(3, 1, 1);
    let t = confluent_base(p).unwrap();
    assert_eq!(expected_delta(&t, p, 0).unwrap(), t.field().one());
    assert_eq!(expected_delta(&t, p, 2).unwrap(), t.beta().inverse().unwrap());
    assert_eq!(expected_delta(&t, p, 3), Err(Error::IndexOutOfRange { index: 3, len: 3 }));
    let q = params(2, 2, 1);
    let s = confluent_base(q).unwrap();
    assert_eq!(expected_delta(&s, q, 1).unwrap(), s.beta().inverse().unwrap());
}

#[test]
fn gap_identities_on_grid() {
    for p in ConfluentParams::grid(5, 3) {
        let base = confluent_base(p).unwrap();
        for i in 0..p.d {
            let e = expected_delta(&base, p, i).unwrap();
            assert_eq!(delta_pos(&base, i).unwrap(), e, "{p} Δ_{i}");
            let neg = delta_neg(&base, i).unwrap();
            if p.in_class() || i + 1 < p.d {
                assert_eq!(neg, e, "{p} Δ'_{i}");
            } else {
                assert_eq!(neg, e.add_int(1), "{p} Δ'_{i}");
            }
        }
    }
}

#[test]
fn pi_projection_images() {
    assert_eq!(pi_projection(2).unwrap().images(), &[vec![0], vec![0, 1]]);
    assert_eq!(pi_projection(4).unwrap().images(), &[vec![0], vec![1], vec![2], vec![0, 3]]);
    assert!(pi_projection(1).is_err());
}

#[test]
fn projection_induces_conjugate_map() {
    let p = params(2, 2, 1);
    let base = confluent_base(p).unwrap();
    let psi = betanum::words::antimorphism_neg_constructive(&base, 4).unwrap().substitution;
    let induced = project_and_induce(&pi_projection(2).unwrap(), &psi.square()).unwrap();
    assert_eq!(induced.images(), &[vec![0, 0, 0, 1, 0, 0, 1], vec![0, 0, 1]]);
    let (pos, _) = base.classify();
    let phi2 = betanum::words::canonical_morphism_pos(&pos).unwrap().square();
    match conjugacy_test(&phi2, &induced, 12).unwrap() {
        Conjugacy::Witness { word, .. } => assert_eq!(word, vec![0, 0, 1, 0, 0, 1]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn transform_lemma_holds() {
    for p in [params(3, 1, 1), params(2, 1, 1), params(2, 2, 1), params(5, 3, 2)] {
        let base = confluent_base(p).unwrap();
        for j in 1..=6 {
            assert!(check_transform_lemma(&base, j).unwrap(), "{p} j={j}");
        }
    }
}

#[test]
fn prefix_inequalities() {
    let t = confluent_base(params(3, 1, 1)).unwrap();
    let r = check_prefix_inequalities(&t, 12).unwrap();
    assert!(r.applicable && r.all_hold());
    assert_eq!(r.checks[0].rule, PrefixRule::C1);
    assert_eq!(r.checks[0].k, 1);

    let c = confluent_base(params(3, 2, 1)).unwrap();
    let r = check_prefix_inequalities(&c, 12).unwrap();
    let rules: Vec<_> = r.checks.iter().map(|c| c.rule).collect();
    assert_eq!(rules, vec![PrefixRule::C1, PrefixRule::C2]);
    assert!(r.all_hold());

    // ℓ-expansion 10^ω for the golden ratio has (10)^k prefixes followed by zeros
    let g = confluent_base(params(2, 1, 1)).unwrap();
    assert!(check_prefix_inequalities(&g, 12).unwrap().all_hold());

    // d = 1 gives n^ω, which does not start with m 0
    let two = confluent_base(params(1, 2, 2)).unwrap();
    assert!(!check_prefix_inequalities(&two, 8).unwrap().applicable);
}

#[test]
fn finiteness_counterexamples() {
    let cases = [
        (params(4, 1, 1), "110 • 0111(0110)^ω"),
        (params(3, 2, 1), "0 • 02212^ω"),
        (params(5, 2, 1), "0 • 000220(0121)^ω"),
    ];
    for (p, text) in cases {
        let base = confluent_base(p).unwrap();
        let c = finiteness_counterexample(&base, p).unwrap();
        assert_eq!(c.expansion.to_string(), text);
        assert_eq!(base.expand_real_neg(&c.value, 200).unwrap(), c.expansion, "{p}");
    }
    let t = confluent_base(params(3, 1, 1)).unwrap();
    assert!(matches!(finiteness_counterexample(&t, params(3, 1, 1)), Err(Error::OutOfClass(_))));
}
