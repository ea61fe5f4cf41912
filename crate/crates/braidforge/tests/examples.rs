use braidforge::braid_words::{exponent_invariants, Letter};
use braidforge::decomposition::{conjugate_letter, level_of, DEFAULT_BUDGET};
use braidforge::equivalence::{decide, relation_neighbors, replay_witness, Witness};
use braidforge::fusing_algebra::{
    act_permutation, expand_fusing, families, pair_counts, parse_mixed_word, relation_table, to_pure_times_coset,
    verify_relation, Family, Presentation,
};
use braidforge::schreier_rewriter::{derive_pure_relations, schreier_generator};
use braidforge::symmetric_group::{parse_permutation, schreier_representative};
use braidforge::*;

fn w(s: &str, n: usize) -> BraidWord {
    parse_word(s, n).unwrap()
}

fn m(i: usize, j: usize) -> FusingLetter {
    FusingLetter::mu(i, j)
}

fn g(i: usize, j: usize) -> FusingLetter {
    FusingLetter::gamma(i, j)
}

#[test]
fn free_reduction_examples() {
    let cases = [("s1 S1", 2), ("v1 v1", 2), ("t1 v2 v2 T1", 3)];
    for (s, n) in cases {
        let reduced = w(s, n).free_reduce();
        assert!(reduced.is_empty(), "{s}");
        assert!(decide(&w(s, n), &BraidWord::identity(n), &Bounds::default()).is_equal());
    }
}

#[test]
fn exponent_invariants_balance_on_singular_braid_relation() {
    let l = exponent_invariants(w("s1 s2 t1", 3).letters());
    let r = exponent_invariants(w("t2 s1 s2", 3).letters());
    assert_eq!((l.sigma_sum, l.tau_sum, l.v_parity), (2, 1, 0));
    assert_eq!(l, r);
    for n in 2..=5 {
        for rel in relation_table(Presentation::Standard, n) {
            assert_eq!(rel.lhs.expand().exponent_invariants(), rel.rhs.expand().exponent_invariants(), "{rel}");
        }
    }
}

#[test]
fn permutation_examples() {
    assert_eq!(permutation_of(&w("s1", 2)).to_string(), "(1 2)");
    assert_eq!(permutation_of(&w("s1 v2 t1", 3)).to_string(), "(1 3)");
    let rep = |s: &str| schreier_representative(&parse_permutation(s, 3).unwrap()).unwrap().to_string();
    assert_eq!(rep("(1 2)"), "v1");
    assert_eq!(rep("(1 3)"), "v1 v2 v1");
    let c = symmetric_group::coset_map(&w("s2 s1", 3)).unwrap();
    assert_eq!(c.to_string(), "v2 v1");
    assert_eq!(c.permutation(), permutation_of(&w("s2 s1", 3)));
}

#[test]
fn fusing_expansion_examples() {
    assert_eq!(expand_fusing(m(1, 2), 2).to_string(), "s1 v1");
    assert_eq!(expand_fusing(g(2, 1), 2).to_string(), "v1 t1");
    assert_eq!(expand_fusing(m(1, 3), 3).to_string(), "v2 s1 v1 v2");
}

#[test]
fn action_examples() {
    let t12 = parse_permutation("(1 2)", 2).unwrap();
    assert_eq!(act_permutation(&t12, m(1, 2)), m(2, 1));
    let t13 = parse_permutation("(1 3)", 3).unwrap();
    assert_eq!(act_permutation(&t13, g(1, 2)), g(3, 2));
}

#[test]
fn pure_times_coset_examples() {
    let d = to_pure_times_coset(&w("s1", 2)).unwrap();
    assert_eq!(d.pure.to_string(), "m[1,2]");
    assert_eq!(d.coset.to_string(), "v1");
    let d = to_pure_times_coset(&w("s1 t1", 2)).unwrap();
    assert_eq!(d.pure.to_string(), "m[1,2] g[2,1]");
    assert!(d.coset.is_empty());
}

#[test]
fn relation_table_examples() {
    let std2 = relation_table(Presentation::Standard, 2);
    assert!(std2.iter().any(|r| r.lhs.to_string() == "s1 t1" && r.rhs.to_string() == "t1 s1"));
    let pure2 = relation_table(Presentation::Pure, 2);
    assert!(pure2.iter().any(|r| r.lhs.to_string() == "m[1,2] g[2,1]" && r.rhs.to_string() == "g[1,2] m[2,1]"));
    let yb = relation_table(Presentation::Pure, 3).into_iter().filter(|r| r.family == families::PURE_YB).count();
    assert_eq!(yb, 6);
}

#[test]
fn verify_relation_examples() {
    let b = Bounds::default();
    let rep = verify_relation(&parse_mixed_word("s1 s2 s1", 3).unwrap(), &parse_mixed_word("s2 s1 s2", 3).unwrap(), &b);
    assert!(rep.passed());
    let lhs = parse_mixed_word("m[1,2] v1 g[1,2]", 2).unwrap();
    let rhs = parse_mixed_word("g[1,2] v1 m[1,2]", 2).unwrap();
    assert!(verify_relation(&lhs, &rhs, &b).passed());
}

#[test]
fn schreier_generator_examples() {
    let empty = SchreierWord::empty(2);
    assert_eq!(schreier_generator(&empty, Letter::sigma(1, 1)), Some(m(1, 2)));
    let v1 = SchreierWord::from_word(&w("v1", 2)).unwrap();
    assert_eq!(schreier_generator(&v1, Letter::tau(1, 1)), Some(g(2, 1)));
    let v2 = SchreierWord::from_word(&w("v2 v1", 3)).unwrap();
    assert_eq!(schreier_generator(&v2, Letter::v(2)), None);
}

#[test]
fn rewrite_examples() {
    assert_eq!(rewrite_r(&w("s1 t1", 2)).unwrap().to_string(), "m[1,2] g[2,1]");
    assert!(rewrite_r(&w("v1 v1", 2)).unwrap().is_empty());
    assert_eq!(rewrite_r(&w("s1 s2 s1 v1 v2 v1", 3)).unwrap().to_string(), "m[1,2] m[1,3] m[2,3]");
    assert!(matches!(rewrite_r(&w("s1", 2)), Err(Error::NotPure(_))));
}

#[test]
fn derived_relation_examples() {
    let d2 = derive_pure_relations(2).unwrap();
    assert!(d2.iter().any(|d| d.coset.is_empty()
        && d.source.lhs.to_string() == "s1 t1"
        && d.lhs.to_string() == "m[1,2] g[2,1]"
        && d.rhs.to_string() == "g[1,2] m[2,1]"));
    let d3 = derive_pure_relations(3).unwrap();
    assert!(d3.iter().filter(|d| d.source.family == families::VIRTUAL_BRAID).all(|d| d.trivial));
    assert!(d3.iter().any(|d| d.coset.is_empty()
        && d.source.lhs.to_string() == "s1 s2 t1"
        && d.lhs.to_string() == "m[1,2] m[1,3] g[2,3]"
        && d.rhs.to_string() == "g[2,3] m[1,3] m[1,2]"));
}

#[test]
fn level_examples() {
    assert_eq!(level_of(m(1, 2)), 1);
    assert_eq!(level_of(g(3, 1)), 2);
    assert_eq!(level_of(m(2, 5)), 4);
}

#[test]
fn conjugation_examples() {
    let show = |v: Vec<ConjugatedLetter>| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    let c = conjugate_letter(&ConjugatedLetter::plain(m(1, 3)), m(1, 2)).unwrap();
    assert_eq!(show(c), "m[3,2]^[m[1,2]] m[1,3] M[3,2]");
    let c = conjugate_letter(&ConjugatedLetter::plain(m(3, 4)), g(1, 2)).unwrap();
    assert_eq!(show(c), "m[3,4]");
    let c = conjugate_letter(&ConjugatedLetter::plain(m(3, 1)), m(1, 2)).unwrap();
    assert_eq!(show(c), "m[3,2] m[3,1] M[3,2]^[m[1,2]]");
}

#[test]
fn normal_form_examples() {
    let nf = normal_form(&BraidWord::identity(3), DEFAULT_BUDGET).unwrap();
    assert!(nf.layers.iter().all(|l| l.letters.is_empty()) && nf.coset.is_empty());
    assert_eq!(nf.to_string(), "w2:\nw1:\ncoset: ");

    let nf = normal_form(&w("s1", 2), DEFAULT_BUDGET).unwrap();
    assert_eq!(nf.to_string(), "w1: m[1,2]\ncoset: v1");
    assert_eq!(nf.recompose().to_string(), "s1");

    // Frozen after the oracle confirmed the recomposition.
    let input = parse_fusing_word("m[1,2] m[1,3]", 3).unwrap().expand();
    let nf = normal_form(&input, DEFAULT_BUDGET).unwrap();
    assert_eq!(nf.to_string(), "w2: M[3,2] m[1,3] m[3,2]^[M[1,2]]\nw1: m[1,2]\ncoset: ");
    assert!(decide(&nf.recompose(), &input, &Bounds::default()).is_equal());
}

#[test]
fn pair_count_examples() {
    let c = pair_counts(&[m(1, 2), g(2, 1)]);
    assert_eq!(c.get(&((1, 2), Family::Mu)), Some(&1));
    assert_eq!(c.get(&((1, 2), Family::Gamma)), Some(&1));
    assert_eq!(c.len(), 2);
    assert_eq!(pair_counts(&[m(1, 2), g(2, 1)]), pair_counts(&[g(1, 2), m(2, 1)]));
    assert_eq!(pair_counts(&[m(1, 2), m(1, 3), m(2, 3)]), pair_counts(&[m(2, 3), m(1, 3), m(1, 2)]));
}

#[test]
fn neighbor_and_decide_examples() {
    assert!(relation_neighbors(&w("s1 t1", 2)).contains(&w("t1 s1", 2)));
    assert!(relation_neighbors(&w("v1 s2 v1", 3)).contains(&w("v2 s1 v2", 3)));
    let (u, v) = (w("s1 s2 s1", 3), w("s2 s1 s2", 3));
    let verdict = decide(&u, &v, &Bounds::default());
    assert!(verdict.is_equal() && replay_witness(&u, &v, verdict.moves()));
    let verdict = decide(&w("s1", 2), &w("t1", 2), &Bounds::default());
    assert_eq!(verdict.status, Status::Unequal);
    assert!(matches!(&verdict.witness, Witness::Invariant(s) if s.invariant == "sigma_sum"));
    let x = w("s1 T2 v1", 3);
    assert!(decide(&x, &x, &Bounds::default()).moves().is_empty());
}
