use braidforge::braid_words::{Kind, Letter};
use braidforge::decomposition::{parse_normal_form, DEFAULT_BUDGET};
use braidforge::equivalence::{decide, replay_witness, Witness};
use braidforge::fusing_algebra::{
    act_permutation, expand_fusing_word, pair_counts, parse_fusing_word, relator_key, to_pure_times_coset,
};
use braidforge::schreier_rewriter::rewrite_unchecked;
use braidforge::symmetric_group::{coset_map, schreier_table};
use braidforge::*;
use proptest::prelude::*;

fn letter(n: usize) -> impl Strategy<Value = Letter> {
    (1..n, 0..5u8).prop_map(|(i, k)| match k {
        0 => Letter::sigma(i, 1),
        1 => Letter::sigma(i, -1),
        2 => Letter::tau(i, 1),
        3 => Letter::tau(i, -1),
        _ => Letter::v(i),
    })
}

fn word(n: usize, max: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(letter(n), 0..=max).prop_map(move |l| BraidWord::new(n, l).unwrap())
}

fn any_word(max: usize) -> impl Strategy<Value = BraidWord> {
    (2..=5usize).prop_flat_map(move |n| word(n, max))
}

fn fusing_letter(n: usize) -> impl Strategy<Value = FusingLetter> {
    (1..=n, 1..=n, any::<bool>(), any::<bool>())
        .prop_filter("distinct", |(i, j, _, _)| i != j)
        .prop_map(|(i, j, mu, pos)| {
            let l = if mu { FusingLetter::mu(i, j) } else { FusingLetter::gamma(i, j) };
            if pos {
                l
            } else {
                l.inverse()
            }
        })
}

/// w·λ⁻¹ with λ its coset representative: a pure word.
fn purify(w: &BraidWord) -> BraidWord {
    w.concat(&coset_map(w).unwrap().to_word().inverse()).free_reduce()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_reduce_is_idempotent(w in any_word(20)) {
        let r = w.free_reduce();
        prop_assert!(r.is_freely_reduced());
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn display_parse_round_trip(w in any_word(20)) {
        prop_assert_eq!(parse_word(&w.to_string(), w.strands()).unwrap(), w);
    }

    #[test]
    fn permutation_is_a_homomorphism(u in word(4, 10), v in word(4, 10)) {
        prop_assert_eq!(permutation_of(&u.concat(&v)), permutation_of(&u).then(&permutation_of(&v)));
        prop_assert_eq!(permutation_of(&u.inverse()), permutation_of(&u).inverse());
        prop_assert_eq!(permutation_of(&u.free_reduce()), permutation_of(&u));
    }

    #[test]
    fn exponent_invariants_survive_free_reduction(w in any_word(20)) {
        prop_assert_eq!(w.free_reduce().exponent_invariants(), w.exponent_invariants());
    }

    #[test]
    fn pure_times_coset_recombines(w in any_word(20)) {
        let d = to_pure_times_coset(&w).unwrap();
        let back = d.pure.expand().concat(&d.coset.to_word());
        prop_assert_eq!(permutation_of(&back), permutation_of(&w));
        prop_assert_eq!(back.exponent_invariants(), w.exponent_invariants());
        prop_assert_eq!(&d.coset, &coset_map(&w).unwrap());
        prop_assert!(permutation_of(&d.pure.expand()).is_identity());
    }

    #[test]
    fn rewrite_agrees_with_sweep_on_pure_words(w in any_word(16)) {
        let p = purify(&w);
        let r = rewrite_r(&p).unwrap();
        let d = to_pure_times_coset(&p).unwrap();
        prop_assert!(d.coset.is_empty());
        prop_assert_eq!(pair_counts(r.letters()), pair_counts(d.pure.letters()));
        prop_assert_eq!(rewrite_unchecked(&p).unwrap(), r);
    }

    #[test]
    fn fusing_word_round_trip(ls in prop::collection::vec(fusing_letter(4), 0..12)) {
        let f = FusingWord::new(4, ls).unwrap();
        prop_assert_eq!(parse_fusing_word(&f.to_string(), 4).unwrap(), f.clone());
        prop_assert!(permutation_of(&f.expand()).is_identity());
    }

    #[test]
    fn action_composes(ls in prop::collection::vec(fusing_letter(4), 1..4), a in 0..24usize, b in 0..24usize) {
        let t = schreier_table(4).unwrap();
        let (p, q) = (t.reps()[a].permutation(), t.reps()[b].permutation());
        for l in ls {
            prop_assert_eq!(act_permutation(&p.then(&q), l), act_permutation(&q, act_permutation(&p, l)));
            prop_assert_eq!(act_permutation(&p, l).inverse(), act_permutation(&p, l.inverse()));
        }
    }

    #[test]
    fn relator_key_ignores_rotation(ls in prop::collection::vec(fusing_letter(3), 1..8), k in 0..8usize) {
        let k = k % ls.len();
        let rotated: Vec<FusingLetter> = ls[k..].iter().chain(&ls[..k]).copied().collect();
        prop_assert_eq!(relator_key(&ls, &[]), relator_key(&rotated, &[]));
        let inv: Vec<FusingLetter> = ls.iter().rev().map(|l| l.inverse()).collect();
        prop_assert_eq!(relator_key(&ls, &[]), relator_key(&inv, &[]));
    }

    #[test]
    fn normal_form_invariants(w in any_word(20)) {
        let nf = normal_form(&w, DEFAULT_BUDGET).unwrap();
        nf.validate().unwrap();
        let levels: Vec<usize> = nf.layers.iter().map(|l| l.level).collect();
        prop_assert!(levels.windows(2).all(|p| p[0] > p[1]));
        let back = nf.recompose();
        prop_assert_eq!(permutation_of(&back), permutation_of(&w));
        prop_assert_eq!(back.exponent_invariants(), w.exponent_invariants());
        let pure = to_pure_times_coset(&w).unwrap().pure;
        prop_assert_eq!(pair_counts(nf.flatten().letters()), pair_counts(pure.letters()));
    }

    #[test]
    fn normal_form_is_deterministic_and_idempotent(w in any_word(16)) {
        let nf = normal_form(&w, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(&normal_form(&w, DEFAULT_BUDGET).unwrap(), &nf);
        prop_assert_eq!(&normal_form(&nf.recompose(), DEFAULT_BUDGET).unwrap(), &nf);
        prop_assert_eq!(&parse_normal_form(&nf.to_string(), w.strands()).unwrap(), &nf);
    }

    #[test]
    fn conjugated_letters_never_wrap_forward_mu(w in any_word(20)) {
        let nf = normal_form(&w, DEFAULT_BUDGET).unwrap();
        for layer in &nf.layers {
            for c in &layer.letters {
                let forward_mu = c.base.family == Family::Mu && c.base.i < c.base.j;
                prop_assert!(c.conjugator.is_empty() || !forward_mu, "{}", c);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_recomposes_to_an_equal_word(w in word(3, 8)) {
        let nf = normal_form(&w, DEFAULT_BUDGET).unwrap();
        let verdict = decide(&nf.recompose(), &w, &Bounds::default());
        prop_assert!(verdict.is_equal(), "{:?}", verdict.status);
        prop_assert!(replay_witness(&nf.recompose(), &w, verdict.moves()));
    }

    #[test]
    fn rewriting_is_sound_on_small_pure_words(w in word(3, 8)) {
        let p = purify(&w);
        let r = rewrite_r(&p).unwrap();
        let e = expand_fusing_word(3, r.letters());
        prop_assert!(decide(&e, &p, &Bounds::default()).is_equal());
    }

    #[test]
    fn unequal_verdicts_name_a_real_invariant(u in word(3, 6), v in word(3, 6)) {
        let verdict = decide(&u, &v, &Bounds { max_len: None, max_nodes: 2_000 });
        if let Witness::Invariant(sep) = &verdict.witness {
            prop_assert_eq!(verdict.status, Status::Unequal);
            prop_assert_ne!(&sep.lhs, &sep.rhs);
            let differs = match sep.invariant.as_str() {
                "permutation" => permutation_of(&u) != permutation_of(&v),
                "sigma_sum" => u.exponent_invariants().sigma_sum != v.exponent_invariants().sigma_sum,
                "tau_sum" => u.exponent_invariants().tau_sum != v.exponent_invariants().tau_sum,
                "v_parity" => u.exponent_invariants().v_parity != v.exponent_invariants().v_parity,
                "pair_counts" => {
                    pair_counts(rewrite_r(&u).unwrap().letters()) != pair_counts(rewrite_r(&v).unwrap().letters())
                }
                other => panic!("unknown invariant {other}"),
            };
            prop_assert!(differs);
        }
    }

    #[test]
    fn equal_witnesses_replay(w in word(3, 5), r in 0..30usize) {
        let table = fusing_algebra::relation_table(fusing_algebra::Presentation::Standard, 3);
        let rel = &table[r % table.len()];
        let u = w.concat(&rel.lhs.expand());
        let v = w.concat(&rel.rhs.expand());
        let verdict = decide(&u, &v, &Bounds::default());
        prop_assert!(verdict.is_equal());
        prop_assert!(replay_witness(&u, &v, verdict.moves()));
    }

    #[test]
    fn virtual_letters_rewrite_to_nothing(k in 1..3usize) {
        let l = Letter::v(k);
        prop_assert_eq!(l.kind, Kind::V);
        let lambda = schreier_table(3).unwrap().reps()[k].clone();
        prop_assert_eq!(schreier_rewriter::schreier_generator(&lambda, l), None);
    }
}
