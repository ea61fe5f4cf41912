//! Acceptance checks shared by the test suite and the `verify-suite` command.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid_words::{BraidWord, Letter};
use crate::decomposition::{normal_form, DEFAULT_BUDGET};
use crate::equivalence::{decide, replay_witness, Bounds, OracleVerdict, Status};
use crate::fusing_algebra::{
    act_permutation, expand_fusing_word, families, pair_counts, relation_table,
    relator_key, to_pure_times_coset, verify_relation, FusingLetter, Presentation, Relation,
};
use crate::schreier_rewriter::derive_pure_relations;
use crate::symmetric_group::{permutation_of, schreier_table};

pub const SEED: u64 = 0x5eed_b7a1d;

/// decide, with Equal demoted to Unknown unless its witness replays.
pub fn certified_decide(u: &BraidWord, v: &BraidWord, bounds: &Bounds) -> OracleVerdict {
    let mut verdict = decide(u, v, bounds);
    if verdict.is_equal() && !replay_witness(u, v, verdict.moves()) {
        verdict.status = Status::Unknown;
    }
    verdict
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub number: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub summary: String,
    /// Reproducers for failing instances, truncated.
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} ({:.1}s)",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.summary,
            self.seconds
        )
    }
}

const MAX_REPRODUCERS: usize = 20;

struct Draft {
    passed: bool,
    checked: usize,
    summary: String,
    failures: Vec<String>,
}

fn timed(number: u8, title: &'static str, run: impl FnOnce() -> Draft) -> CriterionReport {
    let start = Instant::now();
    let mut d = run();
    d.failures.truncate(MAX_REPRODUCERS);
    CriterionReport {
        number,
        title,
        passed: d.passed,
        checked: d.checked,
        summary: d.summary,
        failures: d.failures,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn relation_suite(presentation: Presentation, strands: std::ops::RangeInclusive<usize>) -> Draft {
    let jobs: Vec<(usize, Relation)> =
        strands.flat_map(|n| relation_table(presentation, n).into_iter().map(move |r| (n, r))).collect();
    let bounds = Bounds::default();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(n, r)| {
            let rep = verify_relation(&r.lhs, &r.rhs, &bounds);
            let replayed = replay_witness(&r.lhs.expand(), &r.rhs.expand(), rep.verdict.moves());
            (!rep.passed() || !replayed).then(|| format!("n={n} {}: {} -> {:?}", r.family, r, rep.verdict.status))
        })
        .collect();
    Draft {
        passed: failures.is_empty(),
        checked: jobs.len(),
        summary: format!("{}/{} relations Equal", jobs.len() - failures.len(), jobs.len()),
        failures,
    }
}

pub fn presentation_relations() -> CriterionReport {
    timed(1, "standard presentation relations, n=2..5", || relation_suite(Presentation::Standard, 2..=5))
}

pub fn alternative_relations() -> CriterionReport {
    timed(2, "alternative presentation relations, n=2..4", || relation_suite(Presentation::Fusing, 2..=4))
}

/// Which relation families may rewrite to a literally trivial pair.
fn trivial_allowed(r: &Relation) -> bool {
    let has_v = |w: &crate::fusing_algebra::MixedWord| w.expand().letters().iter().any(|l| l.kind == crate::braid_words::Kind::V);
    match r.family {
        families::INVOLUTION | families::VIRTUAL_BRAID | families::VIRTUAL_MIXED => true,
        families::FAR_COMMUTE => has_v(&r.lhs) || has_v(&r.rhs),
        _ => false,
    }
}

pub fn pure_relations_reproduced() -> CriterionReport {
    timed(3, "pure relations from rewriting, n=3,4", || {
        let mut passed = true;
        let mut checked = 0;
        let mut failures = Vec::new();
        let mut parts = Vec::new();
        for n in [3, 4] {
            let derived = match derive_pure_relations(n) {
                Ok(d) => d,
                Err(e) => {
                    return Draft { passed: false, checked, summary: format!("n={n}: {e}"), failures };
                }
            };
            checked += derived.len();
            let mut got = BTreeSet::new();
            for d in &derived {
                if d.trivial {
                    if !trivial_allowed(&d.source) {
                        passed = false;
                        failures.push(format!("n={n} unexpected trivial pair from {} at coset {}", d.source, d.coset));
                    }
                } else {
                    got.insert(relator_key(d.lhs.letters(), d.rhs.letters()));
                }
            }
            let want: BTreeSet<Vec<FusingLetter>> = relation_table(Presentation::Pure, n)
                .iter()
                .map(|r| {
                    let side = |w: &crate::fusing_algebra::MixedWord| w.as_fusing().expect("pure table is fusing");
                    relator_key(side(&r.lhs).letters(), side(&r.rhs).letters())
                })
                .collect();
            let extras: Vec<_> = got.difference(&want).collect();
            let gaps: Vec<_> = want.difference(&got).collect();
            let show = |k: &Vec<FusingLetter>| k.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
            failures.extend(extras.iter().map(|k| format!("n={n} extra relator {}", show(k))));
            failures.extend(gaps.iter().map(|k| format!("n={n} missing relator {}", show(k))));
            passed &= extras.is_empty() && gaps.is_empty();
            parts.push(format!("n={n}: {} relators, {} extras, {} gaps", want.len(), extras.len(), gaps.len()));
        }
        Draft { passed, checked, summary: parts.join("; "), failures }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub name: String,
    pub strands: usize,
    pub lhs: Vec<FusingLetter>,
    pub rhs: Vec<FusingLetter>,
}

fn conj(base: FusingLetter, x: FusingLetter) -> Vec<FusingLetter> {
    vec![x.inverse(), base, x]
}

fn cat(parts: &[&[FusingLetter]]) -> Vec<FusingLetter> {
    parts.concat()
}

/// Conjugation identities for level-k letters by lower-level letters on the
/// strands {i, j, k} with max(i, j) < k, plus the disjoint-support case.
pub fn conjugation_identities() -> Vec<Identity> {
    let mut out = Vec::new();
    for (i, j, k) in [(1, 2, 3), (2, 1, 3)] {
        let m = |p, q| FusingLetter::mu(p, q);
        let g = |p, q| FusingLetter::gamma(p, q);
        let inv = |l: FusingLetter| l.inverse();
        let (mij, gij) = (m(i, j), g(i, j));
        let (bmij, bgij) = (inv(mij), inv(gij));
        let ids: Vec<(FusingLetter, FusingLetter, Vec<FusingLetter>)> = vec![
            (m(i, k), mij, cat(&[&conj(m(k, j), mij), &[m(i, k), inv(m(k, j))]])),
            (m(i, k), bmij, cat(&[&[inv(m(k, j)), m(i, k)], &conj(m(k, j), bmij)])),
            (
                m(i, k),
                gij,
                cat(&[
                    &conj(inv(g(j, k)), gij),
                    &conj(inv(m(k, j)), gij),
                    &conj(g(k, j), gij),
                    &[m(i, k), m(j, k)],
                ]),
            ),
            (
                m(i, k),
                bgij,
                cat(&[
                    &[m(j, k), m(i, k)],
                    &conj(inv(g(j, k)), bgij),
                    &conj(inv(m(k, j)), bgij),
                    &conj(g(k, j), bgij),
                ]),
            ),
            (g(i, k), mij, cat(&[&conj(m(k, j), mij), &[g(i, k), inv(m(k, j))]])),
            (g(i, k), bmij, cat(&[&[inv(m(k, j)), g(i, k)], &conj(m(k, j), bmij)])),
            (m(k, i), mij, cat(&[&[m(k, j), m(k, i)], &conj(inv(m(k, j)), mij)])),
            (m(k, i), bmij, cat(&[&conj(inv(m(k, j)), bmij), &[m(k, i), m(k, j)]])),
            (m(k, i), gij, cat(&[&[m(k, j), m(k, i)], &conj(inv(m(k, j)), gij)])),
            (m(k, i), bgij, cat(&[&conj(inv(m(k, j)), bgij), &[m(k, i), m(k, j)]])),
            (g(k, i), mij, cat(&[&[m(k, j), g(k, i)], &conj(inv(m(k, j)), mij)])),
            (g(k, i), bmij, cat(&[&conj(inv(m(k, j)), bmij), &[g(k, i), m(k, j)]])),
            (
                m(j, k),
                mij,
                cat(&[&[m(i, k), m(j, k), m(k, j), inv(m(i, k))], &conj(inv(m(k, j)), mij)]),
            ),
            (
                m(j, k),
                bmij,
                cat(&[&conj(inv(m(k, j)), bmij), &[inv(m(i, k)), m(k, j), m(j, k), m(i, k)]]),
            ),
            (m(j, k), gij, cat(&[&conj(g(j, k), gij), &conj(m(k, j), gij), &conj(inv(g(k, j)), gij)])),
            (m(j, k), bgij, cat(&[&conj(g(j, k), bgij), &conj(m(k, j), bgij), &conj(inv(g(k, j)), bgij)])),
            (
                g(j, k),
                mij,
                cat(&[&[m(i, k), g(j, k), m(k, j), inv(m(i, k))], &conj(inv(m(k, j)), mij)]),
            ),
            (
                g(j, k),
                bmij,
                cat(&[&conj(inv(m(k, j)), bmij), &[inv(m(i, k)), m(k, j), g(j, k), m(i, k)]]),
            ),
            (
                g(k, j),
                mij,
                cat(&[&conj(m(k, j), mij), &[m(i, k), inv(m(k, j)), g(k, j), inv(m(i, k))]]),
            ),
            (
                g(k, j),
                bmij,
                cat(&[&[inv(m(i, k)), g(k, j), inv(m(k, j)), m(i, k)], &conj(m(k, j), bmij)]),
            ),
        ];
        for (base, x, rhs) in ids {
            out.push(Identity { name: format!("{base}^{x}"), strands: 3, lhs: conj(base, x), rhs });
        }
    }
    let n = 4;
    for (p, q) in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((2, 3), (1, 4))] {
        for (i, j) in [p, (p.1, p.0)] {
            for (k, l) in [q, (q.1, q.0)] {
                for alpha in [FusingLetter::mu(k, l), FusingLetter::gamma(k, l)] {
                    for beta in [FusingLetter::mu(i, j), FusingLetter::gamma(i, j)] {
                        for beta in [beta, beta.inverse()] {
                            out.push(Identity {
                                name: format!("{alpha}^{beta}"),
                                strands: n,
                                lhs: conj(alpha, beta),
                                rhs: vec![alpha],
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn conjugation_identities_hold() -> CriterionReport {
    timed(4, "conjugation identities, n=3 and n=4", || {
        let ids = conjugation_identities();
        let bounds = Bounds::default();
        let failures: Vec<String> = ids
            .par_iter()
            .filter_map(|id| {
                let u = expand_fusing_word(id.strands, &id.lhs);
                let v = expand_fusing_word(id.strands, &id.rhs);
                let verdict = certified_decide(&u, &v, &bounds);
                (!verdict.is_equal()).then(|| format!("n={} {}: {u} vs {v} -> {:?}", id.strands, id.name, verdict.status))
            })
            .collect();
        Draft {
            passed: failures.is_empty(),
            checked: ids.len(),
            summary: format!("{}/{} identities Equal", ids.len() - failures.len(), ids.len()),
            failures,
        }
    })
}

pub fn action_coherence() -> CriterionReport {
    timed(5, "permutation action on fusing letters, n=2..4", || {
        let mut jobs = Vec::new();
        for n in 2..=4 {
            let table = schreier_table(n).expect("small table");
            for lambda in table.reps() {
                for a in 1..=n {
                    for b in 1..=n {
                        if a == b {
                            continue;
                        }
                        for l in [FusingLetter::mu(a, b), FusingLetter::gamma(a, b)] {
                            for l in [l, l.inverse()] {
                                jobs.push((n, lambda.clone(), l));
                            }
                        }
                    }
                }
            }
        }
        let bounds = Bounds::default();
        let failures: Vec<String> = jobs
            .par_iter()
            .filter_map(|(n, lambda, l)| {
                let relabeled = act_permutation(&lambda.permutation(), *l);
                let lhs = expand_fusing_word(*n, &[relabeled]);
                let lw = lambda.to_word();
                let rhs = lw.inverse().concat(&expand_fusing_word(*n, &[*l])).concat(&lw);
                let verdict = certified_decide(&lhs, &rhs, &bounds);
                (!verdict.is_equal())
                    .then(|| format!("n={n} lambda={lambda} letter={l} relabeled={relabeled} -> {:?}", verdict.status))
            })
            .collect();
        Draft {
            passed: failures.is_empty(),
            checked: jobs.len(),
            summary: format!("{}/{} conjugations Equal", jobs.len() - failures.len(), jobs.len()),
            failures,
        }
    })
}

/// Uniform length in 0..=max_len, uniform letters from s, S, t, T, v.
pub fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n);
            match rng.gen_range(0..5) {
                0 => Letter::sigma(i, 1),
                1 => Letter::sigma(i, -1),
                2 => Letter::tau(i, 1),
                3 => Letter::tau(i, -1),
                _ => Letter::v(i),
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("valid random word")
}

pub fn normal_form_round_trip() -> CriterionReport {
    timed(6, "normal form round trip", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let small: Vec<BraidWord> = (0..1000).map(|_| random_word(&mut rng, 3, 8)).collect();
        let large: Vec<BraidWord> = (0..1000)
            .map(|_| {
                let n = rng.gen_range(2..=5);
                random_word(&mut rng, n, 20)
            })
            .collect();
        let bounds = Bounds::default();
        let oracle: Vec<(Status, String)> = small
            .par_iter()
            .map(|w| match normal_form(w, DEFAULT_BUDGET) {
                Ok(nf) => (certified_decide(&nf.recompose(), w, &bounds).status, w.to_string()),
                Err(e) => (Status::Unknown, format!("{w}: {e}")),
            })
            .collect();
        let unknown = oracle.iter().filter(|o| o.0 == Status::Unknown).count();
        let unequal = oracle.iter().filter(|o| o.0 == Status::Unequal).count();
        let mut failures: Vec<String> = oracle
            .iter()
            .filter(|o| o.0 != Status::Equal)
            .map(|o| format!("n=3 \"{}\" -> {:?}", o.1, o.0))
            .collect();
        let inv_fail: Vec<String> = large
            .par_iter()
            .filter_map(|w| {
                let nf = match normal_form(w, DEFAULT_BUDGET) {
                    Ok(nf) => nf,
                    Err(e) => return Some(format!("n={} \"{w}\": {e}", w.strands())),
                };
                let back = nf.recompose();
                let pure = to_pure_times_coset(w).expect("valid word").pure;
                let ok = permutation_of(&back) == permutation_of(w)
                    && back.exponent_invariants() == w.exponent_invariants()
                    && pair_counts(nf.flatten().letters()) == pair_counts(pure.letters())
                    && nf.validate().is_ok();
                (!ok).then(|| format!("n={} \"{w}\" invariants differ", w.strands()))
            })
            .collect();
        let inv_count = inv_fail.len();
        failures.extend(inv_fail);
        Draft {
            passed: unknown == 0 && unequal == 0 && inv_count == 0,
            checked: small.len() + large.len(),
            summary: format!(
                "oracle: {} Equal, {unknown} Unknown, {unequal} Unequal of {}; invariants: {} failures of {}",
                small.len() - unknown - unequal,
                small.len(),
                inv_count,
                large.len()
            ),
            failures,
        }
    })
}

/// Families whose stability is required; the others are reported only.
pub const STABILITY_REQUIRED: [&str; 4] =
    [families::CANCEL, families::INVOLUTION, families::TWIST, families::FAR_COMMUTE];

#[derive(Clone, Debug, Default, Serialize)]
pub struct FamilyTally {
    pub trials: usize,
    pub failures: usize,
}

/// Triples (a, relation, b) at n = 3; returns per-family tallies and reproducers.
pub fn stability_trials(trials: usize, seed: u64) -> (BTreeMap<&'static str, FamilyTally>, Vec<String>) {
    let n = 3;
    let table = relation_table(Presentation::Standard, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs: Vec<(BraidWord, usize, BraidWord)> = (0..trials)
        .map(|_| {
            let a = random_word(&mut rng, n, 3);
            let r = rng.gen_range(0..table.len());
            let b = random_word(&mut rng, n, 3);
            (a, r, b)
        })
        .collect();
    let results: Vec<(&'static str, Option<String>)> = jobs
        .par_iter()
        .map(|(a, r, b)| {
            let rel = &table[*r];
            let lw = a.concat(&rel.lhs.expand()).concat(b);
            let rw = a.concat(&rel.rhs.expand()).concat(b);
            let same = match (normal_form(&lw, DEFAULT_BUDGET), normal_form(&rw, DEFAULT_BUDGET)) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            };
            let repro = (!same).then(|| format!("{}: a=\"{a}\" relation {rel} b=\"{b}\"", rel.family));
            (rel.family, repro)
        })
        .collect();
    let mut tally: BTreeMap<&'static str, FamilyTally> = BTreeMap::new();
    let mut repros = Vec::new();
    for (family, repro) in results {
        let t = tally.entry(family).or_default();
        t.trials += 1;
        if let Some(r) = repro {
            t.failures += 1;
            repros.push(r);
        }
    }
    (tally, repros)
}

pub fn normal_form_stability() -> CriterionReport {
    timed(7, "normal form stability under relations, n=3", || {
        let (tally, repros) = stability_trials(500, SEED ^ 7);
        let required_failures: usize = tally
            .iter()
            .filter(|(f, _)| STABILITY_REQUIRED.contains(f))
            .map(|(_, t)| t.failures)
            .sum();
        let summary = tally
            .iter()
            .map(|(f, t)| {
                let tag = if STABILITY_REQUIRED.contains(f) { "" } else { " report-only" };
                format!("{f} {}/{}{tag}", t.failures, t.trials)
            })
            .collect::<Vec<_>>()
            .join(", ");
        Draft {
            passed: required_failures == 0,
            checked: tally.values().map(|t| t.trials).sum(),
            summary: format!("failures per family: {summary}"),
            failures: repros,
        }
    })
}

pub fn schreier_system() -> CriterionReport {
    timed(8, "coset representatives, n=2..6", || {
        let mut failures = Vec::new();
        let mut checked = 0;
        for n in 2..=6 {
            let table = schreier_table(n).expect("small table");
            let factorial: usize = (1..=n).product();
            let perms: HashSet<_> = table.reps().iter().map(|r| r.permutation()).collect();
            checked += table.reps().len();
            if table.reps().len() != factorial || perms.len() != factorial {
                failures.push(format!("n={n}: {} reps, {} distinct images, expected {factorial}", table.reps().len(), perms.len()));
            }
            for r in table.reps() {
                if !r.is_prefix_closed() || r.validate().is_err() || permutation_of(&r.to_word()) != r.permutation() {
                    failures.push(format!("n={n}: representative {r} fails validation"));
                }
            }
        }
        Draft {
            passed: failures.is_empty(),
            checked,
            summary: format!("{checked} representatives, {} problems", failures.len()),
            failures,
        }
    })
}

pub fn run_criterion(number: u8) -> Option<CriterionReport> {
    Some(match number {
        1 => presentation_relations(),
        2 => alternative_relations(),
        3 => pure_relations_reproduced(),
        4 => conjugation_identities_hold(),
        5 => action_coherence(),
        6 => normal_form_round_trip(),
        7 => normal_form_stability(),
        8 => schreier_system(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=8).filter_map(run_criterion).collect()
}
