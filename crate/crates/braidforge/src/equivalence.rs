//! Bounded equivalence oracle over the standard presentation.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::braid_words::{free_reduce_letters, invert_letters, BraidWord, Kind, Letter};
use crate::fusing_algebra::{families, pair_counts, relation_table, Presentation};
use crate::schreier_rewriter::rewrite_r;
use crate::symmetric_group::permutation_of;

pub const DEFAULT_MAX_NODES: usize = 2_000_000;
pub const LENGTH_SLACK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Defaults to |u·v⁻¹| + 4.
    pub max_len: Option<usize>,
    pub max_nodes: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_len: None, max_nodes: DEFAULT_MAX_NODES }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_len: usize,
    pub max_nodes: usize,
    pub expanded: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Equal,
    Unequal,
    Unknown,
}

/// One Dehn move: `removed` at `position` becomes `inserted`, then free reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub position: usize,
    pub removed: String,
    pub inserted: String,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub invariant: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Moves(Vec<Move>),
    Invariant(Separation),
    Exhausted {},
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub status: Status,
    pub witness: Witness,
    pub bounds: SearchBounds,
}

impl OracleVerdict {
    pub fn is_equal(&self) -> bool {
        self.status == Status::Equal
    }

    pub fn moves(&self) -> &[Move] {
        match &self.witness {
            Witness::Moves(m) => m,
            _ => &[],
        }
    }
}

type Code = u16;

fn encode(l: Letter) -> Code {
    let k = match (l.kind, l.exp > 0) {
        (Kind::Sigma, true) => 0,
        (Kind::Sigma, false) => 1,
        (Kind::Tau, true) => 2,
        (Kind::Tau, false) => 3,
        (Kind::V, _) => 4,
    };
    l.index * 5 + k
}

fn decode(c: Code) -> Letter {
    let i = (c / 5) as usize;
    match c % 5 {
        0 => Letter::sigma(i, 1),
        1 => Letter::sigma(i, -1),
        2 => Letter::tau(i, 1),
        3 => Letter::tau(i, -1),
        _ => Letter::v(i),
    }
}

fn invert_code(c: Code) -> Code {
    match c % 5 {
        0 | 2 => c + 1,
        1 | 3 => c - 1,
        _ => c,
    }
}

fn reduce_codes(w: impl IntoIterator<Item = Code>) -> Vec<Code> {
    let mut out: Vec<Code> = Vec::new();
    for c in w {
        if out.last() == Some(&invert_code(c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}

fn spell(w: &[Code]) -> String {
    w.iter().map(|&c| decode(c).to_string()).collect::<Vec<_>>().join(" ")
}

struct Pattern {
    removed: Box<[Code]>,
    inserted: Box<[Code]>,
    relation: u32,
}

/// Every Dehn move of the presentation on n strands.
pub struct PatternIndex {
    strands: usize,
    labels: Vec<String>,
    patterns: Vec<Pattern>,
    by_removed: HashMap<Box<[Code]>, Vec<u32>>,
    max_removed: usize,
}

impl PatternIndex {
    fn build(n: usize) -> Self {
        let mut labels = Vec::new();
        let mut patterns = Vec::new();
        let mut by_removed: HashMap<Box<[Code]>, Vec<u32>> = HashMap::new();
        let mut seen = HashSet::new();
        for rel in relation_table(Presentation::Standard, n) {
            if rel.family == families::CANCEL {
                continue;
            }
            let id = labels.len() as u32;
            labels.push(rel.to_string());
            let lhs = rel.lhs.expand();
            let rhs = rel.rhs.expand();
            let mut r: Vec<Letter> = lhs.letters().to_vec();
            r.extend(invert_letters(rhs.letters()));
            let r: Vec<Code> = free_reduce_letters(&r).into_iter().map(encode).collect();
            let r_inv: Vec<Code> = r.iter().rev().map(|&c| invert_code(c)).collect();
            for rr in [&r, &r_inv] {
                let len = rr.len();
                for s in 0..len {
                    let rot: Vec<Code> = rr[s..].iter().chain(&rr[..s]).copied().collect();
                    for cut in 1..=len {
                        let x: Box<[Code]> = rot[..cut].into();
                        let y: Box<[Code]> = rot[cut..].iter().rev().map(|&c| invert_code(c)).collect();
                        if !seen.insert((x.clone(), y.clone())) {
                            continue;
                        }
                        let pid = patterns.len() as u32;
                        by_removed.entry(x.clone()).or_default().push(pid);
                        patterns.push(Pattern { removed: x, inserted: y, relation: id });
                    }
                }
            }
        }
        let max_removed = patterns.iter().map(|p| p.removed.len()).max().unwrap_or(0);
        PatternIndex { strands: n, labels, patterns, by_removed, max_removed }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    fn apply(&self, w: &[Code], pos: usize, pid: u32) -> Vec<Code> {
        let p = &self.patterns[pid as usize];
        let tail = &w[pos + p.removed.len()..];
        reduce_codes(w[..pos].iter().chain(p.inserted.iter()).chain(tail).copied())
    }

    fn for_each_move(&self, w: &[Code], mut f: impl FnMut(usize, u32)) {
        for a in 0..w.len() {
            for b in a + 1..=(a + self.max_removed).min(w.len()) {
                if let Some(ids) = self.by_removed.get(&w[a..b]) {
                    for &pid in ids {
                        f(a, pid);
                    }
                }
            }
        }
    }

    fn find(&self, removed: &[Code], inserted: &[Code]) -> Option<u32> {
        self.by_removed.get(removed)?.iter().copied().find(|&p| &*self.patterns[p as usize].inserted == inserted)
    }
}

/// Memoized pattern index for n strands.
pub fn pattern_index(n: usize) -> Arc<PatternIndex> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PatternIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let built = Arc::new(PatternIndex::build(n));
    cache.lock().unwrap().entry(n).or_insert(built).clone()
}

/// One-step rewrites of `w`, freely reduced.
pub fn relation_neighbors(w: &BraidWord) -> HashSet<BraidWord> {
    let index = pattern_index(w.strands());
    let codes: Vec<Code> = reduce_codes(w.letters().iter().map(|&l| encode(l)));
    let mut out = HashSet::new();
    index.for_each_move(&codes, |pos, pid| {
        let y = index.apply(&codes, pos, pid);
        out.insert(BraidWord::from_raw(w.strands(), y.into_iter().map(decode).collect()));
    });
    out
}

fn separate(u: &BraidWord, v: &BraidWord) -> Option<Separation> {
    let pu = permutation_of(u);
    let pv = permutation_of(v);
    if pu != pv {
        return Some(Separation { invariant: "permutation".into(), lhs: pu.to_string(), rhs: pv.to_string() });
    }
    let eu = u.exponent_invariants();
    let ev = v.exponent_invariants();
    for (name, a, b) in [
        ("sigma_sum", eu.sigma_sum, ev.sigma_sum),
        ("tau_sum", eu.tau_sum, ev.tau_sum),
        ("v_parity", eu.v_parity as i64, ev.v_parity as i64),
    ] {
        if a != b {
            return Some(Separation { invariant: name.into(), lhs: a.to_string(), rhs: b.to_string() });
        }
    }
    if pu.is_identity() {
        let cu = pair_counts(rewrite_r(u).ok()?.letters());
        let cv = pair_counts(rewrite_r(v).ok()?.letters());
        if cu != cv {
            return Some(Separation {
                invariant: "pair_counts".into(),
                lhs: format!("{cu:?}"),
                rhs: format!("{cv:?}"),
            });
        }
    }
    None
}

struct Node {
    parent: u32,
    position: u32,
    pattern: u32,
}

/// Equal, Unequal (by invariant only) or Unknown within the bounds.
pub fn decide(u: &BraidWord, v: &BraidWord, bounds: &Bounds) -> OracleVerdict {
    let n = u.strands().max(v.strands());
    let mut d: Vec<Letter> = u.letters().to_vec();
    d.extend(invert_letters(v.letters()));
    let start: Vec<Code> = reduce_codes(d.into_iter().map(encode));
    let max_len = bounds.max_len.unwrap_or(start.len() + LENGTH_SLACK);
    let mut used = SearchBounds { max_len, max_nodes: bounds.max_nodes, expanded: 0 };
    if start.is_empty() {
        return OracleVerdict { status: Status::Equal, witness: Witness::Moves(Vec::new()), bounds: used };
    }
    if let Some(sep) = separate(u, v) {
        return OracleVerdict { status: Status::Unequal, witness: Witness::Invariant(sep), bounds: used };
    }
    let index = pattern_index(n);
    let mut nodes = vec![Node { parent: u32::MAX, position: 0, pattern: 0 }];
    let mut seen: HashSet<Box<[Code]>> = HashSet::new();
    seen.insert(start.clone().into());
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((start.len(), 0u32, start.clone())));
    while let Some(Reverse((_, id, w))) = heap.pop() {
        if used.expanded >= bounds.max_nodes {
            break;
        }
        used.expanded += 1;
        let mut found = None;
        index.for_each_move(&w, |pos, pid| {
            if found.is_some() {
                return;
            }
            let y = index.apply(&w, pos, pid);
            if y.is_empty() {
                found = Some((pos, pid));
                return;
            }
            if y.len() <= max_len && !seen.contains(&*y) {
                seen.insert(y.clone().into());
                let child = nodes.len() as u32;
                nodes.push(Node { parent: id, position: pos as u32, pattern: pid });
                heap.push(Reverse((y.len(), child, y)));
            }
        });
        if let Some((pos, pid)) = found {
            let mut chain = vec![(pos as u32, pid)];
            let mut cur = id;
            while cur != 0 {
                let node = &nodes[cur as usize];
                chain.push((node.position, node.pattern));
                cur = node.parent;
            }
            chain.reverse();
            let moves = chain
                .into_iter()
                .map(|(pos, pid)| {
                    let p = &index.patterns[pid as usize];
                    Move {
                        position: pos as usize,
                        removed: spell(&p.removed),
                        inserted: spell(&p.inserted),
                        relation: index.labels[p.relation as usize].clone(),
                    }
                })
                .collect();
            return OracleVerdict { status: Status::Equal, witness: Witness::Moves(moves), bounds: used };
        }
    }
    OracleVerdict { status: Status::Unknown, witness: Witness::Exhausted {}, bounds: used }
}

/// Replays an Equal witness from free_reduce(u·v⁻¹); true iff every move is a
/// relation instance and the empty word is reached.
pub fn replay_witness(u: &BraidWord, v: &BraidWord, moves: &[Move]) -> bool {
    let n = u.strands().max(v.strands());
    let index = pattern_index(n);
    let mut d: Vec<Letter> = u.letters().to_vec();
    d.extend(invert_letters(v.letters()));
    let mut w: Vec<Code> = reduce_codes(d.into_iter().map(encode));
    let parse = |s: &str| -> Option<Vec<Code>> {
        crate::braid_words::parse_word(s, n).ok().map(|b| b.letters().iter().map(|&l| encode(l)).collect())
    };
    for m in moves {
        let (Some(x), Some(y)) = (parse(&m.removed), parse(&m.inserted)) else {
            return false;
        };
        if m.position + x.len() > w.len() || w[m.position..m.position + x.len()] != x[..] {
            return false;
        }
        let Some(pid) = index.find(&x, &y) else {
            return false;
        };
        w = index.apply(&w, m.position, pid);
    }
    w.is_empty()
}
