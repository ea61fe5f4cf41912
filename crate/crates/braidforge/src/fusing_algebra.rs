//! Fusing strings μ_ij, γ_ij, the S_n action on them, and relation tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid_words::{check_strands, free_reduce_letters, parse_letter, tokens, write_spaced, BraidWord, Kind, Letter};
use crate::equivalence::{decide, Bounds, OracleVerdict};
use crate::error::{Result, WordError};
use crate::symmetric_group::{permutation_of, schreier_representative, Permutation, SchreierWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Mu,
    Gamma,
}

/// μ_ij^{±1} or γ_ij^{±1}; `Gamma` with exponent -1 is γ̄_ij.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FusingLetter {
    pub family: Family,
    pub i: u16,
    pub j: u16,
    pub exp: i8,
}

impl FusingLetter {
    pub fn new(family: Family, i: usize, j: usize, exp: i8) -> Self {
        assert!(i != j, "fusing letter needs distinct strands");
        FusingLetter { family, i: i as u16, j: j as u16, exp: if exp < 0 { -1 } else { 1 } }
    }

    pub fn mu(i: usize, j: usize) -> Self {
        Self::new(Family::Mu, i, j, 1)
    }

    pub fn gamma(i: usize, j: usize) -> Self {
        Self::new(Family::Gamma, i, j, 1)
    }

    pub fn inverse(self) -> Self {
        FusingLetter { exp: -self.exp, ..self }
    }

    pub fn pow(self, exp: i8) -> Self {
        if exp < 0 {
            self.inverse()
        } else {
            self
        }
    }

    pub fn positive(self) -> Self {
        FusingLetter { exp: 1, ..self }
    }

    pub fn max_index(self) -> usize {
        self.i.max(self.j) as usize
    }

    pub fn level(self) -> usize {
        self.max_index() - 1
    }

    pub fn pair(self) -> (usize, usize) {
        let (a, b) = (self.i as usize, self.j as usize);
        (a.min(b), a.max(b))
    }

    pub fn touches(self, x: usize) -> bool {
        self.i as usize == x || self.j as usize == x
    }
}

impl fmt::Display for FusingLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.family, self.exp > 0) {
            (Family::Mu, true) => 'm',
            (Family::Mu, false) => 'M',
            (Family::Gamma, true) => 'g',
            (Family::Gamma, false) => 'G',
        };
        write!(f, "{c}[{},{}]", self.i, self.j)
    }
}

pub fn parse_fusing_letter(token: &str, pos: usize) -> std::result::Result<FusingLetter, WordError> {
    let syntax = || WordError::Syntax { pos, token: token.into() };
    let mut chars = token.chars();
    let (family, exp) = match chars.next() {
        Some('m') => (Family::Mu, 1),
        Some('M') => (Family::Mu, -1),
        Some('g') => (Family::Gamma, 1),
        Some('G') => (Family::Gamma, -1),
        _ => return Err(syntax()),
    };
    let body = chars.as_str().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(syntax)?;
    let (a, b) = body.split_once(',').ok_or_else(syntax)?;
    let a: u16 = a.trim().parse().map_err(|_| syntax())?;
    let b: u16 = b.trim().parse().map_err(|_| syntax())?;
    if a == b {
        return Err(syntax());
    }
    Ok(FusingLetter { family, i: a, j: b, exp })
}

fn check_fusing_range(l: &FusingLetter, token: &str, n: usize) -> std::result::Result<(), WordError> {
    let bad = l.i.min(l.j) == 0 || l.max_index() > n;
    if bad {
        return Err(WordError::IndexOutOfRange { token: token.into(), index: l.max_index(), max: n });
    }
    Ok(())
}

/// A word over fusing letters, an element of the pure subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FusingWord {
    strands: usize,
    letters: Vec<FusingLetter>,
}

impl FusingWord {
    pub fn new(strands: usize, letters: Vec<FusingLetter>) -> Result<Self> {
        check_strands(strands)?;
        for l in &letters {
            check_fusing_range(l, &l.to_string(), strands)?;
        }
        Ok(FusingWord { strands, letters })
    }

    pub(crate) fn from_raw(strands: usize, letters: Vec<FusingLetter>) -> Self {
        FusingWord { strands, letters }
    }

    pub fn identity(strands: usize) -> Self {
        FusingWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[FusingLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn free_reduce(&self) -> FusingWord {
        FusingWord { strands: self.strands, letters: free_reduce_fusing(&self.letters) }
    }

    pub fn inverse(&self) -> FusingWord {
        FusingWord { strands: self.strands, letters: invert_fusing(&self.letters) }
    }

    pub fn concat(&self, other: &FusingWord) -> FusingWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FusingWord { strands: self.strands.max(other.strands), letters }
    }

    pub fn expand(&self) -> BraidWord {
        expand_fusing_word(self.strands, &self.letters)
    }
}

impl fmt::Display for FusingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.letters)
    }
}

pub fn parse_fusing_word(text: &str, strands: usize) -> Result<FusingWord> {
    check_strands(strands)?;
    let mut letters = Vec::new();
    for (pos, token) in tokens(text) {
        let l = parse_fusing_letter(token, pos)?;
        check_fusing_range(&l, token, strands)?;
        letters.push(l);
    }
    Ok(FusingWord { strands, letters })
}

pub fn free_reduce_fusing(letters: &[FusingLetter]) -> Vec<FusingLetter> {
    let mut out: Vec<FusingLetter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_fusing(letters: &[FusingLetter]) -> Vec<FusingLetter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// The σ/v/τ spelling of one fusing letter.
pub fn expand_fusing_letters(letter: FusingLetter) -> Vec<Letter> {
    let (lo, hi) = letter.pair();
    let core = match (letter.family, letter.exp > 0) {
        (Family::Mu, true) => [Letter::sigma(lo, 1), Letter::v(lo)],
        (Family::Mu, false) => [Letter::v(lo), Letter::sigma(lo, -1)],
        (Family::Gamma, true) => [Letter::tau(lo, 1), Letter::v(lo)],
        (Family::Gamma, false) => [Letter::v(lo), Letter::tau(lo, -1)],
    };
    let mut out: Vec<Letter> = ((lo + 1)..hi).rev().map(Letter::v).collect();
    let reversed = (letter.i as usize) > (letter.j as usize);
    if reversed {
        out.push(Letter::v(lo));
    }
    out.extend_from_slice(&core);
    if reversed {
        out.push(Letter::v(lo));
    }
    out.extend(((lo + 1)..hi).map(Letter::v));
    free_reduce_letters(&out)
}

pub fn expand_fusing(letter: FusingLetter, strands: usize) -> BraidWord {
    BraidWord::from_raw(strands.max(letter.max_index()), expand_fusing_letters(letter))
}

pub fn expand_fusing_word(strands: usize, letters: &[FusingLetter]) -> BraidWord {
    let all: Vec<Letter> = letters.iter().flat_map(|&l| expand_fusing_letters(l)).collect();
    BraidWord::from_raw(strands, free_reduce_letters(&all))
}

/// Relabels both indices by `alpha`.
pub fn act_permutation(alpha: &Permutation, letter: FusingLetter) -> FusingLetter {
    FusingLetter {
        i: alpha.apply(letter.i as usize) as u16,
        j: alpha.apply(letter.j as usize) as u16,
        ..letter
    }
}

/// A word written as pure part times coset representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureDecomposition {
    pub pure: FusingWord,
    pub coset: SchreierWord,
}

/// Fusing letters created by the left-to-right sweep, before free reduction,
/// together with the permutation of the accumulated v-word.
pub(crate) fn sweep(w: &BraidWord) -> (Vec<FusingLetter>, Permutation) {
    let n = w.strands();
    let mut acc = Permutation::identity(n);
    let mut out = Vec::new();
    for &l in w.letters() {
        let family = match l.kind {
            Kind::V => {
                acc = acc.then(&Permutation::transposition(n, l.idx(), l.idx() + 1));
                continue;
            }
            Kind::Sigma => Family::Mu,
            Kind::Tau => Family::Gamma,
        };
        let i = l.idx();
        if l.exp < 0 {
            acc = acc.then(&Permutation::transposition(n, i, i + 1));
        }
        let q = acc.inverse();
        out.push(FusingLetter::new(family, q.apply(i), q.apply(i + 1), l.exp));
        if l.exp > 0 {
            acc = acc.then(&Permutation::transposition(n, i, i + 1));
        }
    }
    (out, acc)
}

pub fn to_pure_times_coset(w: &BraidWord) -> Result<PureDecomposition> {
    let (letters, perm) = sweep(w);
    Ok(PureDecomposition {
        pure: FusingWord::from_raw(w.strands(), free_reduce_fusing(&letters)),
        coset: schreier_representative(&perm)?,
    })
}

/// A letter of a mixed word: either a standard generator or a fusing string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Token {
    Gen(Letter),
    Fuse(FusingLetter),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Gen(l) => l.fmt(f),
            Token::Fuse(l) => l.fmt(f),
        }
    }
}

/// A word mixing both alphabets, as used by relation tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedWord {
    pub strands: usize,
    pub tokens: Vec<Token>,
}

impl MixedWord {
    pub fn expand(&self) -> BraidWord {
        let letters: Vec<Letter> = self
            .tokens
            .iter()
            .flat_map(|t| match *t {
                Token::Gen(l) => vec![l],
                Token::Fuse(g) => expand_fusing_letters(g),
            })
            .collect();
        BraidWord::from_raw(self.strands, free_reduce_letters(&letters))
    }

    /// The fusing letters, if every token is one.
    pub fn as_fusing(&self) -> Option<FusingWord> {
        let letters = self
            .tokens
            .iter()
            .map(|t| match t {
                Token::Fuse(g) => Some(*g),
                Token::Gen(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(FusingWord::from_raw(self.strands, letters))
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.tokens)
    }
}

impl From<&BraidWord> for MixedWord {
    fn from(w: &BraidWord) -> Self {
        MixedWord { strands: w.strands(), tokens: w.letters().iter().map(|&l| Token::Gen(l)).collect() }
    }
}

impl From<&FusingWord> for MixedWord {
    fn from(w: &FusingWord) -> Self {
        MixedWord { strands: w.strands(), tokens: w.letters().iter().map(|&l| Token::Fuse(l)).collect() }
    }
}

/// Accepts braid tokens and fusing tokens in any mixture.
pub fn parse_mixed_word(text: &str, strands: usize) -> Result<MixedWord> {
    check_strands(strands)?;
    let mut out = Vec::new();
    for (pos, token) in tokens(text) {
        if token.contains('[') {
            let l = parse_fusing_letter(token, pos)?;
            check_fusing_range(&l, token, strands)?;
            out.push(Token::Fuse(l));
        } else {
            let l = parse_letter(token, pos)?;
            if l.index == 0 || l.idx() >= strands {
                return Err(WordError::IndexOutOfRange { token: token.into(), index: l.idx(), max: strands - 1 }.into());
            }
            out.push(Token::Gen(l));
        }
    }
    Ok(MixedWord { strands, tokens: out })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Presentation {
    /// σ, v, τ generators.
    Standard,
    /// Adjacent fusing strings μ_{i,i+1}, γ_{i,i+1} with the v_i.
    Fusing,
    /// All fusing strings μ_ij, γ_ij of the pure subgroup.
    Pure,
}

/// Relation family names.
pub mod families {
    pub const CANCEL: &str = "cancel";
    pub const INVOLUTION: &str = "involution";
    pub const BRAID: &str = "braid";
    pub const VIRTUAL_BRAID: &str = "virtual-braid";
    pub const VIRTUAL_MIXED: &str = "virtual-mixed";
    pub const SINGULAR_BRAID: &str = "singular-braid";
    pub const TWIST: &str = "twist";
    pub const FAR_COMMUTE: &str = "far-commute";

    pub const ALT_INVOLUTION: &str = "alt-involution";
    pub const ALT_VIRTUAL_BRAID: &str = "alt-virtual-braid";
    pub const ALT_VIRTUAL_MU: &str = "alt-virtual-mu";
    pub const ALT_VIRTUAL_GAMMA: &str = "alt-virtual-gamma";
    pub const ALT_MU_BRAID: &str = "alt-mu-braid";
    pub const ALT_MIXED_BRAID: &str = "alt-mixed-braid";
    pub const ALT_TWIST: &str = "alt-twist";
    pub const ALT_FAR_COMMUTE: &str = "alt-far-commute";

    pub const PURE_YB: &str = "pure-yang-baxter";
    pub const PURE_YB_MIXED: &str = "pure-yang-baxter-mixed";
    pub const PURE_YB_MIXED_LEFT: &str = "pure-yang-baxter-mixed-left";
    pub const PURE_TWIST: &str = "pure-twist";
    pub const PURE_COMMUTE: &str = "pure-commute";

    /// Standard families in table order.
    pub const STANDARD: [&str; 8] =
        [CANCEL, INVOLUTION, BRAID, VIRTUAL_BRAID, VIRTUAL_MIXED, SINGULAR_BRAID, TWIST, FAR_COMMUTE];
}

/// One instantiated relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub family: &'static str,
    /// Obtained by putting τ̄ in place of τ.
    pub tau_bar: bool,
    pub lhs: MixedWord,
    pub rhs: MixedWord,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = if self.lhs.tokens.is_empty() { "1".to_string() } else { self.lhs.to_string() };
        let rhs = if self.rhs.tokens.is_empty() { "1".to_string() } else { self.rhs.to_string() };
        write!(f, "[{}] {lhs} = {rhs}", self.family)
    }
}

struct TableBuilder {
    n: usize,
    out: Vec<Relation>,
}

impl TableBuilder {
    fn push(&mut self, family: &'static str, tau_bar: bool, lhs: Vec<Token>, rhs: Vec<Token>) {
        let n = self.n;
        self.out.push(Relation {
            family,
            tau_bar,
            lhs: MixedWord { strands: n, tokens: lhs },
            rhs: MixedWord { strands: n, tokens: rhs },
        });
    }
}

fn g(l: Letter) -> Token {
    Token::Gen(l)
}

fn s(i: usize) -> Token {
    g(Letter::sigma(i, 1))
}

fn t(i: usize, exp: i8) -> Token {
    g(Letter::tau(i, exp))
}

fn v(i: usize) -> Token {
    g(Letter::v(i))
}

fn adjacent_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (1..n).filter(move |&j| i.abs_diff(j) == 1).map(move |j| (i, j)))
}

fn far_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| ((i + 2)..n).map(move |j| (i, j)))
}

fn standard_table(n: usize) -> Vec<Relation> {
    use families::*;
    let mut b = TableBuilder { n, out: Vec::new() };
    for i in 1..n {
        b.push(CANCEL, false, vec![s(i), g(Letter::sigma(i, -1))], vec![]);
        b.push(CANCEL, false, vec![g(Letter::sigma(i, -1)), s(i)], vec![]);
        b.push(CANCEL, true, vec![t(i, 1), t(i, -1)], vec![]);
        b.push(CANCEL, true, vec![t(i, -1), t(i, 1)], vec![]);
        b.push(INVOLUTION, false, vec![v(i), v(i)], vec![]);
    }
    for (i, j) in adjacent_pairs(n) {
        b.push(BRAID, false, vec![s(i), s(j), s(i)], vec![s(j), s(i), s(j)]);
        b.push(VIRTUAL_BRAID, false, vec![v(i), v(j), v(i)], vec![v(j), v(i), v(j)]);
        b.push(VIRTUAL_MIXED, false, vec![v(i), s(j), v(i)], vec![v(j), s(i), v(j)]);
        b.push(VIRTUAL_MIXED, false, vec![v(i), t(j, 1), v(i)], vec![v(j), t(i, 1), v(j)]);
        b.push(VIRTUAL_MIXED, true, vec![v(i), v(j), t(i, -1)], vec![t(j, -1), v(i), v(j)]);
        b.push(SINGULAR_BRAID, false, vec![s(i), s(j), t(i, 1)], vec![t(j, 1), s(i), s(j)]);
        b.push(SINGULAR_BRAID, true, vec![s(i), s(j), t(i, -1)], vec![t(j, -1), s(i), s(j)]);
    }
    for i in 1..n {
        b.push(TWIST, false, vec![s(i), t(i, 1)], vec![t(i, 1), s(i)]);
        b.push(TWIST, true, vec![s(i), t(i, -1)], vec![t(i, -1), s(i)]);
    }
    for (i, j) in far_pairs(n) {
        let gens = |k: usize| [s(k), t(k, 1), v(k), t(k, -1)];
        for (a, x) in gens(i).into_iter().enumerate() {
            for (c, y) in gens(j).into_iter().enumerate() {
                b.push(FAR_COMMUTE, a == 3 || c == 3, vec![x, y], vec![y, x]);
            }
        }
    }
    b.out
}

fn fusing_table(n: usize) -> Vec<Relation> {
    use families::*;
    let mu = |i: usize| Token::Fuse(FusingLetter::mu(i, i + 1));
    let ga = |i: usize| Token::Fuse(FusingLetter::gamma(i, i + 1));
    let mut b = TableBuilder { n, out: Vec::new() };
    for i in 1..n {
        b.push(ALT_INVOLUTION, false, vec![v(i), v(i)], vec![]);
    }
    for (i, j) in adjacent_pairs(n) {
        b.push(ALT_VIRTUAL_BRAID, false, vec![v(i), v(j), v(i)], vec![v(j), v(i), v(j)]);
        b.push(ALT_VIRTUAL_MU, false, vec![v(i), mu(j), v(i)], vec![v(j), mu(i), v(j)]);
        b.push(ALT_VIRTUAL_GAMMA, false, vec![v(i), ga(j), v(i)], vec![v(j), ga(i), v(j)]);
        b.push(ALT_MU_BRAID, false, vec![mu(j), v(j), mu(i), v(j), mu(i)], vec![mu(i), v(j), mu(i), v(j), mu(j)]);
        b.push(ALT_MIXED_BRAID, false, vec![mu(j), v(j), mu(i), v(j), ga(i)], vec![ga(i), v(j), mu(i), v(j), mu(j)]);
    }
    for i in 1..n {
        b.push(ALT_TWIST, false, vec![mu(i), v(i), ga(i)], vec![ga(i), v(i), mu(i)]);
    }
    for (i, j) in far_pairs(n) {
        for x in [mu(i), ga(i), v(i)] {
            for y in [mu(j), ga(j), v(j)] {
                b.push(ALT_FAR_COMMUTE, false, vec![x, y], vec![y, x]);
            }
        }
    }
    b.out
}

fn pure_table(n: usize) -> Vec<Relation> {
    use families::*;
    let m = |i, j| Token::Fuse(FusingLetter::mu(i, j));
    let gm = |i, j| Token::Fuse(FusingLetter::gamma(i, j));
    let mut b = TableBuilder { n, out: Vec::new() };
    let idx: Vec<usize> = (1..=n).collect();
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                if i == j || j == k || i == k {
                    continue;
                }
                b.push(PURE_YB, false, vec![m(i, j), m(i, k), m(j, k)], vec![m(j, k), m(i, k), m(i, j)]);
                b.push(PURE_YB_MIXED, false, vec![m(i, j), m(i, k), gm(j, k)], vec![gm(j, k), m(i, k), m(i, j)]);
                b.push(PURE_YB_MIXED_LEFT, false, vec![gm(i, j), m(i, k), m(j, k)], vec![m(j, k), m(i, k), gm(i, j)]);
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            if i != j {
                b.push(PURE_TWIST, false, vec![m(i, j), gm(j, i)], vec![gm(i, j), m(j, i)]);
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                for &l in &idx {
                    let distinct = i != j && i != k && i != l && j != k && j != l && k != l;
                    if !distinct {
                        continue;
                    }
                    b.push(PURE_COMMUTE, false, vec![m(i, j), m(k, l)], vec![m(k, l), m(i, j)]);
                    b.push(PURE_COMMUTE, false, vec![gm(i, j), gm(k, l)], vec![gm(k, l), gm(i, j)]);
                    b.push(PURE_COMMUTE, false, vec![m(i, j), gm(k, l)], vec![gm(k, l), m(i, j)]);
                }
            }
        }
    }
    b.out
}

/// Every instance of the chosen presentation's relations on n strands.
pub fn relation_table(presentation: Presentation, n: usize) -> Vec<Relation> {
    match presentation {
        Presentation::Standard => standard_table(n),
        Presentation::Fusing => fusing_table(n),
        Presentation::Pure => pure_table(n),
    }
}

/// Cyclic words modulo rotation and inversion; two relations with the same
/// key are the same relator up to conjugation.
pub fn relator_key(lhs: &[FusingLetter], rhs: &[FusingLetter]) -> Vec<FusingLetter> {
    let mut r: Vec<FusingLetter> = lhs.to_vec();
    r.extend(invert_fusing(rhs));
    let mut r = free_reduce_fusing(&r);
    while r.len() >= 2 && r[0] == r[r.len() - 1].inverse() {
        r.pop();
        r.remove(0);
    }
    let inv = invert_fusing(&r);
    let mut best = r.clone();
    for base in [&r, &inv] {
        for k in 0..base.len() {
            let rot: Vec<FusingLetter> = base[k..].iter().chain(&base[..k]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// Signed letter counts per unordered strand pair and family.
pub fn pair_counts(letters: &[FusingLetter]) -> BTreeMap<((usize, usize), Family), i64> {
    let mut out = BTreeMap::new();
    for l in letters {
        *out.entry((l.pair(), l.family)).or_insert(0) += l.exp as i64;
    }
    out.retain(|_, c| *c != 0);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub pi_equal: bool,
    pub invariants_equal: bool,
    pub verdict: OracleVerdict,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.pi_equal && self.invariants_equal && self.verdict.is_equal()
    }
}

pub fn verify_relation(lhs: &MixedWord, rhs: &MixedWord, bounds: &Bounds) -> RelationReport {
    let (u, v) = (lhs.expand(), rhs.expand());
    RelationReport {
        pi_equal: permutation_of(&u) == permutation_of(&v),
        invariants_equal: u.exponent_invariants() == v.exponent_invariants(),
        verdict: decide(&u, &v, bounds),
    }
}
