//! Layered normal forms for pure words.
//!
//! A pure word is sorted into layers w_{n-1}·…·w_1, where layer k holds
//! letters of level k, each possibly conjugated by a lower-level word.

mod canon;
mod rules;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid_words::BraidWord;
use crate::error::{Error, Result, WordError};
use crate::fusing_algebra::{
    expand_fusing_word, free_reduce_fusing, invert_fusing, parse_fusing_letter, to_pure_times_coset, FusingLetter,
    FusingWord,
};
use crate::symmetric_group::SchreierWord;

pub(crate) use canon::twist_canonical;

/// Default cap on conjugation steps.
pub const DEFAULT_BUDGET: u64 = 100_000;

pub fn level_of(g: FusingLetter) -> usize {
    g.level()
}

/// (base^exponent) conjugated by `conjugator`, i.e. C⁻¹·base^e·C.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConjugatedLetter {
    /// Always positive.
    pub base: FusingLetter,
    pub exponent: i8,
    pub conjugator: Vec<FusingLetter>,
}

impl ConjugatedLetter {
    pub fn new(letter: FusingLetter, conjugator: Vec<FusingLetter>) -> Self {
        ConjugatedLetter { base: letter.positive(), exponent: letter.exp, conjugator }
    }

    pub fn plain(letter: FusingLetter) -> Self {
        Self::new(letter, Vec::new())
    }

    pub fn letter(&self) -> FusingLetter {
        self.base.pow(self.exponent)
    }

    pub fn inverse(&self) -> Self {
        ConjugatedLetter { base: self.base, exponent: -self.exponent, conjugator: self.conjugator.clone() }
    }

    pub fn is_plain(&self) -> bool {
        self.conjugator.is_empty()
    }

    pub fn level(&self) -> usize {
        self.base.level()
    }

    pub(crate) fn is_inverse_of(&self, other: &ConjugatedLetter) -> bool {
        self.base == other.base && self.exponent == -other.exponent && self.conjugator == other.conjugator
    }

    /// The fusing word C⁻¹·g·C, freely reduced.
    pub fn flatten(&self) -> Vec<FusingLetter> {
        let mut out = invert_fusing(&self.conjugator);
        out.push(self.letter());
        out.extend_from_slice(&self.conjugator);
        free_reduce_fusing(&out)
    }
}

impl fmt::Display for ConjugatedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())?;
        if !self.conjugator.is_empty() {
            f.write_str("^[")?;
            for (k, x) in self.conjugator.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// x⁻¹·g·x for a single lower-level letter x.
pub fn conjugate_letter(g: &ConjugatedLetter, x: FusingLetter) -> Result<Vec<ConjugatedLetter>> {
    if x.level() >= g.level() {
        return Err(Error::Precondition(format!(
            "conjugator {x} has level {} but {} has level {}",
            x.level(),
            g,
            g.level()
        )));
    }
    Ok(conjugate_unchecked(g, x))
}

fn conjugate_unchecked(g: &ConjugatedLetter, x: FusingLetter) -> Vec<ConjugatedLetter> {
    if !g.conjugator.is_empty() {
        let mut conj = g.conjugator.clone();
        conj.push(x);
        let conjugator = free_reduce_fusing(&conj);
        return vec![ConjugatedLetter { conjugator, ..g.clone() }];
    }
    match rules::expand(g.base, x) {
        None => vec![ConjugatedLetter { conjugator: vec![x], ..g.clone() }],
        Some(r) if g.exponent > 0 => r,
        Some(r) => r.iter().rev().map(ConjugatedLetter::inverse).collect(),
    }
}

struct Stepper {
    budget: u64,
    steps: u64,
}

impl Stepper {
    fn conj_by_word(&mut self, g: ConjugatedLetter, word: &[FusingLetter]) -> Option<Vec<ConjugatedLetter>> {
        let mut seq = vec![g];
        for &x in word {
            let mut next = Vec::with_capacity(seq.len() * 2);
            for s in &seq {
                self.steps += 1;
                if self.steps > self.budget {
                    return None;
                }
                next.extend(conjugate_unchecked(s, x));
            }
            seq = canon::free_reduce_conjugated(next);
        }
        Some(seq)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub level: usize,
    pub letters: Vec<ConjugatedLetter>,
}

impl Layer {
    pub fn flatten(&self) -> Vec<FusingLetter> {
        let out: Vec<FusingLetter> = self.letters.iter().flat_map(|c| c.flatten()).collect();
        free_reduce_fusing(&out)
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}:", self.level)?;
        for c in &self.letters {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// w = w_{n-1}·…·w_1·λ with layers stored in descending level order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredNormalForm {
    pub strands: usize,
    pub layers: Vec<Layer>,
    pub coset: SchreierWord,
}

impl LayeredNormalForm {
    /// The pure part as a fusing word.
    pub fn flatten(&self) -> FusingWord {
        let out: Vec<FusingLetter> = self.layers.iter().flat_map(|l| l.flatten()).collect();
        FusingWord::from_raw(self.strands, free_reduce_fusing(&out))
    }

    /// A standard word equal to the original input.
    pub fn recompose(&self) -> BraidWord {
        expand_fusing_word(self.strands, self.flatten().letters())
            .concat(&self.coset.to_word())
            .free_reduce()
    }

    pub fn layer(&self, level: usize) -> Option<&Layer> {
        self.layers.iter().find(|l| l.level == level)
    }

    /// Structural invariants of a completed normal form.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Precondition(m));
        let want: Vec<usize> = (1..self.strands).rev().collect();
        let have: Vec<usize> = self.layers.iter().map(|l| l.level).collect();
        if want != have {
            return bad(format!("layer levels {have:?}, expected {want:?}"));
        }
        for layer in &self.layers {
            for (k, c) in layer.letters.iter().enumerate() {
                if c.base.exp != 1 || c.exponent.abs() != 1 {
                    return bad(format!("malformed letter {c}"));
                }
                if c.level() != layer.level {
                    return bad(format!("{c} sits in layer {}", layer.level));
                }
                if c.conjugator.iter().any(|x| x.level() >= layer.level) {
                    return bad(format!("{c} has a conjugator of too high level"));
                }
                if !c.conjugator.is_empty() && c.base.i < c.base.j && c.base.family == crate::fusing_algebra::Family::Mu {
                    return bad(format!("{c} conjugates a forward mu letter"));
                }
                if free_reduce_fusing(&c.conjugator).len() != c.conjugator.len() {
                    return bad(format!("{c} has an unreduced conjugator"));
                }
                if k > 0 && layer.letters[k - 1].is_inverse_of(c) {
                    return bad(format!("layer {} is not freely reduced", layer.level));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LayeredNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for layer in &self.layers {
            writeln!(f, "{layer}")?;
        }
        write!(f, "coset: {}", self.coset)
    }
}

/// Sort a pure fusing word into layers.
pub fn sort_pure(pure: &FusingWord, budget: u64) -> std::result::Result<Vec<Layer>, (u64, Vec<Layer>)> {
    let mut stepper = Stepper { budget, steps: 0 };
    let mut layers = Vec::new();
    let mut cur = twist_canonical(pure.letters());
    for k in (1..pure.strands()).rev() {
        let mut lower: Vec<FusingLetter> = Vec::new();
        let mut top: Vec<ConjugatedLetter> = Vec::new();
        for &l in &cur {
            if l.level() == k {
                let conj = twist_canonical(&invert_fusing(&lower));
                match stepper.conj_by_word(ConjugatedLetter::plain(l), &conj) {
                    Some(seq) => top.extend(seq),
                    None => return Err((stepper.steps, layers)),
                }
                top = canon::free_reduce_conjugated(top);
            } else {
                lower.push(l);
                lower = free_reduce_fusing(&lower);
            }
        }
        layers.push(Layer { level: k, letters: canon::canonical_layer(top) });
        cur = twist_canonical(&lower);
    }
    Ok(layers)
}

/// Layered normal form of a standard word, capped at `budget` conjugation steps.
pub fn normal_form(w: &BraidWord, budget: u64) -> Result<LayeredNormalForm> {
    let dec = to_pure_times_coset(w)?;
    let strands = w.strands();
    match sort_pure(&dec.pure, budget) {
        Ok(layers) => Ok(LayeredNormalForm { strands, layers, coset: dec.coset }),
        Err((_, layers)) => Err(Error::ResourceBound {
            budget,
            partial: Box::new(LayeredNormalForm { strands, layers, coset: dec.coset }),
        }),
    }
}

fn nf_tokens(text: &str) -> std::result::Result<Vec<(usize, &str)>, WordError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = None;
    for (p, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(WordError::Syntax { pos: p, token: "]".into() });
                }
            }
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                out.push((s, &text[s..p]));
            }
        } else if start.is_none() {
            start = Some(p);
        }
    }
    if depth != 0 {
        return Err(WordError::Syntax { pos: text.len(), token: text.to_string() });
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    Ok(out)
}

pub fn parse_conjugated_letter(token: &str, pos: usize) -> std::result::Result<ConjugatedLetter, WordError> {
    let (head, conj) = match token.find("^[") {
        Some(k) if token.ends_with(']') => (&token[..k], Some(&token[k + 2..token.len() - 1])),
        Some(_) => return Err(WordError::Syntax { pos, token: token.into() }),
        None => (token, None),
    };
    let letter = parse_fusing_letter(head, pos)?;
    let mut conjugator = Vec::new();
    if let Some(c) = conj {
        for t in c.split_whitespace() {
            conjugator.push(parse_fusing_letter(t, pos)?);
        }
    }
    Ok(ConjugatedLetter::new(letter, conjugator))
}

/// Parse the text produced by `Display for LayeredNormalForm`.
pub fn parse_normal_form(text: &str, strands: usize) -> Result<LayeredNormalForm> {
    let mut layers = Vec::new();
    let mut coset = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (tag, rest) = line
            .split_once(':')
            .ok_or_else(|| WordError::Malformed(format!("missing ':' in line {line:?}")))?;
        if tag == "coset" {
            let w = crate::braid_words::parse_word(rest, strands)?;
            coset = Some(SchreierWord::from_word(&w)?);
            continue;
        }
        let level: usize = tag
            .strip_prefix('w')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| WordError::Malformed(format!("bad layer tag {tag:?}")))?;
        let mut letters = Vec::new();
        for (p, t) in nf_tokens(rest)? {
            let c = parse_conjugated_letter(t, p)?;
            let top = c.base.max_index().max(c.conjugator.iter().map(|x| x.max_index()).max().unwrap_or(0));
            if top > strands {
                return Err(WordError::IndexOutOfRange { token: t.into(), index: top, max: strands }.into());
            }
            letters.push(c);
        }
        layers.push(Layer { level, letters });
    }
    let coset = coset.unwrap_or_else(|| SchreierWord::empty(strands));
    Ok(LayeredNormalForm { strands, layers, coset })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid_words::parse_word;
    use crate::fusing_algebra::parse_fusing_word;

    fn m(i: usize, j: usize) -> FusingLetter {
        FusingLetter::mu(i, j)
    }

    fn g(i: usize, j: usize) -> FusingLetter {
        FusingLetter::gamma(i, j)
    }

    fn conj_flat(base: FusingLetter, x: FusingLetter) -> Vec<FusingLetter> {
        let seq = conjugate_letter(&ConjugatedLetter::plain(base), x).unwrap();
        let out: Vec<FusingLetter> = seq.iter().flat_map(|c| c.flatten()).collect();
        free_reduce_fusing(&out)
    }

    #[test]
    fn disjoint_conjugation_is_trivial() {
        let seq = conjugate_letter(&ConjugatedLetter::plain(m(3, 4)), m(1, 2)).unwrap();
        assert_eq!(seq, vec![ConjugatedLetter::plain(m(3, 4))]);
    }

    #[test]
    fn symbolic_when_no_rule() {
        let seq = conjugate_letter(&ConjugatedLetter::plain(m(3, 2)), m(1, 2)).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq[0].to_string(), "m[3,2]^[m[1,2]]");
    }

    #[test]
    fn precondition_checked() {
        assert!(matches!(
            conjugate_letter(&ConjugatedLetter::plain(m(1, 2)), m(1, 3)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn inverse_letter_uses_reversed_rule() {
        let x = m(1, 2);
        let pos = conj_flat(m(1, 3), x);
        let neg = conj_flat(m(1, 3).inverse(), x);
        assert_eq!(neg, invert_fusing(&pos));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let w = parse_word("s1 s2 s1 v2 t1 s2 s1 v2", 3).unwrap();
        let nf = normal_form(&w, DEFAULT_BUDGET).unwrap();
        let text = nf.to_string();
        let back = parse_normal_form(&text, 3).unwrap();
        assert_eq!(back, nf);
    }

    #[test]
    fn layered_example() {
        let p = parse_fusing_word("m[1,2] m[1,3]", 3).unwrap();
        let layers = sort_pure(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(layers[0].level, 2);
        assert_eq!(layers[1].level, 1);
        assert_eq!(layers[1].letters, vec![ConjugatedLetter::plain(m(1, 2))]);
        let flat: Vec<FusingLetter> = layers.iter().flat_map(|l| l.flatten()).collect();
        assert_eq!(flat.len(), layers[0].flatten().len() + 1);
        let _ = g(1, 2);
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let w = parse_word("s1 s2 s1 s2 t1 s1 s2 s1 s2 s1 t2 s1", 3).unwrap();
        match normal_form(&w, 1) {
            Err(Error::ResourceBound { budget, partial }) => {
                assert_eq!(budget, 1);
                assert!(partial.layers.len() < 2);
            }
            other => panic!("expected resource bound, got {other:?}"),
        }
    }
}
