//! Permutations, the projection π and the coset representatives Λ_n.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::braid_words::{check_strands, BraidWord, Letter};
use crate::error::{Error, Result, WordError};

/// Largest n for which Λ_n is tabulated.
pub const MAX_TABLE_STRANDS: usize = 9;

/// A bijection of {1..n}; `images[x-1]` is the image of x.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(WordError::Malformed(format!("{images:?} is not a permutation")).into());
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.apply(x)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x - 1] = k + 1;
        }
        Permutation { images }
    }

    /// Swap the values sitting at positions i and i+1, i.e. `self.then((i i+1))`.
    fn push_transposition(&mut self, i: usize) {
        for x in self.images.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }
}

/// Left-to-right composition.
pub fn compose(p: &Permutation, q: &Permutation) -> Permutation {
    p.then(q)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            crate::braid_words::write_spaced(f, &c)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Parses cycle notation such as `(1 3)(2 4)` or `()`.
pub fn parse_permutation(text: &str, n: usize) -> Result<Permutation> {
    check_strands(n)?;
    let bad = || Error::from(WordError::Malformed(format!("bad cycle notation `{text}`")));
    let mut p = Permutation::identity(n);
    let mut used = vec![false; n + 1];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let items: Vec<usize> = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        for (k, &x) in items.iter().enumerate() {
            if x == 0 || x > n || used[x] {
                return Err(bad());
            }
            used[x] = true;
            p.images[x - 1] = items[(k + 1) % items.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(p)
}

/// π on a braid word: every generator maps to (i i+1), exponents ignored.
pub fn permutation_of(w: &BraidWord) -> Permutation {
    permutation_of_letters(w.strands(), w.letters())
}

pub fn permutation_of_letters(n: usize, letters: &[Letter]) -> Permutation {
    let mut p = Permutation::identity(n);
    for l in letters {
        p.push_transposition(l.idx());
    }
    p
}

/// One descending run v_top v_{top-1} ... v_{top-drop}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub top: usize,
    pub drop: usize,
}

/// An element of Λ_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchreierWord {
    strands: usize,
    blocks: Vec<Block>,
}

impl SchreierWord {
    pub fn empty(strands: usize) -> Self {
        SchreierWord { strands, blocks: Vec::new() }
    }

    pub fn from_blocks(strands: usize, blocks: Vec<Block>) -> Result<Self> {
        check_strands(strands)?;
        let w = SchreierWord { strands, blocks };
        w.validate()?;
        Ok(w)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let mut prev = 0;
        for b in &self.blocks {
            if b.top <= prev || b.top >= self.strands || b.drop >= b.top {
                return Err(WordError::Malformed(format!("invalid coset block v{}..v{}", b.top, b.top - b.drop.min(b.top))).into());
            }
            prev = b.top;
        }
        Ok(())
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.blocks
            .iter()
            .flat_map(|b| (b.top - b.drop..=b.top).rev().map(Letter::v))
            .collect()
    }

    pub fn to_word(&self) -> BraidWord {
        BraidWord::from_raw(self.strands, self.letters())
    }

    pub fn permutation(&self) -> Permutation {
        permutation_of_letters(self.strands, &self.letters())
    }

    /// Splits a v-word into maximal descending runs and validates the result.
    pub fn from_word(w: &BraidWord) -> Result<Self> {
        let mut blocks: Vec<Block> = Vec::new();
        let mut last: Option<usize> = None;
        for l in w.letters() {
            if l.kind != crate::braid_words::Kind::V {
                return Err(WordError::Malformed(format!("coset word contains non-virtual letter {l}")).into());
            }
            match (blocks.last_mut(), last) {
                (Some(b), Some(prev)) if l.idx() + 1 == prev => b.drop += 1,
                _ => blocks.push(Block { top: l.idx(), drop: 0 }),
            }
            last = Some(l.idx());
        }
        SchreierWord::from_blocks(w.strands(), blocks)
    }

    /// Every letter prefix is again in Λ_n.
    pub fn is_prefix_closed(&self) -> bool {
        let letters = self.letters();
        (0..=letters.len()).all(|k| SchreierWord::from_word(&BraidWord::from_raw(self.strands, letters[..k].to_vec())).is_ok())
    }
}

impl fmt::Display for SchreierWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

/// All of Λ_n in lexicographic block order.
pub fn enumerate_schreier(n: usize) -> Vec<SchreierWord> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(n: usize, from: usize, stack: &mut Vec<Block>, out: &mut Vec<SchreierWord>) {
        out.push(SchreierWord { strands: n, blocks: stack.clone() });
        for top in from..n {
            for drop in 0..top {
                stack.push(Block { top, drop });
                rec(n, top + 1, stack, out);
                stack.pop();
            }
        }
    }
    rec(n, 1, &mut stack, &mut out);
    out
}

/// Λ_n indexed by permutation image.
pub struct SchreierTable {
    strands: usize,
    reps: Vec<SchreierWord>,
    by_perm: HashMap<Permutation, usize>,
}

impl SchreierTable {
    fn build(n: usize) -> Self {
        let reps = enumerate_schreier(n);
        let by_perm = reps.iter().enumerate().map(|(k, r)| (r.permutation(), k)).collect();
        SchreierTable { strands: n, reps, by_perm }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn reps(&self) -> &[SchreierWord] {
        &self.reps
    }

    pub fn lookup(&self, p: &Permutation) -> &SchreierWord {
        &self.reps[self.by_perm[p]]
    }
}

/// Memoized Λ_n for n ≤ [`MAX_TABLE_STRANDS`].
pub fn schreier_table(n: usize) -> Result<Arc<SchreierTable>> {
    check_strands(n)?;
    if n > MAX_TABLE_STRANDS {
        return Err(Error::TableLimit { strands: n, max: MAX_TABLE_STRANDS });
    }
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<SchreierTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().unwrap().get(&n) {
        return Ok(Arc::clone(t));
    }
    let built = Arc::new(SchreierTable::build(n));
    let mut guard = tables.lock().unwrap();
    Ok(Arc::clone(guard.entry(n).or_insert(built)))
}

pub fn schreier_representative(p: &Permutation) -> Result<SchreierWord> {
    Ok(schreier_table(p.degree())?.lookup(p).clone())
}

pub fn coset_map(w: &BraidWord) -> Result<SchreierWord> {
    schreier_representative(&permutation_of(w))
}
