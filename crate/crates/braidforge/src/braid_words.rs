//! Standard generators σ_i, v_i, τ_i and words over them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::WordError;

/// Largest strand count accepted anywhere in the crate.
pub const MAX_STRANDS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Sigma,
    V,
    Tau,
}

/// One signed standard generator. `Tau` with exponent -1 is τ̄_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub kind: Kind,
    pub index: u16,
    pub exp: i8,
}

impl Letter {
    pub fn sigma(i: usize, exp: i8) -> Self {
        Self::new(Kind::Sigma, i, exp)
    }

    pub fn tau(i: usize, exp: i8) -> Self {
        Self::new(Kind::Tau, i, exp)
    }

    pub fn v(i: usize) -> Self {
        Self::new(Kind::V, i, 1)
    }

    /// V letters always get exponent +1.
    pub fn new(kind: Kind, i: usize, exp: i8) -> Self {
        let exp = match kind {
            Kind::V => 1,
            _ if exp < 0 => -1,
            _ => 1,
        };
        Letter { kind, index: i as u16, exp }
    }

    pub fn idx(self) -> usize {
        self.index as usize
    }

    pub fn inverse(self) -> Self {
        match self.kind {
            Kind::V => self,
            _ => Letter { exp: -self.exp, ..self },
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.inverse() == other
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.kind, self.exp > 0) {
            (Kind::Sigma, true) => 's',
            (Kind::Sigma, false) => 'S',
            (Kind::Tau, true) => 't',
            (Kind::Tau, false) => 'T',
            (Kind::V, _) => 'v',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// A word over the standard generators on a fixed number of strands.
/// The leftmost letter is the top of the braid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, WordError> {
        check_strands(strands)?;
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.idx() >= strands) {
            return Err(WordError::IndexOutOfRange {
                token: l.to_string(),
                index: l.idx(),
                max: strands - 1,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// Skips validation; callers guarantee indices are in range.
    pub(crate) fn from_raw(strands: usize, letters: Vec<Letter>) -> Self {
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands.max(other.strands), letters }
    }

    pub fn free_reduce(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: free_reduce_letters(&self.letters) }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: invert_letters(&self.letters) }
    }

    pub fn exponent_invariants(&self) -> ExponentInvariants {
        exponent_invariants(&self.letters)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.letters)
    }
}

pub(crate) fn write_spaced<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (k, x) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub(crate) fn check_strands(strands: usize) -> Result<(), WordError> {
    if (2..=MAX_STRANDS).contains(&strands) {
        Ok(())
    } else {
        Err(WordError::StrandCount { strands, max: MAX_STRANDS })
    }
}

/// σ-exponent sum, τ-exponent sum and v-count parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentInvariants {
    pub sigma_sum: i64,
    pub tau_sum: i64,
    pub v_parity: u8,
}

pub fn exponent_invariants(letters: &[Letter]) -> ExponentInvariants {
    let mut inv = ExponentInvariants { sigma_sum: 0, tau_sum: 0, v_parity: 0 };
    for l in letters {
        match l.kind {
            Kind::Sigma => inv.sigma_sum += l.exp as i64,
            Kind::Tau => inv.tau_sum += l.exp as i64,
            Kind::V => inv.v_parity ^= 1,
        }
    }
    inv
}

/// Stack-based cancellation of σσ⁻¹, ττ̄ and vv pairs.
pub fn free_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last().is_some_and(|&top| top.cancels(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

pub fn free_reduce(w: &BraidWord) -> BraidWord {
    w.free_reduce()
}

pub fn invert_word(w: &BraidWord) -> BraidWord {
    w.inverse()
}

pub fn parse_letter(token: &str, pos: usize) -> Result<Letter, WordError> {
    let mut chars = token.chars();
    let head = chars.next().ok_or_else(|| WordError::Syntax { pos, token: token.into() })?;
    let (kind, exp) = match head {
        's' => (Kind::Sigma, 1),
        'S' => (Kind::Sigma, -1),
        't' => (Kind::Tau, 1),
        'T' => (Kind::Tau, -1),
        'v' | 'V' => (Kind::V, 1),
        _ => return Err(WordError::Syntax { pos, token: token.into() }),
    };
    let rest = chars.as_str();
    // "v2^-1" and "v2'" are accepted as v2
    let digits = match kind {
        Kind::V => rest.strip_suffix("^-1").or_else(|| rest.strip_suffix('\'')).unwrap_or(rest),
        _ => rest,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(WordError::Syntax { pos, token: token.into() });
    }
    let index: usize = digits.parse().map_err(|_| WordError::Syntax { pos, token: token.into() })?;
    if index > u16::MAX as usize {
        return Err(WordError::Syntax { pos, token: token.into() });
    }
    Ok(Letter::new(kind, index, exp))
}

/// Whitespace-separated tokens; the empty string is the identity.
pub fn parse_word(text: &str, strands: usize) -> Result<BraidWord, WordError> {
    check_strands(strands)?;
    let mut letters = Vec::new();
    for (pos, token) in tokens(text) {
        let l = parse_letter(token, pos)?;
        if l.index == 0 || l.idx() >= strands {
            return Err(WordError::IndexOutOfRange { token: token.into(), index: l.idx(), max: strands - 1 });
        }
        letters.push(l);
    }
    Ok(BraidWord { strands, letters })
}

/// Tokens with their byte offsets.
pub(crate) fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace().map(move |t| (t.as_ptr() as usize - text.as_ptr() as usize, t))
}
