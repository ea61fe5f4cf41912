//! Canonical spellings modulo the pure twist relation μ_ijγ_ji = γ_ijμ_ji.
//!
//! For one strand pair {p<q} write a = μ_pq, b = μ_qp, c = γ_pq, d = γ_qp.
//! The pair group ⟨a, b, c, d | ad = cb, bc = da⟩ has a complete
//! length-preserving rewriting system of eight rules plus free cancellation.
//! Eliminating a gives ⟨b, c, d | bcd = dcb⟩, whose complete system is
//! infinite but regular.

use super::ConjugatedLetter;
use crate::fusing_algebra::{free_reduce_fusing, Family, FusingLetter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sym {
    A,
    B,
    C,
    D,
}

type Code = (Sym, i8);

fn code(l: FusingLetter) -> ((usize, usize), Code) {
    let forward = l.i < l.j;
    let sym = match (l.family, forward) {
        (Family::Mu, true) => Sym::A,
        (Family::Mu, false) => Sym::B,
        (Family::Gamma, true) => Sym::C,
        (Family::Gamma, false) => Sym::D,
    };
    (l.pair(), (sym, l.exp))
}

fn decode(pair: (usize, usize), (sym, exp): Code) -> FusingLetter {
    let (p, q) = pair;
    match sym {
        Sym::A => FusingLetter::new(Family::Mu, p, q, exp),
        Sym::B => FusingLetter::new(Family::Mu, q, p, exp),
        Sym::C => FusingLetter::new(Family::Gamma, p, q, exp),
        Sym::D => FusingLetter::new(Family::Gamma, q, p, exp),
    }
}

const RULES: [(Code, Code, Code, Code); 8] = {
    use Sym::*;
    [
        ((C, 1), (B, 1), (A, 1), (D, 1)),
        ((D, 1), (A, 1), (B, 1), (C, 1)),
        ((C, -1), (A, 1), (B, 1), (D, -1)),
        ((D, -1), (B, 1), (A, 1), (C, -1)),
        ((C, 1), (A, -1), (B, -1), (D, 1)),
        ((D, 1), (B, -1), (A, -1), (C, 1)),
        ((C, -1), (B, -1), (A, -1), (D, -1)),
        ((D, -1), (A, -1), (B, -1), (C, -1)),
    ]
};

fn rewrite_pair(x: FusingLetter, y: FusingLetter) -> Option<(FusingLetter, FusingLetter)> {
    let (px, cx) = code(x);
    let (py, cy) = code(y);
    if px != py {
        return None;
    }
    RULES
        .iter()
        .find(|r| r.0 == cx && r.1 == cy)
        .map(|r| (decode(px, r.2), decode(px, r.3)))
}

/// Irreducible form of a plain fusing word under the twist rules and free cancellation.
pub(crate) fn twist_canonical(letters: &[FusingLetter]) -> Vec<FusingLetter> {
    let mut w = free_reduce_fusing(letters);
    loop {
        let mut changed = false;
        for k in 0..w.len().saturating_sub(1) {
            if let Some((x, y)) = rewrite_pair(w[k], w[k + 1]) {
                w[k] = x;
                w[k + 1] = y;
                changed = true;
            }
        }
        let reduced = free_reduce_fusing(&w);
        changed |= reduced.len() != w.len();
        w = reduced;
        if !changed {
            return w;
        }
    }
}

fn to_byte((sym, exp): Code) -> u8 {
    let c = match sym {
        Sym::A => b'a',
        Sym::B => b'b',
        Sym::C => b'c',
        Sym::D => b'd',
    };
    if exp > 0 {
        c
    } else {
        c.to_ascii_uppercase()
    }
}

fn from_byte(c: u8) -> Code {
    let sym = match c.to_ascii_lowercase() {
        b'a' => Sym::A,
        b'b' => Sym::B,
        b'c' => Sym::C,
        _ => Sym::D,
    };
    (sym, if c.is_ascii_lowercase() { 1 } else { -1 })
}

const AFREE_RULES: [(&[u8], &[u8]); 6] =
    [(b"DCB", b"BCD"), (b"Dbc", b"cbD"), (b"bDC", b"CDb"), (b"cdB", b"Bdc"), (b"dBC", b"CBd"), (b"dcb", b"bcd")];

/// (prefix, repeated middle, suffix, replacement unit): prefix·middle^k·suffix → unit^(k+1).
const AFREE_FAMILIES: [(&[u8], &[u8], &[u8], &[u8]); 2] = [(b"BC", b"DC", b"Db", b"DC"), (b"CB", b"dB", b"dc", b"dB")];

fn afree_step(w: &[u8]) -> Option<Vec<u8>> {
    let splice = |p: usize, len: usize, rep: &[u8]| [&w[..p], rep, &w[p + len..]].concat();
    if let Some(p) = (0..w.len().saturating_sub(1)).find(|&p| w[p] == w[p + 1] ^ 0x20) {
        return Some(splice(p, 2, b""));
    }
    for p in 0..w.len() {
        let rest = &w[p..];
        for (l, r) in AFREE_RULES {
            if rest.starts_with(l) {
                return Some(splice(p, l.len(), r));
            }
        }
        for (pre, mid, end, unit) in AFREE_FAMILIES {
            if !rest.starts_with(pre) {
                continue;
            }
            let mut k = 0;
            while rest[2 + 2 * k..].starts_with(mid) {
                k += 1;
            }
            for kk in (0..=k).rev() {
                if rest[2 + 2 * kk..].starts_with(end) {
                    return Some(splice(p, 4 + 2 * kk, &unit.repeat(kk + 1)));
                }
            }
        }
    }
    None
}

/// Shortlex-least spelling of a same-pair word with no `a` letters, using the
/// complete system of ⟨b, c, d | bcd = dcb⟩ after a = cbd⁻¹.
fn pair_spelling(codes: &[Code]) -> Vec<Code> {
    let mut w: Vec<u8> = Vec::with_capacity(codes.len() * 3);
    for &c in codes {
        match to_byte(c) {
            b'a' => w.extend_from_slice(b"cbD"),
            b'A' => w.extend_from_slice(b"dBC"),
            x => w.push(x),
        }
    }
    while let Some(next) = afree_step(&w) {
        w = next;
    }
    w.into_iter().map(from_byte).collect()
}

pub(crate) fn free_reduce_conjugated(letters: Vec<ConjugatedLetter>) -> Vec<ConjugatedLetter> {
    let mut out: Vec<ConjugatedLetter> = Vec::with_capacity(letters.len());
    for c in letters {
        if out.last().is_some_and(|top| top.is_inverse_of(&c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}

/// Canonical spelling of a layer: same-conjugator runs on one pair get the
/// free-product form, adjacent plain letters get the twist rules.
pub(crate) fn canonical_layer(letters: Vec<ConjugatedLetter>) -> Vec<ConjugatedLetter> {
    let mut w = free_reduce_conjugated(letters);
    loop {
        let mut changed = false;
        let mut out: Vec<ConjugatedLetter> = Vec::with_capacity(w.len());
        let mut k = 0;
        while k < w.len() {
            if w[k].conjugator.is_empty() {
                out.push(w[k].clone());
                k += 1;
                continue;
            }
            let pair = w[k].base.pair();
            let mut m = k;
            while m < w.len() && w[m].conjugator == w[k].conjugator && w[m].base.pair() == pair {
                m += 1;
            }
            let codes: Vec<Code> = w[k..m].iter().map(|c| code(c.letter()).1).collect();
            let spelled = pair_spelling(&codes);
            changed |= spelled != codes;
            out.extend(spelled.into_iter().map(|c| ConjugatedLetter::new(decode(pair, c), w[k].conjugator.clone())));
            k = m;
        }
        for q in 0..out.len().saturating_sub(1) {
            if out[q].conjugator.is_empty() && out[q + 1].conjugator.is_empty() {
                if let Some((x, y)) = rewrite_pair(out[q].letter(), out[q + 1].letter()) {
                    out[q] = ConjugatedLetter::new(x, Vec::new());
                    out[q + 1] = ConjugatedLetter::new(y, Vec::new());
                    changed = true;
                }
            }
        }
        let reduced = free_reduce_conjugated(out.clone());
        changed |= reduced.len() != out.len();
        w = reduced;
        if !changed {
            return w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Independent solver: the pair group as Z²⟨s, t⟩ ∗ Z⟨d⟩ with s = cb, t = cd.
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
    enum Syllable {
        Z2(i64, i64),
        Z(i64),
    }

    fn images((sym, exp): Code) -> Vec<Syllable> {
        use Syllable::*;
        let w = match sym {
            Sym::A => vec![Z2(1, 0), Z(-1)],
            Sym::B => vec![Z(1), Z2(1, -1)],
            Sym::C => vec![Z2(0, 1), Z(-1)],
            Sym::D => vec![Z(1)],
        };
        if exp > 0 {
            return w;
        }
        w.into_iter()
            .rev()
            .map(|s| match s {
                Z2(p, q) => Z2(-p, -q),
                Z(k) => Z(-k),
            })
            .collect()
    }

    fn push_syllable(stack: &mut Vec<Syllable>, s: Syllable) {
        use Syllable::*;
        let merged = match (stack.last().copied(), s) {
            (Some(Z2(p, q)), Z2(r, t)) => Some(Z2(p + r, q + t)),
            (Some(Z(k)), Z(m)) => Some(Z(k + m)),
            _ => None,
        };
        match merged {
            Some(m) => {
                stack.pop();
                if m != Z2(0, 0) && m != Z(0) {
                    stack.push(m);
                }
            }
            None => stack.push(s),
        }
    }

    fn syllables(codes: &[Code]) -> Vec<Syllable> {
        let mut stack = Vec::new();
        for &c in codes {
            for s in images(c) {
                push_syllable(&mut stack, s);
            }
        }
        stack
    }

    fn m(i: usize, j: usize) -> FusingLetter {
        FusingLetter::mu(i, j)
    }

    fn g(i: usize, j: usize) -> FusingLetter {
        FusingLetter::gamma(i, j)
    }

    #[test]
    fn twist_sides_agree() {
        assert_eq!(twist_canonical(&[m(1, 2), g(2, 1)]), twist_canonical(&[g(1, 2), m(2, 1)]));
        assert_eq!(twist_canonical(&[m(2, 1), g(1, 2)]), twist_canonical(&[g(2, 1), m(1, 2)]));
        assert_eq!(twist_canonical(&[g(1, 2), m(2, 1)]), vec![m(1, 2), g(2, 1)]);
    }

    #[test]
    fn different_pairs_untouched() {
        let w = vec![g(1, 3), m(2, 3)];
        assert_eq!(twist_canonical(&w), w);
    }

    #[test]
    fn spelling_avoids_forward_mu() {
        use Sym::*;
        let all = [(A, 1), (A, -1), (B, 1), (B, -1), (C, 1), (C, -1), (D, 1), (D, -1)];
        for &x in &all {
            for &y in &all {
                let sp = pair_spelling(&[x, y]);
                assert!(sp.iter().all(|c| c.0 != A));
                let again = pair_spelling(&sp);
                assert_eq!(again, sp);
            }
        }
        assert_eq!(pair_spelling(&[(A, 1), (D, 1)]), pair_spelling(&[(C, 1), (B, 1)]));
    }

    #[test]
    fn single_letters_keep_their_spelling() {
        use Sym::*;
        for c in [(B, 1), (B, -1), (C, 1), (C, -1), (D, 1), (D, -1)] {
            assert_eq!(pair_spelling(&[c]), vec![c]);
        }
        assert_eq!(pair_spelling(&[(A, 1)]), vec![(C, 1), (B, 1), (D, -1)]);
    }

    #[test]
    fn spelling_agrees_with_free_product_solver() {
        use Sym::*;
        let all = [(A, 1), (A, -1), (B, 1), (B, -1), (C, 1), (C, -1), (D, 1), (D, -1)];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut by_element = std::collections::HashMap::new();
        for _ in 0..20_000 {
            let len = rng.gen_range(0..=10);
            let w: Vec<Code> = (0..len).map(|_| all[rng.gen_range(0..all.len())]).collect();
            let sp = pair_spelling(&w);
            assert_eq!(syllables(&sp), syllables(&w));
            let prev = by_element.entry(syllables(&w)).or_insert_with(|| sp.clone());
            assert_eq!(*prev, sp);
        }
    }
}
