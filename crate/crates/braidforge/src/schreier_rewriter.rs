//! Reidemeister–Schreier rewriting from standard words to fusing words.

use rayon::prelude::*;
use serde::Serialize;

use crate::braid_words::{BraidWord, Kind, Letter};
use crate::error::{Error, Result};
use crate::fusing_algebra::{
    families, free_reduce_fusing, relation_table, Family, FusingLetter, FusingWord, Presentation, Relation,
};
use crate::symmetric_group::{coset_map, permutation_of, schreier_table, SchreierWord};

/// s_{λ,a}; `None` for a virtual letter, whose generator is trivial.
pub fn schreier_generator(lambda: &SchreierWord, a: Letter) -> Option<FusingLetter> {
    let family = match a.kind {
        Kind::V => return None,
        Kind::Sigma => Family::Mu,
        Kind::Tau => Family::Gamma,
    };
    let q = lambda.permutation().inverse();
    Some(FusingLetter::new(family, q.apply(a.idx()), q.apply(a.idx() + 1), 1))
}

/// R applied letter by letter, without requiring a pure input.
pub fn rewrite_unchecked(w: &BraidWord) -> Result<FusingWord> {
    let n = w.strands();
    let letters = w.letters();
    let mut out = Vec::new();
    for (k, &a) in letters.iter().enumerate() {
        let end = if a.exp < 0 { k + 1 } else { k };
        let prefix = BraidWord::from_raw(n, letters[..end].to_vec());
        let coset = coset_map(&prefix)?;
        if let Some(s) = schreier_generator(&coset, a) {
            out.push(s.pow(a.exp));
        }
    }
    Ok(FusingWord::from_raw(n, free_reduce_fusing(&out)))
}

pub fn rewrite_r(w: &BraidWord) -> Result<FusingWord> {
    let p = permutation_of(w);
    if !p.is_identity() {
        return Err(Error::NotPure(p));
    }
    rewrite_unchecked(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivedRelation {
    pub source: Relation,
    pub coset: SchreierWord,
    pub lhs: FusingWord,
    pub rhs: FusingWord,
    /// Both sides literally equal after free reduction.
    pub trivial: bool,
}

/// R(λ·u·λ⁻¹) = R(λ·v·λ⁻¹) for every presentation relator and every λ in Λ_n.
pub fn derive_pure_relations(n: usize) -> Result<Vec<DerivedRelation>> {
    let table = schreier_table(n)?;
    let relations: Vec<Relation> = relation_table(Presentation::Standard, n)
        .into_iter()
        .filter(|r| r.family != families::CANCEL)
        .collect();
    let jobs: Vec<(&Relation, &SchreierWord)> =
        relations.iter().flat_map(|r| table.reps().iter().map(move |l| (r, l))).collect();
    jobs.par_iter()
        .map(|&(rel, lambda)| {
            let conj = |side: &BraidWord| {
                let lw = lambda.to_word();
                rewrite_unchecked(&lw.concat(side).concat(&lw.inverse()))
            };
            let lhs = conj(&rel.lhs.expand())?;
            let rhs = conj(&rel.rhs.expand())?;
            let trivial = lhs == rhs;
            Ok(DerivedRelation { source: rel.clone(), coset: lambda.clone(), lhs, rhs, trivial })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid_words::parse_word;

    fn r(s: &str, n: usize) -> String {
        rewrite_r(&parse_word(s, n).unwrap()).unwrap().to_string()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(schreier_generator(&SchreierWord::empty(2), Letter::sigma(1, 1)), Some(FusingLetter::mu(1, 2)));
        let v1 = SchreierWord::from_word(&parse_word("v1", 2).unwrap()).unwrap();
        assert_eq!(schreier_generator(&v1, Letter::tau(1, 1)), Some(FusingLetter::gamma(2, 1)));
        assert_eq!(schreier_generator(&v1, Letter::v(1)), None);
    }

    #[test]
    fn rewrite_examples() {
        assert_eq!(r("s1 t1", 2), "m[1,2] g[2,1]");
        assert_eq!(r("v1 v1", 2), "");
        assert_eq!(r("s1 s2 s1 v1 v2 v1", 3), "m[1,2] m[1,3] m[2,3]");
        assert_eq!(r("t2 s1 s2 v2 v1 v2", 3), "g[2,3] m[1,3] m[1,2]");
    }

    #[test]
    fn not_pure_rejected() {
        let err = rewrite_r(&parse_word("s1", 2).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotPure(p) if p.to_string() == "(1 2)"));
    }

    #[test]
    fn unchecked_matches_derived_sides() {
        let w = parse_word("s1 s2 s1", 3).unwrap();
        assert_eq!(rewrite_unchecked(&w).unwrap().to_string(), "m[1,2] m[1,3] m[2,3]");
        let w = parse_word("s1 s2 t1", 3).unwrap();
        assert_eq!(rewrite_unchecked(&w).unwrap().to_string(), "m[1,2] m[1,3] g[2,3]");
        let w = parse_word("t2 s1 s2", 3).unwrap();
        assert_eq!(rewrite_unchecked(&w).unwrap().to_string(), "g[2,3] m[1,3] m[1,2]");
    }

    #[test]
    fn derived_examples() {
        let d = derive_pure_relations(2).unwrap();
        assert!(d.iter().any(|x| x.coset.is_empty()
            && x.source.family == families::TWIST
            && !x.source.tau_bar
            && x.lhs.to_string() == "m[1,2] g[2,1]"
            && x.rhs.to_string() == "g[1,2] m[2,1]"));
        let d3 = derive_pure_relations(3).unwrap();
        assert!(d3.iter().filter(|x| x.source.family == families::VIRTUAL_BRAID).all(|x| x.trivial));
        assert!(d3.iter().any(|x| x.coset.is_empty()
            && x.source.family == families::SINGULAR_BRAID
            && x.source.lhs.to_string() == "s1 s2 t1"
            && x.lhs.to_string() == "m[1,2] m[1,3] g[2,3]"
            && x.rhs.to_string() == "g[2,3] m[1,3] m[1,2]"));
    }
}
