//! Conjugation of a level-k fusing letter by a lower-level letter.

use super::ConjugatedLetter;
use crate::fusing_algebra::{Family, FusingLetter};

fn plain(l: FusingLetter, exp: i8) -> ConjugatedLetter {
    ConjugatedLetter { base: l, exponent: exp, conjugator: Vec::new() }
}

fn with(l: FusingLetter, exp: i8, x: FusingLetter) -> ConjugatedLetter {
    ConjugatedLetter { base: l, exponent: exp, conjugator: vec![x] }
}

/// x⁻¹·base·x as a product of level-k letters, for a positive plain `base`.
///
/// Returns `None` when the table has no expansion and the conjugate must be
/// kept symbolically.
pub(crate) fn expand(base: FusingLetter, x: FusingLetter) -> Option<Vec<ConjugatedLetter>> {
    let (a, b) = (base.i as usize, base.j as usize);
    let (i, j) = (x.i as usize, x.j as usize);
    if !base.touches(i) && !base.touches(j) {
        return Some(vec![plain(base, 1)]);
    }
    let k = a.max(b);
    let mu = FusingLetter::mu;
    let ga = FusingLetter::gamma;
    let is = |f: Family, p: usize, q: usize| base.family == f && a == p && b == q;
    use Family::{Gamma as G, Mu as M};

    let out = match (x.family, x.exp > 0) {
        (M, true) => {
            if is(M, i, k) || is(G, i, k) {
                vec![with(mu(k, j), 1, x), plain(base, 1), plain(mu(k, j), -1)]
            } else if is(M, k, i) || is(G, k, i) {
                vec![plain(mu(k, j), 1), plain(base, 1), with(mu(k, j), -1, x)]
            } else if is(M, j, k) || is(G, j, k) {
                vec![
                    plain(mu(i, k), 1),
                    plain(base, 1),
                    plain(mu(k, j), 1),
                    plain(mu(i, k), -1),
                    with(mu(k, j), -1, x),
                ]
            } else if is(G, k, j) {
                vec![
                    with(mu(k, j), 1, x),
                    plain(mu(i, k), 1),
                    plain(mu(k, j), -1),
                    plain(ga(k, j), 1),
                    plain(mu(i, k), -1),
                ]
            } else {
                return None;
            }
        }
        (M, false) => {
            if is(M, i, k) || is(G, i, k) {
                vec![plain(mu(k, j), -1), plain(base, 1), with(mu(k, j), 1, x)]
            } else if is(M, k, i) || is(G, k, i) {
                vec![with(mu(k, j), -1, x), plain(base, 1), plain(mu(k, j), 1)]
            } else if is(M, j, k) || is(G, j, k) {
                vec![
                    with(mu(k, j), -1, x),
                    plain(mu(i, k), -1),
                    plain(mu(k, j), 1),
                    plain(base, 1),
                    plain(mu(i, k), 1),
                ]
            } else if is(G, k, j) {
                vec![
                    plain(mu(i, k), -1),
                    plain(ga(k, j), 1),
                    plain(mu(k, j), -1),
                    plain(mu(i, k), 1),
                    with(mu(k, j), 1, x),
                ]
            } else {
                return None;
            }
        }
        (G, true) => {
            if is(M, i, k) {
                vec![
                    with(ga(j, k), -1, x),
                    with(mu(k, j), -1, x),
                    with(ga(k, j), 1, x),
                    plain(mu(i, k), 1),
                    plain(mu(j, k), 1),
                ]
            } else if is(M, k, i) {
                vec![plain(mu(k, j), 1), plain(mu(k, i), 1), with(mu(k, j), -1, x)]
            } else if is(M, j, k) {
                vec![with(ga(j, k), 1, x), with(mu(k, j), 1, x), with(ga(k, j), -1, x)]
            } else {
                return None;
            }
        }
        (G, false) => {
            if is(M, i, k) {
                vec![
                    plain(mu(j, k), 1),
                    plain(mu(i, k), 1),
                    with(ga(j, k), -1, x),
                    with(mu(k, j), -1, x),
                    with(ga(k, j), 1, x),
                ]
            } else if is(M, k, i) {
                vec![with(mu(k, j), -1, x), plain(mu(k, i), 1), plain(mu(k, j), 1)]
            } else if is(M, j, k) {
                vec![with(ga(j, k), 1, x), with(mu(k, j), 1, x), with(ga(k, j), -1, x)]
            } else {
                return None;
            }
        }
    };
    Some(out)
}
