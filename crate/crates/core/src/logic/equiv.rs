//! The family of equivalences `≈_{m,n}` on finite words.
//!
//! Two words are equivalent at order `m` and width `n` when no property
//! expressible with `m` levels of structure and factors totalling at most
//! `n` letters tells them apart. At order zero or width zero everything is
//! equivalent. At order one the words must match the same anchored
//! monomials `w₁A⁺w₂⋯A⁺w_ℓ` with `Σ|wᵢ| ≤ n`, the empty product included,
//! so only the empty word is order-one equivalent to the empty word.
//! Each higher order refines order one at the same width; beyond that the
//! words must share factor sets, prefixes, and suffixes up to length `n`, their
//! splits at the first and the last occurrence of every short factor must
//! be equivalent at reduced parameters, and whenever the last occurrence of
//! one factor ends strictly before the first occurrence of another in both
//! words, the enclosed middles must be equivalent one order down.

use std::collections::HashMap;

use crate::words::{bounded_prefix, bounded_suffix, factor_alphabet, monomial_profile, Word};

/// Order `m` and width `n` of the equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivParams {
    pub m: u32,
    pub n: u32,
}

/// A memoizing decision procedure for `≈_{m,n}`.
///
/// The memo table and the word interner persist across queries, so a single
/// checker amortizes work over many comparisons of related words — splits of
/// a pair recur in the splits of its extensions. The relation is symmetric,
/// and cached under a symmetric key. Queries need `&mut self`; share a
/// checker across threads by giving each thread its own.
pub struct EquivChecker {
    memo: HashMap<(u32, u32, u32, u32), bool>,
    ids: HashMap<Word, u32>,
}

impl EquivChecker {
    pub fn new() -> Self {
        EquivChecker { memo: HashMap::new(), ids: HashMap::new() }
    }

    /// Decides `u ≈_{m,n} v`.
    pub fn equivalent(&mut self, u: &Word, v: &Word, params: EquivParams) -> bool {
        assert!(
            u.len() <= 64 && v.len() <= 64,
            "the checker is meant for short witnesses; got lengths {} and {}",
            u.len(),
            v.len()
        );
        self.eq_rec(u, v, params.m, params.n)
    }

    fn intern(&mut self, w: &Word) -> u32 {
        let fresh = self.ids.len() as u32;
        *self.ids.entry(w.clone()).or_insert(fresh)
    }

    fn eq_rec(&mut self, u: &Word, v: &Word, m: u32, n: u32) -> bool {
        if m == 0 || n == 0 || u == v {
            return true;
        }
        let key = {
            let a = self.intern(u);
            let b = self.intern(v);
            (a.min(b), a.max(b), m, n)
        };
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let value = self.decide(u, v, m, n);
        self.memo.insert(key, value);
        value
    }

    fn decide(&mut self, u: &Word, v: &Word, m: u32, n: u32) -> bool {
        if m == 1 {
            return monomial_profile(u, n as usize) == monomial_profile(v, n as usize);
        }

        let width = n as usize;
        // Higher orders refine order one at the same width, so the anchored
        // monomial profiles must already agree. The border and split
        // conditions below cannot fully see this near the width boundary:
        // they would let a ≈ aa at order two and width one, which order one
        // tells apart by the exact monomial (a).
        if monomial_profile(u, width) != monomial_profile(v, width) {
            return false;
        }
        for k in 1..=width {
            if factor_alphabet(u, k) != factor_alphabet(v, k)
                || bounded_prefix(u, k) != bounded_prefix(v, k)
                || bounded_suffix(u, k) != bounded_suffix(v, k)
            {
                return false;
            }
        }

        // Splitting at a factor of length n leaves width zero on both sides,
        // so only strictly shorter factors constrain anything.
        for k in 1..width {
            let rest = n - k as u32;
            let factors = factor_alphabet(u, k).expect("factor lengths start at one");
            for w in &factors {
                // The factor sets agree, so w occurs in both words.
                let (Some(fu), Some(fv)) = (first_occurrence(u, w), first_occurrence(v, w))
                else {
                    return false;
                };
                let (Some(lu), Some(lv)) = (last_occurrence(u, w), last_occurrence(v, w))
                else {
                    return false;
                };
                // Before the first occurrence the factor is absent, which
                // costs one order; the remainder keeps the full order.
                if !self.eq_rec(&u.factor(1, fu - 1), &v.factor(1, fv - 1), m - 1, rest) {
                    return false;
                }
                if !self.eq_rec(
                    &u.factor(fu + k, u.len()),
                    &v.factor(fv + k, v.len()),
                    m,
                    rest,
                ) {
                    return false;
                }
                // Mirrored at the last occurrence.
                if !self.eq_rec(&u.factor(1, lu - 1), &v.factor(1, lv - 1), m, rest) {
                    return false;
                }
                if !self.eq_rec(
                    &u.factor(lu + k, u.len()),
                    &v.factor(lv + k, v.len()),
                    m - 1,
                    rest,
                ) {
                    return false;
                }
            }
        }

        // Pairs of factors that are forced apart — the last occurrence of w
        // ends strictly before the first occurrence of w' begins in both
        // words — pin the stretch between them one order down.
        for j in 1..width {
            for k in 1..width - j {
                let rest = n - (j + k) as u32;
                let lefts = factor_alphabet(u, j).expect("factor lengths start at one");
                let rights = factor_alphabet(u, k).expect("factor lengths start at one");
                for w in &lefts {
                    let (Some(lu), Some(lv)) = (last_occurrence(u, w), last_occurrence(v, w))
                    else {
                        return false;
                    };
                    for wp in &rights {
                        let (Some(fu), Some(fv)) =
                            (first_occurrence(u, wp), first_occurrence(v, wp))
                        else {
                            return false;
                        };
                        if lu + j - 1 < fu && lv + j - 1 < fv {
                            let mid_u = u.factor(lu + j, fu - 1);
                            let mid_v = v.factor(lv + j, fv - 1);
                            if !self.eq_rec(&mid_u, &mid_v, m - 1, rest) {
                                return false;
                            }
                        }
                    }
                }
            }
        }

        true
    }
}

impl Default for EquivChecker {
    fn default() -> Self {
        Self::new()
    }
}

/// 1-based start of the leftmost occurrence of `w` in `u`.
fn first_occurrence(u: &Word, w: &Word) -> Option<usize> {
    u.symbols()
        .windows(w.len())
        .position(|window| window == w.symbols())
        .map(|p| p + 1)
}

/// 1-based start of the rightmost occurrence of `w` in `u`.
fn last_occurrence(u: &Word, w: &Word) -> Option<usize> {
    u.symbols()
        .windows(w.len())
        .rposition(|window| window == w.symbols())
        .map(|p| p + 1)
}

/// Decides `u ≈_{m,n} v` with a throwaway checker.
pub fn approx_equiv(u: &Word, v: &Word, params: EquivParams) -> bool {
    EquivChecker::new().equivalent(u, v, params)
}
