//! Gauss words: canonical form, enumeration and the letter patterns used by the
//! relations and homotopy moves.
//!
//! A Gauss word is stored in canonical form: letters are small integers that
//! first appear in the order `0, 1, 2, ...`. Two words are isomorphic exactly
//! when their canonical forms coincide, so canonical words can be compared and
//! hashed directly.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::WordError;

/// Largest rank representable by the uppercase text form.
pub const MAX_TEXT_RANK: usize = 26;

/// Largest rank supported internally (letter subsets are handled as `u64` masks).
pub const MAX_RANK: usize = 64;

/// A Gauss word in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussWord {
    letters: Vec<u8>,
}

/// An occurrence of the pattern `x A B y B A z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternMatch2 {
    pub outer: u8,
    pub inner: u8,
}

/// An occurrence of the pattern `x A B y A C z B C t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternMatch3 {
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

/// Three adjacent letter pairs at positions `first < second < third` whose
/// letter sets are `{A, B}`, `{A, C}` and `{B, C}`, in either orientation.
///
/// `orientation` packs one bit per pair: bit 2 is set when the first pair
/// reads `BA`, bit 1 when the second reads `CA`, bit 0 when the third reads
/// `CB`. Orientation `0b000` is the left-hand side of the third relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriplePairSite {
    pub first: usize,
    pub second: usize,
    pub third: usize,
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub orientation: u8,
}

impl GaussWord {
    /// The empty word.
    pub fn empty() -> Self {
        GaussWord { letters: Vec::new() }
    }

    /// Builds a word from an arbitrary letter sequence, relabelling to canonical form.
    pub fn new<L: Copy + Eq + Hash>(seq: &[L]) -> Result<Self, WordError> {
        canonicalize(seq)
    }

    /// Wraps letters that are already known to be canonical.
    pub(crate) fn from_canonical_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(is_canonical(&letters), "not canonical: {letters:?}");
        GaussWord { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.letters.len() / 2
    }

    /// For each position, the position of the other occurrence of the same letter.
    pub fn partners(&self) -> Vec<usize> {
        let mut first = vec![usize::MAX; self.rank()];
        let mut partner = vec![0; self.letters.len()];
        for (i, &l) in self.letters.iter().enumerate() {
            let f = &mut first[l as usize];
            if *f == usize::MAX {
                *f = i;
            } else {
                partner[i] = *f;
                partner[*f] = i;
            }
        }
        partner
    }

    /// Canonical subword induced by the letters whose bit is set in `mask`.
    pub fn subword(&self, mask: u64) -> GaussWord {
        let mut relabel = [u8::MAX; MAX_RANK];
        let mut next = 0u8;
        let mut out = Vec::with_capacity(2 * mask.count_ones() as usize);
        for &l in &self.letters {
            if mask >> l & 1 == 1 {
                let slot = &mut relabel[l as usize];
                if *slot == u8::MAX {
                    *slot = next;
                    next += 1;
                }
                out.push(*slot);
            }
        }
        GaussWord { letters: out }
    }

    /// Mask with one bit for each letter of the word.
    pub fn full_mask(&self) -> u64 {
        match self.rank() {
            64 => u64::MAX,
            r => (1u64 << r) - 1,
        }
    }
}

impl fmt::Display for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("-");
        }
        for &l in &self.letters {
            if (l as usize) < MAX_TEXT_RANK {
                write!(f, "{}", (b'A' + l) as char)?;
            } else {
                write!(f, "[{l}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussWord({self})")
    }
}

impl FromStr for GaussWord {
    type Err = WordError;

    /// Parses the uppercase text form; `-` (or the empty string) is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(GaussWord::empty());
        }
        let mut seq = Vec::with_capacity(s.len());
        for (position, ch) in s.chars().enumerate() {
            if !ch.is_ascii_uppercase() {
                return Err(WordError::InvalidCharacter { position, ch });
            }
            seq.push(ch);
        }
        canonicalize(&seq)
    }
}

fn is_canonical(letters: &[u8]) -> bool {
    let mut count = [0u8; 256];
    let mut next = 0u16;
    for &l in letters {
        if count[l as usize] == 0 {
            if l as u16 != next {
                return false;
            }
            next += 1;
        }
        count[l as usize] += 1;
        if count[l as usize] > 2 {
            return false;
        }
    }
    count.iter().all(|&c| c == 0 || c == 2)
}

/// Relabels letters in order of first occurrence.
///
/// Fails when some letter occurs once or more than twice; the error carries
/// the position of the offending occurrence.
pub fn canonicalize<L: Copy + Eq + Hash>(seq: &[L]) -> Result<GaussWord, WordError> {
    let mut labels: HashMap<L, (u8, usize, u8)> = HashMap::new();
    let mut out = Vec::with_capacity(seq.len());
    for (position, &l) in seq.iter().enumerate() {
        let next = labels.len();
        let entry = labels.entry(l).or_insert_with(|| (next as u8, position, 0));
        entry.2 += 1;
        if entry.2 > 2 {
            return Err(WordError::TooManyOccurrences { position });
        }
        if labels.len() > MAX_RANK {
            return Err(WordError::RankTooLarge { rank: labels.len() });
        }
        out.push(labels[&l].0);
    }
    if let Some(position) = labels.values().filter(|e| e.2 == 1).map(|e| e.1).min() {
        return Err(WordError::SingleOccurrence { position });
    }
    Ok(GaussWord { letters: out })
}

/// Canonicalizes a sequence of small letters known to form a Gauss word.
pub(crate) fn canonical_from_letters(seq: impl IntoIterator<Item = u8>) -> GaussWord {
    let mut relabel = [u8::MAX; 256];
    let mut next = 0u8;
    let letters = seq
        .into_iter()
        .map(|l| {
            let slot = &mut relabel[l as usize];
            if *slot == u8::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect();
    GaussWord::from_canonical_unchecked(letters)
}

/// Calls `visit` on every canonical word of the given rank, in lexicographic order.
///
/// Each new letter takes the first free slot and its second occurrence is
/// placed in every later free slot in turn.
pub fn for_each_canonical(rank: usize, mut visit: impl FnMut(&GaussWord)) {
    let mut word = GaussWord { letters: vec![u8::MAX; 2 * rank] };
    fill(&mut word, 0, 0, &mut visit);
}

fn fill(word: &mut GaussWord, start: usize, next: u8, visit: &mut impl FnMut(&GaussWord)) {
    let len = word.letters.len();
    let Some(first) = (start..len).find(|&i| word.letters[i] == u8::MAX) else {
        visit(word);
        return;
    };
    word.letters[first] = next;
    for second in first + 1..len {
        if word.letters[second] == u8::MAX {
            word.letters[second] = next;
            fill(word, first + 1, next + 1, visit);
            word.letters[second] = u8::MAX;
        }
    }
    word.letters[first] = u8::MAX;
}

/// All canonical words of the given rank in lexicographic order.
pub fn enumerate_canonical(rank: usize) -> Vec<GaussWord> {
    let mut out = Vec::with_capacity(double_factorial(rank) as usize);
    for_each_canonical(rank, |w| out.push(w.clone()));
    out
}

/// Words of the given rank grouped by the position of the second `A`.
///
/// The groups are disjoint, cover all words, and each group is in
/// lexicographic order, so concatenating them reproduces
/// [`enumerate_canonical`]. Used to fan out over large ranks.
pub fn for_each_canonical_with_prefix(rank: usize, second_a: usize, mut visit: impl FnMut(&GaussWord)) {
    if rank == 0 {
        visit(&GaussWord::empty());
        return;
    }
    let mut word = GaussWord { letters: vec![u8::MAX; 2 * rank] };
    word.letters[0] = 0;
    word.letters[second_a] = 0;
    fill(&mut word, 1, 1, &mut visit);
}

/// `(2r - 1)!!`, the number of canonical words of rank `r`.
pub fn double_factorial(rank: usize) -> u64 {
    (1..=rank as u64).map(|i| 2 * i - 1).product()
}

/// True when some letter occurs twice in a row.
pub fn has_adjacent_double(w: &GaussWord) -> bool {
    w.letters.windows(2).any(|p| p[0] == p[1])
}

/// Removes both occurrences of every letter in `letters`, then canonicalizes.
pub fn delete_letters(w: &GaussWord, letters: &[u8]) -> GaussWord {
    let mut mask = w.full_mask();
    for &l in letters {
        mask &= !(1u64 << l);
    }
    w.subword(mask)
}

/// Visits every `k`-subset of `0..n` as a bit mask (Gosper's hack).
pub fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(u64)) {
    if k > n {
        return;
    }
    if k == 0 {
        visit(0);
        return;
    }
    let limit: u128 = 1u128 << n;
    let mut mask: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    loop {
        visit(mask);
        let c = mask & mask.wrapping_neg();
        let r = mask as u128 + c as u128;
        if r >= limit {
            break;
        }
        let r = r as u64;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

/// Number of subwords of `w` isomorphic to `u`.
pub fn angle_bracket(u: &GaussWord, w: &GaussWord) -> u64 {
    if u.rank() > w.rank() {
        return 0;
    }
    let mut count = 0;
    for_each_subset(w.rank(), u.rank(), |mask| {
        if w.subword(mask) == *u {
            count += 1;
        }
    });
    count
}

/// Positions of adjacent pairs `A B ... B A`: `(i, j)` with the pairs at `i, i+1` and `j, j+1`.
pub fn h2_sites(w: &GaussWord) -> Vec<(usize, usize)> {
    reversed_pair_sites(w, true)
}

/// Positions of adjacent pairs `A B ... A B`.
pub fn h4_sites(w: &GaussWord) -> Vec<(usize, usize)> {
    reversed_pair_sites(w, false)
}

fn reversed_pair_sites(w: &GaussWord, reversed: bool) -> Vec<(usize, usize)> {
    let l = &w.letters;
    let partner = w.partners();
    let mut out = Vec::new();
    for i in 0..l.len().saturating_sub(1) {
        let (pa, pb) = (partner[i], partner[i + 1]);
        if l[i] == l[i + 1] || pa < i || pb < i {
            continue;
        }
        let j = if reversed { pb } else { pa };
        let (x, y) = if reversed { (pb, pa) } else { (pa, pb) };
        if y == x + 1 && j > i + 1 {
            out.push((i, j));
        }
    }
    out
}

/// All occurrences of `x A B y B A z`.
pub fn match_h2(w: &GaussWord) -> Vec<PatternMatch2> {
    h2_sites(w).into_iter().map(|(i, _)| PatternMatch2 { outer: w.letters[i], inner: w.letters[i + 1] }).collect()
}

/// All sites of three adjacent pairs on letter sets `{A,B}`, `{A,C}`, `{B,C}`
/// in any orientation, ordered by position.
pub fn triple_pair_sites(w: &GaussWord) -> Vec<TriplePairSite> {
    let l = &w.letters;
    let n = l.len();
    let partner = w.partners();
    let is_first = |p: usize| partner[p] > p;
    let mut out = Vec::new();
    for p1 in 0..n.saturating_sub(1) {
        if !(is_first(p1) && is_first(p1 + 1)) {
            continue;
        }
        // pick which letter of the first pair is shared with the second pair
        for (a_pos, b_pos) in [(p1, p1 + 1), (p1 + 1, p1)] {
            let a2 = partner[a_pos];
            for c_pos in [a2.wrapping_sub(1), a2 + 1] {
                if c_pos >= n || c_pos <= p1 + 1 || !is_first(c_pos) {
                    continue;
                }
                let p2 = a2.min(c_pos);
                let (b2, c2) = (partner[b_pos], partner[c_pos]);
                if b2.abs_diff(c2) != 1 {
                    continue;
                }
                let p3 = b2.min(c2);
                if p3 < p2 + 2 {
                    continue;
                }
                let orientation = (u8::from(a_pos > b_pos) << 2) | (u8::from(c_pos < a2) << 1) | u8::from(c2 < b2);
                out.push(TriplePairSite {
                    first: p1,
                    second: p2,
                    third: p3,
                    a: l[a_pos],
                    b: l[b_pos],
                    c: l[c_pos],
                    orientation,
                });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All occurrences of `x A B y A C z B C t`.
pub fn match_h3(w: &GaussWord) -> Vec<PatternMatch3> {
    triple_pair_sites(w)
        .into_iter()
        .filter(|s| s.orientation == 0)
        .map(|s| PatternMatch3 { a: s.a, b: s.b, c: s.c })
        .collect()
}

/// Swaps the letters of each of the three pairs of a site.
pub fn reverse_pairs(w: &GaussWord, site: &TriplePairSite) -> GaussWord {
    let mut letters = w.letters.clone();
    for p in [site.first, site.second, site.third] {
        letters.swap(p, p + 1);
    }
    canonical_from_letters(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GaussWord {
        s.parse().unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(w("ABAB").to_string(), "ABAB");
        assert_eq!(w("BAAB").to_string(), "ABBA");
        assert_eq!(w("BCACBA").to_string(), "ABCBAC");
        assert_eq!(GaussWord::empty().to_string(), "-");
        assert_eq!(w("-"), GaussWord::empty());
    }

    #[test]
    fn canonicalize_rejects_bad_words() {
        assert_eq!("ABA".parse::<GaussWord>(), Err(WordError::SingleOccurrence { position: 1 }));
        assert_eq!("AABA".parse::<GaussWord>(), Err(WordError::TooManyOccurrences { position: 3 }));
        assert!(matches!("AaBB".parse::<GaussWord>(), Err(WordError::InvalidCharacter { position: 1, .. })));
    }

    #[test]
    fn enumeration_small_ranks() {
        assert_eq!(enumerate_canonical(0), vec![GaussWord::empty()]);
        let r2: Vec<String> = enumerate_canonical(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(r2, ["AABB", "ABAB", "ABBA"]);
        assert_eq!(enumerate_canonical(3).len(), 15);
        assert_eq!(enumerate_canonical(4).len(), 105);
    }

    #[test]
    fn prefix_groups_concatenate_to_full_enumeration() {
        let all = enumerate_canonical(4);
        let mut grouped = Vec::new();
        for second in 1..8 {
            for_each_canonical_with_prefix(4, second, |w| grouped.push(w.clone()));
        }
        assert_eq!(all, grouped);
    }

    #[test]
    fn adjacent_double() {
        assert!(has_adjacent_double(&w("ABBA")));
        assert!(!has_adjacent_double(&w("ABAB")));
        assert!(!has_adjacent_double(&GaussWord::empty()));
    }

    #[test]
    fn deletion() {
        assert_eq!(delete_letters(&w("ABACBC"), &[1]), w("AABB"));
        assert_eq!(delete_letters(&w("ABAB"), &[0, 1]), GaussWord::empty());
        assert_eq!(delete_letters(&w("ABACBC"), &[]), w("ABACBC"));
    }

    #[test]
    fn angle_bracket_examples() {
        assert_eq!(angle_bracket(&w("ABAB"), &w("ABAB")), 1);
        assert_eq!(angle_bracket(&GaussWord::empty(), &w("ABCABC")), 1);
        assert_eq!(angle_bracket(&w("ABAB"), &w("ABCABC")), 3);
        assert_eq!(angle_bracket(&w("ABCABC"), &w("ABAB")), 0);
    }

    #[test]
    fn subset_enumeration_counts() {
        for n in 0..10 {
            for k in 0..=n {
                let mut count = 0u64;
                for_each_subset(n, k, |m| {
                    assert_eq!(m.count_ones() as usize, k);
                    assert!(m >> n == 0);
                    count += 1;
                });
                let binom = (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1));
                assert_eq!(count, binom, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn h2_examples() {
        assert_eq!(match_h2(&w("ABCACB")), vec![PatternMatch2 { outer: 1, inner: 2 }]);
        assert!(match_h2(&w("ABAB")).is_empty());
        assert_eq!(match_h2(&w("ABBA")), vec![PatternMatch2 { outer: 0, inner: 1 }]);
        assert_eq!(h4_sites(&w("ABAB")), vec![(0, 2)]);
        assert!(h4_sites(&w("ABBA")).is_empty());
    }

    #[test]
    fn h3_examples() {
        assert_eq!(match_h3(&w("ABACBC")), vec![PatternMatch3 { a: 0, b: 1, c: 2 }]);
        assert!(match_h3(&w("ABAB")).is_empty());
        // brute-force positional scan below gives the same answer
        assert_eq!(match_h3(&w("ABCACDBD")), brute_force_h3(&w("ABCACDBD")));
        assert_eq!(match_h3(&w("ABCACDBD")), vec![]);
    }

    fn brute_force_h3(w: &GaussWord) -> Vec<PatternMatch3> {
        let l = w.letters();
        let n = l.len();
        let mut out = Vec::new();
        for i in 0..n.saturating_sub(1) {
            for j in i + 2..n.saturating_sub(1) {
                for k in j + 2..n.saturating_sub(1) {
                    let (a, b, c) = (l[i], l[i + 1], l[j + 1]);
                    if l[j] == a && l[k] == b && l[k + 1] == c && a != b && b != c && a != c {
                        out.push(PatternMatch3 { a, b, c });
                    }
                }
            }
        }
        out
    }

    #[test]
    fn h3_matches_brute_force_on_rank_five() {
        for word in enumerate_canonical(5) {
            assert_eq!(match_h3(&word), brute_force_h3(&word), "{word}");
        }
    }

    #[test]
    fn triple_pair_orientations() {
        // ABACBC: AB, AC, BC forward
        let sites = triple_pair_sites(&w("ABACBC"));
        assert_eq!(sites.len(), 1);
        assert_eq!(sites[0].orientation, 0);
        assert_eq!(reverse_pairs(&w("ABACBC"), &sites[0]), w("BACACB"));
        let back = triple_pair_sites(&w("BACACB"));
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].orientation, 0b111);
    }
}
