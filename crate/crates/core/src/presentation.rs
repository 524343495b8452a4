//! Generators and relations presenting the truncated group `H_n`.
//!
//! Generators are the irreducible canonical words of rank `1..=n` (words
//! containing an adjacent pair `AA` vanish). Relations come from every
//! occurrence of the second and third relation patterns in words of rank at
//! most `n + 1`, truncated by dropping reducible words and words of rank
//! above `n`.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use log::info;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::PresentationError;
use crate::gaussword::{
    canonical_from_letters, delete_letters, for_each_canonical, for_each_canonical_with_prefix, h2_sites,
    has_adjacent_double, triple_pair_sites, GaussWord,
};
use crate::smith::SparseMatrix;

/// Irreducible canonical words of rank `1..=degree`, indexed rank-major then lexicographically.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    degree: usize,
    words: Vec<GaussWord>,
    index: FxHashMap<GaussWord, u32>,
}

impl GeneratorTable {
    pub fn from_words(degree: usize, words: Vec<GaussWord>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        GeneratorTable { degree, words, index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[GaussWord] {
        &self.words
    }

    pub fn word(&self, id: u32) -> &GaussWord {
        &self.words[id as usize]
    }

    pub fn id(&self, w: &GaussWord) -> Option<u32> {
        self.index.get(w).copied()
    }
}

/// A relation as a sparse integer vector over generator ids.
///
/// Terms are sorted by id, carry no zero coefficients, and the first
/// coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationVector {
    terms: Vec<(u32, i32)>,
}

impl RelationVector {
    /// Merges duplicate ids, drops zeros and fixes the sign. `None` when nothing survives.
    pub fn normalized(mut terms: Vec<(u32, i32)>) -> Option<Self> {
        terms.sort_unstable_by_key(|t| t.0);
        let mut merged: Vec<(u32, i32)> = Vec::with_capacity(terms.len());
        for (id, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == id => last.1 += c,
                _ => merged.push((id, c)),
            }
        }
        merged.retain(|t| t.1 != 0);
        let first = merged.first()?;
        if first.1 < 0 {
            for t in &mut merged {
                t.1 = -t.1;
            }
        }
        Some(RelationVector { terms: merged })
    }

    pub fn terms(&self) -> &[(u32, i32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Pattern occurrence counts, before deduplication.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RawCounts {
    /// Occurrences of the second relation pattern.
    pub g2: u64,
    /// Occurrences of the third relation pattern.
    pub g3: u64,
    /// Second-pattern occurrences whose relation survives truncation.
    pub g2_nonempty: u64,
    /// Third-pattern occurrences whose relation survives truncation.
    pub g3_nonempty: u64,
}

impl std::ops::Add for RawCounts {
    type Output = RawCounts;
    fn add(self, o: RawCounts) -> RawCounts {
        RawCounts {
            g2: self.g2 + o.g2,
            g3: self.g3 + o.g3,
            g2_nonempty: self.g2_nonempty + o.g2_nonempty,
            g3_nonempty: self.g3_nonempty + o.g3_nonempty,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub degree: usize,
    pub generators: GeneratorTable,
    pub relations: Vec<RelationVector>,
    pub raw_counts: RawCounts,
}

/// All irreducible canonical words of rank `1..=n`.
pub fn build_generators(n: usize) -> GeneratorTable {
    let mut words = Vec::new();
    for rank in 1..=n {
        for_each_canonical(rank, |w| {
            if !has_adjacent_double(w) {
                words.push(w.clone());
            }
        });
    }
    info!("degree {n}: {} generators", words.len());
    GeneratorTable::from_words(n, words)
}

/// Generator id of `w`, or `None` when the word vanishes in `H_n`.
pub fn truncate_term(table: &GeneratorTable, w: &GaussWord) -> Result<Option<u32>, PresentationError> {
    if w.is_empty() || w.rank() > table.degree || has_adjacent_double(w) {
        return Ok(None);
    }
    table.id(w).map(Some).ok_or_else(|| PresentationError::MissingGenerator { word: w.to_string(), rank: w.rank() })
}

fn truncated(
    table: &GeneratorTable,
    terms: impl IntoIterator<Item = (GaussWord, i32)>,
) -> Result<Option<RelationVector>, PresentationError> {
    let mut out = Vec::with_capacity(8);
    for (w, c) in terms {
        if let Some(id) = truncate_term(table, &w)? {
            out.push((id, c));
        }
    }
    Ok(RelationVector::normalized(out))
}

/// Second-type relations `xAByBAz + 2 xAyAz` sourced from one word.
pub fn g2_relations_of(
    table: &GeneratorTable,
    w: &GaussWord,
) -> Result<Vec<Option<RelationVector>>, PresentationError> {
    h2_sites(w)
        .into_iter()
        .map(|(i, _)| {
            let inner = w.letters()[i + 1];
            truncated(table, [(w.clone(), 1), (delete_letters(w, &[inner]), 2)])
        })
        .collect()
}

/// Third-type relations sourced from one word (one per forward triple-pair site).
pub fn g3_relations_of(
    table: &GeneratorTable,
    w: &GaussWord,
) -> Result<Vec<Option<RelationVector>>, PresentationError> {
    triple_pair_sites(w)
        .into_iter()
        .filter(|s| s.orientation == 0)
        .map(|site| {
            let mut swapped = w.letters().to_vec();
            for p in [site.first, site.second, site.third] {
                swapped.swap(p, p + 1);
            }
            let without = |letters: &[u8], l: Option<u8>| {
                canonical_from_letters(letters.iter().copied().filter(|&x| Some(x) != l))
            };
            let mut terms = Vec::with_capacity(8);
            for l in [None, Some(site.c), Some(site.b), Some(site.a)] {
                terms.push((without(w.letters(), l), 1));
                terms.push((without(&swapped, l), -1));
            }
            truncated(table, terms)
        })
        .collect()
}

struct Batch {
    relations: Vec<RelationVector>,
    counts: RawCounts,
}

fn collect_from(
    table: &GeneratorTable,
    words: impl FnOnce(&mut dyn FnMut(&GaussWord)),
    keep: bool,
) -> Result<Batch, PresentationError> {
    let mut batch = Batch { relations: Vec::new(), counts: RawCounts::default() };
    let mut failure = None;
    words(&mut |w: &GaussWord| {
        if failure.is_some() {
            return;
        }
        let g2 = match g2_relations_of(table, w) {
            Ok(r) => r,
            Err(e) => return failure = Some(e),
        };
        let g3 = match g3_relations_of(table, w) {
            Ok(r) => r,
            Err(e) => return failure = Some(e),
        };
        batch.counts.g2 += g2.len() as u64;
        batch.counts.g3 += g3.len() as u64;
        for r in g2.into_iter().flatten() {
            batch.counts.g2_nonempty += 1;
            if keep {
                batch.relations.push(r);
            }
        }
        for r in g3.into_iter().flatten() {
            batch.counts.g3_nonempty += 1;
            if keep {
                batch.relations.push(r);
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    batch.relations.sort_unstable();
    batch.relations.dedup();
    Ok(batch)
}

/// Generates, truncates, normalizes and deduplicates all relations.
///
/// Source words are split into independent batches processed in parallel; the
/// merged result is sorted, so the output does not depend on scheduling.
pub fn generate_relations(table: &GeneratorTable) -> Result<(Vec<RelationVector>, RawCounts), PresentationError> {
    let n = table.degree();
    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for rank in 2..=n + 1 {
        for second in 1..2 * rank {
            jobs.push((rank, second));
        }
    }
    let batches: Vec<Batch> = jobs
        .par_iter()
        .map(|&(rank, second)| {
            collect_from(table, |visit| for_each_canonical_with_prefix(rank, second, |w| visit(w)), true)
        })
        .collect::<Result<_, _>>()?;
    let mut counts = RawCounts::default();
    let mut relations = Vec::new();
    for b in batches {
        counts = counts + b.counts;
        relations.extend(b.relations);
    }
    relations.par_sort_unstable();
    relations.dedup();
    info!(
        "degree {n}: {} second-type and {} third-type occurrences, {} unique relations",
        counts.g2,
        counts.g3,
        relations.len()
    );
    Ok((relations, counts))
}

/// Second-type relations of the whole presentation, deduplicated, with occurrence counts.
pub fn g2_relations(table: &GeneratorTable) -> Result<(Vec<RelationVector>, RawCounts), PresentationError> {
    single_kind(table, true)
}

/// Third-type relations of the whole presentation, deduplicated, with occurrence counts.
pub fn g3_relations(table: &GeneratorTable) -> Result<(Vec<RelationVector>, RawCounts), PresentationError> {
    single_kind(table, false)
}

fn single_kind(table: &GeneratorTable, second: bool) -> Result<(Vec<RelationVector>, RawCounts), PresentationError> {
    let mut counts = RawCounts::default();
    let mut relations = Vec::new();
    for rank in 2..=table.degree() + 1 {
        let mut failure = None;
        for_each_canonical(rank, |w| {
            if failure.is_some() {
                return;
            }
            let rels = if second { g2_relations_of(table, w) } else { g3_relations_of(table, w) };
            match rels {
                Ok(rels) => {
                    let total = rels.len() as u64;
                    let nonempty: Vec<_> = rels.into_iter().flatten().collect();
                    if second {
                        counts.g2 += total;
                        counts.g2_nonempty += nonempty.len() as u64;
                    } else {
                        counts.g3 += total;
                        counts.g3_nonempty += nonempty.len() as u64;
                    }
                    relations.extend(nonempty);
                }
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }
    relations.sort_unstable();
    relations.dedup();
    Ok((relations, counts))
}

/// Generator, occurrence and unique-relation counts without keeping the relations around.
///
/// Unique counting still needs the deduplicated set, so this only saves the
/// matrix and presentation bookkeeping.
pub fn count_presentation(n: usize) -> Result<(usize, RawCounts, usize), PresentationError> {
    let generators = build_generators(n);
    let (relations, counts) = generate_relations(&generators)?;
    Ok((generators.len(), counts, relations.len()))
}

pub fn build_presentation(n: usize) -> Result<Presentation, PresentationError> {
    let generators = build_generators(n);
    let (relations, raw_counts) = generate_relations(&generators)?;
    Ok(Presentation { degree: n, generators, relations, raw_counts })
}

impl Presentation {
    /// Relation matrix with one row per generator and one column per relation.
    pub fn matrix(&self) -> SparseMatrix {
        let columns =
            self.relations.iter().map(|r| r.terms().iter().map(|&(id, c)| (id, c as i64)).collect()).collect();
        SparseMatrix::from_columns(self.generators.len(), columns).expect("relation ids are valid generator ids")
    }

    pub fn write_to(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "# polyak-presentation v1")?;
        writeln!(out, "degree {}", self.degree)?;
        writeln!(out, "generators {}", self.generators.len())?;
        for (i, w) in self.generators.words().iter().enumerate() {
            writeln!(out, "{i} {w}")?;
        }
        writeln!(out, "relations {}", self.relations.len())?;
        let mut line = String::new();
        for r in &self.relations {
            line.clear();
            for (k, (id, c)) in r.terms().iter().enumerate() {
                if k > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{id}:{c}");
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn read_from(input: impl BufRead) -> Result<Self, PresentationError> {
        let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next = |what: &str| -> Result<(usize, String), PresentationError> {
            match lines.next() {
                Some((n, Ok(l))) => Ok((n, l)),
                Some((_, Err(e))) => Err(e.into()),
                None => Err(PresentationError::Parse { line: 0, message: format!("missing {what}") }),
            }
        };
        let parse_err = |line: usize, message: String| PresentationError::Parse { line, message };
        let (n, header) = next("header")?;
        if header.trim() != "# polyak-presentation v1" {
            return Err(parse_err(n, format!("unexpected header {header:?}")));
        }
        let keyed = |(n, l): (usize, String), key: &str| -> Result<usize, PresentationError> {
            l.strip_prefix(key)
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| parse_err(n, format!("expected `{key}<number>`")))
        };
        let degree = keyed(next("degree")?, "degree ")?;
        let count = keyed(next("generators")?, "generators ")?;
        let mut words = Vec::with_capacity(count);
        for i in 0..count {
            let (n, l) = next("generator")?;
            let (id, word) = l.split_once(' ').ok_or_else(|| parse_err(n, "expected `<id> <word>`".into()))?;
            if id.parse::<usize>().ok() != Some(i) {
                return Err(parse_err(n, format!("expected generator id {i}")));
            }
            let w: GaussWord = word.parse()?;
            if w.to_string() != word.trim() {
                return Err(parse_err(n, format!("{word} is not canonical")));
            }
            words.push(w);
        }
        let rel_count = keyed(next("relations")?, "relations ")?;
        let mut relations = Vec::with_capacity(rel_count);
        for _ in 0..rel_count {
            let (n, l) = next("relation")?;
            let mut terms = Vec::new();
            for pair in l.split_whitespace() {
                let (id, c) = pair
                    .split_once(':')
                    .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<i32>().ok()?)))
                    .ok_or_else(|| parse_err(n, format!("bad term {pair:?}")))?;
                if id as usize >= count {
                    return Err(parse_err(n, format!("generator id {id} out of range")));
                }
                terms.push((id, c));
            }
            let r = RelationVector::normalized(terms).ok_or_else(|| parse_err(n, "empty relation".into()))?;
            relations.push(r);
        }
        Ok(Presentation {
            degree,
            generators: GeneratorTable::from_words(degree, words),
            relations,
            raw_counts: RawCounts::default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GaussWord {
        s.parse().unwrap()
    }

    fn rel(table: &GeneratorTable, terms: &[(&str, i32)]) -> RelationVector {
        RelationVector::normalized(terms.iter().map(|&(s, c)| (table.id(&w(s)).unwrap(), c)).collect()).unwrap()
    }

    #[test]
    fn generators_small() {
        let t = build_generators(2);
        assert_eq!(t.words(), &[w("ABAB")]);
        assert!(build_generators(1).is_empty());
        assert_eq!(build_generators(4).len(), 42);
    }

    #[test]
    fn truncation() {
        let t = build_generators(4);
        assert_eq!(truncate_term(&t, &w("AABB")).unwrap(), None);
        assert_eq!(truncate_term(&t, &w("ABCDEABCDE")).unwrap(), None);
        assert_eq!(truncate_term(&t, &GaussWord::empty()).unwrap(), None);
        assert_eq!(truncate_term(&t, &w("ABAB")).unwrap(), Some(0));
        let broken = GeneratorTable::from_words(4, vec![]);
        assert!(matches!(truncate_term(&broken, &w("ABAB")), Err(PresentationError::MissingGenerator { .. })));
    }

    #[test]
    fn g2_examples() {
        let t = build_generators(4);
        let rels = g2_relations_of(&t, &w("ABCACB")).unwrap();
        assert_eq!(rels, vec![Some(rel(&t, &[("ABCACB", 1), ("ABAB", 2)]))]);
        assert_eq!(g2_relations_of(&t, &w("ABBA")).unwrap(), vec![None]);
    }

    #[test]
    fn g3_example() {
        let t = build_generators(4);
        let rels = g3_relations_of(&t, &w("ABACBC")).unwrap();
        assert_eq!(rels, vec![Some(rel(&t, &[("ABACBC", 1), ("ABAB", 1), ("ABCBCA", -1)]))]);
    }

    #[test]
    fn normalization() {
        let r = RelationVector::normalized(vec![(3, 1), (1, -2), (3, -1), (2, 0)]).unwrap();
        assert_eq!(r.terms(), &[(1, 2)]);
        assert!(RelationVector::normalized(vec![(1, 1), (1, -1)]).is_none());
    }

    #[test]
    fn presentation_small_degrees() {
        let p1 = build_presentation(1).unwrap();
        assert!(p1.generators.is_empty());
        assert!(p1.relations.is_empty());
    }

    #[test]
    fn file_round_trip() {
        let p = build_presentation(4).unwrap();
        let mut buf = Vec::new();
        p.write_to(&mut buf).unwrap();
        let q = Presentation::read_from(&buf[..]).unwrap();
        assert_eq!(q.degree, 4);
        assert_eq!(q.generators.words(), p.generators.words());
        assert_eq!(q.relations, p.relations);
        let mut again = Vec::new();
        q.write_to(&mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn rejects_bad_header() {
        let err = Presentation::read_from(&b"# something else\n"[..]).unwrap_err();
        assert!(matches!(err, PresentationError::Parse { line: 1, .. }));
    }
}
