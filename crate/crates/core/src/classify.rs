//! Partition of Gauss words into homotopy classes.
//!
//! Words with different invariant values are certainly not homotopic. Words
//! with equal values are merged when a move search connects them; groups the
//! search cannot join are reported as unresolved rather than declared
//! distinct.

use std::collections::BTreeMap;
use std::io::Write;

use log::info;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::gaussword::{for_each_canonical, GaussWord};
use crate::homotopy::{explore, reduce_once, search, SearchStatus, TraceStep};
use crate::invariant::{InvariantTable, Value};

#[derive(Clone, Debug)]
pub struct Class {
    pub value: Value,
    /// Sorted by rank, then lexicographically; the first word is the representative.
    pub words: Vec<GaussWord>,
    /// For each word, a move sequence from the representative (empty for the representative).
    pub traces: Vec<Vec<TraceStep>>,
}

impl Class {
    pub fn representative(&self) -> &GaussWord {
        &self.words[0]
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub max_rank: usize,
    pub degree: usize,
    /// Ordered by value, then by representative.
    pub classes: Vec<Class>,
    /// Pairs of class indices sharing a value that no search connected.
    pub unresolved: Vec<(usize, usize)>,
}

fn rank_lex(a: &GaussWord, b: &GaussWord) -> std::cmp::Ordering {
    (a.rank(), a).cmp(&(b.rank(), b))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index (earlier in rank-lex order) as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// All canonical words of rank `0..=max_rank`, rank-major.
pub fn words_up_to(max_rank: usize) -> Vec<GaussWord> {
    let mut words = Vec::new();
    for r in 0..=max_rank {
        for_each_canonical(r, |w| words.push(w.clone()));
    }
    words
}

pub fn classify(max_rank: usize, table: &InvariantTable, rank_cap: usize, node_budget: usize) -> Classification {
    let mut c = classify_words(words_up_to(max_rank), table, rank_cap, node_budget);
    c.max_rank = max_rank;
    c
}

/// Classifies an arbitrary set of canonical words.
pub fn classify_words(
    mut words: Vec<GaussWord>,
    table: &InvariantTable,
    rank_cap: usize,
    node_budget: usize,
) -> Classification {
    words.sort_by(rank_lex);
    words.dedup();
    let max_rank = words.iter().map(GaussWord::rank).max().unwrap_or(0);
    let index: FxHashMap<&GaussWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let values: Vec<Value> = words.par_iter().map(|w| table.evaluate(w)).collect();

    // words that reduce to a smaller word in the set join it right away
    let mut uf = UnionFind::new(words.len());
    for (i, w) in words.iter().enumerate() {
        if let Some((smaller, _)) = reduce_once(w) {
            if let Some(&j) = index.get(&smaller) {
                uf.union(i, j);
            }
        }
    }

    let mut groups: BTreeMap<&Value, Vec<usize>> = BTreeMap::new();
    for (i, v) in values.iter().enumerate() {
        groups.entry(v).or_default().push(i);
    }
    info!("{} words in {} value groups", words.len(), groups.len());

    let group_list: Vec<(&Value, Vec<usize>)> = groups.into_iter().collect();
    let mut uf_roots: Vec<usize> = (0..words.len()).map(|i| uf.find(i)).collect();
    let per_group: Vec<Vec<Class>> = group_list
        .par_iter()
        .map(|(value, members)| merge_group(&words, members, &mut uf_roots.clone(), value, rank_cap, node_budget))
        .collect();
    uf_roots.clear();

    let mut classes = Vec::new();
    let mut unresolved = Vec::new();
    for group in per_group {
        let start = classes.len();
        let n = group.len();
        classes.extend(group);
        for a in start..start + n {
            for b in a + 1..start + n {
                unresolved.push((a, b));
            }
        }
    }
    Classification { max_rank, degree: table.degree(), classes, unresolved }
}

fn merge_group(
    words: &[GaussWord],
    members: &[usize],
    roots: &mut [usize],
    value: &Value,
    rank_cap: usize,
    node_budget: usize,
) -> Vec<Class> {
    // pre-collapsed components inside the group, in order of their smallest word
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &i in members {
        components.entry(roots[i]).or_default().push(i);
    }
    let mut pending: Vec<Vec<usize>> = components.into_values().collect();
    pending.sort_by_key(|c| c[0]);
    let mut classes = Vec::new();
    while !pending.is_empty() {
        let first = pending.remove(0);
        let root = words[first[0]].clone();
        let reach = explore(&root, rank_cap, node_budget);
        let mut merged = first;
        pending.retain(|comp| {
            if comp.iter().any(|&i| reach.contains(&words[i])) {
                merged.extend_from_slice(comp);
                false
            } else {
                true
            }
        });
        merged.sort_unstable();
        let class_words: Vec<GaussWord> = merged.iter().map(|&i| words[i].clone()).collect();
        let traces = class_words
            .iter()
            .map(|w| {
                reach.trace_to(w).unwrap_or_else(|| {
                    let out = search(&root, w, rank_cap, node_budget);
                    debug_assert_eq!(out.status, SearchStatus::Connected);
                    out.trace
                })
            })
            .collect();
        classes.push(Class { value: value.clone(), words: class_words, traces });
    }
    classes
}

impl Classification {
    /// Classes grouped by value, as index ranges into `classes`.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out: Vec<std::ops::Range<usize>> = Vec::new();
        for (i, c) in self.classes.iter().enumerate() {
            match out.last_mut() {
                Some(r) if self.classes[r.start].value == c.value => r.end = i + 1,
                _ => out.push(i..i + 1),
            }
        }
        out
    }

    pub fn class_of(&self, w: &GaussWord) -> Option<usize> {
        self.classes.iter().position(|c| c.words.binary_search_by(|x| rank_lex(x, w)).is_ok())
    }

    /// Human-readable report: one block per value.
    pub fn report(&self, out: &mut impl Write) -> std::io::Result<()> {
        let total: usize = self.classes.iter().map(|c| c.words.len()).sum();
        writeln!(out, "# {} words of rank <= {} under the degree {} invariant", total, self.max_rank, self.degree)?;
        writeln!(
            out,
            "# {} blocks, {} classes, {} unresolved pairs",
            self.blocks().len(),
            self.classes.len(),
            self.unresolved.len()
        )?;
        for (b, range) in self.blocks().into_iter().enumerate() {
            writeln!(out)?;
            writeln!(out, "block {b} value ({})", self.classes[range.start].value)?;
            for id in range {
                let c = &self.classes[id];
                writeln!(out, "  class {id} size {} representative {}", c.words.len(), c.representative())?;
                for chunk in c.words.chunks(8) {
                    let line: Vec<String> = chunk.iter().map(|w| w.to_string()).collect();
                    writeln!(out, "    {}", line.join(" "))?;
                }
            }
        }
        if !self.unresolved.is_empty() {
            writeln!(out)?;
            for &(a, b) in &self.unresolved {
                writeln!(
                    out,
                    "unresolved {a} {b} ({} vs {})",
                    self.classes[a].representative(),
                    self.classes[b].representative()
                )?;
            }
        }
        Ok(())
    }

    /// Machine-readable form: `<word> <class-id> <value-components>` per word.
    pub fn write_assignments(&self, out: &mut impl Write) -> std::io::Result<()> {
        for (id, c) in self.classes.iter().enumerate() {
            for w in &c.words {
                writeln!(out, "{w} {id} {}", c.value)?;
            }
        }
        Ok(())
    }

    /// Move traces from each class representative, one block per class.
    pub fn write_traces(&self, out: &mut impl Write) -> std::io::Result<()> {
        for (id, c) in self.classes.iter().enumerate() {
            for (w, trace) in c.words.iter().zip(&c.traces).skip(1) {
                writeln!(out, "# class {id}: {} -> {w}", c.representative())?;
                for step in trace {
                    writeln!(out, "{step}")?;
                }
            }
        }
        Ok(())
    }
}
