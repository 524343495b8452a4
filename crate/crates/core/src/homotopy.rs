//! Homotopy moves on Gauss words and bounded search for move sequences.
//!
//! Besides the three generating moves, the derived moves H4–H7 are used
//! directly: they do not enlarge the equivalence classes but shorten the
//! searches considerably. H3 and H5–H7 all reverse three adjacent pairs on
//! letter sets `{A,B}`, `{A,C}`, `{B,C}`; they differ only in the
//! orientation of the pairs, see [`TriplePairSite`].

use std::collections::VecDeque;
use std::fmt;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::gaussword::{
    canonical_from_letters, h2_sites, h4_sites, reverse_pairs, triple_pair_sites, GaussWord, TriplePairSite,
};

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveTag {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
}

impl MoveTag {
    /// Exchange move for a triple-pair orientation.
    pub fn for_orientation(orientation: u8) -> MoveTag {
        match orientation {
            0b000 | 0b111 => MoveTag::H3,
            0b010 | 0b101 => MoveTag::H5,
            0b011 | 0b100 => MoveTag::H6,
            _ => MoveTag::H7,
        }
    }
}

impl fmt::Display for MoveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Expand,
    Reduce,
    Exchange,
}

impl Direction {
    pub fn inverse(self) -> Direction {
        match self {
            Direction::Expand => Direction::Reduce,
            Direction::Reduce => Direction::Expand,
            Direction::Exchange => Direction::Exchange,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Expand => "expand",
            Direction::Reduce => "reduce",
            Direction::Exchange => "exchange",
        })
    }
}

/// One move applied to a word. `positions` are positions in the source word:
/// starts of the removed pairs for reductions, insertion points for
/// expansions, starts of the three reversed pairs for exchanges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveApplication {
    pub tag: MoveTag,
    pub direction: Direction,
    pub positions: Vec<usize>,
}

/// A move together with the word it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub application: MoveApplication,
    pub word_after: GaussWord,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.application.tag, self.application.direction, self.word_after)
    }
}

fn removing(w: &GaussWord, starts: &[usize]) -> GaussWord {
    let drop = |i: usize| starts.iter().any(|&s| i == s || i == s + 1);
    canonical_from_letters(w.letters().iter().enumerate().filter(|&(i, _)| !drop(i)).map(|(_, &l)| l))
}

/// Inserts `first` at position `p` and `second` at `q >= p` (source coordinates).
fn inserting(w: &GaussWord, p: usize, first: &[u8], q: usize, second: &[u8]) -> GaussWord {
    let l = w.letters();
    let mut out = Vec::with_capacity(l.len() + first.len() + second.len());
    out.extend_from_slice(&l[..p]);
    out.extend_from_slice(first);
    out.extend_from_slice(&l[p..q]);
    out.extend_from_slice(second);
    out.extend_from_slice(&l[q..]);
    canonical_from_letters(out)
}

/// All words one move away from `w`, each reported once with the first move found.
///
/// Reductions and exchanges are always generated; expansions only while the
/// result has rank at most `rank_cap`.
pub fn neighbors(w: &GaussWord, rank_cap: usize) -> Vec<(GaussWord, MoveApplication)> {
    let mut out = Vec::new();
    let mut seen = FxHashSet::default();
    let mut push = |word: GaussWord, tag, direction, positions: Vec<usize>| {
        if seen.insert(word.clone()) {
            out.push((word, MoveApplication { tag, direction, positions }));
        }
    };
    let l = w.letters();
    let rank = w.rank();

    for i in 0..l.len().saturating_sub(1) {
        if l[i] == l[i + 1] {
            push(removing(w, &[i]), MoveTag::H1, Direction::Reduce, vec![i]);
        }
    }
    for (i, j) in h2_sites(w) {
        push(removing(w, &[i, j]), MoveTag::H2, Direction::Reduce, vec![i, j]);
    }
    for (i, j) in h4_sites(w) {
        push(removing(w, &[i, j]), MoveTag::H4, Direction::Reduce, vec![i, j]);
    }
    for site in triple_pair_sites(w) {
        let TriplePairSite { first, second, third, orientation, .. } = site;
        push(
            reverse_pairs(w, &site),
            MoveTag::for_orientation(orientation),
            Direction::Exchange,
            vec![first, second, third],
        );
    }

    let (x, y) = (rank as u8, rank as u8 + 1);
    if rank < rank_cap {
        for p in 0..=l.len() {
            push(inserting(w, p, &[x, x], p, &[]), MoveTag::H1, Direction::Expand, vec![p]);
        }
    }
    if rank + 2 <= rank_cap {
        for p in 0..=l.len() {
            for q in p..=l.len() {
                push(inserting(w, p, &[x, y], q, &[y, x]), MoveTag::H2, Direction::Expand, vec![p, q]);
                push(inserting(w, p, &[x, y], q, &[x, y]), MoveTag::H4, Direction::Expand, vec![p, q]);
            }
        }
    }
    out
}

/// Finds a move taking `from` to `to`, if one exists within the cap.
pub fn find_move(from: &GaussWord, to: &GaussWord, rank_cap: usize) -> Option<MoveApplication> {
    neighbors(from, rank_cap).into_iter().find(|(w, _)| w == to).map(|(_, m)| m)
}

/// Turns a word path into a trace of moves; `None` if some step is not a single move.
pub fn trace_from_path(path: &[GaussWord], rank_cap: usize) -> Option<Vec<TraceStep>> {
    path.windows(2)
        .map(|p| {
            find_move(&p[0], &p[1], rank_cap).map(|application| TraceStep { application, word_after: p[1].clone() })
        })
        .collect()
}

/// Checks that `trace` leads from `source` to `target` by valid moves.
pub fn replay_trace(source: &GaussWord, target: &GaussWord, trace: &[TraceStep], rank_cap: usize) -> bool {
    let mut current = source.clone();
    for step in trace {
        let ok = neighbors(&current, rank_cap).iter().any(|(w, _)| *w == step.word_after);
        if !ok {
            return false;
        }
        current = step.word_after.clone();
    }
    current == *target
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Connected,
    /// Not found within the rank cap and node budget; says nothing about distinctness.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub trace: Vec<TraceStep>,
    pub nodes_explored: usize,
    pub frontier_rank_cap: usize,
}

pub fn default_rank_cap(w1: &GaussWord, w2: &GaussWord) -> usize {
    w1.rank().max(w2.rank()) + 2
}

type Parents = FxHashMap<GaussWord, Option<GaussWord>>;

fn path_to_root(parents: &Parents, mut w: GaussWord) -> Vec<GaussWord> {
    let mut path = vec![w.clone()];
    while let Some(Some(p)) = parents.get(&w) {
        path.push(p.clone());
        w = p.clone();
    }
    path
}

/// Bidirectional breadth-first search over canonical words of rank at most `rank_cap`.
pub fn search(w1: &GaussWord, w2: &GaussWord, rank_cap: usize, node_budget: usize) -> SearchOutcome {
    let unknown = |nodes| SearchOutcome {
        status: SearchStatus::Unknown,
        trace: Vec::new(),
        nodes_explored: nodes,
        frontier_rank_cap: rank_cap,
    };
    if w1 == w2 {
        return SearchOutcome {
            status: SearchStatus::Connected,
            trace: Vec::new(),
            nodes_explored: 1,
            frontier_rank_cap: rank_cap,
        };
    }
    if w1.rank() > rank_cap || w2.rank() > rank_cap {
        return unknown(0);
    }
    let mut sides: [(Parents, Vec<GaussWord>); 2] = [
        (Parents::from_iter([(w1.clone(), None)]), vec![w1.clone()]),
        (Parents::from_iter([(w2.clone(), None)]), vec![w2.clone()]),
    ];
    loop {
        let explored = sides[0].0.len() + sides[1].0.len();
        if sides[0].1.is_empty() || sides[1].1.is_empty() || explored >= node_budget {
            return unknown(explored);
        }
        let side = usize::from(sides[1].1.len() < sides[0].1.len());
        let frontier = std::mem::take(&mut sides[side].1);
        let mut next = Vec::new();
        for w in frontier {
            for (n, _) in neighbors(&w, rank_cap) {
                if sides[side].0.contains_key(&n) {
                    continue;
                }
                sides[side].0.insert(n.clone(), Some(w.clone()));
                if sides[1 - side].0.contains_key(&n) {
                    let mut forward = path_to_root(&sides[0].0, n.clone());
                    forward.reverse();
                    let backward = path_to_root(&sides[1].0, n);
                    forward.extend(backward.into_iter().skip(1));
                    let trace = trace_from_path(&forward, rank_cap).expect("path steps are moves");
                    return SearchOutcome {
                        status: SearchStatus::Connected,
                        trace,
                        nodes_explored: sides[0].0.len() + sides[1].0.len(),
                        frontier_rank_cap: rank_cap,
                    };
                }
                next.push(n);
            }
        }
        sides[side].1 = next;
    }
}

/// Breadth-first closure of one word under moves, with a parent tree for traces.
#[derive(Clone, Debug)]
pub struct Exploration {
    pub root: GaussWord,
    pub rank_cap: usize,
    parents: Parents,
    /// False when the node budget stopped the search early.
    pub complete: bool,
}

impl Exploration {
    pub fn contains(&self, w: &GaussWord) -> bool {
        self.parents.contains_key(w)
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    /// Moves leading from the root to `w`.
    pub fn trace_to(&self, w: &GaussWord) -> Option<Vec<TraceStep>> {
        if !self.contains(w) {
            return None;
        }
        let mut path = path_to_root(&self.parents, w.clone());
        path.reverse();
        trace_from_path(&path, self.rank_cap)
    }
}

pub fn explore(root: &GaussWord, rank_cap: usize, node_budget: usize) -> Exploration {
    let mut parents = Parents::default();
    parents.insert(root.clone(), None);
    let mut queue = VecDeque::from([root.clone()]);
    let mut complete = true;
    while let Some(w) = queue.pop_front() {
        for (n, _) in neighbors(&w, rank_cap) {
            if parents.contains_key(&n) {
                continue;
            }
            if parents.len() >= node_budget {
                complete = false;
                queue.clear();
                break;
            }
            parents.insert(n.clone(), Some(w.clone()));
            queue.push_back(n);
        }
    }
    Exploration { root: root.clone(), rank_cap, parents, complete }
}

/// A strictly smaller word reachable by one reducing move (H1, H2 or H4), if any.
pub fn reduce_once(w: &GaussWord) -> Option<(GaussWord, MoveApplication)> {
    neighbors(w, w.rank()).into_iter().find(|(_, m)| m.direction == Direction::Reduce)
}
