//! Smith normal form of sparse integer matrices.
//!
//! The production engine works in `Z/2^k Z`, which is exact whenever `2^k`
//! annihilates the cokernel: reducing mod `2^k` amounts to appending the
//! columns `2^k e_i`, and that does not change the cokernel. Only row
//! operations are recorded, because only the rows of `U` belonging to
//! nontrivial divisors are needed to map generators into the quotient.
//!
//! [`snf_dense_naive`] is a textbook integer SNF with both transformation
//! matrices. It is slow and only meant as an oracle on small inputs.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use log::{debug, info};
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;

use crate::error::SmithError;
use crate::ring::{Mod2k, Word};

/// Integer matrix stored by columns; each column is sorted by row and has no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Result<Self, SmithError> {
        let ncols = columns.len();
        let mut out = Vec::with_capacity(ncols);
        for (j, mut col) in columns.into_iter().enumerate() {
            col.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for (i, v) in col {
                if i as usize >= rows {
                    return Err(SmithError::OutOfRange { row: i as usize, col: j, rows, cols: ncols });
                }
                match merged.last_mut() {
                    Some(last) if last.0 == i => last.1 += v,
                    _ => merged.push((i, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            out.push(merged);
        }
        Ok(SparseMatrix { rows, columns: out })
    }

    pub fn from_dense(dense: &[Vec<i64>], cols: usize) -> Self {
        let columns = (0..cols)
            .map(|j| {
                dense.iter().enumerate().filter(|(_, row)| row[j] != 0).map(|(i, row)| (i as u32, row[j])).collect()
            })
            .collect();
        SparseMatrix { rows: dense.len(), columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                d[i as usize][j] = v;
            }
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> SparseMatrix {
        SparseMatrix { rows: self.rows, columns: perm.iter().map(|&j| self.columns[j].clone()).collect() }
    }

    /// Appends the columns `scale * e_i` for every row `i`.
    pub fn augmented(&self, scale: i64) -> SparseMatrix {
        let mut columns = self.columns.clone();
        columns.extend((0..self.rows).map(|i| vec![(i as u32, scale)]));
        SparseMatrix { rows: self.rows, columns }
    }

    /// Text form: `s t` on the first line, then `i j v` per nonzero entry (0-based).
    pub fn write_to(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.rows, self.cols())?;
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                writeln!(out, "{i} {j} {v}")?;
            }
        }
        Ok(())
    }

    pub fn read_from(input: impl BufRead) -> Result<Self, SmithError> {
        let mut dims = None;
        let mut columns: Vec<Vec<(u32, i64)>> = Vec::new();
        let mut rows = 0;
        for (n, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |message: &str| SmithError::Parse { line: n + 1, message: message.to_string() };
            match dims {
                None => {
                    let [s, t] = fields[..] else { return Err(err("expected `s t`")) };
                    rows = s.parse().map_err(|_| err("bad row count"))?;
                    let t: usize = t.parse().map_err(|_| err("bad column count"))?;
                    columns = vec![Vec::new(); t];
                    dims = Some(());
                }
                Some(()) => {
                    let [i, j, v] = fields[..] else { return Err(err("expected `i j v`")) };
                    let i: usize = i.parse().map_err(|_| err("bad row index"))?;
                    let j: usize = j.parse().map_err(|_| err("bad column index"))?;
                    let v: i64 = v.parse().map_err(|_| err("bad value"))?;
                    if i >= rows || j >= columns.len() {
                        return Err(SmithError::OutOfRange { row: i, col: j, rows, cols: columns.len() });
                    }
                    columns[j].push((i as u32, v));
                }
            }
        }
        if dims.is_none() {
            return Err(SmithError::Parse { line: 0, message: "empty matrix file".into() });
        }
        SparseMatrix::from_columns(rows, columns)
    }
}

/// One invertible row operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOp<W> {
    Swap(u32, u32),
    /// `row[dst] += coef * row[src]`
    AddMultiple {
        src: u32,
        dst: u32,
        coef: W,
    },
    Negate(u32),
}

/// Ordered record of row operations; `U` is their composite applied to the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RowOpLog<W> {
    ops: Vec<RowOp<W>>,
}

impl<W: Word> RowOpLog<W> {
    pub fn new() -> Self {
        RowOpLog { ops: Vec::new() }
    }

    pub fn push(&mut self, op: RowOp<W>) {
        self.ops.push(op);
    }

    pub fn ops(&self) -> &[RowOp<W>] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Computes `U v` in place.
    pub fn apply(&self, ring: &Mod2k<W>, v: &mut [W]) {
        for op in &self.ops {
            match *op {
                RowOp::Swap(a, b) => v.swap(a as usize, b as usize),
                RowOp::AddMultiple { src, dst, coef } => {
                    v[dst as usize] = ring.add(v[dst as usize], ring.mul(coef, v[src as usize]))
                }
                RowOp::Negate(r) => v[r as usize] = ring.neg(v[r as usize]),
            }
        }
    }

    /// The log of `U^{-1}`.
    pub fn inverse(&self, ring: &Mod2k<W>) -> RowOpLog<W> {
        let ops = self
            .ops
            .iter()
            .rev()
            .map(|op| match *op {
                RowOp::AddMultiple { src, dst, coef } => RowOp::AddMultiple { src, dst, coef: ring.neg(coef) },
                other => other,
            })
            .collect();
        RowOpLog { ops }
    }
}

/// Reconstructs the requested rows of `U` from a log without forming `U`.
///
/// Row `r` of `U` is `e_r^T E_m ... E_1`; the product is taken right to left
/// on all requested rows at once, stored interleaved so each operation
/// touches two contiguous runs.
pub fn u_rows_replay<W: Word>(log: &RowOpLog<W>, rows: &[u32], s: usize, ring: &Mod2k<W>) -> Vec<Vec<W>> {
    let t = rows.len();
    let mut x = vec![W::zero(); s * t];
    for (k, &r) in rows.iter().enumerate() {
        x[r as usize * t + k] = W::one();
    }
    for op in log.ops.iter().rev() {
        match *op {
            RowOp::AddMultiple { src, dst, coef } => {
                let (src, dst) = (src as usize, dst as usize);
                if src == dst {
                    continue;
                }
                let (s_run, d_run) = if src < dst {
                    let (lo, hi) = x.split_at_mut(dst * t);
                    (&mut lo[src * t..src * t + t], &hi[..t])
                } else {
                    let (lo, hi) = x.split_at_mut(src * t);
                    (&mut hi[..t], &lo[dst * t..dst * t + t])
                };
                for (a, &b) in s_run.iter_mut().zip(d_run) {
                    *a = ring.add(*a, ring.mul(coef, b));
                }
            }
            RowOp::Swap(a, b) => {
                for k in 0..t {
                    x.swap(a as usize * t + k, b as usize * t + k);
                }
            }
            RowOp::Negate(r) => {
                for v in &mut x[r as usize * t..(r as usize + 1) * t] {
                    *v = ring.neg(*v);
                }
            }
        }
    }
    (0..t).map(|k| (0..s).map(|i| x[i * t + k]).collect()).collect()
}

/// How the engine keeps track of `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum UStrategy {
    /// Dense up to [`DENSE_U_LIMIT`] rows, replay beyond.
    #[default]
    Auto,
    /// Maintain all of `U`, one word per entry.
    Dense,
    /// Record row operations and replay them for the rows needed at the end.
    Replay,
}

pub const DENSE_U_LIMIT: usize = 10_000;

/// Outcome of a modular SNF run.
#[derive(Clone, Debug)]
pub struct SmithResult<W> {
    /// Modulus exponent `k`.
    pub bits: u32,
    /// Elementary divisors `d_1 | d_2 | ... | d_s`, each a power of two.
    pub divisors: Vec<u128>,
    /// Index of the first divisor greater than one.
    pub nontrivial_start: usize,
    /// Rows of `U` for `divisors[nontrivial_start..]`, reduced mod `2^k`.
    pub u_rows: Vec<Vec<W>>,
    /// Original matrix row that ended up in each diagonal position.
    pub row_order: Vec<u32>,
    pub log: Option<RowOpLog<W>>,
}

impl<W: Word> SmithResult<W> {
    pub fn nontrivial_divisors(&self) -> &[u128] {
        &self.divisors[self.nontrivial_start..]
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.divisors.iter().map(|d| d.trailing_zeros()).collect()
    }

    pub fn structure(&self) -> CyclicDecomposition {
        CyclicDecomposition::from_divisors(&self.divisors)
    }
}

/// A finite abelian 2-group as multiplicities of `Z/2^e`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CyclicDecomposition {
    /// `multiplicity[e - 1]` copies of `Z/2^e`.
    pub multiplicity: Vec<usize>,
}

impl CyclicDecomposition {
    pub fn from_divisors(divisors: &[u128]) -> Self {
        let mut multiplicity = Vec::new();
        for &d in divisors.iter().filter(|&&d| d > 1) {
            let e = d.trailing_zeros() as usize;
            if multiplicity.len() < e {
                multiplicity.resize(e, 0);
            }
            multiplicity[e - 1] += 1;
        }
        CyclicDecomposition { multiplicity }
    }

    pub fn is_trivial(&self) -> bool {
        self.multiplicity.iter().all(|&m| m == 0)
    }
}

impl fmt::Display for CyclicDecomposition {
    /// Renders `G_n = Z (+) H_n`, e.g. `Z + (Z/2)^6 + Z/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Z")?;
        for (i, &m) in self.multiplicity.iter().enumerate() {
            let order = 1u128 << (i + 1);
            match m {
                0 => {}
                1 => write!(f, " + Z/{order}")?,
                m => write!(f, " + (Z/{order})^{m}")?,
            }
        }
        Ok(())
    }
}

struct Engine<W> {
    ring: Mod2k<W>,
    s: usize,
    cols: Vec<Vec<(u32, W)>>,
    rows: Vec<Vec<u32>>,
    row_active: Vec<bool>,
    col_active: Vec<bool>,
    queue: BTreeSet<(u32, u32)>,
    dense_u: Option<Vec<W>>,
    log: Option<RowOpLog<W>>,
    pivots: Vec<(u32, u32)>,
}

const MARKOWITZ_COLUMNS: usize = 4;
const PARALLEL_WORK: usize = 1 << 14;

impl<W: Word> Engine<W> {
    fn new(a: &SparseMatrix, ring: Mod2k<W>, strategy: UStrategy) -> Self {
        let s = a.rows();
        let mut rows = vec![Vec::new(); s];
        let mut cols = Vec::with_capacity(a.cols());
        for (j, col) in a.columns.iter().enumerate() {
            let c: Vec<(u32, W)> = col.iter().map(|&(i, v)| (i, ring.from_i64(v))).filter(|e| !e.1.is_zero()).collect();
            for &(i, _) in &c {
                rows[i as usize].push(j as u32);
            }
            cols.push(c);
        }
        let queue =
            cols.iter().enumerate().filter(|(_, c)| !c.is_empty()).map(|(j, c)| (c.len() as u32, j as u32)).collect();
        let dense = match strategy {
            UStrategy::Dense => true,
            UStrategy::Replay => false,
            UStrategy::Auto => s <= DENSE_U_LIMIT,
        };
        let dense_u = dense.then(|| {
            let mut u = vec![W::zero(); s * s];
            for i in 0..s {
                u[i * s + i] = W::one();
            }
            u
        });
        Engine {
            ring,
            s,
            col_active: cols.iter().map(|c| !c.is_empty()).collect(),
            cols,
            rows,
            row_active: vec![true; s],
            queue,
            dense_u,
            log: (!dense).then(RowOpLog::new),
            pivots: Vec::new(),
        }
    }

    fn row_count(&self, r: u32) -> usize {
        self.rows[r as usize].len()
    }

    /// Best unit pivot in one column: fewest row entries, then lowest row.
    fn best_unit_in(&self, c: u32) -> Option<(usize, u32)> {
        self.cols[c as usize].iter().filter(|e| self.ring.is_unit(e.1)).map(|e| (self.row_count(e.0), e.0)).min()
    }

    fn short_columns_first(&mut self) {
        for c in 0..self.cols.len() as u32 {
            if !self.col_active[c as usize] || self.cols[c as usize].len() > 2 {
                continue;
            }
            if let Some((_, r)) = self.best_unit_in(c) {
                self.eliminate(r, c);
            }
        }
        info!("{} pivots after short relations", self.pivots.len());
    }

    /// Markowitz search over the sparsest columns holding a unit.
    fn markowitz_unit(&self) -> Option<(u32, u32)> {
        let mut best: Option<(usize, u32, u32)> = None;
        let mut seen = 0;
        for &(count, c) in &self.queue {
            if let Some((rc, r)) = self.best_unit_in(c) {
                let cost = (rc - 1) * (count as usize - 1);
                if best.is_none_or(|b| (cost, c, r) < b) {
                    best = Some((cost, c, r));
                }
                seen += 1;
                if cost == 0 || seen >= MARKOWITZ_COLUMNS {
                    break;
                }
            }
        }
        best.map(|(_, c, r)| (r, c))
    }

    /// Entry of least 2-adic valuation; ties by Markowitz cost, column, row.
    fn least_valuation(&self) -> Option<(u32, u32)> {
        let mut best: Option<(u32, usize, u32, u32)> = None;
        for &(count, c) in &self.queue {
            for &(r, v) in &self.cols[c as usize] {
                let key = (self.ring.valuation(v), (self.row_count(r) - 1) * (count as usize - 1), c, r);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, _, c, r)| (r, c))
    }

    fn eliminate(&mut self, r: u32, c: u32) {
        let ring = self.ring;
        let col = std::mem::take(&mut self.cols[c as usize]);
        self.queue.remove(&(col.len() as u32, c));
        self.col_active[c as usize] = false;
        let p = col.iter().find(|e| e.0 == r).expect("pivot entry").1;
        let e = ring.valuation(p);
        let inv = ring.inv_unit(p >> e as usize);
        let targets: Vec<(u32, W)> =
            col.iter().filter(|x| x.0 != r).map(|&(row, a)| (row, ring.mul(a >> e as usize, inv))).collect();

        let pivot_row = std::mem::take(&mut self.rows[r as usize]);
        self.row_active[r as usize] = false;
        let jobs: Vec<(u32, Vec<(u32, W)>)> = pivot_row
            .iter()
            .filter(|&&c2| c2 != c)
            .map(|&c2| (c2, std::mem::take(&mut self.cols[c2 as usize])))
            .collect();
        for (c2, old) in &jobs {
            self.queue.remove(&(old.len() as u32, *c2));
        }
        let update = |(c2, old): (u32, Vec<(u32, W)>)| update_column(&ring, r, &targets, c2, old);
        let results: Vec<ColumnUpdate<W>> = if jobs.len() * targets.len() >= PARALLEL_WORK {
            jobs.into_par_iter().map(update).collect()
        } else {
            jobs.into_iter().map(update).collect()
        };
        for res in results {
            for &row in &res.filled {
                self.rows[row as usize].push(res.col);
            }
            for &row in &res.cancelled {
                remove_value(&mut self.rows[row as usize], res.col);
            }
            if res.entries.is_empty() {
                self.col_active[res.col as usize] = false;
            } else {
                self.queue.insert((res.entries.len() as u32, res.col));
            }
            self.cols[res.col as usize] = res.entries;
        }
        for &(row, _) in &targets {
            remove_value(&mut self.rows[row as usize], c);
        }

        if let Some(u) = self.dense_u.as_mut() {
            let s = self.s;
            let src: Vec<W> = u[r as usize * s..(r as usize + 1) * s].to_vec();
            let mut slices: Vec<(&mut [W], W)> = Vec::with_capacity(targets.len());
            let mut rest: &mut [W] = u;
            let mut offset = 0;
            for &(row, f) in &targets {
                let start = row as usize * s - offset;
                let (_, tail) = rest.split_at_mut(start);
                let (row_slice, tail) = tail.split_at_mut(s);
                slices.push((row_slice, f));
                rest = tail;
                offset = (row as usize + 1) * s;
            }
            let apply = |(dst, f): (&mut [W], W)| {
                for (d, &x) in dst.iter_mut().zip(&src) {
                    *d = ring.sub(*d, ring.mul(f, x));
                }
            };
            if slices.len() * s >= PARALLEL_WORK * 4 {
                slices.into_par_iter().for_each(apply);
            } else {
                slices.into_iter().for_each(apply);
            }
        }
        if let Some(log) = self.log.as_mut() {
            for &(row, f) in &targets {
                log.push(RowOp::AddMultiple { src: r, dst: row, coef: ring.neg(f) });
            }
        }
        self.pivots.push((r, e));
        if self.pivots.len().is_multiple_of(1000) {
            debug!("{} pivots, {} active columns", self.pivots.len(), self.queue.len());
        }
    }

    fn run(mut self) -> SmithResult<W> {
        self.short_columns_first();
        while let Some((r, c)) = self.markowitz_unit() {
            self.eliminate(r, c);
        }
        let units = self.pivots.len();
        info!("{units} unit pivots, {} columns left", self.queue.len());
        while let Some((r, c)) = self.least_valuation() {
            self.eliminate(r, c);
        }
        let k = self.ring.bits();
        let mut row_order: Vec<u32> = self.pivots.iter().map(|p| p.0).collect();
        let mut exps: Vec<u32> = self.pivots.iter().map(|p| p.1).collect();
        for r in 0..self.s as u32 {
            if self.row_active[r as usize] {
                row_order.push(r);
                exps.push(k);
            }
        }
        debug_assert!(exps.windows(2).all(|w| w[0] <= w[1]));
        let divisors: Vec<u128> = exps.iter().map(|&e| 1u128 << e).collect();
        let nontrivial_start = exps.iter().position(|&e| e > 0).unwrap_or(exps.len());
        let wanted = &row_order[nontrivial_start..];
        let u_rows = match (&self.dense_u, &self.log) {
            (Some(u), _) => {
                wanted.iter().map(|&r| u[r as usize * self.s..(r as usize + 1) * self.s].to_vec()).collect()
            }
            (None, Some(log)) => u_rows_replay(log, wanted, self.s, &self.ring),
            (None, None) => unreachable!(),
        };
        SmithResult { bits: k, divisors, nontrivial_start, u_rows, row_order, log: self.log }
    }
}

struct ColumnUpdate<W> {
    col: u32,
    entries: Vec<(u32, W)>,
    filled: Vec<u32>,
    cancelled: Vec<u32>,
}

/// `column -= f_r' * b` for every target row, where `b` is the pivot-row entry; drops the pivot row.
fn update_column<W: Word>(
    ring: &Mod2k<W>,
    pivot_row: u32,
    targets: &[(u32, W)],
    col: u32,
    old: Vec<(u32, W)>,
) -> ColumnUpdate<W> {
    let b = old[old.binary_search_by_key(&pivot_row, |e| e.0).expect("pivot row entry")].1;
    let mut entries = Vec::with_capacity(old.len() + targets.len());
    let (mut filled, mut cancelled) = (Vec::new(), Vec::new());
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < targets.len() {
        let take_old = j == targets.len() || (i < old.len() && old[i].0 < targets[j].0);
        let take_target = i == old.len() || (j < targets.len() && targets[j].0 < old[i].0);
        if take_old {
            if old[i].0 != pivot_row {
                entries.push(old[i]);
            }
            i += 1;
        } else if take_target {
            let (row, f) = targets[j];
            let v = ring.neg(ring.mul(f, b));
            if !v.is_zero() {
                entries.push((row, v));
                filled.push(row);
            }
            j += 1;
        } else {
            let (row, f) = targets[j];
            let v = ring.sub(old[i].1, ring.mul(f, b));
            if v.is_zero() {
                cancelled.push(row);
            } else {
                entries.push((row, v));
            }
            i += 1;
            j += 1;
        }
    }
    ColumnUpdate { col, entries, filled, cancelled }
}

fn remove_value(v: &mut Vec<u32>, x: u32) {
    if let Some(pos) = v.iter().position(|&y| y == x) {
        v.swap_remove(pos);
    }
}

/// SNF of `a` over `Z/2^bits Z`.
///
/// Pivots: first every column with at most two entries (in column order),
/// then Markowitz-style unit pivots, then entries of least 2-adic valuation.
/// Rows that are never pivoted get the divisor `2^bits`.
pub fn snf_sparse_mod2k<W: Word>(
    a: &SparseMatrix,
    bits: u32,
    strategy: UStrategy,
) -> Result<SmithResult<W>, SmithError> {
    let ring = Mod2k::<W>::new(bits)?;
    info!("SNF of {}x{} matrix ({} nonzeros) mod 2^{bits}", a.rows(), a.cols(), a.nnz());
    Ok(Engine::new(a, ring, strategy).run())
}

/// True iff every column of `a` maps to zero in `(+)_j Z/d_j` under the returned rows of `U`.
pub fn verify_cokernel_map<W: Word>(a: &SparseMatrix, result: &SmithResult<W>) -> bool {
    let ring = match Mod2k::<W>::new(result.bits) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let divisors = result.nontrivial_divisors();
    if divisors.len() != result.u_rows.len() {
        return false;
    }
    (0..a.cols()).into_par_iter().all(|j| {
        result.u_rows.iter().zip(divisors).all(|(row, &d)| {
            let mut acc = W::zero();
            for &(i, v) in a.column(j) {
                acc = ring.add(acc, ring.mul(row[i as usize], ring.from_i64(v)));
            }
            acc.to_u128().unwrap() % d == 0
        })
    })
}

/// Textbook SNF over the integers: returns the diagonal (length `min(s, t)`,
/// nonnegative, each dividing the next, zeros last) together with `U` and `V`
/// such that `U A V` is diagonal.
pub fn snf_dense_naive<T>(a: &[Vec<T>], cols: usize) -> (Vec<T>, Vec<Vec<T>>, Vec<Vec<T>>)
where
    T: Integer + Signed + Clone,
{
    let s = a.len();
    let mut m: Vec<Vec<T>> = a.to_vec();
    let mut u = identity::<T>(s);
    let mut v = identity::<T>(cols);
    let n = s.min(cols);
    for t in 0..n {
        let Some((pi, pj)) = min_abs_entry(&m, t, t..s, t..cols) else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut m, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..s {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    row_axpy(&mut m, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    dirty |= !m[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    col_axpy(&mut m, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    dirty |= !m[t][j].is_zero();
                }
            }
            if dirty {
                // move a smaller remainder onto the diagonal and repeat
                let (pi, pj) = min_abs_entry(&m, t, t..s, t..cols).expect("nonzero pivot");
                m.swap(t, pi);
                u.swap(t, pi);
                swap_cols(&mut m, t, pj);
                swap_cols(&mut v, t, pj);
                continue;
            }
            let bad = (t + 1..s).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = T::zero() - T::one();
                    row_axpy(&mut m, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in &mut m[t] {
                *x = T::zero() - x.clone();
            }
            for x in &mut u[t] {
                *x = T::zero() - x.clone();
            }
        }
    }
    let diag: Vec<T> = (0..n).map(|i| m[i][i].clone()).collect();
    debug_assert!(is_diagonal(&mat_mul(&mat_mul(&u, a, cols), &v, cols), &diag));
    (diag, u, v)
}

fn identity<T: Integer + Clone>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

fn min_abs_entry<T: Integer + Signed + Clone>(
    m: &[Vec<T>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(T, usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = m[i][j].abs();
            if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.0) {
                best = Some((x, i, j));
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

/// `row[dst] -= q * row[src]`
fn row_axpy<T: Integer + Clone>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T) {
    let src_row = m[src].clone();
    for (d, x) in m[dst].iter_mut().zip(src_row) {
        *d = d.clone() - q.clone() * x;
    }
}

/// `col[dst] -= q * col[src]`
fn col_axpy<T: Integer + Clone>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T) {
    for row in m.iter_mut() {
        let x = row[src].clone();
        row[dst] = row[dst].clone() - q.clone() * x;
    }
}

fn swap_cols<T>(m: &mut [Vec<T>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Product of an `n x k` and a `k x cols` matrix.
pub fn mat_mul<T: Integer + Clone>(a: &[Vec<T>], b: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(T::zero(), |acc, (x, brow)| acc + x.clone() * brow[j].clone()))
                .collect()
        })
        .collect()
}

fn is_diagonal<T: Integer + Clone>(m: &[Vec<T>], diag: &[T]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| if i == j && i < diag.len() { *x == diag[i] } else { x.is_zero() })
    })
}
