//! The simplified universal invariant: each generator word is sent to its
//! image in `(+)_j Z/d_j`, and a word is evaluated by summing the images of
//! all of its subwords.

use std::fmt;
use std::io::{BufRead, Write};

use log::info;
use rustc_hash::FxHashMap;

use crate::error::TableError;
use crate::gaussword::{delete_letters, for_each_subset, has_adjacent_double, GaussWord};
use crate::presentation::{build_presentation, Presentation};
use crate::ring::Word;
use crate::smith::{snf_sparse_mod2k, verify_cokernel_map, SmithResult, SparseMatrix, UStrategy};

/// An element of `(+)_j Z/d_j`, component `j` in `[0, d_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Value {
    pub components: Vec<u64>,
}

impl Value {
    pub fn zero(len: usize) -> Self {
        Value { components: vec![0; len] }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    /// `self += times * other`, reduced by `moduli`.
    pub fn add_scaled(&mut self, other: &Value, times: i64, moduli: &[u64]) {
        for ((a, &b), &d) in self.components.iter_mut().zip(&other.components).zip(moduli) {
            let t = (times as i128).rem_euclid(d as i128) as u128;
            *a = ((*a as u128 + t * b as u128) % d as u128) as u64;
        }
    }

    pub fn scaled(&self, times: i64, moduli: &[u64]) -> Value {
        let mut out = Value::zero(self.components.len());
        out.add_scaled(self, times, moduli);
        out
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Least power of two annihilating `v`.
pub fn element_order(v: &Value, moduli: &[u64]) -> u64 {
    v.components.iter().zip(moduli).map(|(&c, &d)| if c == 0 { 1 } else { d >> c.trailing_zeros() }).max().unwrap_or(1)
}

/// A formal integer combination of words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearCombination {
    pub terms: Vec<(i64, GaussWord)>,
}

impl LinearCombination {
    pub fn word(w: GaussWord) -> Self {
        LinearCombination { terms: vec![(1, w)] }
    }

    /// Merges equal words, keeping first-appearance order and dropping zero terms.
    pub fn merged(self) -> Self {
        let mut order: Vec<(i64, GaussWord)> = Vec::new();
        let mut at: FxHashMap<GaussWord, usize> = FxHashMap::default();
        for (c, w) in self.terms {
            match at.get(&w) {
                Some(&i) => order[i].0 += c,
                None => {
                    at.insert(w.clone(), order.len());
                    order.push((c, w));
                }
            }
        }
        order.retain(|t| t.0 != 0);
        LinearCombination { terms: order }
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.terms.iter().map(|t| t.0).sum()
    }
}

/// Expands every marked letter as a semi-letter: the sum over subsets `T` of
/// the marked letters of `(-1)^|T|` times `w` with `T` deleted.
pub fn semiletter_resolution(w: &GaussWord, marked: &[u8]) -> LinearCombination {
    let mut terms = Vec::with_capacity(1 << marked.len());
    for size in 0..=marked.len() {
        for_each_subset(marked.len(), size, |mask| {
            let deleted: Vec<u8> = (0..marked.len()).filter(|i| mask >> i & 1 == 1).map(|i| marked[i]).collect();
            let sign = if size % 2 == 0 { 1 } else { -1 };
            terms.push((sign, delete_letters(w, &deleted)));
        });
    }
    LinearCombination { terms }.merged()
}

/// Generator words with nonzero image and their values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    degree: usize,
    moduli: Vec<u64>,
    entries: Vec<(GaussWord, Value)>,
    index: FxHashMap<GaussWord, usize>,
    ranks: Vec<usize>,
}

impl InvariantTable {
    /// Builds a table from raw entries, checking every invariant.
    pub fn new(degree: usize, moduli: Vec<u64>, entries: Vec<(GaussWord, Value)>) -> Result<Self, TableError> {
        let invalid = |w: &GaussWord, message: String| TableError::Invalid { line: 0, word: w.to_string(), message };
        for &d in &moduli {
            if d < 2 || !d.is_power_of_two() {
                return Err(TableError::Parse {
                    line: 0,
                    message: format!("modulus {d} is not a power of two above 1"),
                });
            }
        }
        let mut entries = entries;
        entries.sort_by(|a, b| (a.0.rank(), &a.0).cmp(&(b.0.rank(), &b.0)));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(invalid(&pair[0].0, "duplicate entry".into()));
            }
        }
        for (w, v) in &entries {
            check_entry(degree, &moduli, w, v).map_err(|m| invalid(w, m))?;
        }
        let index = entries.iter().enumerate().map(|(i, (w, _))| (w.clone(), i)).collect();
        let mut ranks: Vec<usize> = entries.iter().map(|e| e.0.rank()).collect();
        ranks.dedup();
        Ok(InvariantTable { degree, moduli, entries, index, ranks })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Entries ordered by rank, then lexicographically.
    pub fn entries(&self) -> &[(GaussWord, Value)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value_of(&self, w: &GaussWord) -> Option<&Value> {
        self.index.get(w).map(|&i| &self.entries[i].1)
    }

    pub fn zero(&self) -> Value {
        Value::zero(self.moduli.len())
    }

    /// Sum over the subwords of `p` of their images.
    pub fn evaluate(&self, p: &GaussWord) -> Value {
        let mut acc = self.zero();
        for &rank in &self.ranks {
            if rank > p.rank() {
                break;
            }
            for_each_subset(p.rank(), rank, |mask| {
                let sub = p.subword(mask);
                if let Some(v) = self.value_of(&sub) {
                    acc.add_scaled(v, 1, &self.moduli);
                }
            });
        }
        acc
    }

    /// Coefficient sum (the free part) and the linear extension of [`Self::evaluate`].
    pub fn evaluate_combination(&self, x: &LinearCombination) -> (i64, Value) {
        let mut acc = self.zero();
        for (c, w) in &x.terms {
            acc.add_scaled(&self.evaluate(w), *c, &self.moduli);
        }
        (x.coefficient_sum(), acc)
    }

    pub fn element_order(&self, v: &Value) -> u64 {
        element_order(v, &self.moduli)
    }

    pub fn save(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "# ftiv-table v1")?;
        writeln!(out, "degree {}", self.degree)?;
        let moduli: Vec<String> = self.moduli.iter().map(u64::to_string).collect();
        writeln!(out, "moduli {}", moduli.join(" ").trim_end())?;
        for (w, v) in &self.entries {
            writeln!(out, "{w} {v}")?;
        }
        Ok(())
    }

    pub fn load(input: impl BufRead) -> Result<Self, TableError> {
        let mut lines = input.lines();
        let mut line_no = 0;
        let mut next = |what: &str| -> Result<(usize, String), TableError> {
            line_no += 1;
            match lines.next() {
                Some(l) => Ok((line_no, l?)),
                None => Err(TableError::Parse { line: line_no, message: format!("missing {what}") }),
            }
        };
        let (n, header) = next("header")?;
        if header.trim() != "# ftiv-table v1" {
            return Err(TableError::Parse { line: n, message: format!("unexpected header {header:?}") });
        }
        let (n, degree) = next("degree line")?;
        let degree: usize = degree
            .strip_prefix("degree ")
            .and_then(|d| d.trim().parse().ok())
            .ok_or(TableError::Parse { line: n, message: "expected `degree <n>`".into() })?;
        let (n, moduli) = next("moduli line")?;
        let moduli: Vec<u64> = moduli
            .strip_prefix("moduli")
            .ok_or(TableError::Parse { line: n, message: "expected `moduli ...`".into() })?
            .split_whitespace()
            .map(|d| d.parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| TableError::Parse { line: n, message: "bad modulus".into() })?;
        for &d in &moduli {
            if d < 2 || !d.is_power_of_two() {
                return Err(TableError::Parse {
                    line: n,
                    message: format!("modulus {d} is not a power of two above 1"),
                });
            }
        }
        let mut entries = Vec::new();
        let mut seen = FxHashMap::default();
        loop {
            let (n, line) = match next("entry") {
                Ok(x) => x,
                Err(TableError::Parse { .. }) => break,
                Err(e) => return Err(e),
            };
            let mut fields = line.split_whitespace();
            let Some(text) = fields.next() else { continue };
            let invalid = |message: String| TableError::Invalid { line: n, word: text.to_string(), message };
            let w: GaussWord = text.parse().map_err(|e| invalid(format!("{e}")))?;
            if w.to_string() != text {
                return Err(invalid("word is not in canonical form".into()));
            }
            let components: Vec<u64> = fields
                .map(|c| c.parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| invalid("bad component".into()))?;
            let v = Value { components };
            check_entry(degree, &moduli, &w, &v).map_err(invalid)?;
            if seen.insert(w.clone(), n).is_some() {
                return Err(invalid("duplicate entry".into()));
            }
            entries.push((w, v));
        }
        InvariantTable::new(degree, moduli, entries)
    }
}

fn check_entry(degree: usize, moduli: &[u64], w: &GaussWord, v: &Value) -> Result<(), String> {
    if w.rank() < 2 || w.rank() > degree {
        return Err(format!("rank {} outside 2..={degree}", w.rank()));
    }
    if has_adjacent_double(w) {
        return Err("word has an adjacent double letter".into());
    }
    if v.components.len() != moduli.len() {
        return Err(format!("expected {} components, found {}", moduli.len(), v.components.len()));
    }
    if let Some((c, d)) = v.components.iter().zip(moduli).find(|(c, d)| c >= d) {
        return Err(format!("component {c} not below modulus {d}"));
    }
    if v.is_zero() {
        return Err("zero value".into());
    }
    let shift = degree - w.rank() + 1;
    let bound = if shift >= 63 { 0 } else { 1i64 << shift };
    if bound != 0 && !v.scaled(bound, moduli).is_zero() {
        return Err(format!("2^{shift} times the value is not zero"));
    }
    Ok(())
}

/// Presentation, relation matrix and modular SNF for one degree.
#[derive(Clone, Debug)]
pub struct Computation<W> {
    pub presentation: Presentation,
    pub matrix: SparseMatrix,
    pub smith: SmithResult<W>,
}

/// Builds the presentation of `H_n` and reduces it modulo `2^(n-1)`.
pub fn compute<W: Word>(n: usize, strategy: UStrategy) -> Result<Computation<W>, TableError> {
    let presentation = build_presentation(n)?;
    let matrix = presentation.matrix();
    let bits = n.saturating_sub(1).max(1) as u32;
    let smith = snf_sparse_mod2k::<W>(&matrix, bits, strategy)?;
    Ok(Computation { presentation, matrix, smith })
}

impl<W: Word> Computation<W> {
    /// `v_i` for every generator `i`, keeping only the nonzero ones.
    pub fn table(&self) -> Result<InvariantTable, TableError> {
        let moduli: Vec<u64> = self.smith.nontrivial_divisors().iter().map(|&d| d as u64).collect();
        let mut entries = Vec::new();
        for (i, w) in self.presentation.generators.words().iter().enumerate() {
            let components: Vec<u64> =
                self.smith.u_rows.iter().zip(&moduli).map(|(row, &d)| row[i].to_u64().unwrap() % d).collect();
            let v = Value { components };
            if !v.is_zero() {
                entries.push((w.clone(), v));
            }
        }
        info!("degree {}: {} generators with nonzero image", self.presentation.degree, entries.len());
        InvariantTable::new(self.presentation.degree, moduli, entries)
    }

    pub fn verify(&self) -> bool {
        verify_cokernel_map(&self.matrix, &self.smith)
    }
}

/// Builds the invariant table of degree `n`.
pub fn build_table(n: usize) -> Result<InvariantTable, TableError> {
    build_table_with(n, UStrategy::Auto)
}

pub fn build_table_with(n: usize, strategy: UStrategy) -> Result<InvariantTable, TableError> {
    if n <= 1 {
        return InvariantTable::new(n, Vec::new(), Vec::new());
    }
    let bits = n - 1;
    if bits <= 8 {
        compute::<u8>(n, strategy)?.table()
    } else if bits <= 16 {
        compute::<u16>(n, strategy)?.table()
    } else {
        compute::<u64>(n, strategy)?.table()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GaussWord {
        s.parse().unwrap()
    }

    #[test]
    fn orders() {
        let moduli = [2, 2, 4];
        assert_eq!(element_order(&Value::zero(3), &moduli), 1);
        assert_eq!(element_order(&Value { components: vec![0, 0, 1] }, &moduli), 4);
        assert_eq!(element_order(&Value { components: vec![1, 0, 2] }, &moduli), 2);
        assert_eq!(element_order(&Value { components: vec![0, 0, 3] }, &moduli), 4);
    }

    #[test]
    fn resolutions() {
        let aa = w("AA");
        assert_eq!(semiletter_resolution(&aa, &[0]).terms, vec![(1, aa.clone()), (-1, GaussWord::empty())]);
        assert_eq!(semiletter_resolution(&w("ABAB"), &[]).terms, vec![(1, w("ABAB"))]);
        assert_eq!(
            semiletter_resolution(&w("ABAB"), &[0, 1]).terms,
            vec![(1, w("ABAB")), (-2, aa), (1, GaussWord::empty())]
        );
    }

    #[test]
    fn small_degrees_are_trivial() {
        for n in 0..=3 {
            let t = build_table(n).unwrap();
            assert!(t.is_empty() && t.moduli().is_empty(), "degree {n}");
            assert_eq!(t.evaluate(&w("ABACDCBD")), Value::default());
        }
    }

    fn sample() -> InvariantTable {
        InvariantTable::new(4, vec![2], vec![(w("ABACDCBD"), Value { components: vec![1] })]).unwrap()
    }

    #[test]
    fn save_load_round_trip() {
        let t = sample();
        let mut buf = Vec::new();
        t.save(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "# ftiv-table v1\ndegree 4\nmoduli 2\nABACDCBD 1\n");
        assert_eq!(InvariantTable::load(&buf[..]).unwrap(), t);
    }

    #[test]
    fn load_rejects_bad_tables() {
        let cases = [
            "# ftiv-table v2\ndegree 4\nmoduli 2\n",
            "# ftiv-table v1\ndegree x\nmoduli 2\n",
            "# ftiv-table v1\ndegree 4\nmoduli 3\n",
            "# ftiv-table v1\ndegree 4\nmoduli 2\nABACDCBD 2\n",
            "# ftiv-table v1\ndegree 4\nmoduli 2\nBABDCDCA 1\n",
            "# ftiv-table v1\ndegree 4\nmoduli 2\nABBA 1\n",
            "# ftiv-table v1\ndegree 4\nmoduli 2\nABACDCBD 0\n",
            "# ftiv-table v1\ndegree 4\nmoduli 2\nABACDCBD 1 1\n",
            "# ftiv-table v1\ndegree 4\nmoduli 2\nABACDCBD 1\nABACDCBD 1\n",
            "# ftiv-table v1\ndegree 4\nmoduli 2\nABACDEBCDE 1\n",
            // 2^(4-2+1) * 1 = 8 is fine mod 8, but a modulus 16 entry of rank 4 breaks the bound
            "# ftiv-table v1\ndegree 4\nmoduli 16\nABACDCBD 1\n",
        ];
        for case in cases {
            assert!(InvariantTable::load(case.as_bytes()).is_err(), "{case}");
        }
    }

    #[test]
    fn evaluation_of_sample() {
        let t = sample();
        assert_eq!(t.evaluate(&w("ABACDCBD")).components, vec![1]);
        assert_eq!(t.evaluate(&GaussWord::empty()).components, vec![0]);
        assert_eq!(t.evaluate(&w("ABCDABCD")).components, vec![0]);
        let x = LinearCombination { terms: vec![(2, w("ABACDCBD")), (-2, w("ABACDCBD"))] };
        assert_eq!(t.evaluate_combination(&x), (0, Value::zero(1)));
    }
}
