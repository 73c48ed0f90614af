//! Left linear codes `C = {xY : x in R^k}` given by a generator matrix `Y`,
//! their classification and the counting identities of two-weight codes.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::is_unimodular_column;
use crate::ring::encoding::{decode, encode};
use crate::ring::ideal::{ideal_sum, left_ideals};
use crate::ring::{build_ring, Elem, FiniteRing, Ideal, Side};
use crate::vector::VectorIndexer;
use crate::weight::WeightFunction;
use crate::Rational;

/// `k x n` matrix over a ring; column `j` is `y_j`.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    ring: Arc<FiniteRing>,
    rows: Vec<Vec<Elem>>,
}

impl GeneratorMatrix {
    pub fn new(ring: Arc<FiniteRing>, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 {
            return Err(Error::BadMatrix("matrix must have at least one row and one column".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadMatrix("rows have different lengths".into()));
        }
        if rows.iter().flatten().any(|&e| e as usize >= ring.order()) {
            return Err(Error::BadMatrix("entry outside the ring".into()));
        }
        Ok(GeneratorMatrix { ring, rows })
    }

    pub fn from_columns(ring: Arc<FiniteRing>, columns: &[Vec<Elem>]) -> Result<Self> {
        let k = columns.first().map_or(0, Vec::len);
        let rows = (0..k).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        Self::new(ring, rows)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.n()).map(|j| self.column(j)).collect()
    }

    /// `xY` written into `out`.
    pub fn encode_into(&self, x: &[Elem], out: &mut [Elem]) {
        let r = &self.ring;
        out.fill(0);
        for (&xi, row) in x.iter().zip(&self.rows) {
            if xi == 0 {
                continue;
            }
            for (o, &y) in out.iter_mut().zip(row) {
                *o = r.add(*o, r.mul(xi, y));
            }
        }
    }

    /// `AY` for a `k' x k` matrix `A`.
    pub fn left_multiply(&self, a: &[Vec<Elem>]) -> Result<Self> {
        if a.iter().any(|row| row.len() != self.k()) {
            return Err(Error::BadMatrix("left factor has wrong width".into()));
        }
        let rows = a
            .iter()
            .map(|x| {
                let mut out = vec![0; self.n()];
                self.encode_into(x, &mut out);
                out
            })
            .collect();
        Self::new(self.ring.clone(), rows)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> =
            self.rows.iter().map(|r| r.iter().map(|&e| encode(&self.ring, e)).collect()).collect();
        json!({ "ring": self.ring.spec().to_string(), "rows": rows })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let spec = value
            .get("ring")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::BadMatrix("missing \"ring\"".into()))?;
        let ring = Arc::new(build_ring(&spec.parse()?)?);
        let rows = value
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadMatrix("missing \"rows\"".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::BadMatrix("row is not an array".into()))?
                    .iter()
                    .map(|e| decode(&ring, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, rows)
    }
}

/// The codeword set of a generator matrix. Codewords are numbered by their
/// smallest message; word `0` is the zero word.
#[derive(Debug, Clone)]
pub struct LinearCode {
    matrix: GeneratorMatrix,
    messages: VectorIndexer,
    words: Vec<Elem>,
    word_message: Vec<u32>,
    message_word: Vec<u32>,
}

/// Enumerates `{xY}` over all messages `x`, within `budget` messages.
pub fn span(matrix: &GeneratorMatrix, budget: u128) -> Result<LinearCode> {
    let ring = matrix.ring().clone();
    let (k, n) = (matrix.k(), matrix.n());
    let messages = VectorIndexer::new(&ring, k, budget)?;
    let kernel: Vec<usize> = (0..messages.count())
        .into_par_iter()
        .filter(|&m| {
            let x = messages.decode(m);
            (0..n).all(|j| ring.dot(&x, &matrix.column(j)) == 0)
        })
        .collect();
    let mut message_word = vec![u32::MAX; messages.count()];
    let mut word_message = Vec::with_capacity(messages.count() / kernel.len());
    for m in 0..messages.count() {
        if message_word[m] != u32::MAX {
            continue;
        }
        let id = word_message.len() as u32;
        word_message.push(m as u32);
        for &z in &kernel {
            message_word[messages.add(&ring, m, z)] = id;
        }
    }
    let mut words = vec![0 as Elem; word_message.len() * n];
    words.par_chunks_mut(n).zip(&word_message).for_each_init(
        || vec![0 as Elem; k],
        |x, (out, &m)| {
            messages.decode_into(m as usize, x);
            matrix.encode_into(x, out);
        },
    );
    let size = word_message.len() as u128;
    let residue = (0..n).fold(1u128, |acc, _| acc * ring.order() as u128 % size);
    assert_eq!(residue % size, 0, "code size must divide |R|^n");
    Ok(LinearCode { matrix: matrix.clone(), messages, words, word_message, message_word })
}

impl LinearCode {
    pub fn matrix(&self) -> &GeneratorMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.matrix.ring()
    }

    pub fn len(&self) -> usize {
        self.word_message.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Code length `n`.
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn word(&self, id: usize) -> &[Elem] {
        let n = self.n();
        &self.words[id * n..(id + 1) * n]
    }

    pub fn words(&self) -> impl Iterator<Item = &[Elem]> {
        self.words.chunks(self.n())
    }

    pub fn message(&self, id: usize) -> Vec<Elem> {
        self.messages.decode(self.word_message[id] as usize)
    }

    /// Word id of `xY`.
    pub fn word_of_message(&self, x: &[Elem]) -> usize {
        self.message_word[self.messages.encode(x)] as usize
    }

    /// Word id of `a + b`.
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let m = self.messages.add(self.ring(), self.word_message[a] as usize, self.word_message[b] as usize);
        self.message_word[m] as usize
    }

    /// Word id of `a - b`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        let m = self.messages.sub(self.ring(), self.word_message[a] as usize, self.word_message[b] as usize);
        self.message_word[m] as usize
    }

    /// Word id of an explicit word, if it belongs to the code.
    pub fn find(&self, word: &[Elem]) -> Option<usize> {
        (0..self.len()).find(|&id| self.word(id) == word)
    }

    /// Scaled weight (see [`WeightFunction::scaled`]) of every codeword.
    pub fn scaled_weights(&self, w: &WeightFunction) -> Vec<i64> {
        self.words.par_chunks(self.n()).map(|c| w.word_scaled(c)).collect()
    }

    /// Coordinates `i` with `pi_i(C) != 0`.
    pub fn support_size(&self) -> usize {
        (0..self.n()).filter(|&i| self.words().any(|c| c[i] != 0)).count()
    }

    /// `pi_i(C)` as a sorted element list.
    pub fn projection(&self, i: usize) -> Vec<Elem> {
        let mut seen = vec![false; self.ring().order()];
        for c in self.words() {
            seen[c[i] as usize] = true;
        }
        (0..seen.len()).filter(|&x| seen[x]).map(|x| x as Elem).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub regular: bool,
    pub projective: bool,
    pub proper: bool,
}

/// Regular: every column generates a point. Projective: the columns
/// generate pairwise distinct cyclic right submodules. Proper: every nonzero
/// codeword has positive weight.
pub fn classify(code: &LinearCode, w: &WeightFunction) -> Classification {
    let ring = code.ring();
    let columns = code.matrix().columns();
    let regular = columns.iter().all(|y| is_unimodular_column(ring, y));
    let idx = code.messages;
    let mut submodules: Vec<Vec<usize>> = columns
        .iter()
        .map(|y| {
            let mut s: Vec<usize> = ring
                .elements()
                .map(|r| idx.encode(&y.iter().map(|&c| ring.mul(c, r)).collect::<Vec<_>>()))
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    submodules.sort();
    let projective = submodules.windows(2).all(|p| p[0] != p[1]);
    let proper = first_improper(code, w).is_none();
    Classification { regular, projective, proper }
}

fn first_improper(code: &LinearCode, w: &WeightFunction) -> Option<usize> {
    (1..code.len()).into_par_iter().find_first(|&id| w.word_scaled(code.word(id)) <= 0)
}

/// `(weight, count)` pairs in increasing weight order, summing to `|C|`.
pub fn weight_distribution(code: &LinearCode, w: &WeightFunction) -> Vec<(Rational, usize)> {
    let mut counts = BTreeMap::new();
    for s in code.scaled_weights(w) {
        *counts.entry(s).or_insert(0usize) += 1;
    }
    counts.into_iter().map(|(s, c)| (w.from_scaled(s), c)).collect()
}

/// Two nonzero weights with their frequencies. `w1` is the adjacency
/// weight of the associated graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoWeightProfile {
    pub w1: Rational,
    pub w2: Rational,
    pub b1: usize,
    pub b2: usize,
}

impl TwoWeightProfile {
    /// Swaps the pair so that `adjacency` becomes `w1`.
    pub fn oriented(self, adjacency: Rational) -> Result<Self> {
        if adjacency == self.w1 {
            Ok(self)
        } else if adjacency == self.w2 {
            Ok(TwoWeightProfile { w1: self.w2, w2: self.w1, b1: self.b2, b2: self.b1 })
        } else {
            Err(Error::WeightNotPresent(adjacency))
        }
    }

    /// `b1 + b2 = |C| - 1` and `b1 w1 + b2 w2 = gamma * s * |C|`, where `s`
    /// counts the coordinates on which `C` is not identically zero.
    pub fn satisfies_linear_system(&self, gamma: Rational, support: usize, size: usize) -> bool {
        self.b1 + self.b2 + 1 == size
            && self.w1 * Rational::from(self.b1 as i64) + self.w2 * Rational::from(self.b2 as i64)
                == gamma * Rational::from((support * size) as i64)
    }
}

/// The two-weight profile, ascending, or `None` when the number of distinct
/// nonzero-word weights is not two. Improper codes are refused unless
/// `force_improper`, in which case weight `0` counts as a weight value.
pub fn two_weight_profile(
    code: &LinearCode,
    w: &WeightFunction,
    force_improper: bool,
) -> Result<Option<TwoWeightProfile>> {
    if !force_improper {
        if let Some(word) = first_improper(code, w) {
            return Err(Error::NotProper { word });
        }
    }
    let mut counts = BTreeMap::new();
    for s in code.scaled_weights(w).into_iter().skip(1) {
        *counts.entry(s).or_insert(0usize) += 1;
    }
    if counts.len() != 2 {
        return Ok(None);
    }
    let mut it = counts.into_iter();
    let (s1, b1) = it.next().unwrap();
    let (s2, b2) = it.next().unwrap();
    let profile = TwoWeightProfile { w1: w.from_scaled(s1), w2: w.from_scaled(s2), b1, b2 };
    if !profile.satisfies_linear_system(w.gamma(), code.support_size(), code.len()) {
        return Err(Error::NotTwoWeight("weight frequencies violate the linear system".into()));
    }
    Ok(Some(profile))
}

/// Ids of the codewords of a given weight.
pub fn words_of_weight(code: &LinearCode, w: &WeightFunction, weight: Rational) -> Vec<usize> {
    let scaled = code.scaled_weights(w);
    (0..code.len()).filter(|&id| w.from_scaled(scaled[id]) == weight).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SubcodeCounts {
    pub size: usize,
    pub b1: usize,
    pub b2: usize,
}

/// `|C(i,I)|` with `C(i,I) = {c : c_i in I}`, and how many of those words
/// have weight `w1` and `w2`.
pub fn subcode_counts(
    code: &LinearCode,
    w: &WeightFunction,
    profile: &TwoWeightProfile,
    i: usize,
    ideal: &Ideal,
) -> SubcodeCounts {
    let mut out = SubcodeCounts { size: 0, b1: 0, b2: 0 };
    for c in code.words() {
        if ideal.contains(c[i]) {
            out.size += 1;
            let wt = w.word_weight(c);
            if wt == profile.w1 {
                out.b1 += 1;
            } else if wt == profile.w2 {
                out.b2 += 1;
            }
        }
    }
    out
}

/// `sum_{c in words} w(c_i)`.
pub fn column_weight_sum(code: &LinearCode, w: &WeightFunction, i: usize, words: &[usize]) -> Rational {
    let scaled: i64 = words.iter().map(|&id| w.scaled(code.word(id)[i])).sum();
    w.from_scaled(scaled)
}

/// Every coordinate sums to `gamma |C|`, or to `0` where `C` vanishes.
pub fn check_column_weights(code: &LinearCode, w: &WeightFunction) -> bool {
    let all: Vec<usize> = (0..code.len()).collect();
    let full = w.gamma() * Rational::from(code.len() as i64);
    (0..code.n()).all(|i| {
        let sum = column_weight_sum(code, w, i, &all);
        if code.projection(i) == [0] {
            sum == Rational::from(0)
        } else {
            sum == full
        }
    })
}

/// `|C(i,I)| = |I| |C| / |I + pi_i(C)|` for every coordinate and left ideal.
pub fn check_subcode_sizes(code: &LinearCode) -> bool {
    let ring = code.ring();
    let ideals = left_ideals(ring);
    (0..code.n()).all(|i| {
        let projection = ideal_from(code.projection(i));
        ideals.iter().all(|ideal| {
            let size = code.words().filter(|c| ideal.contains(c[i])).count();
            let sum = ideal_sum(ring, ideal, &projection);
            size * sum.len() == ideal.len() * code.len()
        })
    })
}

fn ideal_from(elements: Vec<Elem>) -> Ideal {
    Ideal::from_elements(Side::Left, elements)
}

/// For all `i != j` some codeword has `c_i = 0` and `c_j != 0`.
pub fn check_separating_words(code: &LinearCode) -> bool {
    let n = code.n();
    let mut found = vec![false; n * n];
    for c in code.words() {
        for i in (0..n).filter(|&i| c[i] == 0) {
            for j in (0..n).filter(|&j| c[j] != 0) {
                found[i * n + j] = true;
            }
        }
    }
    (0..n).all(|i| (0..n).all(|j| i == j || found[i * n + j]))
}

/// `b1(i,I)`, `b2(i,I)` solve
/// `[w1 w2; 1 1] b = [gamma n |I|/|R| |C|; |I|/|R| |C| - 1]` for nonzero `I`
/// and `[gamma (n-1) |C|/|R|; |C|/|R| - 1]` for `I = 0`, for every `i`.
pub fn check_subcode_systems(code: &LinearCode, w: &WeightFunction, profile: &TwoWeightProfile) -> bool {
    let ring = code.ring();
    let n = code.n() as i64;
    let big_r = ring.order() as i64;
    let size = code.len() as i64;
    left_ideals(ring).iter().all(|ideal| {
        let counts: Vec<SubcodeCounts> =
            (0..code.n()).map(|i| subcode_counts(code, w, profile, i, ideal)).collect();
        let (total, words) = if ideal.is_zero() {
            (w.gamma() * Rational::new((n - 1) * size, big_r), size / big_r)
        } else {
            (w.gamma() * Rational::new(n * ideal.len() as i64 * size, big_r), ideal.len() as i64 * size / big_r)
        };
        counts.iter().all(|c| {
            profile.w1 * Rational::from(c.b1 as i64) + profile.w2 * Rational::from(c.b2 as i64) == total
                && (c.b1 + c.b2) as i64 == words - 1
        })
    })
}

/// `b1(i,I)` and `b2(i,I)` do not depend on `i` for any nonzero left ideal.
pub fn subcode_counts_independent(code: &LinearCode, w: &WeightFunction, profile: &TwoWeightProfile) -> bool {
    left_ideals(code.ring()).iter().filter(|i| !i.is_zero()).all(|ideal| {
        let first = subcode_counts(code, w, profile, 0, ideal);
        (1..code.n()).all(|i| subcode_counts(code, w, profile, i, ideal) == first)
    })
}

/// `sum_{x in C1} w(x_i) = b1 w1 / n` and `sum_{x in C2} w(x_i) = b2 w2 / n`.
pub fn check_constant_weight_columns(code: &LinearCode, w: &WeightFunction, profile: &TwoWeightProfile) -> bool {
    let n = Rational::from(code.n() as i64);
    let c1 = words_of_weight(code, w, profile.w1);
    let c2 = words_of_weight(code, w, profile.w2);
    let e1 = profile.w1 * Rational::from(profile.b1 as i64) / n;
    let e2 = profile.w2 * Rational::from(profile.b2 as i64) / n;
    (0..code.n()).all(|i| column_weight_sum(code, w, i, &c1) == e1 && column_weight_sum(code, w, i, &c2) == e2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::DEFAULT_BUDGET;
    use crate::weight::{homogeneous_weight, normalized_weight};

    fn ring(spec: &str) -> Arc<FiniteRing> {
        Arc::new(build_ring(&spec.parse().unwrap()).unwrap())
    }

    fn parity(spec: &str) -> LinearCode {
        let r = ring(spec);
        let minus_one = r.neg(r.one());
        let rows = vec![vec![r.one(), 0, minus_one], vec![0, r.one(), minus_one]];
        span(&GeneratorMatrix::new(r, rows).unwrap(), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn parity_check_code() {
        let code = parity("Z/4");
        assert_eq!(code.len(), 16);
        let w = normalized_weight(code.ring()).unwrap();
        let dist = weight_distribution(&code, &w);
        let expected: Vec<(Rational, usize)> =
            vec![(0.into(), 1), (2.into(), 6), (4.into(), 9)];
        assert_eq!(dist, expected);
        assert_eq!(classify(&code, &w), Classification { regular: true, projective: true, proper: true });
        let p = two_weight_profile(&code, &w, false).unwrap().unwrap();
        assert_eq!((p.w1, p.w2, p.b1, p.b2), (2.into(), 4.into(), 6, 9));
        assert!(check_column_weights(&code, &w));
        assert!(check_subcode_sizes(&code));
        assert!(check_separating_words(&code));
        assert!(check_subcode_systems(&code, &w, &p));
        assert!(subcode_counts_independent(&code, &w, &p));
        assert!(check_constant_weight_columns(&code, &w, &p));
    }

    #[test]
    fn parity_subcodes() {
        let code = parity("Z/4");
        let w = normalized_weight(code.ring()).unwrap();
        let p = two_weight_profile(&code, &w, false).unwrap().unwrap();
        let r = code.ring();
        let zero = crate::ring::principal_ideal(r, 0, Side::Left);
        let two = crate::ring::principal_ideal(r, 2, Side::Left);
        let all = crate::ring::principal_ideal(r, 1, Side::Left);
        for i in 0..3 {
            assert_eq!(subcode_counts(&code, &w, &p, i, &zero).size, 4);
            assert_eq!(subcode_counts(&code, &w, &p, i, &two).size, 8);
            assert_eq!(subcode_counts(&code, &w, &p, i, &all).size, 16);
            let all_words: Vec<usize> = (0..16).collect();
            assert_eq!(column_weight_sum(&code, &w, i, &all_words), 16.into());
            let c1 = words_of_weight(&code, &w, 2.into());
            assert_eq!(column_weight_sum(&code, &w, i, &c1), 4.into());
        }
    }

    #[test]
    fn improper_parity_code() {
        let code = parity("F/2xF/2");
        let w = normalized_weight(code.ring()).unwrap();
        assert!(!classify(&code, &w).proper);
        assert!(matches!(two_weight_profile(&code, &w, false), Err(Error::NotProper { .. })));
        let p = two_weight_profile(&code, &w, true).unwrap().unwrap();
        assert_eq!((p.w1, p.w2, p.b1, p.b2), (0.into(), 4.into(), 3, 12));
    }

    #[test]
    fn zero_code() {
        let r = ring("Z/4");
        let code = span(&GeneratorMatrix::new(r, vec![vec![0, 0]]).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(code.len(), 1);
        let w = normalized_weight(code.ring()).unwrap();
        assert_eq!(weight_distribution(&code, &w), vec![(0.into(), 1)]);
        assert!(check_column_weights(&code, &w));
    }

    #[test]
    fn duplicated_column_is_not_projective() {
        let r = ring("Z/4");
        let rows = vec![vec![1, 0, 3, 3], vec![0, 1, 3, 3]];
        let code = span(&GeneratorMatrix::new(r, rows).unwrap(), DEFAULT_BUDGET).unwrap();
        let w = normalized_weight(code.ring()).unwrap();
        assert!(!classify(&code, &w).projective);
        assert!(!check_separating_words(&code));
    }

    #[test]
    fn kernel_collapses_messages() {
        let r = ring("Z/4");
        let rows = vec![vec![2, 2], vec![0, 2]];
        let code = span(&GeneratorMatrix::new(r, rows).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(code.len(), 4);
        for a in 0..code.len() {
            for b in 0..code.len() {
                let s = code.add(a, b);
                let expected: Vec<Elem> =
                    code.word(a).iter().zip(code.word(b)).map(|(&x, &y)| code.ring().add(x, y)).collect();
                assert_eq!(code.word(s), expected.as_slice());
                assert_eq!(code.add(code.sub(a, b), b), a);
            }
        }
    }

    #[test]
    fn three_weight_code_has_no_profile() {
        let r = ring("Z/4");
        let code = span(&GeneratorMatrix::new(r, vec![vec![1, 0], vec![0, 2]]).unwrap(), DEFAULT_BUDGET).unwrap();
        let w = homogeneous_weight(code.ring(), 1.into()).unwrap();
        assert_eq!(weight_distribution(&code, &w).len(), 5);
        assert_eq!(two_weight_profile(&code, &w, false).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let code = parity("F/4");
        let m = code.matrix();
        let back = GeneratorMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(back.rows(), m.rows());
        assert!(matches!(
            GeneratorMatrix::from_json(&json!({"ring": "Z/4", "rows": [[1, 2], [3]]})),
            Err(Error::BadMatrix(_))
        ));
    }
}
