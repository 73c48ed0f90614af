//! Cayley graphs of two-weight codes and strongly regular graph checks.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::code::{words_of_weight, LinearCode, TwoWeightProfile};
use crate::error::{Error, Result};
use crate::weight::WeightFunction;
use crate::Rational;

/// Largest vertex count for which a dense adjacency matrix is built.
pub const FULL_CHECK_LIMIT: usize = 4096;

/// Parameters `(N, K, lambda, mu)`, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SrgParams {
    pub n: Rational,
    pub k: Rational,
    pub lambda: Rational,
    pub mu: Rational,
}

impl SrgParams {
    pub fn from_integers(n: i64, k: i64, lambda: i64, mu: i64) -> Self {
        SrgParams { n: n.into(), k: k.into(), lambda: lambda.into(), mu: mu.into() }
    }

    pub fn is_integral(&self) -> bool {
        [self.n, self.k, self.lambda, self.mu].iter().all(|x| x.is_integer())
    }

    pub fn as_integers(&self) -> Option<[i64; 4]> {
        self.is_integral().then(|| [self.n, self.k, self.lambda, self.mu].map(|x| x.to_integer()))
    }

    /// `K (K - lambda - 1) = mu (N - K - 1)`.
    pub fn feasible(&self) -> bool {
        let one = Rational::from(1);
        self.k * (self.k - self.lambda - one) == self.mu * (self.n - self.k - one)
    }

    /// `0 < mu < K`.
    pub fn nontrivial(&self) -> bool {
        Rational::from(0) < self.mu && self.mu < self.k
    }

    /// `(N, N - K - 1, N - 2K + mu - 2, N - 2K + lambda)`.
    pub fn complement(&self) -> Self {
        let two = Rational::from(2);
        SrgParams {
            n: self.n,
            k: self.n - self.k - Rational::from(1),
            lambda: self.n - two * self.k + self.mu - two,
            mu: self.n - two * self.k + self.lambda,
        }
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

pub fn complement_params(p: &SrgParams) -> SrgParams {
    p.complement()
}

pub fn feasible(p: &SrgParams) -> bool {
    p.feasible()
}

pub fn nontrivial(p: &SrgParams) -> bool {
    p.nontrivial()
}

/// Graph parameters predicted from a normalized two-weight code of length
/// `n`, size `size`, adjacency weight `w1` and other weight `w2`.
pub fn theorem_params(n: usize, size: usize, w1: Rational, w2: Rational) -> Result<SrgParams> {
    if w1 == w2 {
        return Err(Error::EqualWeights);
    }
    let one = Rational::from(1);
    let nn = Rational::from(n as i64);
    let c = Rational::from(size as i64);
    let d = w1 - w2;
    let k = ((nn - w2) * c + w2) / d;
    let a = one - w1 / nn;
    let b = one - w2 / nn;
    let lambda = (nn * k * (one - a * a) + w2 * (one - k)) / d;
    let mu = (nn * k * (one - a * b) - w2 * k) / d;
    Ok(SrgParams { n: c, k, lambda, mu })
}

/// Dense undirected graph with one bit row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let stride = n.div_ceil(64);
        Graph { n, stride, bits: vec![0; n * stride] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "loops are not allowed");
        self.bits[a * self.stride + b / 64] |= 1 << (b % 64);
        self.bits[b * self.stride + a / 64] |= 1 << (a % 64);
    }

    pub fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.stride..(a + 1) * self.stride]
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (a + 1..self.n).filter(move |&b| self.adjacent(a, b)).map(move |b| (a, b)))
    }

    pub fn neighbours(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&b| self.adjacent(a, b)).collect()
    }

    /// Induced subgraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// A single cycle through all vertices.
    pub fn is_cycle(&self) -> bool {
        if self.n < 3 || (0..self.n).any(|v| self.degree(v) != 2) {
            return false;
        }
        let (mut prev, mut cur, mut steps) = (0, self.neighbours(0)[0], 1);
        while cur != 0 {
            let next = self.neighbours(cur).into_iter().find(|&x| x != prev).unwrap();
            prev = cur;
            cur = next;
            steps += 1;
        }
        steps == self.n
    }
}

/// The operations a strong-regularity check needs.
pub trait SrgView: Sync {
    fn vertex_count(&self) -> usize;
    fn degree(&self, v: usize) -> usize;
    fn adjacent(&self, a: usize, b: usize) -> bool;
    fn common_neighbours(&self, a: usize, b: usize) -> usize;
    /// Some neighbour of `v`, indexed by `i < degree(v)`.
    fn neighbour(&self, v: usize, i: usize) -> usize;
}

impl SrgView for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.stride + b / 64] >> (b % 64) & 1 == 1
    }

    fn common_neighbours(&self, a: usize, b: usize) -> usize {
        self.row(a).iter().zip(self.row(b)).map(|(x, y)| (x & y).count_ones() as usize).sum()
    }

    fn neighbour(&self, v: usize, i: usize) -> usize {
        self.neighbours(v)[i]
    }
}

/// The Cayley graph of a code on the connection set of words of one weight,
/// without materialized adjacency.
#[derive(Debug, Clone)]
pub struct CayleyGraph<'a> {
    code: &'a LinearCode,
    connection: Vec<usize>,
    in_connection: Vec<bool>,
}

impl<'a> CayleyGraph<'a> {
    /// Vertices are codewords; `x ~ y` iff `w(x - y) = weight`. Weight `0`
    /// is allowed for improper codes and excludes the zero word itself.
    pub fn new(code: &'a LinearCode, w: &WeightFunction, weight: Rational) -> Result<Self> {
        let connection: Vec<usize> = words_of_weight(code, w, weight).into_iter().filter(|&id| id != 0).collect();
        if connection.is_empty() {
            return Err(Error::WeightNotPresent(weight));
        }
        let mut in_connection = vec![false; code.len()];
        for &d in &connection {
            in_connection[d] = true;
        }
        Ok(CayleyGraph { code, connection, in_connection })
    }

    pub fn connection_set(&self) -> &[usize] {
        &self.connection
    }

    /// Dense copy, for at most [`FULL_CHECK_LIMIT`] vertices.
    pub fn to_graph(&self) -> Result<Graph> {
        let n = self.code.len();
        if n > FULL_CHECK_LIMIT {
            return Err(Error::BudgetExceeded { requested: n as u128, budget: FULL_CHECK_LIMIT as u128 });
        }
        let stride = n.div_ceil(64);
        let mut bits = vec![0u64; n * stride];
        bits.par_chunks_mut(stride).enumerate().for_each(|(a, row)| {
            for &d in &self.connection {
                let b = self.code.add(a, d);
                row[b / 64] |= 1 << (b % 64);
            }
        });
        Ok(Graph { n, stride, bits })
    }
}

impl SrgView for CayleyGraph<'_> {
    fn vertex_count(&self) -> usize {
        self.code.len()
    }

    fn degree(&self, _v: usize) -> usize {
        self.connection.len()
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.in_connection[self.code.sub(a, b)]
    }

    fn common_neighbours(&self, a: usize, b: usize) -> usize {
        let z = self.code.sub(a, b);
        self.connection.iter().filter(|&&d| self.in_connection[self.code.add(z, d)]).count()
    }

    fn neighbour(&self, v: usize, i: usize) -> usize {
        self.code.add(v, self.connection[i])
    }
}

/// `x ~ y` iff `w(x - y) = weight`, as a dense graph.
pub fn cayley_graph(code: &LinearCode, w: &WeightFunction, weight: Rational) -> Result<Graph> {
    CayleyGraph::new(code, w, weight)?.to_graph()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Full,
    Sampled { seed: u64, trials: usize },
    None,
}

/// Why a graph is not strongly regular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Degree { vertex: usize, degree: usize, expected: usize },
    Lambda { a: usize, b: usize, common: usize, expected: usize },
    Mu { a: usize, b: usize, common: usize, expected: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Degree { vertex, degree, expected } => {
                write!(f, "vertex {vertex} has degree {degree}, expected {expected}")
            }
            Witness::Lambda { a, b, common, expected } => {
                write!(f, "adjacent pair ({a},{b}) has {common} common neighbours, expected {expected}")
            }
            Witness::Mu { a, b, common, expected } => {
                write!(f, "non-adjacent pair ({a},{b}) has {common} common neighbours, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrgVerdict {
    Verified { params: SrgParams, pairs: usize },
    NotSrg(Witness),
    Unchecked,
}

fn integral(n: usize, k: usize, lambda: usize, mu: usize) -> SrgParams {
    SrgParams::from_integers(n as i64, k as i64, lambda as i64, mu as i64)
}

/// Checks constant degree, `lambda` over adjacent pairs and `mu` over
/// non-adjacent pairs: every pair in full mode, seeded random pairs in
/// sampled mode.
pub fn srg_check(graph: &impl SrgView, mode: CheckMode) -> Result<SrgVerdict> {
    let n = graph.vertex_count();
    let k = graph.degree(0);
    if n < 2 || k == 0 || k == n - 1 {
        return Err(Error::EmptyOrComplete);
    }
    match mode {
        CheckMode::None => Ok(SrgVerdict::Unchecked),
        CheckMode::Full => full_check(graph, k),
        CheckMode::Sampled { seed, trials } => sampled_check(graph, k, seed, trials),
    }
}

fn reference_pairs(graph: &impl SrgView) -> (usize, usize) {
    let n = graph.vertex_count();
    let a = graph.neighbour(0, 0);
    let b = (1..n).find(|&b| !graph.adjacent(0, b)).unwrap();
    (graph.common_neighbours(0, a), graph.common_neighbours(0, b))
}

fn classify_pair(graph: &impl SrgView, a: usize, b: usize, lambda: usize, mu: usize) -> Option<Witness> {
    let common = graph.common_neighbours(a, b);
    if graph.adjacent(a, b) {
        (common != lambda).then_some(Witness::Lambda { a, b, common, expected: lambda })
    } else {
        (common != mu).then_some(Witness::Mu { a, b, common, expected: mu })
    }
}

fn full_check(graph: &impl SrgView, k: usize) -> Result<SrgVerdict> {
    let n = graph.vertex_count();
    if let Some(vertex) = (0..n).find(|&v| graph.degree(v) != k) {
        return Ok(SrgVerdict::NotSrg(Witness::Degree { vertex, degree: graph.degree(vertex), expected: k }));
    }
    let (lambda, mu) = reference_pairs(graph);
    let witness = (0..n)
        .into_par_iter()
        .filter_map(|a| (a + 1..n).find_map(|b| classify_pair(graph, a, b, lambda, mu)))
        .min_by_key(|w| match *w {
            Witness::Lambda { a, b, .. } | Witness::Mu { a, b, .. } => (a, b),
            Witness::Degree { vertex, .. } => (vertex, 0),
        });
    Ok(match witness {
        Some(w) => SrgVerdict::NotSrg(w),
        None => SrgVerdict::Verified { params: integral(n, k, lambda, mu), pairs: n * (n - 1) / 2 },
    })
}

fn sampled_check(graph: &impl SrgView, k: usize, seed: u64, trials: usize) -> Result<SrgVerdict> {
    let n = graph.vertex_count();
    let (lambda, mu) = reference_pairs(graph);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Half the trials are forced to be adjacent pairs.
    let pairs: Vec<(usize, usize)> = (0..trials)
        .map(|t| {
            let a = rng.gen_range(0..n);
            let b = if t % 2 == 0 {
                graph.neighbour(a, rng.gen_range(0..graph.degree(a)))
            } else {
                loop {
                    let b = rng.gen_range(0..n);
                    if b != a {
                        break b;
                    }
                }
            };
            (a, b)
        })
        .collect();
    let degree_witness = pairs.iter().map(|&(a, _)| a).find(|&v| graph.degree(v) != k);
    if let Some(vertex) = degree_witness {
        return Ok(SrgVerdict::NotSrg(Witness::Degree { vertex, degree: graph.degree(vertex), expected: k }));
    }
    let witness = pairs.par_iter().find_first(|&&(a, b)| classify_pair(graph, a, b, lambda, mu).is_some());
    Ok(match witness {
        Some(&(a, b)) => SrgVerdict::NotSrg(classify_pair(graph, a, b, lambda, mu).unwrap()),
        None => SrgVerdict::Verified { params: integral(n, k, lambda, mu), pairs: trials },
    })
}

/// `(d1, d2, e1, e2)` of a two-weight code, both from the closed-form linear
/// systems and from enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CordeConstants {
    pub d1: Rational,
    pub d2: Rational,
    pub e1: Rational,
    pub e2: Rational,
}

fn solve(w1: Rational, w2: Rational, total: Rational, count: Rational) -> (Rational, Rational) {
    // w1 x + w2 y = total, x + y = count
    let x = (total - w2 * count) / (w1 - w2);
    (x, count - x)
}

/// Solves the two systems and checks them against direct counts over every
/// `c1 in C1` and `c2 in C2`. Fails when some count is not constant or
/// disagrees with the solution.
pub fn corde_constants(code: &LinearCode, w: &WeightFunction, profile: &TwoWeightProfile) -> Result<CordeConstants> {
    if profile.w1 == profile.w2 {
        return Err(Error::EqualWeights);
    }
    let one = Rational::from(1);
    let gn = w.gamma() * Rational::from(code.n() as i64);
    let b1 = Rational::from(profile.b1 as i64);
    let big_d = gn * b1 * (one - (one - profile.w1 / gn) * (one - profile.w1 / gn));
    let big_e = gn * b1 * (one - (one - profile.w1 / gn) * (one - profile.w2 / gn));
    let (d1, d2) = solve(profile.w1, profile.w2, big_d, b1 - one);
    let (e1, e2) = solve(profile.w1, profile.w2, big_e, b1);
    let solved = CordeConstants { d1, d2, e1, e2 };

    let scaled = code.scaled_weights(w);
    let s1 = scaled.iter().position(|&s| w.from_scaled(s) == profile.w1).unwrap();
    let (t1, t2) = (scaled[s1], scaled[(1..code.len()).find(|&i| w.from_scaled(scaled[i]) == profile.w2).unwrap()]);
    let c1: Vec<usize> = (1..code.len()).filter(|&i| scaled[i] == t1).collect();
    let count = |c: usize| -> (Rational, Rational) {
        let mut out = (0i64, 0i64);
        for &x in &c1 {
            let s = scaled[code.sub(x, c)];
            if s == t1 {
                out.0 += 1;
            } else if s == t2 {
                out.1 += 1;
            }
        }
        (out.0.into(), out.1.into())
    };
    for (c, &sc) in scaled.iter().enumerate().skip(1) {
        let expected = if sc == t1 {
            (d1, d2)
        } else if sc == t2 {
            (e1, e2)
        } else {
            continue;
        };
        if count(c) != expected {
            return Err(Error::NotTwoWeight(format!("neighbour counts at word {c} differ from the closed form")));
        }
    }
    Ok(solved)
}

/// `sum_{x in C1} w(x - c) = gamma n b1 [1 - (1 - w1/(gamma n))(1 - w(c)/(gamma n))]`
/// for every codeword `c`.
pub fn check_weight_sums(code: &LinearCode, w: &WeightFunction, profile: &TwoWeightProfile) -> bool {
    let one = Rational::from(1);
    let gn = w.gamma() * Rational::from(code.n() as i64);
    let b1 = Rational::from(profile.b1 as i64);
    let scaled = code.scaled_weights(w);
    let c1: Vec<usize> = (1..code.len()).filter(|&i| w.from_scaled(scaled[i]) == profile.w1).collect();
    (0..code.len()).into_par_iter().all(|c| {
        let sum: i64 = c1.iter().map(|&x| scaled[code.sub(x, c)]).sum();
        let wc = w.from_scaled(scaled[c]);
        w.from_scaled(sum) == gn * b1 * (one - (one - profile.w1 / gn) * (one - wc / gn))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    EdgeList,
    Dimacs,
    AdjacencyJson,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" => Ok(ExportFormat::EdgeList),
            "dimacs" => Ok(ExportFormat::Dimacs),
            "adjacency-json" => Ok(ExportFormat::AdjacencyJson),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

pub fn export_graph(graph: &Graph, format: ExportFormat) -> Vec<u8> {
    let mut out = String::new();
    match format {
        ExportFormat::EdgeList => {
            for (a, b) in graph.edges() {
                out += &format!("{a} {b}\n");
            }
        }
        ExportFormat::Dimacs => {
            out += &format!("p edge {} {}\n", graph.n, graph.edge_count());
            for (a, b) in graph.edges() {
                out += &format!("e {} {}\n", a + 1, b + 1);
            }
        }
        ExportFormat::AdjacencyJson => {
            let adjacency: Vec<Vec<usize>> = (0..graph.n).map(|v| graph.neighbours(v)).collect();
            out = json!({ "vertices": graph.n, "adjacency": adjacency }).to_string();
            out.push('\n');
        }
    }
    out.into_bytes()
}
