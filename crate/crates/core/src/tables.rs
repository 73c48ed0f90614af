//! End-to-end parameter tables: construct, enumerate, check the graph and
//! render tab-separated rows.

use std::fmt;
use std::sync::Arc;

use crate::code::{classify, span, two_weight_profile, TwoWeightProfile};
use crate::constructions::{construct_p61, construct_p62, construct_segments, ConstructionReport};
use crate::error::{Error, Result};
use crate::ring::build_ring;
use crate::srg::{srg_check, theorem_params, CayleyGraph, CheckMode, SrgParams, SrgVerdict, FULL_CHECK_LIMIT};
use crate::vector::DEFAULT_BUDGET;
use crate::weight::normalized_weight;
use crate::Rational;

/// Seed and pair count for graphs too large for the dense check.
pub const SAMPLE_SEED: u64 = 0x7707_e1ec;
pub const SAMPLE_TRIALS: usize = 100_000;

/// `a` when integral, else `a/b` in lowest terms.
pub fn format_rational(x: Rational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Finite decimal expansion when the denominator has no prime factors other
/// than 2 and 5, otherwise `a/b`.
pub fn format_decimal(x: Rational) -> String {
    let mut d = *x.denom();
    let mut digits = 0;
    let (mut twos, mut fives) = (0, 0);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return format_rational(x);
    }
    if x.is_integer() {
        return x.to_integer().to_string();
    }
    digits += std::cmp::max(twos, fives);
    let scaled = x * Rational::from(10i64.pow(digits));
    let v = scaled.to_integer();
    let sign = if v < 0 { "-" } else { "" };
    let v = v.abs();
    let p = 10i64.pow(digits);
    format!("{sign}{}.{:0width$}", v / p, v % p, width = digits as usize)
}

/// Parses `a`, `a/b` or a finite decimal such as `4.5`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidSpec(format!("not a rational number: {text:?}"));
    let text = text.trim();
    if let Some((a, b)) = text.split_once('/') {
        let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if b == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(a, b));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) || frac.len() > 12 {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: i64 = if whole == "-" || whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let scale = 10i64.pow(frac.len() as u32);
        let frac: i64 = frac.parse().map_err(|_| bad())?;
        let magnitude = Rational::from(whole.abs()) + Rational::new(frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    Ok(Rational::from(text.parse::<i64>().map_err(|_| bad())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableName {
    Z9,
    P62,
    SegmentsQ2,
    SegmentsQ3,
}

impl TableName {
    pub const ALL: [TableName; 4] = [TableName::Z9, TableName::P62, TableName::SegmentsQ2, TableName::SegmentsQ3];

    pub fn name(self) -> &'static str {
        match self {
            TableName::Z9 => "z9",
            TableName::P62 => "p62",
            TableName::SegmentsQ2 => "segments-q2",
            TableName::SegmentsQ3 => "segments-q3",
        }
    }
}

impl std::str::FromStr for TableName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableName::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown table {s:?}")))
    }
}

/// How a row's graph parameters were confirmed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphCheck {
    /// Every vertex pair of the dense graph.
    Full,
    /// Seeded random pairs of the implicit Cayley graph; the parameters
    /// themselves come from the closed forms.
    Sampled { seed: u64, pairs: usize },
}

impl fmt::Display for GraphCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphCheck::Full => write!(f, "full"),
            GraphCheck::Sampled { seed, pairs } => write!(f, "formula+sampled:{seed}:{pairs}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub profile: TwoWeightProfile,
    pub srg: SrgParams,
    pub check: GraphCheck,
}

impl TableRow {
    pub fn tsv(&self) -> String {
        let p = &self.srg;
        [
            self.n.to_string(),
            self.k.to_string(),
            format_decimal(self.profile.w1),
            format_decimal(self.profile.w2),
            format_rational(p.n),
            format_rational(p.k),
            format_rational(p.lambda),
            format_rational(p.mu),
            format!("distribution+{}", self.check),
        ]
        .join("\t")
    }
}

pub const TSV_HEADER: &str = "n\tk\tw1\tw2\tN\tK\tlambda\tmu\tverified";

fn mismatch(what: &str, found: impl fmt::Debug, expected: impl fmt::Debug) -> Error {
    Error::TwoWeightCheckFailed(format!("{what}: found {found:?}, expected {expected:?}"))
}

/// Enumerates the code of a construction, checks its weights against the
/// prediction and verifies the graph, densely when it has at most
/// [`FULL_CHECK_LIMIT`] vertices and by seeded sampling otherwise.
pub fn verify_construction(report: &ConstructionReport) -> Result<TableRow> {
    let code = span(&report.matrix, DEFAULT_BUDGET)?;
    let w = normalized_weight(code.ring())?;
    let c = classify(&code, &w);
    if !(c.regular && c.projective && c.proper) {
        return Err(mismatch("classification", c, "regular, projective, proper"));
    }
    let pred = report.predicted;
    let profile = two_weight_profile(&code, &w, false)?
        .ok_or_else(|| mismatch("weights", "not two-weight", (pred.w1, pred.w2)))?;
    if (profile.w1, profile.w2) != (pred.w1, pred.w2) {
        return Err(mismatch("weights", (profile.w1, profile.w2), (pred.w1, pred.w2)));
    }
    let theorem = theorem_params(code.n(), code.len(), profile.w1, profile.w2)?;
    if theorem != pred.srg {
        return Err(mismatch("graph parameters", theorem, pred.srg));
    }
    let graph = CayleyGraph::new(&code, &w, profile.w1)?;
    let (verdict, check) = if code.len() <= FULL_CHECK_LIMIT {
        (srg_check(&graph.to_graph()?, CheckMode::Full)?, GraphCheck::Full)
    } else {
        let mode = CheckMode::Sampled { seed: SAMPLE_SEED, trials: SAMPLE_TRIALS };
        (srg_check(&graph, mode)?, GraphCheck::Sampled { seed: SAMPLE_SEED, pairs: SAMPLE_TRIALS })
    };
    match verdict {
        SrgVerdict::Verified { params, .. } if params == theorem => {}
        other => return Err(mismatch("graph check", other, theorem)),
    }
    Ok(TableRow { n: code.n(), k: report.matrix.k(), profile, srg: theorem, check })
}

/// The constructions behind each table, in row order.
pub fn table_constructions(table: TableName) -> Result<Vec<ConstructionReport>> {
    let ring = |s: &str| -> Result<_> { Ok(Arc::new(build_ring(&s.parse()?)?)) };
    match table {
        TableName::Z9 => (1..=3).map(|s| construct_p61(ring("Z/9")?, s)).collect(),
        TableName::P62 => [2, 4, 8].into_iter().map(|q| construct_p62(q, 0)).collect(),
        TableName::SegmentsQ2 => (1..=2).map(|s| construct_segments(ring("F/2[u]")?, s)).collect(),
        TableName::SegmentsQ3 => (1..=3).map(|s| construct_segments(ring("Z/9")?, s)).collect(),
    }
}

pub fn table(name: TableName) -> Result<Vec<TableRow>> {
    table_constructions(name)?.iter().map(verify_construction).collect()
}

pub fn render_tsv(rows: &[TableRow]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for row in rows {
        out += &row.tsv();
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(format_rational(Rational::new(64, 3)), "64/3");
        assert_eq!(format_rational(Rational::from(-4)), "-4");
        assert_eq!(format_decimal(Rational::new(9, 2)), "4.5");
        assert_eq!(format_decimal(Rational::new(243, 2)), "121.5");
        assert_eq!(format_decimal(Rational::new(512, 7)), "512/7");
        assert_eq!(format_decimal(Rational::new(1, 20)), "0.05");
        assert_eq!(format_decimal(Rational::new(-3, 4)), "-0.75");
        assert_eq!(format_decimal(Rational::from(12)), "12");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("4.5").unwrap(), Rational::new(9, 2));
        assert_eq!(parse_rational("64/3").unwrap(), Rational::new(64, 3));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::new(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), Rational::from(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn z9_table() {
        let rows = table(TableName::Z9).unwrap();
        assert_eq!(rows[0].tsv(), "4\t2\t3\t4.5\t81\t24\t9\t6\tdistribution+full");
        assert_eq!(rows[2].tsv(), "12\t2\t12\t13.5\t81\t72\t63\t72\tdistribution+full");
    }
}
