//! Reference volume tables and their consistency checks.
//!
//! The bundled CSV has the header `table_id,base,n,m,volume,cover_volume`.
//! `T1` lists minimally twisted chains, `T2`-`T4` the twisted fillings for
//! `11 ≤ n ≤ 59`, and `T5` the fillings for `5 ≤ n ≤ 10` together with the
//! minimally twisted volumes they are compared against (`base = none`).

use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::context::Context;
use crate::cusp::BaseFamily;
use crate::decimal::Recorded;
use crate::numerics::Interval;
use crate::par;
use crate::{Error, Result};

pub const HEADER: [&str; 6] = ["table_id", "base", "n", "m", "volume", "cover_volume"];

const BUNDLED: &str = include_str!("../data/tables.csv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl TableId {
    /// Agreement required between a recomputed and a recorded volume.
    pub fn tolerance(&self) -> f64 {
        match self {
            TableId::T1 => 1e-6,
            _ => 5e-4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    #[serde(rename = "hatW")]
    HatW,
    #[serde(rename = "barW")]
    BarW,
    #[serde(rename = "none")]
    None,
}

impl Base {
    pub fn family(&self) -> Option<BaseFamily> {
        match self {
            Base::HatW => Some(BaseFamily::MinTwistBase),
            Base::BarW => Some(BaseFamily::HalfTwistBase),
            Base::None => None,
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawRow {
    table_id: String,
    base: String,
    n: String,
    m: String,
    volume: String,
    cover_volume: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceRow {
    /// 1-based line in the source file.
    pub line: usize,
    pub table_id: TableId,
    pub base: Base,
    pub n: i64,
    pub m: Option<i64>,
    pub volume: Recorded,
    pub cover_volume: Option<Recorded>,
}

impl ReferenceRow {
    /// Half-twist count, or `None` for a minimally twisted row.
    pub fn half_twists(&self) -> Option<i64> {
        let m = self.m?;
        match self.base.family()? {
            BaseFamily::MinTwistBase => Some(2 * m),
            BaseFamily::HalfTwistBase => Some(2 * m + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceSet {
    pub rows: Vec<ReferenceRow>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_row(line: usize, raw: RawRow) -> Result<ReferenceRow> {
    let table_id = match raw.table_id.as_str() {
        "T1" => TableId::T1,
        "T2" => TableId::T2,
        "T3" => TableId::T3,
        "T4" => TableId::T4,
        "T5" => TableId::T5,
        other => return Err(parse_error(line, format!("unknown table {other:?}"))),
    };
    let base = match raw.base.as_str() {
        "hatW" => Base::HatW,
        "barW" => Base::BarW,
        "none" => Base::None,
        other => return Err(parse_error(line, format!("unknown base {other:?}"))),
    };
    let n: i64 = raw
        .n
        .parse()
        .map_err(|_| parse_error(line, format!("bad n {:?}", raw.n)))?;
    if n < 5 {
        return Err(parse_error(line, format!("n = {n} is below 5")));
    }
    let m = if raw.m.is_empty() {
        None
    } else {
        Some(
            raw.m
                .parse::<i64>()
                .map_err(|_| parse_error(line, format!("bad m {:?}", raw.m)))?,
        )
    };
    if m.is_some() != (base != Base::None) {
        return Err(parse_error(line, "m must be given exactly for hatW/barW rows"));
    }
    let volume = Recorded::parse(&raw.volume).map_err(|e| parse_error(line, e.to_string()))?;
    let cover_volume = if raw.cover_volume.is_empty() {
        None
    } else {
        Some(Recorded::parse(&raw.cover_volume).map_err(|e| parse_error(line, e.to_string()))?)
    };
    Ok(ReferenceRow {
        line,
        table_id,
        base,
        n,
        m,
        volume,
        cover_volume,
    })
}

impl ReferenceSet {
    pub fn parse(text: &str) -> Result<ReferenceSet> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let header = reader
            .headers()
            .map_err(|e| parse_error(1, e.to_string()))?
            .clone();
        if header.iter().ne(HEADER.iter().copied()) {
            return Err(parse_error(
                1,
                format!("header must be {}", HEADER.join(",")),
            ));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                parse_error(line, e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let raw: RawRow = record
                .deserialize(Some(&header))
                .map_err(|e| parse_error(line, e.to_string()))?;
            rows.push(parse_row(line, raw)?);
        }
        if rows.is_empty() {
            return Err(parse_error(1, "no data rows"));
        }
        Ok(ReferenceSet { rows })
    }

    pub fn load(path: &Path) -> Result<ReferenceSet> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| parse_error(0, format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The tables shipped with the crate.
    pub fn bundled() -> &'static ReferenceSet {
        static SET: OnceLock<ReferenceSet> = OnceLock::new();
        SET.get_or_init(|| ReferenceSet::parse(BUNDLED).expect("bundled tables parse"))
    }

    pub fn bundled_text() -> &'static str {
        BUNDLED
    }

    pub fn table(&self, id: TableId) -> impl Iterator<Item = &ReferenceRow> {
        self.rows.iter().filter(move |r| r.table_id == id)
    }

    /// Recorded volume of the minimally twisted n-chain, preferring the
    /// more precise first table.
    pub fn min_twist(&self, n: i64) -> Option<&ReferenceRow> {
        let find = |id| {
            self.rows
                .iter()
                .find(|r| r.table_id == id && r.base == Base::None && r.n == n)
        };
        find(TableId::T1).or_else(|| find(TableId::T5))
    }

    pub fn filling(&self, family: BaseFamily, n: i64, m: i64) -> Option<&ReferenceRow> {
        self.rows
            .iter()
            .find(|r| r.base.family() == Some(family) && r.n == n && r.m == Some(m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckKind {
    /// Recomputed `(n - 1) v₈` against the recorded cover volume.
    CoverVolume,
    /// Certified lower bound strictly below the recorded volume.
    LowerBound,
    /// Closed-form even-chain volume against the recorded volume.
    ClosedForm,
    /// Recorded volume above the cover volume exactly when `n ≥ 11`.
    CoverOrdering,
    /// Twisted filling above the minimally twisted chain of the same size.
    AboveMinTwist,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::CoverVolume => "cover_volume",
            CheckKind::LowerBound => "lower_bound",
            CheckKind::ClosedForm => "closed_form",
            CheckKind::CoverOrdering => "cover_ordering",
            CheckKind::AboveMinTwist => "above_min_twist",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Finding {
    pub line: usize,
    pub table_id: TableId,
    pub n: i64,
    pub m: Option<i64>,
    pub check: CheckKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub rows: usize,
    pub checks: usize,
    pub failures: Vec<Finding>,
    /// Expected outcomes worth surfacing, such as the small chains whose
    /// volume lies below that of the cover.
    pub notes: Vec<Finding>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

struct RowOutcome {
    checks: usize,
    failures: Vec<Finding>,
    notes: Vec<Finding>,
}

/// Largest distance from a recorded decimal to any point of `iv`.
fn distance(iv: Interval, recorded: &Recorded) -> f64 {
    (recorded.point.hi() - iv.lo()).max(iv.hi() - recorded.point.lo())
}

fn check_row(ctx: &Context, set: &ReferenceSet, row: &ReferenceRow) -> Result<RowOutcome> {
    let mut out = RowOutcome {
        checks: 0,
        failures: Vec::new(),
        notes: Vec::new(),
    };
    let finding = |check, detail: String| Finding {
        line: row.line,
        table_id: row.table_id,
        n: row.n,
        m: row.m,
        check,
        detail,
    };
    let tol = row.table_id.tolerance();
    let cover = bounds::whitehead_cover_volume(ctx, row.n)?;

    if let Some(recorded) = &row.cover_volume {
        out.checks += 1;
        let d = distance(cover, recorded);
        if !(d <= tol) {
            out.failures.push(finding(
                CheckKind::CoverVolume,
                format!("(n-1)v8 = {cover} differs from {} by {d:.3e}", recorded.text),
            ));
        }
    }

    let r = row.half_twists().unwrap_or(0);
    let bound = bounds::chain_volume_lower_bound(ctx, row.n, r)?;
    if bound.applicable {
        out.checks += 1;
        if !(bound.lower_bound.hi() < row.volume.value.lo()) {
            out.failures.push(finding(
                CheckKind::LowerBound,
                format!("lower bound {} is not below {}", bound.lower_bound, row.volume.text),
            ));
        }
    }

    if row.base == Base::None && row.n % 2 == 0 {
        out.checks += 1;
        let exact = bounds::thurston_even_volume(ctx, row.n)?;
        let d = distance(exact, &row.volume);
        if !(d <= tol) {
            out.failures.push(finding(
                CheckKind::ClosedForm,
                format!("closed form {exact} differs from {} by {d:.3e}", row.volume.text),
            ));
        }
    }

    if row.table_id == TableId::T1 {
        if let Some(recorded_cover) = &row.cover_volume {
            out.checks += 1;
            let above = row.volume.value.certainly_gt(&recorded_cover.value);
            let below = row.volume.value.certainly_lt(&recorded_cover.value);
            let expect_above = row.n >= 11;
            if (expect_above && !above) || (!expect_above && !below) {
                out.failures.push(finding(
                    CheckKind::CoverOrdering,
                    format!(
                        "volume {} vs cover {}: expected {} for n = {}",
                        row.volume.text,
                        recorded_cover.text,
                        if expect_above { "above" } else { "below" },
                        row.n
                    ),
                ));
            } else if below {
                out.notes.push(finding(
                    CheckKind::CoverOrdering,
                    format!("volume {} is below the cover volume {}", row.volume.text, recorded_cover.text),
                ));
            }
        }
    }

    if row.table_id == TableId::T5 && row.base != Base::None {
        out.checks += 1;
        let base_row = set
            .rows
            .iter()
            .find(|b| b.table_id == TableId::T5 && b.base == Base::None && b.n == row.n);
        match base_row {
            Some(b) if row.volume.value.certainly_gt(&b.volume.value) => {}
            Some(b) => out.failures.push(finding(
                CheckKind::AboveMinTwist,
                format!("{} is not above the minimally twisted {}", row.volume.text, b.volume.text),
            )),
            None => out.failures.push(finding(
                CheckKind::AboveMinTwist,
                format!("no minimally twisted row for n = {}", row.n),
            )),
        }
    }
    Ok(out)
}

/// Checks every row; failures are collected, never dropped.
pub fn verify_reference(ctx: &Context, set: &ReferenceSet) -> VerificationReport {
    let outcomes = par::map(ctx.execution(), &set.rows, |row| check_row(ctx, set, row));
    let mut report = VerificationReport {
        rows: set.rows.len(),
        ..Default::default()
    };
    for (row, outcome) in set.rows.iter().zip(outcomes) {
        match outcome {
            Ok(o) => {
                report.checks += o.checks;
                report.failures.extend(o.failures);
                report.notes.extend(o.notes);
            }
            Err(e) => report.failures.push(Finding {
                line: row.line,
                table_id: row.table_id,
                n: row.n,
                m: row.m,
                check: CheckKind::LowerBound,
                detail: e.to_string(),
            }),
        }
    }
    report
}
