//! Serializable rows for CSV and JSON output.
//!
//! Every certified quantity is written as a `lo`/`hi` pair rounded outward to
//! [`DEFAULT_DIGITS`] significant digits. Rows come back in a fixed order
//! regardless of how they were computed, so output is byte-for-byte stable.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::bounds::{self, ZeroCase};
use crate::classify::{BoundReport, ResidualCase, Verdict};
use crate::context::Context;
use crate::decimal::{round_down, round_up, DEFAULT_DIGITS};
use crate::numerics::Interval;
use crate::par;
use crate::reference::{Finding, VerificationReport};
use crate::roots::{RMaxScan, RootBracket, WindowRow};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Endpoints {
    pub lo: f64,
    pub hi: f64,
}

impl Endpoints {
    pub fn outward(iv: Interval, digits: usize) -> Endpoints {
        Endpoints {
            lo: round_down(iv.lo(), digits),
            hi: round_up(iv.hi(), digits),
        }
    }
}

impl From<Interval> for Endpoints {
    fn from(iv: Interval) -> Self {
        Endpoints::outward(iv, DEFAULT_DIGITS)
    }
}

fn pair(lo: Option<f64>, hi: Option<f64>) -> Option<Endpoints> {
    lo.zip(hi).map(|(lo, hi)| Endpoints { lo, hi })
}

fn csv_error(e: csv::Error) -> Error {
    match e.position() {
        Some(p) => Error::Parse {
            line: p.line() as usize,
            message: e.to_string(),
        },
        None => Error::Io(e.to_string()),
    }
}

fn write_rows<W: Write, T: Serialize>(out: W, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

fn read_rows<R: Read, T: for<'de> Deserialize<'de>>(input: R) -> Result<Vec<T>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(csv_error))
        .collect()
}

/// One classified chain link.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: i64,
    pub r: i64,
    pub family: String,
    pub m: i64,
    pub ell_squared: i64,
    pub lower_bound: Endpoints,
    pub cover: Endpoints,
    pub verdict: String,
    /// `lower_bound - cover`.
    pub margin: Endpoints,
    /// Recorded volume minus cover volume, when the link is tabulated.
    pub reference_margin: Option<Endpoints>,
}

#[derive(Serialize, Deserialize)]
struct FlatReportRow {
    n: i64,
    r: i64,
    family: String,
    m: i64,
    ell_squared: i64,
    lower_bound_lo: f64,
    lower_bound_hi: f64,
    cover_lo: f64,
    cover_hi: f64,
    verdict: String,
    margin_lo: f64,
    margin_hi: f64,
    reference_margin_lo: Option<f64>,
    reference_margin_hi: Option<f64>,
}

impl From<&BoundReport> for ReportRow {
    fn from(b: &BoundReport) -> Self {
        ReportRow {
            n: b.id.n,
            r: b.id.r,
            family: b.slope.family().as_str().to_string(),
            m: b.slope.m(),
            ell_squared: b.slope_length_sq,
            lower_bound: b.lower_bound.into(),
            cover: b.cover_volume.into(),
            verdict: b.verdict.as_str().to_string(),
            margin: b.margin.into(),
            reference_margin: b.reference_margin.map(Endpoints::from),
        }
    }
}

impl ReportRow {
    fn flat(&self) -> FlatReportRow {
        FlatReportRow {
            n: self.n,
            r: self.r,
            family: self.family.clone(),
            m: self.m,
            ell_squared: self.ell_squared,
            lower_bound_lo: self.lower_bound.lo,
            lower_bound_hi: self.lower_bound.hi,
            cover_lo: self.cover.lo,
            cover_hi: self.cover.hi,
            verdict: self.verdict.clone(),
            margin_lo: self.margin.lo,
            margin_hi: self.margin.hi,
            reference_margin_lo: self.reference_margin.map(|e| e.lo),
            reference_margin_hi: self.reference_margin.map(|e| e.hi),
        }
    }

    fn from_flat(f: FlatReportRow) -> Self {
        ReportRow {
            n: f.n,
            r: f.r,
            family: f.family,
            m: f.m,
            ell_squared: f.ell_squared,
            lower_bound: Endpoints {
                lo: f.lower_bound_lo,
                hi: f.lower_bound_hi,
            },
            cover: Endpoints {
                lo: f.cover_lo,
                hi: f.cover_hi,
            },
            verdict: f.verdict,
            margin: Endpoints {
                lo: f.margin_lo,
                hi: f.margin_hi,
            },
            reference_margin: pair(f.reference_margin_lo, f.reference_margin_hi),
        }
    }

    pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
        write_rows(out, rows.iter().map(ReportRow::flat))
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Vec<ReportRow>> {
        Ok(read_rows::<_, FlatReportRow>(input)?
            .into_iter()
            .map(ReportRow::from_flat)
            .collect())
    }
}

/// One row of the minimally twisted table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: i64,
    pub cover: Endpoints,
    /// `None` when the filling bound does not apply.
    pub lower_bound: Option<Endpoints>,
    /// Exact volume for even n.
    pub closed_form: Option<Endpoints>,
    pub verdict: String,
}

#[derive(Serialize, Deserialize)]
struct FlatTableRow {
    n: i64,
    cover_lo: f64,
    cover_hi: f64,
    lower_bound_lo: Option<f64>,
    lower_bound_hi: Option<f64>,
    closed_form_lo: Option<f64>,
    closed_form_hi: Option<f64>,
    verdict: String,
}

impl TableRow {
    pub fn write_csv<W: Write>(rows: &[TableRow], out: W) -> Result<()> {
        write_rows(
            out,
            rows.iter().map(|r| FlatTableRow {
                n: r.n,
                cover_lo: r.cover.lo,
                cover_hi: r.cover.hi,
                lower_bound_lo: r.lower_bound.map(|e| e.lo),
                lower_bound_hi: r.lower_bound.map(|e| e.hi),
                closed_form_lo: r.closed_form.map(|e| e.lo),
                closed_form_hi: r.closed_form.map(|e| e.hi),
                verdict: r.verdict.clone(),
            }),
        )
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Vec<TableRow>> {
        Ok(read_rows::<_, FlatTableRow>(input)?
            .into_iter()
            .map(|f| TableRow {
                n: f.n,
                cover: Endpoints {
                    lo: f.cover_lo,
                    hi: f.cover_hi,
                },
                lower_bound: pair(f.lower_bound_lo, f.lower_bound_hi),
                closed_form: pair(f.closed_form_lo, f.closed_form_hi),
                verdict: f.verdict,
            })
            .collect())
    }
}

/// Minimally twisted rows for `min_n ≤ n ≤ max_n`.
pub fn table_rows(ctx: &Context, min_n: i64, max_n: i64) -> Result<Vec<TableRow>> {
    if min_n < 5 || min_n > max_n {
        return Err(Error::Domain(format!(
            "need 5 <= min_n <= max_n, got {min_n}..{max_n}"
        )));
    }
    let ns: Vec<i64> = (min_n..=max_n).collect();
    par::map(ctx.execution(), &ns, |&n| {
        let report = crate::classify::classify_chain(ctx, crate::classify::ChainLinkId::new(n, 0))?;
        let closed_form = if n % 2 == 0 {
            Some(bounds::thurston_even_volume(ctx, n)?.into())
        } else {
            None
        };
        Ok(TableRow {
            n,
            cover: report.cover_volume.into(),
            lower_bound: (report.verdict != Verdict::BoundInapplicable)
                .then(|| report.lower_bound.into()),
            closed_form,
            verdict: report.verdict.as_str().to_string(),
        })
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub base: String,
    pub n: i64,
    pub m: i64,
    pub half_twists: i64,
    pub canonical: bool,
}

impl From<&ResidualCase> for ResidualRow {
    fn from(c: &ResidualCase) -> Self {
        ResidualRow {
            base: c.base.as_str().to_string(),
            n: c.n,
            m: c.m,
            half_twists: c.half_twists(),
            canonical: c.canonical,
        }
    }
}

impl ResidualRow {
    pub fn write_csv<W: Write>(rows: &[ResidualRow], out: W) -> Result<()> {
        write_rows(out, rows)
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Vec<ResidualRow>> {
        read_rows(input)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowEntry {
    pub n: i64,
    pub case: String,
    pub center_shift: f64,
    pub radius: Endpoints,
    pub lower_zero: Endpoints,
    pub upper_zero: Endpoints,
}

fn case_name(case: ZeroCase) -> &'static str {
    match case {
        ZeroCase::EvenNEvenR => "even_n_even_r",
        ZeroCase::EvenNOddR => "even_n_odd_r",
        ZeroCase::OddNEvenR => "odd_n_even_r",
        ZeroCase::OddNOddR => "odd_n_odd_r",
    }
}

impl From<&WindowRow> for WindowEntry {
    fn from(w: &WindowRow) -> Self {
        WindowEntry {
            n: w.n,
            case: case_name(w.window.case).to_string(),
            center_shift: w.window.center_shift,
            radius: w.window.radius.into(),
            lower_zero: w.window.lower().into(),
            upper_zero: w.window.upper().into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RMaxEntry {
    pub location: f64,
    pub value: Endpoints,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootsReport {
    pub f_root: Endpoints,
    pub f_root_bisections: u32,
    pub f_critical_point: Endpoints,
    pub r_max: RMaxEntry,
    pub windows: Vec<WindowEntry>,
}

#[derive(Serialize)]
struct QuantityRow<'a> {
    quantity: &'a str,
    n: Option<i64>,
    case: Option<&'a str>,
    lo: f64,
    hi: f64,
}

impl RootsReport {
    pub fn new(root: RootBracket, critical: Interval, r_max: RMaxScan, windows: &[WindowRow]) -> Self {
        RootsReport {
            f_root: Endpoints {
                lo: root.lo,
                hi: root.hi,
            },
            f_root_bisections: root.bisections,
            f_critical_point: critical.into(),
            r_max: RMaxEntry {
                location: r_max.location,
                value: r_max.value.into(),
                samples: r_max.samples,
            },
            windows: windows.iter().map(WindowEntry::from).collect(),
        }
    }

    /// Long format: one `quantity,n,case,lo,hi` row per reported enclosure.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let scalar = |quantity, e: Endpoints| QuantityRow {
            quantity,
            n: None,
            case: None,
            lo: e.lo,
            hi: e.hi,
        };
        let mut rows = vec![
            scalar("f_root", self.f_root),
            scalar("f_critical_point", self.f_critical_point),
            scalar(
                "r_max_location",
                Endpoints {
                    lo: self.r_max.location,
                    hi: self.r_max.location,
                },
            ),
            scalar("r_max_value", self.r_max.value),
        ];
        for w in &self.windows {
            for (quantity, e) in [("zero_lower", w.lower_zero), ("zero_upper", w.upper_zero)] {
                rows.push(QuantityRow {
                    quantity,
                    n: Some(w.n),
                    case: Some(&w.case),
                    lo: e.lo,
                    hi: e.hi,
                });
            }
        }
        write_rows(out, rows)
    }
}

#[derive(Serialize)]
struct FindingRow<'a> {
    line: usize,
    table_id: String,
    n: i64,
    m: Option<i64>,
    check: String,
    detail: &'a str,
}

/// Failure rows of a verification run as CSV.
pub fn write_findings_csv<W: Write>(report: &VerificationReport, out: W) -> Result<()> {
    let rows = report.failures.iter().map(|f: &Finding| FindingRow {
        line: f.line,
        table_id: format!("{:?}", f.table_id),
        n: f.n,
        m: f.m,
        check: f.check.to_string(),
        detail: &f.detail,
    });
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(["line", "table_id", "n", "m", "check", "detail"])
        .map_err(csv_error)?;
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_chain, ChainLinkId};

    #[test]
    fn report_row_round_trips() {
        let ctx = Context::standard();
        let rows: Vec<ReportRow> = [(61, 0), (15, 2), (5, 0), (11, -7)]
            .iter()
            .map(|&(n, r)| ReportRow::from(&classify_chain(ctx, ChainLinkId::new(n, r)).unwrap()))
            .collect();

        let mut csv_out = Vec::new();
        ReportRow::write_csv(&rows, &mut csv_out).unwrap();
        assert_eq!(ReportRow::read_csv(csv_out.as_slice()).unwrap(), rows);
        let header = String::from_utf8(csv_out).unwrap();
        assert!(header.starts_with(
            "n,r,family,m,ell_squared,lower_bound_lo,lower_bound_hi,cover_lo,cover_hi,verdict,"
        ));

        let json = serde_json::to_string(&rows).unwrap();
        assert!(json.contains("\"lower_bound\":{\"lo\":"));
        let back: Vec<ReportRow> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn endpoints_are_outward() {
        let iv = Interval::new(1.0 / 3.0, 2.0 / 3.0);
        let e = Endpoints::from(iv);
        assert!(e.lo <= iv.lo() && e.hi >= iv.hi());
        assert_eq!(format!("{}", e.lo), "0.333333333333");
        assert_eq!(format!("{}", e.hi), "0.666666666667");
    }

    #[test]
    fn table_rows_round_trip() {
        let rows = table_rows(Context::standard(), 5, 12).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows[0].lower_bound.is_none() && rows[0].closed_form.is_none());
        assert!(rows[1].closed_form.is_some());
        let mut out = Vec::new();
        TableRow::write_csv(&rows, &mut out).unwrap();
        assert_eq!(TableRow::read_csv(out.as_slice()).unwrap(), rows);
        assert!(table_rows(Context::standard(), 4, 10).is_err());
        assert!(table_rows(Context::standard(), 10, 9).is_err());
    }
}
