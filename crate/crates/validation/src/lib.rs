//! Reporting helpers for the acceptance suite.

use std::io::Write;

/// Prints one verdict line for an acceptance criterion and returns `passed`.
///
/// The line goes straight to the process stdout so it shows up even when the
/// test harness captures output.
pub fn report(id: &str, claim: &str, tolerance: &str, detail: &str, passed: bool) -> bool {
    let status = if passed { "PASS" } else { "FAIL" };
    let line = format!("[{status}] criterion {id}: {claim} | tolerance: {tolerance} | {detail}\n");
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    passed
}

/// Largest distance from a point to either end of an enclosure.
pub fn spread(lo: f64, hi: f64, x: f64) -> f64 {
    (lo - x).abs().max((hi - x).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spread_takes_the_far_end() {
        assert_eq!(spread(1.0, 3.0, 1.5), 1.5);
        assert_eq!(spread(1.0, 3.0, 4.0), 3.0);
    }
}
