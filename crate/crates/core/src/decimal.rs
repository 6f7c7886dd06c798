//! Decimal text in and out of intervals.
//!
//! Printing rounds outward: a lower endpoint is never printed above its true
//! value and an upper endpoint never below. Parsing a recorded table value
//! yields an interval covering everything that rounds to the printed digits.

use crate::numerics::Interval;
use crate::{Error, Result};

/// Significant digits used for every certified quantity in reports.
pub const DEFAULT_DIGITS: usize = 12;

/// Enough digits that any nonzero remainder of a double beyond the first
/// few significant digits shows up.
const EXACT_DIGITS: usize = 120;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Down,
    Up,
}

/// Largest `digits`-significant decimal not above `x`.
pub fn format_down(x: f64, digits: usize) -> String {
    directed(x, digits, Direction::Down)
}

/// Smallest `digits`-significant decimal not below `x`.
pub fn format_up(x: f64, digits: usize) -> String {
    directed(x, digits, Direction::Up)
}

/// `x` rounded outward to `digits` significant digits and parsed back. The
/// result is the double nearest that decimal, whose shortest representation
/// is the decimal itself.
pub fn round_down(x: f64, digits: usize) -> f64 {
    format_down(x, digits).parse().expect("formatted decimal parses")
}

pub fn round_up(x: f64, digits: usize) -> f64 {
    format_up(x, digits).parse().expect("formatted decimal parses")
}

fn directed(x: f64, digits: usize, dir: Direction) -> String {
    assert!(digits >= 1, "at least one significant digit");
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exact = format!("{:.*e}", EXACT_DIGITS, x.abs());
    let (mantissa, exponent) = exact.split_once('e').expect("exponent present");
    let mut exponent: i32 = exponent.parse().expect("integer exponent");
    let all: Vec<u8> = mantissa.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    let (head, rest) = all.split_at(digits.min(all.len()));
    let mut head = head.to_vec();
    let inexact = rest.iter().any(|&d| d != 0);
    let away_from_zero = match dir {
        Direction::Up => x > 0.0,
        Direction::Down => x < 0.0,
    };
    if inexact && away_from_zero && increment(&mut head) {
        head.insert(0, 1);
        head.truncate(digits);
        exponent += 1;
    }
    let sign = if x < 0.0 { "-" } else { "" };
    format!("{sign}{}", positional(&head, exponent))
}

/// Adds one unit in the last place; returns true on carry out of the top.
fn increment(digits: &mut [u8]) -> bool {
    for d in digits.iter_mut().rev() {
        if *d == 9 {
            *d = 0;
        } else {
            *d += 1;
            return false;
        }
    }
    true
}

fn positional(digits: &[u8], exponent: i32) -> String {
    let text: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let text = text.trim_end_matches('0');
    let text = if text.is_empty() { "0" } else { text };
    let len = text.len() as i32;
    if exponent < 0 {
        format!("0.{}{text}", "0".repeat((-exponent - 1) as usize))
    } else if exponent + 1 >= len {
        format!("{text}{}", "0".repeat((exponent + 1 - len) as usize))
    } else {
        let (int, frac) = text.split_at((exponent + 1) as usize);
        format!("{int}.{frac}")
    }
}

/// A volume as printed in a reference table.
#[derive(Clone, Debug, PartialEq)]
pub struct Recorded {
    pub text: String,
    /// Digits after the decimal point.
    pub places: u32,
    /// Encloses the printed decimal itself.
    pub point: Interval,
    /// Encloses every real number that rounds to the printed digits.
    pub value: Interval,
}

impl Recorded {
    pub fn parse(text: &str) -> Result<Recorded> {
        let t = text.trim();
        let digits_ok = !t.is_empty()
            && t.chars().all(|c| c.is_ascii_digit() || c == '.' || c == '-')
            && t.chars().filter(|&c| c == '.').count() <= 1
            && t.chars().skip(1).all(|c| c != '-')
            && t.chars().any(|c| c.is_ascii_digit());
        if !digits_ok {
            return Err(Error::Domain(format!("not a plain decimal: {text:?}")));
        }
        let x: f64 = t
            .parse()
            .map_err(|_| Error::Domain(format!("not a plain decimal: {text:?}")))?;
        if !x.is_finite() {
            return Err(Error::Domain(format!("not finite: {text:?}")));
        }
        let places = t.split_once('.').map_or(0, |(_, f)| f.len() as u32);
        let point = Interval::new(x.next_down(), x.next_up());
        let half_unit = 0.5 * 10f64.powi(-(places as i32));
        let value = point.inflate(half_unit * (1.0 + 1e-12));
        Ok(Recorded {
            text: t.to_string(),
            places,
            point,
            value,
        })
    }

    /// Half a unit in the last printed place.
    pub fn half_unit(&self) -> f64 {
        0.5 * 10f64.powi(-(self.places as i32))
    }
}
