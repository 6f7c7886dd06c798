//! Directed rounding emulated on top of round-to-nearest.
//!
//! Each operation computes the native result and then recovers the exact
//! rounding error with an error-free transformation (TwoSum, or an FMA
//! residual for products, quotients and square roots). The sign of that error
//! tells us which neighbour of the native result bounds the exact value, so an
//! exact result is never widened and an inexact one moves by exactly one
//! representable step.
//!
//! The transformations are exact only away from overflow and gradual
//! underflow. Outside that range we fall back to an unconditional one-step
//! widening, which is always sound for a correctly rounded operation.

/// Below this magnitude an FMA residual may itself be rounded.
const TINY: f64 = 1.0e-280;

#[inline]
fn widen(x: f64) -> (f64, f64) {
    (x.next_down(), x.next_up())
}

#[inline]
fn from_error(x: f64, err: f64) -> (f64, f64) {
    if err > 0.0 {
        (x, x.next_up())
    } else if err < 0.0 {
        (x.next_down(), x)
    } else {
        (x, x)
    }
}

#[inline]
fn non_finite(x: f64) -> (f64, f64) {
    // Overflowed results keep the correct side of f64::MAX.
    if x == f64::INFINITY {
        (f64::MAX, f64::INFINITY)
    } else if x == f64::NEG_INFINITY {
        (f64::NEG_INFINITY, f64::MIN)
    } else {
        (x, x)
    }
}

/// Knuth's TwoSum: `a + b == s + err` exactly.
#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// `a * b == p + err` exactly, barring underflow.
#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Lower and upper roundings of `a + b`.
pub(crate) fn add(a: f64, b: f64) -> (f64, f64) {
    let (s, err) = two_sum(a, b);
    if !s.is_finite() {
        return non_finite(s);
    }
    from_error(s, err)
}

pub(crate) fn sub(a: f64, b: f64) -> (f64, f64) {
    add(a, -b)
}

pub(crate) fn mul(a: f64, b: f64) -> (f64, f64) {
    if a == 0.0 || b == 0.0 {
        return (0.0, 0.0);
    }
    let (p, err) = two_prod(a, b);
    if !p.is_finite() {
        return non_finite(p);
    }
    if p.abs() < TINY {
        return widen(p);
    }
    from_error(p, err)
}

pub(crate) fn div(a: f64, b: f64) -> (f64, f64) {
    if a == 0.0 {
        return (0.0, 0.0);
    }
    let q = a / b;
    if !q.is_finite() {
        return non_finite(q);
    }
    if q.abs() < TINY || a.abs() < TINY {
        return widen(q);
    }
    // a - q*b, exact; the exact quotient exceeds q iff this has the sign of b.
    let r = (-q).mul_add(b, a);
    from_error(q, if b > 0.0 { r } else { -r })
}

pub(crate) fn sqrt(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0);
    }
    let s = x.sqrt();
    if !s.is_finite() {
        return non_finite(s);
    }
    if x < TINY {
        return widen(s);
    }
    let r = (-s).mul_add(s, x);
    from_error(s, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_operations_are_not_widened() {
        assert_eq!(add(1.0, 2.0), (3.0, 3.0));
        assert_eq!(mul(1.5, 4.0), (6.0, 6.0));
        assert_eq!(div(1.0, 4.0), (0.25, 0.25));
        assert_eq!(sqrt(4.0), (2.0, 2.0));
    }

    #[test]
    fn inexact_operations_bracket_by_one_step() {
        let (lo, hi) = add(1.0, 1e-20);
        assert_eq!(lo, 1.0);
        assert_eq!(hi, 1.0f64.next_up());

        let (lo, hi) = div(1.0, 3.0);
        assert_eq!(hi, lo.next_up());
        // 3 * lo < 1 < 3 * hi in exact arithmetic.
        assert!(3.0f64.mul_add(lo, -1.0) < 0.0);
        assert!(3.0f64.mul_add(hi, -1.0) > 0.0);

        let (lo, hi) = sqrt(2.0);
        assert_eq!(hi, lo.next_up());
        assert!(lo.mul_add(lo, -2.0) < 0.0);
        assert!(hi.mul_add(hi, -2.0) > 0.0);
    }

    #[test]
    fn negative_divisor_flips_direction() {
        let (lo, hi) = div(1.0, -3.0);
        assert!(lo < hi);
        assert!((-3.0f64).mul_add(lo, -1.0) > 0.0);
        assert!((-3.0f64).mul_add(hi, -1.0) < 0.0);
    }

    #[test]
    fn overflow_keeps_the_finite_side() {
        assert_eq!(add(f64::MAX, f64::MAX), (f64::MAX, f64::INFINITY));
        assert_eq!(mul(-f64::MAX, 2.0), (f64::NEG_INFINITY, f64::MIN));
    }
}
