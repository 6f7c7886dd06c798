use super::Interval;

/// The double nearest to π; it lies below π.
pub(crate) const PI_HI: f64 = std::f64::consts::PI;

/// π - PI_HI rounded to nearest. The exact remainder is
/// 1.2246467991473531772260659322750011792e-16.
const PI_TAIL_MID: f64 = 1.2246467991473532e-16;

/// Enclosure of π - PI_HI, one step either side of the nearest double.
pub(crate) fn pi_tail() -> Interval {
    Interval::new(PI_TAIL_MID.next_down(), PI_TAIL_MID.next_up())
}

/// A fixed interval of width one ulp containing π.
pub fn pi_enclosure() -> Interval {
    // The tail is positive and smaller than ulp(π) = 4.44e-16.
    Interval::new(PI_HI, PI_HI.next_up())
}

pub fn two_pi() -> Interval {
    pi_enclosure().scale(2.0)
}

/// 4π², the squared length threshold of the Dehn filling bound.
pub fn four_pi_squared() -> Interval {
    two_pi().square()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pi_is_enclosed() {
        let pi = pi_enclosure();
        assert!(pi.lo() <= PI && pi.hi() >= PI.next_up());
        assert_eq!(pi.hi(), pi.lo().next_up());
        let tail = pi_tail();
        assert!(tail.is_positive());
        assert!(tail.hi() < PI_HI.next_up() - PI_HI);
    }

    #[test]
    fn derived_constants() {
        assert!(two_pi().contains(std::f64::consts::TAU));
        // 4π² = 39.478417604357434475337963999504604541...
        let q = four_pi_squared();
        let below = 39.47841760435743;
        assert!(q.lo() <= below && below.next_up() <= q.hi());
        assert!(q.width() < 1e-13);
    }
}
