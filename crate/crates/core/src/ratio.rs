use num_integer::Integer;
use std::fmt;

/// An exact rational `numerator / denominator` with a positive denominator.
///
/// Values are kept unreduced so callers can inspect the raw sums; comparison
/// and float conversion go through the reduced form, which makes equal
/// rationals convert to the same `f64` no matter how they were scaled.
#[derive(Debug, Clone, Copy)]
pub struct ExactRatio {
    pub numerator: i128,
    pub denominator: i128,
}

impl ExactRatio {
    pub fn new(numerator: i128, denominator: i128) -> Self {
        assert!(denominator != 0, "zero denominator");
        if denominator < 0 {
            Self { numerator: -numerator, denominator: -denominator }
        } else {
            Self { numerator, denominator }
        }
    }

    pub fn reduced(&self) -> Self {
        let g = self.numerator.gcd(&self.denominator);
        if g <= 1 {
            return *self;
        }
        Self { numerator: self.numerator / g, denominator: self.denominator / g }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.reduced();
        r.numerator as f64 / r.denominator as f64
    }
}

impl PartialEq for ExactRatio {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.reduced(), other.reduced());
        a.numerator == b.numerator && a.denominator == b.denominator
    }
}

impl Eq for ExactRatio {}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        write!(f, "{}/{}", r.numerator, r.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_ignores_scaling() {
        assert_eq!(ExactRatio::new(3, 4), ExactRatio::new(6, 8));
        assert_eq!(ExactRatio::new(3, 4), ExactRatio::new(-3, -4));
        assert_ne!(ExactRatio::new(3, 4), ExactRatio::new(2, 3));
        assert_eq!(ExactRatio::new(6, 8).to_f64().to_bits(), 0.75f64.to_bits());
    }

    #[test]
    fn scaled_values_convert_identically() {
        let a = ExactRatio::new(1, 3);
        let b = ExactRatio::new(7 * 1_000_003, 21 * 1_000_003);
        assert_eq!(a.to_f64().to_bits(), b.to_f64().to_bits());
    }
}
