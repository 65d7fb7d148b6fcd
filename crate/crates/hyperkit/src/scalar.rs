//! Exact rational scalars and rational snapping of floating-point values.
//!
//! Structure constants, Haar weights and twisted-table coefficients all live
//! in `Scalar` (arbitrary-precision rationals, always in reduced form).
//! Character values are complex floats; `snap` recovers exact rationals from
//! them when one with a small denominator is within tolerance.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

pub use num::complex::Complex64;

/// Exact rational scalar. `BigRational` keeps itself reduced with a positive
/// denominator, which is exactly the canonical form we require.
pub type Scalar = BigRational;

pub fn rat(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Scalar {
    Scalar::from(BigInt::from(num))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().expect("rational out of f64 range")
}

/// Canonical `num/den` string, always with an explicit denominator.
pub fn format_rational(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Scalar, String> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer: BigInt = n
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in rational {text:?}"))?;
    let denom: BigInt = d
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in rational {text:?}"))?;
    if denom.is_zero() {
        return Err(format!("zero denominator in rational {text:?}"));
    }
    Ok(Scalar::new(numer, denom))
}

/// Tolerances for recovering rationals from floating-point values.
#[derive(Debug, Clone, Copy)]
pub struct SnapConfig {
    pub tol: f64,
    pub max_denominator: u64,
}

impl Default for SnapConfig {
    fn default() -> Self {
        SnapConfig {
            tol: 1e-9,
            max_denominator: 4096,
        }
    }
}

impl SnapConfig {
    /// Nearest rational with denominator within the bound, if it lies inside
    /// the tolerance. Stern-Brocot descent for the best bounded approximation.
    pub fn snap(&self, x: f64) -> Option<Scalar> {
        if !x.is_finite() {
            return None;
        }
        let negative = x < 0.0;
        let x_abs = x.abs();
        let whole = x_abs.floor();
        if whole > 1e15 {
            return None;
        }
        let frac = x_abs - whole;
        let (mut lo, mut hi) = ((0u64, 1u64), (1u64, 1u64));
        let mut best = if frac < 0.5 { lo } else { hi };
        loop {
            let med = (lo.0 + hi.0, lo.1 + hi.1);
            if med.1 > self.max_denominator {
                break;
            }
            let med_val = med.0 as f64 / med.1 as f64;
            if (med_val - frac).abs() < (best.0 as f64 / best.1 as f64 - frac).abs() {
                best = med;
            }
            if med_val < frac {
                lo = med;
            } else if med_val > frac {
                hi = med;
            } else {
                break;
            }
        }
        let approx = whole + best.0 as f64 / best.1 as f64;
        if (approx - x_abs).abs() > self.tol {
            return None;
        }
        let mut value = Scalar::from(BigInt::from(whole as i64))
            + Scalar::new(BigInt::from(best.0), BigInt::from(best.1));
        if negative {
            value = -value;
        }
        Some(value)
    }

    /// Snaps a complex value whose imaginary part must vanish.
    pub fn snap_real(&self, z: Complex64) -> Option<Scalar> {
        if z.im.abs() > self.tol {
            return None;
        }
        self.snap(z.re)
    }
}

/// A quantity that is exact when every ingredient snapped, floating otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    Exact(Scalar),
    Approx(f64),
}

impl Weight {
    pub fn as_f64(&self) -> f64 {
        match self {
            Weight::Exact(s) => to_f64(s),
            Weight::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Scalar> {
        match self {
            Weight::Exact(s) => Some(s),
            Weight::Approx(_) => None,
        }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a + b),
            _ => Weight::Approx(self.as_f64() + other.as_f64()),
        }
    }

    pub fn mul_int(&self, n: u64) -> Weight {
        match self {
            Weight::Exact(a) => Weight::Exact(a * Scalar::from(BigInt::from(n))),
            Weight::Approx(x) => Weight::Approx(x * n as f64),
        }
    }

    /// self / other as an exact rational when both sides are exact.
    pub fn ratio(&self, other: &Weight) -> Weight {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) if !b.is_zero() => Weight::Exact(a / b),
            _ => Weight::Approx(self.as_f64() / other.as_f64()),
        }
    }
}

pub fn scalar_is_nonneg(s: &Scalar) -> bool {
    !s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let s = parse_rational("6/8").unwrap();
        assert_eq!(s, rat(3, 4));
        assert_eq!(format_rational(&s), "3/4");
        assert_eq!(parse_rational("-2").unwrap(), rat_int(-2));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn snap_recovers_small_denominators() {
        let cfg = SnapConfig::default();
        assert_eq!(cfg.snap(0.25).unwrap(), rat(1, 4));
        assert_eq!(cfg.snap(-2.0 / 3.0 + 1e-12).unwrap(), rat(-2, 3));
        assert_eq!(cfg.snap(5.0).unwrap(), rat_int(5));
        assert!(cfg.snap(0.1234567891).is_none());
        assert!(cfg.snap(f64::NAN).is_none());
    }

    #[test]
    fn snap_respects_denominator_bound() {
        let cfg = SnapConfig {
            tol: 1e-9,
            max_denominator: 10,
        };
        assert!(cfg.snap(1.0 / 64.0).is_none());
        assert_eq!(cfg.snap(1.0 / 8.0).unwrap(), rat(1, 8));
    }
}
