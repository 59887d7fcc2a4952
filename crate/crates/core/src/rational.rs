//! Exact rationals and univariate polynomials over them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// Parses `"a"` or `"a/b"` (optional sign on `a`, `b` nonzero).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats in lowest terms as `"a"` or `"a/b"` with positive `b`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn rational_from_i64(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Polynomial in one integer variable, coefficients in ascending degree.
/// Trailing zero coefficients are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> Rational {
        let x = rational_from_i64(x);
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    /// Evaluates and returns the value as `u64` if it is a nonnegative integer.
    pub fn eval_count(&self, x: i64) -> std::result::Result<u64, Rational> {
        let value = self.eval(x);
        if value.is_integer() && !value.is_negative() {
            value.to_integer().to_u64().ok_or(value)
        } else {
            Err(value)
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                a - b
            })
            .collect();
        Polynomial::new(coeffs)
    }

    /// Lagrange interpolation through `(x_i, y_i)`; the `x_i` must be distinct.
    pub fn interpolate(points: &[(i64, Rational)]) -> Polynomial {
        let mut result = vec![Rational::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let xj_r = rational_from_i64(*xj);
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (d, c) in basis.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * &xj_r;
                }
                basis = next;
                denom *= rational_from_i64(xi - xj);
            }
            let scale = yi / denom;
            for (d, c) in basis.iter().enumerate() {
                result[d] += c * &scale;
            }
        }
        Polynomial::new(result)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = format_rational(&abs);
            match d {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if d == 1 {
                        write!(f, "m")?;
                    } else {
                        write!(f, "m^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Binomial coefficient `C(n, k)` for `n, k >= 0`; zero when `k > n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i);
        acc = acc.div_floor(&BigInt::from(i + 1));
    }
    acc.to_u64().expect("binomial coefficient exceeds u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert!(parse_rational("1.5").is_none());
    }

    #[test]
    fn interpolation_recovers_binomial() {
        // C(m + 2, 2) = (m^2 + 3m + 2) / 2
        let pts: Vec<_> = (0..3)
            .map(|m| (m, rational_from_i64(binomial(m + 2, 2) as i64)))
            .collect();
        let p = Polynomial::interpolate(&pts);
        assert_eq!(p.degree(), Some(2));
        for m in 0..20 {
            assert_eq!(p.eval_count(m).unwrap(), binomial(m + 2, 2));
        }
        assert_eq!(p.to_string(), "1/2*m^2 + 3/2*m + 1");
    }

    #[test]
    fn zero_polynomial_trims() {
        let p = Polynomial::new(vec![Rational::zero(), Rational::zero()]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert!(Polynomial::interpolate(&[(1, Rational::zero()), (2, Rational::zero())]).is_zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(-1, 0), 0);
    }
}
