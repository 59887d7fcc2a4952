//! Integer-indexed dimension functions: a finite window of explicit values
//! plus a declared law for each unbounded side.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::rational::{format_rational, rational_from_i64, Polynomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TailSide {
    Positive,
    Negative,
}

impl fmt::Display for TailSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailSide::Positive => write!(f, "positive"),
            TailSide::Negative => write!(f, "negative"),
        }
    }
}

/// Law governing the values outside the window on one side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    Zero,
    Polynomial(Polynomial),
    /// Only user tables can leave a side undeclared; consulting it is an error.
    Undeclared,
}

impl Tail {
    /// A zero polynomial collapses to `Zero`.
    pub fn polynomial(p: Polynomial) -> Tail {
        if p.is_zero() {
            Tail::Zero
        } else {
            Tail::Polynomial(p)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Tail::Zero)
    }

    pub fn describe(&self) -> String {
        match self {
            Tail::Zero => "zero".to_string(),
            Tail::Polynomial(p) => format!("poly({p})"),
            Tail::Undeclared => "undeclared".to_string(),
        }
    }

    /// Fits the law of `f` on `start, start + step, ...` by a polynomial of
    /// degree at most `max_degree`, verified on as many extra points again.
    /// Returns `None` when the samples are not polynomial of that degree.
    pub fn fit(f: impl Fn(i64) -> u64, start: i64, step: i64, max_degree: usize) -> Option<Tail> {
        let samples: Vec<(i64, Rational)> = (0..2 * (max_degree + 1) as i64)
            .map(|i| {
                let m = start + i * step;
                (m, rational_from_i64(f(m) as i64))
            })
            .collect();
        let (fit_pts, check_pts) = samples.split_at(max_degree + 1);
        let poly = Polynomial::interpolate(fit_pts);
        if check_pts.iter().all(|(m, v)| &poly.eval(*m) == v) {
            Some(Tail::polynomial(poly))
        } else {
            None
        }
    }
}

/// Why a value could not be produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unresolved {
    Undeclared { side: TailSide, m: i64 },
    Corrupt { m: i64, value: Rational },
}

/// Half-line or interval of twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistRange {
    AtMost(i64),
    AtLeast(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDimension {
    window_lo: i64,
    window_hi: i64,
    values: BTreeMap<i64, u64>,
    pos_tail: Tail,
    neg_tail: Tail,
}

impl GradedDimension {
    /// `values` must hold exactly the keys `window_lo..=window_hi`.
    pub fn new(
        window_lo: i64,
        window_hi: i64,
        values: BTreeMap<i64, u64>,
        pos_tail: Tail,
        neg_tail: Tail,
    ) -> Result<Self, String> {
        if window_lo > window_hi {
            return Err(format!("empty window [{window_lo}, {window_hi}]"));
        }
        let expected = (window_hi - window_lo + 1) as usize;
        if values.len() != expected
            || values.keys().next() != Some(&window_lo)
            || values.keys().next_back() != Some(&window_hi)
        {
            return Err(format!(
                "values must cover every m in [{window_lo}, {window_hi}] exactly"
            ));
        }
        Ok(GradedDimension {
            window_lo,
            window_hi,
            values,
            pos_tail,
            neg_tail,
        })
    }

    pub fn from_fn(
        window_lo: i64,
        window_hi: i64,
        f: impl Fn(i64) -> u64,
        pos_tail: Tail,
        neg_tail: Tail,
    ) -> Self {
        let values = (window_lo..=window_hi).map(|m| (m, f(m))).collect();
        Self::new(window_lo, window_hi, values, pos_tail, neg_tail).expect("window is nonempty")
    }

    /// The identically zero function on `[window_lo, window_hi]`.
    pub fn zero(window_lo: i64, window_hi: i64) -> Self {
        Self::from_fn(window_lo, window_hi, |_| 0, Tail::Zero, Tail::Zero)
    }

    pub fn window_lo(&self) -> i64 {
        self.window_lo
    }

    pub fn window_hi(&self) -> i64 {
        self.window_hi
    }

    pub fn values(&self) -> &BTreeMap<i64, u64> {
        &self.values
    }

    pub fn pos_tail(&self) -> &Tail {
        &self.pos_tail
    }

    pub fn neg_tail(&self) -> &Tail {
        &self.neg_tail
    }

    pub fn set_value(&mut self, m: i64, value: u64) {
        assert!((self.window_lo..=self.window_hi).contains(&m), "m outside window");
        self.values.insert(m, value);
    }

    pub fn set_tails(&mut self, pos_tail: Tail, neg_tail: Tail) {
        self.pos_tail = pos_tail;
        self.neg_tail = neg_tail;
    }

    fn tail_for(&self, m: i64) -> (TailSide, &Tail) {
        if m > self.window_hi {
            (TailSide::Positive, &self.pos_tail)
        } else {
            (TailSide::Negative, &self.neg_tail)
        }
    }

    pub fn resolve(&self, m: i64) -> Result<u64, Unresolved> {
        if let Some(&v) = self.values.get(&m) {
            return Ok(v);
        }
        let (side, tail) = self.tail_for(m);
        match tail {
            Tail::Zero => Ok(0),
            Tail::Undeclared => Err(Unresolved::Undeclared { side, m }),
            Tail::Polynomial(p) => p
                .eval_count(m)
                .map_err(|value| Unresolved::Corrupt { m, value }),
        }
    }

    /// First `m` in `range`, walking outward from its finite end, where the
    /// value is nonzero. Unbounded stretches are settled by the tail law.
    pub fn first_nonzero(&self, range: TwistRange) -> Result<Option<(i64, u64)>, Unresolved> {
        let (start, step, tail, side, edge) = match range {
            TwistRange::AtMost(b) => (
                b,
                -1,
                &self.neg_tail,
                TailSide::Negative,
                self.window_lo,
            ),
            TwistRange::AtLeast(b) => (
                b,
                1,
                &self.pos_tail,
                TailSide::Positive,
                self.window_hi,
            ),
        };
        // Finite stretch: from `start` until just past the window edge on the walking side.
        let mut m = start;
        while (step < 0 && m >= edge) || (step > 0 && m <= edge) {
            let v = self.resolve(m)?;
            if v != 0 {
                return Ok(Some((m, v)));
            }
            m += step;
        }
        match tail {
            Tail::Zero => Ok(None),
            Tail::Undeclared => Err(Unresolved::Undeclared { side, m }),
            Tail::Polynomial(p) => {
                let degree = p.degree().unwrap_or(0) as i64;
                for i in 0..=degree {
                    let x = m + i * step;
                    let v = p
                        .eval_count(x)
                        .map_err(|value| Unresolved::Corrupt { m: x, value })?;
                    if v != 0 {
                        return Ok(Some((x, v)));
                    }
                }
                // A nonzero polynomial cannot vanish at degree + 1 points.
                unreachable!("nonzero polynomial vanished on degree + 1 points")
            }
        }
    }

    /// Violations of the structural invariants, as messages.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (side, tail, edge, dir) in [
            (TailSide::Positive, &self.pos_tail, self.window_hi, 1i64),
            (TailSide::Negative, &self.neg_tail, self.window_lo, -1i64),
        ] {
            let Tail::Polynomial(p) = tail else { continue };
            let at_edge = p.eval(edge);
            let stored = rational_from_i64(self.values[&edge] as i64);
            if at_edge != stored {
                out.push(format!(
                    "{side} tail {p} gives {} at window edge m = {edge}, stored value is {}",
                    format_rational(&at_edge),
                    self.values[&edge]
                ));
            }
            for i in 1..=10 {
                let m = edge + dir * i;
                if let Err(value) = p.eval_count(m) {
                    out.push(format!(
                        "{side} tail {p} is not a nonnegative integer at m = {m}: {}",
                        format_rational(&value)
                    ));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn linear_up() -> GradedDimension {
        // 2m + 1 for m >= 0, zero below
        let poly = Polynomial::new(vec![parse_rational("1").unwrap(), parse_rational("2").unwrap()]);
        GradedDimension::from_fn(
            -3,
            3,
            |m| if m >= 0 { (2 * m + 1) as u64 } else { 0 },
            Tail::Polynomial(poly),
            Tail::Zero,
        )
    }

    #[test]
    fn resolve_inside_and_beyond_window() {
        let g = linear_up();
        assert_eq!(g.resolve(2), Ok(5));
        assert_eq!(g.resolve(10), Ok(21));
        assert_eq!(g.resolve(-40), Ok(0));
        assert!(g.violations().is_empty());
    }

    #[test]
    fn undeclared_tail_is_reported() {
        let mut g = linear_up();
        g.set_tails(Tail::Undeclared, Tail::Zero);
        assert_eq!(
            g.resolve(4),
            Err(Unresolved::Undeclared { side: TailSide::Positive, m: 4 })
        );
        assert_eq!(g.first_nonzero(TwistRange::AtMost(-1)), Ok(None));
        assert!(g.first_nonzero(TwistRange::AtLeast(5)).is_err());
    }

    #[test]
    fn first_nonzero_walks_outward() {
        let g = linear_up();
        assert_eq!(g.first_nonzero(TwistRange::AtMost(-1)), Ok(None));
        assert_eq!(g.first_nonzero(TwistRange::AtMost(0)), Ok(Some((0, 1))));
        assert_eq!(g.first_nonzero(TwistRange::AtLeast(1)), Ok(Some((1, 3))));
        // starting beyond the window relies on the tail alone
        assert_eq!(g.first_nonzero(TwistRange::AtLeast(9)), Ok(Some((9, 19))));
    }

    #[test]
    fn polynomial_tail_vanishing_near_window() {
        // (m+3)(m+4)/2 below the window: vanishes at -3, -4, nonzero at -5
        let poly = Polynomial::interpolate(&[
            (-3, rational_from_i64(0)),
            (-4, rational_from_i64(0)),
            (-5, rational_from_i64(1)),
        ]);
        let g = GradedDimension::from_fn(-2, 2, |_| 0, Tail::Zero, Tail::Polynomial(poly));
        // stored value at the edge -2 is 0 but the polynomial gives 1 there
        assert_eq!(g.violations().len(), 1);
        assert_eq!(g.first_nonzero(TwistRange::AtMost(-1)), Ok(Some((-5, 1))));
    }

    #[test]
    fn negative_tail_values_flagged() {
        let poly = Polynomial::new(vec![rational_from_i64(0), rational_from_i64(1)]);
        let g = GradedDimension::from_fn(-1, 0, |m| m.max(0) as u64, Tail::Zero, Tail::Polynomial(poly));
        let v = g.violations();
        assert!(v.iter().any(|s| s.contains("not a nonnegative integer")));
        assert!(matches!(g.resolve(-5), Err(Unresolved::Corrupt { .. })));
    }

    #[test]
    fn window_must_be_covered() {
        let mut values = BTreeMap::new();
        values.insert(0, 1);
        assert!(GradedDimension::new(0, 1, values, Tail::Zero, Tail::Zero).is_err());
    }

    #[test]
    fn fit_detects_polynomial_and_zero() {
        assert_eq!(Tail::fit(|_| 0, 5, 1, 3), Some(Tail::Zero));
        let t = Tail::fit(|m| (m * m) as u64, 5, 1, 2).unwrap();
        match t {
            Tail::Polynomial(p) => assert_eq!(p.eval_count(11), Ok(121)),
            _ => panic!("expected polynomial"),
        }
        assert_eq!(Tail::fit(|m| 1 << m, 1, 1, 2), None);
    }
}
