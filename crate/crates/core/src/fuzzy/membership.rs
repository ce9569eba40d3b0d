use super::LinguisticLabel;
use crate::{Error, Result};

/// Trapezoidal membership function over `[0, 1]`.
///
/// `mu(x)` is 0 outside `[a, d]`, rises linearly on `[a, b]`, holds 1 on the
/// plateau `[b, c]` and falls linearly on `[c, d]`. Degenerate edges
/// (`a == b` or `c == d`) give vertical flanks, and `b == c` gives a triangle.
/// Construction goes through [`MembershipFunction::new`] so the ordering
/// invariant always holds; file-based configuration uses
/// [`super::PartitionConfig`], which revalidates on build.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFunction {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MembershipFunction {
    /// Builds a trapezoid, enforcing `0 <= a <= b <= c <= d <= 1`.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let ordered = 0.0 <= a && a <= b && b <= c && c <= d && d <= 1.0;
        if !ordered {
            return Err(Error::Breakpoints(a, b, c, d));
        }
        Ok(Self { a, b, c, d })
    }

    /// Triangle with peak at `b`.
    pub fn triangle(a: f64, b: f64, d: f64) -> Result<Self> {
        Self::new(a, b, b, d)
    }

    pub fn breakpoints(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d)
    }

    /// Midpoint of the plateau, used to order the terms of a partition.
    pub fn peak(&self) -> f64 {
        (self.b + self.c) / 2.0
    }

    /// Membership degree of `x`, which must lie in `[0, 1]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        check_unit("membership input", x)?;
        Ok(self.mu(x))
    }

    /// Unchecked evaluation; callers guarantee `x` is in `[0, 1]`.
    pub(crate) fn mu(&self, x: f64) -> f64 {
        if x < self.a || x > self.d {
            return 0.0;
        }
        // Plateau first so zero-width flanks (a == b, c == d) hit 1 exactly.
        if x >= self.b && x <= self.c {
            return 1.0;
        }
        if x < self.b {
            (x - self.a) / (self.b - self.a)
        } else {
            (self.d - x) / (self.d - self.c)
        }
    }
}

/// One membership function per linguistic term.
///
/// The default is tuned so that the crisp output of the full inference
/// pipeline is monotone when the first input sweeps `[0, 1]` with the other
/// two held at mid and high scores, which also keeps the Low/Medium/High
/// bands well separated for threshold classification. All breakpoints are
/// configurable through [`super::EngineConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyPartition {
    pub low: MembershipFunction,
    pub medium: MembershipFunction,
    pub high: MembershipFunction,
}

impl FuzzyPartition {
    pub fn new(
        low: MembershipFunction,
        medium: MembershipFunction,
        high: MembershipFunction,
    ) -> Result<Self> {
        let partition = Self { low, medium, high };
        partition.validate()?;
        Ok(partition)
    }

    fn validate(&self) -> Result<()> {
        if !(self.low.peak() < self.medium.peak() && self.medium.peak() < self.high.peak()) {
            return Err(Error::Partition(
                "term peaks must be strictly increasing Low < Medium < High".into(),
            ));
        }
        // Coverage: some term must be active everywhere on the unit interval.
        const PROBES: usize = 1000;
        for i in 0..=PROBES {
            let x = i as f64 / PROBES as f64;
            if self.low.mu(x) + self.medium.mu(x) + self.high.mu(x) <= 0.0 {
                return Err(Error::Partition(format!("no term covers x = {x}")));
            }
        }
        Ok(())
    }

    pub fn term(&self, label: LinguisticLabel) -> &MembershipFunction {
        match label {
            LinguisticLabel::Low => &self.low,
            LinguisticLabel::Medium => &self.medium,
            LinguisticLabel::High => &self.high,
        }
    }

    /// Membership degrees `(mu_L, mu_M, mu_H)` of a crisp score.
    pub fn fuzzify(&self, x: f64) -> Result<[f64; 3]> {
        check_unit("fuzzification input", x)?;
        Ok([self.low.mu(x), self.medium.mu(x), self.high.mu(x)])
    }

    /// Label with the highest membership at `x`; ties go to Medium.
    pub fn label_of(&self, x: f64) -> LinguisticLabel {
        let degrees = [self.low.mu(x), self.medium.mu(x), self.high.mu(x)];
        let best = degrees[0].max(degrees[1]).max(degrees[2]);
        if degrees[1] >= best {
            LinguisticLabel::Medium
        } else if degrees[0] >= best {
            LinguisticLabel::Low
        } else {
            LinguisticLabel::High
        }
    }
}

impl Default for FuzzyPartition {
    fn default() -> Self {
        Self {
            low: MembershipFunction::new(0.0, 0.0, 0.0, 0.5).expect("static breakpoints"),
            medium: MembershipFunction::new(0.35, 0.5, 0.7, 0.85).expect("static breakpoints"),
            high: MembershipFunction::new(0.5, 0.7, 1.0, 1.0).expect("static breakpoints"),
        }
    }
}

pub(crate) fn check_unit(what: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain { what, value: x })
    }
}
