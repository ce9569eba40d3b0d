use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Linguistic trust level, totally ordered `Low < Medium < High`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LinguisticLabel {
    Low,
    Medium,
    High,
}

impl LinguisticLabel {
    pub const ALL: [LinguisticLabel; 3] = [
        LinguisticLabel::Low,
        LinguisticLabel::Medium,
        LinguisticLabel::High,
    ];

    /// Ordinal position: Low = 0, Medium = 1, High = 2.
    pub fn index(self) -> usize {
        match self {
            LinguisticLabel::Low => 0,
            LinguisticLabel::Medium => 1,
            LinguisticLabel::High => 2,
        }
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    /// Single-letter form used in rule files and CSV output.
    pub fn letter(self) -> &'static str {
        match self {
            LinguisticLabel::Low => "L",
            LinguisticLabel::Medium => "M",
            LinguisticLabel::High => "H",
        }
    }

    /// Parses the single-letter form (`"L"`, `"M"`, `"H"`).
    pub fn parse_letter(s: &str) -> Result<Self> {
        match s {
            "L" => Ok(LinguisticLabel::Low),
            "M" => Ok(LinguisticLabel::Medium),
            "H" => Ok(LinguisticLabel::High),
            other => Err(Error::Config(format!(
                "unknown linguistic label `{other}` (expected L, M or H)"
            ))),
        }
    }

    /// Median of three labels under the `Low < Medium < High` order.
    pub fn median(a: Self, b: Self, c: Self) -> Self {
        let mut ix = [a.index(), b.index(), c.index()];
        ix.sort_unstable();
        Self::from_index(ix[1]).expect("median index is always valid")
    }
}

impl fmt::Display for LinguisticLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}
