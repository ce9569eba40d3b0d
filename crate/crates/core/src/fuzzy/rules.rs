use std::fmt;

use super::LinguisticLabel;
use crate::{Error, Result};

/// Number of rules in a complete three-input, three-term base: 3^3.
pub const RULE_COUNT: usize = 27;

/// Antecedent rows shipped with the default rule base. Everything not listed
/// here falls back to the median of the antecedent labels; `(M, M, H) -> H`
/// is the single row that deviates from that default.
const BUILTIN_RULES: [(&str, &str); 10] = [
    ("LLL", "L"),
    ("HHH", "H"),
    ("LMM", "M"),
    ("HHM", "H"),
    ("MMM", "M"),
    ("LMH", "M"),
    ("LML", "L"),
    ("HMH", "H"),
    ("LLH", "L"),
    ("MMH", "H"),
];

/// A single inference rule: three antecedent labels (one per input) and a
/// consequent label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FuzzyRule {
    pub antecedent: (LinguisticLabel, LinguisticLabel, LinguisticLabel),
    pub consequent: LinguisticLabel,
}

impl FuzzyRule {
    pub fn new(
        antecedent: (LinguisticLabel, LinguisticLabel, LinguisticLabel),
        consequent: LinguisticLabel,
    ) -> Self {
        Self {
            antecedent,
            consequent,
        }
    }

    fn antecedent_index(&self) -> usize {
        let (a, b, c) = self.antecedent;
        a.index() * 9 + b.index() * 3 + c.index()
    }
}

impl fmt::Display for FuzzyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.antecedent;
        write!(f, "({a}, {b}, {c}) -> {}", self.consequent)
    }
}

/// Complete mapping from every antecedent combination to a consequent.
///
/// The base is total by construction: [`RuleBase::with_overrides`] fills
/// unspecified antecedents from the built-in rows and then from the
/// median-label default, while [`RuleBase::from_complete`] insists on all 27
/// rules being given explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleBase {
    consequents: [LinguisticLabel; RULE_COUNT],
}

impl RuleBase {
    /// Builds the base from explicit rules, filling the gaps first with the
    /// built-in rows and then with the median-label default.
    pub fn with_overrides(rules: &[FuzzyRule]) -> Result<Self> {
        let mut slots: [Option<LinguisticLabel>; RULE_COUNT] = [None; RULE_COUNT];
        for rule in rules {
            let ix = rule.antecedent_index();
            if slots[ix].is_some() {
                return Err(Error::RuleBase(format!("duplicate antecedent in {rule}")));
            }
            slots[ix] = Some(rule.consequent);
        }
        for rule in builtin_rules() {
            let slot = &mut slots[rule.antecedent_index()];
            if slot.is_none() {
                *slot = Some(rule.consequent);
            }
        }
        let mut consequents = [LinguisticLabel::Medium; RULE_COUNT];
        for (ix, slot) in slots.iter().enumerate() {
            let (a, b, c) = antecedent_of(ix);
            consequents[ix] = slot.unwrap_or_else(|| LinguisticLabel::median(a, b, c));
        }
        Ok(Self { consequents })
    }

    /// Builds the base from an explicit, complete list of 27 rules.
    pub fn from_complete(rules: &[FuzzyRule]) -> Result<Self> {
        let mut slots: [Option<LinguisticLabel>; RULE_COUNT] = [None; RULE_COUNT];
        for rule in rules {
            let ix = rule.antecedent_index();
            if slots[ix].is_some() {
                return Err(Error::RuleBase(format!("duplicate antecedent in {rule}")));
            }
            slots[ix] = Some(rule.consequent);
        }
        let mut consequents = [LinguisticLabel::Medium; RULE_COUNT];
        for (ix, slot) in slots.iter().enumerate() {
            let (a, b, c) = antecedent_of(ix);
            consequents[ix] = slot.ok_or_else(|| {
                Error::RuleBase(format!("missing rule for antecedent ({a}, {b}, {c})"))
            })?;
        }
        Ok(Self { consequents })
    }

    pub fn len(&self) -> usize {
        RULE_COUNT
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Consequent for a given antecedent triple.
    pub fn consequent(
        &self,
        antecedent: (LinguisticLabel, LinguisticLabel, LinguisticLabel),
    ) -> LinguisticLabel {
        self.consequents[FuzzyRule {
            antecedent,
            consequent: LinguisticLabel::Low,
        }
        .antecedent_index()]
    }

    /// All rules in canonical antecedent order.
    pub fn rules(&self) -> impl Iterator<Item = FuzzyRule> + '_ {
        self.consequents
            .iter()
            .enumerate()
            .map(|(ix, &consequent)| FuzzyRule {
                antecedent: antecedent_of(ix),
                consequent,
            })
    }

    /// Firing strength of every rule: the minimum of the three antecedent
    /// membership degrees, in canonical rule order.
    ///
    /// `degrees[i]` holds the `(mu_L, mu_M, mu_H)` triple of input `i`.
    pub fn fire(&self, degrees: &[[f64; 3]; 3]) -> [f64; RULE_COUNT] {
        let mut strengths = [0.0; RULE_COUNT];
        for (ix, strength) in strengths.iter_mut().enumerate() {
            let (a, b, c) = antecedent_of(ix);
            *strength = degrees[0][a.index()]
                .min(degrees[1][b.index()])
                .min(degrees[2][c.index()]);
        }
        strengths
    }
}

impl Default for RuleBase {
    fn default() -> Self {
        Self::with_overrides(&[]).expect("built-in rules are valid")
    }
}

fn antecedent_of(ix: usize) -> (LinguisticLabel, LinguisticLabel, LinguisticLabel) {
    debug_assert!(ix < RULE_COUNT);
    (
        LinguisticLabel::from_index(ix / 9).unwrap(),
        LinguisticLabel::from_index((ix / 3) % 3).unwrap(),
        LinguisticLabel::from_index(ix % 3).unwrap(),
    )
}

/// The built-in rows as typed rules.
pub(crate) fn builtin_rules() -> impl Iterator<Item = FuzzyRule> {
    BUILTIN_RULES.iter().map(|(ant, cons)| {
        let mut labels = ant
            .chars()
            .map(|ch| LinguisticLabel::parse_letter(&ch.to_string()).expect("built-in label"));
        FuzzyRule {
            antecedent: (
                labels.next().unwrap(),
                labels.next().unwrap(),
                labels.next().unwrap(),
            ),
            consequent: LinguisticLabel::parse_letter(cons).expect("built-in label"),
        }
    })
}
