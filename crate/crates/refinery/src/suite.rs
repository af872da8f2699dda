//! Cross-checks of the refinement characterizations over a corpus.

use rayon::prelude::*;
use refinery_core::coextensivity::{Analysis, Property, Verdict};
use refinery_core::{Error, FiniteAlgebra};
use serde::Serialize;

use crate::corpus::{generate_corpus, CorpusConfig};
use crate::format::{algebra_to_doc, AlgebraDoc, VerdictDoc};

/// Checked on every element, in this order.
pub const SUITE_PROPERTIES: [Property; 6] = [
    Property::Srp,
    Property::ProjCoext,
    Property::Boolean,
    Property::CondVi,
    Property::Factorable,
    Property::RegCoext,
];

#[derive(Clone, Debug)]
pub enum Outcome {
    Checked {
        verdicts: Vec<Verdict>,
        violations: Vec<String>,
    },
    /// The congruence cap was hit before any check ran.
    Capped(String),
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub index: usize,
    pub algebra: FiniteAlgebra,
    pub outcome: Outcome,
}

impl Entry {
    pub fn violations(&self) -> &[String] {
        match &self.outcome {
            Outcome::Checked { violations, .. } => violations,
            Outcome::Capped(_) => &[],
        }
    }

    pub fn verdict(&self, p: Property) -> Option<&Verdict> {
        match &self.outcome {
            Outcome::Checked { verdicts, .. } => verdicts.iter().find(|v| v.property == p),
            Outcome::Capped(_) => None,
        }
    }
}

/// Implications that must hold between the verdicts of one algebra, plus
/// re-confirmation of every witness.
pub fn violations(a: &FiniteAlgebra, verdicts: &[Verdict]) -> Vec<String> {
    let holds = |p: Property| verdicts.iter().find(|v| v.property == p).map(|v| v.holds);
    let mut out = Vec::new();
    let four = [
        Property::Srp,
        Property::ProjCoext,
        Property::Boolean,
        Property::CondVi,
    ]
    .map(holds);
    if four.iter().any(|h| *h != four[0]) {
        let shown: Vec<String> = [
            Property::Srp,
            Property::ProjCoext,
            Property::Boolean,
            Property::CondVi,
        ]
        .iter()
        .zip(four)
        .map(|(p, h)| format!("{p}={}", h.map_or("?".into(), |h| h.to_string())))
        .collect();
        out.push(format!("equivalence broken: {}", shown.join(", ")));
    }
    let (fact, reg, proj) = (
        holds(Property::Factorable),
        holds(Property::RegCoext),
        holds(Property::ProjCoext),
    );
    if fact != reg {
        out.push(format!("factorable={fact:?} but reg-coext={reg:?}"));
    }
    if reg == Some(true) && proj == Some(false) {
        out.push("reg-coext holds but proj-coext fails".into());
    }
    for v in verdicts {
        match (&v.witness, v.holds) {
            (None, false) => out.push(format!("{} fails without a witness", v.property)),
            (Some(w), false) => match w.confirm(a) {
                Ok(true) => {}
                Ok(false) => out.push(format!("{} witness does not confirm", v.property)),
                Err(e) => out.push(format!("{} witness errors on recheck: {e}", v.property)),
            },
            (Some(_), true) => out.push(format!("{} holds but carries a witness", v.property)),
            (None, true) => {}
        }
    }
    out
}

pub fn check_entry(index: usize, a: FiniteAlgebra, con_limit: usize) -> Result<Entry, Error> {
    let outcome = match Analysis::with_con_limit(&a, con_limit) {
        Ok(an) => {
            let verdicts: Vec<Verdict> = SUITE_PROPERTIES
                .iter()
                .map(|&p| an.check(p))
                .collect::<Result<_, _>>()?;
            let violations = violations(&a, &verdicts);
            Outcome::Checked {
                verdicts,
                violations,
            }
        }
        Err(e @ Error::CongruenceLimit { .. }) => Outcome::Capped(e.to_string()),
        Err(e) => return Err(e),
    };
    Ok(Entry {
        index,
        algebra: a,
        outcome,
    })
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub config: CorpusConfig,
    pub entries: Vec<Entry>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.violations().is_empty())
    }

    pub fn capped(&self) -> impl Iterator<Item = &Entry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.outcome, Outcome::Capped(_)))
    }

    pub fn is_clean(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn to_doc(&self) -> SuiteDoc {
        let row = |e: &Entry| RowDoc {
            index: e.index,
            name: e.algebra.name().to_string(),
            size: e.algebra.size(),
            verdicts: SUITE_PROPERTIES
                .iter()
                .filter_map(|&p| e.verdict(p).map(|v| (p.name().to_string(), v.holds)))
                .collect(),
            capped: match &e.outcome {
                Outcome::Capped(msg) => Some(msg.clone()),
                Outcome::Checked { .. } => None,
            },
        };
        SuiteDoc {
            seed: self.config.seed,
            count: self.config.count,
            max_size: self.config.max_size,
            checked: self.entries.len() - self.capped().count(),
            capped: self.capped().count(),
            failed: self.failures().count(),
            elements: self.entries.iter().map(row).collect(),
            failures: self
                .failures()
                .map(|e| FailureDump {
                    index: e.index,
                    algebra: algebra_to_doc(&e.algebra),
                    violations: e.violations().to_vec(),
                    verdicts: match &e.outcome {
                        Outcome::Checked { verdicts, .. } => {
                            verdicts.iter().map(Into::into).collect()
                        }
                        Outcome::Capped(_) => Vec::new(),
                    },
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteDoc {
    pub seed: u64,
    pub count: usize,
    pub max_size: usize,
    pub checked: usize,
    pub capped: usize,
    pub failed: usize,
    pub elements: Vec<RowDoc>,
    pub failures: Vec<FailureDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowDoc {
    pub index: usize,
    pub name: String,
    pub size: usize,
    pub verdicts: std::collections::BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capped: Option<String>,
}

/// Everything needed to reproduce a failing element by hand.
#[derive(Clone, Debug, Serialize)]
pub struct FailureDump {
    pub index: usize,
    pub algebra: AlgebraDoc,
    pub violations: Vec<String>,
    pub verdicts: Vec<VerdictDoc>,
}

/// Elements are checked in parallel; entries come back in corpus order.
pub fn run_suite(config: &CorpusConfig, con_limit: usize) -> Result<SuiteReport, Error> {
    let corpus: Vec<FiniteAlgebra> = generate_corpus(config).collect();
    let entries = corpus
        .into_par_iter()
        .enumerate()
        .map(|(i, a)| check_entry(i, a, con_limit))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport {
        config: *config,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use refinery_core::catalog;
    use refinery_core::lattice::DEFAULT_CON_LIMIT;

    #[test]
    fn pinned_set_is_clean() {
        let cfg = CorpusConfig {
            count: 0,
            ..CorpusConfig::default()
        };
        let r = run_suite(&cfg, DEFAULT_CON_LIMIT).unwrap();
        assert_eq!(r.entries.len(), catalog::pinned().len());
        assert!(r.is_clean(), "{:?}", r.failures().next());
        let klein = &r.entries[5];
        assert_eq!(klein.algebra.name(), "KleinFour");
        assert!(!klein.verdict(Property::Srp).unwrap().holds);
    }

    #[test]
    fn detects_broken_equivalence() {
        let a = catalog::klein_four();
        let an = Analysis::new(&a).unwrap();
        let mut verdicts: Vec<Verdict> = SUITE_PROPERTIES
            .iter()
            .map(|&p| an.check(p).unwrap())
            .collect();
        verdicts[0].holds = true;
        verdicts[0].witness = None;
        let v = violations(&a, &verdicts);
        assert!(v.iter().any(|s| s.starts_with("equivalence broken")));
    }

    #[test]
    fn cap_is_reported() {
        let cfg = CorpusConfig {
            count: 0,
            ..CorpusConfig::default()
        };
        let r = run_suite(&cfg, 1).unwrap();
        assert!(r.capped().count() > 0);
        assert!(r.is_clean());
    }
}
