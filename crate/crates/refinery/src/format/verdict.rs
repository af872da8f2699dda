use refinery_core::coextensivity::{
    MajorityLaw, NonUniqueComplement, Property, PushoutFailure, Verdict, Witness,
};
use refinery_core::lattice::LatticeOp;
use serde::{Deserialize, Serialize};

use super::{partition_inferred, rel_from_pairs, Classes, FormatError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub property: String,
    pub holds: bool,
    pub witness: Option<WitnessDoc>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FailureDoc {
    Meet { meet: Classes },
    Compose { missing: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonUniqueDoc {
    pub factor: Classes,
    pub complements: (Classes, Classes),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OpDoc {
    Meet,
    Join,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawDoc {
    MeetOverCompose,
    ComposeOverMeet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessDoc {
    Pushout {
        f: Classes,
        f_complement: Classes,
        base: Classes,
        failure: FailureDoc,
    },
    Refinement {
        pair: (Classes, Classes),
        other: (Classes, Classes),
        base: Classes,
        failure: FailureDoc,
        non_unique: Option<NonUniqueDoc>,
    },
    Factorization {
        f: Classes,
        f_complement: Classes,
        theta: Classes,
        reconstructed: Vec<(usize, usize)>,
    },
    NotSublattice {
        f: Classes,
        g: Classes,
        op: OpDoc,
        result: Classes,
    },
    NotDistributive {
        f: Classes,
        g: Classes,
        h: Classes,
    },
    UnionClosure {
        f: Classes,
        g: Classes,
        closure: Classes,
        join: Classes,
    },
    NotPermuting {
        f: Classes,
        e: Classes,
        pair: (usize, usize),
    },
    ImagesOverlap {
        f: Classes,
        g: Classes,
        g_complement: Classes,
        pair: (usize, usize),
    },
    MajorityLaw {
        law: LawDoc,
        a: Classes,
        b: Classes,
        c: Classes,
        pair: (usize, usize),
    },
    Central {
        pair: (usize, usize),
        congruence: Classes,
    },
}

impl From<&PushoutFailure> for FailureDoc {
    fn from(f: &PushoutFailure) -> Self {
        match f {
            PushoutFailure::Meet { meet } => FailureDoc::Meet {
                meet: meet.classes(),
            },
            PushoutFailure::Compose { missing } => FailureDoc::Compose { missing: *missing },
        }
    }
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Pushout {
                f,
                f_complement,
                base,
                failure,
            } => WitnessDoc::Pushout {
                f: f.classes(),
                f_complement: f_complement.classes(),
                base: base.classes(),
                failure: failure.into(),
            },
            Witness::Refinement {
                pair,
                other,
                base,
                failure,
                non_unique,
            } => WitnessDoc::Refinement {
                pair: (pair.0.classes(), pair.1.classes()),
                other: (other.0.classes(), other.1.classes()),
                base: base.classes(),
                failure: failure.into(),
                non_unique: non_unique.as_ref().map(|nu| NonUniqueDoc {
                    factor: nu.factor.classes(),
                    complements: (nu.complements.0.classes(), nu.complements.1.classes()),
                }),
            },
            Witness::Factorization {
                f,
                f_complement,
                theta,
                reconstructed,
            } => WitnessDoc::Factorization {
                f: f.classes(),
                f_complement: f_complement.classes(),
                theta: theta.classes(),
                reconstructed: reconstructed.pairs(),
            },
            Witness::NotSublattice { f, g, op, result } => WitnessDoc::NotSublattice {
                f: f.classes(),
                g: g.classes(),
                op: match op {
                    LatticeOp::Meet => OpDoc::Meet,
                    LatticeOp::Join => OpDoc::Join,
                },
                result: result.classes(),
            },
            Witness::NotDistributive { f, g, h } => WitnessDoc::NotDistributive {
                f: f.classes(),
                g: g.classes(),
                h: h.classes(),
            },
            Witness::UnionClosure {
                f,
                g,
                closure,
                join,
            } => WitnessDoc::UnionClosure {
                f: f.classes(),
                g: g.classes(),
                closure: closure.classes(),
                join: join.classes(),
            },
            Witness::NotPermuting { f, e, pair } => WitnessDoc::NotPermuting {
                f: f.classes(),
                e: e.classes(),
                pair: *pair,
            },
            Witness::ImagesOverlap {
                f,
                g,
                g_complement,
                pair,
            } => WitnessDoc::ImagesOverlap {
                f: f.classes(),
                g: g.classes(),
                g_complement: g_complement.classes(),
                pair: *pair,
            },
            Witness::MajorityLaw { law, a, b, c, pair } => WitnessDoc::MajorityLaw {
                law: match law {
                    MajorityLaw::MeetOverCompose => LawDoc::MeetOverCompose,
                    MajorityLaw::ComposeOverMeet => LawDoc::ComposeOverMeet,
                },
                a: a.classes(),
                b: b.classes(),
                c: c.classes(),
                pair: *pair,
            },
            Witness::Central { pair, congruence } => WitnessDoc::Central {
                pair: *pair,
                congruence: congruence.classes(),
            },
        }
    }
}

impl From<&Verdict> for VerdictDoc {
    fn from(v: &Verdict) -> Self {
        VerdictDoc {
            property: v.property.name().to_string(),
            holds: v.holds,
            witness: v.witness.as_ref().map(Into::into),
            notes: v.notes.clone(),
        }
    }
}

fn failure_from_doc(d: &FailureDoc) -> Result<PushoutFailure, FormatError> {
    Ok(match d {
        FailureDoc::Meet { meet } => PushoutFailure::Meet {
            meet: partition_inferred(meet)?,
        },
        FailureDoc::Compose { missing } => PushoutFailure::Compose { missing: *missing },
    })
}

impl TryFrom<&WitnessDoc> for Witness {
    type Error = FormatError;

    fn try_from(d: &WitnessDoc) -> Result<Self, FormatError> {
        let p = |c: &Classes| partition_inferred(c);
        Ok(match d {
            WitnessDoc::Pushout {
                f,
                f_complement,
                base,
                failure,
            } => Witness::Pushout {
                f: p(f)?,
                f_complement: p(f_complement)?,
                base: p(base)?,
                failure: failure_from_doc(failure)?,
            },
            WitnessDoc::Refinement {
                pair,
                other,
                base,
                failure,
                non_unique,
            } => Witness::Refinement {
                pair: (p(&pair.0)?, p(&pair.1)?),
                other: (p(&other.0)?, p(&other.1)?),
                base: p(base)?,
                failure: failure_from_doc(failure)?,
                non_unique: match non_unique {
                    None => None,
                    Some(nu) => Some(NonUniqueComplement {
                        factor: p(&nu.factor)?,
                        complements: (p(&nu.complements.0)?, p(&nu.complements.1)?),
                    }),
                },
            },
            WitnessDoc::Factorization {
                f,
                f_complement,
                theta,
                reconstructed,
            } => {
                let f = p(f)?;
                let reconstructed = rel_from_pairs(f.size(), reconstructed)?;
                Witness::Factorization {
                    f,
                    f_complement: p(f_complement)?,
                    theta: p(theta)?,
                    reconstructed,
                }
            }
            WitnessDoc::NotSublattice { f, g, op, result } => Witness::NotSublattice {
                f: p(f)?,
                g: p(g)?,
                op: match op {
                    OpDoc::Meet => LatticeOp::Meet,
                    OpDoc::Join => LatticeOp::Join,
                },
                result: p(result)?,
            },
            WitnessDoc::NotDistributive { f, g, h } => Witness::NotDistributive {
                f: p(f)?,
                g: p(g)?,
                h: p(h)?,
            },
            WitnessDoc::UnionClosure {
                f,
                g,
                closure,
                join,
            } => Witness::UnionClosure {
                f: p(f)?,
                g: p(g)?,
                closure: p(closure)?,
                join: p(join)?,
            },
            WitnessDoc::NotPermuting { f, e, pair } => Witness::NotPermuting {
                f: p(f)?,
                e: p(e)?,
                pair: *pair,
            },
            WitnessDoc::ImagesOverlap {
                f,
                g,
                g_complement,
                pair,
            } => Witness::ImagesOverlap {
                f: p(f)?,
                g: p(g)?,
                g_complement: p(g_complement)?,
                pair: *pair,
            },
            WitnessDoc::MajorityLaw { law, a, b, c, pair } => Witness::MajorityLaw {
                law: match law {
                    LawDoc::MeetOverCompose => MajorityLaw::MeetOverCompose,
                    LawDoc::ComposeOverMeet => MajorityLaw::ComposeOverMeet,
                },
                a: p(a)?,
                b: p(b)?,
                c: p(c)?,
                pair: *pair,
            },
            WitnessDoc::Central { pair, congruence } => Witness::Central {
                pair: *pair,
                congruence: p(congruence)?,
            },
        })
    }
}

pub fn verdict_from_doc(d: &VerdictDoc) -> Result<Verdict, FormatError> {
    let property: Property = d
        .property
        .parse()
        .map_err(|e: String| FormatError::at("property", e))?;
    let witness = match &d.witness {
        None => None,
        Some(w) => Some(Witness::try_from(w).map_err(|e| match e {
            FormatError::Invalid { path, message } => {
                let path = if path.is_empty() {
                    "witness".into()
                } else {
                    format!("witness.{path}")
                };
                FormatError::Invalid { path, message }
            }
            other => other,
        })?),
    };
    if !d.holds && witness.is_none() {
        return Err(FormatError::at(
            "witness",
            "a failing verdict needs a witness",
        ));
    }
    Ok(Verdict {
        property,
        holds: d.holds,
        witness,
        notes: d.notes.clone(),
    })
}
