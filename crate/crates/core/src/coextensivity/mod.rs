//! Decision procedures for the strict refinement property and its
//! equivalent conditions, factorable congruences, factor permutability,
//! the majority relational laws and centerlessness.
//!
//! Pushouts along surjections are quotients by congruence joins, so every
//! check here reduces to joins, meets and compositions of congruences.

mod witness;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use witness::{MajorityLaw, NonUniqueComplement, PushoutFailure, Witness};

use crate::algebra::{quotient, ElementMap, FiniteAlgebra};
use crate::commutator::{CommutatorEngine, TermSearch};
use crate::error::{Error, Result};
use crate::lattice::{
    all_congruences_with_limit, CongruenceLattice, FactorLattice, LatticeOp, DEFAULT_CON_LIMIT,
};
use crate::relations::{self, BinRel, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Srp,
    ProjCoext,
    RegCoext,
    Factorable,
    Boolean,
    CondVi,
    Majority,
    FactorPerm,
    Centerless,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Property::Srp,
        Property::ProjCoext,
        Property::RegCoext,
        Property::Factorable,
        Property::Boolean,
        Property::CondVi,
        Property::Majority,
        Property::FactorPerm,
        Property::Centerless,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Srp => "srp",
            Property::ProjCoext => "proj-coext",
            Property::RegCoext => "reg-coext",
            Property::Factorable => "factorable",
            Property::Boolean => "boolean",
            Property::CondVi => "cond-vi",
            Property::Majority => "majority",
            Property::FactorPerm => "factor-perm",
            Property::Centerless => "centerless",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// Outcome of one check. A failing verdict always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn from_witness(property: Property, witness: Option<Witness>) -> Verdict {
        Verdict {
            property,
            holds: witness.is_none(),
            witness,
            notes: Vec::new(),
        }
    }

    fn note(mut self, note: impl Into<String>) -> Verdict {
        self.notes.push(note.into());
        self
    }
}

/// Con(A) and F(A) computed once and shared by all checks on one algebra.
#[derive(Clone, Debug)]
pub struct Analysis<'a> {
    alg: &'a FiniteAlgebra,
    con: CongruenceLattice,
    factors: FactorLattice,
    rels: Vec<BinRel>,
}

pub fn has_global_support(a: &FiniteAlgebra) -> bool {
    a.size() >= 1
}

/// Full relation check `R = ∇` on congruences, via class incidence.
fn composes_to_full(f: &Partition, g: &Partition) -> Option<(usize, usize)> {
    match crate::lattice::factor_pair_defect(f, g) {
        Some(crate::lattice::FactorPairFailure::NotFull { pair }) => Some(pair),
        _ => None,
    }
}

fn first_difference(r: &BinRel, s: &BinRel) -> Option<(usize, usize)> {
    r.first_missing_from(s).or_else(|| s.first_missing_from(r))
}

impl<'a> Analysis<'a> {
    pub fn new(alg: &'a FiniteAlgebra) -> Result<Self> {
        Self::with_con_limit(alg, DEFAULT_CON_LIMIT)
    }

    pub fn with_con_limit(alg: &'a FiniteAlgebra, limit: usize) -> Result<Self> {
        if !has_global_support(alg) {
            return Err(Error::NoGlobalSupport);
        }
        let con = all_congruences_with_limit(alg, limit)?;
        let factors = FactorLattice::from_congruences(&con);
        let rels = con.elements().iter().map(Partition::to_rel).collect();
        Ok(Analysis {
            alg,
            con,
            factors,
            rels,
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.alg
    }

    pub fn congruences(&self) -> &CongruenceLattice {
        &self.con
    }

    pub fn factors(&self) -> &FactorLattice {
        &self.factors
    }

    fn rel(&self, p: &Partition) -> &BinRel {
        &self.rels[self.con.index_of(p).expect("element of Con(A)")]
    }

    fn factor_pairs(&self) -> impl Iterator<Item = (&Partition, &Partition)> + '_ {
        let e = self.factors.elements();
        self.factors
            .factor_pairs()
            .map(move |(i, j)| (&e[i], &e[j]))
    }

    /// `(f ∨ base, f2 ∨ base)` must meet in `base` and compose to ∇.
    fn pushout_failure(
        &self,
        f: &Partition,
        f2: &Partition,
        base: &Partition,
    ) -> Option<PushoutFailure> {
        let j1 = f.join(base);
        let j2 = f2.join(base);
        let meet = j1.meet(&j2);
        if meet != *base {
            return Some(PushoutFailure::Meet { meet });
        }
        composes_to_full(&j1, &j2).map(|missing| PushoutFailure::Compose { missing })
    }

    fn non_unique_complement(&self) -> Option<NonUniqueComplement> {
        let e = self.factors.elements();
        self.factors
            .non_unique_complement()
            .map(|(i, j, k)| NonUniqueComplement {
                factor: e[i].clone(),
                complements: (e[j].clone(), e[k].clone()),
            })
    }

    /// Pushing any factor pair out along any factor congruence `G` gives a
    /// factor pair above `G`.
    pub fn projection_coextensive(&self) -> Verdict {
        let witness = self.factor_pairs().find_map(|(f, f2)| {
            self.factors.elements().iter().find_map(|g| {
                self.pushout_failure(f, f2, g)
                    .map(|failure| Witness::Pushout {
                        f: f.clone(),
                        f_complement: f2.clone(),
                        base: g.clone(),
                        failure,
                    })
            })
        });
        Verdict::from_witness(Property::ProjCoext, witness)
    }

    /// Any two binary decompositions `(F, F′)`, `(G, G′)` refine each
    /// other: each `F_i ∨ G`, `F_i ∨ G′` is a factor pair above `F_i` and
    /// symmetrically.
    pub fn srp_definition(&self) -> Verdict {
        let pairs: Vec<(&Partition, &Partition)> = self.factor_pairs().collect();
        let witness = pairs.iter().find_map(|&(f, f2)| {
            pairs.iter().find_map(|&(g, g2)| {
                let sides = [
                    ((g, g2), (f, f2), f),
                    ((g, g2), (f, f2), f2),
                    ((f, f2), (g, g2), g),
                    ((f, f2), (g, g2), g2),
                ];
                sides.into_iter().find_map(|(pushed, other, base)| {
                    self.pushout_failure(pushed.0, pushed.1, base)
                        .map(|failure| Witness::Refinement {
                            pair: (pushed.0.clone(), pushed.1.clone()),
                            other: (other.0.clone(), other.1.clone()),
                            base: base.clone(),
                            failure,
                            non_unique: self.non_unique_complement(),
                        })
                })
            })
        });
        let mut v = Verdict::from_witness(Property::Srp, witness);
        if v.holds {
            v.notes.push(format!(
                "checked {} ordered pairs of binary decompositions",
                pairs.len() * pairs.len()
            ));
        }
        v
    }

    /// F(A) is a sublattice of Con(A) and Boolean, and `F ∨ G` is the
    /// equivalence closure of `F ∘ G`.
    pub fn boolean_sublattice(&self) -> Verdict {
        let e = self.factors.elements();
        if let Some((i, j, op)) = self.factors.closure_failure() {
            let result = match op {
                LatticeOp::Meet => e[i].meet(&e[j]),
                LatticeOp::Join => e[i].join(&e[j]),
            };
            return Verdict::from_witness(
                Property::Boolean,
                Some(Witness::NotSublattice {
                    f: e[i].clone(),
                    g: e[j].clone(),
                    op,
                    result,
                }),
            );
        }
        if let Some((i, j, k)) = self.factors.distributivity_failure() {
            return Verdict::from_witness(
                Property::Boolean,
                Some(Witness::NotDistributive {
                    f: e[i].clone(),
                    g: e[j].clone(),
                    h: e[k].clone(),
                }),
            )
            .note(format!(
                "F(A) has {} elements and is not distributive",
                e.len()
            ));
        }
        for f in e {
            for g in e {
                let closure = relations::union_closure(&self.rel(f).compose(self.rel(g)));
                let join = f.join(g);
                if closure != join || !self.factors.contains(&closure) {
                    return Verdict::from_witness(
                        Property::Boolean,
                        Some(Witness::UnionClosure {
                            f: f.clone(),
                            g: g.clone(),
                            closure,
                            join,
                        }),
                    );
                }
            }
        }
        Verdict::from_witness(Property::Boolean, None).note(format!(
            "F(A) is a Boolean lattice with {} elements",
            e.len()
        ))
    }

    /// For factor congruences `F`, `G` and each complement `G′` of `G`:
    /// `F ∘ G = G ∘ F` and `q(G) ∩ q(G′) = Δ` in `A/F`.
    pub fn condition_vi(&self) -> Verdict {
        let e = self.factors.elements();
        for f in e {
            let (_, q) = quotient(self.alg, f).expect("factor congruences are congruences");
            let images: Vec<BinRel> = e
                .iter()
                .map(|g| relations::image(&q, self.rel(g)).expect("canonical map is onto"))
                .collect();
            for (gi, g) in e.iter().enumerate() {
                let (fg, gf) = (
                    self.rel(f).compose(self.rel(g)),
                    self.rel(g).compose(self.rel(f)),
                );
                if let Some(pair) = first_difference(&fg, &gf) {
                    return Verdict::from_witness(
                        Property::CondVi,
                        Some(Witness::NotPermuting {
                            f: f.clone(),
                            e: g.clone(),
                            pair,
                        }),
                    );
                }
                for &gj in self.factors.complements_of(gi) {
                    let both = images[gi].intersect(&images[gj]);
                    if let Some(pair) = both.pairs().into_iter().find(|(x, y)| x != y) {
                        return Verdict::from_witness(
                            Property::CondVi,
                            Some(Witness::ImagesOverlap {
                                f: f.clone(),
                                g: g.clone(),
                                g_complement: e[gj].clone(),
                                pair,
                            }),
                        );
                    }
                }
            }
        }
        Verdict::from_witness(Property::CondVi, None)
    }

    /// Every congruence `θ` equals `(F∘θ∘F) ∩ (F′∘θ∘F′)` for every factor
    /// pair.
    pub fn factorable(&self) -> Verdict {
        let witness = self.factor_pairs().find_map(|(f, f2)| {
            let (fr, f2r) = (self.rel(f), self.rel(f2));
            self.con.elements().iter().find_map(|theta| {
                let t = self.rel(theta);
                let reconstructed = fr
                    .compose(t)
                    .compose(fr)
                    .intersect(&f2r.compose(t).compose(f2r));
                (reconstructed != *t).then(|| Witness::Factorization {
                    f: f.clone(),
                    f_complement: f2.clone(),
                    theta: theta.clone(),
                    reconstructed,
                })
            })
        });
        Verdict::from_witness(Property::Factorable, witness)
    }

    /// Pushing any factor pair out along any congruence `θ` gives a factor
    /// pair above `θ`.
    pub fn regularly_coextensive(&self) -> Verdict {
        let witness = self.factor_pairs().find_map(|(f, f2)| {
            self.con.elements().iter().find_map(|theta| {
                self.pushout_failure(f, f2, theta)
                    .map(|failure| Witness::Pushout {
                        f: f.clone(),
                        f_complement: f2.clone(),
                        base: theta.clone(),
                        failure,
                    })
            })
        });
        Verdict::from_witness(Property::RegCoext, witness)
    }

    /// Every factor congruence permutes with every congruence.
    pub fn factor_permutable(&self) -> Verdict {
        let witness = self.factors.elements().iter().find_map(|f| {
            self.con.elements().iter().find_map(|e| {
                let (fr, er) = (self.rel(f), self.rel(e));
                first_difference(&fr.compose(er), &er.compose(fr)).map(|pair| {
                    Witness::NotPermuting {
                        f: f.clone(),
                        e: e.clone(),
                        pair,
                    }
                })
            })
        });
        Verdict::from_witness(Property::FactorPerm, witness)
    }

    /// Both distributive laws between `∩` and `∘` over all triples of
    /// congruences.
    pub fn majority_laws(&self) -> Verdict {
        let c = self.con.elements();
        for law in [MajorityLaw::MeetOverCompose, MajorityLaw::ComposeOverMeet] {
            for (i, x) in self.rels.iter().enumerate() {
                for (j, y) in self.rels.iter().enumerate() {
                    for (k, z) in self.rels.iter().enumerate() {
                        let (l, r) = law.sides(x, y, z);
                        if let Some(pair) = first_difference(&l, &r) {
                            return Verdict::from_witness(
                                Property::Majority,
                                Some(Witness::MajorityLaw {
                                    law,
                                    a: c[i].clone(),
                                    b: c[j].clone(),
                                    c: c[k].clone(),
                                    pair,
                                }),
                            );
                        }
                    }
                }
            }
        }
        Verdict::from_witness(Property::Majority, None)
    }

    /// `ζ = Δ`, decided with the given engine's commutator.
    pub fn centerless_with(&self, engine: &CommutatorEngine<'_>) -> Result<Verdict> {
        let n = self.alg.size();
        let full = Partition::full(n);
        let mut witness = None;
        'search: for x in 0..n {
            for y in x + 1..n {
                let p = relations::principal(self.alg, x, y)?;
                if engine.commutator(&p, &full)?.is_identity() {
                    witness = Some(Witness::Central {
                        pair: (x, y),
                        congruence: p,
                    });
                    break 'search;
                }
            }
        }
        let mut v = Verdict::from_witness(Property::Centerless, witness);
        match engine.gate() {
            TermSearch::Found(t) => v.notes.push(format!("Mal'tsev term {t}")),
            TermSearch::Absent { functions } => v.notes.push(format!(
                "advisory: no Mal'tsev term ({functions} ternary functions, clone closed); \
                 commutator computed by the matrix construction"
            )),
            TermSearch::Unknown { functions } => v.notes.push(format!(
                "advisory: Mal'tsev term search stopped at a cap after {functions} \
                 ternary functions; commutator computed by the matrix construction"
            )),
        }
        Ok(v)
    }

    pub fn centerless(&self) -> Result<Verdict> {
        self.centerless_with(&CommutatorEngine::new(self.alg)?)
    }

    pub fn check(&self, property: Property) -> Result<Verdict> {
        Ok(match property {
            Property::Srp => self.srp_definition(),
            Property::ProjCoext => self.projection_coextensive(),
            Property::RegCoext => self.regularly_coextensive(),
            Property::Factorable => self.factorable(),
            Property::Boolean => self.boolean_sublattice(),
            Property::CondVi => self.condition_vi(),
            Property::Majority => self.majority_laws(),
            Property::FactorPerm => self.factor_permutable(),
            Property::Centerless => return self.centerless(),
        })
    }
}

pub fn check_projection_coextensive(a: &FiniteAlgebra) -> Result<Verdict> {
    Ok(Analysis::new(a)?.projection_coextensive())
}

pub fn check_srp_definition(a: &FiniteAlgebra) -> Result<Verdict> {
    Ok(Analysis::new(a)?.srp_definition())
}

pub fn check_boolean_sublattice(a: &FiniteAlgebra) -> Result<Verdict> {
    Ok(Analysis::new(a)?.boolean_sublattice())
}

pub fn check_condition_vi(a: &FiniteAlgebra) -> Result<Verdict> {
    Ok(Analysis::new(a)?.condition_vi())
}

pub fn check_factorable(a: &FiniteAlgebra) -> Result<Verdict> {
    Ok(Analysis::new(a)?.factorable())
}

pub fn check_regularly_coextensive(a: &FiniteAlgebra) -> Result<Verdict> {
    Ok(Analysis::new(a)?.regularly_coextensive())
}

pub fn check_factor_permutable(a: &FiniteAlgebra) -> Result<Verdict> {
    Ok(Analysis::new(a)?.factor_permutable())
}

pub fn check_majority_laws(a: &FiniteAlgebra) -> Result<Verdict> {
    Ok(Analysis::new(a)?.majority_laws())
}

pub fn check_centerless(a: &FiniteAlgebra) -> Result<Verdict> {
    Analysis::new(a)?.centerless()
}

/// The pushout of the quotient maps `A → A/θ` and `A → A/φ`: the quotient
/// by `θ ∨ φ` with the two induced maps.
pub fn pushout_along(
    a: &FiniteAlgebra,
    theta: &Partition,
    phi: &Partition,
) -> Result<(FiniteAlgebra, ElementMap, ElementMap)> {
    let j = relations::join(a, theta, phi)?;
    let (q, qj) = quotient(a, &j)?;
    let induced = |p: &Partition| {
        let values = p
            .representatives()
            .into_iter()
            .map(|r| qj.apply(r))
            .collect();
        ElementMap::new(q.size(), values)
    };
    Ok((q.clone(), induced(theta)?, induced(phi)?))
}
