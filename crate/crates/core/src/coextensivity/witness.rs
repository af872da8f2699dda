use crate::algebra::{quotient, FiniteAlgebra};
use crate::commutator::CommutatorEngine;
use crate::error::Result;
use crate::lattice::{self, LatticeOp};
use crate::relations::{self, BinRel, Partition};

/// Which of the two conditions on a pushed-out pair fails.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PushoutFailure {
    /// `J1 ∩ J2` differs from the base.
    Meet { meet: Partition },
    /// `(x, z)` is missing from `J1 ∘ J2`.
    Compose { missing: (usize, usize) },
}

/// A factor congruence with two distinct complements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NonUniqueComplement {
    pub factor: Partition,
    pub complements: (Partition, Partition),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MajorityLaw {
    /// `A ∩ (B ∘ C) = (A ∩ B) ∘ (A ∩ C)`
    MeetOverCompose,
    /// `A ∘ (B ∩ C) = (A ∘ B) ∩ (A ∘ C)`
    ComposeOverMeet,
}

impl MajorityLaw {
    pub fn name(self) -> &'static str {
        match self {
            MajorityLaw::MeetOverCompose => "meet-over-compose",
            MajorityLaw::ComposeOverMeet => "compose-over-meet",
        }
    }

    pub(crate) fn sides(self, a: &BinRel, b: &BinRel, c: &BinRel) -> (BinRel, BinRel) {
        match self {
            MajorityLaw::MeetOverCompose => (
                a.intersect(&b.compose(c)),
                a.intersect(b).compose(&a.intersect(c)),
            ),
            MajorityLaw::ComposeOverMeet => (
                a.compose(&b.intersect(c)),
                a.compose(b).intersect(&a.compose(c)),
            ),
        }
    }
}

/// A counterexample attached to a failing verdict. Every variant carries
/// enough data for [`Witness::confirm`] to recheck it from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// The factor pair `(f, f_complement)` pushed out along `base`: with
    /// `J1 = f ∨ base` and `J2 = f_complement ∨ base`, either
    /// `J1 ∩ J2 ≠ base` or `J1 ∘ J2 ≠ ∇`.
    Pushout {
        f: Partition,
        f_complement: Partition,
        base: Partition,
        failure: PushoutFailure,
    },
    /// Two factor pairs with no common refinement: `pair` pushed out along
    /// `base`, a member of `other`, is not a factor pair above `base`.
    Refinement {
        pair: (Partition, Partition),
        other: (Partition, Partition),
        base: Partition,
        failure: PushoutFailure,
        non_unique: Option<NonUniqueComplement>,
    },
    /// `theta` differs from `(F∘θ∘F) ∩ (F′∘θ∘F′)`.
    Factorization {
        f: Partition,
        f_complement: Partition,
        theta: Partition,
        reconstructed: BinRel,
    },
    /// `f op g` is not a factor congruence.
    NotSublattice {
        f: Partition,
        g: Partition,
        op: LatticeOp,
        result: Partition,
    },
    /// `f ∧ (g ∨ h) ≠ (f ∧ g) ∨ (f ∧ h)` among factor congruences.
    NotDistributive {
        f: Partition,
        g: Partition,
        h: Partition,
    },
    /// The equivalence closure of `f ∘ g` is not the factor congruence
    /// `f ∨ g`.
    UnionClosure {
        f: Partition,
        g: Partition,
        closure: Partition,
        join: Partition,
    },
    /// `pair` lies in exactly one of `f ∘ e` and `e ∘ f`.
    NotPermuting {
        f: Partition,
        e: Partition,
        pair: (usize, usize),
    },
    /// `pair` (in `A/f`, off the diagonal) lies in both `q(g)` and
    /// `q(g_complement)` for the canonical `q: A → A/f`.
    ImagesOverlap {
        f: Partition,
        g: Partition,
        g_complement: Partition,
        pair: (usize, usize),
    },
    /// `pair` separates the two sides of `law` at `(a, b, c)`.
    MajorityLaw {
        law: MajorityLaw,
        a: Partition,
        b: Partition,
        c: Partition,
        pair: (usize, usize),
    },
    /// `congruence = Cg(pair)` is above Δ and `[congruence, ∇] = Δ`.
    Central {
        pair: (usize, usize),
        congruence: Partition,
    },
}

fn congruences(a: &FiniteAlgebra, ps: &[&Partition]) -> Result<()> {
    ps.iter()
        .try_for_each(|p| relations::check_congruence(a, p))
}

fn factor_pair(f: &Partition, g: &Partition) -> Result<bool> {
    let (fr, gr) = (f.to_rel(), g.to_rel());
    let n = f.size();
    Ok(relations::intersect(&fr, &gr)? == BinRel::identity(n)
        && relations::compose(&fr, &gr)? == BinRel::full(n))
}

fn is_factor(a: &FiniteAlgebra, p: &Partition) -> Result<bool> {
    let con = lattice::all_congruences(a)?;
    for g in con.elements() {
        if factor_pair(p, g)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn pushout_fails(
    a: &FiniteAlgebra,
    f: &Partition,
    f2: &Partition,
    base: &Partition,
    failure: &PushoutFailure,
) -> Result<bool> {
    let j1 = relations::join(a, f, base)?.to_rel();
    let j2 = relations::join(a, f2, base)?.to_rel();
    Ok(match failure {
        PushoutFailure::Meet { meet } => {
            let m = relations::intersect(&j1, &j2)?;
            m == meet.to_rel() && m != base.to_rel()
        }
        PushoutFailure::Compose { missing } => {
            missing.0 < a.size()
                && missing.1 < a.size()
                && !relations::compose(&j1, &j2)?.contains(missing.0, missing.1)
        }
    })
}

fn in_range(n: usize, pair: (usize, usize)) -> bool {
    pair.0 < n && pair.1 < n
}

impl Witness {
    /// Rechecks the counterexample against `a` using only the relation
    /// calculus, independent of the check that produced it.
    pub fn confirm(&self, a: &FiniteAlgebra) -> Result<bool> {
        let n = a.size();
        match self {
            Witness::Pushout {
                f,
                f_complement,
                base,
                failure,
            } => {
                congruences(a, &[f, f_complement, base])?;
                Ok(factor_pair(f, f_complement)?
                    && pushout_fails(a, f, f_complement, base, failure)?)
            }
            Witness::Refinement {
                pair,
                other,
                base,
                failure,
                non_unique,
            } => {
                congruences(a, &[&pair.0, &pair.1, &other.0, &other.1])?;
                if !factor_pair(&pair.0, &pair.1)? || !factor_pair(&other.0, &other.1)? {
                    return Ok(false);
                }
                if *base != other.0 && *base != other.1 {
                    return Ok(false);
                }
                if let Some(nu) = non_unique {
                    congruences(a, &[&nu.factor, &nu.complements.0, &nu.complements.1])?;
                    if nu.complements.0 == nu.complements.1
                        || !factor_pair(&nu.factor, &nu.complements.0)?
                        || !factor_pair(&nu.factor, &nu.complements.1)?
                    {
                        return Ok(false);
                    }
                }
                pushout_fails(a, &pair.0, &pair.1, base, failure)
            }
            Witness::Factorization {
                f,
                f_complement,
                theta,
                reconstructed,
            } => {
                congruences(a, &[f, f_complement, theta])?;
                let t = theta.to_rel();
                let left = relations::compose(&f.to_rel(), &relations::compose(&t, &f.to_rel())?)?;
                let right = relations::compose(
                    &f_complement.to_rel(),
                    &relations::compose(&t, &f_complement.to_rel())?,
                )?;
                let r = relations::intersect(&left, &right)?;
                Ok(factor_pair(f, f_complement)? && r == *reconstructed && r != t)
            }
            Witness::NotSublattice { f, g, op, result } => {
                congruences(a, &[f, g])?;
                let r = match op {
                    LatticeOp::Meet => f.meet(g),
                    LatticeOp::Join => relations::join(a, f, g)?,
                };
                Ok(r == *result && is_factor(a, f)? && is_factor(a, g)? && !is_factor(a, &r)?)
            }
            Witness::NotDistributive { f, g, h } => {
                congruences(a, &[f, g, h])?;
                let lhs = f.meet(&relations::join(a, g, h)?);
                let rhs = relations::join(a, &f.meet(g), &f.meet(h))?;
                Ok(lhs != rhs && is_factor(a, f)? && is_factor(a, g)? && is_factor(a, h)?)
            }
            Witness::UnionClosure {
                f,
                g,
                closure,
                join,
            } => {
                congruences(a, &[f, g])?;
                let c = relations::union_closure(&relations::compose(&f.to_rel(), &g.to_rel())?);
                let j = relations::join(a, f, g)?;
                Ok(c == *closure && j == *join && (c != j || !is_factor(a, &c)?))
            }
            Witness::NotPermuting { f, e, pair } => {
                congruences(a, &[f, e])?;
                if !in_range(n, *pair) {
                    return Ok(false);
                }
                let fe = relations::compose(&f.to_rel(), &e.to_rel())?;
                let ef = relations::compose(&e.to_rel(), &f.to_rel())?;
                Ok(fe.contains(pair.0, pair.1) != ef.contains(pair.0, pair.1))
            }
            Witness::ImagesOverlap {
                f,
                g,
                g_complement,
                pair,
            } => {
                congruences(a, &[f, g, g_complement])?;
                let (_, q) = quotient(a, f)?;
                let m = q.target_size();
                if !in_range(m, *pair) || pair.0 == pair.1 || !factor_pair(g, g_complement)? {
                    return Ok(false);
                }
                let both = relations::intersect(
                    &relations::image(&q, &g.to_rel())?,
                    &relations::image(&q, &g_complement.to_rel())?,
                )?;
                Ok(both.contains(pair.0, pair.1))
            }
            Witness::MajorityLaw {
                law,
                a: x,
                b,
                c,
                pair,
            } => {
                congruences(a, &[x, b, c])?;
                if !in_range(n, *pair) {
                    return Ok(false);
                }
                let (l, r) = law.sides(&x.to_rel(), &b.to_rel(), &c.to_rel());
                Ok(l.contains(pair.0, pair.1) != r.contains(pair.0, pair.1))
            }
            Witness::Central { pair, congruence } => {
                if !in_range(n, *pair) || pair.0 == pair.1 {
                    return Ok(false);
                }
                let p = relations::principal(a, pair.0, pair.1)?;
                let engine = CommutatorEngine::new(a)?;
                Ok(p == *congruence && engine.commutator(&p, &Partition::full(n))?.is_identity())
            }
        }
    }
}
