//! One line per acceptance criterion. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use refinery::core::coextensivity::{Analysis, Property, Verdict, Witness};
use refinery::core::commutator::{find_term, CommutatorEngine, TermKind, DEFAULT_CLONE_LIMIT};
use refinery::core::decomposition::{decompose_by, verify_unique_decomposition};
use refinery::core::lattice::{all_congruences, is_factor_pair};
use refinery::core::relations::{compose, generated_congruence, image, preimage};
use refinery::core::{
    catalog, is_homomorphism, product, quotient, relabel, BinRel, ElementMap, FiniteAlgebra,
    Operation, Partition,
};
use refinery::corpus::{generate_corpus, random_algebra, CorpusConfig};
use refinery::suite::{run_suite, SuiteReport};

const CORPUS_COUNT: usize = 500;
const CORPUS_MAX_SIZE: usize = 6;
const SUITE_BUDGET: Duration = Duration::from_secs(60);
const CALCULUS_TRIPLES: usize = 1000;
const GROUP_SAMPLES: usize = 24;
const MAX_GROUP_ORDER: usize = 12;
const ORACLE_MAX_SIZE: usize = 4;

type Outcome = Result<String, String>;

fn corpus_config() -> CorpusConfig {
    CorpusConfig {
        count: CORPUS_COUNT,
        max_size: CORPUS_MAX_SIZE,
        max_ops: 2,
        seed: 0,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verdicts(report: &SuiteReport) -> Result<Vec<(&FiniteAlgebra, Vec<&Verdict>)>, String> {
    report
        .entries
        .iter()
        .map(|e| {
            let vs = [
                Property::Srp,
                Property::ProjCoext,
                Property::Boolean,
                Property::CondVi,
                Property::Factorable,
                Property::RegCoext,
            ]
            .iter()
            .map(|&p| {
                e.verdict(p)
                    .ok_or_else(|| format!("{} capped or missing {p}", e.algebra.name()))
            })
            .collect::<Result<Vec<_>, _>>()?;
            Ok((&e.algebra, vs))
        })
        .collect()
}

fn equivalence_suite(report: &SuiteReport, elapsed: Duration) -> Outcome {
    let rows = verdicts(report)?;
    ensure(rows.len() >= catalog::pinned().len() + CORPUS_COUNT, || {
        format!("only {} elements", rows.len())
    })?;
    for (a, vs) in &rows {
        let four: Vec<bool> = vs[..4].iter().map(|v| v.holds).collect();
        ensure(four.iter().all(|&h| h == four[0]), || {
            format!("{}: srp/proj/boolean/cond-vi = {four:?}", a.name())
        })?;
        for v in vs {
            match (&v.witness, v.holds) {
                (None, false) => {
                    return Err(format!(
                        "{}: {} fails without a witness",
                        a.name(),
                        v.property
                    ))
                }
                (Some(w), false) if !w.confirm(a).map_err(|e| e.to_string())? => {
                    return Err(format!(
                        "{}: {} witness does not confirm",
                        a.name(),
                        v.property
                    ))
                }
                _ => {}
            }
        }
    }
    ensure(elapsed <= SUITE_BUDGET, || {
        format!("took {elapsed:.1?}, budget {SUITE_BUDGET:?}")
    })?;
    let holding = rows.iter().filter(|(_, vs)| vs[0].holds).count();
    Ok(format!(
        "{} elements agree, {holding} hold, {elapsed:.1?}",
        rows.len()
    ))
}

fn regular_coextensivity(report: &SuiteReport) -> Outcome {
    let rows = verdicts(report)?;
    let mut regular = 0;
    for (a, vs) in &rows {
        let (proj, fact, reg) = (vs[1].holds, vs[4].holds, vs[5].holds);
        ensure(fact == reg, || {
            format!("{}: factorable={fact} reg-coext={reg}", a.name())
        })?;
        ensure(!reg || proj, || {
            format!("{}: reg-coext without proj-coext", a.name())
        })?;
        regular += reg as usize;
    }
    Ok(format!(
        "{} elements, {regular} regularly coextensive",
        rows.len()
    ))
}

fn classes(v: &[&[usize]]) -> Vec<Vec<usize>> {
    v.iter().map(|c| c.to_vec()).collect()
}

fn pinned_verdicts() -> Outcome {
    let six = [
        Property::Srp,
        Property::ProjCoext,
        Property::Boolean,
        Property::CondVi,
        Property::Factorable,
        Property::RegCoext,
    ];
    let z6 = catalog::cyclic_group(6);
    let an = Analysis::new(&z6).map_err(|e| e.to_string())?;
    for p in six {
        ensure(an.check(p).unwrap().holds, || format!("Z6 {p} fails"))?;
    }
    let fl = an.factors();
    ensure(
        fl.len() == 4 && fl.flags().is_boolean && fl.flags().complement_unique,
        || format!("Z6 F has {} elements, flags {:?}", fl.len(), fl.flags()),
    )?;
    let want: Vec<Vec<Vec<usize>>> = vec![
        classes(&[&[0], &[1], &[2], &[3], &[4], &[5]]),
        classes(&[&[0, 2, 4], &[1, 3, 5]]),
        classes(&[&[0, 3], &[1, 4], &[2, 5]]),
        classes(&[&[0, 1, 2, 3, 4, 5]]),
    ];
    let got: Vec<Vec<Vec<usize>>> = fl.elements().iter().map(Partition::classes).collect();
    let (mut g, mut w) = (got.clone(), want.clone());
    g.sort();
    w.sort();
    ensure(g == w, || format!("Z6 F = {got:?}"))?;

    let k = catalog::klein_four();
    let an = Analysis::new(&k).unwrap();
    let srp = an.srp_definition();
    ensure(!srp.holds, || "Klein srp holds".into())?;
    match &srp.witness {
        Some(Witness::Refinement {
            non_unique: Some(nu),
            ..
        }) => {
            let fl = an.factors();
            let (c1, c2) = &nu.complements;
            ensure(c1 != c2, || "complements coincide".into())?;
            for c in [c1, c2] {
                ensure(is_factor_pair(&k, &nu.factor, c).unwrap(), || {
                    format!("{c} is not a complement")
                })?;
            }
            ensure(fl.contains(&nu.factor), || "witness factor not in F".into())?;
        }
        other => return Err(format!("Klein srp witness {other:?}")),
    }
    let fl = an.factors();
    ensure(fl.len() == 5 && !fl.flags().is_distributive, || {
        format!("Klein F has {} elements, flags {:?}", fl.len(), fl.flags())
    })?;

    let s3 = catalog::symmetric_group_3();
    let engine = CommutatorEngine::new(&s3).unwrap();
    ensure(engine.gate().is_found(), || {
        "S3 Mal'tsev term not found".into()
    })?;
    ensure(engine.is_centerless().unwrap(), || {
        "S3 not centerless".into()
    })?;
    let an = Analysis::new(&s3).unwrap();
    ensure(an.centerless_with(&engine).unwrap().holds, || {
        "S3 centerless verdict fails".into()
    })?;
    ensure(an.srp_definition().holds, || "S3 srp fails".into())?;
    let a3 = Partition::from_classes(6, &[vec![0, 4, 5], vec![1, 2, 3]]).unwrap();
    let full = Partition::full(6);
    ensure(engine.commutator(&full, &full).unwrap() == a3, || {
        "[S3,S3] is not A3".into()
    })?;
    ensure(
        an.factors().len() == 2 && an.congruences().len() == 3,
        || "S3 lattices".into(),
    )?;
    Ok("Z6, KleinFour, S3 as documented".into())
}

fn majority_chain() -> Outcome {
    for l in [catalog::two_element_lattice(), catalog::boolean_lattice_4()] {
        ensure(
            find_term(&l, TermKind::Majority, DEFAULT_CLONE_LIMIT)
                .unwrap()
                .is_found(),
            || format!("{} has no majority term", l.name()),
        )?;
        let an = Analysis::new(&l).unwrap();
        for p in [
            Property::Majority,
            Property::FactorPerm,
            Property::ProjCoext,
        ] {
            ensure(an.check(p).unwrap().holds, || {
                format!("{} {p} fails", l.name())
            })?;
        }
    }
    let k = catalog::klein_four();
    let v = Analysis::new(&k).unwrap().majority_laws();
    ensure(!v.holds, || "Klein majority holds".into())?;
    match &v.witness {
        Some(w @ Witness::MajorityLaw { a, b, c, .. }) => {
            let mids = [a, b, c];
            ensure(
                mids.iter().all(|p| p.num_classes() == 2 && p.size() == 4),
                || format!("{mids:?}"),
            )?;
            ensure(a != b && b != c && a != c, || "triple not distinct".into())?;
            ensure(w.confirm(&k).unwrap(), || "witness does not confirm".into())?;
        }
        other => return Err(format!("Klein majority witness {other:?}")),
    }
    Ok("L2 and B4 pass, KleinFour fails on its mid triple".into())
}

fn random_relation(rng: &mut ChaCha8Rng, n: usize) -> BinRel {
    let density = rng.random_range(0.0..0.6);
    BinRel::from_pairs(
        n,
        (0..n * n)
            .filter(|_| rng.random_bool(density))
            .map(|k| (k / n, k % n)),
    )
}

fn relation_calculus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in 0..CALCULUS_TRIPLES {
        let a = random_algebra(&mut rng, "r", CORPUS_MAX_SIZE, 2);
        let con = all_congruences(&a).map_err(|e| e.to_string())?;
        let k = &con.elements()[rng.random_range(0..con.len())];
        let (_, f) = quotient(&a, k).unwrap();
        let e = if rng.random_bool(0.5) {
            random_relation(&mut rng, a.size())
        } else {
            con.elements()[rng.random_range(0..con.len())].to_rel()
        };
        let lhs = preimage(&f, &image(&f, &e).unwrap()).unwrap();
        let rhs = k.to_rel().compose(&e).compose(&k.to_rel());
        ensure(lhs == rhs, || format!("triple {t} on {a}: K={k}"))?;
    }
    Ok(format!("{CALCULUS_TRIPLES} triples"))
}

fn star(g: FiniteAlgebra) -> FiniteAlgebra {
    let table = g.operations()[0].table().to_vec();
    FiniteAlgebra::new(g.name(), g.size(), vec![Operation::new("*", 2, table)]).unwrap()
}

fn group_pool() -> Vec<FiniteAlgebra> {
    let z = |n| star(catalog::cyclic_group(n));
    let s3 = star(catalog::symmetric_group_3());
    let mut pool: Vec<FiniteAlgebra> = (1..=MAX_GROUP_ORDER).map(z).collect();
    pool.extend([
        catalog::klein_four(),
        s3.clone(),
        catalog::quaternion_group(),
        catalog::alternating_group_4(),
        catalog::semidirect_product(4, 2, 3).unwrap(),
        catalog::semidirect_product(5, 2, 4).unwrap(),
        catalog::semidirect_product(6, 2, 5).unwrap(),
        catalog::semidirect_product(3, 4, 2).unwrap(),
    ]);
    pool.extend([
        product(&z(2), &s3).unwrap().0,
        product(&z(2), &z(4)).unwrap().0,
        product(&z(2), &z(6)).unwrap().0,
    ]);
    pool
}

/// A group given only by its multiplication table.
struct Group<'a>(&'a FiniteAlgebra);

impl Group<'_> {
    fn n(&self) -> usize {
        self.0.size()
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        self.0.operations()[0].table()[x * self.n() + y]
    }

    fn identity(&self) -> usize {
        (0..self.n())
            .find(|&e| (0..self.n()).all(|x| self.mul(e, x) == x))
            .unwrap()
    }

    fn inverse(&self, x: usize) -> usize {
        let e = self.identity();
        (0..self.n()).find(|&y| self.mul(x, y) == e).unwrap()
    }

    fn subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.n()];
        member[self.identity()] = true;
        let mut todo = gens.to_vec();
        while let Some(g) = todo.pop() {
            if !member[g] {
                member[g] = true;
                todo.extend((0..self.n()).filter(|&h| member[h]).map(|h| self.mul(g, h)));
            }
        }
        member
    }

    fn cosets(&self, member: &[bool]) -> Partition {
        let labels: Vec<usize> = (0..self.n())
            .map(|x| {
                (0..self.n())
                    .find(|&y| member[self.mul(self.inverse(y), x)])
                    .unwrap()
            })
            .collect();
        Partition::from_labels(&labels)
    }

    fn center(&self) -> Partition {
        let n = self.n();
        let z: Vec<bool> = (0..n)
            .map(|z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        self.cosets(&z)
    }

    fn derived(&self) -> Partition {
        let n = self.n();
        let comms: Vec<usize> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y)))
            .collect();
        self.cosets(&self.subgroup(&comms))
    }
}

fn commutator_oracle() -> Outcome {
    let pool = group_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut gated = 0;
    for i in 0..GROUP_SAMPLES {
        let base = &pool[rng.random_range(0..pool.len())];
        let mut sigma: Vec<usize> = (0..base.size()).collect();
        sigma.shuffle(&mut rng);
        let g = relabel(base, &ElementMap::new(base.size(), sigma).unwrap()).unwrap();
        let oracle = Group(&g);
        let engine = CommutatorEngine::new(&g).map_err(|e| e.to_string())?;
        gated += engine.gate().is_found() as usize;
        let full = Partition::full(g.size());
        let center = engine.center().map_err(|e| e.to_string())?;
        ensure(center == oracle.center(), || {
            format!("sample {i} ({}): center {center}", base.name())
        })?;
        let derived = engine.commutator(&full, &full).map_err(|e| e.to_string())?;
        ensure(derived == oracle.derived(), || {
            format!("sample {i} ({}): [G,G] {derived}", base.name())
        })?;
    }
    Ok(format!(
        "{GROUP_SAMPLES} relabeled groups, Mal'tsev term found for {gated}"
    ))
}

fn decomposition_uniqueness(report: &SuiteReport) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for (a, vs) in verdicts(report)? {
        if !vs[1].holds {
            continue;
        }
        let mut pick = |c: &[(Partition, Partition)]| rng.random_range(0..c.len());
        let t1 = decompose_by(a, &mut pick).map_err(|e| e.to_string())?;
        let t2 = decompose_by(a, &mut pick).map_err(|e| e.to_string())?;
        for t in [&t1, &t2] {
            ensure(t.validate().unwrap(), || {
                format!("{}: invalid tree", a.name())
            })?;
        }
        let m = verify_unique_decomposition(a, &t1, &t2).map_err(|e| e.to_string())?;
        let m = m.ok_or_else(|| format!("{}: leaves do not match", a.name()))?;
        let (l1, l2) = (t1.leaves(), t2.leaves());
        for lm in &m {
            let ok = is_homomorphism(l1[lm.left], l2[lm.right], &lm.iso).unwrap()
                && lm.iso.is_bijective();
            ensure(ok, || format!("{}: bad certificate", a.name()))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} proj-coextensive elements matched"))
}

type Matrix = Vec<Vec<bool>>;

fn matrix(r: &BinRel) -> Matrix {
    let n = r.size();
    (0..n)
        .map(|x| (0..n).map(|y| r.contains(x, y)).collect())
        .collect()
}

fn naive_compose(r: &Matrix, s: &Matrix) -> Matrix {
    let n = r.len();
    let mut out = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if r[x][y] && s[y][z] {
                    out[x][z] = true;
                }
            }
        }
    }
    out
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n.pow(k as u32))
        .map(|mut i| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = i % n;
                i /= n;
            }
            t
        })
        .collect()
}

fn naive_generated(a: &FiniteAlgebra, x: usize, y: usize) -> Matrix {
    let n = a.size();
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    m[x][y] = true;
    m[y][x] = true;
    loop {
        let mut next = naive_compose(&m, &m);
        for i in 0..n {
            for j in 0..n {
                if m[i][j] {
                    next[j][i] = true;
                }
            }
        }
        for op in a.operations() {
            let ts = tuples(n, op.arity());
            for s in &ts {
                for t in &ts {
                    if s.iter().zip(t).all(|(&p, &q)| m[p][q]) {
                        next[op.apply(n, s)][op.apply(n, t)] = true;
                    }
                }
            }
        }
        for (i, row) in m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                next[i][j] |= v;
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

/// x ↦ (class in f, class in g) is a bijection onto the pairs of classes.
fn naive_is_factor_pair(f: &Partition, g: &Partition) -> bool {
    let n = f.size();
    let (cf, cg) = (f.classes(), g.classes());
    let class = |cs: &[Vec<usize>], x: usize| cs.iter().position(|c| c.contains(&x)).unwrap();
    let mut seen = vec![false; cf.len() * cg.len()];
    for x in 0..n {
        let k = class(&cf, x) * cg.len() + class(&cg, x);
        if seen[k] {
            return false;
        }
        seen[k] = true;
    }
    seen.iter().all(|&s| s)
}

fn brute_force_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut algebras = 0;
    for a in generate_corpus(&corpus_config()).filter(|a| a.size() <= ORACLE_MAX_SIZE) {
        let n = a.size();
        let con = all_congruences(&a).map_err(|e| e.to_string())?;
        for f in con.elements() {
            for g in con.elements() {
                let c = compose(&f.to_rel(), &g.to_rel()).unwrap();
                ensure(
                    matrix(&c) == naive_compose(&matrix(&f.to_rel()), &matrix(&g.to_rel())),
                    || format!("{}: compose({f}, {g})", a.name()),
                )?;
                let fast = is_factor_pair(&a, f, g).unwrap();
                ensure(fast == naive_is_factor_pair(f, g), || {
                    format!("{}: is_factor_pair({f}, {g})", a.name())
                })?;
            }
        }
        for _ in 0..4 {
            let (r, s) = (random_relation(&mut rng, n), random_relation(&mut rng, n));
            ensure(
                matrix(&compose(&r, &s).unwrap()) == naive_compose(&matrix(&r), &matrix(&s)),
                || format!("{}: compose on random relations", a.name()),
            )?;
        }
        for x in 0..n {
            for y in 0..n {
                let g = generated_congruence(&a, [(x, y)]).unwrap();
                ensure(matrix(&g.to_rel()) == naive_generated(&a, x, y), || {
                    format!("{}: generated_congruence({x}, {y})", a.name())
                })?;
            }
        }
        algebras += 1;
    }
    Ok(format!("{algebras} algebras of size <= {ORACLE_MAX_SIZE}"))
}

fn main() {
    let start = Instant::now();
    let report = run_suite(&corpus_config(), refinery::core::lattice::DEFAULT_CON_LIMIT);
    let elapsed = start.elapsed();
    let report = match report {
        Ok(r) => Some(r),
        Err(e) => {
            eprintln!("suite did not run: {e}");
            None
        }
    };
    let with_report = |f: &dyn Fn(&SuiteReport) -> Outcome| match &report {
        Some(r) => f(r),
        None => Err("suite did not run".into()),
    };
    let results: Vec<(&str, Outcome)> = vec![
        (
            "equivalence suite",
            with_report(&|r| equivalence_suite(r, elapsed)),
        ),
        (
            "factorable and regular coextensivity",
            with_report(&regular_coextensivity),
        ),
        ("pinned verdicts", pinned_verdicts()),
        ("majority chain", majority_chain()),
        ("relation calculus", relation_calculus()),
        ("commutator oracle", commutator_oracle()),
        (
            "decomposition uniqueness",
            with_report(&decomposition_uniqueness),
        ),
        ("brute-force oracles", brute_force_oracles()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
