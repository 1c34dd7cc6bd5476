//! Acceptance run. Each criterion prints one `pass`/`FAIL` line; the process
//! exits nonzero when any of them fails. Library results are compared with
//! the definition-level oracles in `support`.

mod support;

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lmconvex::constructions::{
    generate_from_subbase, preimage_structure, product_structure, quotient_structure, restricted_hull_identity,
    substructure, HullOperator, Subbase,
};
use lmconvex::convexity::{
    check_l_convexity, check_lm_fuzzy, cut_lower_structure, cut_upper_structure, lower_levels, upper_levels,
    ClassicalConvexity, DomainKind, StructureMap,
};
use lmconvex::enumerate::{
    all_maps, all_structure_maps, all_surjections, all_valid_structures, random_elem,
    random_structure, random_surjection, random_valid_structure,
};
use lmconvex::functors::{adjunction_check, cpf_transfer, iota, is_up_directed, lower_cut_family, omega, FunctorContext};
use lmconvex::gallery::{emit, entry_names, residuum, GalleryItem, UpperSetReading};
use lmconvex::suite::{run_suite, SuiteConfig};
use lmconvex::{Elem, FiniteLattice, FuzzyDomain, FuzzySet, PointSet};

use support::{carrier, elems, inf, sup, Wedges};

const SEED: u64 = 0x5EED_ACCE;
const CAP: u128 = 1_000_000;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn chain(n: usize) -> Arc<FiniteLattice> {
    Arc::new(FiniteLattice::chain(n).unwrap())
}

fn small_lattices() -> Vec<(&'static str, Arc<FiniteLattice>)> {
    vec![("chain2", chain(2)), ("chain3", chain(3)), ("diamond", Arc::new(FiniteLattice::diamond()))]
}

fn fuzzy(n: usize, l: &Arc<FiniteLattice>) -> FuzzyDomain {
    FuzzyDomain::new(carrier("x", n), l.clone()).unwrap()
}

fn indices(xs: &[Elem]) -> BTreeSet<usize> {
    xs.iter().map(|e| e.index()).collect()
}

fn families_up_to_three(es: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for i in 0..es.len() {
        out.push(vec![es[i]]);
        for j in i + 1..es.len() {
            out.push(vec![es[i], es[j]]);
            for k in j + 1..es.len() {
                out.push(vec![es[i], es[j], es[k]]);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Check {
    let start = Instant::now();
    let lattices = support::distributive_lattices(4, 10);
    let (mut pairs, mut families) = (0usize, 0usize);
    for l in &lattices {
        let w = Wedges::new(l);
        let es = elems(l);
        for &a in &es {
            for &b in &es {
                ensure!(l.wedge_below(a, b) == w.wedge(a, b), "wedge at ({}, {}) in {:?}", l.name(a), l.name(b), l.names());
                ensure!(
                    l.op_wedge_below(a, b) == w.op_wedge(a, b),
                    "op-wedge at ({}, {}) in {:?}",
                    l.name(a),
                    l.name(b),
                    l.names()
                );
                pairs += 1;
            }
        }
        for &b in &es {
            ensure!(sup(l, w.beta(b)) == b, "join of beta({}) in {:?}", l.name(b), l.names());
            ensure!(inf(l, w.alpha(b)) == b, "meet of alpha({}) in {:?}", l.name(b), l.names());
        }
        for d in families_up_to_three(&es) {
            let beta_union: BTreeSet<usize> = d.iter().flat_map(|&x| indices(w.beta(x))).collect();
            let alpha_union: BTreeSet<usize> = d.iter().flat_map(|&x| indices(w.alpha(x))).collect();
            ensure!(indices(w.beta(sup(l, &d))) == beta_union, "beta of a join in {:?}", l.names());
            ensure!(indices(w.alpha(inf(l, &d))) == alpha_union, "alpha of a meet in {:?}", l.names());
            let lib_beta = d.iter().fold(lmconvex::ElementFamily::EMPTY, |s, &x| s.union(l.beta(x)));
            let lib_alpha = d.iter().fold(lmconvex::ElementFamily::EMPTY, |s, &x| s.union(l.alpha(x)));
            ensure!(l.beta(l.join_family(d.iter().copied())) == lib_beta, "library beta of a join");
            ensure!(l.alpha(l.meet_family(d.iter().copied())) == lib_alpha, "library alpha of a meet");
            families += 1;
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:.1?}");
    Ok(format!("{} lattices, {pairs} pairs, {families} families, {took:.1?}", lattices.len()))
}

fn cut_set_identities(l: &FiniteLattice, w: &Wedges, a: &[Elem]) -> Result<(), String> {
    use support::{lower_cut, strict_cut, upper_cut};
    let n = a.len();
    let es = elems(l);
    let full = PointSet::full(n);
    let fa = FuzzySet::from_values(a.to_vec());
    let join_form: Vec<Elem> = (0..n)
        .map(|x| sup(l, &es.iter().map(|&c| if lower_cut(l, a, c).contains(x) { c } else { l.bottom() }).collect::<Vec<_>>()))
        .collect();
    let meet_form: Vec<Elem> = (0..n)
        .map(|x| inf(l, &es.iter().map(|&c| if upper_cut(w, a, c).contains(x) { l.top() } else { c }).collect::<Vec<_>>()))
        .collect();
    ensure!(join_form == a && meet_form == a, "decomposition of {a:?}");
    ensure!(fa.decompose(l).holds(), "library decomposition of {a:?}");
    for &c in &es {
        let (lower, upper, strict) = (lower_cut(l, a, c), upper_cut(w, a, c), strict_cut(w, a, c));
        ensure!(
            fa.cut_lower(l, c) == lower && fa.cut_upper(l, c) == upper && fa.cut_strict(l, c) == strict,
            "library cuts of {a:?} at {}",
            l.name(c)
        );
        let via_lower = w.beta(c).iter().fold(full, |s, &b| s.intersection(lower_cut(l, a, b)));
        let via_strict = w.beta(c).iter().fold(full, |s, &b| s.intersection(strict_cut(w, a, b)));
        let via_upper = es
            .iter()
            .filter(|&&b| w.op_wedge(b, c))
            .fold(full, |s, &b| s.intersection(upper_cut(w, a, b)));
        let strict_union = es
            .iter()
            .filter(|&&b| w.wedge(c, b))
            .fold(PointSet::EMPTY, |s, &b| s.union(lower_cut(l, a, b)));
        ensure!(
            lower == via_lower && lower == via_strict && upper == via_upper && strict == strict_union,
            "cut identities of {a:?} at {}",
            l.name(c)
        );
    }
    Ok(())
}

fn cut_family_identities(l: &FiniteLattice, w: &Wedges, fam: &[Vec<Elem>]) -> Result<(), String> {
    use support::{lower_cut, strict_cut, upper_cut};
    let n = fam[0].len();
    let full = PointSet::full(n);
    let meet = support::meet_sets(l, fam);
    let join = support::join_sets(l, fam);
    for c in elems(l) {
        let lower = fam.iter().fold(full, |s, a| s.intersection(lower_cut(l, a, c)));
        let upper = fam.iter().fold(full, |s, a| s.intersection(upper_cut(w, a, c)));
        let strict = fam.iter().fold(PointSet::EMPTY, |s, a| s.union(strict_cut(w, a, c)));
        ensure!(
            lower_cut(l, &meet, c) == lower && upper_cut(w, &meet, c) == upper && strict_cut(w, &join, c) == strict,
            "family cuts of {fam:?} at {}",
            l.name(c)
        );
    }
    Ok(())
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut sets, mut pairs, mut triples) = (0usize, 0usize, 0usize);
    for (_, l) in small_lattices() {
        let w = Wedges::new(&l);
        for n in 1..=3 {
            let all = support::all_values(&l, n);
            let sample: Vec<Vec<Elem>> = if all.len() <= 10_000 {
                all.clone()
            } else {
                (0..1_000).map(|_| all[rng.gen_range(0..all.len())].clone()).collect()
            };
            for a in &sample {
                cut_set_identities(&l, &w, a)?;
                sets += 1;
            }
            for a in &sample {
                for b in &sample {
                    cut_family_identities(&l, &w, &[a.clone(), b.clone()])?;
                    pairs += 1;
                }
            }
            for _ in 0..1_000 {
                let fam: Vec<Vec<Elem>> = (0..3).map(|_| sample[rng.gen_range(0..sample.len())].clone()).collect();
                cut_family_identities(&l, &w, &fam)?;
                triples += 1;
            }
        }
    }
    Ok(format!("{sets} fuzzy sets, {pairs} pairs, {triples} sampled triples"))
}

/// All six readings of validity must agree; returns the common verdict.
fn characterizations_agree(s: &StructureMap, wm: &Wedges) -> Result<bool, String> {
    let (l, m) = (s.lattice(), s.m());
    let n = s.carrier().len();
    let fast = check_lm_fuzzy(s).is_valid();
    let naive = support::is_valid(s);
    let lower = lower_levels(m)
        .into_iter()
        .all(|a| check_l_convexity(&cut_lower_structure(s, a).unwrap()).is_valid());
    let upper = upper_levels(m)
        .into_iter()
        .all(|a| check_l_convexity(&cut_upper_structure(s, a).unwrap()).is_valid());
    let naive_lower = elems(m)
        .into_iter()
        .filter(|&a| a != m.bottom())
        .all(|a| support::is_l_convexity(l, n, &support::lower_structure_cut(s, a)));
    let naive_upper = wm
        .alpha(m.bottom())
        .iter()
        .all(|&a| support::is_l_convexity(l, n, &support::upper_structure_cut(s, wm, a)));
    ensure!(
        [naive, lower, upper, naive_lower, naive_upper].iter().all(|&v| v == fast),
        "mismatch (checker {fast}, definition {naive}, lower cuts {lower}/{naive_lower}, upper cuts {upper}/{naive_upper}) on {}",
        lmconvex::suite::describe_structure(s)
    );
    Ok(fast)
}

fn criterion_3() -> Check {
    let ms = small_lattices();
    let l2 = chain(2);
    let (mut exhaustive, mut valid) = (0usize, 0usize);
    for (_, m) in &ms {
        let wm = Wedges::new(m);
        for n in 1..=2 {
            for s in lib(all_structure_maps(DomainKind::Fuzzy, &fuzzy(n, &l2), m, CAP))? {
                valid += characterizations_agree(&s, &wm)? as usize;
                exhaustive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let d = fuzzy(2, &chain(3));
    let wms: Vec<Wedges> = ms.iter().map(|(_, m)| Wedges::new(m)).collect();
    let mut sampled_valid = 0usize;
    for i in 0..10_000 {
        let m = &ms[i % 3].1;
        let s = match (i / 3) % 3 {
            0 => {
                let mut s = lib(random_structure(&mut rng, DomainKind::Fuzzy, &d, m, 0.5))?;
                s.set_code(d.empty_code(), m.top());
                s.set_code(d.full_code(), m.top());
                s
            }
            1 => lib(random_valid_structure(&mut rng, DomainKind::Fuzzy, &d, m))?,
            _ => {
                let mut s = lib(random_valid_structure(&mut rng, DomainKind::Fuzzy, &d, m))?;
                let code = rng.gen_range(0..d.size());
                s.set_code(code, random_elem(&mut rng, m));
                s
            }
        };
        sampled_valid += characterizations_agree(&s, &wms[i % 3])? as usize;
    }
    Ok(format!(
        "{exhaustive} maps exhaustively ({valid} valid), 10000 sampled at |X| = 2 ({sampled_valid} valid)"
    ))
}

fn valid_both(s: &StructureMap, what: &str) -> Result<(), String> {
    ensure!(check_lm_fuzzy(s).is_valid(), "{what} fails the checker: {}", lmconvex::suite::describe_structure(s));
    ensure!(support::is_valid(s), "{what} fails the axioms: {}", lmconvex::suite::describe_structure(s));
    Ok(())
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let lats = small_lattices();
    let pick = |rng: &mut ChaCha8Rng| lats[rng.gen_range(0..lats.len())].1.clone();
    let fz = DomainKind::Fuzzy;
    for _ in 0..1_000 {
        let (l, m) = (pick(&mut rng), pick(&mut rng));
        let ny = rng.gen_range(1..=2);
        let nx = rng.gen_range(ny..=2);
        let (x, y) = (carrier("x", nx), carrier("y", ny));
        let f = lib(random_surjection(&mut rng, &x, &y))?;

        let target = lib(random_valid_structure(&mut rng, fz, &FuzzyDomain::new(y.clone(), l.clone()).unwrap(), &m))?;
        let pre = lib(preimage_structure(&target, &f))?;
        valid_both(&pre, "preimage")?;
        ensure!(pre == support::naive_preimage(&target, &f), "preimage differs from its definition");

        let source = lib(random_valid_structure(&mut rng, fz, &FuzzyDomain::new(x.clone(), l.clone()).unwrap(), &m))?;
        let q = lib(quotient_structure(&source, &f))?;
        valid_both(&q, "quotient")?;
        ensure!(q == support::naive_quotient(&source, &f), "quotient differs from its definition");

        let n3 = if l.len() == 2 { 3 } else { 2 };
        let big = lib(random_valid_structure(&mut rng, fz, &fuzzy(n3, &l), &m))?;
        let y_set = PointSet(rng.gen_range(1..1u64 << n3));
        let sub = lib(substructure(&big, y_set))?;
        valid_both(&sub, "substructure")?;
        ensure!(sub == support::naive_substructure(&big, y_set), "substructure differs from its definition");

        let pl = chain(2);
        let factors: Vec<StructureMap> = (0..2)
            .map(|k| {
                let n = rng.gen_range(1..=2);
                let d = FuzzyDomain::new(carrier(&format!("p{k}"), n), pl.clone()).unwrap();
                random_valid_structure(&mut rng, fz, &d, &m).unwrap()
            })
            .collect();
        let prod = lib(product_structure(&factors, CAP))?;
        valid_both(&prod.structure, "product")?;
        for (c, pi) in factors.iter().zip(&prod.projections) {
            ensure!(support::naive_cpf(&prod.structure, c, pi), "a projection is not CPF");
        }

        let lw = [chain(2), chain(3), chain(4)][rng.gen_range(0..3)].clone();
        let ctx = lib(FunctorContext::new(lw.clone(), m.clone()))?;
        let s = lib(random_valid_structure(&mut rng, DomainKind::Crisp, &FuzzyDomain::crisp(carrier("x", 2)), &m))?;
        let w = lib(omega(&ctx, &s))?;
        valid_both(&w, "omega image")?;
        ensure!(w == support::naive_omega(&s, &lw), "omega differs from its definition");
    }

    // finest quotient and coarsest product, by enumerating every competitor
    let c2 = chain(2);
    let mut competitors = 0usize;
    for nx in 1..=2 {
        let x = carrier("x", nx);
        let sources = lib(all_valid_structures(fz, &fuzzy(nx, &c2), &c2, CAP))?;
        for ny in 1..=nx {
            let y = carrier("y", ny);
            let dy = FuzzyDomain::new(y.clone(), c2.clone()).unwrap();
            let blank = StructureMap::fuzzy(dy, c2.clone());
            let on_y: Vec<StructureMap> = support::all_maps_like(&blank).into_iter().filter(support::is_valid).collect();
            for f in all_surjections(&x, &y) {
                for c in &sources {
                    let q = support::naive_quotient(c, &f);
                    ensure!(support::naive_cpf(c, &q, &f), "quotient map is not CPF");
                    for d in &on_y {
                        if support::naive_cpf(c, d, &f) {
                            ensure!(support::pointwise_le(d, &q), "a CPF competitor is finer than the quotient");
                        }
                        competitors += 1;
                    }
                }
            }
        }
    }
    for n1 in 1..=2 {
        for n2 in 1..=2 {
            let f1 = lib(all_valid_structures(fz, &FuzzyDomain::new(carrier("p", n1), c2.clone()).unwrap(), &c2, CAP))?;
            let f2 = lib(all_valid_structures(fz, &FuzzyDomain::new(carrier("q", n2), c2.clone()).unwrap(), &c2, CAP))?;
            let mut on_product: Option<Vec<StructureMap>> = None;
            for a in &f1 {
                for b in &f2 {
                    let prod = lib(product_structure(&[a.clone(), b.clone()], CAP))?;
                    let all = on_product.get_or_insert_with(|| {
                        all_valid_structures(fz, prod.structure.domain(), &c2, CAP).unwrap()
                    });
                    for d in all.iter() {
                        let cpf = support::naive_cpf(d, a, &prod.projections[0]) && support::naive_cpf(d, b, &prod.projections[1]);
                        ensure!(cpf == support::pointwise_le(&prod.structure, d), "product is not the coarsest");
                        competitors += 1;
                    }
                }
            }
        }
    }
    Ok(format!("5 x 1000 constructions valid, {competitors} competitors enumerated"))
}

fn criterion_5() -> Check {
    let c2 = chain(2);
    let d = fuzzy(2, &c2);
    let all = lib(all_structure_maps(DomainKind::Fuzzy, &d, &c2, CAP))?;
    for phi in &all {
        let fast = generate_from_subbase(&Subbase(phi.clone()));
        ensure!(
            fast == support::naive_generated(phi),
            "generated structure differs from the meet above {}",
            lmconvex::suite::describe_structure(phi)
        );
    }
    Ok(format!("{} subbases, 0 skipped", all.len()))
}

fn criterion_6() -> Check {
    let crisp = DomainKind::Crisp;
    let mut cases = 0usize;
    // iota after omega is the identity
    for m in [chain(2), chain(3)] {
        for l in [chain(2), chain(3)] {
            let ctx = lib(FunctorContext::new(l.clone(), m.clone()))?;
            for s in lib(all_valid_structures(crisp, &FuzzyDomain::crisp(carrier("x", 2)), &m, CAP))? {
                ensure!(support::is_valid(&s), "enumerated structure is invalid");
                let w = lib(omega(&ctx, &s))?;
                ensure!(w == support::naive_omega(&s, &l), "omega differs from its definition");
                ensure!(lib(iota(&ctx, &w))? == s, "iota(omega(S)) != S for {}", lmconvex::suite::describe_structure(&s));
                ensure!(
                    support::naive_generated(&support::naive_iota_subbase(&w)) == s,
                    "the definitional iota(omega(S)) != S"
                );
                cases += 1;
            }
        }
    }
    // omega after iota is above the identity
    let c2 = chain(2);
    let ctx = lib(FunctorContext::new(c2.clone(), c2.clone()))?;
    for c in lib(all_valid_structures(DomainKind::Fuzzy, &fuzzy(2, &c2), &c2, CAP))? {
        let i = lib(iota(&ctx, &c))?;
        ensure!(i == support::naive_generated(&support::naive_iota_subbase(&c)), "iota differs from its definition");
        ensure!(support::pointwise_le(&c, &lib(omega(&ctx, &i))?), "omega(iota(C)) is not above C");
        cases += 1;
    }
    // CPF transfer and the adjunction, over every map
    for m in [chain(2), chain(3)] {
        let l = chain(2);
        let ctx = lib(FunctorContext::new(l.clone(), m.clone()))?;
        for nx in 1..=2 {
            for ny in 1..=2 {
                let (x, y) = (carrier("x", nx), carrier("y", ny));
                let sx = lib(all_valid_structures(crisp, &FuzzyDomain::crisp(x.clone()), &m, CAP))?;
                let sy = lib(all_valid_structures(crisp, &FuzzyDomain::crisp(y.clone()), &m, CAP))?;
                let cy = lib(all_valid_structures(DomainKind::Fuzzy, &FuzzyDomain::new(y.clone(), l.clone()).unwrap(), &m, CAP))?;
                for f in all_maps(&x, &y) {
                    for s in &sx {
                        let ws = support::naive_omega(s, &l);
                        for t in &sy {
                            let r = lib(cpf_transfer(&ctx, &f, s, t))?;
                            let crisp_cpf = support::naive_cpf(s, t, &f);
                            let omega_cpf = support::naive_cpf(&ws, &support::naive_omega(t, &l), &f);
                            ensure!(
                                r.fuzzifying.holds == crisp_cpf && r.omega.holds == omega_cpf && crisp_cpf == omega_cpf,
                                "CPF transfer fails for {:?}",
                                f.graph()
                            );
                            cases += 1;
                        }
                        for c in &cy {
                            let r = lib(adjunction_check(&ctx, s, c, &f))?;
                            let left = support::naive_cpf(s, &support::naive_generated(&support::naive_iota_subbase(c)), &f);
                            let right = support::naive_cpf(&ws, c, &f);
                            ensure!(r.left == left && r.right == right, "adjunction sides differ from the definitions");
                            ensure!(!left || right, "adjunction implication fails for {:?}", f.graph());
                            cases += 1;
                        }
                    }
                }
            }
        }
    }
    let start = Instant::now();
    let report = lib(run_suite(&SuiteConfig::default()))?;
    let took = start.elapsed();
    ensure!(report.passed(), "the default suite fails");
    ensure!(took < Duration::from_secs(600), "the default suite took {took:.1?}");
    Ok(format!("{cases} cases, default suite in {took:.1?}"))
}

/// Every classical convexity on `n` points, by closing under one more set at a time.
fn all_classical_convexities(n: usize) -> Vec<Vec<PointSet>> {
    let full = PointSet::full(n);
    let close = |mut members: BTreeSet<u64>| {
        loop {
            let snapshot: Vec<u64> = members.iter().copied().collect();
            let before = members.len();
            for &a in &snapshot {
                for &b in &snapshot {
                    members.insert(a & b);
                }
            }
            if members.len() == before {
                return members;
            }
        }
    };
    let start = close(BTreeSet::from([0, full.0]));
    let mut seen = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(fam) = frontier.pop() {
        for s in 0..=full.0 {
            if !fam.contains(&s) {
                let mut next = fam.clone();
                next.insert(s);
                let next = close(next);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
    }
    seen.into_iter().map(|f| f.into_iter().map(PointSet).collect()).collect()
}

fn criterion_7() -> Check {
    let mut hull_cases = 0usize;
    let mut convexities = 0usize;
    for n in 1..=4 {
        let x = carrier("x", n);
        for members in all_classical_convexities(n) {
            let co = HullOperator::new(lib(ClassicalConvexity::new(x.clone(), &members))?);
            for y in x.all_subsets() {
                for &a in &members {
                    let ay = a.intersection(y);
                    let naive = support::naive_hull(&members, x.full(), ay).intersection(y) == ay;
                    ensure!(naive, "restricted hull identity fails at A = {a:?}, Y = {y:?}");
                    ensure!(lib(restricted_hull_identity(&co, y, a))? == naive, "library hull identity differs");
                    hull_cases += 1;
                }
            }
            convexities += 1;
        }
    }
    ensure!(hull_cases >= 1_000, "only {hull_cases} cases");

    let mut directed = 0usize;
    let mut certified = 0usize;
    for l in support::distributive_lattices(3, 6) {
        let w = Wedges::new(&l);
        let es = elems(&l);
        let hypothesis = es.iter().all(|&a| {
            es.iter().all(|&b| indices(w.beta(inf(&l, &[a, b]))) == &indices(w.beta(a)) & &indices(w.beta(b)))
        });
        ensure!(hypothesis == l.check_beta_meet_hypothesis(), "beta-meet certificate differs");
        if !hypothesis {
            continue;
        }
        certified += 1;
        for n in 1..=3 {
            for a in support::all_values(&l, n) {
                let fa = FuzzySet::from_values(a.clone());
                for &b in &es {
                    let family: BTreeSet<u64> = es
                        .iter()
                        .filter(|&&c| w.wedge(b, c))
                        .map(|&c| support::lower_cut(&l, &a, c).0)
                        .collect();
                    let up = family.iter().all(|&u| family.iter().all(|&v| family.iter().any(|&t| (u | v) & !t == 0)));
                    ensure!(up, "cut family of {a:?} at {} is not up-directed", l.name(b));
                    let lib_family = lower_cut_family(&l, &fa, b);
                    ensure!(
                        lib_family.iter().map(|p| p.0).collect::<BTreeSet<_>>() == family && is_up_directed(&lib_family),
                        "library cut family differs"
                    );
                    directed += 1;
                }
            }
        }
    }
    Ok(format!(
        "{convexities} convexities, {hull_cases} hull cases; {directed} cut families over {certified} certified lattices"
    ))
}

fn criterion_8() -> Check {
    let mut entries = 0usize;
    for name in entry_names() {
        for reading in [UpperSetReading::Corrected, UpperSetReading::Literal] {
            let item = lib(emit(name, reading))?;
            ensure!(item.check().is_valid(), "{name} fails its checker");
            match &item {
                GalleryItem::Structure(s) => ensure!(support::is_valid(s), "{name} fails the axioms"),
                GalleryItem::Family(f) => {
                    let d = f.domain();
                    let sets: Vec<Vec<Elem>> = f.iter().map(|a| support::values(&a)).collect();
                    ensure!(support::is_l_convexity(d.lattice(), d.points(), &sets), "{name} is not an L-convexity");
                }
            }
            entries += 1;
        }
    }
    let mut triples = 0usize;
    let lattices = support::distributive_lattices(4, 10);
    for l in &lattices {
        let es = elems(l);
        for &a in &es {
            for &b in &es {
                let r = lib(residuum(l, a, b))?;
                ensure!(r == support::residuum(l, a, b), "residuum differs in {:?}", l.names());
                for &c in &es {
                    ensure!(l.leq(l.meet(a, c), b) == l.leq(c, r), "residuum adjunction fails in {:?}", l.names());
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{entries} gallery outputs, {triples} residuum triples on {} lattices", lattices.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("wedge relations and their families", criterion_1),
        ("cut identities", criterion_2),
        ("cut characterizations of validity", criterion_3),
        ("constructions, finest quotient, coarsest product", criterion_4),
        ("subbase fixpoint against the definitional meet", criterion_5),
        ("omega/iota laws, CPF transfer, adjunction", criterion_6),
        ("restricted hulls and up-directed cut families", criterion_7),
        ("gallery soundness and residuum", criterion_8),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout();
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let line = match &outcome {
            Ok(detail) => format!("criterion {}: pass  {name} ({detail}; {:.1?})", n + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                format!("criterion {}: FAIL  {name}: {why}", n + 1)
            }
        };
        writeln!(out, "{line}").unwrap();
    }
    if failed > 0 {
        writeln!(out, "{failed} of {} criteria failed", criteria.len()).unwrap();
        std::process::exit(1);
    }
}
