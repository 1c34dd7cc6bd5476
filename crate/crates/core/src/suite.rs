//! The property suite run by `lmconvex theorems`.
//!
//! Every check enumerates small instances exhaustively where the count fits
//! under [`SuiteConfig::exhaustive_cap`] and falls back to a seeded sample
//! otherwise. Each check draws from its own RNG stream, so adding or removing
//! a check never shifts the instances seen by the others.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    generate_from_subbase, preimage_structure, product_structure, quotient_structure,
    restricted_hull_identity, restricted_l_hull_identity, substructure, HullOperator, Subbase,
    DEFAULT_PRODUCT_BUDGET,
};
use crate::convexity::{
    check_classical, check_l_convexity, check_lm_fuzzy, check_m_fuzzifying, cut_lower_structure,
    cut_upper_structure, lower_levels, meet_structures, structure_from_lower_cuts,
    structure_from_upper_cuts, upper_levels, DomainKind, FuzzyFamily, LConvexity, StructureMap,
    Witness,
};
use crate::enumerate::{
    all_maps, all_structure_maps, all_surjections, all_valid_structures, distributive_lattices,
    random_classical_convexity, random_fuzzy_set, random_interval_operator, random_map,
    random_structure, random_surjection, random_valid_structure,
};
use crate::error::{Error, Result};
use crate::functors::{
    adjunction_check, cpf_transfer, iota, is_up_directed, lower_cut_family, omega, FunctorContext,
};
use crate::fuzzy::{Carrier, FuzzyDomain, FuzzySet, PointSet};
use crate::gallery::{
    emit, entry_names, interval_degree_structure, interval_l_convexity, residuum, UpperSetReading,
};
use crate::lattice::{ElementFamily, FiniteLattice};
use crate::morphisms::{
    cpf_cut_equivalence, is_convex_to_convex, is_cpf, is_cpf_via_preimage, is_quotient_function,
    StructuredSpacePair,
};
use crate::oracle;

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_points: usize,
    pub lattices: Vec<String>,
    pub seed: u64,
    /// Also cross-check against the brute-force oracles.
    pub oracle: bool,
    /// Random instances per sampled check.
    pub samples: usize,
    /// Largest enumeration run exhaustively.
    pub exhaustive_cap: u128,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_points: 2,
            lattices: vec!["2".into(), "chain3".into(), "diamond".into()],
            seed: DEFAULT_SEED,
            oracle: false,
            samples: 1000,
            exhaustive_cap: 100_000,
        }
    }
}

/// The outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub skipped: u64,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

type CheckFn = fn(&Env, &mut Tally) -> Result<()>;

/// Every check, in run order, with a one-line description.
const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("wedge-closed-form", "closed-form wedge relations match the subset definitions; beta/alpha recover elements and turn joins/meets into unions", check_wedge),
    ("cut-identities", "fuzzy-set decompositions and cut identities", check_cut_identities),
    ("cut-characterization", "a degree map is a convexity iff its lower cuts are, iff its upper cuts are", check_cut_characterization),
    ("cut-monotonicity", "lower and upper structure cuts shrink along beta and alpha", check_cut_monotonicity),
    ("special-cases", "L = 2 and M = 2 collapse to the M-fuzzifying and L-convexity checkers", check_special_cases),
    ("meet-of-convexities", "pointwise meets are convexities and greatest lower bounds", check_meets),
    ("cut-reconstruction", "rebuilding a structure from its cuts", check_reconstruction),
    ("constructions-valid", "preimage, quotient, substructure and product outputs are convexities", check_constructions),
    ("quotient-finest", "the quotient is the finest structure making the map CPF", check_quotient_finest),
    ("product-coarsest", "the product is the coarsest structure making all projections CPF", check_product_coarsest),
    ("subbase-fixpoint", "subbase generation equals the meet of all convexities above the subbase", check_subbase),
    ("cpf-forms", "CPF via degrees, via preimage structures and via cuts agree", check_cpf_forms),
    ("cpf-composition", "CPF maps compose; quotient maps reflect CPF", check_cpf_composition),
    ("convex-to-convex", "surjective CPF convex-to-convex maps are quotient maps", check_convex_to_convex),
    ("omega-iota", "omega yields convexities, iota inverts omega, omega after iota is above the identity, both are monotone", check_omega_iota),
    ("cpf-transfer", "M-fuzzifying CPF iff (L,M)-fuzzy CPF between omega images", check_cpf_transfer),
    ("adjunction", "CPF into iota(D) implies CPF out of omega(S); the converse is reported", check_adjunction),
    ("restricted-hull", "co(A|Y)|Y = A|Y for convex A", check_restricted_hull),
    ("up-directed", "lower-cut families {A_[c] : b in beta(c)} are up-directed", check_up_directed),
    ("gallery", "gallery structures pass their checkers and the interval structure collapses at M = 2", check_gallery),
    ("residuum", "c <= a -> b iff a /\\ c <= b", check_residuum),
];

/// Check names and descriptions, in run order.
pub fn check_names() -> impl Iterator<Item = (&'static str, &'static str)> {
    CHECKS.iter().map(|&(n, d, _)| (n, d))
}

/// Runs the whole suite.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    run_checks(cfg, |_| true)
}

/// Runs the checks whose names satisfy `select`.
pub fn run_checks(cfg: &SuiteConfig, select: impl Fn(&str) -> bool) -> Result<SuiteReport> {
    let env = Env::new(cfg)?;
    let mut outcomes = Vec::new();
    for &(name, _, check) in CHECKS {
        if !select(name) {
            continue;
        }
        let mut tally = Tally::new(name, cfg.seed);
        check(&env, &mut tally)?;
        outcomes.push(tally.finish());
    }
    Ok(SuiteReport { outcomes })
}

// ---------------------------------------------------------------------------
// Plumbing

struct Env {
    cfg: SuiteConfig,
    lattices: Vec<(String, Arc<FiniteLattice>)>,
}

impl Env {
    fn new(cfg: &SuiteConfig) -> Result<Self> {
        if cfg.lattices.is_empty() {
            return Err(Error::Precondition("no lattices configured".into()));
        }
        let lattices = cfg
            .lattices
            .iter()
            .map(|n| Ok((n.clone(), Arc::new(FiniteLattice::builtin(n)?))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Env {
            cfg: cfg.clone(),
            lattices,
        })
    }

    fn points(&self) -> impl Iterator<Item = usize> {
        1..=self.cfg.max_points.max(1)
    }

    fn distributive(&self) -> impl Iterator<Item = &(String, Arc<FiniteLattice>)> {
        self.lattices.iter().filter(|(_, l)| l.is_distributive())
    }

    fn certified(&self) -> impl Iterator<Item = &(String, Arc<FiniteLattice>)> {
        self.lattices.iter().filter(|(_, l)| l.check_beta_meet_hypothesis())
    }

    fn pairs(&self) -> Vec<(&String, &Arc<FiniteLattice>, &String, &Arc<FiniteLattice>)> {
        let mut out = Vec::new();
        for (ln, l) in &self.lattices {
            for (mn, m) in &self.lattices {
                out.push((ln, l, mn, m));
            }
        }
        out
    }

    fn valid(&self, kind: DomainKind, d: &FuzzyDomain, m: &Arc<FiniteLattice>) -> Option<Vec<StructureMap>> {
        all_valid_structures(kind, d, m, self.cfg.exhaustive_cap).ok()
    }
}

fn carrier(prefix: &str, n: usize) -> Arc<Carrier> {
    Arc::new(Carrier::numbered(prefix, n).expect("small carrier"))
}

fn fuzzy(x: &Arc<Carrier>, l: &Arc<FiniteLattice>) -> FuzzyDomain {
    FuzzyDomain::new(x.clone(), l.clone()).expect("small domain")
}

struct Tally {
    name: &'static str,
    cases: u64,
    failures: u64,
    skipped: u64,
    witness: Option<String>,
    notes: Vec<String>,
    rng: ChaCha8Rng,
}

impl Tally {
    fn new(name: &'static str, seed: u64) -> Self {
        let stream = name
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        Tally {
            name,
            cases: 0,
            failures: 0,
            skipped: 0,
            witness: None,
            notes: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed ^ stream),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(describe());
            }
        }
    }

    fn skip(&mut self, why: String) {
        self.skipped += 1;
        self.note(why);
    }

    fn note(&mut self, note: String) {
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            skipped: self.skipped,
            witness: self.witness,
            notes: self.notes,
        }
    }
}

/// Renders a structure's non-bottom entries.
pub fn describe_structure(s: &StructureMap) -> String {
    let m = s.m();
    let parts: Vec<String> = s
        .support()
        .into_iter()
        .map(|(c, v)| format!("{} -> {}", describe_witness(s.domain(), &s.witness(c)), m.name(v)))
        .collect();
    format!("[{}]", parts.join("; "))
}

pub fn describe_witness(d: &FuzzyDomain, w: &Witness) -> String {
    match w {
        Witness::Crisp(s) => format!("{{{}}}", d.carrier().render(*s).join(",")),
        Witness::Fuzzy(a) => describe_fuzzy(d, a),
    }
}

pub fn describe_fuzzy(d: &FuzzyDomain, a: &FuzzySet) -> String {
    let parts: Vec<String> = d.render(a).into_iter().map(|(p, v)| format!("{p}:{v}")).collect();
    format!("{{{}}}", parts.join(","))
}

fn all_or_sample<R: Rng>(rng: &mut R, d: &FuzzyDomain, cap: u128, samples: usize) -> Vec<FuzzySet> {
    if (d.size() as u128) <= cap {
        d.all().collect()
    } else {
        (0..samples).map(|_| random_fuzzy_set(rng, d)).collect()
    }
}

/// All maps if they fit under the cap, else a sample mixing arbitrary and valid maps.
fn maps_or_sample(
    env: &Env,
    t: &mut Tally,
    kind: DomainKind,
    d: &FuzzyDomain,
    m: &Arc<FiniteLattice>,
) -> Result<Vec<StructureMap>> {
    match all_structure_maps(kind, d, m, env.cfg.exhaustive_cap) {
        Ok(all) => Ok(all),
        Err(Error::Budget { .. }) => {
            let n = env.cfg.samples;
            let mut out = Vec::with_capacity(2 * n);
            for _ in 0..n {
                out.push(random_structure(&mut t.rng, kind, d, m, 0.3)?);
                out.push(random_valid_structure(&mut t.rng, kind, d, m)?);
            }
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// Lattices and fuzzy sets

fn check_wedge(env: &Env, t: &mut Tally) -> Result<()> {
    let mut lats: Vec<Arc<FiniteLattice>> = env.lattices.iter().map(|(_, l)| l.clone()).collect();
    lats.extend(distributive_lattices(3, 8).into_iter().map(Arc::new));
    for lat in &lats {
        if lat.len() > oracle::MAX_SUBSET_ORACLE_ELEMENTS {
            t.skip(format!("lattice with {} elements is too large for the subset oracle", lat.len()));
            continue;
        }
        for a in lat.elements() {
            for b in lat.elements() {
                let ok = oracle::wedge_below(lat, a, b)? == lat.wedge_below(a, b)
                    && oracle::op_wedge_below(lat, a, b)? == lat.op_wedge_below(a, b);
                t.check(ok, || format!("{} vs {} in {:?}", lat.name(a), lat.name(b), lat.names()));
            }
            if lat.is_distributive() {
                let ok = lat.join_family(lat.beta(a).iter()) == a && lat.meet_family(lat.alpha(a).iter()) == a;
                t.check(ok, || format!("beta/alpha of {} do not recover it", lat.name(a)));
            }
        }
        if !lat.is_distributive() {
            continue;
        }
        let elems: Vec<_> = lat.elements().collect();
        for size in 1..=3usize {
            for fam in families(&elems, size) {
                let join = lat.join_family(fam.iter().copied());
                let meet = lat.meet_family(fam.iter().copied());
                let union_beta = fam.iter().fold(ElementFamily::EMPTY, |acc, &x| acc.union(lat.beta(x)));
                let union_alpha = fam.iter().fold(ElementFamily::EMPTY, |acc, &x| acc.union(lat.alpha(x)));
                t.check(lat.beta(join) == union_beta && lat.alpha(meet) == union_alpha, || {
                    format!("family {:?}", fam.iter().map(|&x| lat.name(x)).collect::<Vec<_>>())
                });
            }
        }
    }
    Ok(())
}

fn families<T: Copy>(items: &[T], size: usize) -> Vec<Vec<T>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in families(&items[i..], size - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn check_cut_identities(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l) in env.distributive() {
        for n in 1..=env.cfg.max_points.max(3) {
            let x = carrier("x", n);
            let d = fuzzy(&x, l);
            let sets = all_or_sample(&mut t.rng, &d, 10_000, env.cfg.samples);
            let full = x.full();
            for a in &sets {
                t.check(a.decompose(l).holds(), || describe_fuzzy(&d, a));
                for c in l.elements() {
                    let beta = l.beta(c);
                    let lower = beta.iter().fold(full, |s, b| s.intersection(a.cut_lower(l, b)));
                    let strict = beta.iter().fold(full, |s, b| s.intersection(a.cut_strict(l, b)));
                    let upper = l
                        .elements()
                        .filter(|&b| l.alpha(b).contains(c))
                        .fold(full, |s, b| s.intersection(a.cut_upper(l, b)));
                    let strict_union = l
                        .elements()
                        .filter(|&b| l.beta(b).contains(c))
                        .fold(PointSet::EMPTY, |s, b| s.union(a.cut_lower(l, b)));
                    let ok = a.cut_lower(l, c) == lower
                        && a.cut_lower(l, c) == strict
                        && a.cut_upper(l, c) == upper
                        && a.cut_strict(l, c) == strict_union;
                    t.check(ok, || format!("{} at {}", describe_fuzzy(&d, a), l.name(c)));
                }
            }
            let pairs: Vec<(FuzzySet, FuzzySet)> = if (d.size() as u128).pow(2) <= 10_000 {
                sets.iter().flat_map(|a| sets.iter().map(move |b| (a.clone(), b.clone()))).collect()
            } else {
                (0..env.cfg.samples)
                    .map(|_| (random_fuzzy_set(&mut t.rng, &d), random_fuzzy_set(&mut t.rng, &d)))
                    .collect()
            };
            for (a, b) in pairs {
                let (meet, join) = (a.meet(&b, l), a.join(&b, l));
                for c in l.elements() {
                    let ok = meet.cut_lower(l, c) == a.cut_lower(l, c).intersection(b.cut_lower(l, c))
                        && join.cut_strict(l, c) == a.cut_strict(l, c).union(b.cut_strict(l, c))
                        && meet.cut_upper(l, c) == a.cut_upper(l, c).intersection(b.cut_upper(l, c));
                    t.check(ok, || {
                        format!("{} and {} at {}", describe_fuzzy(&d, &a), describe_fuzzy(&d, &b), l.name(c))
                    });
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Convexities

fn check_cut_characterization(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l, _, m) in env.pairs() {
        for n in env.points() {
            let d = fuzzy(&carrier("x", n), l);
            for s in maps_or_sample(env, t, DomainKind::Fuzzy, &d, m)? {
                let valid = check_lm_fuzzy(&s).is_valid();
                let lower = lower_levels(m)
                    .into_iter()
                    .all(|a| check_l_convexity(&cut_lower_structure(&s, a).expect("level in range")).is_valid());
                let upper = upper_levels(m)
                    .into_iter()
                    .all(|a| check_l_convexity(&cut_upper_structure(&s, a).expect("level in range")).is_valid());
                let by_oracle = !env.cfg.oracle || oracle::check_lm_fuzzy_by_subfamilies(&s) == valid;
                t.check(valid == lower && valid == upper && by_oracle, || describe_structure(&s));
            }
        }
    }
    Ok(())
}

fn check_cut_monotonicity(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l, _, m) in env.pairs() {
        let d = fuzzy(&carrier("x", env.cfg.max_points.min(2)), l);
        for _ in 0..env.cfg.samples / 10 + 1 {
            let s = if t.rng.gen_bool(0.5) {
                random_valid_structure(&mut t.rng, DomainKind::Fuzzy, &d, m)?
            } else {
                random_structure(&mut t.rng, DomainKind::Fuzzy, &d, m, 0.4)?
            };
            for b in lower_levels(m) {
                for a in m.beta(b).iter().filter(|&a| a != m.bottom()) {
                    let ok = cut_lower_structure(&s, b)?.is_subset(&cut_lower_structure(&s, a)?);
                    t.check(ok, || format!("lower cuts at {} and {} of {}", m.name(a), m.name(b), describe_structure(&s)));
                }
            }
            for a in upper_levels(m) {
                for b in m.alpha(a).iter().filter(|&b| m.alpha(m.bottom()).contains(b)) {
                    let ok = cut_upper_structure(&s, b)?.is_subset(&cut_upper_structure(&s, a)?);
                    t.check(ok, || format!("upper cuts at {} and {} of {}", m.name(a), m.name(b), describe_structure(&s)));
                }
            }
        }
    }
    Ok(())
}

fn check_special_cases(env: &Env, t: &mut Tally) -> Result<()> {
    let two = FiniteLattice::two();
    for (_, m) in &env.lattices {
        for n in env.points() {
            let x = carrier("x", n);
            let crisp = FuzzyDomain::crisp(x.clone());
            for s in maps_or_sample(env, t, DomainKind::Crisp, &crisp, m)? {
                let ok = check_m_fuzzifying(&s)?.is_valid() == check_lm_fuzzy(&s).is_valid();
                t.check(ok, || describe_structure(&s));
            }
        }
    }
    for (_, l) in &env.lattices {
        for n in env.points() {
            let d = fuzzy(&carrier("x", n), l);
            for s in maps_or_sample(env, t, DomainKind::Fuzzy, &d, &two)? {
                let tops = FuzzyFamily::from_codes(d.clone(), s.support().into_iter().map(|(c, _)| c));
                let ok = check_lm_fuzzy(&s).is_valid() == check_l_convexity(&tops).is_valid();
                t.check(ok, || describe_structure(&s));
            }
        }
    }
    Ok(())
}

fn check_meets(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l, _, m) in env.pairs() {
        let d = fuzzy(&carrier("x", env.cfg.max_points.min(2)), l);
        let Some(valid) = env.valid(DomainKind::Fuzzy, &d, m).filter(|v| v.len() <= 300) else {
            for _ in 0..env.cfg.samples / 10 + 1 {
                let a = random_valid_structure(&mut t.rng, DomainKind::Fuzzy, &d, m)?;
                let b = random_valid_structure(&mut t.rng, DomainKind::Fuzzy, &d, m)?;
                let meet = meet_structures(&[a.clone(), b.clone()])?;
                t.check(check_lm_fuzzy(&meet).is_valid() && meet.le(&a) && meet.le(&b), || describe_structure(&meet));
            }
            continue;
        };
        let top = StructureMap::indiscrete(DomainKind::Fuzzy, d.clone(), m.clone())?;
        for (i, a) in valid.iter().enumerate() {
            t.check(meet_structures(&[a.clone(), top.clone()])? == *a, || describe_structure(a));
            for b in &valid[i..] {
                let meet = meet_structures(&[a.clone(), b.clone()])?;
                let ok = check_lm_fuzzy(&meet).is_valid()
                    && meet.le(a)
                    && meet.le(b)
                    && valid.iter().all(|c| !(c.le(a) && c.le(b)) || c.le(&meet));
                t.check(ok, || format!("{} and {}", describe_structure(a), describe_structure(b)));
            }
        }
    }
    Ok(())
}

fn check_reconstruction(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l, _, m) in env.pairs() {
        for n in env.points() {
            let d = fuzzy(&carrier("x", n), l);
            for _ in 0..env.cfg.samples / 10 + 1 {
                let s = random_valid_structure(&mut t.rng, DomainKind::Fuzzy, &d, m)?;
                let lower: std::collections::BTreeMap<_, _> =
                    lower_levels(m).into_iter().map(|a| (a, cut_lower_structure(&s, a).expect("level"))).collect();
                let upper: std::collections::BTreeMap<_, _> =
                    upper_levels(m).into_iter().map(|a| (a, cut_upper_structure(&s, a).expect("level"))).collect();
                let ok = structure_from_lower_cuts(DomainKind::Fuzzy, d.clone(), m.clone(), &lower)? == s
                    && structure_from_upper_cuts(DomainKind::Fuzzy, d.clone(), m.clone(), &upper)? == s;
                t.check(ok, || describe_structure(&s));

                // drop one set from one level: accepted results must reproduce the input cuts
                let levels: Vec<_> = lower.keys().copied().collect();
                let level = levels[t.rng.gen_range(0..levels.len())];
                let members: Vec<u64> = lower[&level].codes().filter(|&c| !d.is_boundary(c)).collect();
                if members.is_empty() {
                    continue;
                }
                let dropped = members[t.rng.gen_range(0..members.len())];
                let mut mutated = lower.clone();
                mutated.insert(level, FuzzyFamily::from_codes(d.clone(), lower[&level].codes().filter(|&c| c != dropped)));
                match structure_from_lower_cuts(DomainKind::Fuzzy, d.clone(), m.clone(), &mutated) {
                    Ok(rebuilt) => {
                        let ok = mutated.iter().all(|(&a, fam)| cut_lower_structure(&rebuilt, a).map(|c| c == *fam).unwrap_or(false));
                        t.check(ok, || describe_structure(&rebuilt));
                    }
                    Err(Error::Precondition(_)) => t.check(true, String::new),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Constructions

fn check_constructions(env: &Env, t: &mut Tally) -> Result<()> {
    let k = env.cfg.max_points.max(1);
    for (_, l, _, m) in env.pairs() {
        for _ in 0..env.cfg.samples / 10 + 1 {
            let ny = t.rng.gen_range(1..=k);
            let nx = t.rng.gen_range(ny..=k + 1);
            let (x, y) = (carrier("x", nx), carrier("y", ny));
            let (dx, dy) = (fuzzy(&x, l), fuzzy(&y, l));
            let f = random_surjection(&mut t.rng, &x, &y)?;

            let dstruct = random_valid_structure(&mut t.rng, DomainKind::Fuzzy, &dy, m)?;
            let pre = preimage_structure(&dstruct, &f)?;
            let agree = !env.cfg.oracle || oracle::preimage_by_enumeration(&dstruct, &f)? == pre;
            t.check(check_lm_fuzzy(&pre).is_valid() && agree, || format!("preimage of {}", describe_structure(&dstruct)));

            let c = random_valid_structure(&mut t.rng, DomainKind::Fuzzy, &dx, m)?;
            let q = quotient_structure(&c, &f)?;
            let pair = StructuredSpacePair::new(c.clone(), q.clone(), f.clone())?;
            let ok = check_lm_fuzzy(&q).is_valid() && is_cpf(&pair).holds && is_quotient_function(&pair).holds;
            t.check(ok, || format!("quotient of {}", describe_structure(&c)));

            let sub = PointSet(t.rng.gen_range(1..1u64 << nx));
            let restricted = substructure(&c, sub)?;
            let agree = !env.cfg.oracle || oracle::substructure_by_enumeration(&c, sub)? == restricted;
            t.check(check_lm_fuzzy(&restricted).is_valid() && agree, || format!("substructure of {}", describe_structure(&c)));
            if sub == x.full() {
                t.check(restricted == c, || format!("full substructure of {}", describe_structure(&c)));
            }

            let other = random_valid_structure(&mut t.rng, DomainKind::Fuzzy, &dy, m)?;
            match product_structure(&[c.clone(), other.clone()], DEFAULT_PRODUCT_BUDGET) {
                Ok(p) => {
                    let mut projections_cpf = true;
                    for (pi, factor) in p.projections.iter().zip([&c, &other]) {
                        let pair = StructuredSpacePair::new(p.structure.clone(), factor.clone(), pi.clone())?;
                        projections_cpf &= is_cpf(&pair).holds;
                    }
                    t.check(check_lm_fuzzy(&p.structure).is_valid() && projections_cpf, || {
                        format!("product with {}", describe_structure(&c))
                    });
                }
                Err(Error::Budget { required, .. }) => t.skip(format!("product needs {required} fuzzy sets")),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

fn check_quotient_finest(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l, _, m) in env.pairs() {
        for nx in env.points() {
            for ny in 1..=nx {
                let (x, y) = (carrier("x", nx), carrier("y", ny));
                let (Some(cs), Some(ds)) = (
                    env.valid(DomainKind::Fuzzy, &fuzzy(&x, l), m),
                    env.valid(DomainKind::Fuzzy, &fuzzy(&y, l), m),
                ) else {
                    t.skip(format!("|X| = {nx}, |Y| = {ny}, |L| = {}, |M| = {}", l.len(), m.len()));
                    continue;
                };
                if cs.len() * ds.len() > 50_000 {
                    t.skip(format!("{} x {} competitor pairs", cs.len(), ds.len()));
                    continue;
                }
                for f in all_surjections(&x, &y) {
                    for c in &cs {
                        let q = quotient_structure(c, &f)?;
                        for d in &ds {
                            let cpf = is_cpf(&StructuredSpacePair::new(c.clone(), d.clone(), f.clone())?).holds;
                            t.check(!cpf || d.le(&q), || format!("{} above the quotient of {}", describe_structure(d), describe_structure(c)));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_product_coarsest(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l, _, m) in env.pairs() {
        let (x1, x2) = (carrier("x", env.cfg.max_points.clamp(1, 2)), carrier("y", 1));
        let (Some(c1), Some(c2)) = (
            env.valid(DomainKind::Fuzzy, &fuzzy(&x1, l), m),
            env.valid(DomainKind::Fuzzy, &fuzzy(&x2, l), m),
        ) else {
            t.skip(format!("factors over |L| = {}, |M| = {}", l.len(), m.len()));
            continue;
        };
        let Some(first) = c1.first() else { continue };
        let second = &c2[0];
        let shape = product_structure(&[first.clone(), second.clone()], DEFAULT_PRODUCT_BUDGET)?;
        let Some(competitors) = env.valid(DomainKind::Fuzzy, &fuzzy(&shape.carrier, l), m) else {
            t.skip(format!("competitors over |L| = {}, |M| = {}", l.len(), m.len()));
            continue;
        };
        if c1.len() * c2.len() * competitors.len() > 200_000 {
            t.skip(format!("{} competitor triples", c1.len() * c2.len() * competitors.len()));
            continue;
        }
        for a in &c1 {
            for b in &c2 {
                let p = product_structure(&[a.clone(), b.clone()], DEFAULT_PRODUCT_BUDGET)?;
                let factors = [a, b];
                let proj_ok = |d: &StructureMap| -> Result<bool> {
                    for (pi, factor) in p.projections.iter().zip(factors) {
                        if !is_cpf(&StructuredSpacePair::new(d.clone(), factor.clone(), pi.clone())?).holds {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                };
                t.check(proj_ok(&p.structure)?, || format!("projections of {}", describe_structure(&p.structure)));
                for d in &competitors {
                    let ok = proj_ok(d)? == p.structure.le(d);
                    t.check(ok, || format!("competitor {}", describe_structure(d)));
                }
            }
        }
    }
    Ok(())
}

fn check_subbase(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l, _, m) in env.pairs() {
        for n in env.points() {
            let d = fuzzy(&carrier("x", n), l);
            let subbases = match all_structure_maps(DomainKind::Fuzzy, &d, m, 300) {
                Ok(all) => all,
                Err(_) => (0..env.cfg.samples / 20 + 1)
                    .map(|_| random_structure(&mut t.rng, DomainKind::Fuzzy, &d, m, 0.2))
                    .collect::<Result<_>>()?,
            };
            for phi in subbases {
                let generated = generate_from_subbase(&Subbase(phi.clone()));
                let closure = check_lm_fuzzy(&generated).is_valid()
                    && phi.le(&generated)
                    && generate_from_subbase(&Subbase(generated.clone())) == generated;
                t.check(closure, || format!("closure of {}", describe_structure(&phi)));
                match oracle::definitional_meet(&phi, oracle::DEFINITIONAL_MEET_CAP) {
                    Ok(meet) => t.check(meet == generated, || describe_structure(&phi)),
                    Err(Error::Budget { required, .. }) => t.skip(format!("{required} candidates above a subbase")),
                    Err(e) => return Err(e),
                }
                let other = random_structure(&mut t.rng, DomainKind::Fuzzy, &d, m, 0.2)?;
                let joined = meet_structures(&[phi.clone(), other])?;
                t.check(generate_from_subbase(&Subbase(joined)).le(&generated), || {
                    format!("monotonicity below {}", describe_structure(&phi))
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Morphisms

/// Valid structures on `x`, exhaustively when small, else sampled.
fn structures_on(env: &Env, t: &mut Tally, kind: DomainKind, x: &Arc<Carrier>, l: &Arc<FiniteLattice>, m: &Arc<FiniteLattice>, limit: usize) -> Result<Vec<StructureMap>> {
    let d = match kind {
        DomainKind::Crisp => FuzzyDomain::crisp(x.clone()),
        DomainKind::Fuzzy => fuzzy(x, l),
    };
    match env.valid(kind, &d, m) {
        Some(v) if v.len() <= limit => Ok(v),
        _ => (0..limit).map(|_| random_valid_structure(&mut t.rng, kind, &d, m)).collect(),
    }
}

fn check_cpf_forms(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l, _, m) in env.pairs() {
        for nx in env.points() {
            for ny in env.points() {
                let (x, y) = (carrier("x", nx), carrier("y", ny));
                let cs = structures_on(env, t, DomainKind::Fuzzy, &x, l, m, 40)?;
                let ds = structures_on(env, t, DomainKind::Fuzzy, &y, l, m, 40)?;
                for f in all_maps(&x, &y) {
                    for c in &cs {
                        for d in &ds {
                            let pair = StructuredSpacePair::new(c.clone(), d.clone(), f.clone())?;
                            let direct = is_cpf(&pair);
                            let cuts = cpf_cut_equivalence(&pair)?;
                            let mut ok = cuts.consistent() && cuts.cpf == direct.holds;
                            if f.is_surjective() {
                                ok &= is_cpf_via_preimage(&pair)?.holds == direct.holds;
                            }
                            t.check(ok, || format!("{} -> {}", describe_structure(c), describe_structure(d)));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_cpf_composition(env: &Env, t: &mut Tally) -> Result<()> {
    let k = env.cfg.max_points.max(1);
    for (_, l, _, m) in env.pairs() {
        for _ in 0..env.cfg.samples / 10 + 1 {
            let sizes: Vec<usize> = (0..3).map(|_| t.rng.gen_range(1..=k)).collect();
            let spaces: Vec<Arc<Carrier>> = sizes.iter().zip(["x", "y", "z"]).map(|(&n, p)| carrier(p, n)).collect();
            let st: Vec<StructureMap> = spaces
                .iter()
                .map(|s| random_valid_structure(&mut t.rng, DomainKind::Fuzzy, &fuzzy(s, l), m))
                .collect::<Result<_>>()?;
            let f = random_map(&mut t.rng, &spaces[0], &spaces[1]);
            let g = random_map(&mut t.rng, &spaces[1], &spaces[2]);
            let p = StructuredSpacePair::new(st[0].clone(), st[1].clone(), f.clone())?;
            let q = StructuredSpacePair::new(st[1].clone(), st[2].clone(), g.clone())?;
            let pq = p.then(&q)?;
            t.check(!(is_cpf(&p).holds && is_cpf(&q).holds) || is_cpf(&pq).holds, || "composition".into());

            // with a quotient map in front, CPF of g and of g . f coincide
            if spaces[0].len() >= spaces[1].len() {
                let f = random_surjection(&mut t.rng, &spaces[0], &spaces[1])?;
                let quotient = quotient_structure(&st[0], &f)?;
                let p = StructuredSpacePair::new(st[0].clone(), quotient.clone(), f)?;
                let q = StructuredSpacePair::new(quotient, st[2].clone(), g)?;
                t.check(is_cpf(&q).holds == is_cpf(&p.then(&q)?).holds, || "quotient composition".into());
            }
        }
    }
    Ok(())
}

fn check_convex_to_convex(env: &Env, t: &mut Tally) -> Result<()> {
    let mut non_example = false;
    for (_, l, _, m) in env.pairs() {
        for nx in env.points() {
            for ny in 1..=nx {
                let (x, y) = (carrier("x", nx), carrier("y", ny));
                let cs = structures_on(env, t, DomainKind::Fuzzy, &x, l, m, 30)?;
                let ds = structures_on(env, t, DomainKind::Fuzzy, &y, l, m, 30)?;
                for f in all_surjections(&x, &y) {
                    for c in &cs {
                        for d in &ds {
                            let pair = StructuredSpacePair::new(c.clone(), d.clone(), f.clone())?;
                            let c2c = is_convex_to_convex(&pair).holds;
                            non_example |= !c2c;
                            let premise = is_cpf(&pair).holds && c2c;
                            t.check(!premise || is_quotient_function(&pair).holds, || {
                                format!("{} -> {}", describe_structure(c), describe_structure(d))
                            });
                        }
                    }
                }
            }
        }
    }
    if !non_example {
        t.note("no map failing convex-to-convex was met".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Functors

fn check_omega_iota(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l) in env.certified() {
        for (_, m) in &env.lattices {
            let ctx = FunctorContext::new(l.clone(), m.clone())?;
            for n in env.points() {
                let x = carrier("x", n);
                let ss = structures_on(env, t, DomainKind::Crisp, &x, l, m, 500)?;
                for s in &ss {
                    let w = omega(&ctx, s)?;
                    t.check(check_lm_fuzzy(&w).is_valid(), || format!("omega of {}", describe_structure(s)));
                    t.check(iota(&ctx, &w)? == *s, || format!("iota(omega) of {}", describe_structure(s)));
                }
                for pair in ss.windows(2) {
                    if pair[0].le(&pair[1]) {
                        t.check(omega(&ctx, &pair[0])?.le(&omega(&ctx, &pair[1])?), || "omega monotone".into());
                    }
                }
                let cs = structures_on(env, t, DomainKind::Fuzzy, &x, l, m, 300)?;
                for c in &cs {
                    let back = omega(&ctx, &iota(&ctx, c)?)?;
                    t.check(c.le(&back), || format!("omega(iota) of {}", describe_structure(c)));
                }
                for pair in cs.windows(2) {
                    let low = meet_structures(pair)?;
                    t.check(iota(&ctx, &low)?.le(&iota(&ctx, &pair[0])?), || "iota monotone".into());
                }
            }
        }
    }
    Ok(())
}

fn check_cpf_transfer(env: &Env, t: &mut Tally) -> Result<()> {
    for (_, l) in env.certified() {
        for (_, m) in &env.lattices {
            let ctx = FunctorContext::new(l.clone(), m.clone())?;
            for nx in env.points() {
                for ny in env.points() {
                    let (x, y) = (carrier("x", nx), carrier("y", ny));
                    let sx = structures_on(env, t, DomainKind::Crisp, &x, l, m, 40)?;
                    let sy = structures_on(env, t, DomainKind::Crisp, &y, l, m, 40)?;
                    for f in all_maps(&x, &y) {
                        for a in &sx {
                            for b in &sy {
                                let r = cpf_transfer(&ctx, &f, a, b)?;
                                t.check(r.agree(), || format!("{} -> {}", describe_structure(a), describe_structure(b)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_adjunction(env: &Env, t: &mut Tally) -> Result<()> {
    let mut converse = (0u64, 0u64);
    for (_, l) in env.certified() {
        for (_, m) in &env.lattices {
            let ctx = FunctorContext::new(l.clone(), m.clone())?;
            for nx in env.points() {
                for ny in env.points() {
                    let (x, y) = (carrier("x", nx), carrier("y", ny));
                    let ss = structures_on(env, t, DomainKind::Crisp, &x, l, m, 30)?;
                    let cs = structures_on(env, t, DomainKind::Fuzzy, &y, l, m, 30)?;
                    for f in all_maps(&x, &y) {
                        for s in &ss {
                            for c in &cs {
                                let r = adjunction_check(&ctx, s, c, &f)?;
                                t.check(r.implication_holds(), || format!("{} vs {}", describe_structure(s), describe_structure(c)));
                                converse.0 += 1;
                                converse.1 += u64::from(!r.converse_holds());
                            }
                        }
                    }
                }
            }
        }
    }
    t.note(format!("converse checked on {} cases, {} counterexamples", converse.0, converse.1));
    Ok(())
}

// ---------------------------------------------------------------------------
// Hulls, directedness, gallery

fn check_restricted_hull(env: &Env, t: &mut Tally) -> Result<()> {
    for n in 1..=4 {
        let x = carrier("x", n);
        for _ in 0..env.cfg.samples / 4 + 1 {
            let conv = random_classical_convexity(&mut t.rng, &x);
            let members: Vec<PointSet> = conv.members().collect();
            if !check_classical(&x, &members).is_valid() {
                t.check(false, || "generated family is not a convexity".into());
                continue;
            }
            let co = HullOperator::new(conv);
            for &a in &members {
                for y in x.all_subsets().filter(|y| !y.is_empty()) {
                    t.check(restricted_hull_identity(&co, y, a)?, || {
                        format!("A = {:?}, Y = {:?}", x.render(a), x.render(y))
                    });
                }
            }
            for a in x.all_subsets() {
                let h = co.hull(a);
                let ok = a.is_subset(h) && co.convexity().contains(h) && co.hull(h) == h && (h == a) == co.convexity().contains(a);
                t.check(ok, || format!("hull of {:?}", x.render(a)));
            }
        }
    }
    for (_, l) in &env.lattices {
        let x = carrier("x", 2);
        let d = fuzzy(&x, l);
        for _ in 0..env.cfg.samples / 20 + 1 {
            let gens = (0..3).map(|_| t.rng.gen_range(0..d.size()));
            let conv = LConvexity::new(FuzzyFamily::from_codes(d.clone(), gens).meet_closure())?;
            for a in conv.family().iter() {
                for y in x.all_subsets().filter(|y| !y.is_empty()) {
                    t.check(restricted_l_hull_identity(&conv, y, &a)?, || describe_fuzzy(&d, &a));
                }
            }
        }
    }
    Ok(())
}

fn check_up_directed(env: &Env, t: &mut Tally) -> Result<()> {
    let mut lats: Vec<Arc<FiniteLattice>> = env.certified().map(|(_, l)| l.clone()).collect();
    lats.extend(
        distributive_lattices(3, 6)
            .into_iter()
            .filter(FiniteLattice::check_beta_meet_hypothesis)
            .map(Arc::new),
    );
    for l in &lats {
        for n in 1..=3 {
            let d = fuzzy(&carrier("x", n), l);
            for a in all_or_sample(&mut t.rng, &d, 10_000, env.cfg.samples) {
                for b in l.elements() {
                    t.check(is_up_directed(&lower_cut_family(l, &a, b)), || {
                        format!("{} at {}", describe_fuzzy(&d, &a), l.name(b))
                    });
                }
            }
        }
    }
    Ok(())
}

fn check_gallery(env: &Env, t: &mut Tally) -> Result<()> {
    for name in entry_names() {
        let item = emit(name, UpperSetReading::Corrected)?;
        t.check(item.check().is_valid(), || name.to_string());
    }
    for (_, l) in env.distributive() {
        for n in 1..=3 {
            let x = carrier("x", n);
            if (l.len() as u128).pow(n as u32) > 1_000 {
                continue;
            }
            for _ in 0..env.cfg.samples / 100 + 1 {
                let op = random_interval_operator(&mut t.rng, &x);
                let s = interval_degree_structure(&op, l.clone())?;
                t.check(check_lm_fuzzy(&s).is_valid(), || format!("interval structure on {n} points"));
                let family = interval_l_convexity(&op, l.clone())?;
                let tops = FuzzyFamily::from_codes(
                    s.domain().clone(),
                    s.support().into_iter().filter(|&(_, v)| v == l.top()).map(|(c, _)| c),
                );
                t.check(check_l_convexity(&family).is_valid() && tops == family, || {
                    format!("collapse at M = 2 on {n} points")
                });
            }
        }
    }
    Ok(())
}

fn check_residuum(env: &Env, t: &mut Tally) -> Result<()> {
    let mut lats: Vec<Arc<FiniteLattice>> = env.distributive().map(|(_, l)| l.clone()).collect();
    lats.extend(distributive_lattices(4, 10).into_iter().map(Arc::new));
    for l in &lats {
        for a in l.elements() {
            for b in l.elements() {
                let r = residuum(l, a, b)?;
                for c in l.elements() {
                    t.check(l.leq(c, r) == l.leq(l.meet(a, c), b), || {
                        format!("{} -> {} against {}", l.name(a), l.name(b), l.name(c))
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig {
            max_points: 1,
            lattices: vec!["2".into(), "chain3".into()],
            samples: 20,
            ..SuiteConfig::default()
        };
        let report = run_suite(&cfg).unwrap();
        for o in &report.outcomes {
            assert!(o.passed(), "{} failed: {:?}", o.name, o.witness);
        }
        assert_eq!(report.outcomes.len(), check_names().count());
    }

    #[test]
    fn unknown_lattices_are_rejected() {
        let cfg = SuiteConfig {
            lattices: vec!["nope".into()],
            ..SuiteConfig::default()
        };
        assert!(run_suite(&cfg).is_err());
    }
}
