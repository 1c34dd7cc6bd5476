//! Axiom systems for convexities and their verifiers.
//!
//! Four systems are covered: classical convexities (C1–C3) on `2^X`,
//! `L`-convexities (LC1–LC3) on `L^X`, `M`-fuzzifying convexities
//! (MYC1–MYC3) as degree maps `2^X → M`, and `(L,M)`-fuzzy convexities
//! (LMC1–LMC3) as degree maps `L^X → M`.
//!
//! On finite inputs the arbitrary-family axioms reduce to pairwise checks by
//! induction, and the chain axioms are vacuous: a finite chain has a largest
//! member, which is its join and is already in the family (or already bounds
//! the meet of the degrees). The chain checks still run, over comparable
//! pairs, so every axiom produces a verdict.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, FuzzyDomain, FuzzySet, PointSet};
use crate::lattice::{Elem, FiniteLattice};

/// Violations recorded per certificate before checking stops.
pub const MAX_VIOLATIONS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    C1,
    C2,
    C3,
    LC1,
    LC2,
    LC3,
    MYC1,
    MYC2,
    MYC3,
    LMC1,
    LMC2,
    LMC3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A set named in a violation or a failed predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Crisp(PointSet),
    Fuzzy(FuzzySet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Witness>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConvexityCertificate {
    pub verdict: bool,
    pub violations: Vec<Violation>,
}

impl ConvexityCertificate {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ConvexityCertificate {
            verdict: violations.is_empty(),
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.verdict
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn full(&self) -> bool {
        self.0.len() >= MAX_VIOLATIONS
    }

    fn push(&mut self, axiom: Axiom, witness: Vec<Witness>, detail: String) {
        if !self.full() {
            self.0.push(Violation {
                axiom,
                witness,
                detail,
            });
        }
    }
}

// ---------------------------------------------------------------------------
// Classical convexities

/// Checks C1–C3 for a collection of crisp subsets of `carrier`.
pub fn check_classical(carrier: &Carrier, family: &[PointSet]) -> ConvexityCertificate {
    let members: BTreeSet<PointSet> = family.iter().copied().collect();
    let full = carrier.full();
    let mut out = Collector(Vec::new());
    for boundary in [PointSet::EMPTY, full] {
        if !members.contains(&boundary) {
            out.push(
                Axiom::C1,
                vec![Witness::Crisp(boundary)],
                "boundary set missing".into(),
            );
        }
    }
    let list: Vec<PointSet> = members.iter().copied().collect();
    for (i, &a) in list.iter().enumerate() {
        for &b in &list[i + 1..] {
            if out.full() {
                break;
            }
            if !members.contains(&a.intersection(b)) {
                out.push(
                    Axiom::C2,
                    vec![Witness::Crisp(a), Witness::Crisp(b)],
                    "intersection not in the family".into(),
                );
            }
            if (a.is_subset(b) || b.is_subset(a)) && !members.contains(&a.union(b)) {
                out.push(
                    Axiom::C3,
                    vec![Witness::Crisp(a), Witness::Crisp(b)],
                    "union of a chain not in the family".into(),
                );
            }
        }
    }
    ConvexityCertificate::from_violations(out.0)
}

/// A validated classical convexity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalConvexity {
    carrier: Arc<Carrier>,
    members: BTreeSet<PointSet>,
}

impl ClassicalConvexity {
    pub fn new(carrier: Arc<Carrier>, members: &[PointSet]) -> Result<Self> {
        let cert = check_classical(&carrier, members);
        if let Some(v) = cert.first() {
            return Err(Error::Precondition(format!(
                "not a convexity: {} violated ({})",
                v.axiom, v.detail
            )));
        }
        Ok(ClassicalConvexity {
            carrier,
            members: members.iter().copied().collect(),
        })
    }

    /// The smallest convexity containing `generators`: adds `∅`, `X` and closes
    /// under intersections.
    pub fn generated_by(carrier: Arc<Carrier>, generators: &[PointSet]) -> Self {
        let mut members: BTreeSet<PointSet> = generators.iter().copied().collect();
        members.insert(PointSet::EMPTY);
        members.insert(carrier.full());
        loop {
            let list: Vec<PointSet> = members.iter().copied().collect();
            let before = members.len();
            for (i, &a) in list.iter().enumerate() {
                for &b in &list[i + 1..] {
                    members.insert(a.intersection(b));
                }
            }
            if members.len() == before {
                break;
            }
        }
        ClassicalConvexity { carrier, members }
    }

    /// All downsets of a preorder on the carrier (`leq[x][y]` means `x ≤ y`).
    pub fn downsets(carrier: Arc<Carrier>, leq: &[Vec<bool>]) -> Result<Self> {
        let n = carrier.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Mismatch("order matrix does not match the carrier".into()));
        }
        let members: Vec<PointSet> = carrier
            .all_subsets()
            .filter(|s| {
                (0..n).all(|y| {
                    !s.contains(y) || (0..n).all(|x| !leq[x][y] || s.contains(x))
                })
            })
            .collect();
        ClassicalConvexity::new(carrier, &members)
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn contains(&self, set: PointSet) -> bool {
        self.members.contains(&set)
    }

    pub fn members(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Families of fuzzy sets and L-convexities

/// A finite set of members of `L^X`, stored by code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyFamily {
    domain: FuzzyDomain,
    members: BTreeSet<u64>,
}

impl FuzzyFamily {
    pub fn new<I: IntoIterator<Item = FuzzySet>>(domain: FuzzyDomain, sets: I) -> Result<Self> {
        let mut members = BTreeSet::new();
        for s in sets {
            domain.check(&s)?;
            members.insert(domain.encode(&s));
        }
        Ok(FuzzyFamily { domain, members })
    }

    pub fn from_codes<I: IntoIterator<Item = u64>>(domain: FuzzyDomain, codes: I) -> Self {
        FuzzyFamily {
            members: codes.into_iter().filter(|&c| c < domain.size()).collect(),
            domain,
        }
    }

    pub fn domain(&self) -> &FuzzyDomain {
        &self.domain
    }

    pub fn contains(&self, set: &FuzzySet) -> bool {
        self.members.contains(&self.domain.encode(set))
    }

    pub fn contains_code(&self, code: u64) -> bool {
        self.members.contains(&code)
    }

    pub fn codes(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = FuzzySet> + '_ {
        self.members.iter().map(|&c| self.domain.decode(c))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &FuzzyFamily) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &FuzzyFamily) -> FuzzyFamily {
        FuzzyFamily {
            domain: self.domain.clone(),
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    /// Smallest family containing this one, `χ_∅`, `χ_X`, closed under pairwise meets.
    pub fn meet_closure(&self) -> FuzzyFamily {
        let d = &self.domain;
        let mut members = self.members.clone();
        members.insert(d.empty_code());
        members.insert(d.full_code());
        loop {
            let list: Vec<u64> = members.iter().copied().collect();
            let before = members.len();
            for (i, &a) in list.iter().enumerate() {
                for &b in &list[i + 1..] {
                    members.insert(d.meet_codes(a, b));
                }
            }
            if members.len() == before {
                break;
            }
        }
        FuzzyFamily {
            domain: self.domain.clone(),
            members,
        }
    }
}

/// Checks LC1–LC3 for a family of fuzzy sets.
pub fn check_l_convexity(family: &FuzzyFamily) -> ConvexityCertificate {
    let d = &family.domain;
    let mut out = Collector(Vec::new());
    for boundary in [d.empty_code(), d.full_code()] {
        if !family.contains_code(boundary) {
            out.push(
                Axiom::LC1,
                vec![Witness::Fuzzy(d.decode(boundary))],
                "boundary set missing".into(),
            );
        }
    }
    let list: Vec<u64> = family.codes().collect();
    for (i, &a) in list.iter().enumerate() {
        for &b in &list[i + 1..] {
            if out.full() {
                break;
            }
            if !family.contains_code(d.meet_codes(a, b)) {
                out.push(
                    Axiom::LC2,
                    vec![Witness::Fuzzy(d.decode(a)), Witness::Fuzzy(d.decode(b))],
                    "meet not in the family".into(),
                );
            }
            if (d.leq_codes(a, b) || d.leq_codes(b, a)) && !family.contains_code(d.join_codes(a, b)) {
                out.push(
                    Axiom::LC3,
                    vec![Witness::Fuzzy(d.decode(a)), Witness::Fuzzy(d.decode(b))],
                    "join of a chain not in the family".into(),
                );
            }
        }
    }
    ConvexityCertificate::from_violations(out.0)
}

/// A validated `L`-convexity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LConvexity {
    family: FuzzyFamily,
}

impl LConvexity {
    pub fn new(family: FuzzyFamily) -> Result<Self> {
        let cert = check_l_convexity(&family);
        if let Some(v) = cert.first() {
            return Err(Error::Precondition(format!(
                "not an L-convexity: {} violated ({})",
                v.axiom, v.detail
            )));
        }
        Ok(LConvexity { family })
    }

    pub fn family(&self) -> &FuzzyFamily {
        &self.family
    }

    pub fn domain(&self) -> &FuzzyDomain {
        &self.family.domain
    }

    pub fn contains(&self, set: &FuzzySet) -> bool {
        self.family.contains(set)
    }

    /// The smallest member above `set`: the meet of all members `≥ set`.
    pub fn hull(&self, set: &FuzzySet) -> FuzzySet {
        let d = self.domain();
        let code = d.encode(set);
        let hull = self
            .family
            .codes()
            .filter(|&m| d.leq_codes(code, m))
            .fold(d.full_code(), |acc, m| d.meet_codes(acc, m));
        d.decode(hull)
    }
}

// ---------------------------------------------------------------------------
// Structure maps

/// Whether a structure map is defined on crisp sets (`2^X`) or fuzzy sets (`L^X`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DomainKind {
    Crisp,
    Fuzzy,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainKind::Crisp => "crisp",
            DomainKind::Fuzzy => "fuzzy",
        })
    }
}

/// A total degree map from `2^X` or `L^X` into `M`.
///
/// Stored sparsely: explicit entries over a default value (normally `⊥`).
/// Entries equal to the default are never kept, so two maps with the same
/// default are equal exactly when their entry tables are.
#[derive(Clone, Debug)]
pub struct StructureMap {
    kind: DomainKind,
    domain: FuzzyDomain,
    m: Arc<FiniteLattice>,
    default: Elem,
    entries: BTreeMap<u64, Elem>,
}

impl PartialEq for StructureMap {
    fn eq(&self, other: &Self) -> bool {
        if self.kind != other.kind || self.domain != other.domain || *self.m != *other.m {
            return false;
        }
        if self.default == other.default {
            return self.entries == other.entries;
        }
        self.domain.codes().all(|c| self.get(c) == other.get(c))
    }
}

impl Eq for StructureMap {}

impl StructureMap {
    /// The map constantly `⊥` on `L^X`.
    pub fn fuzzy(domain: FuzzyDomain, m: Arc<FiniteLattice>) -> Self {
        let default = m.bottom();
        StructureMap {
            kind: DomainKind::Fuzzy,
            domain,
            m,
            default,
            entries: BTreeMap::new(),
        }
    }

    /// The map constantly `⊥` on `2^X`.
    pub fn crisp(carrier: Arc<Carrier>, m: Arc<FiniteLattice>) -> Self {
        let default = m.bottom();
        StructureMap {
            kind: DomainKind::Crisp,
            domain: FuzzyDomain::crisp(carrier),
            m,
            default,
            entries: BTreeMap::new(),
        }
    }

    /// An empty map of the same shape as `self`, constantly `⊥`.
    pub fn blank_like(&self) -> Self {
        StructureMap {
            kind: self.kind,
            domain: self.domain.clone(),
            m: self.m.clone(),
            default: self.m.bottom(),
            entries: BTreeMap::new(),
        }
    }

    pub fn with_kind(kind: DomainKind, domain: FuzzyDomain, m: Arc<FiniteLattice>) -> Result<Self> {
        match kind {
            DomainKind::Fuzzy => Ok(StructureMap::fuzzy(domain, m)),
            DomainKind::Crisp => {
                if domain.lattice().len() != 2 {
                    return Err(Error::Mismatch("crisp domains are numbered over 2".into()));
                }
                Ok(StructureMap::crisp(domain.carrier().clone(), m))
            }
        }
    }

    /// Sets the default; existing entries equal to the new default are dropped.
    pub fn set_default(&mut self, default: Elem) {
        self.default = default;
        self.entries.retain(|_, v| *v != default);
    }

    /// Builds a map by evaluating `f` on every member of the domain.
    pub fn from_fn(
        kind: DomainKind,
        domain: FuzzyDomain,
        m: Arc<FiniteLattice>,
        f: impl Fn(u64) -> Elem,
    ) -> Result<Self> {
        let mut out = StructureMap::with_kind(kind, domain, m)?;
        for c in out.domain.codes() {
            out.set_code(c, f(c));
        }
        Ok(out)
    }

    /// The constant map `⊤`, the indiscrete convexity.
    pub fn indiscrete(kind: DomainKind, domain: FuzzyDomain, m: Arc<FiniteLattice>) -> Result<Self> {
        let mut out = StructureMap::with_kind(kind, domain, m)?;
        out.set_default(out.m.top());
        Ok(out)
    }

    /// `⊤` on `χ_∅` and `χ_X`, `⊥` elsewhere: the smallest convexity.
    pub fn boundary_only(kind: DomainKind, domain: FuzzyDomain, m: Arc<FiniteLattice>) -> Result<Self> {
        let mut out = StructureMap::with_kind(kind, domain, m)?;
        let top = out.m.top();
        out.set_code(out.domain.empty_code(), top);
        out.set_code(out.domain.full_code(), top);
        Ok(out)
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn domain(&self) -> &FuzzyDomain {
        &self.domain
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.domain.carrier()
    }

    /// The lattice `L` of the domain (`2` for crisp maps).
    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        self.domain.lattice()
    }

    /// The value lattice `M`.
    pub fn m(&self) -> &Arc<FiniteLattice> {
        &self.m
    }

    pub fn default_value(&self) -> Elem {
        self.default
    }

    pub fn get(&self, code: u64) -> Elem {
        self.entries.get(&code).copied().unwrap_or(self.default)
    }

    pub fn degree(&self, set: &FuzzySet) -> Elem {
        self.get(self.domain.encode(set))
    }

    /// Degree of a crisp set (of `χ_U` for fuzzy maps).
    pub fn degree_of(&self, set: PointSet) -> Elem {
        self.get(self.domain.characteristic_code(set))
    }

    pub fn set_code(&mut self, code: u64, value: Elem) {
        debug_assert!(code < self.domain.size());
        if value == self.default {
            self.entries.remove(&code);
        } else {
            self.entries.insert(code, value);
        }
    }

    pub fn set(&mut self, set: &FuzzySet, value: Elem) -> Result<()> {
        self.domain.check(set)?;
        if value.index() >= self.m.len() {
            return Err(Error::Range("degree outside M".into()));
        }
        self.set_code(self.domain.encode(set), value);
        Ok(())
    }

    pub fn set_crisp(&mut self, set: PointSet, value: Elem) {
        self.set_code(self.domain.characteristic_code(set), value);
    }

    /// Raises the value at `code` to `value ∨ current`; reports whether it changed.
    pub fn raise(&mut self, code: u64, value: Elem) -> bool {
        let old = self.get(code);
        let new = self.m.join(old, value);
        if new != old {
            self.set_code(code, new);
            true
        } else {
            false
        }
    }

    /// Explicitly stored entries.
    pub fn entries(&self) -> impl Iterator<Item = (u64, Elem)> + '_ {
        self.entries.iter().map(|(&c, &v)| (c, v))
    }

    /// Every `(code, value)` with `value ≠ ⊥`, in code order.
    pub fn support(&self) -> Vec<(u64, Elem)> {
        let bot = self.m.bottom();
        if self.default == bot {
            self.entries().filter(|&(_, v)| v != bot).collect()
        } else {
            self.domain
                .codes()
                .map(|c| (c, self.get(c)))
                .filter(|&(_, v)| v != bot)
                .collect()
        }
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &StructureMap) -> bool {
        let m = &self.m;
        if self.default == m.bottom() {
            return self.entries().all(|(c, v)| m.leq(v, other.get(c)));
        }
        self.domain.codes().all(|c| m.leq(self.get(c), other.get(c)))
    }

    /// Same kind, domain and `M`.
    pub fn same_shape(&self, other: &StructureMap) -> bool {
        self.kind == other.kind && self.domain == other.domain && *self.m == *other.m
    }

    pub fn require_same_shape(&self, other: &StructureMap) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Mismatch(
                "structure maps differ in domain kind, carrier, L or M".into(),
            ))
        }
    }

    pub(crate) fn witness(&self, code: u64) -> Witness {
        match self.kind {
            DomainKind::Crisp => Witness::Crisp(PointSet(code)),
            DomainKind::Fuzzy => Witness::Fuzzy(self.domain.decode(code)),
        }
    }
}

fn check_degree_map(map: &StructureMap, tags: [Axiom; 3]) -> ConvexityCertificate {
    let d = map.domain();
    let m = map.m();
    let mut out = Collector(Vec::new());
    for boundary in [d.empty_code(), d.full_code()] {
        if map.get(boundary) != m.top() {
            out.push(
                tags[0],
                vec![map.witness(boundary)],
                format!("boundary degree is {} instead of top", m.name(map.get(boundary))),
            );
        }
    }
    // pairs with a bottom degree are trivially satisfied
    let support = map.support();
    for (i, &(a, va)) in support.iter().enumerate() {
        for &(b, vb) in &support[i + 1..] {
            if out.full() {
                break;
            }
            let lower = m.meet(va, vb);
            let meet = d.meet_codes(a, b);
            if !m.leq(lower, map.get(meet)) {
                out.push(
                    tags[1],
                    vec![map.witness(a), map.witness(b)],
                    format!(
                        "degree of the meet is {}, below {}",
                        m.name(map.get(meet)),
                        m.name(lower)
                    ),
                );
            }
            if d.leq_codes(a, b) || d.leq_codes(b, a) {
                let join = d.join_codes(a, b);
                if !m.leq(lower, map.get(join)) {
                    out.push(
                        tags[2],
                        vec![map.witness(a), map.witness(b)],
                        "degree of the chain join too small".into(),
                    );
                }
            }
        }
    }
    ConvexityCertificate::from_violations(out.0)
}

/// Checks LMC1–LMC3. Crisp maps are treated as `(2,M)`-fuzzy.
pub fn check_lm_fuzzy(map: &StructureMap) -> ConvexityCertificate {
    check_degree_map(map, [Axiom::LMC1, Axiom::LMC2, Axiom::LMC3])
}

/// Checks MYC1–MYC3 for a map on `2^X`, working with set operations directly.
pub fn check_m_fuzzifying(map: &StructureMap) -> Result<ConvexityCertificate> {
    if map.kind() != DomainKind::Crisp {
        return Err(Error::Mismatch("M-fuzzifying convexities live on 2^X".into()));
    }
    let m = map.m();
    let full = map.carrier().full();
    let deg = |s: PointSet| map.degree_of(s);
    let mut out = Collector(Vec::new());
    for boundary in [PointSet::EMPTY, full] {
        if deg(boundary) != m.top() {
            out.push(
                Axiom::MYC1,
                vec![Witness::Crisp(boundary)],
                format!("boundary degree is {} instead of top", m.name(deg(boundary))),
            );
        }
    }
    let support: Vec<(PointSet, Elem)> = map
        .support()
        .into_iter()
        .map(|(c, v)| (PointSet(c), v))
        .collect();
    for (i, &(a, va)) in support.iter().enumerate() {
        for &(b, vb) in &support[i + 1..] {
            if out.full() {
                break;
            }
            let lower = m.meet(va, vb);
            if !m.leq(lower, deg(a.intersection(b))) {
                out.push(
                    Axiom::MYC2,
                    vec![Witness::Crisp(a), Witness::Crisp(b)],
                    "degree of the intersection too small".into(),
                );
            }
            if (a.is_subset(b) || b.is_subset(a)) && !m.leq(lower, deg(a.union(b))) {
                out.push(
                    Axiom::MYC3,
                    vec![Witness::Crisp(a), Witness::Crisp(b)],
                    "degree of the chain union too small".into(),
                );
            }
        }
    }
    Ok(ConvexityCertificate::from_violations(out.0))
}

// ---------------------------------------------------------------------------
// Cuts of structure maps

/// `𝒞_[a] = {A : a ≤ 𝒞(A)}` for `a ≠ ⊥`.
pub fn cut_lower_structure(map: &StructureMap, a: Elem) -> Result<FuzzyFamily> {
    let m = map.m();
    if a.index() >= m.len() {
        return Err(Error::Range("level outside M".into()));
    }
    if a == m.bottom() {
        return Err(Error::Range(
            "lower cuts are taken at levels other than bottom".into(),
        ));
    }
    let codes = map
        .support()
        .into_iter()
        .filter(|&(_, v)| m.leq(a, v))
        .map(|(c, _)| c);
    Ok(FuzzyFamily::from_codes(map.domain().clone(), codes))
}

/// `𝒞^[a] = {A : a ∉ α(𝒞(A))}` for `a ∈ α(⊥)`.
pub fn cut_upper_structure(map: &StructureMap, a: Elem) -> Result<FuzzyFamily> {
    let m = map.m();
    if a.index() >= m.len() || !m.alpha(m.bottom()).contains(a) {
        return Err(Error::Range(
            "upper cuts are taken at levels in alpha(bottom)".into(),
        ));
    }
    // alpha(bottom) contains a, so bottom-valued sets are excluded
    let codes = map
        .support()
        .into_iter()
        .filter(|&(_, v)| !m.alpha(v).contains(a))
        .map(|(c, _)| c);
    Ok(FuzzyFamily::from_codes(map.domain().clone(), codes))
}

/// Levels `M ∖ {⊥}` at which lower cuts are defined.
pub fn lower_levels(m: &FiniteLattice) -> Vec<Elem> {
    m.elements().filter(|&a| a != m.bottom()).collect()
}

/// Levels `α(⊥)` at which upper cuts are defined.
pub fn upper_levels(m: &FiniteLattice) -> Vec<Elem> {
    m.alpha(m.bottom()).iter().collect()
}

// ---------------------------------------------------------------------------
// Order and meets of structure maps

/// Pointwise meet of a nonempty family of maps of the same shape.
pub fn meet_structures(maps: &[StructureMap]) -> Result<StructureMap> {
    let (first, rest) = maps
        .split_first()
        .ok_or_else(|| Error::Precondition("meet of an empty family".into()))?;
    for other in rest {
        first.require_same_shape(other)?;
    }
    let m = first.m();
    let mut out = first.blank_like();
    out.set_default(
        maps.iter()
            .fold(m.top(), |acc, s| m.meet(acc, s.default_value())),
    );
    let keys: BTreeSet<u64> = maps.iter().flat_map(|s| s.entries().map(|(c, _)| c)).collect();
    for c in keys {
        out.set_code(c, maps.iter().fold(m.top(), |acc, s| m.meet(acc, s.get(c))));
    }
    Ok(out)
}

/// `coarser ≤ finer` pointwise.
pub fn is_coarser(coarser: &StructureMap, finer: &StructureMap) -> Result<bool> {
    coarser.require_same_shape(finer)?;
    Ok(coarser.le(finer))
}

// ---------------------------------------------------------------------------
// Rebuilding a structure from its cuts

fn require_levels(
    m: &FiniteLattice,
    levels: &[Elem],
    cuts: &BTreeMap<Elem, FuzzyFamily>,
    domain: &FuzzyDomain,
) -> Result<()> {
    for &a in levels {
        let fam = cuts.get(&a).ok_or_else(|| {
            Error::Precondition(format!("no convexity given for level {}", m.name(a)))
        })?;
        if fam.domain() != domain {
            return Err(Error::Mismatch(format!(
                "level {} lives over a different domain",
                m.name(a)
            )));
        }
        if let Some(v) = check_l_convexity(fam).first() {
            return Err(Error::Precondition(format!(
                "level {} is not an L-convexity ({} violated)",
                m.name(a),
                v.axiom
            )));
        }
    }
    if let Some(extra) = cuts.keys().find(|a| !levels.contains(a)) {
        return Err(Error::Range(format!(
            "level {} is outside the admissible range",
            m.name(*extra)
        )));
    }
    Ok(())
}

/// Builds `𝒞` with `𝒞_[a] = 𝒞_a` from a family indexed by `M ∖ {⊥}`.
///
/// Requires `𝒞_a = ⋂{𝒞_b : b ∈ β(a), b ≠ ⊥}` for every level (the level
/// `⊥` has the trivial cut `L^X`). The result is `𝒞(A) = ⋁{a : A ∈ 𝒞_a}`.
pub fn structure_from_lower_cuts(
    kind: DomainKind,
    domain: FuzzyDomain,
    m: Arc<FiniteLattice>,
    cuts: &BTreeMap<Elem, FuzzyFamily>,
) -> Result<StructureMap> {
    let levels = lower_levels(&m);
    require_levels(&m, &levels, cuts, &domain)?;
    for &a in &levels {
        let fam = &cuts[&a];
        for c in domain.codes() {
            let expected = m
                .beta(a)
                .iter()
                .filter(|&b| b != m.bottom())
                .all(|b| cuts[&b].contains_code(c));
            if fam.contains_code(c) != expected {
                return Err(Error::Precondition(format!(
                    "level {} differs from the intersection over beta({})",
                    m.name(a),
                    m.name(a)
                )));
            }
        }
    }
    let mut out = StructureMap::with_kind(kind, domain, m.clone())?;
    for (&a, fam) in cuts {
        for c in fam.codes() {
            out.raise(c, a);
        }
    }
    Ok(out)
}

/// Builds `𝒞` with `𝒞^[a] = 𝒞^a` from a family indexed by `α(⊥)`.
///
/// Requires `𝒞^a = ⋂{𝒞^b : a ∈ α(b)}` (levels outside `α(⊥)` have the
/// trivial cut `L^X`). The result is `𝒞(A) = ⋀{a ∈ α(⊥) : A ∉ 𝒞^a}`.
pub fn structure_from_upper_cuts(
    kind: DomainKind,
    domain: FuzzyDomain,
    m: Arc<FiniteLattice>,
    cuts: &BTreeMap<Elem, FuzzyFamily>,
) -> Result<StructureMap> {
    let levels = upper_levels(&m);
    require_levels(&m, &levels, cuts, &domain)?;
    let in_cut = |b: Elem, c: u64| cuts.get(&b).map_or(true, |f| f.contains_code(c));
    for &a in &levels {
        for c in domain.codes() {
            let expected = m
                .elements()
                .filter(|&b| m.alpha(b).contains(a))
                .all(|b| in_cut(b, c));
            if in_cut(a, c) != expected {
                return Err(Error::Precondition(format!(
                    "level {} differs from the intersection over {{b : {} in alpha(b)}}",
                    m.name(a),
                    m.name(a)
                )));
            }
        }
    }
    let mut out = StructureMap::with_kind(kind, domain.clone(), m.clone())?;
    for c in domain.codes() {
        let v = m.meet_family(levels.iter().copied().filter(|&a| !in_cut(a, c)));
        out.set_code(c, v);
    }
    Ok(out)
}
