//! `L`-fuzzy sets over finite carriers.
//!
//! A [`FuzzySet`] is a plain vector of lattice elements indexed by the points
//! of a [`Carrier`]; operations that need the order take the lattice as an
//! argument. Crisp subsets are [`PointSet`] bitmasks and embed into `L^X`
//! through [`FuzzySet::characteristic`].
//!
//! [`FuzzyDomain`] pairs a carrier with a lattice and numbers the elements of
//! `L^X` by a mixed-radix code (point `i` is digit `i` in base `|L|`). Codes are
//! the keys used by structure maps.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

/// Largest supported carrier; crisp subsets are `u64` bitmasks.
pub const MAX_POINTS: usize = 64;

/// A nonempty finite set of named points.
#[derive(Clone)]
pub struct Carrier {
    points: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for Carrier {}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.points).finish()
    }
}

impl Carrier {
    pub fn new<S: AsRef<str>>(points: &[S]) -> Result<Carrier> {
        if points.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if points.len() > MAX_POINTS {
            return Err(Error::CarrierTooLarge(points.len()));
        }
        let mut index = HashMap::with_capacity(points.len());
        let points: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        Ok(Carrier { points, index })
    }

    /// Points named `x1, ..., xn`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Carrier> {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Carrier::new(&names)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        names.iter().try_fold(PointSet::EMPTY, |acc, s| {
            Ok(acc.with(self.index_of(s.as_ref())?))
        })
    }

    /// The carrier of the points in `set`, in the original order.
    pub fn restrict(&self, set: PointSet) -> Result<Carrier> {
        let names: Vec<&str> = set.iter().map(|i| self.point(i)).collect();
        Carrier::new(&names)
    }

    pub fn render(&self, set: PointSet) -> Vec<String> {
        set.iter().map(|i| self.points[i].clone()).collect()
    }

    /// All subsets of the carrier, in bitmask order.
    pub fn all_subsets(&self) -> impl Iterator<Item = PointSet> {
        let n = self.len();
        (0..=PointSet::full(n).0).map(PointSet)
    }
}

/// A crisp subset of a carrier, as a bitmask over point indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> PointSet {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> PointSet {
        PointSet(1 << i)
    }

    pub fn with(self, i: usize) -> PointSet {
        PointSet(self.0 | 1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self.0 >> i & 1 == 1)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A total map from carrier points to lattice elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FuzzySet {
    values: Vec<Elem>,
}

impl FuzzySet {
    pub fn from_values(values: Vec<Elem>) -> FuzzySet {
        FuzzySet { values }
    }

    /// Builds a fuzzy set from `(point, element)` names; every point must be given.
    pub fn from_named<S: AsRef<str>, T: AsRef<str>>(
        carrier: &Carrier,
        lat: &FiniteLattice,
        pairs: &[(S, T)],
    ) -> Result<FuzzySet> {
        let mut values: Vec<Option<Elem>> = vec![None; carrier.len()];
        for (p, v) in pairs {
            let i = carrier.index_of(p.as_ref())?;
            if values[i].is_some() {
                return Err(Error::DuplicatePoint(p.as_ref().to_string()));
            }
            values[i] = Some(lat.elem(v.as_ref())?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::NotTotal(carrier.point(i).to_string())))
            .collect::<Result<_>>()?;
        Ok(FuzzySet { values })
    }

    pub fn constant(len: usize, a: Elem) -> FuzzySet {
        FuzzySet { values: vec![a; len] }
    }

    /// `χ_S`: `⊤` on `set`, `⊥` elsewhere.
    pub fn characteristic(lat: &FiniteLattice, len: usize, set: PointSet) -> FuzzySet {
        FuzzySet::scalar_meet(lat, len, lat.top(), set)
    }

    /// `a ∧ χ_S`: the value `a` on `set`, `⊥` elsewhere.
    pub fn scalar_meet(lat: &FiniteLattice, len: usize, a: Elem, set: PointSet) -> FuzzySet {
        let values = (0..len)
            .map(|i| if set.contains(i) { a } else { lat.bottom() })
            .collect();
        FuzzySet { values }
    }

    /// `a ∨ χ_S`: `⊤` on `set`, the value `a` elsewhere.
    pub fn scalar_join(lat: &FiniteLattice, len: usize, a: Elem, set: PointSet) -> FuzzySet {
        let values = (0..len)
            .map(|i| if set.contains(i) { lat.top() } else { a })
            .collect();
        FuzzySet { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn value(&self, point: usize) -> Elem {
        self.values[point]
    }

    pub fn meet(&self, other: &FuzzySet, lat: &FiniteLattice) -> FuzzySet {
        self.zip_with(other, |a, b| lat.meet(a, b))
    }

    pub fn join(&self, other: &FuzzySet, lat: &FiniteLattice) -> FuzzySet {
        self.zip_with(other, |a, b| lat.join(a, b))
    }

    fn zip_with(&self, other: &FuzzySet, f: impl Fn(Elem, Elem) -> Elem) -> FuzzySet {
        assert_eq!(self.len(), other.len(), "fuzzy sets over different carriers");
        FuzzySet {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Pointwise meet of a family; the empty meet is `χ_X`.
    pub fn meet_all<'a, I: IntoIterator<Item = &'a FuzzySet>>(
        lat: &FiniteLattice,
        len: usize,
        family: I,
    ) -> FuzzySet {
        family
            .into_iter()
            .fold(FuzzySet::constant(len, lat.top()), |acc, a| acc.meet(a, lat))
    }

    /// Pointwise join of a family; the empty join is `χ_∅`.
    pub fn join_all<'a, I: IntoIterator<Item = &'a FuzzySet>>(
        lat: &FiniteLattice,
        len: usize,
        family: I,
    ) -> FuzzySet {
        family
            .into_iter()
            .fold(FuzzySet::constant(len, lat.bottom()), |acc, a| acc.join(a, lat))
    }

    /// Pointwise order `self ≤ other`.
    pub fn is_subset(&self, other: &FuzzySet, lat: &FiniteLattice) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| lat.leq(a, b))
    }

    fn points_where(&self, pred: impl Fn(Elem) -> bool) -> PointSet {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| pred(v))
            .fold(PointSet::EMPTY, |acc, (i, _)| acc.with(i))
    }

    /// `A_[a] = {x : a ≤ A(x)}`.
    pub fn cut_lower(&self, lat: &FiniteLattice, a: Elem) -> PointSet {
        self.points_where(|v| lat.leq(a, v))
    }

    /// `A^[a] = {x : a ∉ α(A(x))}`.
    pub fn cut_upper(&self, lat: &FiniteLattice, a: Elem) -> PointSet {
        self.points_where(|v| !lat.alpha(v).contains(a))
    }

    /// `A_(a) = {x : a ∈ β(A(x))}`.
    pub fn cut_strict(&self, lat: &FiniteLattice, a: Elem) -> PointSet {
        self.points_where(|v| lat.beta(v).contains(a))
    }

    /// Recomposes `A` from its cuts as `⋁_a (a ∧ A_[a])` and `⋀_a (a ∨ A^[a])`.
    pub fn decompose(&self, lat: &FiniteLattice) -> Decomposition {
        let n = self.len();
        let lower: Vec<FuzzySet> = lat
            .elements()
            .map(|a| FuzzySet::scalar_meet(lat, n, a, self.cut_lower(lat, a)))
            .collect();
        let upper: Vec<FuzzySet> = lat
            .elements()
            .map(|a| FuzzySet::scalar_join(lat, n, a, self.cut_upper(lat, a)))
            .collect();
        let join_form = FuzzySet::join_all(lat, n, &lower);
        let meet_form = FuzzySet::meet_all(lat, n, &upper);
        Decomposition {
            join_holds: &join_form == self,
            meet_holds: &meet_form == self,
            join_form,
            meet_form,
        }
    }

    /// Restriction to the points of `set` (re-indexed in order).
    pub fn restrict(&self, set: PointSet) -> FuzzySet {
        FuzzySet {
            values: set.iter().map(|i| self.values[i]).collect(),
        }
    }

    /// The crisp set `{x : A(x) = ⊤}` when `A` only takes the values `⊥`/`⊤`.
    pub fn as_crisp(&self, lat: &FiniteLattice) -> Option<PointSet> {
        self.values
            .iter()
            .all(|&v| v == lat.top() || v == lat.bottom())
            .then(|| self.points_where(|v| v == lat.top()))
    }
}

/// Both sides of the cut decomposition of a fuzzy set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub join_form: FuzzySet,
    pub meet_form: FuzzySet,
    pub join_holds: bool,
    pub meet_holds: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.join_holds && self.meet_holds
    }
}

/// The set `L^X` for a carrier `X` and lattice `L`, with a numbering of its members.
#[derive(Clone, Debug)]
pub struct FuzzyDomain {
    carrier: Arc<Carrier>,
    lattice: Arc<FiniteLattice>,
    size: u64,
}

impl PartialEq for FuzzyDomain {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.carrier, &other.carrier) || self.carrier == other.carrier)
            && (Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice)
    }
}

impl Eq for FuzzyDomain {}

impl FuzzyDomain {
    pub fn new(carrier: Arc<Carrier>, lattice: Arc<FiniteLattice>) -> Result<FuzzyDomain> {
        let size = (lattice.len() as u64)
            .checked_pow(carrier.len() as u32)
            .ok_or_else(|| Error::Budget {
                what: "fuzzy-set numbering".into(),
                required: (lattice.len() as u128).saturating_pow(carrier.len() as u32),
                budget: u64::MAX as u128,
            })?;
        Ok(FuzzyDomain {
            carrier,
            lattice,
            size,
        })
    }

    /// The crisp domain `2^X`, numbered by bitmask.
    pub fn crisp(carrier: Arc<Carrier>) -> FuzzyDomain {
        let size = 1u64 << carrier.len().min(63);
        FuzzyDomain {
            carrier,
            lattice: FiniteLattice::two(),
            size,
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn points(&self) -> usize {
        self.carrier.len()
    }

    /// `|L|^|X|`.
    pub fn size(&self) -> u64 {
        self.size
    }

    fn radix(&self) -> u64 {
        self.lattice.len() as u64
    }

    pub fn encode(&self, set: &FuzzySet) -> u64 {
        debug_assert_eq!(set.len(), self.points());
        set.values()
            .iter()
            .rev()
            .fold(0u64, |acc, v| acc * self.radix() + v.index() as u64)
    }

    pub fn decode(&self, code: u64) -> FuzzySet {
        let mut rest = code;
        let values = (0..self.points())
            .map(|_| {
                let d = rest % self.radix();
                rest /= self.radix();
                Elem::from_index(d as usize)
            })
            .collect();
        FuzzySet::from_values(values)
    }

    pub fn value_at(&self, code: u64, point: usize) -> Elem {
        Elem::from_index((code / self.radix().pow(point as u32) % self.radix()) as usize)
    }

    pub fn meet_codes(&self, a: u64, b: u64) -> u64 {
        self.combine(a, b, |x, y| self.lattice.meet(x, y))
    }

    pub fn join_codes(&self, a: u64, b: u64) -> u64 {
        self.combine(a, b, |x, y| self.lattice.join(x, y))
    }

    fn combine(&self, a: u64, b: u64, f: impl Fn(Elem, Elem) -> Elem) -> u64 {
        let r = self.radix();
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.points() {
            let v = f(
                Elem::from_index((a % r) as usize),
                Elem::from_index((b % r) as usize),
            );
            out += v.index() as u64 * place;
            place = place.wrapping_mul(r);
            a /= r;
            b /= r;
        }
        out
    }

    pub fn leq_codes(&self, a: u64, b: u64) -> bool {
        let r = self.radix();
        let (mut a, mut b) = (a, b);
        (0..self.points()).all(|_| {
            let ok = self.lattice.leq(
                Elem::from_index((a % r) as usize),
                Elem::from_index((b % r) as usize),
            );
            a /= r;
            b /= r;
            ok
        })
    }

    pub fn constant_code(&self, a: Elem) -> u64 {
        self.encode(&FuzzySet::constant(self.points(), a))
    }

    /// Code of `χ_∅`.
    pub fn empty_code(&self) -> u64 {
        self.constant_code(self.lattice.bottom())
    }

    /// Code of `χ_X`.
    pub fn full_code(&self) -> u64 {
        self.constant_code(self.lattice.top())
    }

    pub fn characteristic_code(&self, set: PointSet) -> u64 {
        self.encode(&FuzzySet::characteristic(&self.lattice, self.points(), set))
    }

    pub fn is_boundary(&self, code: u64) -> bool {
        code == self.empty_code() || code == self.full_code()
    }

    pub fn codes(&self) -> std::ops::Range<u64> {
        0..self.size
    }

    pub fn all(&self) -> impl Iterator<Item = FuzzySet> + '_ {
        self.codes().map(|c| self.decode(c))
    }

    /// Checks that `set` lives over this carrier.
    pub fn check(&self, set: &FuzzySet) -> Result<()> {
        if set.len() != self.points() {
            return Err(Error::Mismatch(format!(
                "fuzzy set has {} values but the carrier has {} points",
                set.len(),
                self.points()
            )));
        }
        if set.values().iter().any(|v| v.index() >= self.lattice.len()) {
            return Err(Error::Mismatch("fuzzy set value outside the lattice".into()));
        }
        Ok(())
    }

    /// Renders a member as `{point: element}` pairs.
    pub fn render(&self, set: &FuzzySet) -> Vec<(String, String)> {
        set.values()
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.carrier.point(i).to_string(), self.lattice.name(v).to_string()))
            .collect()
    }
}

/// A total function between finite carriers.
#[derive(Clone, PartialEq, Eq)]
pub struct SpaceMap {
    domain: Arc<Carrier>,
    codomain: Arc<Carrier>,
    graph: Vec<usize>,
}

impl fmt::Debug for SpaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.graph
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (self.domain.point(i), self.codomain.point(j))),
            )
            .finish()
    }
}

impl SpaceMap {
    pub fn from_indices(
        domain: Arc<Carrier>,
        codomain: Arc<Carrier>,
        graph: Vec<usize>,
    ) -> Result<SpaceMap> {
        if graph.len() != domain.len() {
            return Err(Error::Mismatch(format!(
                "map graph has {} entries for {} domain points",
                graph.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = graph.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::Range(format!("codomain index {bad}")));
        }
        Ok(SpaceMap {
            domain,
            codomain,
            graph,
        })
    }

    pub fn from_named<S: AsRef<str>, T: AsRef<str>>(
        domain: Arc<Carrier>,
        codomain: Arc<Carrier>,
        pairs: &[(S, T)],
    ) -> Result<SpaceMap> {
        let mut graph: Vec<Option<usize>> = vec![None; domain.len()];
        for (x, y) in pairs {
            let i = domain.index_of(x.as_ref())?;
            if graph[i].is_some() {
                return Err(Error::DuplicatePoint(x.as_ref().to_string()));
            }
            graph[i] = Some(codomain.index_of(y.as_ref())?);
        }
        let graph = graph
            .into_iter()
            .enumerate()
            .map(|(i, j)| j.ok_or_else(|| Error::NotTotal(domain.point(i).to_string())))
            .collect::<Result<_>>()?;
        SpaceMap::from_indices(domain, codomain, graph)
    }

    pub fn identity(carrier: Arc<Carrier>) -> SpaceMap {
        let graph = (0..carrier.len()).collect();
        SpaceMap {
            domain: carrier.clone(),
            codomain: carrier,
            graph,
        }
    }

    pub fn constant(domain: Arc<Carrier>, codomain: Arc<Carrier>, target: usize) -> Result<SpaceMap> {
        let graph = vec![target; domain.len()];
        SpaceMap::from_indices(domain, codomain, graph)
    }

    pub fn domain(&self) -> &Arc<Carrier> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Carrier> {
        &self.codomain
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    pub fn image(&self) -> PointSet {
        self.graph
            .iter()
            .fold(PointSet::EMPTY, |acc, &j| acc.with(j))
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.codomain.full()
    }

    /// Errors with the first codomain point whose fiber is empty.
    pub fn require_surjective(&self) -> Result<()> {
        let missing = self.codomain.full().0 & !self.image().0;
        if missing == 0 {
            Ok(())
        } else {
            Err(Error::NotSurjective(
                self.codomain.point(missing.trailing_zeros() as usize).to_string(),
            ))
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SpaceMap) -> Result<SpaceMap> {
        if *self.codomain != *g.domain {
            return Err(Error::Mismatch("maps are not composable".into()));
        }
        let graph = self.graph.iter().map(|&y| g.graph[y]).collect();
        SpaceMap::from_indices(self.domain.clone(), g.codomain.clone(), graph)
    }

    /// `f⁻¹(U)`.
    pub fn preimage(&self, set: PointSet) -> PointSet {
        self.graph
            .iter()
            .enumerate()
            .filter(|(_, &y)| set.contains(y))
            .fold(PointSet::EMPTY, |acc, (x, _)| acc.with(x))
    }

    /// `f→(A)(y) = ⋁_{f(x)=y} A(x)`; empty fibers get `⊥`.
    pub fn forward_image(&self, a: &FuzzySet, lat: &FiniteLattice) -> FuzzySet {
        let mut values = vec![lat.bottom(); self.codomain.len()];
        for (x, &y) in self.graph.iter().enumerate() {
            values[y] = lat.join(values[y], a.value(x));
        }
        FuzzySet::from_values(values)
    }

    /// `f←(B) = B ∘ f`.
    pub fn backward_image(&self, b: &FuzzySet) -> FuzzySet {
        FuzzySet::from_values(self.graph.iter().map(|&y| b.value(y)).collect())
    }

    /// The fibers `f⁻¹(y)` for every codomain point.
    pub fn fibers(&self) -> Vec<PointSet> {
        let mut out = vec![PointSet::EMPTY; self.codomain.len()];
        for (x, &y) in self.graph.iter().enumerate() {
            out[y] = out[y].with(x);
        }
        out
    }

    /// The `B` with `B ∘ f = A`, if `A` is constant on fibers (requires surjectivity
    /// for uniqueness).
    pub fn descend(&self, a: &FuzzySet) -> Option<FuzzySet> {
        let mut values: Vec<Option<Elem>> = vec![None; self.codomain.len()];
        for (x, &y) in self.graph.iter().enumerate() {
            match values[y] {
                None => values[y] = Some(a.value(x)),
                Some(v) if v != a.value(x) => return None,
                Some(_) => {}
            }
        }
        values.into_iter().collect::<Option<Vec<_>>>().map(FuzzySet::from_values)
    }
}
