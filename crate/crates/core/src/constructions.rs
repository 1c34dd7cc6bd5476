//! Building new structures from old: preimages, quotients, substructures,
//! subbase generation, products, and hull operators.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use crate::convexity::{ClassicalConvexity, DomainKind, LConvexity, StructureMap};
use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, FuzzyDomain, FuzzySet, PointSet, SpaceMap};
use crate::lattice::FiniteLattice;

/// Default cap on `|L|^|∏X|` for products.
pub const DEFAULT_PRODUCT_BUDGET: u128 = 19_683;

/// The domain of the given kind over `carrier`.
pub fn domain_of(kind: DomainKind, carrier: Arc<Carrier>, lattice: &Arc<FiniteLattice>) -> Result<FuzzyDomain> {
    match kind {
        DomainKind::Crisp => Ok(FuzzyDomain::crisp(carrier)),
        DomainKind::Fuzzy => FuzzyDomain::new(carrier, lattice.clone()),
    }
}

/// Code of `B ∘ f` in `to`, for `B` given by its code in `from`.
pub fn pullback_code(f: &SpaceMap, from: &FuzzyDomain, to: &FuzzyDomain, code: u64) -> u64 {
    to.encode(&f.backward_image(&from.decode(code)))
}

fn require_codomain(map: &StructureMap, f: &SpaceMap) -> Result<()> {
    if **f.codomain() != **map.carrier() {
        return Err(Error::Mismatch(
            "map codomain differs from the structure's carrier".into(),
        ));
    }
    Ok(())
}

fn require_domain(map: &StructureMap, f: &SpaceMap) -> Result<()> {
    if **f.domain() != **map.carrier() {
        return Err(Error::Mismatch(
            "map domain differs from the structure's carrier".into(),
        ));
    }
    Ok(())
}

/// `f←(𝒟)(A) = ⋁{𝒟(B) : B ∘ f = A}` on the domain of a surjection `f`.
pub fn preimage_structure(d: &StructureMap, f: &SpaceMap) -> Result<StructureMap> {
    require_codomain(d, f)?;
    f.require_surjective()?;
    let to = domain_of(d.kind(), f.domain().clone(), d.lattice())?;
    let mut out = StructureMap::with_kind(d.kind(), to.clone(), d.m().clone())?;
    for (b, v) in d.support() {
        out.raise(pullback_code(f, d.domain(), &to, b), v);
    }
    Ok(out)
}

/// `𝒞_/f(B) = 𝒞(B ∘ f)` on the codomain of a surjection `f`.
pub fn quotient_structure(c: &StructureMap, f: &SpaceMap) -> Result<StructureMap> {
    require_domain(c, f)?;
    f.require_surjective()?;
    let to = domain_of(c.kind(), f.codomain().clone(), c.lattice())?;
    StructureMap::from_fn(c.kind(), to.clone(), c.m().clone(), |b| {
        c.get(pullback_code(f, &to, c.domain(), b))
    })
}

/// A partition of a carrier into equivalence classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceRelation {
    carrier: Arc<Carrier>,
    classes: Vec<PointSet>,
}

impl EquivalenceRelation {
    /// From a list of classes; they must be nonempty, disjoint and cover the carrier.
    pub fn from_classes(carrier: Arc<Carrier>, classes: Vec<PointSet>) -> Result<Self> {
        let mut seen = PointSet::EMPTY;
        for &c in &classes {
            if c.is_empty() {
                return Err(Error::Precondition("empty equivalence class".into()));
            }
            if !c.intersection(seen).is_empty() {
                let x = c.intersection(seen).iter().next().unwrap_or(0);
                return Err(Error::Precondition(format!(
                    "point `{}` lies in two classes",
                    carrier.point(x)
                )));
            }
            seen = seen.union(c);
        }
        if seen != carrier.full() {
            let x = carrier.full().0 & !seen.0;
            return Err(Error::Precondition(format!(
                "point `{}` lies in no class",
                carrier.point(x.trailing_zeros() as usize)
            )));
        }
        let mut classes = classes;
        classes.sort_by_key(|c| c.0.trailing_zeros());
        Ok(EquivalenceRelation { carrier, classes })
    }

    /// From a relation given as a predicate; it must be reflexive, symmetric and transitive.
    pub fn from_relation(carrier: Arc<Carrier>, related: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = carrier.len();
        for x in 0..n {
            if !related(x, x) {
                return Err(Error::Precondition(format!(
                    "relation is not reflexive at `{}`",
                    carrier.point(x)
                )));
            }
            for y in 0..n {
                if related(x, y) && !related(y, x) {
                    return Err(Error::Precondition(format!(
                        "relation is not symmetric at ({}, {})",
                        carrier.point(x),
                        carrier.point(y)
                    )));
                }
                for z in 0..n {
                    if related(x, y) && related(y, z) && !related(x, z) {
                        return Err(Error::Precondition(format!(
                            "relation is not transitive at ({}, {}, {})",
                            carrier.point(x),
                            carrier.point(y),
                            carrier.point(z)
                        )));
                    }
                }
            }
        }
        let mut classes = Vec::new();
        let mut seen = PointSet::EMPTY;
        for x in 0..n {
            if !seen.contains(x) {
                let class = (0..n).filter(|&y| related(x, y)).fold(PointSet::EMPTY, |s, y| s.with(y));
                seen = seen.union(class);
                classes.push(class);
            }
        }
        EquivalenceRelation::from_classes(carrier, classes)
    }

    pub fn classes(&self) -> &[PointSet] {
        &self.classes
    }

    /// The quotient set `X/R`, points named by their classes.
    pub fn quotient_carrier(&self) -> Result<Carrier> {
        let names: Vec<String> = self
            .classes
            .iter()
            .map(|&c| format!("[{}]", self.carrier.render(c).join(",")))
            .collect();
        Carrier::new(&names)
    }

    /// The projection `π : X → X/R`.
    pub fn projection(&self) -> Result<SpaceMap> {
        let mut graph = vec![0; self.carrier.len()];
        for (k, c) in self.classes.iter().enumerate() {
            for x in c.iter() {
                graph[x] = k;
            }
        }
        SpaceMap::from_indices(self.carrier.clone(), Arc::new(self.quotient_carrier()?), graph)
    }
}

/// The quotient along the projection of an equivalence relation.
pub fn quotient_by_equivalence(c: &StructureMap, r: &EquivalenceRelation) -> Result<(SpaceMap, StructureMap)> {
    let pi = r.projection()?;
    let q = quotient_structure(c, &pi)?;
    Ok((pi, q))
}

/// `(𝒞|Y)(A) = ⋁{𝒞(B) : B|Y = A}` on the nonempty subset `Y`.
pub fn substructure(c: &StructureMap, y: PointSet) -> Result<StructureMap> {
    if y.is_empty() {
        return Err(Error::Precondition("substructure on an empty subset".into()));
    }
    if !y.is_subset(c.carrier().full()) {
        return Err(Error::Range("subset has points outside the carrier".into()));
    }
    let sub = Arc::new(c.carrier().restrict(y)?);
    let to = domain_of(c.kind(), sub, c.lattice())?;
    let mut out = StructureMap::with_kind(c.kind(), to.clone(), c.m().clone())?;
    for (b, v) in c.support() {
        let restricted = c.domain().decode(b).restrict(y);
        out.raise(to.encode(&restricted), v);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Hull operators

/// The hull operator of a classical convexity, memoized.
#[derive(Debug)]
pub struct HullOperator {
    conv: ClassicalConvexity,
    memo: Mutex<HashMap<PointSet, PointSet>>,
}

impl HullOperator {
    pub fn new(conv: ClassicalConvexity) -> Self {
        HullOperator {
            conv,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn convexity(&self) -> &ClassicalConvexity {
        &self.conv
    }

    /// The intersection of all convex supersets of `a`.
    pub fn hull(&self, a: PointSet) -> PointSet {
        if let Some(&h) = self.memo.lock().expect("hull memo poisoned").get(&a) {
            return h;
        }
        let h = self
            .conv
            .members()
            .filter(|&m| a.is_subset(m))
            .fold(self.conv.carrier().full(), PointSet::intersection);
        self.memo.lock().expect("hull memo poisoned").insert(a, h);
        h
    }
}

/// `co(A ∩ Y) ∩ Y = A ∩ Y` for a convex `A`.
pub fn restricted_hull_identity(co: &HullOperator, y: PointSet, a: PointSet) -> Result<bool> {
    if !co.convexity().contains(a) {
        return Err(Error::Precondition("the set is not convex".into()));
    }
    let ay = a.intersection(y);
    Ok(co.hull(ay).intersection(y) == ay)
}

/// The same identity for an `L`-convexity, where `A|Y` is `A` on `Y` and `⊥` elsewhere.
pub fn restricted_l_hull_identity(conv: &LConvexity, y: PointSet, a: &FuzzySet) -> Result<bool> {
    if !conv.contains(a) {
        return Err(Error::Precondition("the fuzzy set is not in the L-convexity".into()));
    }
    let l = conv.domain().lattice();
    let cut = |s: &FuzzySet| {
        FuzzySet::from_values(
            (0..s.len())
                .map(|x| if y.contains(x) { s.value(x) } else { l.bottom() })
                .collect(),
        )
    };
    let ay = cut(a);
    Ok(cut(&conv.hull(&ay)) == ay)
}

// ---------------------------------------------------------------------------
// Subbases

/// An arbitrary degree map, used to generate a convexity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subbase(pub StructureMap);

/// The least convexity above `φ`, by least fixpoint of the pairwise-meet closure.
pub fn generate_from_subbase(phi: &Subbase) -> StructureMap {
    let mut c = phi.0.clone();
    let d = c.domain().clone();
    let m = c.m().clone();
    let bot = m.bottom();
    c.raise(d.empty_code(), m.top());
    c.raise(d.full_code(), m.top());

    let mut support: Vec<u64> = c.support().into_iter().map(|(code, _)| code).collect();
    let mut in_support: BTreeSet<u64> = support.iter().copied().collect();
    let mut queue: VecDeque<u64> = support.iter().copied().collect();
    let mut queued: BTreeSet<u64> = in_support.clone();
    while let Some(a) = queue.pop_front() {
        queued.remove(&a);
        let va = c.get(a);
        let mut i = 0;
        while i < support.len() {
            let b = support[i];
            i += 1;
            let v = m.meet(va, c.get(b));
            if v == bot {
                continue;
            }
            let ab = d.meet_codes(a, b);
            if c.raise(ab, v) {
                if in_support.insert(ab) {
                    support.push(ab);
                }
                if queued.insert(ab) {
                    queue.push_back(ab);
                }
            }
        }
    }
    c
}

// ---------------------------------------------------------------------------
// Products

/// A product space with its projections, subbase and generated structure.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    pub carrier: Arc<Carrier>,
    pub projections: Vec<SpaceMap>,
    pub subbase: Subbase,
    pub structure: StructureMap,
}

/// The product structure: generated by `φ = ⋁_t π_t←(𝒞_t)`.
pub fn product_structure(factors: &[StructureMap], budget: u128) -> Result<ProductSpace> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Precondition("product of no factors".into()))?;
    for f in rest {
        if f.kind() != first.kind() || **f.lattice() != **first.lattice() || **f.m() != **first.m() {
            return Err(Error::Mismatch("factors differ in domain kind, L or M".into()));
        }
    }
    let points: u128 = factors.iter().map(|f| f.carrier().len() as u128).product();
    let radix = first.lattice().len() as u128;
    let required = u32::try_from(points)
        .ok()
        .and_then(|p| radix.checked_pow(p))
        .unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::Budget {
            what: format!("product domain ({points} points)"),
            required,
            budget,
        });
    }

    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.carrier().len()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    let names: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .zip(factors)
                .map(|(&i, f)| f.carrier().point(i))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let carrier = Arc::new(Carrier::new(&names)?);
    let projections = factors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            SpaceMap::from_indices(carrier.clone(), f.carrier().clone(), tuples.iter().map(|t| t[k]).collect())
        })
        .collect::<Result<Vec<_>>>()?;

    let domain = domain_of(first.kind(), carrier.clone(), first.lattice())?;
    let mut phi = StructureMap::with_kind(first.kind(), domain, first.m().clone())?;
    for (f, pi) in factors.iter().zip(&projections) {
        for (code, v) in preimage_structure(f, pi)?.support() {
            phi.raise(code, v);
        }
    }
    let subbase = Subbase(phi);
    let structure = generate_from_subbase(&subbase);
    Ok(ProductSpace {
        carrier,
        projections,
        subbase,
        structure,
    })
}
