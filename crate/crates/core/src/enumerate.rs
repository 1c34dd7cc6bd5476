//! Exhaustive and random generators for small instances.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::{generate_from_subbase, Subbase};
use crate::convexity::{check_lm_fuzzy, ClassicalConvexity, DomainKind, StructureMap};
use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, FuzzyDomain, FuzzySet, PointSet, SpaceMap};
use crate::gallery::IntervalOperator;
use crate::lattice::{Elem, FiniteLattice};

/// Every partial order on `n` labelled points, as `leq` matrices.
pub fn all_posets(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])));
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k]))
        });
        if antisymmetric && transitive {
            out.push(leq);
        }
    }
    out
}

/// Downset lattices of all posets on `1..=max_points` points with at most `max_elements`
/// elements. Every finite distributive lattice of that size arises this way.
pub fn distributive_lattices(max_points: usize, max_elements: usize) -> Vec<FiniteLattice> {
    let mut out: Vec<FiniteLattice> = Vec::new();
    for n in 1..=max_points {
        for poset in all_posets(n) {
            let lat = FiniteLattice::downsets_of(&poset).expect("downsets form a lattice");
            if lat.len() <= max_elements && !out.contains(&lat) {
                out.push(lat);
            }
        }
    }
    out
}

/// Every function `X → Y`.
pub fn all_maps(x: &Arc<Carrier>, y: &Arc<Carrier>) -> Vec<SpaceMap> {
    let (n, k) = (x.len(), y.len());
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let graph = (0..n)
                .map(|_| {
                    let v = code % k;
                    code /= k;
                    v
                })
                .collect();
            SpaceMap::from_indices(x.clone(), y.clone(), graph).expect("graph in range")
        })
        .collect()
}

pub fn all_surjections(x: &Arc<Carrier>, y: &Arc<Carrier>) -> Vec<SpaceMap> {
    all_maps(x, y).into_iter().filter(SpaceMap::is_surjective).collect()
}

/// Every map `domain → M`, in a fixed order. Errors when there are more than `cap`.
pub fn all_structure_maps(
    kind: DomainKind,
    domain: &FuzzyDomain,
    m: &Arc<FiniteLattice>,
    cap: u128,
) -> Result<Vec<StructureMap>> {
    let codes: Vec<u64> = domain.codes().collect();
    assignments(kind, domain, m, &codes, cap, |_| {})
}

/// Every map `domain → M` that passes the axioms.
pub fn all_valid_structures(
    kind: DomainKind,
    domain: &FuzzyDomain,
    m: &Arc<FiniteLattice>,
    cap: u128,
) -> Result<Vec<StructureMap>> {
    let codes: Vec<u64> = domain.codes().filter(|&c| !domain.is_boundary(c)).collect();
    let top = m.top();
    let (empty, full) = (domain.empty_code(), domain.full_code());
    let all = assignments(kind, domain, m, &codes, cap, |s| {
        s.set_code(empty, top);
        s.set_code(full, top);
    })?;
    Ok(all.into_iter().filter(|s| check_lm_fuzzy(s).is_valid()).collect())
}

fn assignments(
    kind: DomainKind,
    domain: &FuzzyDomain,
    m: &Arc<FiniteLattice>,
    codes: &[u64],
    cap: u128,
    prepare: impl Fn(&mut StructureMap),
) -> Result<Vec<StructureMap>> {
    let k = m.len() as u128;
    let total = u32::try_from(codes.len())
        .ok()
        .and_then(|n| k.checked_pow(n))
        .unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::Budget {
            what: "structure-map enumeration".into(),
            required: total,
            budget: cap,
        });
    }
    let elems: Vec<Elem> = m.elements().collect();
    let mut base = StructureMap::with_kind(kind, domain.clone(), m.clone())?;
    prepare(&mut base);
    let mut out = Vec::with_capacity(total as usize);
    for mut n in 0..total {
        let mut s = base.clone();
        for &c in codes {
            s.set_code(c, elems[(n % k) as usize]);
            n /= k;
        }
        out.push(s);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Random instances

pub fn random_elem<R: Rng>(rng: &mut R, lat: &FiniteLattice) -> Elem {
    lat.elem_at(rng.gen_range(0..lat.len())).expect("index in range")
}

pub fn random_fuzzy_set<R: Rng>(rng: &mut R, domain: &FuzzyDomain) -> FuzzySet {
    domain.decode(rng.gen_range(0..domain.size()))
}

/// A map with about `density` of its entries drawn uniformly, the rest `⊥`.
pub fn random_structure<R: Rng>(
    rng: &mut R,
    kind: DomainKind,
    domain: &FuzzyDomain,
    m: &Arc<FiniteLattice>,
    density: f64,
) -> Result<StructureMap> {
    let mut s = StructureMap::with_kind(kind, domain.clone(), m.clone())?;
    for c in domain.codes() {
        if rng.gen_bool(density) {
            s.set_code(c, random_elem(rng, m));
        }
    }
    Ok(s)
}

/// A valid structure generated from a random sparse subbase.
pub fn random_valid_structure<R: Rng>(
    rng: &mut R,
    kind: DomainKind,
    domain: &FuzzyDomain,
    m: &Arc<FiniteLattice>,
) -> Result<StructureMap> {
    let mut phi = StructureMap::with_kind(kind, domain.clone(), m.clone())?;
    let picks = rng.gen_range(0..=4usize);
    for _ in 0..picks {
        let c = rng.gen_range(0..domain.size());
        phi.set_code(c, random_elem(rng, m));
    }
    Ok(generate_from_subbase(&Subbase(phi)))
}

pub fn random_map<R: Rng>(rng: &mut R, x: &Arc<Carrier>, y: &Arc<Carrier>) -> SpaceMap {
    let graph = (0..x.len()).map(|_| rng.gen_range(0..y.len())).collect();
    SpaceMap::from_indices(x.clone(), y.clone(), graph).expect("graph in range")
}

/// A uniformly shuffled surjection; needs `|X| ≥ |Y|`.
pub fn random_surjection<R: Rng>(rng: &mut R, x: &Arc<Carrier>, y: &Arc<Carrier>) -> Result<SpaceMap> {
    if x.len() < y.len() {
        return Err(Error::Precondition("no surjection onto a larger carrier".into()));
    }
    let mut graph: Vec<usize> = (0..y.len()).collect();
    graph.extend((y.len()..x.len()).map(|_| rng.gen_range(0..y.len())));
    graph.shuffle(rng);
    SpaceMap::from_indices(x.clone(), y.clone(), graph)
}

/// Random symmetric segments containing their ends.
pub fn random_interval_operator<R: Rng>(rng: &mut R, carrier: &Arc<Carrier>) -> IntervalOperator {
    let n = carrier.len();
    let mut table = vec![PointSet::EMPTY; n * n];
    for x in 0..n {
        for y in x..n {
            let extra = PointSet(rng.gen_range(0..1u64 << n)).intersection(carrier.full());
            let s = extra.with(x).with(y);
            table[x * n + y] = s;
            table[y * n + x] = s;
        }
    }
    IntervalOperator::new(carrier.clone(), |x, y| table[x * n + y]).expect("segments are valid")
}

/// The convexity generated by a few random subsets.
pub fn random_classical_convexity<R: Rng>(rng: &mut R, carrier: &Arc<Carrier>) -> ClassicalConvexity {
    let picks = rng.gen_range(0..=carrier.len() + 1);
    let gens: Vec<PointSet> = (0..picks)
        .map(|_| PointSet(rng.gen_range(0..1u64 << carrier.len())))
        .collect();
    ClassicalConvexity::generated_by(carrier.clone(), &gens)
}
