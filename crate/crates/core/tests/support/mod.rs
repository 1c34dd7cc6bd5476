//! Slow, definition-level oracles shared by the integration tests.
//!
//! Nothing here calls the library's closed forms or fast checkers: order
//! comes from `leq`, meets and joins from scanning bounds, and fuzzy sets are
//! handled through their value vectors.
#![allow(dead_code)]

use std::sync::Arc;

use lmconvex::convexity::StructureMap;
use lmconvex::{Carrier, Elem, FiniteLattice, FuzzyDomain, FuzzySet, PointSet, SpaceMap};

pub fn elems(l: &FiniteLattice) -> Vec<Elem> {
    l.elements().collect()
}

/// Least upper bound by scanning all upper bounds.
pub fn sup(l: &FiniteLattice, xs: &[Elem]) -> Elem {
    let es = elems(l);
    let ubs: Vec<Elem> = es.iter().copied().filter(|&u| xs.iter().all(|&x| l.leq(x, u))).collect();
    *ubs.iter().find(|&&u| ubs.iter().all(|&v| l.leq(u, v))).expect("finite lattice has joins")
}

pub fn inf(l: &FiniteLattice, xs: &[Elem]) -> Elem {
    let es = elems(l);
    let lbs: Vec<Elem> = es.iter().copied().filter(|&u| xs.iter().all(|&x| l.leq(u, x))).collect();
    *lbs.iter().find(|&&u| lbs.iter().all(|&v| l.leq(v, u))).expect("finite lattice has meets")
}

fn subsets_of<T: Copy>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect()
    })
}

/// The subset-quantified relations, tabulated per lattice.
///
/// Joins and meets of all `2^|L|` subsets are folded from scanned binary
/// tables, then `a ≺ b` is read off the definition: every `D` with
/// `b ≤ ⋁D` has a member above `a` (dually for `≺ᵒᵖ`).
pub struct Wedges {
    pub beta: Vec<Vec<Elem>>,
    pub alpha: Vec<Vec<Elem>>,
}

impl Wedges {
    pub fn new(l: &FiniteLattice) -> Self {
        let es = elems(l);
        let n = es.len();
        let join: Vec<Vec<Elem>> = es.iter().map(|&a| es.iter().map(|&b| sup(l, &[a, b])).collect()).collect();
        let meet: Vec<Vec<Elem>> = es.iter().map(|&a| es.iter().map(|&b| inf(l, &[a, b])).collect()).collect();
        let bottom = inf(l, &es);
        let top = sup(l, &es);
        let mut sups = vec![bottom; 1 << n];
        let mut infs = vec![top; 1 << n];
        for mask in 1usize..1 << n {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            sups[mask] = join[sups[rest].index()][es[low].index()];
            infs[mask] = meet[infs[rest].index()][es[low].index()];
        }
        let members = |mask: usize| (0..n).filter(move |i| mask >> i & 1 == 1).map(|i| es[i]);
        let wedge = |a: Elem, b: Elem| {
            (0..1usize << n).all(|d| !l.leq(b, sups[d]) || members(d).any(|x| l.leq(a, x)))
        };
        let op_wedge = |a: Elem, b: Elem| {
            (0..1usize << n).all(|d| !l.leq(infs[d], a) || members(d).any(|x| l.leq(x, b)))
        };
        Wedges {
            beta: es.iter().map(|&b| es.iter().copied().filter(|&a| wedge(a, b)).collect()).collect(),
            alpha: es.iter().map(|&a| es.iter().copied().filter(|&b| op_wedge(a, b)).collect()).collect(),
        }
    }

    pub fn beta(&self, b: Elem) -> &[Elem] {
        &self.beta[b.index()]
    }

    pub fn alpha(&self, a: Elem) -> &[Elem] {
        &self.alpha[a.index()]
    }

    pub fn wedge(&self, a: Elem, b: Elem) -> bool {
        self.beta(b).contains(&a)
    }

    pub fn op_wedge(&self, a: Elem, b: Elem) -> bool {
        self.alpha(a).contains(&b)
    }
}

pub fn is_distributive(l: &FiniteLattice) -> bool {
    let es = elems(l);
    es.iter().all(|&a| {
        es.iter().all(|&b| {
            es.iter().all(|&c| {
                sup(l, &[inf(l, &[a, b]), inf(l, &[a, c])]) == inf(l, &[a, sup(l, &[b, c])])
            })
        })
    })
}

/// `a → b = ⋁{c : a ∧ c ≤ b}`.
pub fn residuum(l: &FiniteLattice, a: Elem, b: Elem) -> Elem {
    let cs: Vec<Elem> = elems(l).into_iter().filter(|&c| l.leq(inf(l, &[a, c]), b)).collect();
    sup(l, &cs)
}

// ---------------------------------------------------------------------------
// Posets and their downset lattices, built without the library's helpers

/// All partial orders on `n` labelled points, as `leq[i][j]`.
pub fn posets(n: usize) -> Vec<Vec<Vec<bool>>> {
    let mut out = Vec::new();
    let cells = n * n;
    for mask in 0u64..1 << cells {
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| mask >> (i * n + j) & 1 == 1).collect()).collect();
        let reflexive = (0..n).all(|i| leq[i][i]);
        let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])));
        let trans = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])));
        if reflexive && antisym && trans {
            out.push(leq);
        }
    }
    out
}

/// The lattice of downsets of a poset, ordered by inclusion.
pub fn downset_lattice(leq: &[Vec<bool>]) -> FiniteLattice {
    let n = leq.len();
    let downs: Vec<u64> = (0u64..1 << n)
        .filter(|&s| (0..n).all(|j| s >> j & 1 == 0 || (0..n).all(|i| !leq[i][j] || s >> i & 1 == 1)))
        .collect();
    let names: Vec<String> = downs.iter().map(|s| format!("d{s}")).collect();
    let matrix: Vec<Vec<bool>> = downs.iter().map(|&a| downs.iter().map(|&b| a & !b == 0).collect()).collect();
    FiniteLattice::from_leq_matrix(&names, &matrix).expect("downsets form a lattice")
}

/// Distributive lattices from posets on at most `max_points` points, with
/// at most `max_elements` elements (isomorphic copies included).
pub fn distributive_lattices(max_points: usize, max_elements: usize) -> Vec<FiniteLattice> {
    (1..=max_points)
        .flat_map(posets)
        .map(|p| downset_lattice(&p))
        .filter(|l| l.len() <= max_elements)
        .collect()
}

// ---------------------------------------------------------------------------
// Fuzzy sets as value vectors

pub fn lower_cut(l: &FiniteLattice, a: &[Elem], c: Elem) -> PointSet {
    points_where(a, |v| l.leq(c, v))
}

pub fn strict_cut(w: &Wedges, a: &[Elem], c: Elem) -> PointSet {
    points_where(a, |v| w.beta(v).contains(&c))
}

pub fn upper_cut(w: &Wedges, a: &[Elem], c: Elem) -> PointSet {
    points_where(a, |v| !w.alpha(v).contains(&c))
}

fn points_where(a: &[Elem], keep: impl Fn(Elem) -> bool) -> PointSet {
    a.iter().enumerate().filter(|(_, &v)| keep(v)).fold(PointSet(0), |s, (i, _)| s.with(i))
}

pub fn meet_sets(l: &FiniteLattice, sets: &[Vec<Elem>]) -> Vec<Elem> {
    (0..sets[0].len()).map(|i| inf(l, &sets.iter().map(|s| s[i]).collect::<Vec<_>>())).collect()
}

pub fn join_sets(l: &FiniteLattice, sets: &[Vec<Elem>]) -> Vec<Elem> {
    (0..sets[0].len()).map(|i| sup(l, &sets.iter().map(|s| s[i]).collect::<Vec<_>>())).collect()
}

pub fn below(l: &FiniteLattice, a: &[Elem], b: &[Elem]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| l.leq(x, y))
}

/// Every fuzzy set on `n` points, as value vectors in a fixed order.
pub fn all_values(l: &FiniteLattice, n: usize) -> Vec<Vec<Elem>> {
    let es = elems(l);
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| es.iter().map(move |&e| {
                let mut w = v.clone();
                w.push(e);
                w
            }))
            .collect();
    }
    out
}

pub fn values(a: &FuzzySet) -> Vec<Elem> {
    a.values().to_vec()
}

// ---------------------------------------------------------------------------
// Structures

/// The degree of a value vector under `s`.
pub fn degree(s: &StructureMap, a: &[Elem]) -> Elem {
    s.degree(&FuzzySet::from_values(a.to_vec()))
}

/// Axioms by definition, over every subfamily when the domain is small
/// enough and over subfamilies of size at most three otherwise.
pub fn is_valid(s: &StructureMap) -> bool {
    let l = s.domain().lattice().clone();
    let m = s.m().clone();
    let n = s.carrier().len();
    let sets = all_values(&l, n);
    let bottom = vec![l.bottom(); n];
    let top = vec![l.top(); n];
    if degree(s, &bottom) != m.top() || degree(s, &top) != m.top() {
        return false;
    }
    let degrees: Vec<Elem> = sets.iter().map(|a| degree(s, a)).collect();
    let check = |idx: &[usize]| -> bool {
        let fam: Vec<Vec<Elem>> = idx.iter().map(|&i| sets[i].clone()).collect();
        let d = inf(&m, &idx.iter().map(|&i| degrees[i]).collect::<Vec<_>>());
        if !m.leq(d, degree(s, &meet_sets(&l, &fam))) {
            return false;
        }
        let chain = fam.iter().all(|a| fam.iter().all(|b| below(&l, a, b) || below(&l, b, a)));
        !chain || m.leq(d, degree(s, &join_sets(&l, &fam)))
    };
    let k = sets.len();
    if k <= 12 {
        let all: Vec<usize> = (0..k).collect();
        let ok = subsets_of(&all).filter(|f| !f.is_empty()).all(|f| check(&f));
        ok
    } else {
        (0..k).all(|i| {
            (i..k).all(|j| check(&[i, j]) && (j..k).all(|t| check(&[i, j, t])))
        })
    }
}

/// L-convexity of a family given as value vectors, by definition.
pub fn is_l_convexity(l: &FiniteLattice, n: usize, family: &[Vec<Elem>]) -> bool {
    let has = |a: &Vec<Elem>| family.contains(a);
    if !has(&vec![l.bottom(); n]) || !has(&vec![l.top(); n]) {
        return false;
    }
    family.iter().all(|a| family.iter().all(|b| has(&meet_sets(l, &[a.clone(), b.clone()]))))
        && family.iter().all(|a| {
            family.iter().all(|b| {
                !(below(l, a, b) || below(l, b, a)) || has(&join_sets(l, &[a.clone(), b.clone()]))
            })
        })
}

/// `{A : 𝒞(A) ≥ a}` as value vectors.
pub fn lower_structure_cut(s: &StructureMap, a: Elem) -> Vec<Vec<Elem>> {
    let l = s.domain().lattice();
    all_values(l, s.carrier().len()).into_iter().filter(|v| s.m().leq(a, degree(s, v))).collect()
}

/// `{A : a ∉ α(𝒞(A))}` as value vectors.
pub fn upper_structure_cut(s: &StructureMap, wm: &Wedges, a: Elem) -> Vec<Vec<Elem>> {
    let l = s.domain().lattice();
    all_values(l, s.carrier().len()).into_iter().filter(|v| !wm.alpha(degree(s, v)).contains(&a)).collect()
}

/// `B ∘ f`.
pub fn pull(f: &SpaceMap, b: &[Elem]) -> Vec<Elem> {
    (0..f.domain().len()).map(|x| b[f.apply(x)]).collect()
}

pub fn naive_quotient(c: &StructureMap, f: &SpaceMap) -> StructureMap {
    let d = FuzzyDomain::new(f.codomain().clone(), c.domain().lattice().clone()).unwrap();
    let mut q = StructureMap::with_kind(c.kind(), d.clone(), c.m().clone()).unwrap();
    for b in all_values(d.lattice(), d.carrier().len()) {
        q.set(&FuzzySet::from_values(b.clone()), degree(c, &pull(f, &b))).unwrap();
    }
    q
}

pub fn naive_preimage(target: &StructureMap, f: &SpaceMap) -> StructureMap {
    let l = target.domain().lattice().clone();
    let m = target.m();
    let d = FuzzyDomain::new(f.domain().clone(), l.clone()).unwrap();
    let mut p = StructureMap::with_kind(target.kind(), d, m.clone()).unwrap();
    let bs = all_values(&l, f.codomain().len());
    for a in all_values(&l, f.domain().len()) {
        let ds: Vec<Elem> = bs.iter().filter(|b| pull(f, b) == a).map(|b| degree(target, b)).collect();
        p.set(&FuzzySet::from_values(a), sup(m, &ds)).unwrap();
    }
    p
}

/// `𝒞|Y(A) = ⋁{𝒞(B) : B|Y = A}`.
pub fn naive_substructure(c: &StructureMap, y: PointSet) -> StructureMap {
    let l = c.domain().lattice().clone();
    let m = c.m();
    let keep: Vec<usize> = y.iter().collect();
    let sub = Arc::new(c.carrier().restrict(y).unwrap());
    let d = FuzzyDomain::new(sub, l.clone()).unwrap();
    let mut out = StructureMap::with_kind(c.kind(), d, m.clone()).unwrap();
    let bs = all_values(&l, c.carrier().len());
    for a in all_values(&l, keep.len()) {
        let ds: Vec<Elem> = bs
            .iter()
            .filter(|b| keep.iter().map(|&i| b[i]).collect::<Vec<_>>() == a)
            .map(|b| degree(c, b))
            .collect();
        out.set(&FuzzySet::from_values(a), sup(m, &ds)).unwrap();
    }
    out
}

/// Every map on the domain of `like` (same kind, L and M), by brute force.
pub fn all_maps_like(like: &StructureMap) -> Vec<StructureMap> {
    let l = like.domain().lattice().clone();
    let m = like.m();
    let sets = all_values(&l, like.carrier().len());
    let mut out = vec![like.blank_like()];
    for a in &sets {
        let a = FuzzySet::from_values(a.clone());
        out = out
            .into_iter()
            .flat_map(|s| {
                elems(m)
                    .into_iter()
                    .map(|v| {
                        let mut t = s.clone();
                        t.set(&a, v).unwrap();
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

pub fn pointwise_le(a: &StructureMap, b: &StructureMap) -> bool {
    let l = a.domain().lattice();
    all_values(l, a.carrier().len()).iter().all(|v| a.m().leq(degree(a, v), degree(b, v)))
}

/// `⋀{𝒟 valid : φ ≤ 𝒟}` by enumerating every map.
pub fn naive_generated(phi: &StructureMap) -> StructureMap {
    let m = phi.m().clone();
    let l = phi.domain().lattice().clone();
    let sets = all_values(&l, phi.carrier().len());
    let above: Vec<StructureMap> = all_maps_like(phi)
        .into_iter()
        .filter(|d| pointwise_le(phi, d) && is_valid(d))
        .collect();
    let mut out = phi.blank_like();
    for a in sets {
        let ds: Vec<Elem> = above.iter().map(|d| degree(d, &a)).collect();
        out.set(&FuzzySet::from_values(a), inf(&m, &ds)).unwrap();
    }
    out
}

/// `𝒞(f←(B)) ≥ 𝒟(B)` for every `B`.
pub fn naive_cpf(c: &StructureMap, d: &StructureMap, f: &SpaceMap) -> bool {
    let l = d.domain().lattice();
    all_values(l, f.codomain().len()).iter().all(|b| d.m().leq(degree(d, b), degree(c, &pull(f, b))))
}

/// `ω(𝒮)(A) = ⋀_a 𝒮(A_[a])` on fuzzy sets over `l`.
pub fn naive_omega(s: &StructureMap, l: &Arc<FiniteLattice>) -> StructureMap {
    let m = s.m();
    let d = FuzzyDomain::new(s.carrier().clone(), l.clone()).unwrap();
    let mut out = StructureMap::fuzzy(d, m.clone());
    for a in all_values(l, s.carrier().len()) {
        let ds: Vec<Elem> = elems(l).into_iter().map(|c| s.degree_of(lower_cut(l, &a, c))).collect();
        out.set(&FuzzySet::from_values(a), inf(m, &ds)).unwrap();
    }
    out
}

/// The subbase behind `ι(𝒞)`: `U ↦ ⋁{𝒞(B) : B_[a] = U for some a}`.
pub fn naive_iota_subbase(c: &StructureMap) -> StructureMap {
    let l = c.domain().lattice();
    let m = c.m();
    let mut phi = StructureMap::crisp(c.carrier().clone(), m.clone());
    let bs = all_values(l, c.carrier().len());
    for u in c.carrier().all_subsets() {
        let ds: Vec<Elem> = bs
            .iter()
            .filter(|b| elems(l).into_iter().any(|a| lower_cut(l, b, a) == u))
            .map(|b| degree(c, b))
            .collect();
        phi.set_crisp(u, sup(m, &ds));
    }
    phi
}

/// Closure in a classical convexity: intersection of the members above `a`.
pub fn naive_hull(members: &[PointSet], full: PointSet, a: PointSet) -> PointSet {
    members.iter().filter(|m| a.is_subset(**m)).fold(full, |h, m| h.intersection(*m))
}

pub fn carrier(prefix: &str, n: usize) -> Arc<Carrier> {
    Arc::new(Carrier::numbered(prefix, n).unwrap())
}
