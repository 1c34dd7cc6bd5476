//! Concrete structures to experiment with: interval-degree structures, fuzzy
//! upper sets of a fuzzy preorder, and fuzzy convex sublattices.

use std::sync::Arc;

use crate::convexity::{check_l_convexity, check_lm_fuzzy, ConvexityCertificate, DomainKind, FuzzyFamily, StructureMap};
use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, FuzzyDomain, FuzzySet, PointSet};
use crate::lattice::{Elem, FiniteLattice};

/// `a → b = ⋁{c : a ∧ c ≤ b}`, on distributive lattices only.
pub fn residuum(lat: &FiniteLattice, a: Elem, b: Elem) -> Result<Elem> {
    lat.require_distributive()?;
    Ok(residuum_unchecked(lat, a, b))
}

fn residuum_unchecked(lat: &FiniteLattice, a: Elem, b: Elem) -> Elem {
    lat.join_family(lat.elements().filter(|&c| lat.leq(lat.meet(a, c), b)))
}

/// A finite betweenness: `segment(x, y)` is the set of points between `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalOperator {
    carrier: Arc<Carrier>,
    segments: Vec<PointSet>,
}

impl IntervalOperator {
    pub fn new(carrier: Arc<Carrier>, segment: impl Fn(usize, usize) -> PointSet) -> Result<Self> {
        let n = carrier.len();
        let mut segments = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let s = segment(x, y);
                if !s.contains(x) || !s.contains(y) {
                    return Err(Error::Precondition(format!(
                        "segment({}, {}) must contain both ends",
                        carrier.point(x),
                        carrier.point(y)
                    )));
                }
                if !s.is_subset(carrier.full()) {
                    return Err(Error::Range("segment leaves the carrier".into()));
                }
                segments.push(s);
            }
        }
        for x in 0..n {
            for y in 0..n {
                if segments[x * n + y] != segments[y * n + x] {
                    return Err(Error::Precondition(format!(
                        "segment({}, {}) is not symmetric",
                        carrier.point(x),
                        carrier.point(y)
                    )));
                }
            }
        }
        Ok(IntervalOperator { carrier, segments })
    }

    /// `segment(x, y) = {x, y}`.
    pub fn trivial(carrier: Arc<Carrier>) -> Self {
        IntervalOperator::new(carrier, |x, y| PointSet::singleton(x).with(y))
            .expect("trivial segments are valid")
    }

    /// Points `1..=n` on a line; a segment is everything between its ends.
    pub fn path(n: usize) -> Result<Self> {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let carrier = Arc::new(Carrier::new(&names)?);
        IntervalOperator::new(carrier, |x, y| {
            (x.min(y)..=x.max(y)).fold(PointSet::EMPTY, PointSet::with)
        })
    }

    /// The elements of a lattice; `segment(x, y) = [x ∧ y, x ∨ y]`.
    pub fn order_intervals(g: &FiniteLattice) -> Result<Self> {
        let carrier = Arc::new(Carrier::new(g.names())?);
        let elems: Vec<Elem> = g.elements().collect();
        IntervalOperator::new(carrier, |x, y| {
            let (lo, hi) = (g.meet(elems[x], elems[y]), g.join(elems[x], elems[y]));
            elems
                .iter()
                .enumerate()
                .filter(|&(_, &z)| g.leq(lo, z) && g.leq(z, hi))
                .fold(PointSet::EMPTY, |s, (i, _)| s.with(i))
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn segment(&self, x: usize, y: usize) -> PointSet {
        self.segments[x * self.carrier.len() + y]
    }

    fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.carrier.len();
        (0..n).flat_map(move |x| {
            (x..n).flat_map(move |y| self.segment(x, y).iter().map(move |z| (x, y, z)))
        })
    }
}

/// `𝒞(A) = ⋀_{x,y} ⋀_{z ∈ segment(x,y)} (A(x) ∧ A(y)) → A(z)`, with `M = L`.
pub fn interval_degree_structure(op: &IntervalOperator, l: Arc<FiniteLattice>) -> Result<StructureMap> {
    l.require_distributive()?;
    let domain = FuzzyDomain::new(op.carrier.clone(), l.clone())?;
    let d = domain.clone();
    let lat = l.clone();
    StructureMap::from_fn(DomainKind::Fuzzy, domain, l, move |code| {
        let a = d.decode(code);
        lat.meet_family(op.triples().map(|(x, y, z)| {
            residuum_unchecked(&lat, lat.meet(a.value(x), a.value(y)), a.value(z))
        }))
    })
}

/// `{A : A(z) ≥ A(x) ∧ A(y) whenever z ∈ segment(x, y)}`.
pub fn interval_l_convexity(op: &IntervalOperator, l: Arc<FiniteLattice>) -> Result<FuzzyFamily> {
    let domain = FuzzyDomain::new(op.carrier.clone(), l.clone())?;
    let members: Vec<u64> = domain
        .codes()
        .filter(|&code| {
            let a = domain.decode(code);
            op.triples()
                .all(|(x, y, z)| l.leq(l.meet(a.value(x), a.value(y)), a.value(z)))
        })
        .collect();
    Ok(FuzzyFamily::from_codes(domain, members))
}

/// An `L`-valued relation on a carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyRelation {
    carrier: Arc<Carrier>,
    lattice: Arc<FiniteLattice>,
    values: Vec<Elem>,
}

impl FuzzyRelation {
    pub fn new(carrier: Arc<Carrier>, lattice: Arc<FiniteLattice>, value: impl Fn(usize, usize) -> Elem) -> Self {
        let n = carrier.len();
        let values = (0..n * n).map(|k| value(k / n, k % n)).collect();
        FuzzyRelation {
            carrier,
            lattice,
            values,
        }
    }

    /// The crisp relation `x ≤ y` given as a matrix.
    pub fn crisp(carrier: Arc<Carrier>, lattice: Arc<FiniteLattice>, leq: &[Vec<bool>]) -> Result<Self> {
        let n = carrier.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Mismatch("relation matrix does not match the carrier".into()));
        }
        let (bot, top) = (lattice.bottom(), lattice.top());
        Ok(FuzzyRelation::new(carrier, lattice, |x, y| if leq[x][y] { top } else { bot }))
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn value(&self, x: usize, y: usize) -> Elem {
        self.values[x * self.carrier.len() + y]
    }

    /// `R(x,x) = ⊤` and `R(x,z) ≥ R(x,y) ∧ R(y,z)`.
    pub fn is_preorder(&self) -> bool {
        let n = self.carrier.len();
        let l = &self.lattice;
        (0..n).all(|x| self.value(x, x) == l.top())
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| l.leq(l.meet(self.value(x, y), self.value(y, z)), self.value(x, z)))
                })
            })
    }
}

/// Which final term to use in the upper-set degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum UpperSetReading {
    /// `R(x,y) → (U(x) → U(y))`.
    #[default]
    Corrected,
    /// `R(x,y) → (U(x) → U(x))`, which is constantly `⊤`.
    Literal,
}

/// `∇(R)(U) = ⋀_{x,y} R(x,y) → (U(x) → U(y))`, with `M = L`.
pub fn upper_set_structure(r: &FuzzyRelation, reading: UpperSetReading) -> Result<StructureMap> {
    let l = r.lattice.clone();
    l.require_distributive()?;
    let n = r.carrier.len();
    let domain = FuzzyDomain::new(r.carrier.clone(), l.clone())?;
    let d = domain.clone();
    let lat = l.clone();
    StructureMap::from_fn(DomainKind::Fuzzy, domain, l, move |code| {
        let u = d.decode(code);
        lat.meet_family((0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| {
            let target = match reading {
                UpperSetReading::Corrected => u.value(y),
                UpperSetReading::Literal => u.value(x),
            };
            let inner = residuum_unchecked(&lat, u.value(x), target);
            residuum_unchecked(&lat, r.value(x, y), inner)
        }))
    })
}

fn sublattice_conditions(g: &FiniteLattice, l: &FiniteLattice, a: &FuzzySet) -> bool {
    let elems: Vec<Elem> = g.elements().collect();
    let at = |e: Elem| a.value(e.index());
    elems.iter().all(|&x| {
        elems.iter().all(|&y| {
            let low = l.meet(at(x), at(y));
            l.leq(low, at(g.meet(x, y)))
                && l.leq(low, at(g.join(x, y)))
                && (!g.leq(x, y)
                    || elems
                        .iter()
                        .filter(|&&z| g.leq(x, z) && g.leq(z, y))
                        .all(|&z| l.leq(low, at(z))))
        })
    })
}

/// All fuzzy convex sublattices of `g` with values in `l`.
pub fn fuzzy_convex_sublattice_family(g: &FiniteLattice, l: Arc<FiniteLattice>) -> Result<FuzzyFamily> {
    let carrier = Arc::new(Carrier::new(g.names())?);
    let domain = FuzzyDomain::new(carrier, l.clone())?;
    let members: Vec<u64> = domain
        .codes()
        .filter(|&c| sublattice_conditions(g, &l, &domain.decode(c)))
        .collect();
    Ok(FuzzyFamily::from_codes(domain, members))
}

/// Whether a crisp set of elements of `g` is a convex sublattice (the empty set counts).
pub fn is_convex_sublattice(g: &FiniteLattice, s: PointSet) -> bool {
    let elems: Vec<Elem> = g.elements().collect();
    let has = |e: Elem| s.contains(e.index());
    elems.iter().filter(|&&x| has(x)).all(|&x| {
        elems.iter().filter(|&&y| has(y)).all(|&y| {
            has(g.meet(x, y))
                && has(g.join(x, y))
                && elems
                    .iter()
                    .all(|&z| !(g.leq(x, z) && g.leq(z, y)) || has(z))
        })
    })
}

// ---------------------------------------------------------------------------
// Named entries

/// A gallery output: a degree map or a family of fuzzy sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GalleryItem {
    Structure(StructureMap),
    Family(FuzzyFamily),
}

impl GalleryItem {
    pub fn check(&self) -> ConvexityCertificate {
        match self {
            GalleryItem::Structure(s) => check_lm_fuzzy(s),
            GalleryItem::Family(f) => check_l_convexity(f),
        }
    }
}

pub const ENTRIES: &[(&str, &str)] = &[
    ("interval-trivial", "degree structure of the trivial betweenness on 3 points, L = M = chain3"),
    ("interval-path", "degree structure of the path 1-2-3, L = M = chain3"),
    ("interval-diamond", "degree structure of order intervals on the diamond, L = M = chain3"),
    ("interval-path-crisp", "L-convexity of the path 1-2-3 (degree structure at M = 2), L = chain3"),
    ("upper-sets-chain", "fuzzy upper sets of the order 1 < 2 < 3, L = M = chain3"),
    ("upper-sets-fuzzy", "fuzzy upper sets of a fuzzy preorder on 2 points, L = M = chain3"),
    ("convex-sublattices-diamond", "fuzzy convex sublattices of the diamond, L = chain3"),
    ("convex-sublattices-pentagon", "fuzzy convex sublattices of the pentagon, L = chain2"),
];

pub fn entry_names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|&(name, _)| name)
}

pub fn emit(name: &str, reading: UpperSetReading) -> Result<GalleryItem> {
    let chain3 = Arc::new(FiniteLattice::chain(3)?);
    let line = |n: usize| -> Vec<Vec<bool>> { (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect() };
    match name {
        "interval-trivial" => {
            let x = Arc::new(Carrier::numbered("x", 3)?);
            Ok(GalleryItem::Structure(interval_degree_structure(&IntervalOperator::trivial(x), chain3)?))
        }
        "interval-path" => Ok(GalleryItem::Structure(interval_degree_structure(
            &IntervalOperator::path(3)?,
            chain3,
        )?)),
        "interval-diamond" => Ok(GalleryItem::Structure(interval_degree_structure(
            &IntervalOperator::order_intervals(&FiniteLattice::diamond())?,
            chain3,
        )?)),
        "interval-path-crisp" => Ok(GalleryItem::Family(interval_l_convexity(
            &IntervalOperator::path(3)?,
            chain3,
        )?)),
        "upper-sets-chain" => {
            let x = Arc::new(Carrier::new(&["1", "2", "3"])?);
            let r = FuzzyRelation::crisp(x, chain3, &line(3))?;
            Ok(GalleryItem::Structure(upper_set_structure(&r, reading)?))
        }
        "upper-sets-fuzzy" => {
            let x = Arc::new(Carrier::new(&["a", "b"])?);
            let half = chain3.elem("1/2")?;
            let (bot, top) = (chain3.bottom(), chain3.top());
            let r = FuzzyRelation::new(x, chain3, |i, j| match (i, j) {
                (0, 1) => half,
                (1, 0) => bot,
                _ => top,
            });
            Ok(GalleryItem::Structure(upper_set_structure(&r, reading)?))
        }
        "convex-sublattices-diamond" => Ok(GalleryItem::Family(fuzzy_convex_sublattice_family(
            &FiniteLattice::diamond(),
            chain3,
        )?)),
        "convex-sublattices-pentagon" => Ok(GalleryItem::Family(fuzzy_convex_sublattice_family(
            &FiniteLattice::pentagon(),
            Arc::new(FiniteLattice::chain(2)?),
        )?)),
        other => Err(Error::Format(format!("unknown gallery entry `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuum_examples() {
        let l = FiniteLattice::chain(3).unwrap();
        let (half, top, bot) = (l.elem("1/2").unwrap(), l.top(), l.bottom());
        assert_eq!(residuum(&l, top, half).unwrap(), half);
        for a in l.elements() {
            assert_eq!(residuum(&l, a, top).unwrap(), top);
            assert_eq!(residuum(&l, bot, a).unwrap(), top);
        }
        assert!(residuum(&FiniteLattice::pentagon(), bot, bot).is_err());
    }

    #[test]
    fn trivial_segments_give_the_indiscrete_structure() {
        let x = Arc::new(Carrier::numbered("x", 2).unwrap());
        let l = Arc::new(FiniteLattice::chain(3).unwrap());
        let s = interval_degree_structure(&IntervalOperator::trivial(x), l.clone()).unwrap();
        assert!(s.domain().codes().all(|c| s.get(c) == l.top()));
    }

    #[test]
    fn path_penalizes_dips() {
        let l = Arc::new(FiniteLattice::chain(3).unwrap());
        let op = IntervalOperator::path(3).unwrap();
        let s = interval_degree_structure(&op, l.clone()).unwrap();
        assert!(check_lm_fuzzy(&s).is_valid());
        let (half, top, bot) = (l.elem("1/2").unwrap(), l.top(), l.bottom());
        let dip = |mid| FuzzySet::from_values(vec![top, mid, top]);
        assert_eq!(s.degree(&dip(top)), top);
        assert_eq!(s.degree(&dip(half)), half);
        assert_eq!(s.degree(&dip(bot)), bot);
        assert_eq!(s.degree(&FuzzySet::from_values(vec![half, bot, top])), bot);
    }

    #[test]
    fn interval_operators_are_validated() {
        let x = Arc::new(Carrier::numbered("x", 2).unwrap());
        assert!(IntervalOperator::new(x.clone(), |_, _| PointSet::singleton(0)).is_err());
        assert!(IntervalOperator::new(x, |a, b| if a < b { PointSet(0b11) } else { PointSet::singleton(a).with(b) }).is_ok());
        let d = IntervalOperator::order_intervals(&FiniteLattice::diamond()).unwrap();
        assert_eq!(d.segment(1, 2), PointSet(0b1111));
        assert_eq!(d.segment(0, 1), PointSet(0b0011));
    }

    #[test]
    fn upper_sets() {
        let l = Arc::new(FiniteLattice::chain(3).unwrap());
        let x = Arc::new(Carrier::numbered("x", 3).unwrap());
        let bot = FuzzyRelation::new(x.clone(), l.clone(), |_, _| l.bottom());
        let s = upper_set_structure(&bot, UpperSetReading::Corrected).unwrap();
        assert!(s.domain().codes().all(|c| s.get(c) == l.top()));

        let eq: Vec<Vec<bool>> = (0..3).map(|i| (0..3).map(|j| i == j).collect()).collect();
        let r = FuzzyRelation::crisp(x.clone(), l.clone(), &eq).unwrap();
        let s = upper_set_structure(&r, UpperSetReading::Corrected).unwrap();
        assert!(s.domain().codes().all(|c| s.get(c) == l.top()));

        let le: Vec<Vec<bool>> = (0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect();
        let r = FuzzyRelation::crisp(x, l.clone(), &le).unwrap();
        assert!(r.is_preorder());
        let s = upper_set_structure(&r, UpperSetReading::Corrected).unwrap();
        assert!(check_lm_fuzzy(&s).is_valid());
        for u in s.domain().all() {
            let monotone = (0..2).all(|i| l.leq(u.value(i), u.value(i + 1)));
            assert_eq!(s.degree(&u) == l.top(), monotone);
        }
        let lit = upper_set_structure(&r, UpperSetReading::Literal).unwrap();
        assert!(lit.domain().codes().all(|c| lit.get(c) == l.top()));
    }

    #[test]
    fn convex_sublattices() {
        let g = FiniteLattice::diamond();
        let l = Arc::new(FiniteLattice::chain(3).unwrap());
        let fam = fuzzy_convex_sublattice_family(&g, l.clone()).unwrap();
        assert!(check_l_convexity(&fam).is_valid());
        for a in l.elements() {
            assert!(fam.contains(&FuzzySet::constant(4, a)));
        }
        let crisp = fuzzy_convex_sublattice_family(&g, Arc::new(FiniteLattice::chain(2).unwrap())).unwrap();
        for s in crisp.domain().carrier().all_subsets() {
            assert_eq!(crisp.contains_code(s.0), is_convex_sublattice(&g, s));
        }
        // {bot, top} is a sublattice but not convex
        assert!(!is_convex_sublattice(&g, PointSet(0b1001)));
    }

    #[test]
    fn every_entry_passes_its_checker() {
        for name in entry_names() {
            let item = emit(name, UpperSetReading::Corrected).unwrap();
            assert!(item.check().is_valid(), "{name}");
        }
        assert!(emit("nope", UpperSetReading::Corrected).is_err());
    }
}
