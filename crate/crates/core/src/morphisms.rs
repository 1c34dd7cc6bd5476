//! Predicates on maps between structured spaces.

use std::fmt;

use crate::constructions::{preimage_structure, pullback_code};
use crate::convexity::{
    cut_lower_structure, cut_upper_structure, lower_levels, upper_levels, FuzzyFamily, StructureMap,
    Witness,
};
use crate::error::{Error, Result};
use crate::fuzzy::SpaceMap;
use crate::lattice::Elem;

/// A map `f : (X, 𝒞) → (Y, 𝒟)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredSpacePair {
    source: StructureMap,
    target: StructureMap,
    map: SpaceMap,
}

impl StructuredSpacePair {
    pub fn new(source: StructureMap, target: StructureMap, map: SpaceMap) -> Result<Self> {
        if **map.domain() != **source.carrier() {
            return Err(Error::Mismatch("map domain differs from the source carrier".into()));
        }
        if **map.codomain() != **target.carrier() {
            return Err(Error::Mismatch("map codomain differs from the target carrier".into()));
        }
        if source.kind() != target.kind()
            || **source.lattice() != **target.lattice()
            || **source.m() != **target.m()
        {
            return Err(Error::Mismatch("source and target differ in domain kind, L or M".into()));
        }
        Ok(StructuredSpacePair { source, target, map })
    }

    pub fn source(&self) -> &StructureMap {
        &self.source
    }

    pub fn target(&self) -> &StructureMap {
        &self.target
    }

    pub fn map(&self) -> &SpaceMap {
        &self.map
    }

    /// `g ∘ f` for `f = self`, `g = next`; the middle structures must agree.
    pub fn then(&self, next: &StructuredSpacePair) -> Result<StructuredSpacePair> {
        if self.target != next.source {
            return Err(Error::Mismatch("middle structures differ".into()));
        }
        StructuredSpacePair::new(self.source.clone(), next.target.clone(), self.map.then(&next.map)?)
    }

    fn pull(&self, b: u64) -> u64 {
        pullback_code(&self.map, self.target.domain(), self.source.domain(), b)
    }
}

/// A truth value with a witness when false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }

    fn fail_bare() -> Self {
        Verdict {
            holds: false,
            witness: None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.holds { "holds" } else { "fails" })
    }
}

/// `𝒞(f←(B)) ≥ 𝒟(B)` for every `B`; the witness is a violating `B`.
pub fn is_cpf(p: &StructuredSpacePair) -> Verdict {
    let m = p.source.m();
    for (b, v) in p.target.support() {
        if !m.leq(v, p.source.get(p.pull(b))) {
            return Verdict::fail(p.target.witness(b));
        }
    }
    Verdict::pass()
}

/// `f←(𝒟) ≤ 𝒞` pointwise, for surjective `f`; the witness is a violating `A`.
pub fn is_cpf_via_preimage(p: &StructuredSpacePair) -> Result<Verdict> {
    let pre = preimage_structure(&p.target, &p.map)?;
    let m = p.source.m();
    for (a, v) in pre.support() {
        if !m.leq(v, p.source.get(a)) {
            return Ok(Verdict::fail(p.source.witness(a)));
        }
    }
    Ok(Verdict::pass())
}

/// `𝒟(f→(A)) ≥ 𝒞(A)` for every `A`; the witness is a violating `A`.
pub fn is_convex_to_convex(p: &StructuredSpacePair) -> Verdict {
    let m = p.source.m();
    let (from, to) = (p.source.domain(), p.target.domain());
    for (a, v) in p.source.support() {
        let image = p.map.forward_image(&from.decode(a), from.lattice());
        if !m.leq(v, p.target.get(to.encode(&image))) {
            return Verdict::fail(p.source.witness(a));
        }
    }
    Verdict::pass()
}

/// `f` surjective and `𝒟(B) = 𝒞(f←(B))` for every `B`.
pub fn is_quotient_function(p: &StructuredSpacePair) -> Verdict {
    if !p.map.is_surjective() {
        return Verdict::fail_bare();
    }
    match p
        .target
        .domain()
        .codes()
        .find(|&b| p.target.get(b) != p.source.get(p.pull(b)))
    {
        Some(b) => Verdict::fail(p.target.witness(b)),
        None => Verdict::pass(),
    }
}

/// `f←(B) ∈ source` for every `B ∈ target`.
pub fn is_l_cpf(map: &SpaceMap, source: &FuzzyFamily, target: &FuzzyFamily) -> Verdict {
    for b in target.codes() {
        let pulled = pullback_code(map, target.domain(), source.domain(), b);
        if !source.contains_code(pulled) {
            return Verdict::fail(Witness::Fuzzy(target.domain().decode(b)));
        }
    }
    Verdict::pass()
}

/// CPF next to its cut-level forms, one row per admissible level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutEquivalenceReport {
    pub cpf: bool,
    pub lower: Vec<(Elem, bool)>,
    pub upper: Vec<(Elem, bool)>,
}

impl CutEquivalenceReport {
    pub fn lower_all(&self) -> bool {
        self.lower.iter().all(|&(_, ok)| ok)
    }

    pub fn upper_all(&self) -> bool {
        self.upper.iter().all(|&(_, ok)| ok)
    }

    /// The three columns agree.
    pub fn consistent(&self) -> bool {
        self.cpf == self.lower_all() && self.cpf == self.upper_all()
    }

    pub fn first_failing_lower(&self) -> Option<Elem> {
        self.lower.iter().find(|&&(_, ok)| !ok).map(|&(a, _)| a)
    }
}

pub fn cpf_cut_equivalence(p: &StructuredSpacePair) -> Result<CutEquivalenceReport> {
    let m = p.source.m();
    let lower = lower_levels(m)
        .into_iter()
        .map(|a| {
            let ok = is_l_cpf(
                &p.map,
                &cut_lower_structure(&p.source, a)?,
                &cut_lower_structure(&p.target, a)?,
            )
            .holds;
            Ok((a, ok))
        })
        .collect::<Result<Vec<_>>>()?;
    let upper = upper_levels(m)
        .into_iter()
        .map(|a| {
            let ok = is_l_cpf(
                &p.map,
                &cut_upper_structure(&p.source, a)?,
                &cut_upper_structure(&p.target, a)?,
            )
            .holds;
            Ok((a, ok))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CutEquivalenceReport {
        cpf: is_cpf(p).holds,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{generate_from_subbase, quotient_structure, Subbase};
    use crate::convexity::DomainKind;
    use crate::fuzzy::{Carrier, FuzzyDomain, PointSet};
    use crate::lattice::FiniteLattice;
    use std::sync::Arc;

    fn setup() -> (Arc<FiniteLattice>, Arc<FiniteLattice>, Arc<Carrier>, Arc<Carrier>) {
        (
            Arc::new(FiniteLattice::chain(2).unwrap()),
            Arc::new(FiniteLattice::diamond()),
            Arc::new(Carrier::numbered("x", 3).unwrap()),
            Arc::new(Carrier::numbered("y", 2).unwrap()),
        )
    }

    #[test]
    fn identity_is_everything() {
        let (l, m, x, _) = setup();
        let d = FuzzyDomain::new(x.clone(), l).unwrap();
        let mut phi = StructureMap::fuzzy(d, m.clone());
        phi.set_crisp(PointSet(0b011), m.elem("p").unwrap());
        let c = generate_from_subbase(&Subbase(phi));
        let p = StructuredSpacePair::new(c.clone(), c, SpaceMap::identity(x)).unwrap();
        assert!(is_cpf(&p).holds);
        assert!(is_cpf_via_preimage(&p).unwrap().holds);
        assert!(is_convex_to_convex(&p).holds);
        assert!(is_quotient_function(&p).holds);
        let r = cpf_cut_equivalence(&p).unwrap();
        assert!(r.cpf && r.lower_all() && r.upper_all());
    }

    #[test]
    fn indiscrete_source_into_a_finer_target() {
        let (l, m, x, y) = setup();
        let dx = FuzzyDomain::new(x.clone(), l.clone()).unwrap();
        let dy = FuzzyDomain::new(y.clone(), l).unwrap();
        let least = StructureMap::boundary_only(DomainKind::Fuzzy, dx.clone(), m.clone()).unwrap();
        let mut target = StructureMap::boundary_only(DomainKind::Fuzzy, dy, m.clone()).unwrap();
        target.set_crisp(PointSet(0b01), m.top());
        let f = SpaceMap::from_indices(x, y, vec![0, 1, 1]).unwrap();
        let p = StructuredSpacePair::new(least.clone(), target.clone(), f.clone()).unwrap();
        let v = is_cpf(&p);
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::Fuzzy(target.domain().decode(1))));
        assert!(!is_cpf_via_preimage(&p).unwrap().holds);
        let r = cpf_cut_equivalence(&p).unwrap();
        assert!(r.consistent());
        assert!(r.first_failing_lower().is_some());

        let q = quotient_structure(&least, &f).unwrap();
        let p = StructuredSpacePair::new(least, q, f).unwrap();
        assert!(is_cpf(&p).holds && is_quotient_function(&p).holds);
    }

    #[test]
    fn mismatched_pairs_are_rejected() {
        let (l, m, x, y) = setup();
        let dx = FuzzyDomain::new(x.clone(), l).unwrap();
        let c = StructureMap::fuzzy(dx, m);
        let f = SpaceMap::identity(y);
        assert!(StructuredSpacePair::new(c.clone(), c, f).is_err());
    }
}
