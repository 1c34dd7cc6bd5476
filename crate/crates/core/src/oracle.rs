//! Slow, definitional versions of the fast algorithms, for cross-checking.

use crate::constructions::domain_of;
use crate::convexity::{check_lm_fuzzy, StructureMap};
use crate::error::{Error, Result};
use crate::fuzzy::{PointSet, SpaceMap};
use crate::lattice::{Elem, ElementFamily, FiniteLattice};

/// Largest lattice the subset-quantified relations accept.
pub const MAX_SUBSET_ORACLE_ELEMENTS: usize = 16;

/// Largest subfamily size for [`check_lm_fuzzy_by_subfamilies`].
pub const MAX_SUBFAMILY: usize = 4;

/// Default cap on candidate maps for [`definitional_meet`].
pub const DEFINITIONAL_MEET_CAP: u128 = 1_000_000;

fn subsets(lat: &FiniteLattice) -> Result<impl Iterator<Item = ElementFamily> + '_> {
    if lat.len() > MAX_SUBSET_ORACLE_ELEMENTS {
        return Err(Error::Budget {
            what: "subset-quantified relation".into(),
            required: 1u128 << lat.len(),
            budget: 1u128 << MAX_SUBSET_ORACLE_ELEMENTS,
        });
    }
    Ok((0u64..1 << lat.len()).map(move |bits| ElementFamily::from_elems(lat.elements().filter(|e| bits >> e.index() & 1 == 1))))
}

/// `a ≺ b`: every `D` with `b ≤ ⋁D` has some `d ≥ a`.
pub fn wedge_below(lat: &FiniteLattice, a: Elem, b: Elem) -> Result<bool> {
    Ok(subsets(lat)?.all(|d| !lat.leq(b, lat.join_family(d.iter())) || d.iter().any(|x| lat.leq(a, x))))
}

/// `a ≺ᵒᵖ b`: every `D` with `⋀D ≤ a` has some `d ≤ b`.
pub fn op_wedge_below(lat: &FiniteLattice, a: Elem, b: Elem) -> Result<bool> {
    Ok(subsets(lat)?.all(|d| !lat.leq(lat.meet_family(d.iter()), a) || d.iter().any(|x| lat.leq(x, b))))
}

pub fn beta(lat: &FiniteLattice, b: Elem) -> Result<ElementFamily> {
    let mut out = ElementFamily::EMPTY;
    for a in lat.elements() {
        if wedge_below(lat, a, b)? {
            out.insert(a);
        }
    }
    Ok(out)
}

pub fn alpha(lat: &FiniteLattice, a: Elem) -> Result<ElementFamily> {
    let mut out = ElementFamily::EMPTY;
    for b in lat.elements() {
        if op_wedge_below(lat, a, b)? {
            out.insert(b);
        }
    }
    Ok(out)
}

/// LMC1–LMC3 over every subfamily of `L^X` with at most [`MAX_SUBFAMILY`] members.
pub fn check_lm_fuzzy_by_subfamilies(map: &StructureMap) -> bool {
    let d = map.domain();
    let m = map.m();
    if map.get(d.empty_code()) != m.top() || map.get(d.full_code()) != m.top() {
        return false;
    }
    let codes: Vec<u64> = d.codes().collect();
    let mut pick: Vec<usize> = Vec::new();
    subfamilies(&codes, 0, &mut pick, &mut |family| {
        let degree = m.meet_family(family.iter().map(|&c| map.get(c)));
        let meet = family[1..].iter().fold(family[0], |acc, &c| d.meet_codes(acc, c));
        if !m.leq(degree, map.get(meet)) {
            return false;
        }
        let chain = family
            .iter()
            .all(|&a| family.iter().all(|&b| d.leq_codes(a, b) || d.leq_codes(b, a)));
        if chain {
            let join = family[1..].iter().fold(family[0], |acc, &c| d.join_codes(acc, c));
            if !m.leq(degree, map.get(join)) {
                return false;
            }
        }
        true
    })
}

fn subfamilies(codes: &[u64], start: usize, pick: &mut Vec<usize>, visit: &mut impl FnMut(&[u64]) -> bool) -> bool {
    if !pick.is_empty() {
        let family: Vec<u64> = pick.iter().map(|&i| codes[i]).collect();
        if !visit(&family) {
            return false;
        }
    }
    if pick.len() == MAX_SUBFAMILY {
        return true;
    }
    for i in start..codes.len() {
        pick.push(i);
        let ok = subfamilies(codes, i + 1, pick, visit);
        pick.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// `⋀{𝒟 : φ ≤ 𝒟 valid}`, by enumerating every map above `φ`.
pub fn definitional_meet(phi: &StructureMap, cap: u128) -> Result<StructureMap> {
    let d = phi.domain();
    let m = phi.m();
    let codes: Vec<u64> = d.codes().collect();
    let choices: Vec<Vec<Elem>> = codes
        .iter()
        .map(|&c| m.up_set(phi.get(c)).iter().collect())
        .collect();
    let total = choices
        .iter()
        .try_fold(1u128, |acc, ch| acc.checked_mul(ch.len() as u128))
        .unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::Budget {
            what: "candidate maps above the subbase".into(),
            required: total,
            budget: cap,
        });
    }
    let mut result = phi.blank_like();
    result.set_default(m.top());
    let mut candidate = phi.blank_like();
    for mut n in 0..total {
        for (k, &c) in codes.iter().enumerate() {
            let len = choices[k].len() as u128;
            candidate.set_code(c, choices[k][(n % len) as usize]);
            n /= len;
        }
        if check_lm_fuzzy(&candidate).is_valid() {
            for &c in &codes {
                result.set_code(c, m.meet(result.get(c), candidate.get(c)));
            }
        }
    }
    let mut out = phi.blank_like();
    for &c in &codes {
        out.set_code(c, result.get(c));
    }
    Ok(out)
}

/// `⋁{𝒟(B) : B ∘ f = A}`, scanning every `B` for every `A`.
pub fn preimage_by_enumeration(target: &StructureMap, f: &SpaceMap) -> Result<StructureMap> {
    let to = domain_of(target.kind(), f.domain().clone(), target.lattice())?;
    let from = target.domain();
    let m = target.m();
    StructureMap::from_fn(target.kind(), to.clone(), m.clone(), |a| {
        let a = to.decode(a);
        m.join_family(
            from.codes()
                .filter(|&b| f.backward_image(&from.decode(b)) == a)
                .map(|b| target.get(b)),
        )
    })
}

/// `⋁{𝒞(B) : B|Y = A}`, scanning every `B` for every `A`.
pub fn substructure_by_enumeration(c: &StructureMap, y: PointSet) -> Result<StructureMap> {
    let sub = std::sync::Arc::new(c.carrier().restrict(y)?);
    let to = domain_of(c.kind(), sub, c.lattice())?;
    let from = c.domain();
    let m = c.m();
    StructureMap::from_fn(c.kind(), to.clone(), m.clone(), |a| {
        let a = to.decode(a);
        m.join_family(
            from.codes()
                .filter(|&b| from.decode(b).restrict(y) == a)
                .map(|b| c.get(b)),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{generate_from_subbase, preimage_structure, substructure, Subbase};
    use crate::convexity::{check_lm_fuzzy, DomainKind};
    use crate::fuzzy::{Carrier, FuzzyDomain};
    use std::sync::Arc;

    #[test]
    fn subset_relations_match_the_closed_forms() {
        for lat in [FiniteLattice::chain(3).unwrap(), FiniteLattice::diamond(), FiniteLattice::pentagon()] {
            for b in lat.elements() {
                assert_eq!(beta(&lat, b).unwrap(), lat.beta(b));
                assert_eq!(alpha(&lat, b).unwrap(), lat.alpha(b));
            }
        }
        let top = FiniteLattice::diamond();
        assert!(!wedge_below(&top, top.top(), top.top()).unwrap());
    }

    #[test]
    fn subfamily_checker_agrees_with_pairwise() {
        let x = Arc::new(Carrier::numbered("x", 2).unwrap());
        let l = Arc::new(FiniteLattice::chain(2).unwrap());
        let m = Arc::new(FiniteLattice::chain(3).unwrap());
        let d = FuzzyDomain::new(x, l).unwrap();
        let all = crate::enumerate::all_structure_maps(DomainKind::Fuzzy, &d, &m, 100).unwrap();
        for s in all {
            assert_eq!(check_lm_fuzzy_by_subfamilies(&s), check_lm_fuzzy(&s).is_valid());
        }
    }

    #[test]
    fn meet_and_enumerations() {
        let x = Arc::new(Carrier::numbered("x", 2).unwrap());
        let l = Arc::new(FiniteLattice::chain(2).unwrap());
        let m = Arc::new(FiniteLattice::chain(3).unwrap());
        let d = FuzzyDomain::new(x.clone(), l).unwrap();
        let mut phi = StructureMap::fuzzy(d, m.clone());
        phi.set_crisp(PointSet(0b01), m.top());
        phi.set_crisp(PointSet(0b10), m.elem("1/2").unwrap());
        let fast = generate_from_subbase(&Subbase(phi.clone()));
        assert_eq!(definitional_meet(&phi, DEFINITIONAL_MEET_CAP).unwrap(), fast);
        assert!(definitional_meet(&phi, 2).is_err());

        let f = SpaceMap::from_indices(Arc::new(Carrier::numbered("z", 3).unwrap()), x, vec![0, 1, 1]).unwrap();
        assert_eq!(preimage_by_enumeration(&fast, &f).unwrap(), preimage_structure(&fast, &f).unwrap());
        assert_eq!(
            substructure_by_enumeration(&fast, PointSet(0b10)).unwrap(),
            substructure(&fast, PointSet(0b10)).unwrap()
        );
    }
}
