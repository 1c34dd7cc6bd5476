//! Level cuts of a structure and rebuilding it from them.

use std::collections::BTreeMap;
use std::sync::Arc;

use lmconvex::constructions::{generate_from_subbase, Subbase};
use lmconvex::convexity::{
    check_l_convexity, cut_lower_structure, cut_upper_structure, lower_levels, structure_from_lower_cuts,
    structure_from_upper_cuts, upper_levels, DomainKind, StructureMap,
};
use lmconvex::{Carrier, FiniteLattice, FuzzyDomain, FuzzySet};

fn main() -> Result<(), lmconvex::Error> {
    let x = Arc::new(Carrier::new(&["a", "b"])?);
    let l = Arc::new(FiniteLattice::chain(3)?);
    let m = Arc::new(FiniteLattice::diamond());
    let d = FuzzyDomain::new(x.clone(), l.clone())?;
    let mut phi = StructureMap::fuzzy(d.clone(), m.clone());
    phi.set(&FuzzySet::from_named(&x, &l, &[("a", "1"), ("b", "1/2")])?, m.elem("p")?)?;
    phi.set(&FuzzySet::from_named(&x, &l, &[("a", "0"), ("b", "1")])?, m.elem("q")?)?;
    let s = generate_from_subbase(&Subbase(phi));

    let mut lower = BTreeMap::new();
    for a in lower_levels(&m) {
        let cut = cut_lower_structure(&s, a)?;
        println!("lower cut at {}: {} sets, L-convexity: {}", m.name(a), cut.len(), check_l_convexity(&cut).is_valid());
        lower.insert(a, cut);
    }
    let mut upper = BTreeMap::new();
    for a in upper_levels(&m) {
        let cut = cut_upper_structure(&s, a)?;
        println!("upper cut at {}: {} sets", m.name(a), cut.len());
        upper.insert(a, cut);
    }
    let from_lower = structure_from_lower_cuts(DomainKind::Fuzzy, d.clone(), m.clone(), &lower)?;
    let from_upper = structure_from_upper_cuts(DomainKind::Fuzzy, d, m, &upper)?;
    println!("rebuilt from lower cuts: {}", from_lower == s);
    println!("rebuilt from upper cuts: {}", from_upper == s);
    Ok(())
}
