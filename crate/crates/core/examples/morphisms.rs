//! Convexity-preserving maps, checked three ways.

use std::sync::Arc;

use lmconvex::constructions::{generate_from_subbase, quotient_structure, Subbase};
use lmconvex::convexity::StructureMap;
use lmconvex::morphisms::{
    cpf_cut_equivalence, is_convex_to_convex, is_cpf, is_cpf_via_preimage, is_quotient_function, StructuredSpacePair,
};
use lmconvex::suite::describe_witness;
use lmconvex::{Carrier, FiniteLattice, FuzzyDomain, FuzzySet, SpaceMap};

fn main() -> Result<(), lmconvex::Error> {
    let x = Arc::new(Carrier::new(&["a", "b", "c"])?);
    let y = Arc::new(Carrier::new(&["u", "v"])?);
    let l = Arc::new(FiniteLattice::chain(3)?);
    let m = l.clone();
    let mut phi = StructureMap::fuzzy(FuzzyDomain::new(x.clone(), l.clone())?, m.clone());
    phi.set(&FuzzySet::from_named(&x, &l, &[("a", "1"), ("b", "1"), ("c", "1/2")])?, m.top())?;
    let c = generate_from_subbase(&Subbase(phi));
    let f = SpaceMap::from_named(x, y.clone(), &[("a", "u"), ("b", "u"), ("c", "v")])?;

    let q = quotient_structure(&c, &f)?;
    let pair = StructuredSpacePair::new(c.clone(), q.clone(), f.clone())?;
    println!("onto the quotient: cpf {}, via preimage {}, quotient map {}",
        is_cpf(&pair), is_cpf_via_preimage(&pair)?, is_quotient_function(&pair));
    let cuts = cpf_cut_equivalence(&pair)?;
    println!("  cut levels agree with cpf: {}", cuts.consistent());
    println!("  convex-to-convex: {}", is_convex_to_convex(&pair));

    // give the target a set the source cannot pull back
    let mut d = q.clone();
    d.set(&FuzzySet::from_named(&y, &l, &[("u", "1/2"), ("v", "0")])?, m.top())?;
    let pair = StructuredSpacePair::new(c, d, f)?;
    let v = is_cpf(&pair);
    let witness = v.witness.as_ref().map(|w| describe_witness(pair.target().domain(), w));
    println!("onto a finer target: cpf {} (witness {})", v, witness.unwrap_or_default());
    Ok(())
}
