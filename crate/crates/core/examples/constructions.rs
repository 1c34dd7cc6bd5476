//! Subbases, quotients, preimages, substructures and products.

use std::sync::Arc;

use lmconvex::constructions::{
    generate_from_subbase, preimage_structure, product_structure, quotient_structure, substructure, Subbase,
    DEFAULT_PRODUCT_BUDGET,
};
use lmconvex::convexity::{check_lm_fuzzy, StructureMap};
use lmconvex::{Carrier, FiniteLattice, FuzzyDomain, FuzzySet, SpaceMap};

fn main() -> Result<(), lmconvex::Error> {
    let x = Arc::new(Carrier::new(&["a", "b", "c"])?);
    let l = Arc::new(FiniteLattice::chain(2)?);
    let m = Arc::new(FiniteLattice::chain(3)?);
    let d = FuzzyDomain::new(x.clone(), l.clone())?;

    let mut phi = StructureMap::fuzzy(d, m.clone());
    phi.set(&FuzzySet::characteristic(&l, 3, x.subset(&["a", "b"])?), m.top())?;
    phi.set(&FuzzySet::characteristic(&l, 3, x.subset(&["b", "c"])?), m.elem("1/2")?)?;
    let c = generate_from_subbase(&Subbase(phi));
    println!("generated: {} sets with positive degree, valid = {}", c.support().len(), check_lm_fuzzy(&c).is_valid());
    let b = FuzzySet::characteristic(&l, 3, x.subset(&["b"])?);
    println!("degree of {{b}}: {}", m.name(c.degree(&b)));

    let y = Arc::new(Carrier::new(&["u", "v"])?);
    let f = SpaceMap::from_named(x.clone(), y, &[("a", "u"), ("b", "u"), ("c", "v")])?;
    let q = quotient_structure(&c, &f)?;
    println!("quotient valid = {}", check_lm_fuzzy(&q).is_valid());
    let back = preimage_structure(&q, &f)?;
    println!("preimage of the quotient is below the original: {}", back.le(&c));

    let sub = substructure(&c, x.subset(&["a", "c"])?)?;
    println!("substructure on {{a,c}} valid = {}", check_lm_fuzzy(&sub).is_valid());

    let p = product_structure(&[q.clone(), sub], DEFAULT_PRODUCT_BUDGET)?;
    println!("product carrier {:?}, valid = {}", p.carrier.points(), check_lm_fuzzy(&p.structure).is_valid());
    Ok(())
}
