//! Checking classical, L- and (L,M)-fuzzy convexity, with witnesses.

use std::sync::Arc;

use lmconvex::convexity::{check_classical, check_lm_fuzzy, DomainKind, StructureMap};
use lmconvex::{Carrier, FiniteLattice, FuzzyDomain, FuzzySet, PointSet};

fn main() -> Result<(), lmconvex::Error> {
    let x = Arc::new(Carrier::new(&["a", "b", "c"])?);
    let ab = x.subset(&["a", "b"])?;
    let bc = x.subset(&["b", "c"])?;

    // {a,b} and {b,c} without {b} is not closed under intersection
    let family = [PointSet::EMPTY, x.full(), ab, bc];
    let cert = check_classical(&x, &family);
    println!("classical: valid = {}", cert.is_valid());
    if let Some(v) = cert.first() {
        println!("  {} violated: {}", v.axiom, v.detail);
    }
    let fixed = [PointSet::EMPTY, x.full(), ab, bc, x.subset(&["b"])?];
    println!("with {{b}} added: valid = {}", check_classical(&x, &fixed).is_valid());

    // an (L,M)-fuzzy structure: degrees in M = chain3 on fuzzy sets over L = chain3
    let l = Arc::new(FiniteLattice::chain(3)?);
    let m = l.clone();
    let d = FuzzyDomain::new(x.clone(), l.clone())?;
    let mut s = StructureMap::boundary_only(DomainKind::Fuzzy, d, m.clone())?;
    let half = m.elem("1/2")?;
    let a = FuzzySet::from_named(&x, &l, &[("a", "1"), ("b", "1/2"), ("c", "0")])?;
    let b = FuzzySet::from_named(&x, &l, &[("a", "0"), ("b", "1"), ("c", "1")])?;
    s.set(&a, m.top())?;
    s.set(&b, half)?;
    let cert = check_lm_fuzzy(&s);
    println!("(L,M)-fuzzy: valid = {}", cert.is_valid());
    for v in &cert.violations {
        println!("  {}: {}", v.axiom, v.detail);
    }
    // the meet of a and b needs degree at least 1/2
    s.set(&a.meet(&b, &l), half)?;
    println!("after raising the meet: valid = {}", check_lm_fuzzy(&s).is_valid());
    Ok(())
}
