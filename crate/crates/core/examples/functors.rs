//! Moving between M-fuzzifying and (L,M)-fuzzy structures.

use std::sync::Arc;

use lmconvex::constructions::{generate_from_subbase, Subbase};
use lmconvex::convexity::{check_lm_fuzzy, StructureMap};
use lmconvex::functors::{adjunction_check, cpf_transfer, iota, omega, FunctorContext};
use lmconvex::{Carrier, FiniteLattice, SpaceMap};

fn main() -> Result<(), lmconvex::Error> {
    let l = Arc::new(FiniteLattice::chain(3)?);
    let m = Arc::new(FiniteLattice::chain(3)?);
    let ctx = FunctorContext::new(l, m.clone())?;
    // the diamond fails the beta-meet hypothesis, so no context exists for it
    let refused = FunctorContext::new(Arc::new(FiniteLattice::diamond()), m.clone());
    println!("diamond as L: {}", refused.err().map(|e| e.to_string()).unwrap_or_default());

    let x = Arc::new(Carrier::new(&["a", "b", "c"])?);
    let mut phi = StructureMap::crisp(x.clone(), m.clone());
    phi.set_crisp(x.subset(&["a", "b"])?, m.top());
    phi.set_crisp(x.subset(&["b", "c"])?, m.elem("1/2")?);
    let s = generate_from_subbase(&Subbase(phi));

    let w = omega(&ctx, &s)?;
    println!("omega(S): {} sets with positive degree, valid = {}", w.support().len(), check_lm_fuzzy(&w).is_valid());
    println!("iota(omega(S)) = S: {}", iota(&ctx, &w)? == s);
    println!("omega(iota(omega(S))) >= omega(S): {}", w.le(&omega(&ctx, &iota(&ctx, &w)?)?));

    let f = SpaceMap::identity(x);
    let t = cpf_transfer(&ctx, &f, &s, &s)?;
    println!("identity: cpf {} before omega, {} after", t.fuzzifying, t.omega);
    let r = adjunction_check(&ctx, &s, &w, &f)?;
    println!("into iota(C): {}, out of omega(S): {}", r.left, r.right);
    Ok(())
}
