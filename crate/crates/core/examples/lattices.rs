//! Builtin lattices, the wedge-below relations and the beta-meet check.

use lmconvex::FiniteLattice;

fn show(lat: &FiniteLattice) {
    let names = |f: lmconvex::ElementFamily| f.iter().map(|e| lat.name(e).to_string()).collect::<Vec<_>>();
    println!("elements {:?}, bottom {}, top {}", lat.names(), lat.name(lat.bottom()), lat.name(lat.top()));
    println!("  distributive: {}, chain: {}", lat.is_distributive(), lat.is_chain());
    for e in lat.elements() {
        println!("  beta({}) = {:?}   alpha({}) = {:?}", lat.name(e), names(lat.beta(e)), lat.name(e), names(lat.alpha(e)));
    }
    match lat.beta_meet_witness() {
        None => println!("  beta(a /\\ b) = beta(a) & beta(b) everywhere"),
        Some((a, b)) => println!("  beta-meet fails at {} and {}", lat.name(a), lat.name(b)),
    }
}

fn main() -> Result<(), lmconvex::Error> {
    for name in ["chain3", "diamond", "N5"] {
        println!("== {name}");
        show(&FiniteLattice::builtin(name)?);
    }
    // a lattice from a covering relation
    let lat = FiniteLattice::from_covers(&["0", "a", "b", "1"], &[("0", "a"), ("a", "b"), ("b", "1")])?;
    println!("== custom chain, a \\/ b = {}", lat.name(lat.join_named(&["a", "b"])?));
    Ok(())
}
