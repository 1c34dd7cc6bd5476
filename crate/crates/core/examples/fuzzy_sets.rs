//! Cuts of a fuzzy set, its decomposition and images along a map.

use std::sync::Arc;

use lmconvex::{Carrier, FiniteLattice, FuzzySet, SpaceMap};

fn main() -> Result<(), lmconvex::Error> {
    let x = Arc::new(Carrier::new(&["a", "b", "c"])?);
    let l = FiniteLattice::chain(3)?;
    let a = FuzzySet::from_named(&x, &l, &[("a", "1"), ("b", "1/2"), ("c", "0")])?;
    for c in l.elements() {
        println!(
            "level {:>3}: A_[c] = {:?}, A^[c] = {:?}, A_(c) = {:?}",
            l.name(c),
            x.render(a.cut_lower(&l, c)),
            x.render(a.cut_upper(&l, c)),
            x.render(a.cut_strict(&l, c)),
        );
    }
    println!("decomposition holds: {}", a.decompose(&l).holds());

    let y = Arc::new(Carrier::new(&["u", "v"])?);
    let f = SpaceMap::from_named(x.clone(), y.clone(), &[("a", "u"), ("b", "u"), ("c", "v")])?;
    let image = f.forward_image(&a, &l);
    println!("f->(A): u = {}, v = {}", l.name(image.value(0)), l.name(image.value(1)));
    let back = f.backward_image(&image);
    println!("f<-(f->(A)) contains A: {}", a.is_subset(&back, &l));
    Ok(())
}
