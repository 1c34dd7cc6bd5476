//! The worked examples and the residuum.

use lmconvex::gallery::{emit, residuum, UpperSetReading, ENTRIES};
use lmconvex::FiniteLattice;

fn main() -> Result<(), lmconvex::Error> {
    for &(name, description) in ENTRIES {
        let item = emit(name, UpperSetReading::Corrected)?;
        println!("{name:28} valid = {:5}  {description}", item.check().is_valid());
    }
    let literal = emit("upper-sets-chain", UpperSetReading::Literal)?;
    println!("literal upper-set reading valid = {}", literal.check().is_valid());

    let l = FiniteLattice::chain(3)?;
    for a in l.elements() {
        let row: Vec<&str> = l.elements().map(|b| l.name(residuum(&l, a, b).unwrap())).collect();
        println!("{:>3} -> _ : {:?}", l.name(a), row);
    }
    Ok(())
}
