//! The predual adjunction: linear maps out of Nat^v(L, T) against natural
//! transformations L => V (x) T, counted for two value lattices.

use galtan::locgroup::DiscreteGroup;
use galtan::suplat::{Lattice, Limits};
use galtan::tannaka::{adjunction, Base, Site};

fn main() {
    let limits = Limits::default();
    let bases = [("discrete 2", Base::discrete(2)), ("z2", Base::from_site(&Site::z2())), ("arrow", Base::from_site(&Site::arrow()))];
    for (vname, v) in [("2", Lattice::two()), ("l(Z2)", DiscreteGroup::cyclic(2).lattice())] {
        for (name, base) in &bases {
            let r = adjunction(base, &v, &limits).unwrap();
            println!(
                "V = {vname:<5} base {name:<10}: predual {:>3} elements, |hom| = {:>5}, |Nat| = {:>5}, bijection {}",
                r.predual_size, r.homs, r.nats, r.bijection
            );
        }
    }
}
