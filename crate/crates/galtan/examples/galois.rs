//! The localic group of automorphisms of the point of a finite group's
//! site, and the nonvanishing/ordering lemma on its generators.

use galtan::suplat::Limits;
use galtan::tannaka::{AutF, Site};

fn main() {
    let limits = Limits::default();
    for site in [Site::terminal(), Site::z2(), Site::z3()] {
        let aut = AutF::build(&site, &limits).unwrap();
        print!("{:<9} {:>3} generators", site.name, aut.frame().generator_count());
        match aut.materialized() {
            Some(m) => {
                let iso = aut.iso_to_group().unwrap();
                print!(", {} elements, iso to the group: {}", m.lattice.size(), iso.holds());
            }
            None => print!(", not enumerated"),
        }
        let key = aut.key_lemma();
        println!(", generators nonzero {}, {} comparable pairs, holds {}", key.nonzero, key.comparable, key.holds());
    }
}
