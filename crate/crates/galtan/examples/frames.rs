//! Free frames and the presented frame of automorphisms of a finite set,
//! with its Hopf structure compared to the permutation group.

use galtan::locale::{free_frame, is_frame};
use galtan::locgroup::{aut_hopf, permutation_point, DiscreteGroup};
use galtan::suplat::Limits;

fn main() {
    let limits = Limits::default();
    for n in 0..=4 {
        let m = free_frame(n, &limits).and_then(|f| f.materialize()).expect("within limits");
        println!("free frame on {n} generators: {} elements, frame law {}", m.lattice.size(), is_frame(&m.lattice).holds);
    }

    let h = aut_hopf(2, &limits).unwrap();
    let m = h.frame().materialize().unwrap();
    println!("Aut({{0,1}}): {} generators, {} elements", h.frame().generator_count(), m.lattice.size());
    println!("Hopf laws: {}", h.hopf_laws().unwrap().holds());

    let s2 = DiscreteGroup::symmetric(2);
    let perms = [vec![0, 1], vec![1, 0]];
    let iso = h.iso_to_group(&s2, &|g| permutation_point(&perms[g])).unwrap();
    println!("iso to l(S2): frame {}, w {}, e {}, iota {}", iso.frame_iso, iso.w, iso.e, iso.iota);
}
