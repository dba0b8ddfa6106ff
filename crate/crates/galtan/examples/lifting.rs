//! Lifting objects of a site to actions and coactions of the
//! reconstructed group: an equivalence for Z2-sets, not for presheaves
//! on the arrow category.

use galtan::suplat::Limits;
use galtan::tannaka::{lifting_check, FunctorVerdicts, Site};

fn show(label: &str, v: &FunctorVerdicts) {
    for (name, verdict) in [("faithful", &v.faithful), ("full", &v.full), ("essentially surjective", &v.essentially_surjective)] {
        print!("    {label} {name}: {} ({} checked)", verdict.holds, verdict.checked);
        match &verdict.witness {
            Some(w) => println!("; {w}"),
            None => println!(),
        }
    }
}

fn main() {
    for site in [Site::z2(), Site::arrow()] {
        let r = lifting_check(&site, 3, &Limits::default()).unwrap();
        println!("{}: {} objects with fibers up to 3", site.name, r.objects);
        show("galois", &r.galois);
        show("tannaka", &r.tannaka);
    }
}
