//! Comodules over the localic group of Z2 against Z2-sets: objects,
//! morphisms and the forgetful triangle, for carriers up to 3.

use galtan::comodule::{iso_cmd_rel, mu_to_rho, rho_to_mu};
use galtan::locgroup::{ActionMu, DiscreteGroup};
use galtan::suplat::Limits;

fn main() {
    let z2 = DiscreteGroup::cyclic(2);

    let swap = ActionMu::from_classical(&z2, &[vec![0, 1], vec![1, 0]]);
    let rho = mu_to_rho(&swap);
    println!("swap action as a coaction on {} points; back to an action: {}", rho.size, rho_to_mu(&z2, &rho) == swap);

    let r = iso_cmd_rel(&z2, 3, &Limits::default()).unwrap();
    for (n, co, act) in &r.objects {
        println!("|X| = {n}: {co} coactions, {act} actions");
    }
    println!("objects biject: {}", r.objects_biject);
    println!("morphisms agree on {} pairs: {}", r.hom_pairs, r.homs_agree);
    println!("forgetful triangle: {}", r.triangle_commutes);
}
