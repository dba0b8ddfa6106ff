//! Tensor products of finite sup-lattices, and the comparison
//! `ℓX ⊗ ℓY ≅ ℓ(X × Y)` on pure tensors.

use galtan::suplat::{power_product_iso, symmetry, tensor, Lattice, Limits, LinMap};

fn main() {
    let limits = Limits::default();
    let chain = Lattice::chain(3);
    for (name, s, t) in [
        ("l2 (x) l2", Lattice::power(2), Lattice::power(2)),
        ("l1 (x) chain3", Lattice::power(1), chain.clone()),
        ("chain3 (x) chain3", chain.clone(), chain),
    ] {
        let st = tensor(&s, &t, &limits).expect("small enough");
        let ts = tensor(&t, &s, &limits).expect("small enough");
        let round = symmetry(&st, &ts).then(&symmetry(&ts, &st)).unwrap();
        println!(
            "{name:<18} {} x {} -> {:>3} elements, symmetry involutive: {}",
            s.size(),
            t.size(),
            st.lattice().size(),
            round == LinMap::identity(st.lattice())
        );
    }

    for nx in 1..=3 {
        for ny in 1..=3 {
            let r = power_product_iso(nx, ny, &limits).unwrap();
            println!("l{nx} (x) l{ny} ~ l({nx} x {ny}): {} ({} elements)", r.holds(), r.size);
        }
    }
}
