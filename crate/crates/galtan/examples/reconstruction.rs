//! End^v(T) built as a coend over a site, compared with Aut(F).

use galtan::suplat::Limits;
use galtan::tannaka::{check_iso, EndHopf, EndT, Site};

fn main() {
    let limits = Limits::default();
    for site in [Site::z2(), Site::z3()] {
        let e = EndT::build(&site).unwrap();
        let size = e.coend().elements(&limits).unwrap().len();
        let compat = e.compatibility().unwrap();
        let hopf = EndHopf::new(&e, &limits).and_then(|h| h.check()).unwrap();
        println!("{}: End^v(T) has {size} elements; compatibility {}, composites {}", site.name, compat.holds, hopf.holds());

        let iso = check_iso(&site, 2, &limits).unwrap();
        println!(
            "    Aut(F) {:?} vs End^v(T) {}: bijective {:?}, order on {} meet pairs {}",
            iso.autf_size, iso.endt_size, iso.bijective, iso.meet_pairs, iso.order_agrees
        );
    }
}
