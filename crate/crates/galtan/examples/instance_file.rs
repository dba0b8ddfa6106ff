//! Declaring a group, an action, a site and a cone in the instance format,
//! loading it, and writing it back.

use galtan::instance::{dump, parse_instance};
use galtan::suplat::Limits;
use galtan::tannaka::check_cone;

const TEXT: &str = "\
group G cyclic 2
action pt G : 0 0
action reg G : 0 1 | 1 0
site s gsets G
object s one pt
object s two reg
lattice V power 2
lrel lam1 V 1 1 : {0,1}
lrel lam2 V 2 2 : {0} {1} {1} {0}
cone c s V : lam1 lam2
";

fn main() {
    let inst = parse_instance(TEXT, None, &Limits::default()).unwrap();
    println!("{} declarations, {} sites, {} cones", inst.decls.len(), inst.sites.len(), inst.cones.len());
    for (name, (site, lattice, parts)) in &inst.cones {
        let cone: Vec<_> = parts.iter().map(|p| inst.lrels[p].1.clone()).collect();
        let r = check_cone(&inst.lattices[lattice], &inst.sites[site], &cone);
        println!("cone {name} over {site} into {lattice}: bijections {}, diamond {}", r.bijections, r.diamond);
    }
    assert_eq!(parse_instance(&dump(&inst), None, &Limits::default()).unwrap(), inst);
    print!("{}", dump(&inst));
}
