//! Replaying string-diagram derivations: the bundled files, then a
//! derivation built and checked in code.

use galtan::elevator::{check_derivation, parse_file, BUNDLED};

const SMALL: &str = "\
object A
cell f : A -> A
cell g : A -> A

size A 2
rel f : 0>1 1>0
rel g : 0>0 1>1

derivation slide
  f * g
-- ascensor@0,0 down
  id:A * g ;
  f * id:A
end
";

fn main() {
    for (name, text) in BUNDLED.iter().map(|(n, t)| (*n, *t)).chain([("slide", SMALL)]) {
        let file = parse_file(text).expect("bundled files parse");
        for d in &file.derivations {
            let verdict = check_derivation(&file.signature, d);
            print!("{name}: {} with {} steps replays: {}", d.name, d.steps.len(), verdict.failure.is_none());
            if let Some(model) = &file.model {
                let s = model.check_derivation(&file.signature, d).unwrap();
                print!(", sound in the model: {}", s.holds);
            }
            println!();
        }
    }
}
