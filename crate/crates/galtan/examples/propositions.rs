//! Runs every implication check over the 2-valued and ℓ(Z₂)-valued spaces.

use galtan::lrel::{verify_proposition, Prop, Space};
use std::time::Instant;

fn main() {
    for prop in Prop::ALL {
        for space in [Space::two(2), Space::power_z2(2)] {
            let t = Instant::now();
            let r = verify_proposition(prop, space);
            println!(
                "{:<24} {:<40} instances {:>9} hypotheses met {:>8} counterexamples {} ({:.1?})",
                prop.name(),
                space.to_string(),
                r.instances,
                r.hypotheses_met,
                r.counterexamples,
                t.elapsed()
            );
            for e in &r.examples {
                println!("    {e}");
            }
        }
    }
}
