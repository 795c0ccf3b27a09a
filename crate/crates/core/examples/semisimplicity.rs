//! Survey which loop parameters make the rank-2 algebra semisimple, and
//! where the Young modules grow past their cell modules.
//!
//!     cargo run --release --example semisimplicity

use brauer_typec::algebra::BasedAlgebra;
use brauer_typec::bipartition::cell_indices;
use brauer_typec::creps::{cell_module, young_module_b};
use brauer_typec::ext::SimpleCatalogue;
use brauer_typec::scalar::FieldSpec;
use brauer_typec::signed_perm::SignPlacement;

fn main() {
    let mut fields = vec![("Q, delta 3".to_string(), FieldSpec::rational_delta(3))];
    for d in [1i64, -2] {
        fields.push((format!("Q, delta {d}"), FieldSpec::rational_delta(d)));
    }
    for p in [5u64, 7] {
        for d in 1..p.min(6) {
            fields.push((
                format!("F{p}, delta {d}"),
                FieldSpec::prime(p, d as i64).unwrap(),
            ));
        }
    }
    for (name, field) in fields {
        let balg = BasedAlgebra::brauer_c(2, &field);
        let semisimple = match SimpleCatalogue::build(&balg, 0) {
            Ok(cat) => cat
                .projectives
                .iter()
                .zip(cat.simples.iter())
                .all(|(p, s)| p.dim == s.dim),
            Err(e) => {
                println!("{name:12} catalogue undecided: {e}");
                continue;
            }
        };
        print!("{name:12} semisimple: {semisimple}");
        if !semisimple {
            print!("; Young modules larger than their cells:");
            for idx in cell_indices(2) {
                let y = young_module_b(&balg, &idx, SignPlacement::First, 0).unwrap();
                let t = cell_module(&balg, &idx, SignPlacement::First).unwrap();
                if y.dim != t.dim {
                    print!(" {idx} (dim {} over {})", y.dim, t.dim);
                }
            }
        }
        println!();
    }
}
