//! Regenerates the `data/` directory: the shipped hierarchy ledgers with
//! their initial patterns, plus a couple of small standalone complexes for
//! command-line demos. Usage: `cargo run --example shipped_data -- [dir]`.

use std::fs;
use std::path::PathBuf;

use haken_core::complex::{generators, write_complex};
use haken_core::corpus::shipped_ledgers;
use haken_core::pattern::write_pattern;
use haken_core::surgery::write_ledger;

fn main() {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "data".to_string()),
    );
    fs::create_dir_all(&dir).expect("creating the output directory");

    for shipped in shipped_ledgers() {
        let pattern = write_pattern(&shipped.pattern).expect("serializing the initial pattern");
        fs::write(dir.join(format!("{}.pattern", shipped.name)), pattern).expect("writing");
        let ledger = write_ledger(&shipped.cuts, shipped.rounds).expect("serializing the ledger");
        fs::write(dir.join(format!("{}.ledger", shipped.name)), ledger).expect("writing");
        println!("{}: pattern + ledger", shipped.name);
    }

    let octahedron = generators::cross_polytope_boundary(3).expect("octahedron");
    fs::write(
        dir.join("octahedron.cx"),
        write_complex(&octahedron).expect("serializing"),
    )
    .expect("writing");
    let join = generators::cycle(4)
        .expect("cycle")
        .join(&generators::cycle(4).expect("cycle"));
    fs::write(
        dir.join("join-4-4.cx"),
        write_complex(&join).expect("serializing"),
    )
    .expect("writing");
    println!("octahedron.cx, join-4-4.cx");
}
