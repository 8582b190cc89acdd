//! The committed `data/` files must stay byte-identical to what the
//! library generates (see the `shipped_data` example for regeneration).

use std::fs;
use std::path::PathBuf;

use haken_core::complex::{generators, write_complex};
use haken_core::corpus::shipped_ledgers;
use haken_core::pattern::write_pattern;
use haken_core::surgery::write_ledger;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn shipped_files_match_the_library() {
    let dir = data_dir();
    for shipped in shipped_ledgers() {
        let pattern = fs::read_to_string(dir.join(format!("{}.pattern", shipped.name))).unwrap();
        assert_eq!(
            pattern,
            write_pattern(&shipped.pattern).unwrap(),
            "{}.pattern drifted; rerun the shipped_data example",
            shipped.name
        );
        let ledger = fs::read_to_string(dir.join(format!("{}.ledger", shipped.name))).unwrap();
        assert_eq!(
            ledger,
            write_ledger(&shipped.cuts, shipped.rounds).unwrap(),
            "{}.ledger drifted; rerun the shipped_data example",
            shipped.name
        );
    }

    let octahedron = generators::cross_polytope_boundary(3).unwrap();
    assert_eq!(
        fs::read_to_string(dir.join("octahedron.cx")).unwrap(),
        write_complex(&octahedron).unwrap()
    );
    let join = generators::cycle(4)
        .unwrap()
        .join(&generators::cycle(4).unwrap());
    assert_eq!(
        fs::read_to_string(dir.join("join-4-4.cx")).unwrap(),
        write_complex(&join).unwrap()
    );
}
