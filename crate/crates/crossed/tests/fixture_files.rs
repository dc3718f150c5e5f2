use std::path::PathBuf;

use crossed::category::verify_crossed_category;
use crossed::fixtures;
use crossed::io;
use crossed::matched::verify_matched_pair;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn shipped_files_match_registry() {
    for (name, body) in fixtures::files() {
        let on_disk = std::fs::read_to_string(dir().join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk, fixtures::render(&body), "{name} is stale; rerun the write_fixtures example");
    }
}

#[test]
fn shipped_files_load_and_verify() {
    for (name, _) in fixtures::matched_pairs() {
        let mp = io::load_matched_pair(&dir().join(format!("{name}.json"))).unwrap();
        assert!(verify_matched_pair(&mp).passed(), "{name}");
    }
    for (name, _) in fixtures::categories() {
        let c = io::load_category(&dir().join(format!("{name}.json"))).unwrap();
        assert!(verify_crossed_category(&c).passed(), "{name}");
    }
}

#[test]
fn frozen_center_tables() {
    let text = std::fs::read_to_string(dir().join("z4_over_z2.center.json")).unwrap();
    let frozen = io::parse_center_structure(&text).unwrap();
    let cat = fixtures::z4_over_z2();
    let st = crossed::center::Center::new(&cat).unwrap().structure().unwrap();
    assert_eq!(st, frozen);
}
