//! Regenerates `fixtures/` from the registry: `cargo run -p crossed --example write_fixtures`.

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
    });
    std::fs::create_dir_all(&dir)?;
    for (name, body) in crossed::fixtures::files() {
        std::fs::write(dir.join(&name), crossed::fixtures::render(&body))?;
        println!("{}", name);
    }
    Ok(())
}
