//! Writes the bundled corpus under the given directory (default `corpus`).
//!
//! ```text
//! cargo run -p eqrel-core --example gen_corpus -- corpus
//! ```

use std::path::PathBuf;

use eqrel_core::structures::builders::bundled_corpus;
use eqrel_core::structures::save_structure;

fn main() -> std::io::Result<()> {
    let root = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    for (rel, x) in bundled_corpus() {
        let path = root.join(rel);
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(&path, save_structure(&x))?;
        println!("{}", path.display());
    }
    Ok(())
}
