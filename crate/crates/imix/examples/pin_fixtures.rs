//! Regenerates fixtures/pinned.json from the oracles.

use imix::fixtures::{default_path, Pinned};

fn main() -> anyhow::Result<()> {
    let path = std::env::args_os().nth(1).map(Into::into).unwrap_or_else(default_path);
    let pinned = Pinned::compute()?;
    pinned.save(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}
