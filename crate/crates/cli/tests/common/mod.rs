#![allow(dead_code)]

use std::path::PathBuf;

use hyperline_core::microscope::MicroscopeView;
use hyperline_core::Hyperreal;

pub const SCENE_WIDTH: usize = 60;

fn germ(s: &str) -> Hyperreal {
    s.parse().expect("valid germ")
}

/// Center 1 under unit `10^-H`, with one point at each kind of offset.
pub fn halo_of_one() -> MicroscopeView {
    MicroscopeView::new(Hyperreal::one(), germ("pow(1/10,H)"))
        .with_point("1-10^-H", germ("1 - pow(1/10,H)"))
        .with_point("1", germ("1"))
        .with_point("1/2", germ("1/2"))
        .with_point("1-10^-2H", germ("1 - pow(1/100,H)"))
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares `actual` with the golden file, rewriting the file instead when
/// `HYPERLINE_BLESS` is set.
pub fn check_golden(name: &str, actual: &[u8]) -> Result<(), String> {
    let path = golden(name);
    if std::env::var_os("HYPERLINE_BLESS").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!(
            "{} differs:\n--- expected\n{}\n--- actual\n{}",
            name,
            String::from_utf8_lossy(&expected),
            String::from_utf8_lossy(actual)
        ))
    }
}
