use std::fs;
use std::path::Path;

use hyperline_core::microscope::{render_svg_document, Placement};

use crate::error::CliError;

/// Writes the SVG rendering of `placements` to `path`.
pub fn render_svg(placements: &[Placement], path: &Path) -> Result<(), CliError> {
    fs::write(path, render_svg_document(placements))?;
    Ok(())
}
