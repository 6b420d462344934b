mod common;

use common::*;
use hyperline::svg::render_svg;
use hyperline_core::microscope::{render_ascii, render_svg_document};

#[test]
fn ascii_scene_matches_golden() {
    let placements = halo_of_one().place().unwrap();
    check_golden(
        "halo_of_one.txt",
        render_ascii(&placements, SCENE_WIDTH).as_bytes(),
    )
    .unwrap();
}

#[test]
fn svg_scene_matches_golden() {
    let placements = halo_of_one().place().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scene.svg");
    render_svg(&placements, &path).unwrap();
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, render_svg_document(&placements).into_bytes());
    check_golden("halo_of_one.svg", &written).unwrap();
}

#[test]
fn empty_and_single_point_scenes() {
    check_golden("empty.txt", render_ascii(&[], 30).as_bytes()).unwrap();
    let single = halo_of_one();
    let single = hyperline_core::microscope::MicroscopeView {
        points: single.points[..1].to_vec(),
        ..single
    };
    let placements = single.place().unwrap();
    check_golden("single.svg", render_svg_document(&placements).as_bytes()).unwrap();
    let off_only = hyperline_core::microscope::MicroscopeView {
        points: halo_of_one().points[2..3].to_vec(),
        ..halo_of_one()
    };
    check_golden(
        "out_of_view.svg",
        render_svg_document(&off_only.place().unwrap()).as_bytes(),
    )
    .unwrap();
}
