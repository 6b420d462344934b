//! Infinite-magnification views of a halo.
//!
//! A view fixes a center and a unit (usually a positive infinitesimal such as
//! `10^-H`). A point sits at `st((value − center) / unit)` when that ratio is
//! limited, and off-screen in the direction of its sign otherwise. Offsets of
//! higher infinitesimal order than the unit land on the center.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::germ::{Classification, Hyperreal};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Negative,
    Positive,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    InView(Rational),
    OutOfView(Direction),
}

impl core::fmt::Display for Position {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Position::InView(c) => write!(f, "InView({c})"),
            Position::OutOfView(Direction::Negative) => f.write_str("OutOfView(-)"),
            Position::OutOfView(Direction::Positive) => f.write_str("OutOfView(+)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    pub label: String,
    pub position: Position,
}

#[derive(Clone, Debug)]
pub struct MicroscopeView {
    pub center: Hyperreal,
    pub unit: Hyperreal,
    pub points: Vec<(String, Hyperreal)>,
}

impl MicroscopeView {
    pub fn new(center: Hyperreal, unit: Hyperreal) -> Self {
        MicroscopeView {
            center,
            unit,
            points: Vec::new(),
        }
    }

    pub fn with_point(mut self, label: impl Into<String>, value: Hyperreal) -> Self {
        self.points.push((label.into(), value));
        self
    }

    fn magnified(&self, value: &Hyperreal) -> Result<Hyperreal> {
        value.sub(&self.center)?.div(&self.unit)
    }

    /// Screen position of every point, in input order.
    pub fn place(&self) -> Result<Vec<Placement>> {
        if self.unit.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.points
            .iter()
            .map(|(label, value)| {
                let r = self.magnified(value)?;
                let position = match r.classify() {
                    Classification::Infinite => Position::OutOfView(if r.signum() < 0 {
                        Direction::Negative
                    } else {
                        Direction::Positive
                    }),
                    _ => Position::InView(r.st()?),
                };
                Ok(Placement {
                    label: label.clone(),
                    position,
                })
            })
            .collect()
    }

    /// Points that differ from the center but place at 0 because their
    /// offset is infinitesimal relative to the unit.
    pub fn blurred(&self) -> Result<Vec<(String, Hyperreal)>> {
        if self.unit.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = Vec::new();
        for (label, value) in &self.points {
            let r = self.magnified(value)?;
            if r.classify() == Classification::Infinitesimal {
                out.push((label.clone(), value.clone()));
            }
        }
        Ok(out)
    }

    /// The same center at magnification `unit²`, holding only the blurred
    /// points.
    pub fn refined(&self) -> Result<MicroscopeView> {
        Ok(MicroscopeView {
            center: self.center.clone(),
            unit: self.unit.mul(&self.unit)?,
            points: self.blurred()?,
        })
    }
}

/// Free-function form of [`MicroscopeView::place`].
pub fn place(view: &MicroscopeView) -> Result<Vec<Placement>> {
    view.place()
}

fn in_view(placements: &[Placement]) -> Vec<(&Rational, &str)> {
    let mut pts: Vec<(&Rational, &str)> = placements
        .iter()
        .filter_map(|p| match &p.position {
            Position::InView(c) => Some((c, p.label.as_str())),
            Position::OutOfView(_) => None,
        })
        .collect();
    pts.sort();
    pts
}

fn bounds<'a>(pts: &[(&'a Rational, &str)]) -> Option<(&'a Rational, &'a Rational)> {
    Some((pts.first()?.0, pts.last()?.0))
}

/// `lo + (c − lo)/(hi − lo)·span` rounded half up; the midpoint when the
/// range is degenerate.
fn scale_to(c: &Rational, lo: &Rational, hi: &Rational, start: i64, span: i64) -> Rational {
    if lo == hi {
        return Rational::integer(start) + Rational::new(span, 2);
    }
    Rational::integer(start) + (c - lo) / (hi - lo) * Rational::integer(span)
}

fn round_half_up(x: &Rational) -> BigInt {
    (x + &Rational::new(1, 2)).floor()
}

/// Rows of text where each item is written at a requested column, bumping
/// to the next row on overlap.
struct TextGrid {
    width: usize,
    rows: Vec<Vec<char>>,
}

impl TextGrid {
    fn new(width: usize) -> Self {
        TextGrid {
            width,
            rows: Vec::new(),
        }
    }

    fn place_centered(&mut self, col: usize, text: &str) {
        let chars: Vec<char> = text.chars().collect();
        let len = chars.len().min(self.width);
        let start = col.saturating_sub(len / 2).min(self.width - len);
        let fits = |row: &Vec<char>| {
            let lo = start.saturating_sub(1);
            let hi = (start + len + 1).min(self.width);
            row[lo..hi].iter().all(|&c| c == ' ')
        };
        let row_index = match self.rows.iter().position(fits) {
            Some(i) => i,
            None => {
                self.rows.push(alloc::vec![' '; self.width]);
                self.rows.len() - 1
            }
        };
        self.rows[row_index][start..start + len].copy_from_slice(&chars[..len]);
    }

    fn write_into(&self, out: &mut String) {
        for row in &self.rows {
            let line: String = row.iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
}

/// Minimum ASCII width; narrower requests are widened.
pub const MIN_ASCII_WIDTH: usize = 20;

/// One-line axis with ticks, a row of coordinates, stacked labels and a
/// legend for off-screen points. Equal coordinates stack in label order.
pub fn render_ascii(placements: &[Placement], width: usize) -> String {
    let width = width.max(MIN_ASCII_WIDTH);
    let pts = in_view(placements);
    let mut axis: Vec<char> = alloc::vec!['-'; width];
    axis[0] = '<';
    axis[width - 1] = '>';
    let mut coords = TextGrid::new(width);
    let mut labels = TextGrid::new(width);
    if let Some((lo, hi)) = bounds(&pts) {
        let span = (width - 5) as i64;
        let column = |c: &Rational| {
            let x = round_half_up(&scale_to(c, lo, hi, 2, span));
            usize::try_from(x).expect("column within the axis")
        };
        let mut last: Option<&Rational> = None;
        for (c, label) in &pts {
            let col = column(c);
            axis[col] = '+';
            if last != Some(*c) {
                coords.place_centered(col, &c.to_string());
                last = Some(*c);
            }
            labels.place_centered(col, label);
        }
    }
    let mut out: String = axis.iter().collect();
    out.push('\n');
    coords.write_into(&mut out);
    labels.write_into(&mut out);
    for p in placements {
        match p.position {
            Position::OutOfView(Direction::Negative) => {
                let _ = writeln!(out, "<< {} (out of view)", p.label);
            }
            Position::OutOfView(Direction::Positive) => {
                let _ = writeln!(out, ">> {} (out of view)", p.label);
            }
            Position::InView(_) => {}
        }
    }
    out
}

pub const SVG_WIDTH: i64 = 800;
pub const SVG_HEIGHT: i64 = 200;

fn fixed2(x: &Rational) -> String {
    let hundredths = round_half_up(&(x * &Rational::integer(100)));
    let negative = hundredths < BigInt::from(0);
    let magnitude = if negative { -hundredths } else { hundredths };
    let text = alloc::format!("{:0>3}", magnitude.to_string());
    let (int, frac) = text.split_at(text.len() - 2);
    alloc::format!("{}{int}.{frac}", if negative { "-" } else { "" })
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Standalone SVG 1.1 document with a fixed 800×200 viewport. In-view
/// points are scaled into the middle 80% of the width.
pub fn render_svg_document(placements: &[Placement]) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" fill=\"white\"/>"
    );
    out.push_str("  <line x1=\"20\" y1=\"100\" x2=\"780\" y2=\"100\" stroke=\"black\" stroke-width=\"1\"/>\n");
    const TEXT: &str = "font-family=\"monospace\" font-size=\"12\"";

    let pts = in_view(placements);
    if let Some((lo, hi)) = bounds(&pts) {
        let margin = SVG_WIDTH / 10;
        let mut last: Option<&Rational> = None;
        let mut stack = 0;
        for (c, label) in &pts {
            let x = fixed2(&scale_to(c, lo, hi, margin, SVG_WIDTH - 2 * margin));
            if last == Some(*c) {
                stack += 1;
            } else {
                stack = 0;
                last = Some(*c);
                let _ = writeln!(
                    out,
                    "  <circle cx=\"{x}\" cy=\"100\" r=\"4\" fill=\"black\"/>"
                );
                let _ = writeln!(
                    out,
                    "  <text x=\"{x}\" y=\"118\" {TEXT} text-anchor=\"middle\">{}</text>",
                    xml_escape(&c.to_string())
                );
            }
            let y = 88 - 14 * stack;
            let _ = writeln!(
                out,
                "  <text x=\"{x}\" y=\"{y}\" {TEXT} text-anchor=\"middle\">{}</text>",
                xml_escape(label)
            );
        }
    }

    let (mut left, mut right) = (0, 0);
    for p in placements {
        match p.position {
            Position::OutOfView(Direction::Negative) => {
                let y = 185 - 14 * left;
                left += 1;
                let _ = writeln!(
                    out,
                    "  <text x=\"20\" y=\"{y}\" {TEXT} text-anchor=\"start\">&#8592; {}</text>",
                    xml_escape(&p.label)
                );
            }
            Position::OutOfView(Direction::Positive) => {
                let y = 185 - 14 * right;
                right += 1;
                let _ = writeln!(
                    out,
                    "  <text x=\"780\" y=\"{y}\" {TEXT} text-anchor=\"end\">{} &#8594;</text>",
                    xml_escape(&p.label)
                );
            }
            Position::InView(_) => {}
        }
    }
    out.push_str("</svg>\n");
    out
}
