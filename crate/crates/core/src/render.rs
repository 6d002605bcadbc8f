//! Frame rendering: binary PPM (one pixel per cell) or SVG (circles for
//! nails, a closed polyline for the band).

use std::fmt::Write as _;

use crate::geometry::Vec2;
use crate::grid::{CellContent, NailGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameFormat {
    Ppm,
    Svg,
}

impl FrameFormat {
    pub fn extension(self) -> &'static str {
        match self {
            FrameFormat::Ppm => "ppm",
            FrameFormat::Svg => "svg",
        }
    }
}

impl std::str::FromStr for FrameFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ppm" => Ok(FrameFormat::Ppm),
            "svg" => Ok(FrameFormat::Svg),
            other => Err(format!("unknown frame format {other:?} (expected ppm or svg)")),
        }
    }
}

const WHITE: [u8; 3] = [255, 255, 255];
const BLACK: [u8; 3] = [0, 0, 0];
const RED: [u8; 3] = [220, 30, 30];

pub fn render_frame(band: &[Vec2], grid: &NailGrid, format: FrameFormat) -> Vec<u8> {
    match format {
        FrameFormat::Ppm => render_ppm(band, grid),
        FrameFormat::Svg => render_svg(band, grid),
    }
}

/// P6 image, one pixel per cell: white background, black nail-disk cells,
/// red band-particle cells. Row 0 of the image is the top of the grid.
fn render_ppm(band: &[Vec2], grid: &NailGrid) -> Vec<u8> {
    let (w, h) = (grid.width(), grid.height());
    let mut out = format!("P6\n{} {}\n255\n", w, h).into_bytes();
    let mut pixels = vec![WHITE; (w * h) as usize];
    for row in 0..h {
        for col in 0..w {
            if let CellContent::Nail(_) = grid.is_blocked(crate::grid::Cell::new(col as i32, row as i32)) {
                pixels[(row * w + col) as usize] = BLACK;
            }
        }
    }
    for p in band {
        let cell = grid.cell_of(*p);
        if cell.col >= 0 && cell.row >= 0 && (cell.col as u32) < w && (cell.row as u32) < h {
            pixels[(cell.row as u32 * w + cell.col as u32) as usize] = RED;
        }
    }
    // grid row 0 is the bottom; emit top-down
    for row in (0..h).rev() {
        for col in 0..w {
            out.extend_from_slice(&pixels[(row * w + col) as usize]);
        }
    }
    out
}

fn render_svg(band: &[Vec2], grid: &NailGrid) -> Vec<u8> {
    let (w, h) = (grid.width(), grid.height());
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<g transform="translate(0,{h}) scale(1,-1)">"#);
    for nail in grid.nails() {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#,
            nail.x,
            nail.y,
            grid.r_nail()
        );
    }
    if !band.is_empty() {
        let pts: Vec<String> = band.iter().map(|p| format!("{},{}", p.x, p.y)).collect();
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="none" stroke="red" stroke-width="0.4"/>"#,
            pts.join(" ")
        );
    }
    let _ = writeln!(s, "</g>\n</svg>");
    s.into_bytes()
}
