//! Point file format: one point per non-empty line, two whitespace-separated
//! decimal reals. Lines starting with `#` are comments.

use thiserror::Error;

use crate::geometry::Vec2;

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_points(text: &str) -> Result<Vec<Vec2>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(xs), Some(ys), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(ParseError {
                line,
                message: format!("expected two coordinates, got {trimmed:?}"),
            });
        };
        let parse = |s: &str| -> Result<f64, ParseError> {
            let v: f64 = s.parse().map_err(|_| ParseError {
                line,
                message: format!("not a number: {s:?}"),
            })?;
            if !v.is_finite() {
                return Err(ParseError {
                    line,
                    message: format!("coordinate is not finite: {s:?}"),
                });
            }
            Ok(v)
        };
        out.push(Vec2::new(parse(xs)?, parse(ys)?));
    }
    Ok(out)
}

/// Serializes points so that `parse_points` round-trips them bit-exact.
pub fn format_points(points: &[Vec2]) -> String {
    let mut s = String::new();
    for p in points {
        s.push_str(&format!("{} {}\n", p.x, p.y));
    }
    s
}
