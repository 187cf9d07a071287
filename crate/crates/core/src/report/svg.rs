//! Deterministic SVG wireframes of 4-D pieces.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::geometry::{project_wireframe, Piece, PieceClass, Projection};
use crate::scalar::format_decimal;

pub const CANVAS: f64 = 640.0;
const MARGIN: f64 = 20.0;

pub fn stroke(class: PieceClass) -> &'static str {
    match class {
        PieceClass::Simplex => "#1f77b4",
        PieceClass::Box => "#555555",
        PieceClass::TriangleTriangle => "#d62728",
        PieceClass::TriangleQuad => "#2ca02c",
        PieceClass::QuadTriangle => "#9467bd",
        PieceClass::QuadQuad => "#ff7f0e",
        PieceClass::PolygonPolygon => "#8c564b",
    }
}

/// One `<g>` per piece, one `<line>` per projected edge, fitted to a fixed canvas.
pub fn render_svg(pieces: &[Piece], projection: &Projection) -> String {
    let drawn: Vec<(PieceClass, Vec<[[f64; 2]; 2]>)> = pieces
        .iter()
        .map(|p| {
            let segs = project_wireframe(p, projection)
                .iter()
                .map(|s| s.each_ref().map(|pt| [pt[0].to_f64(), pt[1].to_f64()]))
                .collect();
            (p.class(), segs)
        })
        .collect();

    let pts = || drawn.iter().flat_map(|(_, s)| s.iter().flatten());
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pts() {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let scale = if span > 0.0 {
        (CANVAS - 2.0 * MARGIN) / span
    } else {
        1.0
    };
    let fit = |p: &[f64; 2]| {
        [
            format_decimal(MARGIN + (p[0] - lo[0]) * scale),
            format_decimal(CANVAS - MARGIN - (p[1] - lo[1]) * scale),
        ]
    };

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        CANVAS
    )
    .unwrap();
    for (i, (class, segs)) in drawn.iter().enumerate() {
        writeln!(
            out,
            "  <g id=\"piece-{}\" class=\"{}\" stroke=\"{}\" stroke-width=\"1\" fill=\"none\">",
            i,
            class.label(),
            stroke(*class)
        )
        .unwrap();
        for [a, b] in segs {
            let ([x1, y1], [x2, y2]) = (fit(a), fit(b));
            writeln!(
                out,
                "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                x1, y1, x2, y2
            )
            .unwrap();
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

pub fn emit_svg(pieces: &[Piece], projection: &Projection, path: &Path) -> io::Result<()> {
    std::fs::write(path, render_svg(pieces, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QuadScalar;

    #[test]
    fn cube_has_32_lines() {
        let svg = render_svg(&[Piece::cube(&QuadScalar::one())], &Projection::standard());
        assert_eq!(svg.matches("<line ").count(), 32);
        assert!(svg.contains("class=\"box\""));
    }

    #[test]
    fn empty_is_valid() {
        let svg = render_svg(&[], &Projection::standard());
        assert!(svg.starts_with("<svg ") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<g"));
    }

    #[test]
    fn writes_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cube.svg");
        let cube = [Piece::cube(&QuadScalar::from_int(2))];
        emit_svg(&cube, &Projection::standard(), &path).unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            render_svg(&cube, &Projection::standard())
        );
    }
}
