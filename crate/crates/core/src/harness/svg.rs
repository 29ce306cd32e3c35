//! Deterministic SVG rendering of points and covers.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geom::{PointSet, Xy};
use crate::verify::Cover;

const MARGIN: f64 = 0.5;
const POINT_RADIUS: f64 = 0.04;

fn fmt(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn grow(lo: &mut Xy, hi: &mut Xy, p: Xy) {
    for k in 0..2 {
        lo[k] = lo[k].min(p[k]);
        hi[k] = hi[k].max(p[k]);
    }
}

/// Renders the first two coordinates of `points` and the objects of `cover`.
///
/// The y axis points up. Output depends only on the inputs.
pub fn render_svg(points: &PointSet, cover: Option<&Cover>) -> Result<String> {
    if points.dim() != 2 {
        return Err(Error::UnsupportedDimension(points.dim()));
    }
    if let Some(c) = cover.filter(|c| c.dim() != 2) {
        return Err(Error::UnsupportedDimension(c.dim()));
    }
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let xy = |c: &[f64]| [c[0], c.get(1).copied().unwrap_or(0.0)];
    for p in points.iter() {
        grow(&mut lo, &mut hi, xy(p.coords()));
    }
    if let Some(cover) = cover {
        match cover {
            Cover::Boxes { lengths, lowers } => {
                for l in lowers {
                    let a = xy(l.coords());
                    grow(&mut lo, &mut hi, a);
                    grow(
                        &mut lo,
                        &mut hi,
                        [
                            a[0] + lengths[0],
                            a[1] + lengths.get(1).copied().unwrap_or(0.0),
                        ],
                    );
                }
            }
            Cover::Disks { disks } => {
                for d in disks {
                    grow(
                        &mut lo,
                        &mut hi,
                        [d.center[0] - d.radius, d.center[1] - d.radius],
                    );
                    grow(
                        &mut lo,
                        &mut hi,
                        [d.center[0] + d.radius, d.center[1] + d.radius],
                    );
                }
            }
            Cover::Polygons { polygons } => {
                for poly in polygons {
                    for &v in poly.vertices() {
                        grow(&mut lo, &mut hi, v);
                    }
                }
            }
        }
    }
    if !lo[0].is_finite() {
        lo = [0.0, 0.0];
        hi = [1.0, 1.0];
    }
    let x0 = lo[0] - MARGIN;
    let (w, h) = (hi[0] - lo[0] + 2.0 * MARGIN, hi[1] - lo[1] + 2.0 * MARGIN);
    // Flip y: screen y = top - y.
    let top = hi[1] + MARGIN;
    let fy = |y: f64| top - y;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        fmt(x0),
        fmt(0.0),
        fmt(w),
        fmt(h)
    );
    if let Some(cover) = cover {
        out.push_str(
            r##"<g fill="#4a90d9" fill-opacity="0.2" stroke="#1f4e8c" stroke-width="0.02">"##,
        );
        out.push('\n');
        match cover {
            Cover::Boxes { lengths, lowers } => {
                let bh = lengths.get(1).copied().unwrap_or(0.0);
                for l in lowers {
                    let a = xy(l.coords());
                    let _ = writeln!(
                        out,
                        r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                        fmt(a[0]),
                        fmt(fy(a[1] + bh)),
                        fmt(lengths[0]),
                        fmt(bh)
                    );
                }
            }
            Cover::Disks { disks } => {
                for d in disks {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{}" cy="{}" r="{}"/>"#,
                        fmt(d.center[0]),
                        fmt(fy(d.center[1])),
                        fmt(d.radius)
                    );
                }
            }
            Cover::Polygons { polygons } => {
                for poly in polygons {
                    let pts: Vec<String> = poly
                        .vertices()
                        .iter()
                        .map(|v| format!("{},{}", fmt(v[0]), fmt(fy(v[1]))))
                        .collect();
                    let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
                }
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str(r##"<g fill="#c0392b">"##);
    out.push('\n');
    for p in points.iter() {
        let q = xy(p.coords());
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}"/>"#,
            fmt(q[0]),
            fmt(fy(q[1])),
            fmt(POINT_RADIUS)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxcover::square_cover;

    #[test]
    fn empty_has_default_view() {
        let svg = render_svg(&PointSet::empty(2), None).unwrap();
        assert!(svg.contains(r#"viewBox="-0.5 0 2 2""#), "{svg}");
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn deterministic_and_flipped() {
        let pts = PointSet::from_xy(&[[0.0, 0.0], [2.0, 3.0]]).unwrap();
        let cover = Cover::from(&square_cover(&pts).unwrap());
        let a = render_svg(&pts, Some(&cover)).unwrap();
        assert_eq!(a, render_svg(&pts, Some(&cover)).unwrap());
        assert_eq!(a.matches("<rect").count(), 2);
        // (0,0) sits near the bottom of a 5-unit tall view.
        assert!(a.contains(r#"<circle cx="0" cy="4.5" r="0.04"/>"#), "{a}");
    }

    #[test]
    fn corner_square_and_disk_grid() {
        let pts = PointSet::from_xy(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]).unwrap();
        let cover = Cover::from(&square_cover(&pts).unwrap());
        let svg = render_svg(&pts, Some(&cover)).unwrap();
        assert_eq!(svg.matches("<rect").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 4);

        let grid: Vec<Xy> = (0..3)
            .flat_map(|i| (0..3).map(move |j| [i as f64 * 0.7, j as f64 * 0.7]))
            .collect();
        let pts = PointSet::from_xy(&grid).unwrap();
        let disks = crate::diskcover::disk_cover(&pts).unwrap();
        let svg = render_svg(&pts, Some(&Cover::from(&disks))).unwrap();
        assert_eq!(svg.matches("<circle").count(), 9 + disks.len());
    }

    #[test]
    fn rejects_other_dimensions() {
        assert_eq!(
            render_svg(&PointSet::empty(3), None),
            Err(Error::UnsupportedDimension(3))
        );
    }
}
