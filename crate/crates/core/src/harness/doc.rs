//! Shape configuration, cover documents and cover dispatch.

use serde::{Deserialize, Serialize};

use crate::boxcover::hyperbox_cover;
use crate::diskcover::disk_cover;
use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Disk, Point, PointSet};
use crate::polycover::polygon_cover;
use crate::tilecover::{tiling_cover, Tile};
use crate::verify::Cover;

use super::gen::Instance;

/// Which cover to build.
#[derive(Debug, Clone, PartialEq)]
pub enum ShapeSpec {
    Square,
    Rect {
        width: f64,
        height: f64,
    },
    /// Unit hypercube in the instance dimension.
    Cube,
    Hyperbox {
        lengths: Vec<f64>,
    },
    Disk,
    TileSquare {
        side: f64,
    },
    TileHex {
        circumradius: f64,
    },
    Polygon {
        polygon: ConvexPolygon,
    },
}

fn parse_numbers(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::UnsupportedShape(format!("bad number {t:?}")))
        })
        .collect()
}

impl ShapeSpec {
    /// Parses `square`, `rect:a,b`, `cube`, `hyperbox:l1,...`, `disk`,
    /// `tile-square:s`, `tile-hex:rho` or `polygon` (which needs `polygon`).
    pub fn parse(s: &str, polygon: Option<ConvexPolygon>) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let one = |arg: Option<&str>| -> Result<f64> {
            match arg.map(parse_numbers).transpose()?.as_deref() {
                Some([v]) => Ok(*v),
                _ => Err(Error::UnsupportedShape(format!("{name} needs one value"))),
            }
        };
        match name {
            "square" => Ok(ShapeSpec::Square),
            "cube" => Ok(ShapeSpec::Cube),
            "disk" => Ok(ShapeSpec::Disk),
            "rect" => match arg.map(parse_numbers).transpose()?.as_deref() {
                Some([w, h]) => Ok(ShapeSpec::Rect {
                    width: *w,
                    height: *h,
                }),
                _ => Err(Error::UnsupportedShape("rect needs rect:a,b".into())),
            },
            "hyperbox" => match arg {
                Some(a) => Ok(ShapeSpec::Hyperbox {
                    lengths: parse_numbers(a)?,
                }),
                None => Err(Error::UnsupportedShape("hyperbox needs lengths".into())),
            },
            "tile-square" => Ok(ShapeSpec::TileSquare { side: one(arg)? }),
            "tile-hex" => Ok(ShapeSpec::TileHex {
                circumradius: one(arg)?,
            }),
            "polygon" => polygon
                .map(|polygon| ShapeSpec::Polygon { polygon })
                .ok_or_else(|| Error::UnsupportedShape("polygon needs a polygon file".into())),
            other => Err(Error::UnsupportedShape(other.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ShapeSpec::Square => "square".into(),
            ShapeSpec::Rect { width, height } => format!("rect:{width},{height}"),
            ShapeSpec::Cube => "cube".into(),
            ShapeSpec::Hyperbox { lengths } => format!(
                "hyperbox:{}",
                lengths
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            ShapeSpec::Disk => "disk".into(),
            ShapeSpec::TileSquare { side } => format!("tile-square:{side}"),
            ShapeSpec::TileHex { circumradius } => format!("tile-hex:{circumradius}"),
            ShapeSpec::Polygon { polygon } => format!("polygon:{}", polygon.len()),
        }
    }

    /// Box side lengths when this shape is a box cover in `dim` dimensions.
    pub fn box_lengths(&self, dim: usize) -> Option<Vec<f64>> {
        match self {
            ShapeSpec::Square => Some(vec![1.0, 1.0]),
            ShapeSpec::Rect { width, height } => Some(vec![*width, *height]),
            ShapeSpec::Cube => Some(vec![1.0; dim]),
            ShapeSpec::Hyperbox { lengths } => Some(lengths.clone()),
            ShapeSpec::TileSquare { side } => Some(vec![*side, *side]),
            _ => None,
        }
    }
}

/// Shape of the emitted objects.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ShapeDoc {
    Square,
    Rect {
        a: f64,
        b: f64,
    },
    Hyperbox {
        lengths: Vec<f64>,
    },
    Disk {
        radius: f64,
    },
    /// Placements are lower corners of squares with side `emitted_side`.
    TileSquare {
        side: f64,
        emitted_side: f64,
    },
    /// Placements are centers of hexagons with `emitted_circumradius`.
    TileHex {
        circumradius: f64,
        emitted_circumradius: f64,
    },
    /// Placements are translations of `vertices`.
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
}

impl ShapeDoc {
    fn arity(&self) -> usize {
        match self {
            ShapeDoc::Hyperbox { lengths } => lengths.len(),
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
}

/// A cover as stored on disk:
/// `{"shape": {"kind": ...}, "placements": [[...]], "provenance": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverDocument {
    pub shape: ShapeDoc,
    pub placements: Vec<Vec<f64>>,
    pub provenance: Provenance,
}

impl CoverDocument {
    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let arity = self.shape.arity();
        for p in &self.placements {
            if p.len() != arity {
                return Err(Error::DimensionMismatch {
                    expected: arity,
                    got: p.len(),
                });
            }
        }
        Ok(())
    }

    /// The placed objects, ready for verification.
    pub fn to_cover(&self) -> Result<Cover> {
        self.validate()?;
        let xy = |p: &Vec<f64>| [p[0], p[1]];
        Ok(match &self.shape {
            ShapeDoc::Square => boxes(vec![1.0, 1.0], &self.placements),
            ShapeDoc::Rect { a, b } => boxes(vec![*a, *b], &self.placements),
            ShapeDoc::Hyperbox { lengths } => boxes(lengths.clone(), &self.placements),
            ShapeDoc::TileSquare { emitted_side, .. } => {
                boxes(vec![*emitted_side, *emitted_side], &self.placements)
            }
            ShapeDoc::Disk { radius } => Cover::Disks {
                disks: self
                    .placements
                    .iter()
                    .map(|p| Disk::new(xy(p), *radius))
                    .collect::<Result<_>>()?,
            },
            ShapeDoc::TileHex {
                emitted_circumradius,
                ..
            } => Cover::Polygons {
                polygons: self
                    .placements
                    .iter()
                    .map(|p| ConvexPolygon::regular(6, *emitted_circumradius, xy(p)))
                    .collect::<Result<_>>()?,
            },
            ShapeDoc::Polygon { vertices } => {
                let poly = ConvexPolygon::new(vertices.clone())?;
                Cover::Polygons {
                    polygons: self
                        .placements
                        .iter()
                        .map(|p| poly.translate(xy(p)))
                        .collect(),
                }
            }
        })
    }
}

fn boxes(lengths: Vec<f64>, placements: &[Vec<f64>]) -> Cover {
    Cover::Boxes {
        lengths,
        lowers: placements.iter().cloned().map(Point).collect(),
    }
}

fn provenance(algorithm: &str, instance: &Instance) -> Provenance {
    Provenance {
        algorithm: algorithm.to_string(),
        seed: instance.meta.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

/// Builds the requested cover of `instance`.
pub fn run_cover(instance: &Instance, spec: &ShapeSpec) -> Result<CoverDocument> {
    let points = instance.point_set()?;
    run_cover_on(&points, spec, instance)
}

pub(crate) fn run_cover_on(
    points: &PointSet,
    spec: &ShapeSpec,
    instance: &Instance,
) -> Result<CoverDocument> {
    let rows = |ps: Vec<Point>| ps.into_iter().map(|p| p.0).collect::<Vec<_>>();
    let doc = match spec {
        ShapeSpec::Square
        | ShapeSpec::Rect { .. }
        | ShapeSpec::Cube
        | ShapeSpec::Hyperbox { .. } => {
            let lengths = spec.box_lengths(points.dim()).unwrap();
            let cover = hyperbox_cover(points, &lengths)?;
            let (shape, algorithm) = match spec {
                ShapeSpec::Square => (ShapeDoc::Square, "square-cover"),
                ShapeSpec::Rect { width, height } => (
                    ShapeDoc::Rect {
                        a: *width,
                        b: *height,
                    },
                    "rect-cover",
                ),
                _ => (ShapeDoc::Hyperbox { lengths }, "hyperbox-cover"),
            };
            if matches!(spec, ShapeSpec::Square | ShapeSpec::Rect { .. }) {
                points.require_dim(2)?;
            }
            CoverDocument {
                shape,
                placements: rows(cover.placements),
                provenance: provenance(algorithm, instance),
            }
        }
        ShapeSpec::Disk => {
            let cover = disk_cover(points)?;
            CoverDocument {
                shape: ShapeDoc::Disk {
                    radius: Disk::UNIT_RADIUS,
                },
                placements: cover.disks.iter().map(|d| d.center.to_vec()).collect(),
                provenance: provenance("disk-cover", instance),
            }
        }
        ShapeSpec::TileSquare { side } => {
            let cover = tiling_cover(points, Tile::Square { side: *side })?;
            CoverDocument {
                shape: ShapeDoc::TileSquare {
                    side: *side,
                    emitted_side: cover.emitted_size(),
                },
                placements: cover.anchors().iter().map(|a| a.to_vec()).collect(),
                provenance: provenance("tiling-cover", instance),
            }
        }
        ShapeSpec::TileHex { circumradius } => {
            let cover = tiling_cover(
                points,
                Tile::Hexagon {
                    circumradius: *circumradius,
                },
            )?;
            CoverDocument {
                shape: ShapeDoc::TileHex {
                    circumradius: *circumradius,
                    emitted_circumradius: cover.emitted_size(),
                },
                placements: cover.anchors().iter().map(|a| a.to_vec()).collect(),
                provenance: provenance("tiling-cover", instance),
            }
        }
        ShapeSpec::Polygon { polygon } => {
            let cover = polygon_cover(points, polygon)?;
            CoverDocument {
                shape: ShapeDoc::Polygon {
                    vertices: polygon.vertices().to_vec(),
                },
                placements: cover.translations.iter().map(|t| t.to_vec()).collect(),
                provenance: provenance("polygon-cover", instance),
            }
        }
    };
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::exact_ply;

    fn inst(points: &[[f64; 2]]) -> Instance {
        Instance::new(2, points.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn dispatch_examples() {
        let doc = run_cover(&Instance::new(2, vec![]), &ShapeSpec::Square).unwrap();
        assert!(doc.is_empty());

        let doc = run_cover(&inst(&[[0.0, 0.0]]), &ShapeSpec::Disk).unwrap();
        assert_eq!(doc.len(), 1);
        assert!((doc.placements[0][0] - 0.353_553_39).abs() < 1e-8);
        assert!((doc.placements[0][1] - 0.353_553_39).abs() < 1e-8);

        let pts = inst(&[[0.0, 0.0], [0.6, 0.2], [1.9, 0.4], [0.3, 2.5]]);
        let rect = ConvexPolygon::rectangle(0.0, 0.0, 2.0, 1.0).unwrap();
        let a = run_cover(&pts, &ShapeSpec::Polygon { polygon: rect }).unwrap();
        let b = run_cover(
            &pts,
            &ShapeSpec::Rect {
                width: 2.0,
                height: 1.0,
            },
        )
        .unwrap();
        assert_eq!(a.len(), b.len());
        for (p, q) in a.placements.iter().zip(&b.placements) {
            assert!((p[0] - q[0]).abs() < 1e-9 && (p[1] - q[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn parse_shapes() {
        assert_eq!(ShapeSpec::parse("square", None).unwrap(), ShapeSpec::Square);
        assert_eq!(
            ShapeSpec::parse("rect:0.5,2", None).unwrap(),
            ShapeSpec::Rect {
                width: 0.5,
                height: 2.0
            }
        );
        assert_eq!(
            ShapeSpec::parse("tile-hex:1", None).unwrap(),
            ShapeSpec::TileHex { circumradius: 1.0 }
        );
        assert!(ShapeSpec::parse("rect:1", None).is_err());
        assert!(ShapeSpec::parse("polygon", None).is_err());
        assert!(ShapeSpec::parse("blob", None).is_err());
    }

    #[test]
    fn documents_rebuild_their_covers() {
        let pts = inst(&[[0.1, 0.1], [0.9, 0.4], [2.3, 0.2], [1.1, 1.9]]);
        for spec in [
            ShapeSpec::Square,
            ShapeSpec::Disk,
            ShapeSpec::TileSquare { side: 1.0 },
            ShapeSpec::TileHex { circumradius: 0.6 },
        ] {
            let doc = run_cover(&pts, &spec).unwrap();
            let cover = doc.to_cover().unwrap();
            let ps = pts.point_set().unwrap();
            assert!(crate::verify::check_coverage(&ps, &cover)
                .unwrap()
                .is_empty());
            assert!(exact_ply(&cover).depth >= 1);
        }
        let bad = CoverDocument {
            shape: ShapeDoc::Square,
            placements: vec![vec![0.0]],
            provenance: Provenance {
                algorithm: "x".into(),
                seed: None,
                version: "0".into(),
            },
        };
        assert!(bad.to_cover().is_err());
    }
}
