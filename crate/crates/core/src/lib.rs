//! Minimum-ply geometric set cover.
//!
//! Covers a finite point set by translates of one fixed object while keeping
//! the ply (the largest number of objects over any point of space) small:
//!
//! * [`cover1d::separate`]: minimum 1-ply interval cover;
//! * [`boxcover`]: 1-ply covers by squares, rectangles and `d`-dimensional
//!   boxes, within `2^(d-1)` of the minimum size;
//! * [`diskcover`]: 2-ply cover by disks of diameter one;
//! * [`tilecover`]: 1-ply covers from square and hexagonal tilings;
//! * [`polycover`]: ply-4 cover by translates of any convex polygon;
//! * [`verify`]: exact ply, membership and coverage checks;
//! * [`oracle`]: exact optima and lower bounds for small instances;
//! * [`harness`]: instance generators, JSON documents, SVG and benchmarks.
//!
//! All objects are closed sets, so touching objects overlap. Every 1-ply
//! construction leaves strictly positive gaps between its objects.
//!
//! The `parallel` feature (on by default) runs independent walls, candidate
//! evaluations and benchmark instances on rayon's thread pool; without it
//! everything runs on the calling thread with identical results.

pub mod boxcover;
pub mod cover1d;
pub mod diskcover;
pub mod error;
pub mod geom;
mod grid;
pub mod harness;
pub mod oracle;
pub mod par;
pub mod polycover;
pub mod tilecover;
pub mod verify;

pub use boxcover::{hyperbox_cover, rect_cover, square_cover, BoxCover};
pub use cover1d::{separate, IntervalCover};
pub use diskcover::{disk_cover, DiskCover};
pub use error::{Error, Result};
pub use geom::{ConvexPolygon, Disk, HyperBox, Interval, Point, PointSet, Xy};
pub use polycover::{approximating_pair, polygon_cover, ApproximatingPair, PolygonCover};
pub use tilecover::{tiling_cover, Tile, TileCover, TileMode};
pub use verify::{check_coverage, exact_ply, membership, ply_report, Cover, PlyReport};
