//! Instance generation, on-disk documents, SVG rendering and benchmarks.

pub mod bench;
pub mod doc;
pub mod gen;
pub mod svg;

pub use bench::{run_bench, write_csv, BenchConfig, BenchRecord};
pub use doc::{run_cover, CoverDocument, Provenance, ShapeDoc, ShapeSpec};
pub use gen::{gen_instance, GenKind, GenParams, Instance, Meta};
pub use svg::render_svg;
