//! Relational tables, element graphs and string diagrams.
pub mod diagram;
pub mod graph;
pub mod sql;

pub use diagram::{diagram_ir, render_diagram, DiagramError, DiagramIR, Format};
pub use graph::{category_of_elements, export_dot, ElementsGraph, ElementsOptions};
pub use sql::{export_sql, import_sql, ExportError, SqlExport, SqlOptions};

#[cfg(test)]
mod tests;
