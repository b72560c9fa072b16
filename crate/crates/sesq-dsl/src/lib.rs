//! Textual format for the structures in `sesq-core`.
//!
//! A `.sesq` file is a sequence of blocks: explicit tables (`category`,
//! `cells`, `group`, `xmod`, `complex`, `intcat`, `pseudocat`) and `derive`
//! directives that invoke a named builder.  [`parse`] turns text into a
//! syntax tree, [`elaborate`] resolves it against `sesq-core` into a
//! [`Model`], and [`serialize`] writes a document back out in canonical
//! form (fixed block order, sorted declarations, LF line endings), so
//! serializing a parsed canonical file reproduces it byte for byte.
//!
//! Every failure is a [`Diagnostic`] with a line/column span; no input,
//! however malformed, makes the parser panic.

pub mod ast;
pub mod elaborate;
pub mod emit;
pub mod parse;
pub mod serialize;

pub use ast::{Block, Diagnostic, SpecDocument, Span};
pub use elaborate::{elaborate, Model};
pub use parse::parse;
pub use serialize::serialize;
