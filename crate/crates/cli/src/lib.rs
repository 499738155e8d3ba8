//! Library surface of the CLI: command implementations, CSV/manifest
//! handling, complex-amplitude parsing and SVG rendering. The `excidec`
//! binary is a thin argument-parsing layer over this.

pub mod commands;
pub mod complexarg;
pub mod csvio;
pub mod svg;
