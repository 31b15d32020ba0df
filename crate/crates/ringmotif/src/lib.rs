//! File formats, SVG rendering, synthetic data and the command-line
//! pipeline around [`ringmotif_core`].

pub mod config;
pub mod error;
pub mod export;
pub mod io;
pub mod pipeline;
pub mod svg;
pub mod synth;

pub use error::{Error, Result};

