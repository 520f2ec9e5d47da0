//! Exact symbolic workbench for chiral differential operators.
//!
//! The crate is organised bottom-up:
//!
//! * [`polycx`]: polynomial forms, vector fields, coordinate changes, connections.
//! * [`qseries`], [`genus`]: q-series arithmetic and characteristic-class genera.
//! * [`algebroid`]: vertex algebroid structure maps, morphisms, `Δ_{φ,ξ}`.
//! * [`voa`]: the βγ vertex algebra at bounded weight.
//! * [`cech`]: nerves with gluing data, Čech cochains, homotopy-dg checks, staircases.
//! * [`dolbeault`]: Čech–Dolbeault data `(Γ, B, H)`, bar operators, local exactness.
//! * [`scenario`], [`suites`], [`report`]: scenario files, named verification suites and the JSON report.

pub mod algebroid;
pub mod cech;
pub mod dolbeault;
pub mod error;
pub mod genus;
pub mod polycx;
pub mod qseries;
pub mod random;
pub mod report;
pub mod scenario;
pub mod suites;
pub mod voa;

pub use error::{Error, Result};
