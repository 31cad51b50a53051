//! Finite incidence-geometry engine.
//!
//! The crate models finite partial linear spaces equipped with a
//! perpendicularity relation on lines, builds the standard concrete families
//! (affine planes over prime fields, nets from mutually orthogonal latin
//! squares or class deletion, involution-based perpendicularity, thin-point
//! extensions), verifies the Sherk and net axiom systems exhaustively with
//! concrete witnesses, and checks the pole/polar counting identities on
//! every instance rather than trusting them.
//!
//! Everything is exact: checks are exhaustive scans over desk-scale
//! structures, counts use integer arithmetic, and failure reports carry the
//! lexicographically first counterexample so runs are reproducible
//! byte-for-byte.

pub mod analysis;
pub mod axioms;
pub mod construct;
pub mod geometry;

pub use analysis::{
    check_counting_formulas, check_parallel_iff_common_perp, extract_tau, net_parameters,
    parallel_classes, pole_polar_census, unique_perpendicular, verify_theorem_roundtrip,
    AnalysisError, CountingReport, Hypothesis, NetParams, NetProperty, ParallelClasses,
    ParallelPerpReport, PolePolarCensus, RoundtripReport,
};
pub use axioms::{
    check_axiom, check_thickness, classify, perp_applicable, Axiom, AxiomError, AxiomVerdict,
    ClassificationReport, GeometryClass, Witness, PARTIAL_SHERK_AXIOMS,
};
pub use construct::{
    attach_perpendicularity, build_affine_plane, build_net_from_mols, construct_gk,
    delete_parallel_classes, ConstructError, DegenerateReason, GkConfig, LatinSquareSet, Tau,
    TauError,
};
pub use geometry::{Geometry, GeometryError, LineId, LineStats, PointId, PointStats};
