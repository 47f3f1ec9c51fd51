//! Constructive linear orders on zero-dimensional spaces.
//!
//! A space is presented with a stratified basis: a stage-indexed family of
//! discrete clopen covers whose union is a basis. Points are compared by the
//! first stage whose cover separates them, and the block order at that stage
//! decides the direction. The crate builds such bases for subspaces of
//! ordinals and for finite powers, checks the order axioms and convexity
//! against samples, and carries a brute-force reference construction for
//! small explicit systems.

pub mod ordinal;
pub mod order;
pub mod product;
pub mod space;
pub mod strata;
pub mod synth;

pub use ordinal::{CardinalValue, CnfTerm, FundSeqError, Ordinal, OrdinalKind, OrdinalParseError};
pub use order::{
    brute_force_relations, AxiomReport, AxiomViolation, BasisPropertyReport, BlockOrderPolicy,
    Comparison, ConvexityReport, ConvexityScope, ConvexityViolation, OrderDiagnostics, OrderError,
    OrderWitness, RelationSet,
};
pub use product::{product_basis, product_p_number, power_space, ProductSpace, StagePairing};
pub use space::{
    OrdinalInterval, OrdinalSubspace, PiecewiseSet, Point, SetParseError, Space, SpaceError,
};
pub use strata::{
    parse_basis, BlockId, BlockSet, CoverMode, CoverSource, DiscreteCover, PartitionTrace,
    RefinementCell, StrataError, StratifiedBasis, ValidationReport, ValidationViolation,
};
pub use synth::{
    check_conditions, check_conditions_parts, decompose, decomposition_dump, synthesize_basis,
    ConditionCheck, ConditionReport, DecompositionKind, DecompositionNode, SynthError,
};
