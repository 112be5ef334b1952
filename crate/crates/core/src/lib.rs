//! Constructive order theory around pseudotrees.
//!
//! - [`pseudotree`]: finite pseudotrees, PM checks, down-set completion and a
//!   seeded generator.
//! - [`tq`]: the universal countable pseudotree of finite-step functions on
//!   initial segments of the rationals, with canonical density and splitting
//!   witnesses and an enumeration.
//! - [`embed`]: one-point extension of finite embeddings, countable
//!   embeddings and back-and-forth isomorphism prefixes.
//! - [`seqtree`]: sequential trees, exact ranks and canonical trees of a
//!   given ordinal rank.
//! - [`ordinal`]: Cantor normal form over pluggable exponent orders, with the
//!   split into non-standard and standard parts.

pub mod embed;
pub mod ordinal;
pub mod pseudotree;
pub mod rational;
pub mod rng;
pub mod seqtree;
pub mod structure;
pub mod tq;

pub use embed::{
    embed_countable, extend_embedding, isomorphism_prefix, validate_embedding, BackAndForth,
    CountableEmbedding, EmbedError, EmbeddingViolation, PartialEmbedding,
};
pub use ordinal::{
    dense_between, ord_add, ord_cmp, ord_sub, split, AnyOrd, CutExp, CutOrd, ExponentOrder,
    OrdError, OrdTerm, StdExp, StdOrd,
};
pub use pseudotree::{
    check_dpm_sampled, check_pm, check_pseudotree, complete_to_pm, random_pseudotree, CheckReport,
    Completion, FinitePm, FinitePseudotree, SampleSpec, Violation, ViolationKind,
};
pub use rational::Rational;
pub use seqtree::{canonical_tree, rank, truncate, RankRecipe, SequentialTree, Truncation};
pub use structure::{Dpm, Enumerated, Pm};
pub use tq::{
    tq_between, tq_enumerate, tq_index, tq_leq, tq_meet, tq_split, TqElement, TqEnumeration,
    TqStructure,
};
