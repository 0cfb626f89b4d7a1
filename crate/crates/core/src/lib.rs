//! Factorization of finite concept lattices by imploding intervals.
//!
//! The crate computes concept lattices of formal contexts and three ways of
//! collapsing a chosen interval: the finest complete congruence (through
//! compatible subcontexts), the finest complete tolerance (through block
//! relations), and the interval relation whose classes are exactly the
//! chosen intervals. Context-side counterparts (enrichment, θ-irreducible
//! contexts, Dedekind-MacNeille completion) live in [`enrichment`].

pub mod congruence;
pub mod context;
pub mod cxt;
pub mod enrichment;
pub mod error;
pub mod export;
pub mod fixtures;
pub mod interval;
pub mod lattice;
pub mod oracle;
pub mod poset;
pub mod search;
pub mod spec;
pub mod tolerance;

pub use congruence::{finest_imploding_congruence, CongruenceResult, ReducedInput};
pub use context::{AttributeSet, FormalContext, ObjectSet, Subcontext};
pub use enrichment::{
    dm_completion, enrich, factor_via_enrichment, theta_irreducible_context, ContextChoice,
    EnrichedContext, Verdict,
};
pub use error::{Error, Result};
pub use interval::{classify_interval, Classification, FactorKind, FactorStructure, IntervalRelation};
pub use lattice::{enumerate_concepts, Concept, ConceptLattice};
pub use poset::{Interval, Poset};
pub use search::{isomorphic, Crown};
pub use spec::{EndpointSpec, IntervalSpec};
pub use tolerance::{finest_imploding_block_relation, BlockRelation, ToleranceResult};
