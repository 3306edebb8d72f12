//! LCU oracles: state preparations A and B, the select operator in three
//! realizations, and the composed self-inverse block encoding U.

pub mod encoding;
pub mod prep;
pub mod select;

pub use encoding::{g_state, BlockEncoding, EncodingUnitary, PrepMode};
pub use prep::{
    amplitude_readback, build_a_random, build_b, default_depth, ExactPrep, PrepOracle,
};
pub use select::{
    build_select_gates, per_majorana_t_count, slot_in_domain, slot_term, SemanticSelect,
    TermSelect,
};
