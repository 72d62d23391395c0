//! Induced-saturation toolkit for small graphs.
//!
//! Given a finite graph `H`, decide which known construction produces a
//! countable graph that is strongly `H`-induced-saturated, emit a replayable
//! certificate, build finite prefixes of that construction, and check
//! saturation properties on finite graphs and oracle windows.

pub mod error;
pub mod graph;
pub mod graph6;
pub mod search;
pub mod gatekeeper;
pub mod constructions;
pub mod connectivity;
pub mod named;
pub mod random;
pub mod enumerate;
pub mod cores;
pub mod recognizers;
pub mod classifier;
pub mod verifier;

pub use error::{Error, Graph6Error, Graph6ErrorKind, GraphError};
pub use graph::{bits, pair, twins, Graph, MarkedPair, Pair, PairStatus, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_str, to_graph6};
pub use search::{colored_fragment_occurs, contains_induced, find_induced, isomorphic, Embedding};
pub use classifier::{classify, fix_plan, special_table, structure_check_12, sweep, verify_certificate, Case, Certificate, SweepReport, Witness};
pub use constructions::{OracleKind, OracleVertex, PrefixState, Rational};
pub use cores::{core, CoreKind, CoreResult, CoreTrace};
pub use gatekeeper::{has_fixing_operation, BlowupMode, GatekeeperResult, GatekeeperWitness};
pub use verifier::{induced_saturated, is_free, pair_fixed_check, replay_witnesses, PerturbationSet, Saturation};
