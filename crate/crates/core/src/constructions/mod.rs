//! Finite pieces of the infinite constructions: gluing, blow-ups, fixing
//! operations, core extensions, fix scheduling, and exact adjacency oracles
//! for the explicit infinite graphs.

pub mod exact;
pub mod fix;
pub mod glue;
pub mod oracle;
pub mod schedule;

pub use exact::{QuadValue, Rational};
pub use fix::{core_extension_step, fix_pair, ExtensionRule, FixStrategy, PrefixState};
pub use glue::{blowup_graph, glue, Blowup};
pub use oracle::{oracle_adjacent, oracle_window, up_right_embedding, OracleKind, OracleVertex};
pub use schedule::{priority_order, schedule_with_plan, FixPlan};
