//! ω-automata with weak Muller acceptance and delay games over them.
//!
//! The crate covers the automaton data model ([`automaton`], [`acceptance`],
//! [`formula`]), exact membership of ultimately periodic words ([`lasso`]),
//! synchronous products ([`product`]), the weak Muller to parity
//! translation ([`translate`]), bad j-pair combinatorics ([`jpair`]),
//! generators for the lower-bound gadget families ([`gadgets`]), a solver
//! for delay games with constant lookahead ([`engine`]) and scripted
//! strategies for those games ([`strategies`]).

pub mod acceptance;
pub mod automaton;
pub mod engine;
pub mod formula;
pub mod gadgets;
pub mod hoa;
pub mod jpair;
pub mod json;
pub mod lasso;
pub mod product;
pub mod random;
pub mod strategies;
pub mod translate;

pub use acceptance::{Acceptance, WeakMullerCondition};
pub use automaton::{Automaton, AutomatonBuilder, AutomatonError, Letter, LetterId, StateId, StateSet};
pub use engine::{minimal_lookahead, simulate_play, solve_buchi, solve_delay, Player, Verdict};
pub use formula::{Formula, FormulaError};
pub use lasso::{lasso_accepts, lasso_accepts_graph, Lasso, LassoError};
pub use json::{parse_automaton, serialize_automaton};
pub use translate::{weak_muller_to_parity, Translation};
