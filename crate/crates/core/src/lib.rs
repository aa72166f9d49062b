// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exact pattern matching in labeled graphs, together with the machinery to
//! build, transform and check SAT-derived hard instances for it.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`] holds the immutable [`LabeledGraph`] plus its text format and
//!   structural analyses (bridges, degrees, acyclicity, label expansion).
//! * [`sat`] holds CNF formulas, DIMACS parsing and a truth-table oracle.
//! * [`matcher`] is the layered product dynamic program and an independent
//!   walk-enumeration oracle.
//! * [`reduction`] turns a formula into a pattern/graph pair whose match answer
//!   equals satisfiability.
//! * [`transform`] rewrites such a pair to maximum degree three, to a binary
//!   alphabet and to a DAG.
//! * [`verification`] runs seeded campaigns cross-checking all of the above.
//! * [`bench`] times the matcher on growing instances.

pub mod bench;
pub mod graph;
pub mod matcher;
pub mod reduction;
pub mod roles;
pub mod sat;
pub mod transform;
pub mod verification;

pub use graph::{GraphError, LabeledGraph, NodeId};
pub use matcher::{match_bruteforce, match_exact, MatchMode, MatchOutcome, Matcher, Occurrence, Pattern};

pub use reduction::{build_full_graph, ReductionArtifacts, ReductionStats, Variant};
pub use roles::{Gadget, NodeRole, RoleKind};
pub use sat::{
    brute_force_sat, make_even, mirror_satisfiable, palindromic_clause_order, parse_dimacs, CnfFormula, Literal,
};
