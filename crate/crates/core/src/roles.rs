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

//! What each node of a reduction graph stands for.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleKind {
    Begin,
    End,
    Clause,
    Dummy,
    TreeDummy,
    PairDummy,
    BitChain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gadget {
    GF,
    GU1,
    GU2,
    /// The two outer nodes `u` and `z`.
    Extremal,
}

/// Role of one node.
///
/// Coordinates by kind:
/// * `Clause`, `Dummy`: `(row, column)`, both 1-based; in the universal gadget
///   the row is the copy index.
/// * `Begin`, `End` in the universal gadget: `(copy, 0)`.
/// * `TreeDummy`: `(level, index)` in the branching gadget's trees, or
///   `(copy, level)` in the universal gadget's padding chains.
/// * `PairDummy`: `(row, column)` of the column pair it sits after.
/// * `BitChain`: `(source node, bit offset)` in the pre-encoding graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeRole {
    pub kind: RoleKind,
    pub coords: Option<(usize, usize)>,
    pub gadget: Gadget,
}

impl NodeRole {
    pub fn new(kind: RoleKind, coords: Option<(usize, usize)>, gadget: Gadget) -> Self {
        NodeRole { kind, coords, gadget }
    }

    pub fn at(kind: RoleKind, row: usize, col: usize, gadget: Gadget) -> Self {
        NodeRole::new(kind, Some((row, col)), gadget)
    }

    pub fn plain(kind: RoleKind, gadget: Gadget) -> Self {
        NodeRole::new(kind, None, gadget)
    }
}

impl RoleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RoleKind::Begin => "begin",
            RoleKind::End => "end",
            RoleKind::Clause => "clause",
            RoleKind::Dummy => "dummy",
            RoleKind::TreeDummy => "tree_dummy",
            RoleKind::PairDummy => "pair_dummy",
            RoleKind::BitChain => "bit_chain",
        }
    }
}

impl Gadget {
    pub fn as_str(self) -> &'static str {
        match self {
            Gadget::GF => "GF",
            Gadget::GU1 => "GU1",
            Gadget::GU2 => "GU2",
            Gadget::Extremal => "Extremal",
        }
    }
}

impl fmt::Display for RoleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RoleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use RoleKind::*;
        [Begin, End, Clause, Dummy, TreeDummy, PairDummy, BitChain]
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown role `{s}`"))
    }
}

impl FromStr for Gadget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Gadget::*;
        [GF, GU1, GU2, Extremal].into_iter().find(|g| g.as_str() == s).ok_or_else(|| format!("unknown gadget `{s}`"))
    }
}
