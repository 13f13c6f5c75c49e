//! Excluded pole pairs on parent/child edges of the rooted graph.

use std::fmt;

use crate::resolution::ResolutionTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairClause {
    /// `a <= 2` and `b >= 2`.
    LowParentHighChild,
    /// `a >= 2` and `b <= -2`.
    PositiveParentNegativeChild,
    /// `a >= 4` and `b <= 0`.
    HighParentNonpositiveChild,
    /// `a = b <= -2`.
    EqualNegative,
}

impl PairClause {
    pub const ALL: [PairClause; 4] = [
        PairClause::LowParentHighChild,
        PairClause::PositiveParentNegativeChild,
        PairClause::HighParentNonpositiveChild,
        PairClause::EqualNegative,
    ];

    pub fn holds(&self, a: i64, b: i64) -> bool {
        match self {
            PairClause::LowParentHighChild => a <= 2 && b >= 2,
            PairClause::PositiveParentNegativeChild => a >= 2 && b <= -2,
            PairClause::HighParentNonpositiveChild => a >= 4 && b <= 0,
            PairClause::EqualNegative => a == b && a <= -2,
        }
    }

    /// First clause (in declaration order) excluding `(a, b)`.
    pub fn excluding(a: i64, b: i64) -> Option<PairClause> {
        Self::ALL.into_iter().find(|c| c.holds(a, b))
    }
}

impl fmt::Display for PairClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClause::LowParentHighChild => "a<=2 and b>=2",
            PairClause::PositiveParentNegativeChild => "a>=2 and b<=-2",
            PairClause::HighParentNonpositiveChild => "a>=4 and b<=0",
            PairClause::EqualNegative => "a=b<=-2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolePairViolation {
    /// `(t_parent, child)`.
    pub edge: (usize, usize),
    pub pair: (i64, i64),
    pub clause: PairClause,
}

/// Every `(t_parent, child)` edge whose pole pair is excluded.
pub fn validate_pole_pairs(tree: &ResolutionTree) -> Vec<PolePairViolation> {
    tree.parent_edges()
        .into_iter()
        .filter_map(|(p, c)| {
            let pair = (tree.nodes[p].pole_order, tree.nodes[c].pole_order);
            PairClause::excluding(pair.0, pair.1).map(|clause| PolePairViolation { edge: (p, c), pair, clause })
        })
        .collect()
}
