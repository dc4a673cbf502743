use std::fmt;

use serde::Serialize;

use super::ElemSet;

/// External filter: decides which downsets count as "true".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "sets")]
pub enum Phi {
    /// Every inhabited downset.
    Inhabited,
    /// Downsets meeting the given (internal filter) set.
    Intersects(ElemSet),
    /// Downsets containing one of the generators.
    Principal(Vec<ElemSet>),
}

impl Phi {
    pub fn contains(&self, u: ElemSet) -> bool {
        match self {
            Phi::Inhabited => !u.is_empty(),
            Phi::Intersects(c) => u.intersects(*c),
            Phi::Principal(gens) => gens.iter().any(|g| g.is_subset(u)),
        }
    }

    /// `∅ ∈ φ`: every downset is accepted and the model collapses.
    pub fn is_degenerate(&self) -> bool {
        self.contains(ElemSet::EMPTY)
    }

    pub fn describe(&self, names: &[String]) -> String {
        match self {
            Phi::Inhabited => "inhabited".into(),
            Phi::Intersects(c) => format!("intersects {}", c.display(names)),
            Phi::Principal(gens) => {
                let parts: Vec<_> = gens.iter().map(|g| g.display(names).to_string()).collect();
                format!("principal {}", parts.join(" "))
            }
        }
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phi::Inhabited => write!(f, "inhabited"),
            Phi::Intersects(c) => write!(f, "intersects {c:?}"),
            Phi::Principal(g) => write!(f, "principal {g:?}"),
        }
    }
}
