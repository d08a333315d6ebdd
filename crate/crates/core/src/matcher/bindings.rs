use std::collections::BTreeMap;
use std::fmt;

use crate::term::{PatVar, Term};

/// Variable bindings produced by `name` patterns. At most one value per
/// variable; the map order makes equal binding sets compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bindings(BTreeMap<PatVar, Term>);

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn singleton(x: PatVar, t: Term) -> Self {
        Bindings(BTreeMap::from([(x, t)]))
    }

    pub fn get(&self, x: &PatVar) -> Option<&Term> {
        self.0.get(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PatVar, &Term)> {
        self.0.iter()
    }

    /// Disjoint union. Defined when every shared variable is bound to equal
    /// terms on both sides.
    pub fn union(&self, other: &Bindings) -> Option<Bindings> {
        let mut out = self.0.clone();
        for (x, t) in &other.0 {
            match out.get(x) {
                Some(existing) if existing != t => return None,
                Some(_) => {}
                None => {
                    out.insert(x.clone(), t.clone());
                }
            }
        }
        Some(Bindings(out))
    }
}

impl FromIterator<(PatVar, Term)> for Bindings {
    fn from_iter<I: IntoIterator<Item = (PatVar, Term)>>(iter: I) -> Self {
        Bindings(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Bindings {
    type Item = (&'a PatVar, &'a Term);
    type IntoIter = std::collections::btree_map::Iter<'a, PatVar, Term>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (x, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({x} {t})")?;
        }
        f.write_str(")")
    }
}

/// `b1 ⊔ b2`, or `None` on conflict.
pub fn bindings_union(b1: &Bindings, b2: &Bindings) -> Option<Bindings> {
    b1.union(b2)
}
