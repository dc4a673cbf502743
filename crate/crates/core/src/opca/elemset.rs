use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of a carrier of at most 64 elements, as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> ElemSet {
        debug_assert!(n <= 64);
        if n == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(a: usize) -> ElemSet {
        ElemSet(1 << a)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(it: I) -> ElemSet {
        it.into_iter().fold(ElemSet::EMPTY, |s, a| s.with(a))
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 >> a & 1 == 1
    }

    pub fn with(self, a: usize) -> ElemSet {
        ElemSet(self.0 | 1 << a)
    }

    pub fn insert(&mut self, a: usize) {
        self.0 |= 1 << a;
    }

    pub fn union(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 | o.0)
    }

    pub fn intersect(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & o.0)
    }

    pub fn minus(self, o: ElemSet) -> ElemSet {
        ElemSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: ElemSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersects(self, o: ElemSet) -> bool {
        self.0 & o.0 != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// `{a b}` using the given element names.
    pub fn display<'a>(self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named(self, names)
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = ElemSet> {
        let all = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == all { None } else { Some((c.wrapping_sub(all)) & all) };
            Some(ElemSet(c))
        })
    }
}

struct Named<'a>(ElemSet, &'a [String]);

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.1.get(a) {
                Some(n) => write!(f, "{n}")?,
                None => write!(f, "#{a}")?,
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s = ElemSet::from_elems([0, 2, 3]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert_eq!(subs[0], ElemSet::EMPTY);
        assert_eq!(*subs.last().unwrap(), s);
    }

    #[test]
    fn iteration_is_ascending() {
        let s = ElemSet::from_elems([5, 1, 3]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 5]);
        assert_eq!(s.first(), Some(1));
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn full_sets() {
        assert_eq!(ElemSet::full(0), ElemSet::EMPTY);
        assert_eq!(ElemSet::full(3).0, 0b111);
        assert_eq!(ElemSet::full(64).len(), 64);
    }
}
