use std::fmt;
use std::sync::Arc;

use super::spec::{CountClass, SpaceSpec};
use super::word::Word;
use crate::error::{domain, Result};

enum Node {
    /// `[s] ∩ E` is empty.
    Vacuous,
    /// Nonempty and disjoint from the set.
    Empty,
    /// Nonempty and contained in the set.
    Full,
    Partial(Vec<Word>),
}

fn canon_rec(spec: &SpaceSpec, s: Word, raw: &[Word]) -> Node {
    if spec.count(s).is_zero() {
        return Node::Vacuous;
    }
    if raw.iter().any(|r| r.is_prefix_of(s)) {
        return Node::Full;
    }
    let below: Vec<Word> = raw.iter().copied().filter(|r| s.is_prefix_of(*r)).collect();
    if below.is_empty() {
        return Node::Empty;
    }
    let (s0, s1) = (s.child(0), s.child(1));
    let a = canon_rec(spec, s0, &below);
    let b = canon_rec(spec, s1, &below);
    match (&a, &b) {
        (Node::Full | Node::Vacuous, Node::Full | Node::Vacuous) => Node::Full,
        (Node::Empty | Node::Vacuous, Node::Empty | Node::Vacuous) => Node::Empty,
        _ => {
            let mut out = Vec::new();
            for (node, word) in [(a, s0), (b, s1)] {
                match node {
                    Node::Full => out.push(word),
                    Node::Partial(l) => out.extend(l),
                    Node::Empty | Node::Vacuous => {}
                }
            }
            Node::Partial(out)
        }
    }
}

/// Maximal strings `s` with `∅ ≠ [s] ∩ E ⊆ ⋃ [raw]`, sorted.
pub(crate) fn canonical_antichain(spec: &SpaceSpec, raw: &[Word]) -> Vec<Word> {
    match canon_rec(spec, Word::ROOT, raw) {
        Node::Full => vec![Word::ROOT],
        Node::Partial(l) => l,
        Node::Empty | Node::Vacuous => Vec::new(),
    }
}

fn complement_rec(spec: &SpaceSpec, s: Word, set: &[Word], out: &mut Vec<Word>) {
    if spec.count(s).is_zero() || set.iter().any(|u| u.is_prefix_of(s)) {
        return;
    }
    if !set.iter().any(|u| s.is_prefix_of(*u)) {
        out.push(s);
        return;
    }
    complement_rec(spec, s.child(0), set, out);
    complement_rec(spec, s.child(1), set, out);
}

/// A clopen subset of a space, held in canonical antichain form relative
/// to the space. Two values are equal iff they denote the same subset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClopenSet {
    spec: Arc<SpaceSpec>,
    words: Vec<Word>,
}

impl ClopenSet {
    /// Canonical form of the union of the cylinders `raw`.
    pub fn canonicalize(spec: &Arc<SpaceSpec>, raw: &[Word]) -> ClopenSet {
        ClopenSet {
            spec: spec.clone(),
            words: canonical_antichain(spec, raw),
        }
    }

    pub fn whole(spec: &Arc<SpaceSpec>) -> ClopenSet {
        Self::canonicalize(spec, &[Word::ROOT])
    }

    pub fn empty(spec: &Arc<SpaceSpec>) -> ClopenSet {
        ClopenSet {
            spec: spec.clone(),
            words: Vec::new(),
        }
    }

    pub fn spec(&self) -> &Arc<SpaceSpec> {
        &self.spec
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Number of points; the sum of the member cylinder counts.
    pub fn count(&self) -> CountClass {
        self.words.iter().map(|w| self.spec.count(*w)).sum()
    }

    pub fn is_whole(&self) -> bool {
        self.words == [Word::ROOT]
    }

    fn same_space(&self, other: &ClopenSet) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(domain(format!(
                "clopen sets over different spaces: {} vs {}",
                self.spec, other.spec
            )))
        }
    }

    pub fn complement(&self) -> ClopenSet {
        let mut raw = Vec::new();
        complement_rec(&self.spec, Word::ROOT, &self.words, &mut raw);
        Self::canonicalize(&self.spec, &raw)
    }

    pub fn intersect(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.same_space(other)?;
        let mut raw = Vec::new();
        for &a in &self.words {
            for &b in &other.words {
                if a.is_prefix_of(b) {
                    raw.push(b);
                } else if b.is_prefix_of(a) {
                    raw.push(a);
                }
            }
        }
        Ok(Self::canonicalize(&self.spec, &raw))
    }

    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.same_space(other)?;
        let raw: Vec<Word> = self.words.iter().chain(&other.words).copied().collect();
        Ok(Self::canonicalize(&self.spec, &raw))
    }

    pub fn difference(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &ClopenSet) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_disjoint(&self, other: &ClopenSet) -> Result<bool> {
        Ok(self.intersect(other)?.is_empty())
    }

    /// Set equality, rejecting operands over different spaces.
    pub fn equal(&self, other: &ClopenSet) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.words == other.words)
    }

    /// Whether `[u] ∩ E` lies in the set, for `u` meeting the space. A
    /// canonical antichain holds the shortest such prefix of `u`, which is
    /// the greatest member not after `u`.
    pub fn contains_cylinder(&self, u: Word) -> bool {
        let i = self.words.partition_point(|w| *w <= u);
        i > 0 && self.words[i - 1].is_prefix_of(u)
    }

    /// Subset test by word lookup; both sets must be over the same space.
    pub fn covers(&self, other: &ClopenSet) -> bool {
        other.words.iter().all(|&u| self.contains_cylinder(u))
    }

    /// Words isolating each point, in order, or `None` for an infinite set.
    pub fn points(&self) -> Option<Vec<Word>> {
        if self.count().is_infinite() {
            return None;
        }
        fn walk(spec: &SpaceSpec, s: Word, out: &mut Vec<Word>) {
            match spec.count(s) {
                CountClass::Exactly(0) => {}
                CountClass::Exactly(1) => out.push(s),
                _ => {
                    walk(spec, s.child(0), out);
                    walk(spec, s.child(1), out);
                }
            }
        }
        let mut out = Vec::new();
        for &w in &self.words {
            walk(&self.spec, w, &mut out);
        }
        Some(out)
    }

    /// Longest string in the antichain (0 for the empty set and the root).
    pub fn depth(&self) -> usize {
        self.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }
}

impl serde::Serialize for ClopenSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.words.serialize(s)
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.words).finish()
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "\"{x}\"")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::word::w;

    fn ws(v: &[&str]) -> Vec<Word> {
        v.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn canonical_examples() {
        let cantor = Arc::new(SpaceSpec::Cantor);
        assert_eq!(
            ClopenSet::canonicalize(&cantor, &ws(&["00", "01"])).words(),
            ws(&["0"])
        );
        let f4 = Arc::new(SpaceSpec::Finite(4));
        let u = ClopenSet::canonicalize(&f4, &ws(&["0", "10", "110", "111"]));
        assert_eq!(u.words(), ws(&[""]));
        let conv = Arc::new(SpaceSpec::Convergent);
        let p0 = ClopenSet::canonicalize(&conv, &ws(&["0"]));
        assert_eq!(p0.words(), ws(&["0"]));
        assert_eq!(p0.count(), CountClass::Exactly(1));
    }

    #[test]
    fn prunes_cylinders_missing_the_space() {
        let f3 = Arc::new(SpaceSpec::Finite(3));
        let u = ClopenSet::canonicalize(&f3, &ws(&["01", "1111", "10"]));
        assert_eq!(u.words(), ws(&["10"]));
        // [1] ∩ E = {1, 2}; listing 10 and 11 merges to 1.
        let v = ClopenSet::canonicalize(&f3, &ws(&["10", "11"]));
        assert_eq!(v.words(), ws(&["1"]));
        // [110] and [11] hold the same single point.
        let a = ClopenSet::canonicalize(&f3, &ws(&["110"]));
        let b = ClopenSet::canonicalize(&f3, &ws(&["11"]));
        assert_eq!(a, b);
    }

    #[test]
    fn complement_examples() {
        let cantor = Arc::new(SpaceSpec::Cantor);
        let u = ClopenSet::canonicalize(&cantor, &ws(&["0"]));
        assert_eq!(u.complement().words(), ws(&["1"]));
        let f5 = Arc::new(SpaceSpec::Finite(5));
        let u = ClopenSet::canonicalize(&f5, &ws(&["0"]));
        let c = u.complement();
        assert_eq!(c.words(), ws(&["1"]));
        assert_eq!(c.count(), CountClass::Exactly(4));
        let all = ClopenSet::whole(&f5);
        assert!(all.complement().is_empty());
        assert_eq!(all.complement().count(), CountClass::ZERO);
    }

    #[test]
    fn operations_reject_mixed_spaces() {
        let a = ClopenSet::whole(&Arc::new(SpaceSpec::Finite(4)));
        let b = ClopenSet::whole(&Arc::new(SpaceSpec::Finite(5)));
        assert!(a.intersect(&b).is_err());
        assert!(a.equal(&b).is_err());
    }
}
