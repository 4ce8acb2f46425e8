use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::clopen::canonical_antichain;
use super::word::Word;
use crate::error::{Error, Result};

/// Largest `n` accepted by [`SpaceSpec::finite`]; point `n - 1` needs a
/// string of length `n - 1` to isolate it.
pub const MAX_FINITE_POINTS: usize = 60;

/// Exact cardinality of a cylinder intersected with the space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountClass {
    Exactly(u64),
    Infinite,
}

impl CountClass {
    pub const ZERO: CountClass = CountClass::Exactly(0);

    pub fn is_zero(self) -> bool {
        self == CountClass::ZERO
    }

    pub fn is_infinite(self) -> bool {
        self == CountClass::Infinite
    }

    pub fn at_least(self, k: u64) -> bool {
        match self {
            CountClass::Exactly(n) => n >= k,
            CountClass::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            CountClass::Exactly(n) => Some(n),
            CountClass::Infinite => None,
        }
    }
}

impl Add for CountClass {
    type Output = CountClass;

    fn add(self, rhs: CountClass) -> CountClass {
        match (self, rhs) {
            (CountClass::Exactly(a), CountClass::Exactly(b)) => CountClass::Exactly(a + b),
            _ => CountClass::Infinite,
        }
    }
}

impl std::iter::Sum for CountClass {
    fn sum<I: Iterator<Item = CountClass>>(iter: I) -> CountClass {
        iter.fold(CountClass::ZERO, Add::add)
    }
}

impl fmt::Display for CountClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountClass::Exactly(n) => write!(f, "{n}"),
            CountClass::Infinite => f.write_str("infinite"),
        }
    }
}

/// A second-countable Stone space, described as a closed subset `E` of
/// Cantor space `{0,1}^ω`.
///
/// * `Finite(n)` is the points `1^i 0^ω` for `0 <= i < n`.
/// * `Convergent` is `ω+1`: the points `1^k 0^ω` and the limit `1^ω`.
/// * `Union(l, r)` puts `l` under the prefix `0` and `r` under `1`.
/// * `Subspace(base, window)` is `base ∩ window`, the window stored as a
///   canonical antichain relative to `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceSpec {
    Finite(usize),
    Cantor,
    Convergent,
    Union(Arc<SpaceSpec>, Arc<SpaceSpec>),
    Subspace(Arc<SpaceSpec>, Vec<Word>),
}

impl SpaceSpec {
    pub fn finite(n: usize) -> Result<SpaceSpec> {
        if n == 0 || n > MAX_FINITE_POINTS {
            return Err(Error::Construction(format!(
                "finite space needs 1 <= n <= {MAX_FINITE_POINTS}, got {n}"
            )));
        }
        Ok(SpaceSpec::Finite(n))
    }

    pub fn union(left: SpaceSpec, right: SpaceSpec) -> SpaceSpec {
        SpaceSpec::Union(Arc::new(left), Arc::new(right))
    }

    /// Restricts `base` to the clopen window spanned by `raw`. An empty
    /// window is rejected.
    pub fn subspace(base: SpaceSpec, raw: &[Word]) -> Result<SpaceSpec> {
        let window = canonical_antichain(&base, raw);
        if window.is_empty() {
            return Err(Error::Construction("subspace window is empty".into()));
        }
        Ok(SpaceSpec::Subspace(Arc::new(base), window))
    }

    /// Exact number of points of the space in the cylinder `[s]`.
    pub fn count(&self, s: Word) -> CountClass {
        match self {
            SpaceSpec::Finite(n) => {
                let j = s.leading_ones();
                if j == s.len() {
                    CountClass::Exactly(n.saturating_sub(j) as u64)
                } else if j < *n && s.suffix_from(j + 1).all_zero() {
                    CountClass::Exactly(1)
                } else {
                    CountClass::ZERO
                }
            }
            SpaceSpec::Cantor => CountClass::Infinite,
            SpaceSpec::Convergent => {
                let j = s.leading_ones();
                if j == s.len() {
                    CountClass::Infinite
                } else if s.suffix_from(j + 1).all_zero() {
                    CountClass::Exactly(1)
                } else {
                    CountClass::ZERO
                }
            }
            SpaceSpec::Union(l, r) => {
                if s.is_empty() {
                    l.count(Word::ROOT) + r.count(Word::ROOT)
                } else if s.bit(0) == 0 {
                    l.count(s.suffix_from(1))
                } else {
                    r.count(s.suffix_from(1))
                }
            }
            SpaceSpec::Subspace(base, window) => {
                if window.iter().any(|u| u.is_prefix_of(s)) {
                    base.count(s)
                } else {
                    window
                        .iter()
                        .filter(|u| s.is_prefix_of(**u))
                        .map(|u| base.count(*u))
                        .sum()
                }
            }
        }
    }

    /// Cardinality of the whole space.
    pub fn total(&self) -> CountClass {
        self.count(Word::ROOT)
    }

    pub fn is_finite(&self) -> bool {
        !self.total().is_infinite()
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Finite(n) => write!(f, "Finite({n})"),
            SpaceSpec::Cantor => f.write_str("Cantor"),
            SpaceSpec::Convergent => f.write_str("Convergent"),
            SpaceSpec::Union(l, r) => write!(f, "Union({l}, {r})"),
            SpaceSpec::Subspace(b, w) => {
                write!(f, "Subspace({b}, [")?;
                for (i, x) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("])")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::word::w;

    #[test]
    fn cylinder_counts() {
        assert_eq!(SpaceSpec::Cantor.count(w("01")), CountClass::Infinite);
        let f5 = SpaceSpec::Finite(5);
        assert_eq!(f5.count(w("110")), CountClass::Exactly(1));
        assert_eq!(f5.count(w("11")), CountClass::Exactly(3));
        assert_eq!(f5.count(w("")), CountClass::Exactly(5));
        assert_eq!(f5.count(w("1101")), CountClass::ZERO);
        assert_eq!(f5.count(w("111111")), CountClass::ZERO);
        assert_eq!(f5.count(w("11110")), CountClass::Exactly(1));
        assert_eq!(f5.count(w("111110")), CountClass::ZERO);
        assert_eq!(f5.count(w("1111")), CountClass::Exactly(1));
        let c = SpaceSpec::Convergent;
        assert_eq!(c.count(w("11")), CountClass::Infinite);
        assert_eq!(c.count(w("10")), CountClass::Exactly(1));
        assert_eq!(c.count(w("1000")), CountClass::Exactly(1));
        assert_eq!(c.count(w("1001")), CountClass::ZERO);
    }

    #[test]
    fn union_and_subspace_counts() {
        let u = SpaceSpec::union(SpaceSpec::Finite(3), SpaceSpec::Cantor);
        assert_eq!(u.count(w("")), CountClass::Infinite);
        assert_eq!(u.count(w("0")), CountClass::Exactly(3));
        assert_eq!(u.count(w("01")), CountClass::Exactly(2));
        let s = SpaceSpec::subspace(SpaceSpec::Finite(5), &[w("0"), w("10")]).unwrap();
        assert_eq!(s.total(), CountClass::Exactly(2));
        assert_eq!(s.count(w("1")), CountClass::Exactly(1));
        assert_eq!(s.count(w("11")), CountClass::ZERO);
    }

    #[test]
    fn empty_window_is_rejected() {
        let e = SpaceSpec::subspace(SpaceSpec::Finite(2), &[w("111")]);
        assert!(matches!(e, Err(Error::Construction(_))));
    }

    #[test]
    fn count_addition_absorbs() {
        assert_eq!(
            CountClass::Exactly(2) + CountClass::Exactly(3),
            CountClass::Exactly(5)
        );
        assert_eq!(
            CountClass::Exactly(2) + CountClass::Infinite,
            CountClass::Infinite
        );
    }
}
