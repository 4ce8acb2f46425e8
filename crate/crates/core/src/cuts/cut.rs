use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::space::{ClopenSet, CountClass, SpaceSpec, Word};

/// An unordered pair of complementary nonempty clopen sets. The side whose
/// canonical antichain is lexicographically least is stored first, so
/// equality is equality of partitions.
#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Cut {
    sides: [ClopenSet; 2],
}

impl Cut {
    pub fn new(side: ClopenSet) -> Result<Cut> {
        if side.is_empty() || side.is_whole() {
            return Err(Error::DegenerateCut);
        }
        let other = side.complement();
        Ok(if side.words() <= other.words() {
            Cut {
                sides: [side, other],
            }
        } else {
            Cut {
                sides: [other, side],
            }
        })
    }

    pub fn from_words(spec: &Arc<SpaceSpec>, raw: &[Word]) -> Result<Cut> {
        Cut::new(ClopenSet::canonicalize(spec, raw))
    }

    pub fn spec(&self) -> &Arc<SpaceSpec> {
        self.sides[0].spec()
    }

    pub fn sides(&self) -> &[ClopenSet; 2] {
        &self.sides
    }

    pub fn first(&self) -> &ClopenSet {
        &self.sides[0]
    }

    pub fn second(&self) -> &ClopenSet {
        &self.sides[1]
    }

    pub fn counts(&self) -> [CountClass; 2] {
        [self.sides[0].count(), self.sides[1].count()]
    }

    /// Both sides hold at least two points.
    pub fn is_nonperipheral(&self) -> bool {
        self.counts().iter().all(|c| c.at_least(2))
    }

    /// Some side holds exactly two points.
    pub fn is_outermost(&self) -> bool {
        self.counts().contains(&CountClass::Exactly(2))
    }

    /// Longest string in either side's antichain.
    pub fn depth(&self) -> usize {
        self.sides[0].depth().max(self.sides[1].depth())
    }

    /// The four pairwise intersections `U∩U', U∩V', V∩U', V∩V'`.
    pub fn quadrants(&self, other: &Cut) -> Result<[ClopenSet; 4]> {
        let [u, v] = &self.sides;
        let [u2, v2] = &other.sides;
        Ok([
            u.intersect(u2)?,
            u.intersect(v2)?,
            v.intersect(u2)?,
            v.intersect(v2)?,
        ])
    }

    pub fn crosses(&self, other: &Cut) -> Result<bool> {
        Ok(self.quadrants(other)?.iter().all(|q| !q.is_empty()))
    }

    pub fn compatible(&self, other: &Cut) -> Result<bool> {
        Ok(!self.crosses(other)?)
    }

    /// The side containing `set`, if one does.
    pub fn side_containing(&self, set: &ClopenSet) -> Result<Option<&ClopenSet>> {
        for s in &self.sides {
            if set.is_subset(s)? {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    /// A side with finitely many points, the smaller one when both are
    /// finite (ties go to the first side).
    pub fn small_side(&self) -> &ClopenSet {
        let [a, b] = self.counts();
        if a <= b {
            &self.sides[0]
        } else {
            &self.sides[1]
        }
    }

    pub(crate) fn require_nonperipheral(&self) -> Result<()> {
        if self.is_nonperipheral() {
            Ok(())
        } else {
            Err(domain(format!("cut {self} is peripheral")))
        }
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Cut) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Cut) -> Ordering {
        self.sides[0]
            .words()
            .cmp(other.sides[0].words())
            .then_with(|| self.sides[1].words().cmp(other.sides[1].words()))
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.sides[0], self.sides[1])
    }
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cut({self})")
    }
}

/// The cut of a finite space with the given points on one side.
pub fn point_cut(spec: &Arc<SpaceSpec>, points: &[usize]) -> Result<Cut> {
    let frame = crate::space::Frame::points(spec)?;
    let mut mask = 0;
    for &p in points {
        if p >= frame.len() {
            return Err(domain(format!("point {p} out of range for {spec}")));
        }
        mask |= 1u128 << p;
    }
    Cut::new(frame.clopen_of(mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::w;

    fn f5() -> Arc<SpaceSpec> {
        Arc::new(SpaceSpec::Finite(5))
    }

    #[test]
    fn peripherality() {
        assert!(point_cut(&f5(), &[0, 1]).unwrap().is_nonperipheral());
        assert!(!point_cut(&f5(), &[0]).unwrap().is_nonperipheral());
        let c = Cut::from_words(&Arc::new(SpaceSpec::Cantor), &[w("0")]).unwrap();
        assert!(c.is_nonperipheral());
        assert_eq!(point_cut(&f5(), &[]), Err(Error::DegenerateCut));
        assert_eq!(
            point_cut(&f5(), &[0, 1, 2, 3, 4]),
            Err(Error::DegenerateCut)
        );
    }

    #[test]
    fn crossing_examples() {
        let a = point_cut(&f5(), &[0, 1]).unwrap();
        assert!(a.crosses(&point_cut(&f5(), &[0, 2]).unwrap()).unwrap());
        assert!(!a.crosses(&point_cut(&f5(), &[2, 3]).unwrap()).unwrap());
        assert!(!a.crosses(&a).unwrap());
        let cantor = Arc::new(SpaceSpec::Cantor);
        let x = Cut::from_words(&cantor, &[w("0")]).unwrap();
        let y = Cut::from_words(&cantor, &[w("00"), w("10")]).unwrap();
        assert!(x.crosses(&y).unwrap());
        assert!(matches!(x.crosses(&a), Err(Error::Domain(_))));
    }

    #[test]
    fn orientation_is_canonical() {
        let a = point_cut(&f5(), &[2, 3, 4]).unwrap();
        let b = point_cut(&f5(), &[0, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.first().words(), &[w("0"), w("10")]);
    }
}
