use std::sync::Arc;

use super::clopen::ClopenSet;
use super::spec::{CountClass, SpaceSpec};
use super::word::Word;
use crate::error::{Error, Result};

/// A set of classes of a [`Frame`], bit `i` standing for class `i`.
pub type Mask = u128;

/// Most classes a frame may have for mask arithmetic.
pub const MAX_CLASSES: usize = 128;

/// A finite partition of the space into nonempty cylinder classes, sorted
/// lexicographically.
///
/// Every clopen set whose canonical antichain only uses strings of length
/// at most `d` is a union of depth-`d` classes, so cuts of bounded depth
/// are exactly the [`Mask`]s over [`Frame::at_depth`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    spec: Arc<SpaceSpec>,
    classes: Vec<Word>,
    counts: Vec<CountClass>,
}

fn build(
    spec: &SpaceSpec,
    s: Word,
    depth: usize,
    resolve_finite: bool,
    out: &mut Vec<(Word, CountClass)>,
) {
    let c = spec.count(s);
    if c.is_zero() {
        return;
    }
    let stop =
        c == CountClass::Exactly(1) || (s.len() >= depth && (c.is_infinite() || !resolve_finite));
    if stop {
        out.push((s, c));
        return;
    }
    build(spec, s.child(0), depth, resolve_finite, out);
    build(spec, s.child(1), depth, resolve_finite, out);
}

/// The partition of the space into nonempty cylinders of length `d`,
/// shortened where a point is already isolated.
pub fn points_at_depth(spec: &SpaceSpec, d: usize) -> Vec<(Word, CountClass)> {
    let mut out = Vec::new();
    build(spec, Word::ROOT, d, false, &mut out);
    out
}

impl Frame {
    fn from_pairs(spec: &Arc<SpaceSpec>, pairs: Vec<(Word, CountClass)>) -> Frame {
        let (classes, counts) = pairs.into_iter().unzip();
        Frame {
            spec: spec.clone(),
            classes,
            counts,
        }
    }

    pub fn at_depth(spec: &Arc<SpaceSpec>, d: usize) -> Frame {
        Self::from_pairs(spec, points_at_depth(spec, d))
    }

    /// Depth-`d` classes with every finite class split into its points.
    pub fn at_depth_with_points(spec: &Arc<SpaceSpec>, d: usize) -> Frame {
        let mut out = Vec::new();
        build(spec, Word::ROOT, d, true, &mut out);
        Self::from_pairs(spec, out)
    }

    /// One class per point. Only for finite spaces.
    pub fn points(spec: &Arc<SpaceSpec>) -> Result<Frame> {
        if !spec.is_finite() {
            return Err(Error::Unsupported(format!("{spec} is infinite")));
        }
        Ok(Self::at_depth_with_points(spec, 0))
    }

    pub fn spec(&self) -> &Arc<SpaceSpec> {
        &self.spec
    }

    pub fn classes(&self) -> &[Word] {
        &self.classes
    }

    pub fn counts(&self) -> &[CountClass] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Fails when the frame is too large for [`Mask`] arithmetic.
    pub fn ensure_maskable(&self) -> Result<()> {
        if self.len() > MAX_CLASSES {
            return Err(Error::Resource {
                what: "class partition",
                size: self.len(),
                limit: MAX_CLASSES,
            });
        }
        Ok(())
    }

    pub fn full_mask(&self) -> Mask {
        if self.len() >= 128 {
            Mask::MAX
        } else {
            (1 << self.len()) - 1
        }
    }

    pub fn mask_count(&self, mask: Mask) -> CountClass {
        let mut m = mask;
        let mut total = CountClass::ZERO;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            total = total + self.counts[i];
            m &= m - 1;
        }
        total
    }

    /// Whether every class of the mask is infinite or the mask holds at
    /// least two points.
    pub fn mask_at_least(&self, mask: Mask, k: u64) -> bool {
        self.mask_count(mask).at_least(k)
    }

    /// The mask of a clopen set, or `None` when some class is split by it.
    pub fn mask_of(&self, set: &ClopenSet) -> Option<Mask> {
        let mut mask = 0;
        for (i, &c) in self.classes.iter().enumerate() {
            if set.words().iter().any(|u| u.is_prefix_of(c)) {
                mask |= 1 << i;
            } else if set.words().iter().any(|u| c.is_prefix_of(*u)) {
                return None;
            }
        }
        Some(mask)
    }

    pub fn clopen_of(&self, mask: Mask) -> ClopenSet {
        let raw: Vec<Word> = (0..self.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.classes[i])
            .collect();
        ClopenSet::canonicalize(&self.spec, &raw)
    }

    /// Index of the class holding the point or cylinder named by `w`.
    pub fn class_containing(&self, w: Word) -> Option<usize> {
        self.classes.iter().position(|c| c.is_prefix_of(w))
    }

    /// For each class of `self`, the class of `coarser` containing it.
    pub fn refinement_map(&self, coarser: &Frame) -> Result<Vec<usize>> {
        self.classes
            .iter()
            .map(|&c| {
                coarser.class_containing(c).ok_or_else(|| {
                    Error::Domain(format!(
                        "class {c} is not inside a class of the coarser frame"
                    ))
                })
            })
            .collect()
    }

    /// Rewrites a mask over `coarser` as a mask over `self`.
    pub fn lift_mask(map: &[usize], coarse_mask: Mask) -> Mask {
        map.iter()
            .enumerate()
            .filter(|(_, &j)| coarse_mask >> j & 1 == 1)
            .fold(0, |m, (i, _)| m | 1 << i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::word::w;

    fn names(v: &[(Word, CountClass)]) -> Vec<(String, CountClass)> {
        v.iter().map(|(a, b)| (a.to_string(), *b)).collect()
    }

    #[test]
    fn depth_classes() {
        let one = CountClass::Exactly(1);
        let inf = CountClass::Infinite;
        assert_eq!(
            names(&points_at_depth(&SpaceSpec::Finite(3), 3)),
            vec![("0".into(), one), ("10".into(), one), ("11".into(), one)]
        );
        let c2 = points_at_depth(&SpaceSpec::Cantor, 2);
        assert_eq!(c2.len(), 4);
        assert!(c2.iter().all(|(_, c)| *c == inf));
        assert_eq!(
            names(&points_at_depth(&SpaceSpec::Convergent, 2)),
            vec![("0".into(), one), ("10".into(), one), ("11".into(), inf)]
        );
    }

    #[test]
    fn masks_round_trip_through_clopen_sets() {
        let spec = Arc::new(SpaceSpec::Cantor);
        let f = Frame::at_depth(&spec, 3);
        for m in [0b1u128, 0b1010_0110, 0b1111_1111, 0] {
            assert_eq!(f.mask_of(&f.clopen_of(m)), Some(m));
        }
        let deep = ClopenSet::canonicalize(&spec, &[w("0000")]);
        assert_eq!(f.mask_of(&deep), None);
    }

    #[test]
    fn finite_points_frame() {
        let spec = Arc::new(SpaceSpec::union(SpaceSpec::Finite(2), SpaceSpec::Finite(3)));
        let f = Frame::points(&spec).unwrap();
        assert_eq!(f.len(), 5);
        assert!(f.counts().iter().all(|c| *c == CountClass::Exactly(1)));
        assert!(Frame::points(&Arc::new(SpaceSpec::Cantor)).is_err());
    }
}
