use std::sync::Arc;

use super::clopen::ClopenSet;
use super::spec::{CountClass, SpaceSpec};
use super::word::Word;
use crate::error::{domain, Error, Result};

/// Longest string length a validation sweep will visit.
const MAX_VALIDATION_LEN: usize = 20;

/// A homeomorphism of Cantor space given by rewriting prefixes: the point
/// `s_i y` goes to `t_i y`. Both `{s_i}` and `{t_i}` are complete prefix
/// codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixMap {
    pairs: Vec<(Word, Word)>,
}

fn check_complete_code(code: &[Word], which: &str) -> Result<()> {
    for (i, a) in code.iter().enumerate() {
        for b in &code[i + 1..] {
            if a.comparable(*b) {
                return Err(Error::Construction(format!(
                    "{which} code is not prefix-free: {a} and {b}"
                )));
            }
        }
    }
    let top = code.iter().map(|w| w.len()).max().unwrap_or(0);
    let kraft: u128 = code.iter().map(|w| 1u128 << (top - w.len())).sum();
    if kraft != 1u128 << top {
        return Err(Error::Construction(format!("{which} code is not complete")));
    }
    Ok(())
}

impl PrefixMap {
    pub fn new(pairs: Vec<(Word, Word)>) -> Result<PrefixMap> {
        if pairs.is_empty() {
            return Err(Error::Construction("empty prefix map".into()));
        }
        let dom: Vec<Word> = pairs.iter().map(|p| p.0).collect();
        let cod: Vec<Word> = pairs.iter().map(|p| p.1).collect();
        check_complete_code(&dom, "domain")?;
        check_complete_code(&cod, "codomain")?;
        Ok(PrefixMap { pairs })
    }

    pub fn identity() -> PrefixMap {
        PrefixMap {
            pairs: vec![(Word::ROOT, Word::ROOT)],
        }
    }

    /// Exchanges the first two characters: `a1 a2 a3 … ↦ a2 a1 a3 …`.
    pub fn swap_first_two() -> PrefixMap {
        let p = |a: &str, b: &str| (a.parse().unwrap(), b.parse().unwrap());
        PrefixMap {
            pairs: vec![p("00", "00"), p("01", "10"), p("10", "01"), p("11", "11")],
        }
    }

    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }

    pub fn inverse(&self) -> PrefixMap {
        PrefixMap {
            pairs: self.pairs.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    pub fn max_code_len(&self) -> usize {
        self.pairs
            .iter()
            .map(|(s, t)| s.len().max(t.len()))
            .max()
            .unwrap_or(0)
    }

    /// Strings whose cylinders union to the image of `[w]`.
    pub fn image_of_cylinder(&self, w: Word) -> Result<Vec<Word>> {
        if let Some(&(s, t)) = self.pairs.iter().find(|(s, _)| s.is_prefix_of(w)) {
            return Ok(vec![t.concat(w.suffix_from(s.len()))?]);
        }
        Ok(self
            .pairs
            .iter()
            .filter(|(s, _)| w.is_prefix_of(*s))
            .map(|&(_, t)| t)
            .collect())
    }

    /// Checks that the map preserves the point count of every cylinder up
    /// to length `max_code_len + extra_depth`.
    pub fn validate(
        &self,
        spec: &Arc<SpaceSpec>,
        extra_depth: usize,
    ) -> Result<ValidatedPrefixMap> {
        let depth = self.max_code_len() + extra_depth;
        if depth > MAX_VALIDATION_LEN {
            return Err(Error::Resource {
                what: "prefix-map validation depth",
                size: depth,
                limit: MAX_VALIDATION_LEN,
            });
        }
        for len in 0..=depth {
            for w in Word::all_of_len(len) {
                let before = spec.count(w);
                let after: CountClass = self
                    .image_of_cylinder(w)?
                    .into_iter()
                    .map(|t| spec.count(t))
                    .sum();
                if before != after {
                    return Err(domain(format!(
                        "prefix map changes the count of [{w}] from {before} to {after}"
                    )));
                }
            }
        }
        Ok(ValidatedPrefixMap {
            map: self.clone(),
            spec: spec.clone(),
            depth,
        })
    }
}

/// A [`PrefixMap`] checked against one space.
#[derive(Clone, Debug)]
pub struct ValidatedPrefixMap {
    map: PrefixMap,
    spec: Arc<SpaceSpec>,
    depth: usize,
}

impl ValidatedPrefixMap {
    pub fn map(&self) -> &PrefixMap {
        &self.map
    }

    pub fn spec(&self) -> &Arc<SpaceSpec> {
        &self.spec
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn apply(&self, set: &ClopenSet) -> Result<ClopenSet> {
        if **set.spec() != *self.spec {
            return Err(domain(format!(
                "prefix map validated for {} applied to a set over {}",
                self.spec,
                set.spec()
            )));
        }
        let mut raw = Vec::new();
        for &u in set.words() {
            raw.extend(self.map.image_of_cylinder(u)?);
        }
        Ok(ClopenSet::canonicalize(&self.spec, &raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::word::w;

    #[test]
    fn swap_moves_the_left_half() {
        let cantor = Arc::new(SpaceSpec::Cantor);
        let m = PrefixMap::swap_first_two().validate(&cantor, 2).unwrap();
        let u = ClopenSet::canonicalize(&cantor, &[w("0")]);
        let img = m.apply(&u).unwrap();
        assert_eq!(img.words(), &[w("00"), w("10")]);
        assert_eq!(m.apply(&img).unwrap(), u);
    }

    #[test]
    fn identity_fixes_sets() {
        let cantor = Arc::new(SpaceSpec::Cantor);
        let m = PrefixMap::identity().validate(&cantor, 3).unwrap();
        let u = ClopenSet::canonicalize(&cantor, &[w("011"), w("1")]);
        assert_eq!(m.apply(&u).unwrap(), u);
    }

    #[test]
    fn rejects_incomplete_codes_and_count_changes() {
        assert!(PrefixMap::new(vec![(w("0"), w("0"))]).is_err());
        assert!(PrefixMap::new(vec![(w("0"), w("0")), (w("01"), w("1"))]).is_err());
        // Swapping 0 and 1 on Finite(3) sends one point onto two.
        let flip = PrefixMap::new(vec![(w("0"), w("1")), (w("1"), w("0"))]).unwrap();
        assert!(flip.validate(&Arc::new(SpaceSpec::Finite(3)), 2).is_err());
    }

    #[test]
    fn unvalidated_space_is_a_domain_error() {
        let m = PrefixMap::swap_first_two()
            .validate(&Arc::new(SpaceSpec::Cantor), 1)
            .unwrap();
        let other = Arc::new(SpaceSpec::Convergent);
        let u = ClopenSet::canonicalize(&other, &[w("0")]);
        assert!(matches!(m.apply(&u), Err(Error::Domain(_))));
    }
}
