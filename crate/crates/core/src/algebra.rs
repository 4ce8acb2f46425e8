//! Finite Boolean algebras as powersets of an atom set, with Stone duality
//! checked exactly on finite instances.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::space::{ClopenSet, Frame, SpaceSpec, MAX_FINITE_POINTS};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Largest atom count; the dual space is `Finite(atoms)`.
pub const MAX_ATOMS: usize = MAX_FINITE_POINTS;

/// The powerset of `{0, …, atoms-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBooleanAlgebra {
    id: u64,
    atoms: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    owner: u64,
    width: u8,
    mask: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connective {
    Meet,
    Join,
    Not,
    Leq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectiveValue {
    Element(AlgebraElement),
    Bool(bool),
}

impl FiniteBooleanAlgebra {
    pub fn new(atoms: usize) -> Result<FiniteBooleanAlgebra> {
        if atoms == 0 || atoms > MAX_ATOMS {
            return Err(Error::Construction(format!(
                "atom count must be in 1..={MAX_ATOMS}, got {atoms}"
            )));
        }
        Ok(FiniteBooleanAlgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            atoms,
        })
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    fn full(&self) -> u64 {
        if self.atoms == 64 {
            u64::MAX
        } else {
            (1u64 << self.atoms) - 1
        }
    }

    pub fn element(&self, mask: u64) -> Result<AlgebraElement> {
        if mask & !self.full() != 0 {
            return Err(domain(format!(
                "mask {mask:#b} is wider than {} atoms",
                self.atoms
            )));
        }
        Ok(AlgebraElement {
            owner: self.id,
            width: self.atoms as u8,
            mask,
        })
    }

    pub fn from_atoms(&self, atoms: &[usize]) -> Result<AlgebraElement> {
        let mut mask = 0u64;
        for &a in atoms {
            if a >= self.atoms {
                return Err(domain(format!("atom {a} out of range")));
            }
            mask |= 1 << a;
        }
        self.element(mask)
    }

    pub fn zero(&self) -> AlgebraElement {
        self.element(0).unwrap()
    }

    pub fn one(&self) -> AlgebraElement {
        self.element(self.full()).unwrap()
    }

    /// Every element; only sensible for small atom counts.
    pub fn elements(&self) -> impl Iterator<Item = AlgebraElement> + '_ {
        (0..=self.full()).map(move |m| self.element(m).unwrap())
    }

    pub fn atoms(&self) -> Vec<AlgebraElement> {
        (0..self.atoms)
            .map(|i| self.element(1 << i).unwrap())
            .collect()
    }

    pub fn owns(&self, a: &AlgebraElement) -> bool {
        a.owner == self.id
    }

    pub fn ultrafilters(&self) -> Vec<Ultrafilter> {
        (0..self.atoms)
            .map(|atom_index| Ultrafilter { atom_index })
            .collect()
    }

    /// An ultrafilter containing `F(generator)`, principal at the lowest
    /// atom below the generator.
    pub fn extend_filter(&self, generator: &AlgebraElement) -> Result<Ultrafilter> {
        self.check(generator)?;
        if generator.mask == 0 {
            return Err(Error::ImproperFilter);
        }
        Ok(Ultrafilter {
            atom_index: generator.mask.trailing_zeros() as usize,
        })
    }

    fn check(&self, a: &AlgebraElement) -> Result<()> {
        if self.owns(a) {
            Ok(())
        } else {
            Err(domain("element belongs to a different algebra"))
        }
    }
}

impl AlgebraElement {
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn atom_indices(&self) -> Vec<usize> {
        (0..self.width as usize)
            .filter(|i| self.mask >> i & 1 == 1)
            .collect()
    }

    fn same(&self, other: &AlgebraElement) -> Result<()> {
        if self.owner == other.owner {
            Ok(())
        } else {
            Err(domain("elements belong to different algebras"))
        }
    }

    fn with(&self, mask: u64) -> AlgebraElement {
        AlgebraElement { mask, ..*self }
    }

    pub fn meet(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same(other)?;
        Ok(self.with(self.mask & other.mask))
    }

    pub fn join(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same(other)?;
        Ok(self.with(self.mask | other.mask))
    }

    pub fn not(&self) -> AlgebraElement {
        let full = if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        };
        self.with(!self.mask & full)
    }

    pub fn leq(&self, other: &AlgebraElement) -> Result<bool> {
        self.same(other)?;
        Ok(self.mask & !other.mask == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mask == 0
    }

    /// An immediate successor of 0.
    pub fn is_atom(&self) -> bool {
        self.mask.count_ones() == 1
    }
}

pub fn apply_connective(
    op: Connective,
    a: &AlgebraElement,
    b: Option<&AlgebraElement>,
) -> Result<ConnectiveValue> {
    let need_b = || b.ok_or_else(|| domain(format!("{op:?} needs two operands")));
    Ok(match op {
        Connective::Not => {
            if b.is_some() {
                return Err(domain("not takes one operand"));
            }
            ConnectiveValue::Element(a.not())
        }
        Connective::Meet => ConnectiveValue::Element(a.meet(need_b()?)?),
        Connective::Join => ConnectiveValue::Element(a.join(need_b()?)?),
        Connective::Leq => ConnectiveValue::Bool(a.leq(need_b()?)?),
    })
}

/// The principal ultrafilter `F(atom) = {a : atom ≤ a}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ultrafilter {
    pub atom_index: usize,
}

impl Ultrafilter {
    pub fn contains(&self, a: &AlgebraElement) -> bool {
        a.mask >> self.atom_index & 1 == 1
    }
}

/// A homomorphism `A → B` stored by its dual atom map
/// `atoms(B) → atoms(A)`; `f(a)` is the join of the `B`-atoms whose image
/// lies in `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteBooleanAlgebra,
    target: FiniteBooleanAlgebra,
    atom_map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(
        source: &FiniteBooleanAlgebra,
        target: &FiniteBooleanAlgebra,
        atom_map: Vec<usize>,
    ) -> Result<Homomorphism> {
        if atom_map.len() != target.atoms {
            return Err(Error::Construction(format!(
                "atom map has {} entries, target has {} atoms",
                atom_map.len(),
                target.atoms
            )));
        }
        if let Some(bad) = atom_map.iter().find(|&&a| a >= source.atoms) {
            return Err(Error::Construction(format!(
                "atom map sends to {bad}, source has {} atoms",
                source.atoms
            )));
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            atom_map,
        })
    }

    pub fn identity(b: &FiniteBooleanAlgebra) -> Homomorphism {
        Homomorphism::new(b, b, (0..b.atoms).collect()).unwrap()
    }

    /// Recovers the atom map of an arbitrary element map, rejecting maps
    /// that are not homomorphisms.
    pub fn from_element_map(
        source: &FiniteBooleanAlgebra,
        target: &FiniteBooleanAlgebra,
        f: impl Fn(u64) -> u64,
    ) -> Result<Homomorphism> {
        let mut atom_map = Vec::with_capacity(target.atoms);
        for beta in 0..target.atoms {
            let hits: Vec<usize> = (0..source.atoms)
                .filter(|&alpha| f(1 << alpha) >> beta & 1 == 1)
                .collect();
            if hits.len() != 1 {
                return Err(Error::Construction(format!(
                    "target atom {beta} lies under {} source atoms",
                    hits.len()
                )));
            }
            atom_map.push(hits[0]);
        }
        let h = Homomorphism::new(source, target, atom_map)?;
        if source.atoms <= 16 {
            for m in 0..=source.full() {
                if h.image_mask(m) != f(m) {
                    return Err(Error::Construction(format!(
                        "element map disagrees with its atom map at {m:#b}"
                    )));
                }
            }
        }
        Ok(h)
    }

    pub fn source(&self) -> &FiniteBooleanAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteBooleanAlgebra {
        &self.target
    }

    pub fn atom_map(&self) -> &[usize] {
        &self.atom_map
    }

    fn image_mask(&self, m: u64) -> u64 {
        self.atom_map
            .iter()
            .enumerate()
            .filter(|(_, &alpha)| m >> alpha & 1 == 1)
            .fold(0, |acc, (beta, _)| acc | 1 << beta)
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.source.check(a)?;
        self.target.element(self.image_mask(a.mask))
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Homomorphism) -> Result<Homomorphism> {
        if then.source != self.target {
            return Err(domain("composition of non-matching homomorphisms"));
        }
        let atom_map = then.atom_map.iter().map(|&b| self.atom_map[b]).collect();
        Homomorphism::new(&self.source, &then.target, atom_map)
    }

    /// `g*`: the ultrafilter `{a : g(a) ∈ ω}` of the source for each
    /// ultrafilter `ω` of the target.
    pub fn dual_map(&self) -> Vec<Ultrafilter> {
        self.atom_map
            .iter()
            .map(|&atom_index| Ultrafilter { atom_index })
            .collect()
    }

    /// Checks `(g*)^{-1}(U_a) = U_{g(a)}` for every `a`, computing `g*`
    /// from its definition.
    pub fn verify_dual(&self) -> Result<bool> {
        if self.source.atoms > 16 {
            return Err(Error::Resource {
                what: "algebra atoms",
                size: self.source.atoms,
                limit: 16,
            });
        }
        let mut star = Vec::with_capacity(self.target.atoms);
        for beta in 0..self.target.atoms {
            // The pulled-back filter is principal at its least element.
            let least = (0..=self.source.full())
                .filter(|&m| self.image_mask(m) >> beta & 1 == 1)
                .fold(self.source.full(), |acc, m| acc & m);
            if least.count_ones() != 1 {
                return Ok(false);
            }
            star.push(least.trailing_zeros() as usize);
        }
        if star != self.atom_map {
            return Ok(false);
        }
        for m in 0..=self.source.full() {
            let pre: u64 = (0..self.target.atoms)
                .filter(|&beta| m >> star[beta] & 1 == 1)
                .fold(0, |acc, beta| acc | 1 << beta);
            if pre != self.image_mask(m) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The dual of a finite algebra: the discrete space `Finite(k)` with point
/// `i` the ultrafilter at atom `i`.
#[derive(Clone, Debug)]
pub struct StoneDual {
    algebra: FiniteBooleanAlgebra,
    frame: Frame,
}

pub fn stone_dual(b: &FiniteBooleanAlgebra) -> StoneDual {
    let spec = Arc::new(SpaceSpec::Finite(b.atoms));
    StoneDual {
        algebra: b.clone(),
        frame: Frame::points(&spec).unwrap(),
    }
}

impl StoneDual {
    pub fn space(&self) -> &Arc<SpaceSpec> {
        self.frame.spec()
    }

    pub fn points(&self) -> Vec<Ultrafilter> {
        self.algebra.ultrafilters()
    }

    /// `η(a) = U_a`, the ultrafilters containing `a`.
    pub fn eta(&self, a: &AlgebraElement) -> Result<ClopenSet> {
        self.algebra.check(a)?;
        Ok(self.frame.clopen_of(a.mask as u128))
    }

    pub fn eta_points(&self, a: &AlgebraElement) -> Result<Vec<Ultrafilter>> {
        self.algebra.check(a)?;
        Ok(self
            .points()
            .into_iter()
            .filter(|u| u.contains(a))
            .collect())
    }
}

/// `Ω(S)` for a finite space: one atom per point.
pub fn clopen_algebra(spec: &Arc<SpaceSpec>) -> Result<(FiniteBooleanAlgebra, Frame)> {
    let frame = Frame::points(spec)?;
    if frame.is_empty() {
        return Err(domain("empty space"));
    }
    Ok((FiniteBooleanAlgebra::new(frame.len())?, frame))
}

/// Checks that `ε`, sending an ultrafilter of `Ω(S)` to the unique point in
/// the intersection of its members, is a bijection onto `S`, and that its
/// inverse sends a point to the clopen sets containing it.
pub fn verify_epsilon(spec: &Arc<SpaceSpec>) -> Result<bool> {
    let (alg, frame) = clopen_algebra(spec)?;
    if alg.atoms > 16 {
        return Err(Error::Resource {
            what: "algebra atoms",
            size: alg.atoms,
            limit: 16,
        });
    }
    let mut hit = vec![false; frame.len()];
    for omega in alg.ultrafilters() {
        let meet = alg
            .elements()
            .filter(|a| omega.contains(a))
            .fold(alg.full(), |acc, a| acc & a.mask);
        let set = frame.clopen_of(meet as u128);
        if set.count() != crate::space::CountClass::Exactly(1) {
            return Ok(false);
        }
        let p = meet.trailing_zeros() as usize;
        if hit[p] {
            return Ok(false);
        }
        hit[p] = true;
        let back: Vec<u64> = alg
            .elements()
            .filter(|a| a.mask >> p & 1 == 1)
            .map(|a| a.mask)
            .collect();
        let members: Vec<u64> = alg
            .elements()
            .filter(|a| omega.contains(a))
            .map(|a| a.mask)
            .collect();
        if back != members {
            return Ok(false);
        }
    }
    Ok(hit.into_iter().all(|h| h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectives() {
        let b = FiniteBooleanAlgebra::new(3).unwrap();
        let x = b.from_atoms(&[0, 1]).unwrap();
        let y = b.from_atoms(&[1, 2]).unwrap();
        assert_eq!(x.meet(&y).unwrap().atom_indices(), vec![1]);
        for a in b.elements() {
            assert_eq!(a.join(&a.not()).unwrap(), b.one());
            assert!(b.zero().leq(&a).unwrap());
        }
        let other = FiniteBooleanAlgebra::new(3).unwrap();
        assert!(matches!(x.meet(&other.one()), Err(Error::Domain(_))));
        assert_eq!(
            apply_connective(Connective::Leq, &x, Some(&b.one())).unwrap(),
            ConnectiveValue::Bool(true)
        );
        assert!(apply_connective(Connective::Meet, &x, None).is_err());
    }

    #[test]
    fn extension_takes_lowest_atom() {
        let b = FiniteBooleanAlgebra::new(3).unwrap();
        let u = b.extend_filter(&b.from_atoms(&[0, 1]).unwrap()).unwrap();
        assert_eq!(u.atom_index, 0);
        assert_eq!(b.extend_filter(&b.zero()), Err(Error::ImproperFilter));
    }

    #[test]
    fn eta_of_small_sets() {
        let b = FiniteBooleanAlgebra::new(4).unwrap();
        let d = stone_dual(&b);
        assert!(d.eta(&b.zero()).unwrap().is_empty());
        assert!(d.eta(&b.one()).unwrap().is_whole());
        let pts = d.eta_points(&b.from_atoms(&[0, 2]).unwrap()).unwrap();
        assert_eq!(
            pts.iter().map(|u| u.atom_index).collect::<Vec<_>>(),
            vec![0, 2]
        );
    }

    #[test]
    fn dual_of_a_surjection() {
        let a = FiniteBooleanAlgebra::new(2).unwrap();
        let b = FiniteBooleanAlgebra::new(3).unwrap();
        let g = Homomorphism::new(&a, &b, vec![0, 0, 1]).unwrap();
        let star = g.dual_map();
        assert_eq!(star[0].atom_index, 0);
        assert_eq!(star[2].atom_index, 1);
        let img = g.apply(&a.from_atoms(&[0]).unwrap()).unwrap();
        assert_eq!(img.atom_indices(), vec![0, 1]);
        assert!(g.verify_dual().unwrap());
    }

    #[test]
    fn element_maps_are_validated() {
        let a = FiniteBooleanAlgebra::new(2).unwrap();
        let b = FiniteBooleanAlgebra::new(3).unwrap();
        let g = Homomorphism::from_element_map(&a, &b, |m| {
            (if m & 1 != 0 { 0b011 } else { 0 }) | (if m & 2 != 0 { 0b100 } else { 0 })
        })
        .unwrap();
        assert_eq!(g.atom_map(), &[0, 0, 1]);
        assert!(Homomorphism::from_element_map(&a, &b, |_| 0).is_err());
    }
}
