//! Finite unions of rectangles `A × B` in a product backend.
//!
//! Canonical form: the rectangles `(A_k, B_k)` have pairwise disjoint,
//! nonempty left sides and pairwise distinct, nonempty right sides, sorted.
//! This is the unique description of the set as a finitely-valued function
//! from the left factor to definable subsets of the right factor.

use std::collections::BTreeMap;

use super::{DefinableSet, Shape};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductSet {
    left: Box<Shape>,
    right: Box<Shape>,
    rects: Vec<(DefinableSet, DefinableSet)>,
}

impl ProductSet {
    pub fn new(left: Shape, right: Shape, rects: Vec<(DefinableSet, DefinableSet)>) -> Result<Self> {
        for (a, b) in &rects {
            a.expect_shape(&left)?;
            b.expect_shape(&right)?;
        }
        canonicalize(left, right, rects)
    }

    pub fn left_shape(&self) -> &Shape {
        &self.left
    }

    pub fn right_shape(&self) -> &Shape {
        &self.right
    }

    pub fn rects(&self) -> &[(DefinableSet, DefinableSet)] {
        &self.rects
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        let mut rects = self.rects.clone();
        rects.extend(other.rects.iter().cloned());
        canonicalize((*self.left).clone(), (*self.right).clone(), rects)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        let mut rects = Vec::new();
        for (a, b) in &self.rects {
            for (c, d) in &other.rects {
                rects.push((a.intersection(c)?, b.intersection(d)?));
            }
        }
        canonicalize((*self.left).clone(), (*self.right).clone(), rects)
    }

    pub fn complement(&self) -> Result<Self> {
        let mut rects = Vec::with_capacity(self.rects.len() + 1);
        let mut covered = DefinableSet::empty_of(&self.left);
        for (a, b) in &self.rects {
            rects.push((a.clone(), b.complement()?));
            covered = covered.union(a)?;
        }
        rects.push((covered.complement()?, DefinableSet::full_of(&self.right)));
        canonicalize((*self.left).clone(), (*self.right).clone(), rects)
    }

    /// Applies a rectangle-wise map and re-canonicalizes.
    pub fn map_rects(
        &self,
        mut f: impl FnMut(&DefinableSet, &DefinableSet) -> Result<(DefinableSet, DefinableSet)>,
    ) -> Result<Self> {
        let rects = self.rects.iter().map(|(a, b)| f(a, b)).collect::<Result<Vec<_>>>()?;
        canonicalize((*self.left).clone(), (*self.right).clone(), rects)
    }

    /// Pairwise combination of rectangles, e.g. for products of sets.
    pub fn pairwise(
        &self,
        other: &Self,
        mut f: impl FnMut(&(DefinableSet, DefinableSet), &(DefinableSet, DefinableSet)) -> Result<(DefinableSet, DefinableSet)>,
    ) -> Result<Self> {
        let mut rects = Vec::new();
        for r in &self.rects {
            for s in &other.rects {
                rects.push(f(r, s)?);
            }
        }
        canonicalize((*self.left).clone(), (*self.right).clone(), rects)
    }
}

fn canonicalize(
    left: Shape,
    right: Shape,
    rects: Vec<(DefinableSet, DefinableSet)>,
) -> Result<ProductSet> {
    let rects: Vec<_> = rects.into_iter().filter(|(a, b)| !a.is_empty() && !b.is_empty()).collect();
    // atoms of the algebra generated by the left sides, each tagged with
    // the rectangles containing it
    let mut atoms: Vec<(DefinableSet, Vec<usize>)> = vec![(DefinableSet::full_of(&left), Vec::new())];
    for (i, (a, _)) in rects.iter().enumerate() {
        let mut next = Vec::with_capacity(atoms.len() * 2);
        let not_a = a.complement()?;
        for (atom, tags) in atoms {
            let inside = atom.intersection(a)?;
            if !inside.is_empty() {
                let mut t = tags.clone();
                t.push(i);
                next.push((inside, t));
            }
            let outside = atom.intersection(&not_a)?;
            if !outside.is_empty() {
                next.push((outside, tags));
            }
        }
        atoms = next;
    }
    let mut grouped: BTreeMap<DefinableSet, DefinableSet> = BTreeMap::new();
    for (atom, tags) in atoms {
        let mut fiber = DefinableSet::empty_of(&right);
        for i in tags {
            fiber = fiber.union(&rects[i].1)?;
        }
        if fiber.is_empty() {
            continue;
        }
        let entry = grouped.entry(fiber).or_insert_with(|| DefinableSet::empty_of(&left));
        *entry = entry.union(&atom)?;
    }
    let mut out: Vec<(DefinableSet, DefinableSet)> = grouped.into_iter().map(|(b, a)| (a, b)).collect();
    out.sort();
    Ok(ProductSet { left: Box::new(left), right: Box::new(right), rects: out })
}
