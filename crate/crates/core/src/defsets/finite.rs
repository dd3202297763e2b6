use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Subset of a finite group, as a membership mask indexed by element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSubset {
    members: Vec<bool>,
}

impl FiniteSubset {
    pub fn from_mask(members: Vec<bool>) -> Self {
        FiniteSubset { members }
    }

    pub fn from_elements(order: usize, elements: &[usize]) -> Result<Self> {
        let mut members = vec![false; order];
        for &e in elements {
            if e >= order {
                return Err(Error::ContextMismatch(format!("element {e} outside group of order {order}")));
            }
            members[e] = true;
        }
        Ok(FiniteSubset { members })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.get(i).copied().unwrap_or(false)
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_all(&self) -> bool {
        self.members.iter().all(|&b| b)
    }

    pub fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::ContextMismatch("finite subsets of different groups".into()));
        }
        Ok(FiniteSubset {
            members: self.members.iter().zip(&other.members).map(|(&a, &b)| op(a, b)).collect(),
        })
    }

    pub fn complement(&self) -> Self {
        FiniteSubset { members: self.members.iter().map(|b| !b).collect() }
    }

    /// `g·Y` when `left`, else `Y·g`.
    pub fn translate(&self, group: &FiniteGroup, g: usize, left: bool) -> Self {
        let mut members = vec![false; self.order()];
        for y in self.elements() {
            let t = if left { group.mul(g, y) } else { group.mul(y, g) };
            members[t] = true;
        }
        FiniteSubset { members }
    }

    pub fn inverse(&self, group: &FiniteGroup) -> Self {
        let mut members = vec![false; self.order()];
        for y in self.elements() {
            members[group.inv(y)] = true;
        }
        FiniteSubset { members }
    }

    /// `A·B`.
    pub fn product(&self, other: &Self, group: &FiniteGroup) -> Self {
        let mut members = vec![false; self.order()];
        for a in self.elements() {
            for b in other.elements() {
                members[group.mul(a, b)] = true;
            }
        }
        FiniteSubset { members }
    }
}
