//! Canonical algebra of definable subsets of a group backend.

mod finite;
mod generic;
mod presburger;
mod product;

use std::sync::atomic::{AtomicU64, Ordering};

pub use finite::FiniteSubset;
pub use generic::{is_left_generic, verify_cover, Genericity, Obstruction, TypeShape};
pub use presburger::{PresburgerSet, MAX_WINDOW};
pub use product::ProductSet;

use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement};

/// Default upper bound on any modulus produced by lifting to a common period.
pub const DEFAULT_MODULUS_GUARD: u64 = 1_000_000;

static MODULUS_GUARD: AtomicU64 = AtomicU64::new(DEFAULT_MODULUS_GUARD);

pub fn modulus_guard() -> u64 {
    MODULUS_GUARD.load(Ordering::Relaxed)
}

/// Process-wide override of the lcm guard (used by the command line).
pub fn set_modulus_guard(guard: u64) {
    MODULUS_GUARD.store(guard.max(1), Ordering::Relaxed);
}

/// The backend a set lives over, without the group law.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Finite(usize),
    Integers,
    Product(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn of(ctx: &GroupContext) -> Shape {
        match ctx {
            GroupContext::Finite(g) => Shape::Finite(g.order()),
            GroupContext::Integers => Shape::Integers,
            GroupContext::Product(a, b) => Shape::Product(Box::new(Shape::of(a)), Box::new(Shape::of(b))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
    Complement,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DefinableSet {
    Finite(FiniteSubset),
    Presburger(PresburgerSet),
    Product(ProductSet),
}

impl From<PresburgerSet> for DefinableSet {
    fn from(s: PresburgerSet) -> Self {
        DefinableSet::Presburger(s)
    }
}

impl From<FiniteSubset> for DefinableSet {
    fn from(s: FiniteSubset) -> Self {
        DefinableSet::Finite(s)
    }
}

fn mismatch() -> Error {
    Error::ContextMismatch("sets over different backends".into())
}

impl DefinableSet {
    pub fn empty_of(shape: &Shape) -> Self {
        match shape {
            Shape::Finite(n) => DefinableSet::Finite(FiniteSubset::from_mask(vec![false; *n])),
            Shape::Integers => PresburgerSet::empty().into(),
            Shape::Product(a, b) => DefinableSet::Product(
                ProductSet::new((**a).clone(), (**b).clone(), Vec::new()).expect("empty product set"),
            ),
        }
    }

    pub fn full_of(shape: &Shape) -> Self {
        match shape {
            Shape::Finite(n) => DefinableSet::Finite(FiniteSubset::from_mask(vec![true; *n])),
            Shape::Integers => PresburgerSet::all().into(),
            Shape::Product(a, b) => DefinableSet::Product(
                ProductSet::new(
                    (**a).clone(),
                    (**b).clone(),
                    vec![(Self::full_of(a), Self::full_of(b))],
                )
                .expect("full product set"),
            ),
        }
    }

    pub fn empty(ctx: &GroupContext) -> Self {
        Self::empty_of(&Shape::of(ctx))
    }

    pub fn full(ctx: &GroupContext) -> Self {
        Self::full_of(&Shape::of(ctx))
    }

    /// Finite set of elements of a finite backend.
    pub fn from_elements(ctx: &GroupContext, elements: &[GroupElement]) -> Result<Self> {
        match ctx {
            GroupContext::Finite(g) => {
                let idx = elements
                    .iter()
                    .map(|e| match e {
                        GroupElement::Index(i) => Ok(*i),
                        _ => Err(mismatch()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(FiniteSubset::from_elements(g.order(), &idx)?.into())
            }
            GroupContext::Integers => {
                let pts = elements
                    .iter()
                    .map(|e| e.as_int().ok_or_else(mismatch))
                    .collect::<Result<Vec<_>>>()?;
                Ok(PresburgerSet::finite(&pts)?.into())
            }
            GroupContext::Product(a, b) => {
                let mut rects = Vec::new();
                for e in elements {
                    let GroupElement::Pair(x, y) = e else { return Err(mismatch()) };
                    rects.push((
                        Self::from_elements(a, std::slice::from_ref(x))?,
                        Self::from_elements(b, std::slice::from_ref(y))?,
                    ));
                }
                Self::rectangles(ctx, rects)
            }
        }
    }

    pub fn rectangles(ctx: &GroupContext, rects: Vec<(DefinableSet, DefinableSet)>) -> Result<Self> {
        match Shape::of(ctx) {
            Shape::Product(a, b) => Ok(DefinableSet::Product(ProductSet::new(*a, *b, rects)?)),
            _ => Err(Error::ContextMismatch("rectangles need a product backend".into())),
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            DefinableSet::Finite(s) => Shape::Finite(s.order()),
            DefinableSet::Presburger(_) => Shape::Integers,
            DefinableSet::Product(p) => {
                Shape::Product(Box::new(p.left_shape().clone()), Box::new(p.right_shape().clone()))
            }
        }
    }

    pub(crate) fn expect_shape(&self, shape: &Shape) -> Result<()> {
        if &self.shape() == shape {
            Ok(())
        } else {
            Err(mismatch())
        }
    }

    pub fn expect_context(&self, ctx: &GroupContext) -> Result<()> {
        self.expect_shape(&Shape::of(ctx))
    }

    pub fn as_presburger(&self) -> Option<&PresburgerSet> {
        match self {
            DefinableSet::Presburger(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteSubset> {
        match self {
            DefinableSet::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_product(&self) -> Option<&ProductSet> {
        match self {
            DefinableSet::Product(p) => Some(p),
            _ => None,
        }
    }

    pub fn contains_element(&self, g: &GroupElement) -> Result<bool> {
        match (self, g) {
            (DefinableSet::Finite(s), GroupElement::Index(i)) if *i < s.order() => Ok(s.contains(*i)),
            (DefinableSet::Presburger(s), GroupElement::Int(x)) => Ok(s.contains(*x)),
            (DefinableSet::Product(p), GroupElement::Pair(x, y)) => {
                for (a, b) in p.rects() {
                    if a.contains_element(x)? && b.contains_element(y)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            _ => Err(Error::ContextMismatch(format!("element {g} is not in the set's backend"))),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            DefinableSet::Finite(s) => s.is_empty(),
            DefinableSet::Presburger(s) => s.is_empty(),
            DefinableSet::Product(p) => p.is_empty(),
        }
    }

    pub fn is_all(&self) -> bool {
        match self {
            DefinableSet::Finite(s) => s.is_all(),
            DefinableSet::Presburger(s) => s.is_all(),
            DefinableSet::Product(_) => self.complement().map(|c| c.is_empty()).unwrap_or(false),
        }
    }

    /// Least common period of the integer components (1 for finite sets).
    pub fn period(&self) -> u64 {
        match self {
            DefinableSet::Finite(_) => 1,
            DefinableSet::Presburger(s) => s.modulus(),
            DefinableSet::Product(p) => p.rects().iter().fold(1u64, |acc, (a, b)| {
                num_integer::lcm(num_integer::lcm(acc, a.period()), b.period())
            }),
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DefinableSet::Finite(a), DefinableSet::Finite(b)) => Ok(a.combine(b, |x, y| x || y)?.into()),
            (DefinableSet::Presburger(a), DefinableSet::Presburger(b)) => {
                Ok(a.combine(b, |x, y| x || y)?.into())
            }
            (DefinableSet::Product(a), DefinableSet::Product(b)) => {
                self.expect_shape(&other.shape())?;
                Ok(DefinableSet::Product(a.union(b)?))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DefinableSet::Finite(a), DefinableSet::Finite(b)) => Ok(a.combine(b, |x, y| x && y)?.into()),
            (DefinableSet::Presburger(a), DefinableSet::Presburger(b)) => {
                Ok(a.combine(b, |x, y| x && y)?.into())
            }
            (DefinableSet::Product(a), DefinableSet::Product(b)) => {
                self.expect_shape(&other.shape())?;
                Ok(DefinableSet::Product(a.intersection(b)?))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn complement(&self) -> Result<Self> {
        Ok(match self {
            DefinableSet::Finite(a) => a.complement().into(),
            DefinableSet::Presburger(a) => a.complement().into(),
            DefinableSet::Product(p) => DefinableSet::Product(p.complement()?),
        })
    }

    /// `self \ other`.
    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.intersection(&other.complement()?)
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.minus(other)?.is_empty())
    }

    pub fn boolean_op(kind: BoolOp, a: &Self, b: Option<&Self>) -> Result<Self> {
        match (kind, b) {
            (BoolOp::Complement, None) => a.complement(),
            (BoolOp::Union, Some(b)) => a.union(b),
            (BoolOp::Intersection, Some(b)) => a.intersection(b),
            (BoolOp::Complement, Some(_)) => Err(Error::Invalid("complement is unary".into())),
            (_, None) => Err(Error::Invalid("binary operation needs two operands".into())),
        }
    }

    /// Left translate `g·Y`.
    pub fn translate(&self, ctx: &GroupContext, g: &GroupElement) -> Result<Self> {
        self.translate_side(ctx, g, true)
    }

    /// Right translate `Y·g`.
    pub fn right_translate(&self, ctx: &GroupContext, g: &GroupElement) -> Result<Self> {
        self.translate_side(ctx, g, false)
    }

    fn translate_side(&self, ctx: &GroupContext, g: &GroupElement, left: bool) -> Result<Self> {
        ctx.check(g)?;
        self.expect_context(ctx)?;
        match (ctx, self, g) {
            (GroupContext::Finite(grp), DefinableSet::Finite(s), GroupElement::Index(i)) => {
                Ok(s.translate(grp, *i, left).into())
            }
            (GroupContext::Integers, DefinableSet::Presburger(s), GroupElement::Int(x)) => {
                Ok(s.translate(*x)?.into())
            }
            (GroupContext::Product(l, r), DefinableSet::Product(p), GroupElement::Pair(x, y)) => Ok(
                DefinableSet::Product(p.map_rects(|a, b| {
                    Ok((a.translate_side(l, x, left)?, b.translate_side(r, y, left)?))
                })?),
            ),
            _ => Err(mismatch()),
        }
    }

    /// `Y^{-1}`.
    pub fn inverse(&self, ctx: &GroupContext) -> Result<Self> {
        self.expect_context(ctx)?;
        match (ctx, self) {
            (GroupContext::Finite(grp), DefinableSet::Finite(s)) => Ok(s.inverse(grp).into()),
            (GroupContext::Integers, DefinableSet::Presburger(s)) => Ok(s.negate().into()),
            (GroupContext::Product(l, r), DefinableSet::Product(p)) => Ok(DefinableSet::Product(
                p.map_rects(|a, b| Ok((a.inverse(l)?, b.inverse(r)?)))?,
            )),
            _ => Err(mismatch()),
        }
    }

    /// Product set `A·B = {a·b}`.
    pub fn product_set(&self, ctx: &GroupContext, other: &Self) -> Result<Self> {
        self.expect_context(ctx)?;
        other.expect_context(ctx)?;
        match (ctx, self, other) {
            (GroupContext::Finite(grp), DefinableSet::Finite(a), DefinableSet::Finite(b)) => {
                Ok(a.product(b, grp).into())
            }
            (GroupContext::Integers, DefinableSet::Presburger(a), DefinableSet::Presburger(b)) => {
                Ok(a.sumset(b)?.into())
            }
            (GroupContext::Product(l, r), DefinableSet::Product(a), DefinableSet::Product(b)) => {
                Ok(DefinableSet::Product(a.pairwise(b, |(a1, b1), (a2, b2)| {
                    Ok((a1.product_set(l, a2)?, b1.product_set(r, b2)?))
                })?))
            }
            _ => Err(mismatch()),
        }
    }

    /// `Y·Y^{-1}`; the empty set maps to the empty set.
    pub fn difference_set(&self, ctx: &GroupContext) -> Result<Self> {
        self.product_set(ctx, &self.inverse(ctx)?)
    }

    /// Some element of the set, if nonempty.
    pub fn some_element(&self) -> Option<GroupElement> {
        match self {
            DefinableSet::Finite(s) => s.elements().first().map(|&i| GroupElement::Index(i)),
            DefinableSet::Presburger(s) => s.some_member().map(GroupElement::Int),
            DefinableSet::Product(p) => p.rects().first().and_then(|(a, b)| {
                Some(GroupElement::pair(a.some_element()?, b.some_element()?))
            }),
        }
    }
}
