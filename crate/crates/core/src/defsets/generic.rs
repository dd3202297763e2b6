//! Left genericity: does a finite set of left translates of `Y` cover `G`?
//!
//! A clopen set is generic exactly when it meets every orbit of the type
//! space, and the orbits are classified by their shape (which coordinates
//! are realized, and the sign of each non-realized coordinate). The
//! certificate is built greedily: repeatedly pick a type of the uncovered
//! residue, preferring the most non-realized shape, and add the translate of
//! `Y` that moves a type of the same shape onto it.

use num_integer::Integer;

use super::DefinableSet;
use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement};
use crate::typespace::{Sign, TypePoint};

const MAX_STEPS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeShape {
    Realized,
    Limit(Sign),
    Pair(Box<TypeShape>, Box<TypeShape>),
}

impl TypeShape {
    pub fn all(ctx: &GroupContext) -> Vec<TypeShape> {
        match ctx {
            GroupContext::Integers => {
                vec![TypeShape::Limit(Sign::Plus), TypeShape::Limit(Sign::Minus), TypeShape::Realized]
            }
            GroupContext::Finite(_) => vec![TypeShape::Realized],
            GroupContext::Product(l, r) => {
                let left = Self::all(l);
                let right = Self::all(r);
                let mut out: Vec<TypeShape> = left
                    .iter()
                    .flat_map(|a| right.iter().map(move |b| TypeShape::Pair(Box::new(a.clone()), Box::new(b.clone()))))
                    .collect();
                out.sort_by_key(|s| std::cmp::Reverse(s.limit_count()));
                out
            }
        }
    }

    fn limit_count(&self) -> usize {
        match self {
            TypeShape::Realized => 0,
            TypeShape::Limit(_) => 1,
            TypeShape::Pair(a, b) => a.limit_count() + b.limit_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The set has an empty eventual pattern in this direction.
    MissingDirection(Sign),
    Empty,
    /// No type of this shape lies in the set (products).
    MissingShape(TypeShape),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Genericity {
    Generic { translates: Vec<GroupElement> },
    NotGeneric { obstruction: Obstruction },
}

impl Genericity {
    pub fn is_generic(&self) -> bool {
        matches!(self, Genericity::Generic { .. })
    }
}

/// A type of the given shape inside `Y`, at a level divisible by `Y`'s period.
fn pick_type(y: &DefinableSet, shape: &TypeShape, level: u64) -> Option<TypePoint> {
    match (y, shape) {
        (_, TypeShape::Realized) if !matches!(y, DefinableSet::Product(_)) => {
            y.some_element().map(TypePoint::Realized)
        }
        (DefinableSet::Presburger(s), TypeShape::Limit(sign)) => {
            let tail = s.tail(sign.is_up());
            (0..level)
                .find(|r| tail[(r % s.modulus()) as usize])
                .map(|r| TypePoint::Limit { sign: *sign, residue: r, modulus: level })
        }
        (DefinableSet::Product(p), TypeShape::Pair(sa, sb)) => p.rects().iter().find_map(|(a, b)| {
            Some(TypePoint::pair(pick_type(a, sa, level)?, pick_type(b, sb, level)?))
        }),
        _ => None,
    }
}

/// `g` with `g·from = to`, for two types of the same shape and level.
fn translation_between(ctx: &GroupContext, from: &TypePoint, to: &TypePoint) -> Result<GroupElement> {
    match (ctx, from, to) {
        (_, TypePoint::Realized(a), TypePoint::Realized(b)) => ctx.compose(b, &ctx.invert(a)?),
        (GroupContext::Integers, TypePoint::Limit { residue: b, .. }, TypePoint::Limit { residue: a, .. }) => {
            Ok(GroupElement::Int(*a as i64 - *b as i64))
        }
        (GroupContext::Product(l, r), TypePoint::Pair(a1, b1), TypePoint::Pair(a2, b2)) => {
            Ok(GroupElement::pair(translation_between(l, a1, a2)?, translation_between(r, b1, b2)?))
        }
        _ => Err(Error::Invalid(format!("types {from} and {to} have different shapes"))),
    }
}

fn covers(ctx: &GroupContext, y: &DefinableSet, translates: &[GroupElement]) -> Result<bool> {
    let mut union = DefinableSet::empty(ctx);
    for g in translates {
        union = union.union(&y.translate(ctx, g)?)?;
    }
    Ok(union.is_all())
}

/// Decides left genericity of `Y` and returns either a verified translate
/// cover or an obstruction.
pub fn is_left_generic(ctx: &GroupContext, y: &DefinableSet) -> Result<Genericity> {
    y.expect_context(ctx)?;
    let shapes = TypeShape::all(ctx);
    let period = y.period();
    if let Some(missing) = shapes.iter().find(|s| pick_type(y, s, period).is_none()) {
        let obstruction = match missing {
            _ if y.is_empty() && !ctx.has_integers() => Obstruction::Empty,
            TypeShape::Limit(sign) => Obstruction::MissingDirection(*sign),
            TypeShape::Realized => Obstruction::Empty,
            other => Obstruction::MissingShape(other.clone()),
        };
        return Ok(Genericity::NotGeneric { obstruction });
    }

    let mut translates: Vec<GroupElement> = Vec::new();
    let mut residual = DefinableSet::full(ctx);
    let mut steps = 0;
    while !residual.is_empty() {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::Invalid("translate cover search did not terminate".into()));
        }
        let level = residual.period().lcm(&period);
        let (target, source) = shapes
            .iter()
            .find_map(|s| Some((pick_type(&residual, s, level)?, pick_type(y, s, level)?)))
            .ok_or_else(|| Error::Invalid("residual has a type of a shape missing from Y".into()))?;
        let g = translation_between(ctx, &source, &target)?;
        residual = residual.minus(&y.translate(ctx, &g)?)?;
        translates.push(g);
    }

    let mut i = translates.len();
    while i > 0 {
        i -= 1;
        let mut fewer = translates.clone();
        fewer.remove(i);
        if covers(ctx, y, &fewer)? {
            translates = fewer;
        }
    }
    debug_assert!(covers(ctx, y, &translates)?);
    Ok(Genericity::Generic { translates })
}

/// Re-verifies a translate cover with the Boolean operations.
pub fn verify_cover(ctx: &GroupContext, y: &DefinableSet, translates: &[GroupElement]) -> Result<bool> {
    covers(ctx, y, translates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defsets::PresburgerSet;

    fn z() -> GroupContext {
        GroupContext::Integers
    }

    #[test]
    fn evens_generic_with_two_translates() {
        let evens: DefinableSet = PresburgerSet::evens().into();
        let v = is_left_generic(&z(), &evens).unwrap();
        assert_eq!(v, Genericity::Generic { translates: vec![GroupElement::Int(0), GroupElement::Int(1)] });
    }

    #[test]
    fn ray_not_generic() {
        let ray: DefinableSet = PresburgerSet::at_least(0).unwrap().into();
        assert_eq!(
            is_left_generic(&z(), &ray).unwrap(),
            Genericity::NotGeneric { obstruction: Obstruction::MissingDirection(Sign::Minus) }
        );
    }

    #[test]
    fn finite_sets() {
        let c5 = GroupContext::cyclic(5).unwrap();
        let y = DefinableSet::from_elements(&c5, &[GroupElement::Index(2)]).unwrap();
        match is_left_generic(&c5, &y).unwrap() {
            Genericity::Generic { translates } => {
                assert!(translates.len() <= 5);
                assert!(verify_cover(&c5, &y, &translates).unwrap());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            is_left_generic(&c5, &DefinableSet::empty(&c5)).unwrap(),
            Genericity::NotGeneric { obstruction: Obstruction::Empty }
        );
    }

    #[test]
    fn holey_generic_set() {
        // multiples of 3 away from a gap around 0
        let bits = vec![false; 11];
        let y: DefinableSet =
            PresburgerSet::new(3, vec![true, false, false], vec![true, false, false], -5, 5, bits).unwrap().into();
        match is_left_generic(&z(), &y).unwrap() {
            Genericity::Generic { translates } => assert!(verify_cover(&z(), &y, &translates).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn product_shapes() {
        let c2 = GroupContext::cyclic(2).unwrap();
        let ctx = GroupContext::product(z(), c2.clone()).unwrap();
        let up: DefinableSet = PresburgerSet::at_least(0).unwrap().into();
        let down: DefinableSet = PresburgerSet::at_most(-1).unwrap().into();
        let e0 = DefinableSet::from_elements(&c2, &[GroupElement::Index(0)]).unwrap();
        let e1 = DefinableSet::from_elements(&c2, &[GroupElement::Index(1)]).unwrap();
        let y = DefinableSet::rectangles(&ctx, vec![(up.clone(), e0.clone()), (down, e1)]).unwrap();
        match is_left_generic(&ctx, &y).unwrap() {
            Genericity::Generic { translates } => assert!(verify_cover(&ctx, &y, &translates).unwrap()),
            other => panic!("{other:?}"),
        }
        let half = DefinableSet::rectangles(&ctx, vec![(up, e0)]).unwrap();
        assert!(matches!(
            is_left_generic(&ctx, &half).unwrap(),
            Genericity::NotGeneric { obstruction: Obstruction::MissingShape(_) }
        ));
    }
}
