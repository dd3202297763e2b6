//! Complete types over a backend at a finite congruence level.
//!
//! Realized types are kept exact. Non-realized types of the integers are
//! truncated to a sign direction and a residue modulo the level `n`; these
//! form the finite "limit part" of the level space. Realized points are
//! isolated, and every subset of the limit part is closed.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::defsets::{DefinableSet, PresburgerSet};
use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }

    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_up(self) -> bool {
        self == Sign::Plus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_up() { "+" } else { "-" })
    }
}

/// Truncation level: a congruence modulus `n >= 1`. Finite backends ignore it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Level(u64);

impl Level {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            Err(Error::ZeroLevel)
        } else {
            Ok(Level(n))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn divides(self, other: Level) -> bool {
        other.0 % self.0 == 0
    }

    /// All levels dividing this one, ascending.
    pub fn divisors(self) -> Vec<Level> {
        (1..=self.0).filter(|d| self.0 % d == 0).map(Level).collect()
    }
}

impl TryFrom<u64> for Level {
    type Error = Error;
    fn try_from(n: u64) -> Result<Self> {
        Level::new(n)
    }
}

impl From<Level> for u64 {
    fn from(l: Level) -> u64 {
        l.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypePoint {
    /// The type of a group element (never a pair; products use `Pair`).
    Realized(GroupElement),
    /// A non-realized type of the integers at level `modulus`.
    Limit { sign: Sign, residue: u64, modulus: u64 },
    /// A type of a product backend, relative to the rectangle algebra.
    Pair(Box<TypePoint>, Box<TypePoint>),
}

impl fmt::Display for TypePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypePoint::Realized(g) => write!(f, "tp({g})"),
            TypePoint::Limit { sign, residue, modulus } => write!(f, "({sign}, {residue} mod {modulus})"),
            TypePoint::Pair(a, b) => write!(f, "<{a}, {b}>"),
        }
    }
}

impl TypePoint {
    pub fn limit(sign: Sign, residue: i64, level: Level) -> Self {
        TypePoint::Limit { sign, residue: residue.rem_euclid(level.get() as i64) as u64, modulus: level.get() }
    }

    pub fn pair(a: TypePoint, b: TypePoint) -> Self {
        TypePoint::Pair(Box::new(a), Box::new(b))
    }

    /// The realized type of `g`, split into components on product backends.
    pub fn realized(g: GroupElement) -> Self {
        match g {
            GroupElement::Pair(a, b) => TypePoint::pair(Self::realized(*a), Self::realized(*b)),
            other => TypePoint::Realized(other),
        }
    }

    pub fn is_realized(&self) -> bool {
        match self {
            TypePoint::Realized(_) => true,
            TypePoint::Limit { .. } => false,
            TypePoint::Pair(a, b) => a.is_realized() && b.is_realized(),
        }
    }

    /// The element realizing this type, if any.
    pub fn realizer(&self) -> Option<GroupElement> {
        match self {
            TypePoint::Realized(g) => Some(g.clone()),
            TypePoint::Limit { .. } => None,
            TypePoint::Pair(a, b) => Some(GroupElement::pair(a.realizer()?, b.realizer()?)),
        }
    }

    /// Finest level at which the type is specified (1 when fully realized).
    pub fn level(&self) -> u64 {
        match self {
            TypePoint::Realized(_) => 1,
            TypePoint::Limit { modulus, .. } => *modulus,
            TypePoint::Pair(a, b) => a.level().lcm(&b.level()),
        }
    }

    pub fn check(&self, ctx: &GroupContext) -> Result<()> {
        match (ctx, self) {
            (GroupContext::Product(..), TypePoint::Realized(_)) => Err(Error::ContextMismatch(
                "product types are written as pairs".into(),
            )),
            (_, TypePoint::Realized(g)) => ctx.check(g),
            (GroupContext::Integers, TypePoint::Limit { residue, modulus, .. }) if residue < modulus => Ok(()),
            (GroupContext::Product(l, r), TypePoint::Pair(a, b)) => {
                a.check(l)?;
                b.check(r)
            }
            _ => Err(Error::ContextMismatch(format!("type {self} does not belong to {ctx}"))),
        }
    }
}

/// Does the type `p` contain the definable set `Y`?
pub fn contains(p: &TypePoint, y: &DefinableSet) -> Result<bool> {
    match (p, y) {
        (TypePoint::Realized(g), _) => y.contains_element(g),
        (TypePoint::Limit { sign, residue, modulus }, DefinableSet::Presburger(s)) => {
            if modulus % s.modulus() != 0 {
                return Err(Error::LevelMismatch { period: s.modulus(), level: *modulus });
            }
            Ok(s.tail(sign.is_up())[(residue % s.modulus()) as usize])
        }
        (TypePoint::Pair(a, b), DefinableSet::Product(ps)) => {
            for (ra, rb) in ps.rects() {
                if contains(a, ra)? && contains(b, rb)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        _ => Err(Error::ContextMismatch(format!("type {p} and set are over different backends"))),
    }
}

/// Restriction of a type to a coarser level `m`.
pub fn restrict(p: &TypePoint, m: Level) -> Result<TypePoint> {
    match p {
        TypePoint::Realized(_) => Ok(p.clone()),
        TypePoint::Limit { sign, residue, modulus } => {
            if modulus % m.get() != 0 {
                return Err(Error::NotADivisor { target: m.get(), level: *modulus });
            }
            Ok(TypePoint::Limit { sign: *sign, residue: residue % m.get(), modulus: m.get() })
        }
        TypePoint::Pair(a, b) => Ok(TypePoint::pair(restrict(a, m)?, restrict(b, m)?)),
    }
}

/// Left action `g·p`.
pub fn apply_group(ctx: &GroupContext, g: &GroupElement, p: &TypePoint) -> Result<TypePoint> {
    ctx.check(g)?;
    p.check(ctx)?;
    apply_unchecked(ctx, g, p)
}

fn apply_unchecked(ctx: &GroupContext, g: &GroupElement, p: &TypePoint) -> Result<TypePoint> {
    match (ctx, g, p) {
        (_, _, TypePoint::Realized(h)) => Ok(TypePoint::Realized(ctx.compose(g, h)?)),
        (GroupContext::Integers, GroupElement::Int(x), TypePoint::Limit { sign, residue, modulus }) => {
            let n = *modulus as i64;
            let r = (*residue as i64 + x.rem_euclid(n)).rem_euclid(n);
            Ok(TypePoint::Limit { sign: *sign, residue: r as u64, modulus: *modulus })
        }
        (GroupContext::Product(l, r), GroupElement::Pair(x, y), TypePoint::Pair(a, b)) => {
            Ok(TypePoint::pair(apply_unchecked(l, x, a)?, apply_unchecked(r, y, b)?))
        }
        _ => Err(Error::ContextMismatch(format!("cannot act by {g} on {p}"))),
    }
}

/// `{g ∈ G : Y ∈ g·p}`, always a definable set: the defining schema of `p`
/// evaluated at `Y`.
pub fn acting_set(ctx: &GroupContext, p: &TypePoint, y: &DefinableSet) -> Result<DefinableSet> {
    p.check(ctx)?;
    y.expect_context(ctx)?;
    match (ctx, p, y) {
        (_, TypePoint::Realized(h), _) => y.right_translate(ctx, &ctx.invert(h)?),
        (GroupContext::Integers, TypePoint::Limit { sign, residue, modulus }, DefinableSet::Presburger(s)) => {
            let d = s.modulus();
            if modulus % d != 0 {
                return Err(Error::LevelMismatch { period: d, level: *modulus });
            }
            let tail = s.tail(sign.is_up());
            let residues: Vec<u64> =
                (0..d).filter(|&g| tail[((residue + g) % d) as usize]).collect();
            Ok(PresburgerSet::periodic(d, &residues)?.into())
        }
        (GroupContext::Product(l, r), TypePoint::Pair(a, b), DefinableSet::Product(ps)) => {
            let mut out = DefinableSet::empty(ctx);
            for (ra, rb) in ps.rects() {
                let rect = DefinableSet::rectangles(ctx, vec![(acting_set(l, a, ra)?, acting_set(r, b, rb)?)])?;
                out = out.union(&rect)?;
            }
            Ok(out)
        }
        _ => Err(Error::ContextMismatch("type and set over different backends".into())),
    }
}

/// Realized points `a_k = σ·k·n + r` converging to `Limit(σ, r mod n)`.
#[derive(Clone, Debug)]
pub struct WitnessSequence {
    sign: Sign,
    residue: i64,
    step: i64,
    k: i64,
}

impl Iterator for WitnessSequence {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        let v = self.k.checked_mul(self.step)?.checked_mul(self.sign.factor())?.checked_add(self.residue)?;
        self.k += 1;
        Some(v)
    }
}

pub fn limit_of(sign: Sign, residue: i64, level: Level) -> (TypePoint, WitnessSequence) {
    let n = level.get() as i64;
    let r = residue.rem_euclid(n);
    (
        TypePoint::limit(sign, r, level),
        WitnessSequence { sign, residue: r, step: n, k: 0 },
    )
}

/// Realized elements converging to `p` (constant on realized components).
pub fn witness_elements(p: &TypePoint) -> Box<dyn Iterator<Item = GroupElement>> {
    match p {
        TypePoint::Realized(g) => {
            let g = g.clone();
            Box::new(std::iter::repeat(g))
        }
        TypePoint::Limit { sign, residue, modulus } => {
            let (_, seq) = limit_of(*sign, *residue as i64, Level(*modulus));
            Box::new(seq.map(GroupElement::Int))
        }
        TypePoint::Pair(a, b) => {
            Box::new(witness_elements(a).zip(witness_elements(b)).map(|(x, y)| GroupElement::pair(x, y)))
        }
    }
}

/// The type space of a backend at a level: realized points (symbolic) and
/// the finite core of non-isolated points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTypeSpace {
    ctx: GroupContext,
    level: Level,
}

impl LevelTypeSpace {
    pub fn new(ctx: GroupContext, level: Level) -> Self {
        LevelTypeSpace { ctx, level }
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// The limit part: for the integers `{+,-} × Z/n`; for a finite group
    /// the group itself; for products the cartesian product.
    pub fn core_points(&self) -> Vec<TypePoint> {
        core_of(&self.ctx, self.level)
    }

    pub fn is_core(&self, p: &TypePoint) -> bool {
        match (&self.ctx, p) {
            (GroupContext::Integers, TypePoint::Limit { modulus, .. }) => *modulus == self.level.get(),
            (GroupContext::Finite(_), TypePoint::Realized(_)) => p.check(&self.ctx).is_ok(),
            (GroupContext::Product(l, r), TypePoint::Pair(a, b)) => {
                LevelTypeSpace::new((**l).clone(), self.level).is_core(a)
                    && LevelTypeSpace::new((**r).clone(), self.level).is_core(b)
            }
            _ => false,
        }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.ctx.generators()
    }

    /// Group elements whose action on the core realizes every translation
    /// of the core (residues `0..n` for the integers).
    pub fn core_translations(&self) -> Vec<GroupElement> {
        translations_of(&self.ctx, self.level)
    }

    pub fn act(&self, g: &GroupElement, p: &TypePoint) -> Result<TypePoint> {
        apply_group(&self.ctx, g, p)
    }
}

fn core_of(ctx: &GroupContext, level: Level) -> Vec<TypePoint> {
    match ctx {
        GroupContext::Integers => Sign::both()
            .into_iter()
            .flat_map(|s| (0..level.get()).map(move |r| TypePoint::Limit { sign: s, residue: r, modulus: level.get() }))
            .collect(),
        GroupContext::Finite(g) => (0..g.order()).map(|i| TypePoint::Realized(GroupElement::Index(i))).collect(),
        GroupContext::Product(l, r) => {
            let left = core_of(l, level);
            let right = core_of(r, level);
            left.iter()
                .flat_map(|a| right.iter().map(move |b| TypePoint::pair(a.clone(), b.clone())))
                .collect()
        }
    }
}

fn translations_of(ctx: &GroupContext, level: Level) -> Vec<GroupElement> {
    match ctx {
        GroupContext::Integers => (0..level.get() as i64).map(GroupElement::Int).collect(),
        GroupContext::Finite(g) => (0..g.order()).map(GroupElement::Index).collect(),
        GroupContext::Product(l, r) => {
            let left = translations_of(l, level);
            let right = translations_of(r, level);
            left.iter()
                .flat_map(|a| right.iter().map(move |b| GroupElement::pair(a.clone(), b.clone())))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    fn lim(s: Sign, r: i64, n: u64) -> TypePoint {
        TypePoint::limit(s, r, lv(n))
    }

    fn z() -> GroupContext {
        GroupContext::Integers
    }

    #[test]
    fn contains_examples() {
        let evens: DefinableSet = PresburgerSet::evens().into();
        let nonneg: DefinableSet = PresburgerSet::at_least(0).unwrap().into();
        assert!(!contains(&lim(Sign::Plus, 1, 2), &evens).unwrap());
        assert!(!contains(&lim(Sign::Minus, 0, 2), &nonneg).unwrap());
        assert!(contains(&TypePoint::Realized(GroupElement::Int(6)), &evens).unwrap());
        let mod3: DefinableSet = PresburgerSet::periodic(3, &[0]).unwrap().into();
        assert!(matches!(contains(&lim(Sign::Plus, 0, 4), &mod3), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(restrict(&lim(Sign::Plus, 5, 6), lv(3)).unwrap(), lim(Sign::Plus, 2, 3));
        assert_eq!(restrict(&lim(Sign::Minus, 5, 6), lv(6)).unwrap(), lim(Sign::Minus, 5, 6));
        let r7 = TypePoint::Realized(GroupElement::Int(7));
        assert_eq!(restrict(&r7, lv(5)).unwrap(), r7);
        assert!(matches!(restrict(&lim(Sign::Plus, 1, 6), lv(4)), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn apply_group_examples() {
        let one = GroupElement::Int(1);
        assert_eq!(apply_group(&z(), &one, &lim(Sign::Plus, 0, 2)).unwrap(), lim(Sign::Plus, 1, 2));
        for p in LevelTypeSpace::new(z(), lv(5)).core_points() {
            assert_eq!(apply_group(&z(), &GroupElement::Int(0), &p).unwrap(), p);
        }
        assert_eq!(
            apply_group(&z(), &GroupElement::Int(3), &lim(Sign::Minus, 1, 4)).unwrap(),
            lim(Sign::Minus, 0, 4)
        );
        assert_eq!(
            apply_group(&z(), &GroupElement::Int(-7), &lim(Sign::Minus, 1, 4)).unwrap(),
            lim(Sign::Minus, 2, 4)
        );
        let c3 = GroupContext::cyclic(3).unwrap();
        assert!(apply_group(&c3, &one, &lim(Sign::Plus, 0, 2)).is_err());
    }

    #[test]
    fn acting_set_examples() {
        let y: DefinableSet = PresburgerSet::periodic(3, &[1]).unwrap().into();
        let a = acting_set(&z(), &lim(Sign::Plus, 0, 3), &y).unwrap();
        assert_eq!(a, y);
        // membership oracle over sampled g
        for g in -30..=30 {
            let moved = apply_group(&z(), &GroupElement::Int(g), &lim(Sign::Plus, 0, 3)).unwrap();
            assert_eq!(a.contains_element(&GroupElement::Int(g)).unwrap(), contains(&moved, &y).unwrap());
        }
        let nonneg: DefinableSet = PresburgerSet::at_least(0).unwrap().into();
        assert_eq!(acting_set(&z(), &TypePoint::Realized(GroupElement::Int(0)), &nonneg).unwrap(), nonneg);
        assert!(acting_set(&z(), &lim(Sign::Minus, 0, 2), &nonneg).unwrap().is_empty());
    }

    #[test]
    fn limit_of_examples() {
        let (p, seq) = limit_of(Sign::Plus, 1, lv(4));
        assert_eq!(p, lim(Sign::Plus, 1, 4));
        assert_eq!(seq.take(3).collect::<Vec<_>>(), vec![1, 5, 9]);
        let (q, _) = limit_of(Sign::Minus, 0, lv(1));
        assert_eq!(q, lim(Sign::Minus, 0, 1));
        let (p6, _) = limit_of(Sign::Plus, 5, lv(6));
        assert_eq!(restrict(&p6, lv(2)).unwrap(), limit_of(Sign::Plus, 1, lv(2)).0);
    }

    #[test]
    fn witness_sequences_converge() {
        let sets: Vec<DefinableSet> = vec![
            PresburgerSet::evens().into(),
            PresburgerSet::at_least(10).unwrap().into(),
            PresburgerSet::new(3, vec![true, false, true], vec![false, true, false], -4, 4,
                vec![true; 9]).unwrap().into(),
        ];
        for s in Sign::both() {
            for r in 0..6 {
                let (p, seq) = limit_of(s, r, lv(6));
                let tail: Vec<i64> = seq.skip(20).take(10).collect();
                for y in &sets {
                    let want = contains(&p, y).unwrap();
                    for a in &tail {
                        assert_eq!(y.contains_element(&GroupElement::Int(*a)).unwrap(), want);
                    }
                }
            }
        }
    }

    #[test]
    fn product_types() {
        let ctx = GroupContext::product(z(), GroupContext::cyclic(2).unwrap()).unwrap();
        let space = LevelTypeSpace::new(ctx.clone(), lv(3));
        assert_eq!(space.core_points().len(), 12);
        let p = TypePoint::pair(lim(Sign::Plus, 2, 3), TypePoint::Realized(GroupElement::Index(1)));
        let g = GroupElement::pair(GroupElement::Int(1), GroupElement::Index(1));
        assert_eq!(
            apply_group(&ctx, &g, &p).unwrap(),
            TypePoint::pair(lim(Sign::Plus, 0, 3), TypePoint::Realized(GroupElement::Index(0)))
        );
        assert!(TypePoint::Realized(g.clone()).check(&ctx).is_err());
        assert!(TypePoint::realized(g).check(&ctx).is_ok());
    }
}
