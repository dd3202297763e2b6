//! The semigroup product `p * q` on the level type space.
//!
//! `star` is the closed-form heir rule: realize `p` by `a`, then realize `q`
//! by `b` infinitely far out over `a`; the type of `a·b` keeps the direction
//! of the right factor. `star_via_schema` recomputes the same product
//! without knowing the backend's rule, by evaluating the defining schema of
//! `q` and reading the answer back through membership queries.

use num_integer::Integer;

use crate::defsets::{DefinableSet, PresburgerSet};
use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement};
use crate::typespace::{self, acting_set, apply_group, restrict, Level, LevelTypeSpace, TypePoint};

pub fn star(ctx: &GroupContext, p: &TypePoint, q: &TypePoint) -> Result<TypePoint> {
    p.check(ctx)?;
    q.check(ctx)?;
    star_unchecked(ctx, p, q)
}

fn star_unchecked(ctx: &GroupContext, p: &TypePoint, q: &TypePoint) -> Result<TypePoint> {
    match (ctx, p, q) {
        (_, TypePoint::Realized(g), _) => apply_group(ctx, g, q),
        (
            GroupContext::Integers,
            TypePoint::Limit { sign, residue, modulus },
            TypePoint::Realized(GroupElement::Int(b)),
        ) => {
            let n = *modulus as i64;
            Ok(TypePoint::limit(*sign, (*residue as i64 + b.rem_euclid(n)) % n, Level::new(*modulus)?))
        }
        (
            GroupContext::Integers,
            TypePoint::Limit { residue: a, modulus: m, .. },
            TypePoint::Limit { sign, residue: b, modulus: k },
        ) => {
            let d = m.gcd(k);
            Ok(TypePoint::Limit { sign: *sign, residue: (a + b) % d, modulus: d })
        }
        (GroupContext::Product(l, r), TypePoint::Pair(a1, b1), TypePoint::Pair(a2, b2)) => {
            Ok(TypePoint::pair(star_unchecked(l, a1, a2)?, star_unchecked(r, b1, b2)?))
        }
        _ => Err(Error::ContextMismatch(format!("cannot multiply {p} and {q}"))),
    }
}

/// Brings two limit types to their finest common level (the gcd).
fn unify(ctx: &GroupContext, p: &TypePoint, q: &TypePoint) -> Result<(TypePoint, TypePoint)> {
    match (ctx, p, q) {
        (GroupContext::Integers, TypePoint::Limit { modulus: m, .. }, TypePoint::Limit { modulus: k, .. }) => {
            let d = Level::new(m.gcd(k))?;
            Ok((restrict(p, d)?, restrict(q, d)?))
        }
        (GroupContext::Product(l, r), TypePoint::Pair(a1, b1), TypePoint::Pair(a2, b2)) => {
            let (x1, x2) = unify(l, a1, a2)?;
            let (y1, y2) = unify(r, b1, b2)?;
            Ok((TypePoint::pair(x1, y1), TypePoint::pair(x2, y2)))
        }
        _ => Ok((p.clone(), q.clone())),
    }
}

/// Level at which a product of the two types is to be read back.
fn result_levels(ctx: &GroupContext, p: &TypePoint, q: &TypePoint) -> Vec<u64> {
    match (ctx, p, q) {
        (GroupContext::Product(l, r), TypePoint::Pair(a1, b1), TypePoint::Pair(a2, b2)) => {
            let mut v = result_levels(l, a1, a2);
            v.extend(result_levels(r, b1, b2));
            v
        }
        (GroupContext::Product(..), _, _) => vec![1, 1],
        _ => vec![p.level().max(q.level())],
    }
}

/// `p * q` computed through the definability schema of `q`:
/// `Y ∈ p*q` iff `{g : Y ∈ g·q} ∈ p`.
pub fn star_via_schema(ctx: &GroupContext, p: &TypePoint, q: &TypePoint) -> Result<TypePoint> {
    p.check(ctx)?;
    q.check(ctx)?;
    let (p, q) = unify(ctx, p, q)?;
    let levels = result_levels(ctx, &p, &q);
    let member = |y: &DefinableSet| -> Result<bool> { typespace::contains(&p, &acting_set(ctx, &q, y)?) };
    decode_type(ctx, &levels, &member)
}

/// Reconstructs a type from its membership predicate on probe sets.
pub fn decode_type(
    ctx: &GroupContext,
    levels: &[u64],
    member: &dyn Fn(&DefinableSet) -> Result<bool>,
) -> Result<TypePoint> {
    match ctx {
        GroupContext::Finite(g) => {
            for i in 0..g.order() {
                let single = DefinableSet::from_elements(ctx, &[GroupElement::Index(i)])?;
                if member(&single)? {
                    return Ok(TypePoint::Realized(GroupElement::Index(i)));
                }
            }
            Err(Error::Invalid("no singleton belongs to the type".into()))
        }
        GroupContext::Integers => decode_integer_type(levels[0], member),
        GroupContext::Product(l, r) => {
            let split = component_count(l);
            let full_l = DefinableSet::full(l);
            let full_r = DefinableSet::full(r);
            let left = decode_type(l, &levels[..split], &|a: &DefinableSet| {
                member(&DefinableSet::rectangles(ctx, vec![(a.clone(), full_r.clone())])?)
            })?;
            let right = decode_type(r, &levels[split..], &|b: &DefinableSet| {
                member(&DefinableSet::rectangles(ctx, vec![(full_l.clone(), b.clone())])?)
            })?;
            Ok(TypePoint::pair(left, right))
        }
    }
}

fn component_count(ctx: &GroupContext) -> usize {
    match ctx {
        GroupContext::Product(a, b) => component_count(a) + component_count(b),
        _ => 1,
    }
}

fn decode_integer_type(level: u64, member: &dyn Fn(&DefinableSet) -> Result<bool>) -> Result<TypePoint> {
    // leaves headroom for translating probe rays by realized parameters
    const TOP: i64 = 1 << 59;
    let ge = |t: i64| -> Result<bool> { member(&PresburgerSet::at_least(t)?.into()) };
    let le = |t: i64| -> Result<bool> { member(&PresburgerSet::at_most(t)?.into()) };
    // sign, then boundedness by exponential and binary search on rays
    let nonneg = ge(0)?;
    let bounded = if nonneg {
        let mut below = 0i64;
        let mut t = 1i64;
        loop {
            if !ge(t)? {
                break Some((below, t));
            }
            if t >= TOP {
                break None;
            }
            below = t;
            t *= 2;
        }
    } else {
        let mut above = -1i64;
        let mut t = -2i64;
        loop {
            if !le(t)? {
                break Some((t, above));
            }
            if t <= -TOP {
                break None;
            }
            above = t;
            t *= 2;
        }
    };
    if let Some((mut lo, mut hi)) = bounded {
        // invariant: the value lies in [lo, hi]; narrow with rays
        if nonneg {
            hi -= 1;
        } else {
            lo += 1;
        }
        while lo < hi {
            let mid = lo + (hi - lo + 1) / 2;
            if ge(mid)? {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        if !member(&PresburgerSet::finite(&[lo])?.into())? {
            return Err(Error::Invalid("ray probes are inconsistent".into()));
        }
        return Ok(TypePoint::Realized(GroupElement::Int(lo)));
    }
    let sign = if nonneg { typespace::Sign::Plus } else { typespace::Sign::Minus };
    let mut found = None;
    for r in 0..level {
        if member(&PresburgerSet::periodic(level, &[r])?.into())? {
            if found.is_some() {
                return Err(Error::Invalid("type contains two residue classes".into()));
            }
            found = Some(r);
        }
    }
    let residue = found.ok_or_else(|| Error::Invalid("type contains no residue class".into()))?;
    Ok(TypePoint::Limit { sign, residue, modulus: level })
}

/// The map `r_q : p ↦ p * q`, the unique continuous self-map of the
/// universal ambit sending the identity type to `q`.
#[derive(Clone, Debug)]
pub struct RightTranslation {
    space: LevelTypeSpace,
    target: TypePoint,
}

impl RightTranslation {
    pub fn target(&self) -> &TypePoint {
        &self.target
    }

    pub fn apply(&self, p: &TypePoint) -> Result<TypePoint> {
        star(self.space.ctx(), p, &self.target)
    }

    /// Images of the core points, in core order.
    pub fn core_image(&self) -> Result<Vec<(TypePoint, TypePoint)>> {
        self.space.core_points().into_iter().map(|p| Ok((p.clone(), self.apply(&p)?))).collect()
    }

    /// Checks the ambit-map characterization: identity goes to `q`, the map
    /// is equivariant, and it is continuous along witness sequences.
    pub fn certify(&self) -> Result<()> {
        let ctx = self.space.ctx();
        let id = TypePoint::realized(ctx.identity());
        if self.apply(&id)? != self.target {
            return Err(Error::Invalid("r_q does not send the identity to q".into()));
        }
        for p in self.space.core_points() {
            let image = self.apply(&p)?;
            for g in self.space.generators() {
                let lhs = self.apply(&apply_group(ctx, &g, &p)?)?;
                let rhs = apply_group(ctx, &g, &image)?;
                if lhs != rhs {
                    return Err(Error::Invalid(format!("r_q is not equivariant at {p}")));
                }
            }
            for a in typespace::witness_elements(&p).skip(64).take(4) {
                let near = self.apply(&TypePoint::realized(a))?;
                if !in_neighbourhood(&near, &image, 32) {
                    return Err(Error::Invalid(format!("r_q is not continuous at {p}")));
                }
            }
        }
        Ok(())
    }
}

/// Is `x` in the basic neighbourhood of `target` with threshold `bound`?
pub fn in_neighbourhood(x: &TypePoint, target: &TypePoint, bound: i64) -> bool {
    match (x, target) {
        (_, TypePoint::Realized(_)) => x == target,
        (TypePoint::Realized(GroupElement::Int(v)), TypePoint::Limit { sign, residue, modulus }) => {
            v.rem_euclid(*modulus as i64) == *residue as i64 && sign.factor() * v > bound
        }
        (TypePoint::Limit { sign: s, residue: b, modulus: m }, TypePoint::Limit { sign, residue, modulus }) => {
            s == sign && m % modulus == 0 && b % modulus == *residue
        }
        (TypePoint::Pair(a, b), TypePoint::Pair(c, d)) => {
            in_neighbourhood(a, c, bound) && in_neighbourhood(b, d, bound)
        }
        _ => false,
    }
}

pub fn right_translation(space: &LevelTypeSpace, q: &TypePoint) -> Result<RightTranslation> {
    q.check(space.ctx())?;
    let r = RightTranslation { space: space.clone(), target: q.clone() };
    r.certify()?;
    Ok(r)
}

/// Idempotents `p * p = p` of the limit part.
pub fn find_idempotents(space: &LevelTypeSpace) -> Result<Vec<TypePoint>> {
    let mut out = Vec::new();
    for p in space.core_points() {
        if star(space.ctx(), &p, &p)? == p {
            out.push(p);
        }
    }
    Ok(out)
}
