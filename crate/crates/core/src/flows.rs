//! Definable flows on finite carriers, the universal ambit at a level, and
//! its minimal subflows.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::ellis::{find_idempotents, star};
use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement};
use crate::typespace::{self, apply_group, Level, LevelTypeSpace, TypePoint};

/// How the group acts on the carrier `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowAction {
    /// The integers, by the powers of one permutation (the action of 1).
    Shift(Vec<usize>),
    /// A finite group: row `g` is the permutation by which `g` acts.
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFlow {
    ctx: GroupContext,
    carrier: usize,
    action: FlowAction,
    base: Option<usize>,
}

fn is_permutation(p: &[usize], k: usize) -> bool {
    let mut seen = vec![false; k];
    p.len() == k && p.iter().all(|&x| x < k && !std::mem::replace(&mut seen[x], true))
}

impl FiniteFlow {
    pub fn new(ctx: GroupContext, carrier: usize, action: FlowAction, base: Option<usize>) -> Result<Self> {
        match (&ctx, &action) {
            (GroupContext::Integers, FlowAction::Shift(_)) => {}
            (GroupContext::Finite(g), FlowAction::Table(rows)) if rows.len() == g.order() => {}
            (GroupContext::Product(..), _) => {
                return Err(Error::Unsupported("finite flows over product backends".into()))
            }
            _ => return Err(Error::ContextMismatch("flow action does not match the backend".into())),
        }
        if carrier == 0 {
            return Err(Error::Invalid("flow carrier must be nonempty".into()));
        }
        if let Some(b) = base {
            if b >= carrier {
                return Err(Error::Invalid(format!("base point {b} outside carrier of size {carrier}")));
            }
        }
        Ok(FiniteFlow { ctx, carrier, action, base })
    }

    /// An integer flow given by the permutation `pi`.
    pub fn integers(pi: Vec<usize>, base: Option<usize>) -> Result<Self> {
        let k = pi.len();
        Self::new(GroupContext::Integers, k, FlowAction::Shift(pi), base)
    }

    /// The trivial flow on one point.
    pub fn trivial(ctx: &GroupContext) -> Result<Self> {
        let action = match ctx {
            GroupContext::Finite(g) => FlowAction::Table(vec![vec![0]; g.order()]),
            _ => FlowAction::Shift(vec![0]),
        };
        Self::new(ctx.clone(), 1, action, Some(0))
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn action(&self) -> &FlowAction {
        &self.action
    }

    pub fn base(&self) -> Option<usize> {
        self.base
    }

    /// Smallest `d >= 1` with `π^d(x) = x` (integers), or 1 on finite groups.
    pub fn orbit_period(&self, x: usize) -> u64 {
        match &self.action {
            FlowAction::Shift(pi) => {
                let mut y = pi[x];
                let mut d = 1;
                while y != x && d <= self.carrier as u64 {
                    y = pi[y];
                    d += 1;
                }
                d
            }
            FlowAction::Table(_) => 1,
        }
    }

    /// `g·x`.
    pub fn act(&self, g: &GroupElement, x: usize) -> Result<usize> {
        self.ctx.check(g)?;
        match (&self.action, g) {
            (FlowAction::Shift(pi), GroupElement::Int(k)) => {
                let d = self.orbit_period(x) as i64;
                let mut y = x;
                for _ in 0..k.rem_euclid(d) {
                    y = pi[y];
                }
                Ok(y)
            }
            (FlowAction::Table(rows), GroupElement::Index(i)) => Ok(rows[*i][x]),
            _ => Err(Error::ContextMismatch("element does not act on this flow".into())),
        }
    }

    /// Orbits of the action, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let movers: Vec<Vec<usize>> = match &self.action {
            FlowAction::Shift(pi) => vec![pi.clone()],
            FlowAction::Table(rows) => rows.clone(),
        };
        let mut seen = vec![false; self.carrier];
        let mut out = Vec::new();
        for start in 0..self.carrier {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for m in &movers {
                    if !seen[m[x]] {
                        seen[m[x]] = true;
                        orbit.push(m[x]);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowVerdict {
    /// Level at which each orbit map `g ↦ g·x` is definable.
    pub orbit_levels: Vec<u64>,
    pub orbits: Vec<Vec<usize>>,
    pub is_ambit: bool,
}

/// Checks that a presentation is a definable flow and reports orbit levels.
pub fn check_definable_flow(flow: &FiniteFlow) -> Result<FlowVerdict> {
    let k = flow.carrier;
    match (&flow.ctx, &flow.action) {
        (GroupContext::Integers, FlowAction::Shift(pi)) => {
            if !is_permutation(pi, k) {
                return Err(Error::NonBijective("the action of 1 is not a permutation".into()));
            }
        }
        (GroupContext::Finite(g), FlowAction::Table(rows)) => {
            for (i, row) in rows.iter().enumerate() {
                if !is_permutation(row, k) {
                    return Err(Error::NonBijective(format!("element #{i} does not act bijectively")));
                }
            }
            if rows[g.identity()].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::RelationViolation("the identity acts nontrivially".into()));
            }
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let ab = g.mul(a, b);
                    if (0..k).any(|x| rows[ab][x] != rows[a][rows[b][x]]) {
                        return Err(Error::RelationViolation(format!(
                            "action of #{a}·#{b} is not the composite of the actions"
                        )));
                    }
                }
            }
        }
        _ => return Err(Error::Unsupported("flow presentation".into())),
    }
    let orbits = flow.orbits();
    let is_ambit = flow.base.map_or(false, |b| orbits.iter().any(|o| o.len() == k && o.contains(&b)));
    Ok(FlowVerdict { orbit_levels: (0..k).map(|x| flow.orbit_period(x)).collect(), orbits, is_ambit })
}

/// The map from the level type space onto an ambit sending `tp(1)` to the
/// base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbitMorphism {
    space: LevelTypeSpace,
    flow: FiniteFlow,
    core_values: Vec<(TypePoint, usize)>,
}

impl AmbitMorphism {
    pub fn core_values(&self) -> &[(TypePoint, usize)] {
        &self.core_values
    }

    pub fn apply(&self, p: &TypePoint) -> Result<usize> {
        let base = self.flow.base.expect("ambit has a base point");
        match p {
            TypePoint::Realized(g) => self.flow.act(g, base),
            TypePoint::Limit { .. } => {
                let q = typespace::restrict(p, self.space.level()).map_err(|_| Error::LevelTooCoarse {
                    period: p.level(),
                    level: self.space.level().get(),
                })?;
                self.core_values
                    .iter()
                    .find(|(c, _)| *c == q)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| Error::Invalid(format!("{p} is outside the level space")))
            }
            TypePoint::Pair(..) => Err(Error::Unsupported("ambit morphisms over product backends".into())),
        }
    }
}

/// `h(g) = g·x₀`, extended to limit types along witness sequences.
pub fn universal_ambit_morphism(space: &LevelTypeSpace, flow: &FiniteFlow) -> Result<AmbitMorphism> {
    let verdict = check_definable_flow(flow)?;
    if !verdict.is_ambit {
        return Err(Error::Invalid("the flow is not an ambit (base orbit is not dense)".into()));
    }
    if flow.ctx != *space.ctx() {
        return Err(Error::ContextMismatch("flow and type space over different backends".into()));
    }
    let base = flow.base.expect("ambit");
    let n = space.level().get();
    let d = flow.orbit_period(base);
    if n % d != 0 {
        return Err(Error::LevelTooCoarse { period: d, level: n });
    }
    let mut core_values = Vec::new();
    for p in space.core_points() {
        let value = match &p {
            TypePoint::Limit { residue, .. } => flow.act(&GroupElement::Int(*residue as i64), base)?,
            TypePoint::Realized(g) => flow.act(g, base)?,
            TypePoint::Pair(..) => return Err(Error::Unsupported("ambit morphisms over product backends".into())),
        };
        // the orbit map along the witness sequence must have stabilized
        for a in typespace::witness_elements(&p).skip(16).take(8) {
            if flow.act(&a, base)? != value {
                return Err(Error::LevelTooCoarse { period: d, level: n });
            }
        }
        core_values.push((p, value));
    }
    let h = AmbitMorphism { space: space.clone(), flow: flow.clone(), core_values };
    // equivariance on the core; on the realized part it holds by definition
    for (p, v) in &h.core_values {
        for g in space.generators() {
            if h.apply(&apply_group(space.ctx(), &g, p)?)? != flow.act(&g, *v)? {
                return Err(Error::Invalid(format!("ambit map is not equivariant at {p}")));
            }
        }
    }
    Ok(h)
}

/// Minimal closed invariant subsets of the limit part, as sorted point
/// lists ordered by their least point. Every subset of the limit part is
/// closed, so these are exactly the orbits of the action on it.
pub fn minimal_subflows(space: &LevelTypeSpace) -> Result<Vec<Vec<TypePoint>>> {
    let core = space.core_points();
    let moves = space.core_translations();
    let mut seen: BTreeSet<TypePoint> = BTreeSet::new();
    let mut out = Vec::new();
    for p in &core {
        if seen.contains(p) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for g in &moves {
            orbit.insert(apply_group(space.ctx(), g, p)?);
        }
        seen.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect::<Vec<_>>());
    }
    out.sort();
    Ok(out)
}

/// The same answer by exhausting all subsets of the limit part (at most
/// 2^16 candidates).
pub fn minimal_subflows_exhaustive(space: &LevelTypeSpace) -> Result<Vec<Vec<TypePoint>>> {
    let core = space.core_points();
    if core.len() > 16 {
        return Err(Error::Unsupported(format!("exhaustive search over {} points", core.len())));
    }
    let gens = space.generators();
    let mut image = Vec::new();
    for g in &gens {
        let mut row = Vec::with_capacity(core.len());
        for p in &core {
            let q = apply_group(space.ctx(), g, p)?;
            row.push(core.iter().position(|c| *c == q).expect("core is invariant"));
        }
        image.push(row);
    }
    let invariant = |mask: u32| {
        image.iter().all(|row| (0..core.len()).all(|i| mask & (1 << i) == 0 || mask & (1 << row[i]) != 0))
    };
    let candidates: Vec<u32> = (1u32..(1u32 << core.len())).filter(|&m| invariant(m)).collect();
    let mut out: Vec<Vec<TypePoint>> = candidates
        .iter()
        .filter(|&&m| !candidates.iter().any(|&c| c != m && c & m == c))
        .map(|&m| (0..core.len()).filter(|i| m & (1 << i) != 0).map(|i| core[i].clone()).collect())
        .collect();
    for s in &mut out {
        s.sort();
    }
    out.sort();
    Ok(out)
}

pub fn minimal_subflows_of_flow(flow: &FiniteFlow) -> Result<Vec<Vec<usize>>> {
    check_definable_flow(flow)?;
    Ok(flow.orbits())
}

/// Is `S` (a subset of the limit part) closed under `s * l` for every `s`
/// in the level space and `l ∈ S`? Realized `s` are covered by the group
/// generators and their inverses.
pub fn is_left_ideal(space: &LevelTypeSpace, subset: &[TypePoint]) -> Result<bool> {
    let ctx = space.ctx();
    for l in subset {
        if !space.is_core(l) {
            return Err(Error::Invalid(format!("{l} is not in the limit part at level {}", space.level())));
        }
    }
    let members: BTreeSet<&TypePoint> = subset.iter().collect();
    let mut left: Vec<TypePoint> = space.core_points();
    for g in space.generators() {
        left.push(TypePoint::realized(ctx.invert(&g)?));
        left.push(TypePoint::realized(g));
    }
    left.push(TypePoint::realized(ctx.identity()));
    for s in &left {
        for l in subset {
            let prod = typespace::restrict(&star(ctx, s, l)?, space.level())?;
            if !members.contains(&prod) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A chosen minimal subflow `I` and its idempotent.
#[derive(Clone, Debug)]
pub struct UniversalMinimalFlow {
    space: LevelTypeSpace,
    subflow: Vec<TypePoint>,
    idempotent: TypePoint,
}

/// A flow isomorphism `I → J` given by `p ↦ p * t`, with inverse
/// `q ↦ q * s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowIsomorphism {
    pub forward: Vec<(TypePoint, TypePoint)>,
    pub via: TypePoint,
    pub inverse_via: TypePoint,
}

impl FlowIsomorphism {
    pub fn image(&self, p: &TypePoint) -> Option<&TypePoint> {
        self.forward.iter().find(|(a, _)| a == p).map(|(_, b)| b)
    }
}

impl UniversalMinimalFlow {
    pub fn subflow(&self) -> &[TypePoint] {
        &self.subflow
    }

    pub fn idempotent(&self) -> &TypePoint {
        &self.idempotent
    }

    /// Builds `I → J`: right multiplication by `t ∈ J` maps `I` into `J`;
    /// with `s ∈ I` such that `t * s` is the idempotent of `I`, right
    /// multiplication by `s` inverts it. Both directions are checked.
    pub fn isomorphism_to(&self, target: &[TypePoint], via: Option<&TypePoint>) -> Result<FlowIsomorphism> {
        let ctx = self.space.ctx();
        if target.is_empty() || !is_left_ideal(&self.space, target)? {
            return Err(Error::Invalid("target is not a closed invariant subset".into()));
        }
        let t = match via {
            Some(t) if target.contains(t) => t.clone(),
            Some(t) => return Err(Error::Invalid(format!("{t} is not in the target subflow"))),
            None => target[0].clone(),
        };
        let mul = |a: &TypePoint, b: &TypePoint| -> Result<TypePoint> {
            typespace::restrict(&star(ctx, a, b)?, self.space.level())
        };
        let s = self
            .subflow
            .iter()
            .find(|s| mul(&t, s).map(|x| x == self.idempotent).unwrap_or(false))
            .cloned()
            .ok_or_else(|| Error::Invalid("no inverse translation inside the subflow".into()))?;
        let mut forward = Vec::with_capacity(self.subflow.len());
        for p in &self.subflow {
            let image = mul(p, &t)?;
            if !target.contains(&image) {
                return Err(Error::Invalid(format!("{p} * {t} leaves the target")));
            }
            if mul(&image, &s)? != *p {
                return Err(Error::Invalid(format!("inverse fails at {p}")));
            }
            forward.push((p.clone(), image));
        }
        for q in target {
            let back = mul(q, &s)?;
            if !self.subflow.contains(&back) || mul(&back, &t)? != *q {
                return Err(Error::Invalid(format!("inverse fails at {q}")));
            }
        }
        let iso = FlowIsomorphism { forward, via: t, inverse_via: s };
        for (p, image) in &iso.forward {
            for g in self.space.generators() {
                let moved = apply_group(ctx, &g, p)?;
                if iso.image(&moved) != Some(&apply_group(ctx, &g, image)?) {
                    return Err(Error::Invalid(format!("isomorphism is not equivariant at {p}")));
                }
            }
        }
        Ok(iso)
    }
}

/// The first minimal subflow together with its idempotent.
pub fn universal_minimal_flow(space: &LevelTypeSpace) -> Result<UniversalMinimalFlow> {
    let subflows = minimal_subflows(space)?;
    let subflow = subflows.into_iter().next().expect("the limit part is nonempty");
    let idempotent = find_idempotents(space)?
        .into_iter()
        .find(|p| subflow.contains(p))
        .ok_or_else(|| Error::Invalid("minimal subflow without an idempotent".into()))?;
    Ok(UniversalMinimalFlow { space: space.clone(), subflow, idempotent })
}

/// A map from the integers to a finite set that is eventually periodic in
/// both directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventuallyPeriodicMap {
    pub period: u64,
    pub up: Vec<u64>,
    pub down: Vec<u64>,
    /// Exceptional values on `[lo, lo + values.len())`.
    pub lo: i64,
    pub values: Vec<u64>,
}

impl EventuallyPeriodicMap {
    pub fn periodic(values: Vec<u64>) -> Self {
        EventuallyPeriodicMap { period: values.len() as u64, up: values.clone(), down: values, lo: 0, values: vec![] }
    }

    fn validate(&self) -> Result<()> {
        if self.period == 0 || self.up.len() as u64 != self.period || self.down.len() as u64 != self.period {
            return Err(Error::Invalid("tail values must have length equal to the period".into()));
        }
        Ok(())
    }

    fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn eval(&self, x: i64) -> u64 {
        let r = x.rem_euclid(self.period as i64) as usize;
        if x < self.lo {
            self.down[r]
        } else if x > self.hi() {
            self.up[r]
        } else {
            self.values[(x - self.lo) as usize]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefinableMap {
    Periodic(EventuallyPeriodicMap),
    /// Values on a finite group, indexed by element.
    Table(Vec<u64>),
}

/// The unique continuous extension of a definable map to the level space.
#[derive(Clone, Debug)]
pub struct ExtendedMap {
    ctx: GroupContext,
    map: DefinableMap,
    level: Level,
}

impl ExtendedMap {
    pub fn apply(&self, p: &TypePoint) -> Result<u64> {
        p.check(&self.ctx)?;
        match (&self.map, p) {
            (DefinableMap::Periodic(f), TypePoint::Realized(GroupElement::Int(x))) => Ok(f.eval(*x)),
            (DefinableMap::Periodic(f), TypePoint::Limit { sign, residue, modulus }) => {
                if modulus % f.period != 0 {
                    return Err(Error::LevelMismatch { period: f.period, level: *modulus });
                }
                let r = (residue % f.period) as usize;
                Ok(if sign.is_up() { f.up[r] } else { f.down[r] })
            }
            (DefinableMap::Table(t), TypePoint::Realized(GroupElement::Index(i))) => Ok(t[*i]),
            _ => Err(Error::ContextMismatch(format!("{p} is outside the domain of the map"))),
        }
    }

    /// For each limit point, the image of its basic neighbourhood past the
    /// exceptional window; each must be a singleton equal to the extension.
    pub fn neighbourhood_images(&self) -> Result<Vec<(TypePoint, BTreeSet<u64>)>> {
        let DefinableMap::Periodic(f) = &self.map else { return Ok(Vec::new()) };
        let n = self.level.get() as i64;
        let space = LevelTypeSpace::new(self.ctx.clone(), self.level);
        let mut out = Vec::new();
        for p in space.core_points() {
            let TypePoint::Limit { sign, residue, .. } = p else { continue };
            let edge = if sign.is_up() { f.hi().max(0) + 1 } else { f.lo.min(0) - 1 };
            let start = if sign.is_up() {
                edge + (residue as i64 - edge).rem_euclid(n)
            } else {
                edge - (edge - residue as i64).rem_euclid(n)
            };
            let mut image = BTreeSet::new();
            for k in 0..f.period as i64 {
                let x = start + sign.factor() * k * n;
                debug_assert_eq!(x.rem_euclid(n), residue as i64);
                image.insert(f.eval(x));
            }
            out.push((p, image));
        }
        Ok(out)
    }
}

pub fn extend_definable_map(ctx: &GroupContext, map: &DefinableMap, level: Level) -> Result<ExtendedMap> {
    match (ctx, map) {
        (GroupContext::Integers, DefinableMap::Periodic(f)) => {
            f.validate()?;
            if level.get() % f.period != 0 {
                return Err(Error::LevelMismatch { period: f.period, level: level.get() });
            }
        }
        (GroupContext::Finite(g), DefinableMap::Table(t)) if t.len() == g.order() => {}
        _ => return Err(Error::ContextMismatch("map does not match the backend".into())),
    }
    let ext = ExtendedMap { ctx: ctx.clone(), map: map.clone(), level };
    for (p, image) in ext.neighbourhood_images()? {
        if image.len() != 1 || !image.contains(&ext.apply(&p)?) {
            return Err(Error::Invalid(format!("closure of the image at {p} is not a singleton")));
        }
    }
    Ok(ext)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subgroup {
    /// `dZ` inside the integers.
    Multiples(u64),
    /// Explicit element indices of a finite group.
    Elements(Vec<usize>),
    Product(Box<Subgroup>, Box<Subgroup>),
}

/// Elements acting trivially on a set of points of the level space.
pub fn kernel_on_points(space: &LevelTypeSpace, points: &[TypePoint]) -> Result<Subgroup> {
    kernel_rec(space.ctx(), space.level(), points)
}

fn kernel_rec(ctx: &GroupContext, level: Level, points: &[TypePoint]) -> Result<Subgroup> {
    match ctx {
        GroupContext::Integers => {
            let fixes = |d: u64| -> Result<bool> {
                for p in points {
                    if apply_group(ctx, &GroupElement::Int(d as i64), p)? != *p {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            for d in 1..=level.get() {
                if level.get() % d == 0 && fixes(d)? {
                    return Ok(Subgroup::Multiples(d));
                }
            }
            Ok(Subgroup::Multiples(0))
        }
        GroupContext::Finite(g) => {
            let mut out = Vec::new();
            for i in 0..g.order() {
                let mut fixes = true;
                for p in points {
                    if apply_group(ctx, &GroupElement::Index(i), p)? != *p {
                        fixes = false;
                        break;
                    }
                }
                if fixes {
                    out.push(i);
                }
            }
            Ok(Subgroup::Elements(out))
        }
        GroupContext::Product(l, r) => {
            let mut left = BTreeSet::new();
            let mut right = BTreeSet::new();
            for p in points {
                let TypePoint::Pair(a, b) = p else {
                    return Err(Error::ContextMismatch(format!("{p} is not a product type")));
                };
                left.insert((**a).clone());
                right.insert((**b).clone());
            }
            if left.len() * right.len() != points.len() {
                return Err(Error::Unsupported("kernel of a non-rectangular point set".into()));
            }
            let left: Vec<_> = left.into_iter().collect();
            let right: Vec<_> = right.into_iter().collect();
            Ok(Subgroup::Product(Box::new(kernel_rec(l, level, &left)?), Box::new(kernel_rec(r, level, &right)?)))
        }
    }
}

/// Kernel of the action on the first minimal subflow at this level.
pub fn kernel_of_action(space: &LevelTypeSpace) -> Result<Subgroup> {
    let umf = universal_minimal_flow(space)?;
    kernel_on_points(space, umf.subflow())
}

/// Kernel of the action on a finite flow.
pub fn kernel_of_flow(flow: &FiniteFlow) -> Result<Subgroup> {
    check_definable_flow(flow)?;
    match &flow.action {
        FlowAction::Shift(_) => {
            let d = (0..flow.carrier).map(|x| flow.orbit_period(x)).fold(1u64, |a, b| a.lcm(&b));
            Ok(Subgroup::Multiples(d))
        }
        FlowAction::Table(rows) => Ok(Subgroup::Elements(
            (0..rows.len()).filter(|&i| rows[i].iter().enumerate().all(|(x, &y)| x == y)).collect(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typespace::Sign;

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    fn lim(s: Sign, r: i64, n: u64) -> TypePoint {
        TypePoint::limit(s, r, lv(n))
    }

    fn z_space(n: u64) -> LevelTypeSpace {
        LevelTypeSpace::new(GroupContext::Integers, lv(n))
    }

    fn rotation(k: usize) -> Vec<usize> {
        (0..k).map(|x| (x + 1) % k).collect()
    }

    #[test]
    fn flow_checks() {
        let v = check_definable_flow(&FiniteFlow::integers(rotation(6), Some(0)).unwrap()).unwrap();
        assert!(v.is_ambit);
        assert_eq!(v.orbit_levels, vec![6; 6]);
        let v = check_definable_flow(&FiniteFlow::integers(vec![1, 0, 2], Some(2)).unwrap()).unwrap();
        assert!(!v.is_ambit);
        let c3 = GroupContext::cyclic(3).unwrap();
        // the generator acts as a transposition, so its cube is not the identity
        let bad = FiniteFlow::new(c3, 2, FlowAction::Table(vec![vec![0, 1], vec![1, 0], vec![1, 0]]), None).unwrap();
        assert!(matches!(check_definable_flow(&bad), Err(Error::RelationViolation(_))));
        let nb = FiniteFlow::integers(vec![0, 0], None).unwrap();
        assert!(matches!(check_definable_flow(&nb), Err(Error::NonBijective(_))));
    }

    #[test]
    fn ambit_morphism_examples() {
        let flow = FiniteFlow::integers(rotation(6), Some(0)).unwrap();
        let h = universal_ambit_morphism(&z_space(6), &flow).unwrap();
        assert_eq!(h.apply(&lim(Sign::Plus, 4, 6)).unwrap(), 4);
        assert_eq!(h.apply(&TypePoint::Realized(GroupElement::Int(-1))).unwrap(), 5);
        assert!(matches!(
            universal_ambit_morphism(&z_space(4), &flow),
            Err(Error::LevelTooCoarse { period: 6, level: 4 })
        ));
        let pt = FiniteFlow::trivial(&GroupContext::Integers).unwrap();
        let h = universal_ambit_morphism(&z_space(3), &pt).unwrap();
        assert!(h.core_values().iter().all(|(_, v)| *v == 0));
    }

    #[test]
    fn minimal_subflow_examples() {
        let subs = minimal_subflows(&z_space(4)).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0], (0..4).map(|r| lim(Sign::Plus, r, 4)).collect::<Vec<_>>());
        assert_eq!(subs, minimal_subflows_exhaustive(&z_space(4)).unwrap());
        assert_eq!(
            minimal_subflows(&z_space(1)).unwrap(),
            vec![vec![lim(Sign::Plus, 0, 1)], vec![lim(Sign::Minus, 0, 1)]]
        );
        let flow = FiniteFlow::integers(rotation(6), None).unwrap();
        assert_eq!(minimal_subflows_of_flow(&flow).unwrap(), vec![(0..6).collect::<Vec<_>>()]);
    }

    #[test]
    fn left_ideal_examples() {
        let space = z_space(4);
        let plus: Vec<_> = (0..4).map(|r| lim(Sign::Plus, r, 4)).collect();
        assert!(is_left_ideal(&space, &plus).unwrap());
        assert!(!is_left_ideal(&space, &[lim(Sign::Plus, 0, 4)]).unwrap());
        assert!(is_left_ideal(&space, &space.core_points()).unwrap());
    }

    #[test]
    fn minimal_flow_isomorphism() {
        let space = z_space(4);
        let umf = universal_minimal_flow(&space).unwrap();
        assert_eq!(umf.idempotent(), &lim(Sign::Plus, 0, 4));
        let minus: Vec<_> = (0..4).map(|r| lim(Sign::Minus, r, 4)).collect();
        for c in 0..4 {
            let iso = umf.isomorphism_to(&minus, Some(&lim(Sign::Minus, c, 4))).unwrap();
            for a in 0..4 {
                assert_eq!(iso.image(&lim(Sign::Plus, a, 4)), Some(&lim(Sign::Minus, a + c, 4)));
            }
        }
        let one = universal_minimal_flow(&z_space(1)).unwrap();
        let iso = one.isomorphism_to(&[lim(Sign::Minus, 0, 1)], None).unwrap();
        assert_eq!(iso.forward, vec![(lim(Sign::Plus, 0, 1), lim(Sign::Minus, 0, 1))]);
    }

    #[test]
    fn extension_examples() {
        let z = GroupContext::Integers;
        let parity = DefinableMap::Periodic(EventuallyPeriodicMap::periodic(vec![0, 1]));
        let ext = extend_definable_map(&z, &parity, lv(2)).unwrap();
        assert_eq!(ext.apply(&lim(Sign::Plus, 1, 2)).unwrap(), 1);
        let constant = DefinableMap::Periodic(EventuallyPeriodicMap::periodic(vec![3]));
        let ext = extend_definable_map(&z, &constant, lv(5)).unwrap();
        assert!(LevelTypeSpace::new(z.clone(), lv(5)).core_points().iter().all(|p| ext.apply(p).unwrap() == 3));
        let spike = DefinableMap::Periodic(EventuallyPeriodicMap {
            period: 2,
            up: vec![0, 1],
            down: vec![0, 1],
            lo: 0,
            values: vec![9],
        });
        let ext = extend_definable_map(&z, &spike, lv(4)).unwrap();
        assert_eq!(ext.apply(&TypePoint::Realized(GroupElement::Int(0))).unwrap(), 9);
        for p in LevelTypeSpace::new(z.clone(), lv(4)).core_points() {
            assert_ne!(ext.apply(&p).unwrap(), 9);
        }
        assert!(matches!(extend_definable_map(&z, &parity, lv(3)), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_of_action(&z_space(6)).unwrap(), Subgroup::Multiples(6));
        let s3 = GroupContext::Finite(crate::group::catalog::by_name("S3").unwrap());
        assert_eq!(kernel_of_action(&LevelTypeSpace::new(s3.clone(), lv(1))).unwrap(), Subgroup::Elements(vec![0]));
        assert_eq!(kernel_of_flow(&FiniteFlow::trivial(&s3).unwrap()).unwrap(), Subgroup::Elements((0..6).collect()));
        assert_eq!(kernel_of_flow(&FiniteFlow::trivial(&GroupContext::Integers).unwrap()).unwrap(), Subgroup::Multiples(1));
    }
}
