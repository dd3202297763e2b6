//! Invariant measures, fixed points, and the difference-set criterion for
//! extreme amenability, checked over bounded families of definable sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::defsets::{is_left_generic, DefinableSet, Genericity, PresburgerSet};
use crate::error::{Error, Result};
use crate::flows::{self, kernel_of_action, minimal_subflows, FiniteFlow, FlowAction, Subgroup};
use crate::group::{GroupContext, GroupElement};
use crate::lp;
use crate::typespace::{self, apply_group, Level, LevelTypeSpace, TypePoint};

/// Exact probability weights on a finite set of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantMeasure<P> {
    pub points: Vec<P>,
    pub weights: Vec<BigRational>,
}

impl<P: PartialEq> InvariantMeasure<P> {
    pub fn weight_of(&self, p: &P) -> BigRational {
        self.points.iter().position(|x| x == p).map_or_else(BigRational::zero, |i| self.weights[i].clone())
    }

    pub fn total(&self) -> BigRational {
        self.weights.iter().sum()
    }

    pub fn mass(&self, mut member: impl FnMut(&P) -> bool) -> BigRational {
        self.points.iter().zip(&self.weights).filter(|(p, _)| member(p)).map(|(_, w)| w.clone()).sum()
    }
}

fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Equal weight per block, uniform inside each block.
fn block_uniform<P: Clone>(blocks: &[Vec<P>]) -> InvariantMeasure<P> {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for block in blocks {
        for p in block {
            points.push(p.clone());
            weights.push(ratio(1, blocks.len() * block.len()));
        }
    }
    InvariantMeasure { points, weights }
}

/// Canonical invariant measure on the limit part of the level space.
/// Realized points carry weight zero.
pub fn invariant_measure(space: &LevelTypeSpace) -> Result<InvariantMeasure<TypePoint>> {
    Ok(block_uniform(&minimal_subflows(space)?))
}

/// Canonical invariant measure on a finite flow.
pub fn flow_invariant_measure(flow: &FiniteFlow) -> Result<InvariantMeasure<usize>> {
    Ok(block_uniform(&flows::minimal_subflows_of_flow(flow)?))
}

/// The permutations by which a set of group elements moves the points.
fn point_permutations<P: PartialEq + Clone>(
    points: &[P],
    movers: &[GroupElement],
    act: impl Fn(&GroupElement, &P) -> Result<P>,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for g in movers {
        let mut perm = Vec::with_capacity(points.len());
        for p in points {
            let q = act(g, p)?;
            let j = points
                .iter()
                .position(|x| *x == q)
                .ok_or_else(|| Error::Invalid("point set is not invariant".into()))?;
            perm.push(j);
        }
        out.push(perm);
    }
    Ok(out)
}

fn space_permutations(space: &LevelTypeSpace, points: &[TypePoint]) -> Result<Vec<Vec<usize>>> {
    point_permutations(points, &space.generators(), |g, p| apply_group(space.ctx(), g, p))
}

fn flow_permutations(flow: &FiniteFlow) -> Vec<Vec<usize>> {
    match flow.action() {
        FlowAction::Shift(pi) => vec![pi.clone()],
        FlowAction::Table(rows) => rows.clone(),
    }
}

/// Is `μ(π(x)) = μ(x)` for every point and every permutation?
pub fn is_invariant_under(weights: &[BigRational], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| p.iter().enumerate().all(|(x, &y)| weights[x] == weights[y]))
}

pub fn is_invariant(space: &LevelTypeSpace, mu: &InvariantMeasure<TypePoint>) -> Result<bool> {
    Ok(is_invariant_under(&mu.weights, &space_permutations(space, &mu.points)?) && mu.total() == BigRational::one())
}

pub fn is_flow_invariant(flow: &FiniteFlow, mu: &InvariantMeasure<usize>) -> bool {
    let mut w = vec![BigRational::zero(); flow.carrier()];
    for (p, x) in mu.points.iter().zip(&mu.weights) {
        w[*p] = x.clone();
    }
    is_invariant_under(&w, &flow_permutations(flow)) && mu.total() == BigRational::one()
}

/// Any invariant probability vector, found by exact linear feasibility.
pub fn lp_invariant_weights(points: usize, perms: &[Vec<usize>]) -> Option<Vec<BigRational>> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for perm in perms {
        for (x, &y) in perm.iter().enumerate() {
            if x != y {
                let mut row = vec![BigRational::zero(); points];
                row[x] += BigRational::one();
                row[y] -= BigRational::one();
                a.push(row);
                b.push(BigRational::zero());
            }
        }
    }
    a.push(vec![BigRational::one(); points]);
    b.push(BigRational::one());
    lp::feasible_point(&a, &b)
}

pub fn lp_invariant_measure(space: &LevelTypeSpace) -> Result<Option<InvariantMeasure<TypePoint>>> {
    let points = space.core_points();
    let perms = space_permutations(space, &points)?;
    Ok(lp_invariant_weights(points.len(), &perms).map(|weights| InvariantMeasure { points, weights }))
}

pub fn lp_flow_measure(flow: &FiniteFlow) -> Option<InvariantMeasure<usize>> {
    lp_invariant_weights(flow.carrier(), &flow_permutations(flow))
        .map(|weights| InvariantMeasure { points: (0..flow.carrier()).collect(), weights })
}

/// Image of a level-`n` measure under restriction to level `m | n`.
pub fn pushforward(mu: &InvariantMeasure<TypePoint>, m: Level) -> Result<InvariantMeasure<TypePoint>> {
    let mut out: Vec<(TypePoint, BigRational)> = Vec::new();
    for (p, w) in mu.points.iter().zip(&mu.weights) {
        let q = typespace::restrict(p, m)?;
        match out.iter_mut().find(|(x, _)| *x == q) {
            Some((_, acc)) => *acc += w,
            None => out.push((q, w.clone())),
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    let (points, weights) = out.into_iter().unzip();
    Ok(InvariantMeasure { points, weights })
}

/// Same measure with points in sorted order, for comparisons.
pub fn sorted<P: Ord + Clone>(mu: &InvariantMeasure<P>) -> InvariantMeasure<P> {
    let mut pairs: Vec<(P, BigRational)> = mu.points.iter().cloned().zip(mu.weights.iter().cloned()).collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let (points, weights) = pairs.into_iter().unzip();
    InvariantMeasure { points, weights }
}

/// Points of the limit part fixed by every generator.
pub fn fixed_points(space: &LevelTypeSpace) -> Result<Vec<TypePoint>> {
    let mut out = Vec::new();
    for p in space.core_points() {
        let mut fixed = true;
        for g in space.generators() {
            if apply_group(space.ctx(), &g, &p)? != p {
                fixed = false;
                break;
            }
        }
        if fixed {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn flow_fixed_points(flow: &FiniteFlow) -> Vec<usize> {
    let perms = flow_permutations(flow);
    (0..flow.carrier()).filter(|&x| perms.iter().all(|p| p[x] == x)).collect()
}

/// A bounded, deterministically ordered family of definable sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetFamily {
    /// Sets given by eventual residue patterns toward `+∞` and `-∞` for
    /// every modulus up to `max_modulus`, split at 0, optionally with every
    /// explicit membership pattern on `[-r, r]`.
    Integers { max_modulus: u64, window_radius: Option<i64> },
    /// All nonempty subsets of a finite group, by size then elements.
    Finite,
    /// Rectangles `A × B` with sides from the two factor families.
    Product(Box<SetFamily>, Box<SetFamily>),
}

const MAX_FAMILY: usize = 1 << 20;

impl SetFamily {
    /// Default family for a backend: moduli up to `max_modulus`, no window.
    pub fn standard(ctx: &GroupContext, max_modulus: u64) -> SetFamily {
        match ctx {
            GroupContext::Integers => SetFamily::Integers { max_modulus, window_radius: None },
            GroupContext::Finite(_) => SetFamily::Finite,
            GroupContext::Product(l, r) => {
                SetFamily::Product(Box::new(Self::standard(l, max_modulus)), Box::new(Self::standard(r, max_modulus)))
            }
        }
    }

    /// Members in enumeration order, duplicates removed.
    pub fn members(&self, ctx: &GroupContext) -> Result<Vec<DefinableSet>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for y in self.raw_members(ctx)? {
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        Ok(out)
    }

    fn raw_members(&self, ctx: &GroupContext) -> Result<Vec<DefinableSet>> {
        match (self, ctx) {
            (SetFamily::Integers { max_modulus, window_radius }, GroupContext::Integers) => {
                if *max_modulus > 16 || window_radius.map_or(false, |r| !(0..=8).contains(&r)) {
                    return Err(Error::Unsupported("family bounds too large to enumerate".into()));
                }
                let mut out = Vec::new();
                for n in 1..=*max_modulus {
                    let pattern = |mask: u64| (0..n).map(|r| mask & (1 << r) != 0).collect::<Vec<bool>>();
                    for up in 0..(1u64 << n) {
                        for down in 0..(1u64 << n) {
                            match window_radius {
                                None => out.push(
                                    PresburgerSet::new(n, pattern(up), pattern(down), 0, -1, vec![])?.into(),
                                ),
                                Some(r) => {
                                    let width = (2 * r + 1) as u32;
                                    for bits in 0..(1u64 << width) {
                                        let bits = (0..width).map(|i| bits & (1 << i) != 0).collect();
                                        out.push(PresburgerSet::new(n, pattern(up), pattern(down), -r, *r, bits)?.into());
                                    }
                                }
                            }
                            if out.len() > MAX_FAMILY {
                                return Err(Error::Unsupported("family too large".into()));
                            }
                        }
                    }
                }
                Ok(out)
            }
            (SetFamily::Finite, GroupContext::Finite(g)) => {
                let k = g.order();
                if k > 16 {
                    return Err(Error::Unsupported("subset family of a group of order above 16".into()));
                }
                let mut masks: Vec<u32> = (1u32..(1u32 << k)).collect();
                let key = |m: &u32| {
                    (m.count_ones(), (0..k as u32).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
                };
                masks.sort_by_key(key);
                masks
                    .into_iter()
                    .map(|m| {
                        let elems: Vec<GroupElement> =
                            (0..k).filter(|i| m & (1 << i) != 0).map(GroupElement::Index).collect();
                        DefinableSet::from_elements(ctx, &elems)
                    })
                    .collect()
            }
            (SetFamily::Product(fl, fr), GroupContext::Product(l, r)) => {
                let left = fl.members(l)?;
                let right = fr.members(r)?;
                if left.len() * right.len() > MAX_FAMILY {
                    return Err(Error::Unsupported("family too large".into()));
                }
                let mut out = Vec::new();
                for a in &left {
                    for b in &right {
                        out.push(DefinableSet::rectangles(ctx, vec![(a.clone(), b.clone())])?);
                    }
                }
                Ok(out)
            }
            _ => Err(Error::ContextMismatch("set family does not match the backend".into())),
        }
    }

    /// Largest modulus any member can have.
    pub fn modulus_bound(&self) -> u64 {
        match self {
            SetFamily::Integers { max_modulus, .. } => (1..=*max_modulus).fold(1, |a, b| a.lcm(&b)),
            SetFamily::Finite => 1,
            SetFamily::Product(a, b) => a.modulus_bound().lcm(&b.modulus_bound()),
        }
    }
}

/// A generic set whose difference set misses part of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PestovCertificate {
    pub set: DefinableSet,
    pub translates: Vec<GroupElement>,
    pub difference: DefinableSet,
    pub missed: GroupElement,
}

pub const EXHAUSTED_NOTE: &str =
    "no counterexample within the family; this is not a proof of extreme amenability";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PestovVerdict {
    Certificate(PestovCertificate),
    Exhausted { examined: usize, generic: usize, note: &'static str },
}

impl PestovVerdict {
    pub fn certificate(&self) -> Option<&PestovCertificate> {
        match self {
            PestovVerdict::Certificate(c) => Some(c),
            PestovVerdict::Exhausted { .. } => None,
        }
    }
}

/// First generic member `Y` of the family (in enumeration order) with
/// `Y·Y⁻¹ ≠ G`.
pub fn pestov_check(ctx: &GroupContext, family: &SetFamily) -> Result<PestovVerdict> {
    let members = family.members(ctx)?;
    let mut generic = 0;
    for y in &members {
        let Genericity::Generic { translates } = is_left_generic(ctx, y)? else { continue };
        generic += 1;
        let difference = y.difference_set(ctx)?;
        if !difference.is_all() {
            let missed = difference.complement()?.some_element().expect("complement is nonempty");
            return Ok(PestovVerdict::Certificate(PestovCertificate { set: y.clone(), translates, difference, missed }));
        }
    }
    Ok(PestovVerdict::Exhausted { examined: members.len(), generic, note: EXHAUSTED_NOTE })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelIntersection {
    pub set: DefinableSet,
    pub subgroup: Option<Subgroup>,
    pub generic_sets: usize,
    /// Kernel of the action on a minimal subflow at the family's level.
    pub action_kernel: Subgroup,
    pub level: u64,
}

impl KernelIntersection {
    pub fn matches_action_kernel(&self) -> bool {
        self.subgroup.as_ref() == Some(&self.action_kernel)
    }
}

fn as_subgroup(ctx: &GroupContext, set: &DefinableSet) -> Result<Option<Subgroup>> {
    Ok(match (ctx, set) {
        (GroupContext::Integers, DefinableSet::Presburger(s)) => {
            let d = s.modulus();
            (s.is_purely_periodic() && s.up_residues() == [0]).then_some(Subgroup::Multiples(d))
        }
        (GroupContext::Finite(g), DefinableSet::Finite(s)) => {
            let elems = s.elements();
            let closed = elems.contains(&g.identity())
                && elems.iter().all(|&a| elems.iter().all(|&b| s.contains(g.mul(a, g.inv(b)))));
            closed.then_some(Subgroup::Elements(elems))
        }
        (GroupContext::Product(l, r), DefinableSet::Product(p)) => match p.rects() {
            [(a, b)] => match (as_subgroup(l, a)?, as_subgroup(r, b)?) {
                (Some(x), Some(y)) => Some(Subgroup::Product(Box::new(x), Box::new(y))),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    })
}

/// Intersection of `Y·Y⁻¹` over the generic members of the family,
/// compared with the kernel of the action on a minimal subflow at the
/// level matching the family's moduli.
pub fn kernel_intersection(ctx: &GroupContext, family: &SetFamily) -> Result<KernelIntersection> {
    let mut set = DefinableSet::full(ctx);
    let mut generic_sets = 0;
    for y in family.members(ctx)? {
        if is_left_generic(ctx, &y)?.is_generic() {
            generic_sets += 1;
            set = set.intersection(&y.difference_set(ctx)?)?;
        }
    }
    let subgroup = as_subgroup(ctx, &set)?;
    let level = family.modulus_bound();
    let action_kernel = kernel_of_action(&LevelTypeSpace::new(ctx.clone(), Level::new(level)?))?;
    Ok(KernelIntersection { set, subgroup, generic_sets, action_kernel, level })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingletonReport {
    pub minimal_subflows_are_points: bool,
    pub differences_are_full: bool,
    pub agree: bool,
    /// A member meeting a minimal subflow with `Y·Y⁻¹ ≠ G`, if any.
    pub witness: Option<DefinableSet>,
    pub examined: usize,
}

/// Evaluates both sides of: minimal subflows are points iff every member
/// meeting a minimal subflow has full difference set. Only members whose
/// period divides the level are examined.
pub fn singleton_minimal_criterion(space: &LevelTypeSpace, family: &SetFamily) -> Result<SingletonReport> {
    let ctx = space.ctx();
    let subflows = minimal_subflows(space)?;
    let minimal_subflows_are_points = subflows.iter().all(|s| s.len() == 1);
    let mut witness = None;
    let mut examined = 0;
    for y in family.members(ctx)? {
        if space.level().get() % y.period() != 0 {
            continue;
        }
        examined += 1;
        let mut meets = false;
        'outer: for s in &subflows {
            for p in s {
                if typespace::contains(p, &y)? {
                    meets = true;
                    break 'outer;
                }
            }
        }
        if meets && !y.difference_set(ctx)?.is_all() {
            witness = Some(y);
            break;
        }
    }
    let differences_are_full = witness.is_none();
    Ok(SingletonReport {
        minimal_subflows_are_points,
        differences_are_full,
        agree: minimal_subflows_are_points == differences_are_full,
        witness,
        examined,
    })
}

/// `{g : g ≡ t}` at the level: a residue class, a point, or a product.
fn translation_class(ctx: &GroupContext, level: Level, t: &GroupElement) -> Result<DefinableSet> {
    match (ctx, t) {
        (GroupContext::Integers, GroupElement::Int(x)) => {
            Ok(PresburgerSet::periodic(level.get(), &[x.rem_euclid(level.get() as i64) as u64])?.into())
        }
        (GroupContext::Finite(_), _) => DefinableSet::from_elements(ctx, std::slice::from_ref(t)),
        (GroupContext::Product(l, r), GroupElement::Pair(a, b)) => DefinableSet::rectangles(
            ctx,
            vec![(translation_class(l, level, a)?, translation_class(r, level, b)?)],
        ),
        _ => Err(Error::ContextMismatch(format!("{t} is not an element of {ctx}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub below: BigRational,
    pub above: BigRational,
    /// Contains every `g` with value at most `below` and none with value at
    /// least `above`.
    pub separator: DefinableSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureProfile {
    pub set: DefinableSet,
    /// `μ([g·Y])` for one representative `g` of each translation class.
    pub values: Vec<(GroupElement, BigRational)>,
    pub separations: Vec<Separation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinabilityReport {
    pub profiles: Vec<MeasureProfile>,
    pub skipped: usize,
    pub passed: bool,
}

/// For each family member `Y` with period dividing the level, computes
/// `g ↦ μ([g·Y])` and separates each sublevel set from the next superlevel
/// set by a canonical definable set, verified on sample points.
pub fn measure_definability_check(
    space: &LevelTypeSpace,
    mu: &InvariantMeasure<TypePoint>,
    family: &SetFamily,
) -> Result<DefinabilityReport> {
    let ctx = space.ctx();
    let level = space.level();
    let reps = space.core_translations();
    let mut profiles = Vec::new();
    let mut skipped = 0;
    let mut passed = true;
    let value = |g: &GroupElement, y: &DefinableSet| -> Result<BigRational> {
        let moved = y.translate(ctx, g)?;
        let mut total = BigRational::zero();
        for (p, w) in mu.points.iter().zip(&mu.weights) {
            if typespace::contains(p, &moved)? {
                total += w;
            }
        }
        Ok(total)
    };
    for y in family.members(ctx)? {
        if level.get() % y.period() != 0 {
            skipped += 1;
            continue;
        }
        let mut values = Vec::with_capacity(reps.len());
        for g in &reps {
            values.push((g.clone(), value(g, &y)?));
        }
        let levels: BTreeSet<BigRational> = values.iter().map(|(_, v)| v.clone()).collect();
        let levels: Vec<BigRational> = levels.into_iter().collect();
        let mut separations = Vec::new();
        for pair in levels.windows(2) {
            let mut separator = DefinableSet::empty(ctx);
            for (g, v) in &values {
                if *v <= pair[0] {
                    separator = separator.union(&translation_class(ctx, level, g)?)?;
                }
            }
            // sample beyond the representatives: the value must be constant
            // on each class and the separator must respect the thresholds
            for g in sample_elements(ctx, level) {
                let v = value(&g, &y)?;
                let inside = separator.contains_element(&g)?;
                if (v <= pair[0] && !inside) || (v >= pair[1] && inside) {
                    passed = false;
                }
            }
            separations.push(Separation { below: pair[0].clone(), above: pair[1].clone(), separator });
        }
        profiles.push(MeasureProfile { set: y, values, separations });
    }
    Ok(DefinabilityReport { profiles, skipped, passed })
}

fn sample_elements(ctx: &GroupContext, level: Level) -> Vec<GroupElement> {
    match ctx {
        GroupContext::Integers => {
            let n = level.get() as i64;
            (-3 * n..=3 * n).map(GroupElement::Int).collect()
        }
        GroupContext::Finite(_) => ctx.elements().expect("finite"),
        GroupContext::Product(l, r) => {
            let left = sample_elements(l, level);
            let right = sample_elements(r, level);
            left.iter().flat_map(|a| right.iter().map(move |b| GroupElement::pair(a.clone(), b.clone()))).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub levels: Vec<u64>,
    pub fixed_point_counts: Vec<usize>,
    pub certificate: Option<DefinableSet>,
    pub consistent: bool,
}

/// The easy direction of the criterion along a divisor chain: fixed points
/// at every level exclude a certificate, and a certificate forces some
/// level without fixed points.
pub fn pestov_consistency(ctx: &GroupContext, chain: &[Level], family: &SetFamily) -> Result<ConsistencyReport> {
    if chain.windows(2).any(|w| !w[0].divides(w[1])) {
        return Err(Error::Invalid("levels must form a divisor chain".into()));
    }
    let mut counts = Vec::new();
    for &n in chain {
        counts.push(fixed_points(&LevelTypeSpace::new(ctx.clone(), n))?.len());
    }
    let certificate = pestov_check(ctx, family)?.certificate().map(|c| c.set.clone());
    let fixed_everywhere = counts.iter().all(|&c| c > 0);
    let consistent = if certificate.is_some() { !fixed_everywhere } else { true };
    Ok(ConsistencyReport { levels: chain.iter().map(|l| l.get()).collect(), fixed_point_counts: counts, certificate, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use crate::typespace::Sign;

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    fn z_space(n: u64) -> LevelTypeSpace {
        LevelTypeSpace::new(GroupContext::Integers, lv(n))
    }

    #[test]
    fn canonical_measures() {
        let mu = invariant_measure(&z_space(4)).unwrap();
        assert_eq!(mu.points.len(), 8);
        assert!(mu.weights.iter().all(|w| *w == ratio(1, 8)));
        assert!(is_invariant(&z_space(4), &mu).unwrap());
        let rot = FiniteFlow::integers((0..6).map(|x| (x + 1) % 6).collect(), None).unwrap();
        let mu = flow_invariant_measure(&rot).unwrap();
        assert!(mu.weights.iter().all(|w| *w == ratio(1, 6)));
        let c1 = GroupContext::cyclic(1).unwrap();
        let two = FiniteFlow::new(c1, 2, FlowAction::Table(vec![vec![0, 1]]), None).unwrap();
        let mu = flow_invariant_measure(&two).unwrap();
        assert_eq!(mu.weights, vec![ratio(1, 2), ratio(1, 2)]);
        assert!(is_flow_invariant(&two, &mu));
    }

    #[test]
    fn lp_agrees_on_existence() {
        for n in 1..=6 {
            let mu = lp_invariant_measure(&z_space(n)).unwrap().unwrap();
            assert!(is_invariant(&z_space(n), &mu).unwrap());
        }
        let flow = FiniteFlow::integers(vec![1, 0, 2, 4, 5, 3], None).unwrap();
        let mu = lp_flow_measure(&flow).unwrap();
        assert!(is_flow_invariant(&flow, &mu));
    }

    #[test]
    fn pushforward_is_coherent() {
        let mu12 = invariant_measure(&z_space(12)).unwrap();
        for m in [1, 2, 3, 4, 6, 12] {
            let pushed = pushforward(&mu12, lv(m)).unwrap();
            assert_eq!(pushed, sorted(&invariant_measure(&z_space(m)).unwrap()));
        }
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(
            fixed_points(&z_space(1)).unwrap(),
            vec![TypePoint::limit(Sign::Plus, 0, lv(1)), TypePoint::limit(Sign::Minus, 0, lv(1))]
        );
        for n in 2..=6 {
            assert!(fixed_points(&z_space(n)).unwrap().is_empty());
        }
        let c3 = GroupContext::cyclic(3).unwrap();
        assert!(fixed_points(&LevelTypeSpace::new(c3, lv(1))).unwrap().is_empty());
    }

    #[test]
    fn pestov_examples() {
        let z = GroupContext::Integers;
        let v = pestov_check(&z, &SetFamily::standard(&z, 4)).unwrap();
        let c = v.certificate().unwrap();
        assert_eq!(c.set, PresburgerSet::evens().into());
        assert_eq!(c.difference, PresburgerSet::evens().into());
        assert_eq!(c.translates, vec![GroupElement::Int(0), GroupElement::Int(1)]);
        let s3 = GroupContext::Finite(catalog::by_name("S3").unwrap());
        let c = pestov_check(&s3, &SetFamily::Finite).unwrap();
        assert_eq!(c.certificate().unwrap().set, DefinableSet::from_elements(&s3, &[GroupElement::Index(0)]).unwrap());
        let c1 = GroupContext::cyclic(1).unwrap();
        assert!(matches!(pestov_check(&c1, &SetFamily::Finite).unwrap(), PestovVerdict::Exhausted { .. }));
    }

    #[test]
    fn kernel_formula_small() {
        let z = GroupContext::Integers;
        let k = kernel_intersection(&z, &SetFamily::standard(&z, 4)).unwrap();
        assert_eq!(k.subgroup, Some(Subgroup::Multiples(12)));
        assert!(k.matches_action_kernel());
        let c3 = GroupContext::cyclic(3).unwrap();
        let k = kernel_intersection(&c3, &SetFamily::Finite).unwrap();
        assert_eq!(k.subgroup, Some(Subgroup::Elements(vec![0])));
        assert!(k.matches_action_kernel());
        let c1 = GroupContext::cyclic(1).unwrap();
        let k = kernel_intersection(&c1, &SetFamily::Finite).unwrap();
        assert!(k.set.is_all());
    }

    #[test]
    fn singleton_criterion_examples() {
        let z = GroupContext::Integers;
        let r = singleton_minimal_criterion(&z_space(4), &SetFamily::standard(&z, 4)).unwrap();
        assert!(!r.minimal_subflows_are_points && !r.differences_are_full && r.agree);
        let w = r.witness.unwrap();
        assert!(!w.difference_set(&z).unwrap().is_all());
        for name in ["C1", "C2"] {
            let g = GroupContext::Finite(catalog::by_name(name).unwrap());
            let r = singleton_minimal_criterion(&LevelTypeSpace::new(g, lv(1)), &SetFamily::Finite).unwrap();
            assert!(r.agree);
            assert_eq!(r.minimal_subflows_are_points, name == "C1");
        }
    }

    #[test]
    fn definability_examples() {
        let z = GroupContext::Integers;
        let space = z_space(4);
        let mu = invariant_measure(&space).unwrap();
        let fam = SetFamily::standard(&z, 4);
        let report = measure_definability_check(&space, &mu, &fam).unwrap();
        assert!(report.passed);
        let evens: DefinableSet = PresburgerSet::evens().into();
        let profile = report.profiles.iter().find(|p| p.set == evens).unwrap();
        assert!(profile.values.iter().all(|(_, v)| *v == ratio(1, 2)));
        assert!(profile.separations.is_empty());
        // point mass at a fixed point of level 1
        let one = z_space(1);
        let point = InvariantMeasure {
            points: vec![TypePoint::limit(Sign::Plus, 0, lv(1))],
            weights: vec![BigRational::one()],
        };
        assert!(is_invariant(&one, &point).unwrap());
        assert!(measure_definability_check(&one, &point, &fam).unwrap().passed);
    }

    #[test]
    fn consistency_examples() {
        let z = GroupContext::Integers;
        let chain = [lv(1), lv(2), lv(4)];
        let r = pestov_consistency(&z, &chain, &SetFamily::standard(&z, 4)).unwrap();
        assert!(r.consistent && r.certificate.is_some());
        assert_eq!(r.fixed_point_counts, vec![2, 0, 0]);
        let c1 = GroupContext::cyclic(1).unwrap();
        let r = pestov_consistency(&c1, &[lv(1)], &SetFamily::Finite).unwrap();
        assert!(r.consistent && r.certificate.is_none());
    }
}
