//! Finite-index quotients in the logic topology and the universal definable
//! compactification, approximated level by level as `Z → Z/n`.

use num_integer::Integer;

use crate::defsets::{DefinableSet, PresburgerSet};
use crate::error::{Error, Result};
use crate::flows::{DefinableMap, EventuallyPeriodicMap, Subgroup};
use crate::group::{FiniteGroup, GroupContext, GroupElement};
use crate::typespace::Level;

/// An equivalence relation with finitely many definable classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedEquivalence {
    /// `x ≡ y (mod n)` on the integers.
    Congruence(u64),
    /// Explicit classes.
    Partition(Vec<DefinableSet>),
}

/// `G/E` with its projection. At finite index the logic topology is
/// discrete. A group law is attached when the classes are the cosets of a
/// normal subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactQuotient {
    ctx: GroupContext,
    classes: Vec<DefinableSet>,
    group: Option<FiniteGroup>,
}

impl CompactQuotient {
    pub fn classes(&self) -> &[DefinableSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Group law on class indices, for coset quotients.
    pub fn group(&self) -> Option<&FiniteGroup> {
        self.group.as_ref()
    }

    pub fn is_discrete(&self) -> bool {
        true
    }

    pub fn project(&self, g: &GroupElement) -> Result<usize> {
        for (i, c) in self.classes.iter().enumerate() {
            if c.contains_element(g)? {
                return Ok(i);
            }
        }
        Err(Error::NotAPartition(format!("{g} lies in no class")))
    }

    pub fn fiber(&self, class: usize) -> Option<&DefinableSet> {
        self.classes.get(class)
    }

    /// A chosen element of a class.
    pub fn representative(&self, class: usize) -> GroupElement {
        self.classes[class].some_element().expect("classes are nonempty")
    }
}

fn coset_group(ctx: &GroupContext, classes: &[DefinableSet]) -> Result<Option<FiniteGroup>> {
    let id = ctx.identity();
    let Some(kernel) = classes.iter().position(|c| c.contains_element(&id).unwrap_or(false)) else {
        return Ok(None);
    };
    let reps: Vec<GroupElement> =
        classes.iter().map(|c| c.some_element().expect("nonempty")).collect();
    for (c, r) in classes.iter().zip(&reps) {
        // left and right cosets agree exactly when the kernel class is normal
        if *c != classes[kernel].translate(ctx, r)? || *c != classes[kernel].right_translate(ctx, r)? {
            return Ok(None);
        }
    }
    let k = classes.len();
    let mut table = Vec::with_capacity(k * k);
    for a in &reps {
        for b in &reps {
            let ab = ctx.compose(a, b)?;
            let idx = classes
                .iter()
                .position(|c| c.contains_element(&ab).unwrap_or(false))
                .ok_or_else(|| Error::NotAPartition("product lies in no class".into()))?;
            table.push(idx);
        }
    }
    match FiniteGroup::from_table(k, table) {
        Ok(g) => Ok(Some(g)),
        Err(_) => Ok(None),
    }
}

/// The quotient by a bounded equivalence, with its projection.
pub fn logic_quotient(ctx: &GroupContext, e: &BoundedEquivalence) -> Result<CompactQuotient> {
    let classes: Vec<DefinableSet> = match (ctx, e) {
        (GroupContext::Integers, BoundedEquivalence::Congruence(n)) => {
            if *n == 0 {
                return Err(Error::ZeroLevel);
            }
            (0..*n).map(|r| PresburgerSet::periodic(*n, &[r]).map(Into::into)).collect::<Result<_>>()?
        }
        (_, BoundedEquivalence::Congruence(_)) => {
            return Err(Error::ContextMismatch("congruences are defined on the integers".into()))
        }
        (_, BoundedEquivalence::Partition(classes)) => {
            let mut covered = DefinableSet::empty(ctx);
            for c in classes {
                c.expect_context(ctx)?;
                if c.is_empty() {
                    return Err(Error::NotAPartition("empty class".into()));
                }
                if !covered.intersection(c)?.is_empty() {
                    return Err(Error::NotAPartition("classes overlap".into()));
                }
                covered = covered.union(c)?;
            }
            if !covered.is_all() {
                return Err(Error::NotAPartition("classes do not cover the group".into()));
            }
            classes.clone()
        }
    };
    let group = coset_group(ctx, &classes)?;
    Ok(CompactQuotient { ctx: ctx.clone(), classes, group })
}

/// The level-`n` approximation of the smallest bounded-index type-definable
/// subgroup: `nZ` on the integers, trivial on finite groups.
pub fn g00_at_level(ctx: &GroupContext, level: Level) -> Subgroup {
    match ctx {
        GroupContext::Integers => Subgroup::Multiples(level.get()),
        GroupContext::Finite(g) => Subgroup::Elements(vec![g.identity()]),
        GroupContext::Product(l, r) => {
            Subgroup::Product(Box::new(g00_at_level(l, level)), Box::new(g00_at_level(r, level)))
        }
    }
}

/// Is `a ⊇ b` as subgroups?
pub fn subgroup_contains(a: &Subgroup, b: &Subgroup) -> bool {
    match (a, b) {
        (Subgroup::Multiples(m), Subgroup::Multiples(n)) => *n % *m == 0,
        (Subgroup::Elements(x), Subgroup::Elements(y)) => y.iter().all(|e| x.contains(e)),
        (Subgroup::Product(a1, a2), Subgroup::Product(b1, b2)) => subgroup_contains(a1, b1) && subgroup_contains(a2, b2),
        _ => false,
    }
}

/// A definable compactification `G → C` in a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompactificationTarget {
    /// `Z → Z/m`.
    Cyclic(u64),
    /// `G → G/N` for a normal subgroup given by element indices.
    Quotient(Vec<usize>),
}

/// The factoring map from the universal quotient onto a family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMap {
    pub target: CompactificationTarget,
    pub target_quotient: CompactQuotient,
    /// Image class of each class of the universal quotient.
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalCompactification {
    pub level: u64,
    pub quotient: CompactQuotient,
    pub maps: Vec<ReductionMap>,
}

fn target_quotient(ctx: &GroupContext, level: Level, t: &CompactificationTarget) -> Result<CompactQuotient> {
    match (ctx, t) {
        (GroupContext::Integers, CompactificationTarget::Cyclic(m)) => {
            if *m == 0 || level.get() % m != 0 {
                return Err(Error::LevelTooCoarse { period: *m, level: level.get() });
            }
            logic_quotient(ctx, &BoundedEquivalence::Congruence(*m))
        }
        (GroupContext::Finite(g), CompactificationTarget::Quotient(normal)) => {
            let n = DefinableSet::from_elements(ctx, &normal.iter().map(|&i| GroupElement::Index(i)).collect::<Vec<_>>())?;
            let mut classes: Vec<DefinableSet> = Vec::new();
            for a in 0..g.order() {
                let coset = n.translate(ctx, &GroupElement::Index(a))?;
                if !classes.contains(&coset) {
                    classes.push(coset);
                }
            }
            let q = logic_quotient(ctx, &BoundedEquivalence::Partition(classes))?;
            if q.group.is_none() {
                return Err(Error::NotAHomomorphism("target subgroup is not normal".into()));
            }
            Ok(q)
        }
        _ => Err(Error::ContextMismatch("compactification target does not match the backend".into())),
    }
}

/// `G/G00` at the level together with the unique commuting homomorphism
/// onto each family member.
pub fn universal_compactification(
    ctx: &GroupContext,
    level: Level,
    family: &[CompactificationTarget],
) -> Result<UniversalCompactification> {
    let quotient = match ctx {
        GroupContext::Integers => logic_quotient(ctx, &BoundedEquivalence::Congruence(level.get()))?,
        GroupContext::Finite(g) => {
            let points = (0..g.order())
                .map(|i| DefinableSet::from_elements(ctx, &[GroupElement::Index(i)]))
                .collect::<Result<Vec<_>>>()?;
            logic_quotient(ctx, &BoundedEquivalence::Partition(points))?
        }
        GroupContext::Product(..) => {
            return Err(Error::Unsupported("compactification of product backends".into()))
        }
    };
    let group = quotient.group.clone().expect("coset quotient");
    let mut maps = Vec::new();
    for t in family {
        let tq = target_quotient(ctx, level, t)?;
        let tg = tq.group.clone().expect("coset quotient");
        let mut values = Vec::with_capacity(quotient.len());
        for (i, class) in quotient.classes.iter().enumerate() {
            let v = tq.project(&quotient.representative(i))?;
            // every element of the class must land in the same target class
            if !class.minus(&tq.classes[v])?.is_empty() {
                return Err(Error::NotAHomomorphism(format!("class {i} splits over the target")));
            }
            values.push(v);
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if values[group.mul(a, b)] != tg.mul(values[a], values[b]) {
                    return Err(Error::NotAHomomorphism("reduction map is not a homomorphism".into()));
                }
            }
        }
        if (0..tq.len()).any(|c| !values.contains(&c)) {
            return Err(Error::ImageNotDense("reduction map is not onto".into()));
        }
        maps.push(ReductionMap { target: t.clone(), target_quotient: tq, values });
    }
    Ok(UniversalCompactification { level: level.get(), quotient, maps })
}

/// Reduction maps `Z/n → Z/m` along a divisor chain, checked to commute.
pub fn inverse_system(levels: &[Level]) -> Result<Vec<(u64, u64, Vec<usize>)>> {
    let mut out = Vec::new();
    for (i, n) in levels.iter().enumerate() {
        for m in &levels[..i] {
            if !m.divides(*n) {
                return Err(Error::NotADivisor { target: m.get(), level: n.get() });
            }
            let map: Vec<usize> = (0..n.get()).map(|x| (x % m.get()) as usize).collect();
            out.push((n.get(), m.get(), map));
        }
    }
    for (n, m, nm) in &out {
        for (n2, k, nk) in &out {
            if n2 != n {
                continue;
            }
            if let Some((_, _, mk)) = out.iter().find(|(a, b, _)| a == m && b == k) {
                if (0..*n as usize).any(|x| mk[nm[x]] != nk[x]) {
                    return Err(Error::Invalid("inverse system does not commute".into()));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismVerdict {
    /// Image of the generator 1 (integers only).
    pub generator_image: Option<usize>,
    /// `f⁻¹(c)` for each element `c` of the target.
    pub fibers: Vec<DefinableSet>,
    /// Level of the universal quotient the map factors through.
    pub factor_level: u64,
    /// Induced homomorphism on the classes of that quotient.
    pub factor_map: Vec<usize>,
    pub closure_checks: usize,
}

/// Checks that `f : G → C` is a definable homomorphism with dense image and
/// factors it through the universal compactification. `level`, when given,
/// must be a multiple of the fiber modulus.
pub fn definable_homomorphism_check(
    ctx: &GroupContext,
    target: &FiniteGroup,
    f: &DefinableMap,
    level: Option<Level>,
) -> Result<HomomorphismVerdict> {
    match (ctx, f) {
        (GroupContext::Integers, DefinableMap::Periodic(map)) => integer_homomorphism(target, map, level),
        (GroupContext::Finite(g), DefinableMap::Table(values)) => finite_homomorphism(ctx, g, target, values),
        _ => Err(Error::ContextMismatch("map does not match the backend".into())),
    }
}

fn power(c: &FiniteGroup, x: usize, k: i64) -> usize {
    let ord = c.element_order(x) as i64;
    let mut y = c.identity();
    for _ in 0..k.rem_euclid(ord) {
        y = c.mul(y, x);
    }
    y
}

fn integer_homomorphism(
    c: &FiniteGroup,
    f: &EventuallyPeriodicMap,
    level: Option<Level>,
) -> Result<HomomorphismVerdict> {
    if f.period == 0
        || f.up.len() as u64 != f.period
        || f.down.len() as u64 != f.period
        || f.up.iter().chain(&f.down).chain(&f.values).any(|&v| v as usize >= c.order())
    {
        return Err(Error::Invalid("map values must be elements of the target".into()));
    }
    let gen = f.eval(1) as usize;
    let ord = c.element_order(gen) as u64;
    let p = f.period.lcm(&ord) as i64;
    let f_hi = f.lo + f.values.len() as i64 - 1;
    let (from, to) = (f.lo.min(0) - p, f_hi.max(0) + p);
    for x in from..=to {
        if f.eval(x) as usize != power(c, gen, x) {
            return Err(Error::NotAHomomorphism(format!("f({x}) differs from the power of f(1)")));
        }
    }
    let k = ord;
    if (0..k as i64).map(|x| power(c, gen, x)).collect::<std::collections::BTreeSet<_>>().len() != c.order() {
        return Err(Error::ImageNotDense(format!("image has {} of {} elements", ord, c.order())));
    }
    let mut fibers = Vec::with_capacity(c.order());
    for v in 0..c.order() {
        let pat = |vals: &[u64]| vals.iter().map(|&w| w as usize == v).collect::<Vec<bool>>();
        let bits = pat(&f.values);
        let (lo, hi) = if bits.is_empty() { (0, -1) } else { (f.lo, f_hi) };
        fibers.push(PresburgerSet::new(f.period, pat(&f.up), pat(&f.down), lo, hi, bits)?.into());
    }
    let fiber_modulus = fibers.iter().map(|s: &DefinableSet| s.period()).fold(1, |a, b| a.lcm(&b));
    let factor_level = match level {
        Some(l) if l.get() % fiber_modulus != 0 => {
            return Err(Error::LevelTooCoarse { period: fiber_modulus, level: l.get() })
        }
        Some(l) => l.get(),
        None => fiber_modulus,
    };
    let z = GroupContext::Integers;
    let quotient = universal_compactification(&z, Level::new(factor_level)?, &[])?.quotient;
    let factor_map: Vec<usize> = (0..factor_level as i64).map(|x| power(c, gen, x)).collect();
    let qg = quotient.group().expect("cyclic quotient");
    for a in 0..qg.order() {
        for b in 0..qg.order() {
            if factor_map[qg.mul(a, b)] != c.mul(factor_map[a], factor_map[b]) {
                return Err(Error::NotAHomomorphism("induced map on the quotient".into()));
            }
        }
    }
    // image of a sumset is the product of images
    let image = |s: &PresburgerSet| -> std::collections::BTreeSet<usize> {
        let span = s.modulus().lcm(&(p as u64)) as i64;
        let (lo, hi) = s.window();
        ((lo.min(f.lo) - span)..=(hi.max(f_hi) + span)).filter(|&x| s.contains(x)).map(|x| f.eval(x) as usize).collect()
    };
    let mut samples: Vec<PresburgerSet> = (0..factor_level.min(6)).map(|r| PresburgerSet::periodic(factor_level, &[r])).collect::<Result<_>>()?;
    samples.push(PresburgerSet::at_least(0)?);
    samples.push(PresburgerSet::at_most(-1)?);
    samples.push(PresburgerSet::finite(&[0, 3])?);
    let mut closure_checks = 0;
    for a in &samples {
        for b in &samples {
            let lhs = image(&a.sumset(b)?);
            let ia = image(a);
            let ib = image(b);
            let rhs: std::collections::BTreeSet<usize> =
                ia.iter().flat_map(|&x| ib.iter().map(move |&y| c.mul(x, y))).collect();
            if lhs != rhs {
                return Err(Error::NotAHomomorphism("image of a sumset differs from the product of images".into()));
            }
            closure_checks += 1;
        }
    }
    Ok(HomomorphismVerdict { generator_image: Some(gen), fibers, factor_level, factor_map, closure_checks })
}

fn finite_homomorphism(
    ctx: &GroupContext,
    g: &FiniteGroup,
    c: &FiniteGroup,
    values: &[u64],
) -> Result<HomomorphismVerdict> {
    if values.len() != g.order() || values.iter().any(|&v| v as usize >= c.order()) {
        return Err(Error::Invalid("map table must list one target element per group element".into()));
    }
    let f = |a: usize| values[a] as usize;
    for a in 0..g.order() {
        for b in 0..g.order() {
            if f(g.mul(a, b)) != c.mul(f(a), f(b)) {
                return Err(Error::NotAHomomorphism(format!("f(#{a}·#{b}) differs from f(#{a})·f(#{b})")));
            }
        }
    }
    if (0..c.order()).any(|v| !values.contains(&(v as u64))) {
        return Err(Error::ImageNotDense("map is not onto".into()));
    }
    let mut fibers = Vec::with_capacity(c.order());
    for v in 0..c.order() {
        let elems: Vec<GroupElement> = (0..g.order()).filter(|&a| f(a) == v).map(GroupElement::Index).collect();
        fibers.push(DefinableSet::from_elements(ctx, &elems)?);
    }
    let mut closure_checks = 0;
    let singles: Vec<DefinableSet> =
        (0..g.order()).map(|a| DefinableSet::from_elements(ctx, &[GroupElement::Index(a)])).collect::<Result<_>>()?;
    let samples: Vec<&DefinableSet> = singles.iter().chain(fibers.iter()).collect();
    let image = |s: &DefinableSet| -> std::collections::BTreeSet<usize> {
        (0..g.order()).filter(|&a| s.contains_element(&GroupElement::Index(a)).unwrap_or(false)).map(f).collect()
    };
    for a in &samples {
        for b in &samples {
            let lhs = image(&a.product_set(ctx, b)?);
            let rhs: std::collections::BTreeSet<usize> =
                image(a).iter().flat_map(|&x| image(b).into_iter().map(move |y| c.mul(x, y))).collect();
            if lhs != rhs {
                return Err(Error::NotAHomomorphism("image of a product set differs".into()));
            }
            closure_checks += 1;
        }
    }
    Ok(HomomorphismVerdict {
        generator_image: None,
        fibers,
        factor_level: 1,
        factor_map: (0..g.order()).map(f).collect(),
        closure_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn lv(n: u64) -> Level {
        Level::new(n).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let z = GroupContext::Integers;
        let q = logic_quotient(&z, &BoundedEquivalence::Congruence(6)).unwrap();
        assert_eq!(q.len(), 6);
        assert_eq!(q.project(&GroupElement::Int(-1)).unwrap(), 5);
        assert_eq!(q.group().unwrap().order(), 6);
        for i in 0..6 {
            assert_eq!(q.project(&q.representative(i)).unwrap(), i);
        }
        let c3 = GroupContext::cyclic(3).unwrap();
        let points: Vec<DefinableSet> =
            (0..3).map(|i| DefinableSet::from_elements(&c3, &[GroupElement::Index(i)]).unwrap()).collect();
        let q = logic_quotient(&c3, &BoundedEquivalence::Partition(points)).unwrap();
        assert_eq!(q.group().unwrap().table(), catalog::cyclic(3).unwrap().table());
        assert_eq!(logic_quotient(&z, &BoundedEquivalence::Congruence(1)).unwrap().len(), 1);
        let overlap = vec![PresburgerSet::evens().into(), PresburgerSet::at_least(0).unwrap().into()];
        assert!(matches!(
            logic_quotient(&z, &BoundedEquivalence::Partition(overlap)),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn non_coset_partition_has_no_group() {
        let z = GroupContext::Integers;
        let up: DefinableSet = PresburgerSet::at_least(0).unwrap().into();
        let q = logic_quotient(&z, &BoundedEquivalence::Partition(vec![up.clone(), up.complement().unwrap()])).unwrap();
        assert!(q.group().is_none());
    }

    #[test]
    fn g00_examples() {
        let z = GroupContext::Integers;
        assert_eq!(g00_at_level(&z, lv(12)), Subgroup::Multiples(12));
        assert!(subgroup_contains(&g00_at_level(&z, lv(6)), &g00_at_level(&z, lv(12))));
        assert!(!subgroup_contains(&g00_at_level(&z, lv(12)), &g00_at_level(&z, lv(6))));
        let s3 = GroupContext::Finite(catalog::by_name("S3").unwrap());
        assert_eq!(g00_at_level(&s3, lv(5)), Subgroup::Elements(vec![0]));
    }

    #[test]
    fn universal_examples() {
        let z = GroupContext::Integers;
        let family = [CompactificationTarget::Cyclic(2), CompactificationTarget::Cyclic(3)];
        let u = universal_compactification(&z, lv(6), &family).unwrap();
        assert_eq!(u.quotient.len(), 6);
        assert_eq!(u.maps[0].values, vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(u.maps[1].values, vec![0, 1, 2, 0, 1, 2]);
        assert!(matches!(
            universal_compactification(&z, lv(6), &[CompactificationTarget::Cyclic(4)]),
            Err(Error::LevelTooCoarse { period: 4, level: 6 })
        ));
        let s3 = GroupContext::Finite(catalog::by_name("S3").unwrap());
        let u = universal_compactification(&s3, lv(1), &[CompactificationTarget::Quotient(vec![0])]).unwrap();
        assert_eq!(u.quotient.len(), 6);
        assert_eq!(u.maps[0].values, (0..6).collect::<Vec<_>>());
        // the rotations form a normal subgroup of index 2
        let u = universal_compactification(&s3, lv(1), &[CompactificationTarget::Quotient(vec![0, 1, 2])]).unwrap();
        assert_eq!(u.maps[0].target_quotient.len(), 2);
        assert!(universal_compactification(&s3, lv(1), &[CompactificationTarget::Quotient(vec![0, 3])]).is_err());
    }

    #[test]
    fn inverse_system_commutes() {
        let chain: Vec<Level> = [1, 2, 4, 12, 24].iter().map(|&n| lv(n)).collect();
        let maps = inverse_system(&chain).unwrap();
        assert_eq!(maps.len(), 10);
        assert!(inverse_system(&[lv(4), lv(6)]).is_err());
    }

    #[test]
    fn homomorphism_examples() {
        let z = GroupContext::Integers;
        let c4 = catalog::cyclic(4).unwrap();
        let mod4 = DefinableMap::Periodic(EventuallyPeriodicMap::periodic(vec![0, 1, 2, 3]));
        let v = definable_homomorphism_check(&z, &c4, &mod4, Some(lv(12))).unwrap();
        assert_eq!(v.factor_level, 12);
        assert_eq!(v.factor_map[5], 1);
        assert_eq!(v.fibers[1], PresburgerSet::periodic(4, &[1]).unwrap().into());
        let c2 = catalog::cyclic(2).unwrap();
        let zero = DefinableMap::Periodic(EventuallyPeriodicMap::periodic(vec![0]));
        assert!(matches!(definable_homomorphism_check(&z, &c2, &zero, None), Err(Error::ImageNotDense(_))));
        let bad = DefinableMap::Periodic(EventuallyPeriodicMap {
            period: 2,
            up: vec![0, 1],
            down: vec![0, 1],
            lo: 5,
            values: vec![0],
        });
        assert!(matches!(definable_homomorphism_check(&z, &c2, &bad, None), Err(Error::NotAHomomorphism(_))));
        let c6 = GroupContext::cyclic(6).unwrap();
        let c3 = catalog::cyclic(3).unwrap();
        let canon = DefinableMap::Table(vec![0, 1, 2, 0, 1, 2]);
        let v = definable_homomorphism_check(&c6, &c3, &canon, None).unwrap();
        assert_eq!(v.fibers.len(), 3);
        assert!(v.closure_checks > 0);
    }
}
