//! Group backends: finite groups given by multiplication tables, the
//! integers, and binary products of these.

use std::fmt;

use crate::error::{Error, Result};

/// A finite group stored as a row-major Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Builds a group from a row-major table, checking closure, identity,
    /// inverses and associativity.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::NotAGroup("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::NotAGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::NotAGroup(format!("entry {bad} out of range")));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { order, table, inverses, identity })
    }

    /// Builds a table from an explicit element list and a closed operation.
    pub fn from_operation<T: PartialEq + Clone>(
        elements: &[T],
        op: impl Fn(&T, &T) -> T,
    ) -> Result<Self> {
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let c = op(a, b);
                let idx = elements
                    .iter()
                    .position(|x| *x == c)
                    .ok_or_else(|| Error::NotAGroup("operation is not closed".into()))?;
                table.push(idx);
            }
        }
        Self::from_table(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupContext {
    Finite(FiniteGroup),
    Integers,
    Product(Box<GroupContext>, Box<GroupContext>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Int(i64),
    Index(usize),
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl GroupElement {
    pub fn pair(a: GroupElement, b: GroupElement) -> Self {
        GroupElement::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            GroupElement::Int(x) => Some(*x),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Int(x) => write!(f, "{x}"),
            GroupElement::Index(i) => write!(f, "#{i}"),
            GroupElement::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

impl GroupContext {
    pub fn cyclic(n: usize) -> Result<Self> {
        Ok(GroupContext::Finite(catalog::cyclic(n)?))
    }

    pub fn finite(order: usize, table: Vec<usize>) -> Result<Self> {
        Ok(GroupContext::Finite(FiniteGroup::from_table(order, table)?))
    }

    /// Product of two backends; nesting deeper than two products is refused.
    pub fn product(left: GroupContext, right: GroupContext) -> Result<Self> {
        let ctx = GroupContext::Product(Box::new(left), Box::new(right));
        if ctx.depth() > 2 {
            return Err(Error::ProductTooDeep);
        }
        Ok(ctx)
    }

    pub fn depth(&self) -> usize {
        match self {
            GroupContext::Product(a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, GroupContext::Integers)
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupContext::Finite(g) => Some(g.order()),
            GroupContext::Integers => None,
            GroupContext::Product(a, b) => Some(a.order()? * b.order()?),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupContext::Finite(g) => GroupElement::Index(g.identity()),
            GroupContext::Integers => GroupElement::Int(0),
            GroupContext::Product(a, b) => GroupElement::pair(a.identity(), b.identity()),
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        match (self, g) {
            (GroupContext::Finite(grp), GroupElement::Index(i)) if *i < grp.order() => Ok(()),
            (GroupContext::Integers, GroupElement::Int(_)) => Ok(()),
            (GroupContext::Product(a, b), GroupElement::Pair(x, y)) => {
                a.check(x)?;
                b.check(y)
            }
            _ => Err(Error::ContextMismatch(format!("element {g} does not belong to {self}"))),
        }
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        self.compose_unchecked(g, h)
    }

    fn compose_unchecked(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        Ok(match (self, g, h) {
            (GroupContext::Finite(grp), GroupElement::Index(a), GroupElement::Index(b)) => {
                GroupElement::Index(grp.mul(*a, *b))
            }
            (GroupContext::Integers, GroupElement::Int(a), GroupElement::Int(b)) => {
                GroupElement::Int(a.checked_add(*b).ok_or(Error::Overflow)?)
            }
            (GroupContext::Product(l, r), GroupElement::Pair(a1, b1), GroupElement::Pair(a2, b2)) => {
                GroupElement::pair(l.compose_unchecked(a1, a2)?, r.compose_unchecked(b1, b2)?)
            }
            _ => unreachable!("checked by caller"),
        })
    }

    pub fn invert(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(match (self, g) {
            (GroupContext::Finite(grp), GroupElement::Index(a)) => GroupElement::Index(grp.inv(*a)),
            (GroupContext::Integers, GroupElement::Int(a)) => {
                GroupElement::Int(a.checked_neg().ok_or(Error::Overflow)?)
            }
            (GroupContext::Product(l, r), GroupElement::Pair(a, b)) => {
                GroupElement::pair(l.invert(a)?, r.invert(b)?)
            }
            _ => unreachable!(),
        })
    }

    /// All elements of a finite backend, in index order.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            GroupContext::Finite(g) => Some((0..g.order()).map(GroupElement::Index).collect()),
            GroupContext::Integers => None,
            GroupContext::Product(a, b) => {
                let left = a.elements()?;
                let right = b.elements()?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for x in &left {
                    for y in &right {
                        out.push(GroupElement::pair(x.clone(), y.clone()));
                    }
                }
                Some(out)
            }
        }
    }

    /// A generating set, used to test invariance of finite pieces.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupContext::Finite(g) => (0..g.order())
                .filter(|&i| i != g.identity())
                .map(GroupElement::Index)
                .collect(),
            GroupContext::Integers => vec![GroupElement::Int(1)],
            GroupContext::Product(a, b) => {
                let mut out: Vec<GroupElement> = a
                    .generators()
                    .into_iter()
                    .map(|x| GroupElement::pair(x, b.identity()))
                    .collect();
                out.extend(
                    b.generators()
                        .into_iter()
                        .map(|y| GroupElement::pair(a.identity(), y)),
                );
                out
            }
        }
    }

    /// Does the backend contain an integer factor anywhere?
    pub fn has_integers(&self) -> bool {
        match self {
            GroupContext::Integers => true,
            GroupContext::Finite(_) => false,
            GroupContext::Product(a, b) => a.has_integers() || b.has_integers(),
        }
    }
}

impl fmt::Display for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupContext::Finite(g) => write!(f, "finite group of order {}", g.order()),
            GroupContext::Integers => write!(f, "Z"),
            GroupContext::Product(a, b) => write!(f, "({a}) x ({b})"),
        }
    }
}

/// The bundled table set: every group of order at most 8, plus builders.
pub mod catalog {
    use super::FiniteGroup;
    use crate::error::{Error, Result};

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::NotAGroup("order must be positive".into()));
        }
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup::from_table(n, table)
    }

    /// Dihedral group of order `2n`; element `k + n*s` is `r^k s^s`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        let elements: Vec<(usize, usize)> =
            (0..2).flat_map(|s| (0..n).map(move |k| (k, s))).collect();
        FiniteGroup::from_operation(&elements, |&(k1, s1), &(k2, s2)| {
            // r^k1 s^s1 r^k2 s^s2 = r^(k1 ± k2) s^(s1+s2)
            let k = if s1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            (k, (s1 + s2) % 2)
        })
    }

    pub fn quaternion() -> Result<FiniteGroup> {
        // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
        const UNIT: [[(i8, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let elements: Vec<(i8, usize)> =
            [1i8, -1].iter().flat_map(|&s| (0..4).map(move |u| (s, u))).collect();
        FiniteGroup::from_operation(&elements, |&(s1, u1), &(s2, u2)| {
            let (s, u) = UNIT[u1][u2];
            (s1 * s2 * s, u)
        })
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let elements: Vec<(usize, usize)> = (0..a.order())
            .flat_map(|x| (0..b.order()).map(move |y| (x, y)))
            .collect();
        FiniteGroup::from_operation(&elements, |&(x1, y1), &(x2, y2)| {
            (a.mul(x1, x2), b.mul(y1, y2))
        })
    }

    /// Named groups of orders 1 through 8 (one per isomorphism class).
    pub fn bundled() -> Vec<(&'static str, FiniteGroup)> {
        let c = |n| cyclic(n).expect("cyclic table");
        vec![
            ("C1", c(1)),
            ("C2", c(2)),
            ("C3", c(3)),
            ("C4", c(4)),
            ("C2xC2", direct_product(&c(2), &c(2)).expect("V4")),
            ("C5", c(5)),
            ("C6", c(6)),
            ("S3", dihedral(3).expect("S3")),
            ("C7", c(7)),
            ("C8", c(8)),
            ("C4xC2", direct_product(&c(4), &c(2)).expect("C4xC2")),
            (
                "C2xC2xC2",
                direct_product(&direct_product(&c(2), &c(2)).expect("V4"), &c(2)).expect("C2^3"),
            ),
            ("D4", dihedral(4).expect("D4")),
            ("Q8", quaternion().expect("Q8")),
        ]
    }

    pub fn by_name(name: &str) -> Option<FiniteGroup> {
        bundled().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> GroupElement {
        GroupElement::Int(x)
    }

    #[test]
    fn compose_examples() {
        let z = GroupContext::Integers;
        assert_eq!(z.compose(&int(3), &int(4)).unwrap(), int(7));
        let c3 = GroupContext::cyclic(3).unwrap();
        assert_eq!(
            c3.compose(&GroupElement::Index(1), &GroupElement::Index(2)).unwrap(),
            GroupElement::Index(0)
        );
        let p = GroupContext::product(GroupContext::Integers, GroupContext::cyclic(2).unwrap())
            .unwrap();
        let a = GroupElement::pair(int(1), GroupElement::Index(1));
        let b = GroupElement::pair(int(2), GroupElement::Index(1));
        assert_eq!(
            p.compose(&a, &b).unwrap(),
            GroupElement::pair(int(3), GroupElement::Index(0))
        );
    }

    #[test]
    fn invert_examples() {
        assert_eq!(GroupContext::Integers.invert(&int(5)).unwrap(), int(-5));
        let c3 = GroupContext::cyclic(3).unwrap();
        assert_eq!(c3.invert(&GroupElement::Index(1)).unwrap(), GroupElement::Index(2));
        assert_eq!(c3.invert(&c3.identity()).unwrap(), c3.identity());
    }

    #[test]
    fn context_mismatch() {
        let c3 = GroupContext::cyclic(3).unwrap();
        assert!(matches!(
            c3.compose(&int(1), &GroupElement::Index(0)),
            Err(Error::ContextMismatch(_))
        ));
        assert!(c3.compose(&GroupElement::Index(3), &GroupElement::Index(0)).is_err());
        assert!(GroupContext::Integers.invert(&GroupElement::Index(0)).is_err());
    }

    #[test]
    fn rejects_non_groups() {
        // no inverses: constant table
        assert!(FiniteGroup::from_table(2, vec![0, 0, 0, 0]).is_err());
        // not associative: a quasigroup with identity 0
        let t = vec![0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0];
        assert!(matches!(FiniteGroup::from_table(5, t), Err(Error::NotAGroup(_))));
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn product_depth_guard() {
        let z = GroupContext::Integers;
        let p1 = GroupContext::product(z.clone(), z.clone()).unwrap();
        let p2 = GroupContext::product(p1.clone(), z.clone()).unwrap();
        assert_eq!(p2.depth(), 2);
        assert!(matches!(GroupContext::product(p2, z), Err(Error::ProductTooDeep)));
    }

    #[test]
    fn bundled_groups_are_groups_with_expected_orders() {
        let orders: Vec<usize> = catalog::bundled().iter().map(|(_, g)| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
        // the two nonabelian groups of order 8 are distinguished by element orders
        let d4 = catalog::by_name("D4").unwrap();
        let q8 = catalog::by_name("Q8").unwrap();
        let involutions = |g: &FiniteGroup| (0..8).filter(|&a| g.element_order(a) == 2).count();
        assert_eq!(involutions(&d4), 5);
        assert_eq!(involutions(&q8), 1);
        for (_, g) in catalog::bundled() {
            assert_eq!(g.identity(), 0);
        }
    }

    #[test]
    fn exhaustive_laws_small_tables() {
        for (_, g) in catalog::bundled() {
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.inv(g.inv(a)), a);
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
        let c12 = catalog::cyclic(12).unwrap();
        for a in 0..12 {
            for b in 0..12 {
                for c in 0..12 {
                    assert_eq!(c12.mul(c12.mul(a, b), c), c12.mul(a, c12.mul(b, c)));
                }
            }
        }
    }
}
