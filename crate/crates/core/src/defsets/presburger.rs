//! One-variable definable subsets of `(Z, +, <, ≡)` in eventually-periodic
//! normal form.
//!
//! A set is described by a period `N`, the residues it eventually contains
//! toward `+∞` (`up`) and toward `-∞` (`down`), and explicit membership on a
//! finite window `[lo, hi]`. The canonical form uses the least common period
//! of the two tails and the smallest window outside of which the tails are
//! exact, so structural equality coincides with set equality.

use num_integer::Integer;

use crate::error::{Error, Result};

use super::modulus_guard;

const BOUND: i64 = 1 << 60;

/// Largest explicit window a set may carry.
pub const MAX_WINDOW: i64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresburgerSet {
    modulus: u64,
    up: Vec<bool>,
    down: Vec<bool>,
    lo: i64,
    hi: i64,
    bits: Vec<bool>,
}

fn residue(x: i64, n: u64) -> usize {
    x.rem_euclid(n as i64) as usize
}

fn check_bound(x: i64) -> Result<i64> {
    if (-BOUND..=BOUND).contains(&x) {
        Ok(x)
    } else {
        Err(Error::Overflow)
    }
}

pub(crate) fn guarded_lcm(a: u64, b: u64) -> Result<u64> {
    let l = a.lcm(&b);
    let guard = modulus_guard();
    if l > guard {
        return Err(Error::ModulusGuard { modulus: l, guard });
    }
    Ok(l)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_period(pattern: &[bool], d: usize) -> bool {
    (0..pattern.len()).all(|r| pattern[r] == pattern[r % d])
}

/// Least `d | n` such that both patterns are `d`-periodic.
fn minimal_period(up: &[bool], down: &[bool]) -> usize {
    let mut n = up.len();
    for p in prime_factors(n as u64) {
        let p = p as usize;
        while n % p == 0 && is_period(&up[..n], n / p) && is_period(&down[..n], n / p) {
            n /= p;
        }
    }
    n
}

impl PresburgerSet {
    /// Builds the canonical form of an arbitrary (possibly redundant)
    /// description. `bits` must cover `[lo, hi]`; an empty window is written
    /// with `hi = lo - 1`.
    pub fn new(
        modulus: u64,
        up: Vec<bool>,
        down: Vec<bool>,
        lo: i64,
        hi: i64,
        bits: Vec<bool>,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Invalid("modulus must be at least 1".into()));
        }
        let guard = modulus_guard();
        if modulus > guard {
            return Err(Error::ModulusGuard { modulus, guard });
        }
        if up.len() as u64 != modulus || down.len() as u64 != modulus {
            return Err(Error::Invalid("residue patterns must have length equal to the modulus".into()));
        }
        check_bound(lo)?;
        check_bound(hi)?;
        let width = hi - lo + 1;
        if width > MAX_WINDOW {
            return Err(Error::WindowGuard { width, limit: MAX_WINDOW });
        }
        if width < 0 || bits.len() as i64 != width {
            return Err(Error::Invalid(format!(
                "window [{lo}, {hi}] does not match {} membership bits",
                bits.len()
            )));
        }
        let raw = PresburgerSet { modulus, up, down, lo, hi, bits };
        Ok(raw.canonicalize())
    }

    /// Builds a set from tails and a membership function on `[lo, hi]`.
    fn from_fn(
        modulus: u64,
        up: Vec<bool>,
        down: Vec<bool>,
        lo: i64,
        hi: i64,
        member: impl Fn(i64) -> bool,
    ) -> Result<Self> {
        if hi - lo + 1 > MAX_WINDOW {
            return Err(Error::WindowGuard { width: hi - lo + 1, limit: MAX_WINDOW });
        }
        let bits = if hi >= lo { (lo..=hi).map(member).collect() } else { Vec::new() };
        Self::new(modulus, up, down, lo, hi.max(lo - 1), bits)
    }

    fn canonicalize(self) -> Self {
        let n = self.modulus as i64;
        let up_at = |x: i64| self.up[residue(x, self.modulus)];
        let down_at = |x: i64| self.down[residue(x, self.modulus)];
        // last disagreement with the upper tail, first with the lower tail
        let last_up = ((self.lo - n)..=self.hi).rev().find(|&x| self.contains(x) != up_at(x));
        let first_down = (self.lo..=(self.hi + n)).find(|&x| self.contains(x) != down_at(x));
        let d = minimal_period(&self.up, &self.down);
        let up: Vec<bool> = self.up[..d].to_vec();
        let down: Vec<bool> = self.down[..d].to_vec();
        let modulus = d as u64;
        match (last_up, first_down) {
            (Some(h), Some(l)) if l <= h => {
                let bits = (l..=h).map(|x| self.contains(x)).collect();
                PresburgerSet { modulus, up, down, lo: l, hi: h, bits }
            }
            (Some(h), _) => PresburgerSet { modulus, up, down, lo: h + 1, hi: h, bits: Vec::new() },
            _ => {
                debug_assert!(first_down.is_none());
                PresburgerSet { modulus, up, down, lo: 0, hi: -1, bits: Vec::new() }
            }
        }
    }

    pub fn empty() -> Self {
        PresburgerSet { modulus: 1, up: vec![false], down: vec![false], lo: 0, hi: -1, bits: vec![] }
    }

    pub fn all() -> Self {
        PresburgerSet { modulus: 1, up: vec![true], down: vec![true], lo: 0, hi: -1, bits: vec![] }
    }

    /// Union of residue classes `r + nZ`.
    pub fn periodic(modulus: u64, residues: &[u64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Invalid("modulus must be at least 1".into()));
        }
        let mut pattern = vec![false; modulus as usize];
        for &r in residues {
            pattern[(r % modulus) as usize] = true;
        }
        Self::new(modulus, pattern.clone(), pattern, 0, -1, vec![])
    }

    pub fn evens() -> Self {
        Self::periodic(2, &[0]).expect("valid")
    }

    pub fn odds() -> Self {
        Self::periodic(2, &[1]).expect("valid")
    }

    /// `{x : x >= k}`.
    pub fn at_least(k: i64) -> Result<Self> {
        check_bound(k)?;
        Self::new(1, vec![true], vec![false], k, k - 1, vec![])
    }

    /// `{x : x <= k}`.
    pub fn at_most(k: i64) -> Result<Self> {
        check_bound(k)?;
        Self::new(1, vec![false], vec![true], k + 1, k, vec![])
    }

    pub fn finite(points: &[i64]) -> Result<Self> {
        let (Some(&lo), Some(&hi)) = (points.iter().min(), points.iter().max()) else {
            return Ok(Self::empty());
        };
        check_bound(lo)?;
        check_bound(hi)?;
        Self::from_fn(1, vec![false], vec![false], lo, hi, |x| points.contains(&x))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn up(&self) -> &[bool] {
        &self.up
    }

    pub fn down(&self) -> &[bool] {
        &self.down
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn up_residues(&self) -> Vec<u64> {
        (0..self.modulus).filter(|&r| self.up[r as usize]).collect()
    }

    pub fn down_residues(&self) -> Vec<u64> {
        (0..self.modulus).filter(|&r| self.down[r as usize]).collect()
    }

    pub fn contains(&self, x: i64) -> bool {
        if x > self.hi {
            self.up[residue(x, self.modulus)]
        } else if x < self.lo {
            self.down[residue(x, self.modulus)]
        } else {
            self.bits[(x - self.lo) as usize]
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.up.iter().any(|&b| b) && !self.down.iter().any(|&b| b) && !self.bits.iter().any(|&b| b)
    }

    pub fn is_all(&self) -> bool {
        self.up.iter().all(|&b| b) && self.down.iter().all(|&b| b) && self.bits.iter().all(|&b| b)
    }

    /// True when the set is a union of residue classes.
    pub fn is_purely_periodic(&self) -> bool {
        self.up == self.down && self.bits.is_empty()
    }

    pub fn tail(&self, up: bool) -> &[bool] {
        if up {
            &self.up
        } else {
            &self.down
        }
    }

    pub fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        let n = guarded_lcm(self.modulus, other.modulus)?;
        let up: Vec<bool> = (0..n)
            .map(|r| op(self.up[(r % self.modulus) as usize], other.up[(r % other.modulus) as usize]))
            .collect();
        let down: Vec<bool> = (0..n)
            .map(|r| {
                op(self.down[(r % self.modulus) as usize], other.down[(r % other.modulus) as usize])
            })
            .collect();
        let f = |x: i64| op(self.contains(x), other.contains(x));
        // Between consecutive cuts each operand is either explicit or
        // periodic; a periodic stretch only needs one period scanned.
        let mut cuts = vec![self.lo, self.hi + 1, other.lo, other.hi + 1];
        cuts.sort_unstable();
        cuts.dedup();
        let width = |a: i64, b: i64| {
            let explicit = (self.lo <= a && b <= self.hi) || (other.lo <= a && b <= other.hi);
            if explicit {
                b - a + 1
            } else {
                (b - a + 1).min(n as i64)
            }
        };
        let ni = n as i64;
        let first = cuts[0];
        let last = *cuts.last().expect("nonempty");
        let mut segments: Vec<(i64, i64)> = vec![(first - ni, first - 1)];
        segments.extend(cuts.windows(2).map(|w| (w[0], w[1] - 1)));
        segments.push((last, last + ni - 1));

        let up_at = |x: i64| up[residue(x, n)];
        let down_at = |x: i64| down[residue(x, n)];
        let last_up = segments.iter().rev().find_map(|&(a, b)| {
            let start = b - width(a, b) + 1;
            (start..=b).rev().find(|&x| f(x) != up_at(x))
        });
        let first_down = segments.iter().find_map(|&(a, b)| {
            let end = a + width(a, b) - 1;
            (a..=end).find(|&x| f(x) != down_at(x))
        });
        match (last_up, first_down) {
            (Some(h), Some(l)) if l <= h => Self::from_fn(n, up, down, l, h, f),
            (Some(h), _) => Self::new(n, up, down, h + 1, h, Vec::new()),
            _ => Self::new(n, up, down, 0, -1, Vec::new()),
        }
    }

    pub fn complement(&self) -> Self {
        PresburgerSet {
            modulus: self.modulus,
            up: self.up.iter().map(|b| !b).collect(),
            down: self.down.iter().map(|b| !b).collect(),
            lo: self.lo,
            hi: self.hi,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
        .canonicalize()
    }

    /// `g + Y`.
    pub fn translate(&self, g: i64) -> Result<Self> {
        let lo = check_bound(self.lo.checked_add(g).ok_or(Error::Overflow)?)?;
        let hi = check_bound(self.hi.checked_add(g).ok_or(Error::Overflow)?)?;
        let n = self.modulus;
        let shift = |pat: &[bool]| (0..n).map(|r| pat[residue(r as i64 - g, n)]).collect();
        Ok(PresburgerSet { modulus: n, up: shift(&self.up), down: shift(&self.down), lo, hi, bits: self.bits.clone() }
            .canonicalize())
    }

    /// `-Y`.
    pub fn negate(&self) -> Self {
        let n = self.modulus;
        let flip = |pat: &[bool]| (0..n).map(|r| pat[residue(-(r as i64), n)]).collect();
        let mut bits = self.bits.clone();
        bits.reverse();
        PresburgerSet { modulus: n, up: flip(&self.down), down: flip(&self.up), lo: -self.hi, hi: -self.lo, bits }
            .canonicalize()
    }

    fn window_members(&self) -> Vec<i64> {
        (self.lo..=self.hi).filter(|&x| self.bits[(x - self.lo) as usize]).collect()
    }

    /// Minkowski sum `A + B`, computed exactly piece by piece: the finite
    /// window parts and the two tails of each operand.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        let mut pieces = Vec::new();
        let fa = self.window_members();
        let fb = other.window_members();
        let has_up_a = self.up.iter().any(|&b| b);
        let has_down_a = self.down.iter().any(|&b| b);
        let has_up_b = other.up.iter().any(|&b| b);
        let has_down_b = other.down.iter().any(|&b| b);

        if !fa.is_empty() && !fb.is_empty() {
            let pts: Vec<i64> = fa.iter().flat_map(|a| fb.iter().map(move |b| a + b)).collect();
            pieces.push(Self::finite(&pts)?);
        }
        let up_ray_a = UpRay { h: self.hi, pattern: &self.up };
        let up_ray_b = UpRay { h: other.hi, pattern: &other.up };
        if has_up_b && !fa.is_empty() {
            pieces.push(finite_plus_up(&fa, &up_ray_b)?);
        }
        if has_up_a && !fb.is_empty() {
            pieces.push(finite_plus_up(&fb, &up_ray_a)?);
        }
        // lower tails, by reflection
        let neg_a = self.negate();
        let neg_b = other.negate();
        let neg_fa: Vec<i64> = fa.iter().map(|x| -x).collect();
        let neg_fb: Vec<i64> = fb.iter().map(|x| -x).collect();
        if has_down_b && !fa.is_empty() {
            pieces.push(finite_plus_up(&neg_fa, &UpRay { h: neg_b.hi, pattern: &neg_b.up })?.negate());
        }
        if has_down_a && !fb.is_empty() {
            pieces.push(finite_plus_up(&neg_fb, &UpRay { h: neg_a.hi, pattern: &neg_a.up })?.negate());
        }
        if has_up_a && has_up_b {
            pieces.push(up_plus_up(&up_ray_a, &up_ray_b)?);
        }
        if has_down_a && has_down_b {
            let ra = UpRay { h: neg_a.hi, pattern: &neg_a.up };
            let rb = UpRay { h: neg_b.hi, pattern: &neg_b.up };
            pieces.push(up_plus_up(&ra, &rb)?.negate());
        }
        if has_up_a && has_down_b {
            pieces.push(opposite_tails(&self.up, &other.down)?);
        }
        if has_down_a && has_up_b {
            pieces.push(opposite_tails(&self.down, &other.up)?);
        }
        pieces
            .into_iter()
            .try_fold(Self::empty(), |acc, p| acc.combine(&p, |x, y| x || y))
    }

    /// `Y - Y`.
    pub fn difference_set(&self) -> Result<Self> {
        self.sumset(&self.negate())
    }

    /// Some member, preferring the window, then the upper tail.
    pub fn some_member(&self) -> Option<i64> {
        if let Some(x) = self.window_members().first() {
            return Some(*x);
        }
        let n = self.modulus as i64;
        if let Some(x) = ((self.hi + 1)..=(self.hi + n)).find(|&x| self.contains(x)) {
            return Some(x);
        }
        ((self.lo - n)..self.lo).rev().find(|&x| self.contains(x))
    }
}

struct UpRay<'a> {
    h: i64,
    pattern: &'a [bool],
}

impl UpRay<'_> {
    fn modulus(&self) -> u64 {
        self.pattern.len() as u64
    }

    fn contains(&self, x: i64) -> bool {
        x > self.h && self.pattern[residue(x, self.modulus())]
    }
}

/// `F + {x > h : x mod N in pattern}` for a finite nonempty `F`.
fn finite_plus_up(points: &[i64], ray: &UpRay<'_>) -> Result<PresburgerSet> {
    let n = ray.modulus();
    let up = (0..n)
        .map(|r| points.iter().any(|&a| ray.pattern[residue(r as i64 - a, n)]))
        .collect();
    let min = *points.iter().min().expect("nonempty");
    let max = *points.iter().max().expect("nonempty");
    let lo = check_bound(min + ray.h + 1)?;
    let hi = check_bound(max + ray.h)?;
    PresburgerSet::from_fn(n, up, vec![false; n as usize], lo, hi, |x| {
        points.iter().any(|&a| ray.contains(x - a))
    })
}

/// Sum of two upper rays. Every residue class modulo `L = lcm(N_A, N_B)`
/// is closed under `+L` inside the sum, and any reachable class is first
/// reached below `h_A + h_B + 2L`, after which the sum is periodic.
fn up_plus_up(a: &UpRay<'_>, b: &UpRay<'_>) -> Result<PresburgerSet> {
    let l = guarded_lcm(a.modulus(), b.modulus())?;
    let li = l as i64;
    let base = check_bound(a.h + b.h + 2)?;
    let stable = check_bound(a.h + b.h + 2 * li)?;
    let witnesses: Vec<i64> = ((a.h + 1)..=(a.h + li)).filter(|&x| a.contains(x)).collect();
    let member = |x: i64| witnesses.iter().any(|&w| b.contains(x - w));
    let mut up = vec![false; l as usize];
    for x in (stable + 1)..=(stable + li) {
        up[residue(x, l)] = member(x);
    }
    PresburgerSet::from_fn(l, up, vec![false; l as usize], base, stable, member)
}

/// Sum of an upper tail and a lower tail: the full classes `u + v` modulo
/// `gcd(N_A, N_B)`.
fn opposite_tails(up: &[bool], down: &[bool]) -> Result<PresburgerSet> {
    let (na, nb) = (up.len() as u64, down.len() as u64);
    let g = na.gcd(&nb);
    let mut residues = Vec::new();
    for u in (0..na).filter(|&u| up[u as usize]) {
        for v in (0..nb).filter(|&v| down[v as usize]) {
            residues.push((u + v) % g);
        }
    }
    PresburgerSet::periodic(g, &residues)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window_oracle(set: &PresburgerSet, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
        range.filter(|&x| set.contains(x)).collect()
    }

    #[test]
    fn canonical_evens_has_period_two_and_no_window() {
        let e = PresburgerSet::periodic(4, &[0, 2]).unwrap();
        assert_eq!(e, PresburgerSet::evens());
        assert_eq!(e.modulus(), 2);
        assert_eq!(e.window(), (0, -1));
    }

    #[test]
    fn nonnegative_evens() {
        let nn = PresburgerSet::at_least(0).unwrap();
        let x = PresburgerSet::evens().combine(&nn, |a, b| a && b).unwrap();
        assert_eq!(x.up_residues(), vec![0]);
        assert!(x.down_residues().is_empty());
        assert_eq!(x.modulus(), 2);
        assert!(x.contains(0) && x.contains(4) && !x.contains(-2) && !x.contains(3));
    }

    #[test]
    fn redundant_windows_collapse() {
        // {x >= 0} written with a large explicit window
        let bits: Vec<bool> = (-10..=10).map(|x| x >= 0).collect();
        let s = PresburgerSet::new(3, vec![true; 3], vec![false; 3], -10, 10, bits).unwrap();
        assert_eq!(s, PresburgerSet::at_least(0).unwrap());
        assert_eq!(s.window(), (0, -1));
    }

    #[test]
    fn empty_window_positions_split_point() {
        // evens at x >= 0, everything below 0: the split sits at 0
        let s = PresburgerSet::new(2, vec![true, false], vec![true, true], 0, -1, vec![]).unwrap();
        assert_eq!(s.window(), (0, -1));
        assert!(s.contains(-1) && s.contains(0) && !s.contains(1));
    }

    #[test]
    fn translate_evens_gives_odds() {
        assert_eq!(PresburgerSet::evens().translate(1).unwrap(), PresburgerSet::odds());
        let r = PresburgerSet::at_least(3).unwrap();
        assert_eq!(r.translate(-3).unwrap(), PresburgerSet::at_least(0).unwrap());
    }

    #[test]
    fn difference_of_nonnegative_evens_is_evens() {
        let y = PresburgerSet::evens()
            .combine(&PresburgerSet::at_least(0).unwrap(), |a, b| a && b)
            .unwrap();
        let d = y.difference_set().unwrap();
        assert_eq!(d, PresburgerSet::evens());
        // window-enumeration oracle over [-200, 200]
        let members: Vec<i64> = (-200..=200).filter(|&x| y.contains(x)).collect();
        let mut diffs: Vec<i64> = members
            .iter()
            .flat_map(|a| members.iter().map(move |b| a - b))
            .filter(|d| d.abs() <= 100)
            .collect();
        diffs.sort();
        diffs.dedup();
        assert_eq!(diffs, window_oracle(&d, -100..=100));
    }

    #[test]
    fn sumset_matches_enumeration() {
        let a = PresburgerSet::new(3, vec![true, false, false], vec![false, true, false], -2, 2,
            vec![true, false, true, true, false]).unwrap();
        let b = PresburgerSet::new(2, vec![false, true], vec![false, false], -1, 3,
            vec![true, false, false, true, false]).unwrap();
        let s = a.sumset(&b).unwrap();
        let am: Vec<i64> = (-300..=300).filter(|&x| a.contains(x)).collect();
        let bm: Vec<i64> = (-300..=300).filter(|&x| b.contains(x)).collect();
        for x in -100..=100 {
            let brute = am.iter().any(|&p| bm.binary_search(&(x - p)).is_ok());
            assert_eq!(s.contains(x), brute, "x = {x}");
        }
    }

    #[test]
    fn guard_rejects_huge_lcm() {
        let a = PresburgerSet::periodic(999_983, &[0]).unwrap();
        let b = PresburgerSet::periodic(999_979, &[0]).unwrap();
        assert!(matches!(a.combine(&b, |x, y| x || y), Err(Error::ModulusGuard { .. })));
    }

    #[test]
    fn some_member_finds_points() {
        assert_eq!(PresburgerSet::empty().some_member(), None);
        assert_eq!(PresburgerSet::at_most(-5).unwrap().some_member(), Some(-5));
        assert!(PresburgerSet::odds().some_member().is_some());
    }

    #[test]
    fn distant_split_points() {
        let far = PresburgerSet::at_least(1 << 40).unwrap();
        let u = far.combine(&PresburgerSet::evens(), |a, b| a || b).unwrap();
        assert_eq!(u.up_residues(), vec![0, 1]);
        assert!(u.contains(6) && !u.contains(7) && u.contains((1 << 40) + 1));
        assert!(u.bits().len() <= 2);
        let i = far.combine(&PresburgerSet::at_most(-(1 << 40)).unwrap().complement(), |a, b| a && b).unwrap();
        assert_eq!(i, far);
        let gap = far.combine(&PresburgerSet::at_most(0).unwrap(), |a, b| a || b);
        assert!(matches!(gap, Err(Error::WindowGuard { .. })));
    }
}
