//! Brute-force reference computations. Nothing here calls the structured
//! algorithms: sets are only queried pointwise, types are realized by
//! concrete integers, and searches are plain enumerations.

use crate::defsets::DefinableSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::typespace::{Sign, TypePoint};

/// The interval `[-W, W]`, standing in for the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowUniverse {
    pub radius: i64,
}

impl WindowUniverse {
    /// Requires `W >= 4 · modulus · max(window bound, 1)`.
    pub fn new(radius: i64, max_modulus: u64, window_bound: i64) -> Result<Self> {
        let need = 4 * max_modulus as i64 * window_bound.abs().max(1);
        if radius < need {
            return Err(Error::Invalid(format!("window radius {radius} below the required {need}")));
        }
        Ok(WindowUniverse { radius })
    }

    /// A universe large enough for the given set and for `extra`, a further
    /// bound that must fit well inside it (such as a shift range).
    pub fn for_set(y: &DefinableSet, extra: i64) -> Result<Self> {
        let DefinableSet::Presburger(s) = y else {
            return Err(Error::Unsupported("window universes are for integer sets".into()));
        };
        let (lo, hi) = s.window();
        let bound = lo.abs().max(hi.abs()).max(extra).max(1);
        Self::new(4 * s.modulus() as i64 * bound, s.modulus(), bound)
    }
}

fn member(y: &DefinableSet, x: i64) -> bool {
    y.contains_element(&GroupElement::Int(x)).unwrap_or(false)
}

/// `{a - b : a, b ∈ Y ∩ [-W, W]} ∩ [-W/2, W/2]`, ascending.
pub fn oracle_difference_set(y: &DefinableSet, u: WindowUniverse) -> Vec<i64> {
    let w = u.radius;
    let pts: Vec<i64> = (-w..=w).filter(|&x| member(y, x)).collect();
    let half = w / 2;
    let mut hit = vec![false; (2 * half + 1) as usize];
    for &a in &pts {
        for &b in &pts {
            let d = a - b;
            if (-half..=half).contains(&d) {
                hit[(d + half) as usize] = true;
            }
        }
    }
    (-half..=half).filter(|&d| hit[(d + half) as usize]).collect()
}

/// `Y·Y⁻¹` in a finite group, by enumerating pairs.
pub fn oracle_difference_set_finite(g: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut hit = vec![false; g.order()];
    for &a in members {
        for &b in members {
            hit[g.mul(a, g.inv(b))] = true;
        }
    }
    (0..g.order()).filter(|&x| hit[x]).collect()
}

/// Searches for at most `max_translates` shifts in `[-shift_bound,
/// shift_bound]` whose translates of `Y` cover `[-W, W]`. Returns a
/// smallest cover, branching on the least uncovered point and trying
/// shifts in the order 0, 1, -1, 2, -2, ...
pub fn oracle_generic(y: &DefinableSet, max_translates: usize, shift_bound: i64, u: WindowUniverse) -> Option<Vec<i64>> {
    let w = u.radius;
    let span = w + shift_bound;
    let inside: Vec<bool> = (-span..=span).map(|x| member(y, x)).collect();
    let in_y = |x: i64| inside[(x + span) as usize];
    let mut chosen = Vec::new();
    fn search(
        chosen: &mut Vec<i64>,
        w: i64,
        shift_bound: i64,
        k: usize,
        in_y: &dyn Fn(i64) -> bool,
    ) -> bool {
        let uncovered = (-w..=w).find(|&x| !chosen.iter().any(|&t| in_y(x - t)));
        let Some(x) = uncovered else { return true };
        if chosen.len() == k {
            return false;
        }
        let order = (0..=shift_bound).flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] });
        for t in order {
            if in_y(x - t) && !chosen.contains(&t) {
                chosen.push(t);
                if search(chosen, w, shift_bound, k, in_y) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    for k in 1..=max_translates {
        if search(&mut chosen, w, shift_bound, k, &in_y) {
            chosen.sort_unstable();
            return Some(chosen);
        }
    }
    None
}

/// Left translates `gY` covering a finite group, by enumeration of all
/// translate subsets of size at most `max_translates`.
pub fn oracle_generic_finite(g: &FiniteGroup, members: &[usize], max_translates: usize) -> Option<Vec<usize>> {
    let n = g.order();
    if n > 20 {
        return None;
    }
    for size in 1..=max_translates.min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mut covered = vec![false; n];
            for &t in &combo {
                for &m in members {
                    covered[g.mul(t, m)] = true;
                }
            }
            if covered.iter().all(|&c| c) {
                return Some(combo);
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && combo[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    None
}

fn realize(p: &TypePoint, magnitude: i64) -> Result<(i64, bool)> {
    match p {
        TypePoint::Realized(GroupElement::Int(x)) => Ok((*x, true)),
        TypePoint::Limit { sign, residue, modulus } => {
            let s = if *sign == Sign::Plus { 1 } else { -1 };
            let v = (magnitude as i128) * (*modulus as i128) * s + *residue as i128;
            i64::try_from(v).map(|v| (v, false)).map_err(|_| Error::Overflow)
        }
        _ => Err(Error::Unsupported("numeric realization of this type".into())),
    }
}

/// `p * q` on the integers by numeric realization: `a` realizes `p` at
/// magnitude `A`, `b` realizes `q` at magnitude `B ≫ A`, and the type of
/// `a + b` is read off at the level. Limit inputs must sit at `level`.
pub fn oracle_star(p: &TypePoint, q: &TypePoint, level: u64, a_mag: i64, b_mag: i64) -> Result<TypePoint> {
    if (b_mag as i128) < 1000 * (a_mag as i128) * level as i128 {
        return Err(Error::Invalid("the right magnitude must dominate the left one".into()));
    }
    for t in [p, q] {
        if let TypePoint::Limit { modulus, .. } = t {
            if *modulus != level {
                return Err(Error::LevelMismatch { period: *modulus, level });
            }
        }
    }
    let (a, a_real) = realize(p, a_mag)?;
    let (b, b_real) = realize(q, b_mag)?;
    let s = a.checked_add(b).ok_or(Error::Overflow)?;
    if a_real && b_real {
        return Ok(TypePoint::Realized(GroupElement::Int(s)));
    }
    let sign = if s > 0 { Sign::Plus } else { Sign::Minus };
    Ok(TypePoint::Limit { sign, residue: s.rem_euclid(level as i64) as u64, modulus: level })
}

/// The limit part at level `n`, in the oracle's own order: sign `+` first,
/// residues ascending.
pub fn limit_points(n: u64) -> Vec<TypePoint> {
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for r in 0..n {
            out.push(TypePoint::Limit { sign, residue: r, modulus: n });
        }
    }
    out
}

/// The permutation by which `1` moves the limit part at level `n`.
pub fn shift_permutation(n: u64) -> Vec<usize> {
    let n = n as usize;
    (0..2 * n).map(|i| (i / n) * n + (i % n + 1) % n).collect()
}

/// All minimal invariant subsets of the limit part at level `n <= 8`, by
/// exhausting every subset.
pub fn oracle_minimal_subflows(n: u64) -> Result<Vec<Vec<TypePoint>>> {
    if n == 0 || n > 8 {
        return Err(Error::Unsupported("exhaustive subflow search beyond level 8".into()));
    }
    let pts = limit_points(n);
    let shift = shift_permutation(n);
    let k = pts.len();
    let invariant: Vec<u32> = (1u32..(1u32 << k))
        .filter(|&m| (0..k).all(|i| m & (1 << i) == 0 || m & (1 << shift[i]) != 0))
        .collect();
    let mut out: Vec<Vec<TypePoint>> = invariant
        .iter()
        .filter(|&&m| !invariant.iter().any(|&s| s != m && s & m == s))
        .map(|&m| (0..k).filter(|i| m & (1 << i) != 0).map(|i| pts[i].clone()).collect())
        .collect();
    for s in &mut out {
        s.sort();
    }
    out.sort();
    Ok(out)
}

/// Limit points with `p * p = p`, each product computed numerically.
pub fn oracle_idempotents(n: u64) -> Result<Vec<TypePoint>> {
    let mut out = Vec::new();
    for p in limit_points(n) {
        if oracle_star(&p, &p, n, 1_000, 1_000_000_000 * n as i64)? == p {
            out.push(p);
        }
    }
    Ok(out)
}

/// Every map `f : 0..src → 0..dst` with `f(σ_i(x)) = τ_i(f(x))` for each
/// pair of generator permutations, by backtracking over assignments.
pub fn oracle_equivariant_maps(src: &[Vec<usize>], dst: &[Vec<usize>], src_len: usize, dst_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut f: Vec<Option<usize>> = vec![None; src_len];
    fn consistent(f: &[Option<usize>], src: &[Vec<usize>], dst: &[Vec<usize>]) -> bool {
        src.iter().zip(dst).all(|(s, d)| {
            (0..f.len()).all(|x| match (f[x], f[s[x]]) {
                (Some(a), Some(b)) => d[a] == b,
                _ => true,
            })
        })
    }
    fn go(
        i: usize,
        f: &mut Vec<Option<usize>>,
        src: &[Vec<usize>],
        dst: &[Vec<usize>],
        dst_len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == f.len() {
            out.push(f.iter().map(|v| v.expect("assigned")).collect());
            return;
        }
        for v in 0..dst_len {
            f[i] = Some(v);
            if consistent(f, src, dst) {
                go(i + 1, f, src, dst, dst_len, out);
            }
        }
        f[i] = None;
    }
    go(0, &mut f, src, dst, dst_len, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defsets::PresburgerSet;

    #[test]
    fn difference_examples() {
        let u = WindowUniverse::new(200, 2, 1).unwrap();
        let evens: DefinableSet = PresburgerSet::evens().into();
        let d = oracle_difference_set(&evens, u);
        assert_eq!(d, (-50..=50).map(|k| 2 * k).collect::<Vec<_>>());
        let nonneg_evens: DefinableSet =
            PresburgerSet::at_least(0).unwrap().combine(&PresburgerSet::evens(), |a, b| a && b).unwrap().into();
        assert_eq!(oracle_difference_set(&nonneg_evens, u), d);
        let one: DefinableSet = PresburgerSet::finite(&[1]).unwrap().into();
        assert_eq!(oracle_difference_set(&one, u), vec![0]);
        assert!(WindowUniverse::new(10, 3, 2).is_err());
    }

    #[test]
    fn generic_examples() {
        let u = WindowUniverse::new(200, 2, 1).unwrap();
        let evens: DefinableSet = PresburgerSet::evens().into();
        assert_eq!(oracle_generic(&evens, 6, 10, u), Some(vec![0, 1]));
        let ray: DefinableSet = PresburgerSet::at_least(0).unwrap().into();
        assert_eq!(oracle_generic(&ray, 4, 50, u), None);
        let c5 = crate::group::catalog::cyclic(5).unwrap();
        assert_eq!(oracle_generic_finite(&c5, &[2], 5).map(|v| v.len()), Some(5));
        assert_eq!(oracle_generic_finite(&c5, &[0, 1, 2], 5).map(|v| v.len()), Some(2));
    }

    #[test]
    fn star_examples() {
        let r5 = TypePoint::Realized(GroupElement::Int(5));
        let p = |s, r| TypePoint::Limit { sign: s, residue: r, modulus: 4 };
        assert_eq!(oracle_star(&r5, &p(Sign::Plus, 1), 4, 1, 4_000_000).unwrap(), p(Sign::Plus, 2));
        assert_eq!(oracle_star(&p(Sign::Minus, 1), &p(Sign::Plus, 2), 4, 1000, 4_000_000).unwrap(), p(Sign::Plus, 3));
        assert!(oracle_star(&r5, &r5, 4, 1000, 1000).is_err());
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(oracle_minimal_subflows(4).unwrap().len(), 2);
        assert_eq!(oracle_idempotents(4).unwrap().len(), 2);
        let shift = shift_permutation(4);
        let plus: Vec<usize> = (0..4).map(|i| shift[i]).collect();
        let minus: Vec<usize> = (4..8).map(|i| shift[i] - 4).collect();
        let maps = oracle_equivariant_maps(&[plus], &[minus], 4, 4);
        assert_eq!(maps.len(), 4);
        assert!(maps.iter().all(|m| {
            let mut s = m.clone();
            s.sort();
            s == vec![0, 1, 2, 3]
        }));
    }
}
