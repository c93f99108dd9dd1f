//! Exact H-polyhedra over the s-space and their vertex/ray enumeration by
//! exhaustive active sets. Dimensions stay at or below 4 here, so the
//! combinatorial approach is both exact and fast enough.

use crate::error::EngineError;
use crate::linalg::{dot, null_space, rank, solve_square};
use crate::num::Rational;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub const MAX_DIM: usize = 4;

/// Inequality system `a . s >= b`, one row per constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    pub k: usize,
    pub rows: Vec<(Vec<Rational>, Rational)>,
}

impl HPolyhedron {
    /// `s >= 0` in `k` variables.
    pub fn nonneg_orthant(k: usize) -> Result<Self, EngineError> {
        if k > MAX_DIM {
            return Err(EngineError::DimensionTooLarge);
        }
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let mut a = vec![Rational::zero(); k];
            a[i] = Rational::from_integer(1.into());
            rows.push((a, Rational::zero()));
        }
        Ok(HPolyhedron { k, rows })
    }

    pub fn add_row(&mut self, a: Vec<Rational>, b: Rational) {
        debug_assert_eq!(a.len(), self.k);
        self.rows.push((a, b));
    }

    pub fn satisfies(&self, s: &[Rational]) -> bool {
        self.rows.iter().all(|(a, b)| &dot(a, s) >= b)
    }

    fn tight_rows(&self, s: &[Rational]) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| &dot(a, s) == b)
            .map(|(i, _)| i)
            .collect()
    }

    /// All vertices with their tight sets, by active-set enumeration.
    pub fn vertices(&self) -> Vec<(Vec<Rational>, Vec<usize>)> {
        let n = self.rows.len();
        let k = self.k;
        let mut out: Vec<(Vec<Rational>, Vec<usize>)> = Vec::new();
        let mut seen: Vec<Vec<Rational>> = Vec::new();
        for combo in combinations(n, k) {
            let a: Vec<Vec<Rational>> = combo.iter().map(|&i| self.rows[i].0.clone()).collect();
            let b: Vec<Rational> = combo.iter().map(|&i| self.rows[i].1.clone()).collect();
            let Some(s) = solve_square(&a, &b) else {
                continue;
            };
            if !self.satisfies(&s) {
                continue;
            }
            if seen.contains(&s) {
                continue;
            }
            seen.push(s.clone());
            let tight = self.tight_rows(&s);
            out.push((s, tight));
        }
        out
    }

    /// Extreme rays of the recession cone, canonically scaled to primitive
    /// integer vectors.
    pub fn extreme_rays(&self) -> Vec<Vec<Rational>> {
        let n = self.rows.len();
        let k = self.k;
        let homogeneous: Vec<Vec<Rational>> = self.rows.iter().map(|(a, _)| a.clone()).collect();
        let in_cone = |d: &[Rational]| homogeneous.iter().all(|a| !dot(a, d).is_negative());
        let mut out: Vec<Vec<Rational>> = Vec::new();
        if k == 1 {
            // Single variable: the cone is an interval of directions.
            for cand in [vec![Rational::from_integer(1.into())], vec![Rational::from_integer((-1).into())]] {
                if in_cone(&cand) && !out.contains(&cand) {
                    out.push(cand);
                }
            }
            return out;
        }
        for combo in combinations(n, k - 1) {
            let a: Vec<Vec<Rational>> = combo.iter().map(|&i| homogeneous[i].clone()).collect();
            if rank(&a) != k - 1 {
                continue;
            }
            let ns = null_space(&a, k);
            if ns.len() != 1 {
                continue;
            }
            for cand in [ns[0].clone(), ns[0].iter().map(|v| -v.clone()).collect()] {
                if cand.iter().all(|v| v.is_zero()) {
                    continue;
                }
                if in_cone(&cand) {
                    let c = canonical_ray(&cand);
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        // Pointed by construction (contains the s >= 0 rows), so nonempty
        // implies a vertex exists.
        self.vertices().is_empty()
    }

    /// Exact min of `c . s` over the polyhedron: `None` if unbounded below,
    /// otherwise the minimum over vertices (the polyhedron must be pointed
    /// and nonempty).
    pub fn minimize(&self, c: &[Rational]) -> Option<Rational> {
        for ray in self.extreme_rays() {
            if dot(c, &ray).is_negative() {
                return None;
            }
        }
        self.vertices()
            .into_iter()
            .map(|(s, _)| dot(c, &s))
            .min()
    }
}

/// Scale a rational vector to a primitive integer vector, preserving
/// orientation.
pub fn canonical_ray(d: &[Rational]) -> Vec<Rational> {
    let mut den = num_bigint::BigInt::from(1);
    for v in d {
        den = den.lcm(v.denom());
    }
    let ints: Vec<num_bigint::BigInt> = d
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    let mut g = num_bigint::BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return d.to_vec();
    }
    ints.into_iter()
        .map(|v| Rational::from_integer(v / &g))
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_int};

    #[test]
    fn simplex_vertices() {
        // s >= 0, s1 + s2 >= 1 in 2 variables.
        let mut p = HPolyhedron::nonneg_orthant(2).unwrap();
        p.add_row(vec![rat_int(1), rat_int(1)], rat_int(1));
        let vs = p.vertices();
        assert_eq!(vs.len(), 2);
        let pts: Vec<Vec<Rational>> = vs.into_iter().map(|(s, _)| s).collect();
        assert!(pts.contains(&vec![rat_int(1), rat_int(0)]));
        assert!(pts.contains(&vec![rat_int(0), rat_int(1)]));
        let rays = p.extreme_rays();
        assert_eq!(rays.len(), 2);
    }

    #[test]
    fn empty_system() {
        let mut p = HPolyhedron::nonneg_orthant(2).unwrap();
        p.add_row(vec![rat_int(-1), rat_int(0)], rat_int(1)); // -s1 >= 1
        assert!(p.is_empty());
    }

    #[test]
    fn minimize_over_polyhedron() {
        let mut p = HPolyhedron::nonneg_orthant(2).unwrap();
        p.add_row(vec![rat_int(2), rat_int(1)], rat_int(1));
        let m = p.minimize(&[rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(m, rat(1, 2));
        // Unbounded below when c has a negative recession direction.
        assert!(p.minimize(&[rat_int(-1), rat_int(0)]).is_none());
    }
}
