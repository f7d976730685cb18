//! Polytopes of mixed strategies.
//!
//! A [`Polytope`] always carries its vertex list. Polytopes built by this
//! crate also carry an inequality description: homogeneous rows `c` meaning
//! `c·y >= 0` on the nonnegative orthant, with the simplex normalization
//! `Σ y = 1` implied. Vertex enumeration is the double description method on
//! that cone, started from the orthant's unit rays.

use crate::game::{Game, MixedStrategy};
use crate::lp;
use crate::rational::{one, zero, Rational};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

#[derive(Debug, Clone)]
pub struct Polytope {
    owner: usize,
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    hrep: Option<Vec<Vec<Rational>>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.owner == other.owner && self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("polytope has no points")]
    Empty,
    #[error("vertex is not a probability vector of length {dim}")]
    BadVertex { dim: usize },
}

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> BitSet {
        BitSet(vec![0; bits.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &BitSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn normalize(mut v: Vec<Rational>) -> Vec<Rational> {
    let s: Rational = v.iter().sum();
    for x in v.iter_mut() {
        *x /= &s;
    }
    v
}

/// Extreme rays of `{y >= 0 : c·y >= 0 for every c}`, each scaled to sum 1, sorted.
pub fn cone_rays(dim: usize, constraints: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let bits = dim + constraints.len();
    let mut rays: Vec<(Vec<Rational>, BitSet)> = (0..dim)
        .map(|j| {
            let mut v = vec![zero(); dim];
            v[j] = one();
            let mut z = BitSet::new(bits);
            for k in (0..dim).filter(|&k| k != j) {
                z.set(k);
            }
            (v, z)
        })
        .collect();
    for (k, c) in constraints.iter().enumerate() {
        let idx = dim + k;
        let vals: Vec<Rational> = rays.iter().map(|(v, _)| dot(c, v)).collect();
        if vals.iter().all(|x| !x.is_negative()) {
            for (r, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    r.1.set(idx);
                }
            }
            continue;
        }
        let mut next = Vec::new();
        for (r, val) in rays.iter().zip(&vals) {
            if val.is_positive() {
                next.push(r.clone());
            } else if val.is_zero() {
                let mut r = r.clone();
                r.1.set(idx);
                next.push(r);
            }
        }
        for (pi, pv) in vals.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            for (ni, nv) in vals.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                let common = rays[pi].1.and(&rays[ni].1);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(o, r)| o == pi || o == ni || !common.subset_of(&r.1));
                if !adjacent {
                    continue;
                }
                let v: Vec<Rational> = rays[ni]
                    .0
                    .iter()
                    .zip(&rays[pi].0)
                    .map(|(n, p)| pv * n - nv * p)
                    .collect();
                let mut z = common;
                z.set(idx);
                next.push((normalize(v), z));
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<Rational>> = rays.into_iter().map(|(v, _)| v).collect();
    out.sort();
    out.dedup();
    out
}

impl Polytope {
    /// The whole simplex `Δ(A_i)`.
    pub fn simplex(owner: usize, dim: usize) -> Polytope {
        Polytope::face(owner, dim, &(0..dim).collect::<Vec<_>>())
    }

    /// The face of the simplex spanned by the pure strategies in `support`.
    pub fn face(owner: usize, dim: usize, support: &[usize]) -> Polytope {
        let mut vertices: Vec<Vec<Rational>> = support
            .iter()
            .map(|&a| MixedStrategy::pure(owner, dim, a).weights)
            .collect();
        vertices.sort();
        vertices.dedup();
        let hrep = (0..dim)
            .filter(|j| !support.contains(j))
            .map(|j| {
                let mut c = vec![zero(); dim];
                c[j] = -one();
                c
            })
            .collect();
        Polytope {
            owner,
            dim,
            vertices,
            hrep: Some(hrep),
        }
    }

    /// A single strategy.
    pub fn singleton(s: &MixedStrategy) -> Polytope {
        let dim = s.weights.len();
        let support = s.support();
        let mut hrep = Polytope::face(s.owner, dim, &support).hrep.unwrap();
        for w in support.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mut c = vec![zero(); dim];
            c[b] = s.weights[a].clone();
            c[a] = -s.weights[b].clone();
            hrep.push(c.iter().map(|x| -x).collect());
            hrep.push(c);
        }
        Polytope {
            owner: s.owner,
            dim,
            vertices: vec![s.weights.clone()],
            hrep: Some(hrep),
        }
    }

    /// Convex hull of the given points; points that are not extreme are dropped.
    pub fn from_vertices(owner: usize, dim: usize, points: Vec<Vec<Rational>>) -> Result<Polytope, PolytopeError> {
        if points.is_empty() {
            return Err(PolytopeError::Empty);
        }
        for p in &points {
            if p.len() != dim || p.iter().any(|x| x.is_negative()) || p.iter().sum::<Rational>() != one() {
                return Err(PolytopeError::BadVertex { dim });
            }
        }
        let mut pts = points;
        pts.sort();
        pts.dedup();
        let mut k = 0;
        while k < pts.len() && pts.len() > 1 {
            let others: Vec<Vec<Rational>> = pts
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, p)| p.clone())
                .collect();
            if lp::convex_combination(&others, &pts[k]).is_some() {
                pts.remove(k);
            } else {
                k += 1;
            }
        }
        Ok(Polytope {
            owner,
            dim,
            vertices: pts,
            hrep: None,
        })
    }

    /// The points of the simplex satisfying `c·y >= 0` for every row.
    pub fn from_hrep(owner: usize, dim: usize, rows: Vec<Vec<Rational>>) -> Result<Polytope, PolytopeError> {
        let vertices = cone_rays(dim, &rows);
        if vertices.is_empty() {
            return Err(PolytopeError::Empty);
        }
        // A row that is tight at no vertex cannot be a facet; drop it.
        let mut kept: Vec<Vec<Rational>> = rows
            .into_iter()
            .filter(|c| vertices.iter().any(|v| dot(c, v).is_zero()))
            .collect();
        kept.sort();
        kept.dedup();
        Ok(Polytope {
            owner,
            dim,
            vertices,
            hrep: Some(kept),
        })
    }

    pub fn owner(&self) -> usize {
        self.owner
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn hrep(&self) -> Option<&[Vec<Rational>]> {
        self.hrep.as_deref()
    }

    pub fn strategies(&self) -> Vec<MixedStrategy> {
        self.vertices
            .iter()
            .map(|w| MixedStrategy {
                owner: self.owner,
                weights: w.clone(),
            })
            .collect()
    }

    pub fn is_full_simplex(&self) -> bool {
        self.vertices.len() == self.dim && self.vertices.iter().all(|v| v.iter().filter(|x| !x.is_zero()).count() == 1)
    }

    /// Membership of a weight vector.
    pub fn contains(&self, weights: &[Rational]) -> bool {
        if weights.len() != self.dim
            || weights.iter().any(|x| x.is_negative())
            || weights.iter().sum::<Rational>() != one()
        {
            return false;
        }
        match &self.hrep {
            Some(rows) => rows.iter().all(|c| !dot(c, weights).is_negative()),
            None => lp::convex_combination(&self.vertices, weights).is_some(),
        }
    }

    pub fn to_json(&self, g: &Game) -> Value {
        let labels = g.labels(self.owner);
        Value::Array(
            self.vertices
                .iter()
                .map(|v| {
                    let mut o = serde_json::Map::new();
                    for (a, w) in v.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                        o.insert(labels[a].clone(), json!(w.to_string()));
                    }
                    Value::Object(o)
                })
                .collect(),
        )
    }

    pub fn describe(&self, g: &Game) -> String {
        let vs: Vec<String> = self.strategies().iter().map(|s| s.describe(g)).collect();
        if vs.len() == 1 {
            vs[0].clone()
        } else {
            format!("hull[{}]", vs.join("; "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(n, d)| ratio(n, d)).collect()
    }

    #[test]
    fn orthant_without_constraints_is_the_simplex() {
        let rays = cone_rays(3, &[]);
        assert_eq!(rays.len(), 3);
        assert!(Polytope::simplex(0, 3).is_full_simplex());
    }

    #[test]
    fn cutting_a_triangle() {
        // y1 - y0 >= 0 keeps e1, e2 and the midpoint of e0 and e1.
        let rays = cone_rays(3, &[vec![int(-1), int(1), int(0)]]);
        assert_eq!(
            rays,
            vec![v(&[(0, 1), (0, 1), (1, 1)]), v(&[(0, 1), (1, 1), (0, 1)]), v(&[(1, 2), (1, 2), (0, 1)])]
        );
    }

    #[test]
    fn square_section_of_a_tetrahedron() {
        // y0 + y1 = 1/2 intersects the 3-simplex in a square.
        let rows = vec![
            vec![int(1), int(1), int(-1), int(-1)],
            vec![int(-1), int(-1), int(1), int(1)],
        ];
        let p = Polytope::from_hrep(0, 4, rows).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(p.contains(&v(&[(1, 4), (1, 4), (1, 4), (1, 4)])));
        assert!(!p.contains(&v(&[(1, 1), (0, 1), (0, 1), (0, 1)])));
    }

    #[test]
    fn singleton_round_trips_through_hrep() {
        let s = MixedStrategy::new(0, v(&[(1, 2), (0, 1), (1, 3), (1, 6)])).unwrap();
        let p = Polytope::singleton(&s);
        let q = Polytope::from_hrep(0, 4, p.hrep().unwrap().to_vec()).unwrap();
        assert_eq!(q.vertices(), &[s.weights.clone()]);
    }

    #[test]
    fn hull_drops_interior_points() {
        let p = Polytope::from_vertices(
            1,
            2,
            vec![v(&[(1, 1), (0, 1)]), v(&[(1, 2), (1, 2)]), v(&[(0, 1), (1, 1)])],
        )
        .unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert!(p.contains(&v(&[(1, 3), (2, 3)])));
        assert!(Polytope::from_vertices(0, 2, vec![v(&[(1, 2), (1, 3)])]).is_err());
    }

    #[test]
    fn infeasible_rows_give_an_empty_polytope() {
        let rows = vec![vec![int(-1), int(0)], vec![int(0), int(-1)]];
        assert_eq!(Polytope::from_hrep(0, 2, rows), Err(PolytopeError::Empty));
    }
}
