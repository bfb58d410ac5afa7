//! The chord-tangent group on the Fermat cubic `X³ + Y³ = Z³` with identity
//! `O = (1, -1, 0)`, and the order-3 automorphism `(x, y, z) ↦ (εx, εy, z)`.

use std::collections::{BTreeSet, HashMap};

use crate::curves::HomPoly;
use crate::error::{Error, Result};
use crate::gf::{is_prime, Field, Scalar};
use crate::plane::{all_points, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubicPoint(ProjPoint);

impl CubicPoint {
    pub fn point(&self) -> ProjPoint {
        self.0
    }
}

impl std::fmt::Display for CubicPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// All rational points of the Fermat cubic with their group structure.
#[derive(Debug, Clone)]
pub struct CurveGroup {
    field: Field,
    eps: Scalar,
    poly: HomPoly,
    points: Vec<CubicPoint>,
    index: HashMap<CubicPoint, usize>,
    identity: CubicPoint,
}

impl CurveGroup {
    /// Enumerates the curve over GF(p); needs `p ≡ 1 (mod 3)`.
    pub fn new(field: Field) -> Result<Self> {
        let eps = field.cube_root_of_unity()?;
        let poly = fermat_cubic(field);
        let points: Vec<CubicPoint> = all_points(&field)
            .into_iter()
            .filter(|p| poly.vanishes_at(p))
            .map(CubicPoint)
            .collect();
        let index = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let identity = CubicPoint(ProjPoint::from_ints(&field, [1, -1, 0])?);
        Ok(CurveGroup {
            field,
            eps,
            poly,
            points,
            index,
            identity,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn epsilon(&self) -> Scalar {
        self.eps
    }

    pub fn poly(&self) -> &HomPoly {
        &self.poly
    }

    pub fn points(&self) -> &[CubicPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn identity(&self) -> CubicPoint {
        self.identity
    }

    pub fn point(&self, p: &ProjPoint) -> Result<CubicPoint> {
        let q = CubicPoint(*p);
        if self.index.contains_key(&q) {
            Ok(q)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// Third point of the curve on the line `PQ`, or on the tangent at `P` when `P = Q`.
    pub fn third_intersection(&self, p: &CubicPoint, q: &CubicPoint) -> CubicPoint {
        let (a, b) = if p != q {
            (p.0, q.0)
        } else {
            let t = crate::curves::tangent_line(&self.poly, &p.0).expect("the Fermat cubic is nonsingular");
            let (b1, b2) = t.base_points();
            (p.0, if b1 != p.0 { b1 } else { b2 })
        };
        // F(s·a + t·b) has the roots (1:0) and, for a chord, (0:1); Vieta gives the rest.
        let r = self.poly.restrict(&a.coords(), &b.coords());
        let (ca, cb) = if p != q {
            (r.coeff(2), -r.coeff(1))
        } else {
            (r.coeff(3), -r.coeff(2))
        };
        let (ac, bc) = (a.coords(), b.coords());
        let third = [0, 1, 2].map(|i| ca * ac[i] + cb * bc[i]);
        CubicPoint(ProjPoint::new(third).expect("line does not lie on the curve"))
    }

    pub fn add(&self, p: &CubicPoint, q: &CubicPoint) -> CubicPoint {
        self.third_intersection(&self.identity, &self.third_intersection(p, q))
    }

    pub fn neg(&self, p: &CubicPoint) -> CubicPoint {
        self.third_intersection(p, &self.identity)
    }

    pub fn sub(&self, p: &CubicPoint, q: &CubicPoint) -> CubicPoint {
        self.add(p, &self.neg(q))
    }

    pub fn scalar_mul(&self, k: i64, p: &CubicPoint) -> CubicPoint {
        let mut base = if k < 0 { self.neg(p) } else { *p };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn order(&self, p: &CubicPoint) -> usize {
        let mut acc = *p;
        let mut k = 1;
        while acc != self.identity {
            acc = self.add(&acc, p);
            k += 1;
        }
        k
    }

    /// `(x, y, z) ↦ (εx, εy, z)`.
    pub fn u_auto(&self, p: &CubicPoint) -> CubicPoint {
        let c = p.0.coords();
        CubicPoint(ProjPoint::new([self.eps * c[0], self.eps * c[1], c[2]]).unwrap())
    }

    pub fn cyclic_subgroup(&self, g: &CubicPoint) -> Vec<CubicPoint> {
        let mut out = vec![self.identity];
        let mut acc = *g;
        while acc != self.identity {
            out.push(acc);
            acc = self.add(&acc, g);
        }
        out
    }

    /// All u-invariant cyclic subgroups of order `n`, each with its least generator.
    pub fn invariant_subgroups(&self, n: usize) -> Vec<(CubicPoint, Vec<CubicPoint>)> {
        if n == 0 || !self.points.len().is_multiple_of(n) {
            return Vec::new();
        }
        let mut seen: BTreeSet<BTreeSet<CubicPoint>> = BTreeSet::new();
        let mut out = Vec::new();
        for g in &self.points {
            if self.order(g) != n {
                continue;
            }
            let h = self.cyclic_subgroup(g);
            let set: BTreeSet<CubicPoint> = h.iter().copied().collect();
            if seen.contains(&set) {
                continue;
            }
            if h.iter().all(|x| set.contains(&self.u_auto(x))) {
                out.push((*g, h));
            }
            seen.insert(set);
        }
        out
    }

    /// First u-invariant cyclic subgroup of order `n` in point order.
    pub fn find_invariant_subgroup(&self, n: usize) -> Option<(CubicPoint, Vec<CubicPoint>)> {
        self.invariant_subgroups(n).into_iter().next()
    }

    /// `(H + P, H + u(P), H + u²(P))`.
    pub fn coset_net(&self, h: &[CubicPoint], p: &CubicPoint) -> Result<[Vec<ProjPoint>; 3]> {
        let up = self.u_auto(p);
        let uup = self.u_auto(&up);
        if h.contains(&self.sub(p, &up)) {
            return Err(Error::CosetCollision);
        }
        let coset = |base: &CubicPoint| -> Vec<ProjPoint> { h.iter().map(|x| self.add(x, base).0).collect() };
        let comps = [coset(p), coset(&up), coset(&uup)];
        let sets: Vec<BTreeSet<ProjPoint>> = comps.iter().map(|c| c.iter().copied().collect()).collect();
        for i in 0..3 {
            if sets[i].len() != h.len() {
                return Err(Error::CosetCollision);
            }
            for j in i + 1..3 {
                if !sets[i].is_disjoint(&sets[j]) {
                    return Err(Error::CosetCollision);
                }
            }
        }
        Ok(comps)
    }
}

/// `X³ + Y³ - Z³`.
pub fn fermat_cubic(field: Field) -> HomPoly {
    HomPoly::from_int_terms(field, 3, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], -1)]).unwrap()
}

/// Smallest prime `p ≡ 1 (mod 3)`, `p > n`, `p ≥ start`, whose Fermat cubic has a
/// u-invariant cyclic subgroup of order `n` and a base point giving three disjoint cosets.
pub fn prime_with_invariant_subgroup(n: usize, start: u64, limit: u64) -> Result<u64> {
    let mut p = start.max(n as u64 + 1).max(7);
    while p <= limit {
        if p % 3 == 1 && is_prime(p) {
            let g = CurveGroup::new(Field::new(p)?)?;
            let usable = g
                .invariant_subgroups(n)
                .iter()
                .any(|(_, h)| g.points().iter().any(|q| g.coset_net(h, q).is_ok()));
            if usable {
                return Ok(p);
            }
        }
        p += 1;
    }
    Err(Error::PrimeSearchExhausted(limit))
}
