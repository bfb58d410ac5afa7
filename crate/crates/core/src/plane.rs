//! The projective plane PG(2, p): points, lines, cross-ratios, homologies.
//!
//! Cross-ratios follow the convention
//! `k(t1, t2, t3, t4) = (t3 - t1)(t2 - t4) / ((t2 - t3)(t4 - t1))`,
//! evaluated on homogeneous parameters so that `∞` needs no special case.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::linalg::det3;

pub type Triple = [Scalar; 3];

pub fn dot(a: &Triple, b: &Triple) -> Scalar {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Scales so the first nonzero coordinate is 1.
fn normalize(t: Triple) -> Result<Triple> {
    let lead = t.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let inv = lead.inv().unwrap();
    Ok([t[0] * inv, t[1] * inv, t[2] * inv])
}

fn ints(field: &Field, c: [i64; 3]) -> Triple {
    [field.elem(c[0]), field.elem(c[1]), field.elem(c[2])]
}

/// A point of PG(2, p) with normalized homogeneous coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Triple);

/// A line of PG(2, p) with normalized coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine(Triple);

macro_rules! homogeneous_triple {
    ($t:ident) => {
        impl $t {
            pub fn new(coords: Triple) -> Result<Self> {
                normalize(coords).map($t)
            }

            pub fn from_ints(field: &Field, coords: [i64; 3]) -> Result<Self> {
                Self::new(ints(field, coords))
            }

            #[inline]
            pub fn coords(&self) -> Triple {
                self.0
            }

            pub fn values(&self) -> [u64; 3] {
                [self.0[0].value(), self.0[1].value(), self.0[2].value()]
            }

            pub fn modulus(&self) -> u64 {
                self.0[0].modulus()
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
            }
        }
    };
}

homogeneous_triple!(ProjPoint);
homogeneous_triple!(ProjLine);

impl ProjPoint {
    /// Affine point `(x, y, 1)`.
    pub fn affine(x: Scalar, y: Scalar) -> ProjPoint {
        ProjPoint::new([x, y, x.one_like()]).unwrap()
    }

    /// Affine coordinates, `None` for points on `Z = 0`.
    pub fn to_affine(&self) -> Option<(Scalar, Scalar)> {
        let z = self.0[2];
        z.inv().map(|zi| (self.0[0] * zi, self.0[1] * zi))
    }
}

impl ProjLine {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(&self.0, &p.0).is_zero()
    }

    /// Two distinct points spanning the line.
    pub fn base_points(&self) -> (ProjPoint, ProjPoint) {
        let zero = self.0[0].zero_like();
        let one = zero.one_like();
        let units = [[one, zero, zero], [zero, one, zero], [zero, zero, one]];
        let mut found: Vec<ProjPoint> = Vec::with_capacity(2);
        for e in &units {
            let c = cross(&self.0, e);
            if let Ok(pt) = ProjPoint::new(c) {
                if !found.contains(&pt) {
                    found.push(pt);
                }
                if found.len() == 2 {
                    break;
                }
            }
        }
        (found[0], found[1])
    }

    /// All `p + 1` points of the line.
    pub fn points(&self) -> Vec<ProjPoint> {
        let (a, b) = self.base_points();
        let (ac, bc) = (a.0, b.0);
        let p = self.modulus();
        let mut out: Vec<ProjPoint> = (0..p)
            .map(|t| {
                let t = ac[0].lift(t as i64);
                ProjPoint::new([ac[0] + t * bc[0], ac[1] + t * bc[1], ac[2] + t * bc[2]]).unwrap()
            })
            .collect();
        out.push(b);
        out
    }
}

pub fn incident(p: &ProjPoint, l: &ProjLine) -> bool {
    l.contains(p)
}

/// The line through two distinct points.
pub fn join(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    ProjLine::new(cross(&p.0, &q.0)).map_err(|_| Error::CoincidentPoints)
}

/// The common point of two distinct lines.
pub fn meet(l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    ProjPoint::new(cross(&l.0, &m.0)).map_err(|_| Error::CoincidentLines)
}

pub fn collinear(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    det3(&[a.0, b.0, c.0]).is_zero()
}

/// Every point of PG(2, p), in lexicographic order.
pub fn all_points(field: &Field) -> Vec<ProjPoint> {
    let (z, o) = (field.zero(), field.one());
    let mut out = Vec::with_capacity((field.p() * field.p() + field.p() + 1) as usize);
    out.push(ProjPoint([z, z, o]));
    for y in field.elements() {
        out.push(ProjPoint([z, o, y]));
    }
    for y in field.elements() {
        for w in field.elements() {
            out.push(ProjPoint([o, y, w]));
        }
    }
    out
}

/// Every line of PG(2, p).
pub fn all_lines(field: &Field) -> Vec<ProjLine> {
    all_points(field).into_iter().map(|p| ProjLine(p.0)).collect()
}

/// An element of the projective line GF(p) ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PValue {
    num: Scalar,
    den: Scalar,
}

impl PValue {
    pub fn finite(v: Scalar) -> PValue {
        PValue {
            num: v,
            den: v.one_like(),
        }
    }

    pub fn infinity(field: &Field) -> PValue {
        PValue {
            num: field.one(),
            den: field.zero(),
        }
    }

    /// `num / den`; `None` when both vanish.
    pub fn ratio(num: Scalar, den: Scalar) -> Option<PValue> {
        if den.is_zero() {
            if num.is_zero() {
                None
            } else {
                Some(PValue {
                    num: num.one_like(),
                    den,
                })
            }
        } else {
            Some(PValue::finite(num / den))
        }
    }

    pub fn num(&self) -> Scalar {
        self.num
    }

    pub fn den(&self) -> Scalar {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.is_infinite() {
            None
        } else {
            Some(self.num)
        }
    }

    /// Rendered as `"num/den"` with normalized components.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.num, self.den)
    }

    fn mobius(&self, a: i64, b: i64, c: i64, d: i64) -> PValue {
        // (a k + b) / (c k + d) on homogeneous (num : den)
        let (n, m) = (self.num, self.den);
        PValue::ratio(n.lift(a) * n + n.lift(b) * m, n.lift(c) * n + n.lift(d) * m).expect("invertible Möbius map")
    }

    pub fn recip(&self) -> PValue {
        self.mobius(0, 1, 1, 0)
    }

    pub fn one_minus(&self) -> PValue {
        self.mobius(-1, 1, 0, 1)
    }
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "∞")
        } else {
            write!(f, "{}", self.num)
        }
    }
}

/// The six values `k, 1/k, 1-k, 1/(1-k), k/(k-1), 1-1/k`, in that order.
pub fn anharmonic_images(k: PValue) -> [PValue; 6] {
    [
        k,
        k.mobius(0, 1, 1, 0),
        k.mobius(-1, 1, 0, 1),
        k.mobius(0, 1, -1, 1),
        k.mobius(1, 0, 1, -1),
        k.mobius(1, -1, 1, 0),
    ]
}

/// The orbit of `k` under the anharmonic group.
pub fn anharmonic_orbit(k: PValue) -> BTreeSet<PValue> {
    anharmonic_images(k).into_iter().collect()
}

/// `u(k) = (k²-k+1)³ / ((k+1)²(k-2)²(2k-1)²)`, evaluated projectively.
pub fn u_invariant(k: PValue) -> PValue {
    let (n, d) = (k.num, k.den);
    let two = n.lift(2);
    let q = n * n - n * d + d * d;
    let a = n + d;
    let b = n - two * d;
    let c = two * n - d;
    let den = a * b * c;
    PValue::ratio(q * q * q, den * den).expect("numerator and denominator of u never vanish together")
}

/// `u` from the coefficients `α0 + α1 t + … + α4 t⁴` of a quartic with the four
/// points as roots. `None` when both invariants vanish (a triple root).
pub fn u_from_quartic(alpha: [Scalar; 5]) -> Option<PValue> {
    let [a0, a1, a2, a3, a4] = alpha;
    let c = |v: i64| a0.lift(v);
    let i = c(12) * a0 * a4 - c(3) * a1 * a3 + a2 * a2;
    let j =
        c(72) * a0 * a2 * a4 - c(27) * a0 * a3 * a3 - c(27) * a1 * a1 * a4 - c(2) * a2 * a2 * a2 + c(9) * a1 * a2 * a3;
    PValue::ratio(i * i * i, j * j)
}

/// Cross-ratio of four parameters on a projective line.
pub fn cross_ratio_of_params(t: [PValue; 4]) -> Result<PValue> {
    let d = |i: usize, j: usize| t[i].num * t[j].den - t[j].num * t[i].den;
    PValue::ratio(d(2, 0) * d(1, 3), d(1, 2) * d(3, 0))
        .ok_or_else(|| Error::Degenerate("cross-ratio 0/0: fewer than three distinct points".into()))
}

/// Homogeneous parameter `t/s` of `x = s·b1 + t·b2`.
fn line_parameter(x: &ProjPoint, b1: &ProjPoint, b2: &ProjPoint) -> PValue {
    let n = cross(&b1.0, &b2.0);
    let i = (0..3).find(|&i| !n[i].is_zero()).expect("distinct base points");
    let s = cross(&x.0, &b2.0)[i];
    let t = -cross(&x.0, &b1.0)[i];
    PValue::ratio(t, s).expect("point lies on the base line")
}

/// Cross-ratio of four collinear points using `b1 + t·b2` as the parametrization.
pub fn cross_ratio_with_base(pts: [&ProjPoint; 4], b1: &ProjPoint, b2: &ProjPoint) -> Result<PValue> {
    let line = join(b1, b2)?;
    if pts.iter().any(|p| !line.contains(p)) {
        return Err(Error::NotCollinear);
    }
    cross_ratio_of_params(pts.map(|p| line_parameter(p, b1, b2)))
}

/// Cross-ratio `(A, B, C, D)` of four collinear points, at least three distinct.
pub fn cross_ratio(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<PValue> {
    let second = [b, c, d]
        .into_iter()
        .find(|q| *q != a)
        .ok_or_else(|| Error::Degenerate("all four points coincide".into()))?;
    cross_ratio_with_base([a, b, c, d], a, second)
}

/// Common point of four lines, or an error if they are not concurrent.
fn common_point(ls: [&ProjLine; 4]) -> Result<ProjPoint> {
    let first = ls[0];
    let other = ls
        .iter()
        .skip(1)
        .find(|l| **l != first)
        .ok_or_else(|| Error::Degenerate("all four lines coincide".into()))?;
    let c = meet(first, other)?;
    if ls.iter().any(|l| !l.contains(&c)) {
        return Err(Error::NotConcurrent);
    }
    Ok(c)
}

/// Cross-ratio of four concurrent lines read on the auxiliary line `aux`.
pub fn cross_ratio_lines_via(ls: [&ProjLine; 4], aux: &ProjLine) -> Result<PValue> {
    let c = common_point(ls)?;
    if aux.contains(&c) {
        return Err(Error::Degenerate(
            "auxiliary line passes through the common point".into(),
        ));
    }
    let pts = ls.map(|l| meet(l, aux)).into_iter().collect::<Result<Vec<_>>>()?;
    cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3])
}

/// Cross-ratio of four concurrent lines.
pub fn cross_ratio_lines(l1: &ProjLine, l2: &ProjLine, l3: &ProjLine, l4: &ProjLine) -> Result<PValue> {
    let c = common_point([l1, l2, l3, l4])?;
    let f = l1.0[0];
    let (z, o) = (f.zero_like(), f.one_like());
    let aux = [[z, z, o], [o, z, z], [z, o, z], [o, o, o]]
        .into_iter()
        .map(ProjLine)
        .find(|l| !l.contains(&c))
        .expect("four coordinate lines have no common point");
    cross_ratio_lines_via([l1, l2, l3, l4], &aux)
}

/// An invertible 3×3 matrix acting on points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Projectivity {
    m: [[Scalar; 3]; 3],
}

impl Projectivity {
    pub fn new(m: [[Scalar; 3]; 3]) -> Result<Self> {
        if det3(&m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let lead = m.iter().flatten().find(|x| !x.is_zero()).unwrap().inv().unwrap();
        Ok(Projectivity {
            m: m.map(|r| r.map(|x| x * lead)),
        })
    }

    pub fn from_ints(field: &Field, m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(m.map(|r| r.map(|x| field.elem(x))))
    }

    pub fn identity(field: &Field) -> Self {
        Self::from_ints(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    pub fn matrix(&self) -> [[Scalar; 3]; 3] {
        self.m
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let c = p.coords();
        ProjPoint::new(self.m.map(|r| dot(&r, &c))).expect("invertible map")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Projectivity) -> Projectivity {
        let z = self.m[0][0].zero_like();
        let mut out = [[z; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).fold(z, |acc, k| acc + self.m[i][k] * other.m[k][j]);
            }
        }
        Projectivity::new(out).expect("product of invertible maps")
    }

    pub fn determinant(&self) -> Scalar {
        det3(&self.m)
    }
}

/// The homology with center `t` and axis `axis` for which
/// `cross_ratio(T, TP ∩ axis, P, u(P)) = κ` for every `P` off the axis and ≠ T.
///
/// In the frame `T = (0,0,1)`, axis `Z = 0` this is `(x, y) ↦ (x/κ, y/κ)`.
pub fn perspectivity(t: &ProjPoint, axis: &ProjLine, kappa: Scalar) -> Result<Projectivity> {
    let lt = dot(&axis.coords(), &t.coords());
    if lt.is_zero() {
        return Err(Error::Degenerate("center lies on the axis".into()));
    }
    if kappa.is_zero() || kappa.is_one() {
        return Err(Error::Degenerate(format!("perspectivity ratio {kappa}")));
    }
    let (tc, lc) = (t.coords(), axis.coords());
    let z = kappa.zero_like();
    let mut m = [[z; 3]; 3];
    let k1 = kappa - kappa.one_like();
    for i in 0..3 {
        for j in 0..3 {
            let diag = if i == j { lt } else { z };
            m[i][j] = diag + k1 * tc[i] * lc[j];
        }
    }
    Projectivity::new(m)
}
