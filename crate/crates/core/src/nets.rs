//! Dual k-nets: verification, perspective centers, cross-ratio constants,
//! classification and 4-net assembly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::curves::{cubic_j_invariant, double_point_kind, singular_points, DoublePoint, HomPoly};
use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::linalg::{det3, nullspace, rank};
use crate::plane::{all_lines, all_points, cross_ratio, join, meet, PValue, ProjLine, ProjPoint, Projectivity};

/// Why a family of point sets fails to be a dual net.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub line: Option<ProjLine>,
    pub component: Option<usize>,
    pub count: usize,
    pub message: String,
}

impl Violation {
    fn shape(message: impl Into<String>) -> Self {
        Violation {
            line: None,
            component: None,
            count: 0,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)?;
        if let Some(l) = &self.line {
            write!(f, " (line {l}")?;
            if let Some(c) = self.component {
                write!(f, ", component {c}, {} points", self.count)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// `k ≥ 3` pairwise disjoint sets of `n` points such that a line meeting two of
/// them meets each in exactly one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualNet {
    field: Field,
    components: Vec<Vec<ProjPoint>>,
    verified: bool,
    char_exception: bool,
}

impl DualNet {
    /// Verifies the net axioms; requires `p > n`.
    pub fn verify(field: Field, components: Vec<Vec<ProjPoint>>) -> Result<DualNet> {
        Self::verify_with(field, components, false)
    }

    /// As [`DualNet::verify`], optionally admitting `p ≤ n`.
    pub fn verify_with(field: Field, components: Vec<Vec<ProjPoint>>, allow_char_exception: bool) -> Result<DualNet> {
        match check(&field, &components, allow_char_exception).into_iter().next() {
            Some(v) => Err(Error::Net(v)),
            None => {
                let n = components[0].len();
                Ok(DualNet {
                    field,
                    char_exception: field.p() <= n as u64,
                    components,
                    verified: true,
                })
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn components(&self) -> &[Vec<ProjPoint>] {
        &self.components
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> usize {
        self.components[0].len()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// True when the characteristic does not exceed the order.
    pub fn char_exception(&self) -> bool {
        self.char_exception
    }

    pub fn component_of(&self, p: &ProjPoint) -> Option<usize> {
        self.components.iter().position(|c| c.contains(p))
    }

    /// Lines through a point of the first and a point of the second component.
    pub fn net_lines(&self) -> Vec<ProjLine> {
        let mut out: BTreeSet<ProjLine> = BTreeSet::new();
        for a in &self.components[0] {
            for b in &self.components[1] {
                out.insert(join(a, b).expect("components are disjoint"));
            }
        }
        out.into_iter().collect()
    }

    /// Points of each component on `l`.
    fn hits(&self, l: &ProjLine) -> Vec<Vec<ProjPoint>> {
        self.components
            .iter()
            .map(|c| c.iter().filter(|p| l.contains(p)).copied().collect())
            .collect()
    }

    /// `T` is off the components and the lines through `T` split them into `n`
    /// classes with one point of each component.
    pub fn is_perspective_center(&self, t: &ProjPoint) -> bool {
        if self.component_of(t).is_some() {
            return false;
        }
        let mut classes: BTreeMap<ProjLine, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for p in c {
                let counts = classes.entry(join(t, p).unwrap()).or_insert_with(|| vec![0; self.k()]);
                counts[i] += 1;
            }
        }
        classes.len() == self.order() && classes.values().all(|c| c.iter().all(|&x| x == 1))
    }

    /// Centers among the pairwise meets of net lines.
    pub fn find_centers(&self) -> Vec<ProjPoint> {
        let lines = self.net_lines();
        let mut cands: BTreeSet<ProjPoint> = BTreeSet::new();
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                cands.insert(meet(a, b).unwrap());
            }
        }
        cands.into_iter().filter(|t| self.is_perspective_center(t)).collect()
    }

    /// Centers found by testing every point of the plane.
    pub fn find_centers_sweep(&self) -> Vec<ProjPoint> {
        all_points(&self.field)
            .into_iter()
            .filter(|t| self.is_perspective_center(t))
            .collect()
    }

    /// Cross-ratio `(T, ℓ∩Λ1, ℓ∩Λ2, ℓ∩Λ3)`, equal on every line `ℓ` through the center `T`.
    pub fn constant_cross_ratio(&self, t: &ProjPoint) -> Result<PValue> {
        if !self.is_perspective_center(t) {
            return Err(Error::InvalidParameter(format!("{t} is not a perspective center")));
        }
        let mut value: Option<(PValue, ProjLine)> = None;
        for p in &self.components[0] {
            let l = join(t, p)?;
            let h = self.hits(&l);
            let k = cross_ratio(t, p, &h[1][0], &h[2][0])?;
            match &value {
                None => value = Some((k, l)),
                Some((k0, l0)) if *k0 != k => {
                    return Err(Error::NonConstant(format!("{k0} on {l0} but {k} on {l}")));
                }
                _ => {}
            }
        }
        Ok(value.expect("components are non-empty").0)
    }

    /// Cross-ratio of the four points on each line of a 4-net.
    pub fn crossratio_4net(&self) -> Result<PValue> {
        if self.k() != 4 {
            return Err(Error::InvalidParameter(format!(
                "expected a 4-net, got k = {}",
                self.k()
            )));
        }
        let mut value: Option<(PValue, ProjLine)> = None;
        for l in self.net_lines() {
            let h = self.hits(&l);
            let k = cross_ratio(&h[0][0], &h[1][0], &h[2][0], &h[3][0])?;
            match &value {
                None => value = Some((k, l)),
                Some((k0, l0)) if *k0 != k => {
                    return Err(Error::NonConstant(format!("{k0} on {l0} but {k} on {l}")));
                }
                _ => {}
            }
        }
        Ok(value.expect("a verified net has lines").0)
    }

    /// The net without component `drop`.
    pub fn derived_net(&self, drop: usize) -> Result<DualNet> {
        if self.k() < 4 {
            return Err(Error::InvalidParameter("a derived net needs k >= 4".into()));
        }
        if drop >= self.k() {
            return Err(Error::InvalidParameter(format!("component {drop} out of range")));
        }
        let comps = self
            .components
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != drop)
            .map(|(_, c)| c.clone())
            .collect();
        DualNet::verify_with(self.field, comps, self.char_exception)
    }

    /// Adds the centers as a fourth component when there are exactly `n` of them
    /// and no line through two centers meets the net.
    pub fn extend_to_4net(&self) -> Option<DualNet> {
        if self.k() != 3 {
            return None;
        }
        let centers = self.find_centers();
        if centers.len() != self.order() {
            return None;
        }
        for (i, a) in centers.iter().enumerate() {
            for b in &centers[i + 1..] {
                let l = join(a, b).unwrap();
                if self.components.iter().flatten().any(|p| l.contains(p)) {
                    return None;
                }
            }
        }
        let mut comps = self.components.clone();
        comps.push(centers);
        DualNet::verify_with(self.field, comps, self.char_exception).ok()
    }

    /// Whether `u` maps component `from` onto component `to`.
    pub fn maps_component(&self, u: &Projectivity, from: usize, to: usize) -> bool {
        let image: BTreeSet<ProjPoint> = self.components[from].iter().map(|p| u.apply(p)).collect();
        image == self.components[to].iter().copied().collect()
    }

    pub fn classify(&self) -> NetClass {
        classify(self)
    }
}

/// Every violation of the net axioms.
pub fn check(field: &Field, components: &[Vec<ProjPoint>], allow_char_exception: bool) -> Vec<Violation> {
    let k = components.len();
    if k < 3 {
        return vec![Violation::shape(format!("need at least 3 components, got {k}"))];
    }
    let n = components[0].len();
    if n == 0 || components.iter().any(|c| c.len() != n) {
        return vec![Violation::shape("components must be non-empty and of equal size")];
    }
    if components.iter().flatten().any(|p| p.modulus() != field.p()) {
        return vec![Violation::shape("point over a different field")];
    }
    if !allow_char_exception && field.p() <= n as u64 {
        return vec![Violation::shape(format!(
            "characteristic {} does not exceed the order {n}",
            field.p()
        ))];
    }
    let mut seen: BTreeMap<ProjPoint, usize> = BTreeMap::new();
    for (i, c) in components.iter().enumerate() {
        for p in c {
            if let Some(j) = seen.insert(*p, i) {
                let msg = if i == j {
                    format!("point {p} repeated in component {i}")
                } else {
                    format!("point {p} lies in components {j} and {i}")
                };
                return vec![Violation::shape(msg)];
            }
        }
    }
    let mut out = Vec::new();
    let mut lines: BTreeSet<ProjLine> = BTreeSet::new();
    for i in 0..k {
        for j in i + 1..k {
            for a in &components[i] {
                for b in &components[j] {
                    let l = join(a, b).unwrap();
                    if !lines.insert(l) {
                        continue;
                    }
                    for (c, comp) in components.iter().enumerate() {
                        let count = comp.iter().filter(|p| l.contains(p)).count();
                        if count != 1 {
                            out.push(Violation {
                                line: Some(l),
                                component: Some(c),
                                count,
                                message: format!("line meets component {c} in {count} points instead of 1"),
                            });
                        }
                    }
                }
            }
        }
    }
    if out.is_empty() && lines.len() != n * n {
        out.push(Violation::shape(format!(
            "{} lines meet two components, expected {}",
            lines.len(),
            n * n
        )));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicKind {
    Nonsingular,
    Node,
    Cusp,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetClass {
    Triangular {
        lines: [ProjLine; 3],
    },
    Pencil {
        lines: [ProjLine; 3],
        vertex: ProjPoint,
    },
    ConicLine {
        line_component: usize,
        line: ProjLine,
        conic: HomPoly,
    },
    ProperAlgebraic {
        cubic: HomPoly,
        kind: CubicKind,
        singular: Vec<ProjPoint>,
        j: Option<PValue>,
        /// Dimension of the space of cubics through the points.
        solution_dim: usize,
    },
    Tetrahedron {
        vertices: [ProjPoint; 4],
    },
    Unknown,
}

impl NetClass {
    pub fn tag(&self) -> &'static str {
        match self {
            NetClass::Triangular { .. } => "triangular",
            NetClass::Pencil { .. } => "pencil",
            NetClass::ConicLine { .. } => "conic-line",
            NetClass::ProperAlgebraic { .. } => "proper-algebraic",
            NetClass::Tetrahedron { .. } => "tetrahedron",
            NetClass::Unknown => "unknown",
        }
    }
}

const CONIC_MONOMIALS: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
const CUBIC_MONOMIALS: [[u32; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// Largest number of curves tried from a solution space.
const MEMBER_LIMIT: u64 = 20_000;

fn carrier_line(points: &[ProjPoint]) -> Option<ProjLine> {
    let rows: Vec<Vec<Scalar>> = points.iter().map(|p| p.coords().to_vec()).collect();
    if points.len() < 2 || rank(&rows) > 2 {
        return None;
    }
    join(&points[0], &points[1]).ok()
}

/// Basis of the curves of the given monomials through all `points`.
fn fit(field: Field, monomials: &[[u32; 3]], points: &[ProjPoint]) -> Vec<Vec<Scalar>> {
    let rows: Vec<Vec<Scalar>> = points
        .iter()
        .map(|p| {
            let c = p.coords();
            monomials
                .iter()
                .map(|e| c[0].pow(e[0] as u64) * c[1].pow(e[1] as u64) * c[2].pow(e[2] as u64))
                .collect()
        })
        .collect();
    nullspace(&rows, monomials.len(), field.zero())
}

/// Projectively distinct members of the span of `basis`, up to `MEMBER_LIMIT`.
fn members(field: Field, monomials: &[[u32; 3]], basis: &[Vec<Scalar>]) -> Vec<HomPoly> {
    let d = basis.len();
    let p = field.p();
    let degree = monomials[0].iter().sum();
    let mut out = Vec::new();
    // coefficient vectors whose first nonzero entry is 1
    for lead in 0..d {
        let free = d - 1 - lead;
        let count = (p as u128).pow(free as u32);
        if out.len() as u128 + count > MEMBER_LIMIT as u128 {
            break;
        }
        for idx in 0..count as u64 {
            let mut coeffs = vec![field.zero(); d];
            coeffs[lead] = field.one();
            let mut r = idx;
            for slot in coeffs.iter_mut().skip(lead + 1) {
                *slot = field.elem((r % p) as i64);
                r /= p;
            }
            let vec: Vec<Scalar> = (0..monomials.len())
                .map(|m| (0..d).fold(field.zero(), |acc, b| acc + coeffs[b] * basis[b][m]))
                .collect();
            out.push(HomPoly::from_terms(field, degree, monomials.iter().copied().zip(vec)).unwrap());
        }
    }
    out
}

fn conic_nonsingular(c: &HomPoly) -> bool {
    let f = c.field();
    let half = f.one() / f.elem(2);
    let a = |e| c.coeff(e);
    let m = [
        [a([2, 0, 0]), half * a([1, 1, 0]), half * a([1, 0, 1])],
        [half * a([1, 1, 0]), a([0, 2, 0]), half * a([0, 1, 1])],
        [half * a([1, 0, 1]), half * a([0, 1, 1]), a([0, 0, 2])],
    ];
    !det3(&m).is_zero()
}

fn contains_some_line(curve: &HomPoly, lines: &[ProjLine]) -> bool {
    lines.iter().any(|l| curve.contains_line(l))
}

fn classify(net: &DualNet) -> NetClass {
    if net.k() != 3 || net.order() < 2 {
        return NetClass::Unknown;
    }
    let field = net.field();
    let comps = net.components();
    let carriers: Vec<Option<ProjLine>> = comps.iter().map(|c| carrier_line(c)).collect();

    if let [Some(a), Some(b), Some(c)] = carriers[..] {
        let lines = [a, b, c];
        let m = [a.coords(), b.coords(), c.coords()];
        if det3(&m).is_zero() {
            if let Ok(vertex) = meet(&a, &b) {
                return NetClass::Pencil { lines, vertex };
            }
        }
        return NetClass::Triangular { lines };
    }

    let linear: Vec<usize> = (0..3).filter(|&i| carriers[i].is_some()).collect();
    if let [i] = linear[..] {
        let rest: Vec<ProjPoint> = (0..3)
            .filter(|&j| j != i)
            .flat_map(|j| comps[j].iter().copied())
            .collect();
        let basis = fit(field, &CONIC_MONOMIALS, &rest);
        if let Some(conic) = members(field, &CONIC_MONOMIALS, &basis)
            .into_iter()
            .find(conic_nonsingular)
        {
            return NetClass::ConicLine {
                line_component: i,
                line: carriers[i].unwrap(),
                conic,
            };
        }
    }

    if let Some(vertices) = tetrahedron_vertices(net) {
        return NetClass::Tetrahedron { vertices };
    }

    let all: Vec<ProjPoint> = comps.iter().flatten().copied().collect();
    let basis = fit(field, &CUBIC_MONOMIALS, &all);
    if !basis.is_empty() {
        let lines = all_lines(&field);
        let mut best: Option<(u8, NetClass)> = None;
        for cubic in members(field, &CUBIC_MONOMIALS, &basis) {
            if contains_some_line(&cubic, &lines) {
                continue;
            }
            let singular = singular_points(&cubic);
            let (kind, j) = match singular.first() {
                None => (CubicKind::Nonsingular, cubic_j_invariant(&cubic)),
                Some(s) => (
                    match double_point_kind(&cubic, s) {
                        DoublePoint::Node => CubicKind::Node,
                        DoublePoint::Cusp => CubicKind::Cusp,
                        DoublePoint::Higher => CubicKind::Other,
                    },
                    None,
                ),
            };
            let score = match (kind, j) {
                (CubicKind::Nonsingular, Some(j)) if j.as_scalar().is_some_and(|x| x.is_zero()) => 3,
                (CubicKind::Nonsingular, _) => 2,
                _ => 1,
            };
            if best.as_ref().is_none_or(|(s, _)| score > *s) {
                best = Some((
                    score,
                    NetClass::ProperAlgebraic {
                        cubic,
                        kind,
                        singular,
                        j,
                        solution_dim: basis.len(),
                    },
                ));
                if score == 3 {
                    break;
                }
            }
        }
        if let Some((_, class)) = best {
            return class;
        }
    }

    NetClass::Unknown
}

/// Ways to split `points` into two collinear halves.
fn collinear_splits(points: &[ProjPoint]) -> Vec<(ProjLine, ProjLine, Vec<ProjPoint>, Vec<ProjPoint>)> {
    let n = points.len();
    let m = n / 2;
    let mut out = Vec::new();
    let mut seen: BTreeSet<(ProjLine, ProjLine)> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let l = join(&points[i], &points[j]).unwrap();
            let (on, off): (Vec<ProjPoint>, Vec<ProjPoint>) = points.iter().partition(|p| l.contains(p));
            if on.len() != m {
                continue;
            }
            let Some(l2) = carrier_line(&off) else { continue };
            if l2 == l || off.iter().any(|p| l.contains(p)) {
                continue;
            }
            let key = if l < l2 { (l, l2) } else { (l2, l) };
            if seen.insert(key) {
                out.push((l, l2, on, off));
            }
        }
    }
    out
}

fn tetrahedron_vertices(net: &DualNet) -> Option<[ProjPoint; 4]> {
    let n = net.order();
    if !n.is_multiple_of(2) || n < 4 {
        return None;
    }
    let splits: Vec<_> = net.components().iter().map(|c| collinear_splits(c)).collect();
    for s0 in &splits[0] {
        for s1 in &splits[1] {
            for s2 in &splits[2] {
                let chosen = [s0, s1, s2];
                let Some(vertices) = quadrangle(&chosen.map(|s| (s.0, s.1))) else {
                    continue;
                };
                // each face carries one half of every component
                let faces_ok = (0..4).all(|skip| {
                    let face: Vec<ProjPoint> = (0..4).filter(|&v| v != skip).map(|v| vertices[v]).collect();
                    let comps: Vec<Vec<ProjPoint>> = chosen
                        .iter()
                        .map(|s| {
                            let on_face = |l: &ProjLine| face.iter().filter(|v| l.contains(v)).count() == 2;
                            if on_face(&s.0) {
                                s.2.clone()
                            } else {
                                s.3.clone()
                            }
                        })
                        .collect();
                    DualNet::verify_with(net.field(), comps, net.char_exception()).is_ok()
                });
                if faces_ok {
                    return Some(vertices);
                }
            }
        }
    }
    None
}

/// The four vertices when the three pairs of lines are the pairs of opposite
/// sides of a complete quadrangle.
fn quadrangle(pairs: &[(ProjLine, ProjLine); 3]) -> Option<[ProjPoint; 4]> {
    let lines: Vec<ProjLine> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    if lines.iter().collect::<BTreeSet<_>>().len() != 6 {
        return None;
    }
    let mut vertices: BTreeSet<ProjPoint> = BTreeSet::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            let p = meet(a, b).ok()?;
            if lines.iter().filter(|l| l.contains(&p)).count() == 3 {
                vertices.insert(p);
            }
        }
    }
    let v: Vec<ProjPoint> = vertices.into_iter().collect();
    if v.len() != 4 {
        return None;
    }
    for l in &lines {
        if v.iter().filter(|p| l.contains(p)).count() != 2 {
            return None;
        }
    }
    for &(a, b) in pairs {
        if v.iter().any(|p| a.contains(p) && b.contains(p)) {
            return None;
        }
    }
    Some([v[0], v[1], v[2], v[3]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(f: &Field, cs: &[[i64; 3]]) -> Vec<ProjPoint> {
        cs.iter().map(|&c| ProjPoint::from_ints(f, c).unwrap()).collect()
    }

    /// Affine points (a, 0), (b, 1), (c, 2) over GF(5), lines c = 2b - a.
    fn pencil5() -> (Field, Vec<Vec<ProjPoint>>) {
        let f = Field::new(5).unwrap();
        let comps = (0..3)
            .map(|y| (0..5).map(|x| ProjPoint::affine(f.elem(x), f.elem(y))).collect())
            .collect();
        (f, comps)
    }

    #[test]
    fn verify_rejects_shapes() {
        let f = Field::new(11).unwrap();
        let a = pts(&f, &[[1, 0, 0], [0, 1, 0]]);
        let b = pts(&f, &[[0, 0, 1], [1, 1, 1]]);
        assert!(DualNet::verify(f, vec![a.clone(), b.clone()]).is_err());
        assert!(DualNet::verify(f, vec![a.clone(), b.clone(), pts(&f, &[[1, 2, 3]])]).is_err());
        assert!(DualNet::verify(f, vec![a.clone(), b.clone(), a.clone()]).is_err());
    }

    #[test]
    fn collinear_components_are_rejected() {
        let f = Field::new(11).unwrap();
        // all nine points on the line Z = 0
        let comps: Vec<Vec<ProjPoint>> = (0..3)
            .map(|c| {
                (0..3)
                    .map(|i| ProjPoint::from_ints(&f, [1, 3 * c + i, 0]).unwrap())
                    .collect()
            })
            .collect();
        match DualNet::verify(f, comps) {
            Err(Error::Net(v)) => assert_eq!(v.count, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn characteristic_guard() {
        let (f, comps) = pencil5();
        assert!(DualNet::verify(f, comps.clone()).is_err());
        let net = DualNet::verify_with(f, comps, true).unwrap();
        assert!(net.char_exception());
        assert_eq!(net.net_lines().len(), 25);
        assert!(matches!(net.classify(), NetClass::Pencil { .. }));
    }

    #[test]
    fn pencil_centers_and_constant() {
        let (f, comps) = pencil5();
        let net = DualNet::verify_with(f, comps, true).unwrap();
        let centers = net.find_centers_sweep();
        assert!(!centers.is_empty());
        assert_eq!(centers, net.find_centers());
        for t in &centers {
            net.constant_cross_ratio(t).unwrap();
        }
        // affine points off the three carrier lines
        let t = ProjPoint::affine(f.elem(0), f.elem(3));
        assert!(net.is_perspective_center(&t));
        assert!(!net.is_perspective_center(&net.components()[0][0]));
    }

    #[test]
    fn quadrangle_of_standard_frame() {
        let f = Field::new(13).unwrap();
        let e = pts(&f, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        let j = |a: usize, b: usize| join(&e[a], &e[b]).unwrap();
        let pairs = [(j(1, 2), j(0, 3)), (j(0, 2), j(1, 3)), (j(0, 1), j(2, 3))];
        let v = quadrangle(&pairs).unwrap();
        assert_eq!(v.iter().collect::<BTreeSet<_>>(), e.iter().collect::<BTreeSet<_>>());
        // adjacent sides paired together
        let bad = [(j(1, 2), j(0, 2)), (j(0, 3), j(1, 3)), (j(0, 1), j(2, 3))];
        assert!(quadrangle(&bad).is_none());
    }

    #[test]
    fn conic_nonsingularity() {
        let f = Field::new(11).unwrap();
        let xy = HomPoly::from_int_terms(f, 2, &[([1, 1, 0], 1), ([0, 0, 2], -1)]).unwrap();
        assert!(conic_nonsingular(&xy));
        let pair = HomPoly::from_int_terms(f, 2, &[([1, 1, 0], 1)]).unwrap();
        assert!(!conic_nonsingular(&pair));
    }

    #[test]
    fn violation_display() {
        let f = Field::new(11).unwrap();
        let v = Violation {
            line: Some(ProjLine::from_ints(&f, [0, 0, 1]).unwrap()),
            component: Some(2),
            count: 3,
            message: "line meets component 2 in 3 points instead of 1".into(),
        };
        assert_eq!(
            v.to_string(),
            "line meets component 2 in 3 points instead of 1 (line (0, 0, 1), component 2, 3 points)"
        );
    }
}
