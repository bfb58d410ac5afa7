//! Homogeneous ternary polynomials and plane curves over GF(p).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::linalg::rank;
use crate::plane::{all_points, cross_ratio_lines, dot, PValue, ProjLine, ProjPoint, Projectivity, Triple};

/// Dense univariate polynomial, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    /// `a + b·x`
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        UniPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the end).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(x.zero_like(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        let z = self.coeffs[0].zero_like();
        if self.coeffs.len() == 1 {
            return UniPoly::constant(z);
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c.lift(i as i64) * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(-o.coeffs[0].one_like()))
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        let z = self.coeffs[0].zero_like();
        let mut out = vec![z; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

pub type Exponent = [u32; 3];

/// A homogeneous polynomial in `X, Y, Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    field: Field,
    degree: u32,
    terms: BTreeMap<Exponent, Scalar>,
}

impl HomPoly {
    pub fn zero(field: Field, degree: u32) -> Self {
        HomPoly {
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(field: Field, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Scalar)>,
    {
        let mut out = HomPoly::zero(field, degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidParameter(format!(
                    "monomial {e:?} is not of degree {degree}"
                )));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn from_int_terms(field: Field, degree: u32, terms: &[(Exponent, i64)]) -> Result<Self> {
        Self::from_terms(field, degree, terms.iter().map(|&(e, c)| (e, field.elem(c))))
    }

    pub fn linear(field: Field, coeffs: Triple) -> Self {
        HomPoly::from_terms(
            field,
            1,
            [([1, 0, 0], coeffs[0]), ([0, 1, 0], coeffs[1]), ([0, 0, 1], coeffs[2])],
        )
        .unwrap()
    }

    pub fn from_line(field: Field, l: &ProjLine) -> Self {
        HomPoly::linear(field, l.coords())
    }

    fn add_term(&mut self, e: Exponent, c: Scalar) {
        let entry = self.terms.entry(e).or_insert(self.field.zero());
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, e: Exponent) -> Scalar {
        self.terms.get(&e).copied().unwrap_or(self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: Scalar) -> HomPoly {
        HomPoly::from_terms(self.field, self.degree, self.terms.iter().map(|(&e, &c)| (e, c * s))).unwrap()
    }

    pub fn add(&self, o: &HomPoly) -> HomPoly {
        assert_eq!(self.degree, o.degree, "adding polynomials of different degree");
        let mut out = self.clone();
        for (&e, &c) in &o.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, o: &HomPoly) -> HomPoly {
        self.add(&o.scale(-self.field.one()))
    }

    pub fn mul(&self, o: &HomPoly) -> HomPoly {
        let mut out = HomPoly::zero(self.field, self.degree + o.degree);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &o.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> HomPoly {
        let mut out = HomPoly::from_terms(self.field, 0, [([0, 0, 0], self.field.one())]).unwrap();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval_triple(&self, x: &Triple) -> Scalar {
        self.terms.iter().fold(self.field.zero(), |acc, (e, &c)| {
            acc + c * x[0].pow(e[0] as u64) * x[1].pow(e[1] as u64) * x[2].pow(e[2] as u64)
        })
    }

    pub fn eval(&self, p: &ProjPoint) -> Scalar {
        self.eval_triple(&p.coords())
    }

    pub fn vanishes_at(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// Formal partial derivative in variable `var` (0 = X, 1 = Y, 2 = Z).
    pub fn partial(&self, var: usize) -> HomPoly {
        let mut out = HomPoly::zero(self.field, self.degree.saturating_sub(1));
        for (e, &c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = *e;
            d[var] -= 1;
            out.add_term(d, c * self.field.elem(e[var] as i64));
        }
        out
    }

    pub fn gradient(&self, p: &ProjPoint) -> Triple {
        [0, 1, 2].map(|v| self.partial(v).eval(p))
    }

    /// Matrix of second partials evaluated at `p`.
    pub fn second_partials_at(&self, p: &ProjPoint) -> [[Scalar; 3]; 3] {
        let first: Vec<HomPoly> = (0..3).map(|i| self.partial(i)).collect();
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| first[i].partial(j).eval(p)))
    }

    /// The Hessian `det(∂²F/∂xi∂xj)`.
    pub fn hessian(&self) -> HomPoly {
        let first: Vec<HomPoly> = (0..3).map(|i| self.partial(i)).collect();
        let h: Vec<Vec<HomPoly>> = (0..3).map(|i| (0..3).map(|j| first[i].partial(j)).collect()).collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| h[1][a].mul(&h[2][b]).sub(&h[1][c].mul(&h[2][d]));
        h[0][0]
            .mul(&minor(1, 2, 2, 1))
            .sub(&h[0][1].mul(&minor(0, 2, 2, 0)))
            .add(&h[0][2].mul(&minor(0, 1, 1, 0)))
    }

    /// `F(M·X)`.
    pub fn compose(&self, m: &Projectivity) -> HomPoly {
        let mat = m.matrix();
        let forms: Vec<HomPoly> = mat.iter().map(|row| HomPoly::linear(self.field, *row)).collect();
        let mut out = HomPoly::zero(self.field, self.degree);
        for (e, &c) in &self.terms {
            let term = forms[0]
                .pow(e[0])
                .mul(&forms[1].pow(e[1]))
                .mul(&forms[2].pow(e[2]))
                .scale(c);
            out = out.add(&term);
        }
        out
    }

    /// `F(a + t·b)` as a polynomial in `t`; the coefficient of `t^i` is the
    /// coefficient of `s^(d-i) t^i` in `F(s·a + t·b)`.
    pub fn restrict(&self, a: &Triple, b: &Triple) -> UniPoly {
        let lin: Vec<UniPoly> = (0..3).map(|i| UniPoly::linear(a[i], b[i])).collect();
        let one = UniPoly::constant(self.field.one());
        let mut out = UniPoly::constant(self.field.zero());
        for (e, &c) in &self.terms {
            let mut term = one.scale(c);
            for (v, l) in lin.iter().enumerate() {
                for _ in 0..e[v] {
                    term = term.mul(l);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// True when every point of `l` lies on the curve.
    pub fn contains_line(&self, l: &ProjLine) -> bool {
        let (a, b) = l.base_points();
        let r = self.restrict(&a.coords(), &b.coords());
        r.is_zero() && self.eval(&b).is_zero()
    }

    /// Intersection multiplicity of the curve with the line `p q` at `p`.
    pub fn multiplicity_on_line(&self, p: &ProjPoint, q: &ProjPoint) -> usize {
        let r = self.restrict(&p.coords(), &q.coords());
        if r.is_zero() {
            return usize::MAX;
        }
        r.coeffs().iter().take_while(|c| c.is_zero()).count()
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (name, &k) in ["X", "Y", "Z"].iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Tangent line of `f` at a smooth point `p`.
pub fn tangent_line(f: &HomPoly, p: &ProjPoint) -> Result<ProjLine> {
    if !f.vanishes_at(p) {
        return Err(Error::NotOnCurve);
    }
    ProjLine::new(f.gradient(p)).map_err(|_| Error::SingularPoint)
}

/// Points of PG(2, p) where `f` and its gradient vanish.
pub fn singular_points(f: &HomPoly) -> Vec<ProjPoint> {
    let grads: Vec<HomPoly> = (0..3).map(|i| f.partial(i)).collect();
    all_points(&f.field)
        .into_iter()
        .filter(|p| f.vanishes_at(p) && grads.iter().all(|g| g.vanishes_at(p)))
        .collect()
}

/// Points of PG(2, p) on both curves.
pub fn common_points(f: &HomPoly, g: &HomPoly) -> Vec<ProjPoint> {
    all_points(&f.field)
        .into_iter()
        .filter(|p| f.vanishes_at(p) && g.vanishes_at(p))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DoublePoint {
    Node,
    Cusp,
    /// Multiplicity three or more.
    Higher,
}

/// Kind of a singular point from the rank of the second-partials matrix.
pub fn double_point_kind(f: &HomPoly, p: &ProjPoint) -> DoublePoint {
    let h = f.second_partials_at(p);
    let rows: Vec<Vec<Scalar>> = h.iter().map(|r| r.to_vec()).collect();
    match rank(&rows) {
        2 | 3 => DoublePoint::Node,
        1 => DoublePoint::Cusp,
        _ => DoublePoint::Higher,
    }
}

/// The cubic `Y²Z = X(X - Z)(X - cZ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegendreCubic {
    pub c: Scalar,
}

impl LegendreCubic {
    pub fn new(c: Scalar) -> Self {
        LegendreCubic { c }
    }

    pub fn field(&self) -> Field {
        Field::new(self.c.modulus()).expect("scalar carries a valid modulus")
    }

    pub fn poly(&self) -> HomPoly {
        let f = self.field();
        let c = self.c;
        HomPoly::from_terms(
            f,
            3,
            [
                ([0, 2, 1], f.one()),
                ([3, 0, 0], -f.one()),
                ([2, 0, 1], f.one() + c),
                ([1, 0, 2], -c),
            ],
        )
        .unwrap()
    }

    pub fn is_nonsingular(&self) -> bool {
        !(self.c.is_zero() || self.c.is_one())
    }
}

/// `j = 2⁸ (c²-c+1)³ / (c²(c-1)²)` of the Legendre cubic.
pub fn j_invariant(c: Scalar) -> PValue {
    let one = c.one_like();
    let q = c * c - c + one;
    let d = c * (c - one);
    PValue::ratio(c.lift(256) * q * q * q, d * d).expect("c²-c+1 and c(c-1) have no common root")
}

/// Corners of an equianharmonic Legendre cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corners {
    /// `(c+1)/3`: the vertical Hessian line is `X = a·Z`.
    pub a: Scalar,
    /// `(1-2c)/3`: the horizontal Hessian lines are `Y² = r·Z²`.
    pub radicand: Scalar,
    pub points: [ProjPoint; 3],
}

/// Pairwise intersections of the three Hessian lines of `Y² = X(X-1)(X-c)` when
/// `c² - c + 1 = 0`. The Hessian factors as `(X - (c+1)/3·Z)(Y² - (1-2c)/3·Z²)`.
pub fn corners_legendre(c: Scalar) -> Result<Corners> {
    let f = Field::new(c.modulus())?;
    let one = f.one();
    if !(c * c - c + one).is_zero() {
        return Err(Error::NotEquianharmonic);
    }
    let three = f.elem(3);
    let a = (c + one) / three;
    let radicand = (one - f.elem(2) * c) / three;
    let (r, _) = f.sqrt(radicand).ok_or(Error::NoSquareRoot(radicand.value()))?;
    let points = [
        ProjPoint::new([a, r, one])?,
        ProjPoint::new([a, -r, one])?,
        ProjPoint::new([one, f.zero(), f.zero()])?,
    ];
    Ok(Corners { a, radicand, points })
}

/// Result of checking the tangent cross-ratio at the base points of a pencil.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilReport {
    /// `αβ' / (α'β)`.
    pub expected: PValue,
    /// Per base point: cross-ratio of the tangents read as `(t_G, t_F, t_H, t_H')`.
    pub values: Vec<(ProjPoint, PValue)>,
    /// Per base point: the same tangents read as `(t_F, t_G, t_H, t_H')`; the
    /// reciprocal of `values`.
    pub values_fg: Vec<PValue>,
}

impl PencilReport {
    pub fn passed(&self) -> bool {
        self.values.iter().all(|(_, v)| *v == self.expected)
            && self.values_fg.iter().all(|v| *v == self.expected.recip())
    }
}

/// Tangents of `F`, `G`, `αF+βG`, `α'F+β'G` at every common point of `F` and `G`.
pub fn pencil_crossratio_check(
    f: &HomPoly,
    g: &HomPoly,
    alpha: Scalar,
    beta: Scalar,
    alpha2: Scalar,
    beta2: Scalar,
) -> Result<PencilReport> {
    if f.degree() != g.degree() {
        return Err(Error::InvalidParameter("F and G must have equal degree".into()));
    }
    if [alpha, beta, alpha2, beta2].iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidParameter("pencil coefficients must be nonzero".into()));
    }
    if (alpha * beta2 - alpha2 * beta).is_zero() {
        return Err(Error::Degenerate("αF+βG and α'F+β'G define the same curve".into()));
    }
    let n = f.degree() as usize;
    let base = common_points(f, g);
    if base.len() != n * n {
        return Err(Error::BaseLocusSize {
            expected: n * n,
            found: base.len(),
        });
    }
    let h = f.scale(alpha).add(&g.scale(beta));
    let h2 = f.scale(alpha2).add(&g.scale(beta2));
    let mut values = Vec::with_capacity(base.len());
    let mut values_fg = Vec::with_capacity(base.len());
    for p in base {
        let tf = tangent_line(f, &p)?;
        let tg = tangent_line(g, &p)?;
        let th = tangent_line(&h, &p)?;
        let th2 = tangent_line(&h2, &p)?;
        values.push((p, cross_ratio_lines(&tg, &tf, &th, &th2)?));
        values_fg.push(cross_ratio_lines(&tf, &tg, &th, &th2)?);
    }
    Ok(PencilReport {
        expected: PValue::finite(alpha * beta2 / (alpha2 * beta)),
        values,
        values_fg,
    })
}

/// Both sides of the two polynomial identities behind the j = 0 criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct J0Identities {
    pub alphas: [UniPoly; 5],
    /// `12α0α4 - 3α1α3 + α2²`
    pub f: UniPoly,
    /// Negated denominator core `-(72α0α2α4 - 27α0α3² - 27α1²α4 - 2α2³ + 9α1α2α3)`.
    pub g: UniPoly,
    pub betas: [Scalar; 4],
    pub gammas: [Scalar; 4],
    /// `3f'(m)g(m) - 2f(m)g'(m)`
    pub lhs1: Scalar,
    /// `54(b² - a(a-1)(a-c))²(β0 + β1m + β2m² + β3m³)`
    pub rhs1: Scalar,
    /// `Σ βi γi`
    pub lhs2: Scalar,
    /// `18c²(c-1)²(c²-c+1)`
    pub rhs2: Scalar,
}

impl J0Identities {
    pub fn holds(&self) -> bool {
        self.lhs1 == self.rhs1 && self.lhs2 == self.rhs2
    }
}

/// Evaluates the identities for a point `T = (a, b)`, the Legendre parameter
/// `c` and the slope `m` of a line through `T`.
pub fn cubic_j0_identities(a: Scalar, b: Scalar, c: Scalar, m: Scalar) -> J0Identities {
    let k = |v: i64| a.lift(v);
    let con = UniPoly::constant;
    let zero = con(k(0));
    let one = k(1);
    // x = a + t, y = b + m t on Y² = X(X-1)(X-c)
    let alpha1 = con(a * a * a - a * a * c - a * a + a * c - b * b);
    let alpha2 = UniPoly::new(vec![k(3) * a * a - k(2) * a - k(2) * a * c + c, k(-2) * b]);
    let alpha3 = UniPoly::new(vec![k(3) * a - one - c, k(0), k(-1)]);
    let alpha4 = con(one);
    let alphas = [
        zero.clone(),
        alpha1.clone(),
        alpha2.clone(),
        alpha3.clone(),
        alpha4.clone(),
    ];
    let [a0, a1, a2, a3, a4] = &alphas;

    let f = a0.mul(a4).scale(k(12)).sub(&a1.mul(a3).scale(k(3))).add(&a2.mul(a2));
    let denom = a0
        .mul(a2)
        .mul(a4)
        .scale(k(72))
        .sub(&a0.mul(a3).mul(a3).scale(k(27)))
        .sub(&a1.mul(a1).mul(a4).scale(k(27)))
        .sub(&a2.mul(a2).mul(a2).scale(k(2)))
        .add(&a1.mul(a2).mul(a3).scale(k(9)));
    let g = denom.scale(k(-1));

    let lhs1 = (k(3) * f.derivative().eval(m) * g.eval(m)) - (k(2) * f.eval(m) * g.derivative().eval(m));
    let q = c * c - c + one;
    let betas = [
        k(2) * b * q,
        k(2) * a * c - k(2) * a * c * c - k(2) * a + k(3) * b * b + c * c + c,
        k(-2) * b * (k(3) * a - one - c),
        k(3) * a * a - k(2) * a * c + c - k(2) * a,
    ];
    let gammas = [
        k(-3) * b * (c - k(2)) * (k(2) * c - one) * (c + one),
        k(-2) * q * (k(6) * a - k(4) + k(3) * c + k(6) * a * c * c + k(3) * c * c - k(4) * c * c * c - k(6) * a * c),
        k(-6) * b * q * q,
        k(-8) * q * q * q,
    ];
    let on_curve = b * b - a * (a - one) * (a - c);
    let beta_poly = UniPoly::new(betas.to_vec());
    let rhs1 = k(54) * on_curve * on_curve * beta_poly.eval(m);
    let lhs2 = betas.iter().zip(gammas.iter()).fold(k(0), |acc, (x, y)| acc + *x * *y);
    let rhs2 = k(18) * c * c * (c - one) * (c - one) * q;
    J0Identities {
        alphas,
        f,
        g,
        betas,
        gammas,
        lhs1,
        rhs1,
        lhs2,
        rhs2,
    }
}

/// j-invariant of a plane cubic from the four tangents through one of its
/// smooth rational points. `None` if the curve has no smooth rational point or
/// the tangent quartic degenerates.
pub fn cubic_j_invariant(f: &HomPoly) -> Option<PValue> {
    if f.degree() != 3 {
        return None;
    }
    let field = f.field();
    let p = all_points(&field)
        .into_iter()
        .find(|q| f.vanishes_at(q) && f.gradient(q).iter().any(|x| !x.is_zero()))?;
    j_from_tangents_at(f, &p)
}

/// j-invariant read from the tangents through the smooth point `p`.
pub fn j_from_tangents_at(f: &HomPoly, p: &ProjPoint) -> Option<PValue> {
    let field = f.field();
    let grad = f.gradient(p);
    let hess = f.second_partials_at(p);
    let aux = crate::plane::all_lines(&field).into_iter().find(|l| !l.contains(p))?;
    let (b1, b2) = aux.base_points();
    let (b1, b2) = (b1.coords(), b2.coords());
    // F(P + tQ) = t·a1 + t²·a2 + t³·a3 with Q = B1 + m·B2
    let a1 = UniPoly::linear(dot(&grad, &b1), dot(&grad, &b2));
    let quad = |u: &Triple, v: &Triple| {
        (0..3).fold(field.zero(), |acc, i| {
            acc + (0..3).fold(field.zero(), |s, j| s + u[i] * hess[i][j] * v[j])
        })
    };
    let half = field.one() / field.elem(2);
    let a2 = UniPoly::new(vec![half * quad(&b1, &b1), quad(&b1, &b2), half * quad(&b2, &b2)]);
    let a3 = f.restrict(&b1, &b2);
    let disc = a2.mul(&a2).sub(&a1.mul(&a3).scale(field.elem(4)));
    if disc.is_zero() {
        return None;
    }
    let alpha = [0, 1, 2, 3, 4].map(|i| disc.coeff(i));
    let u = crate::plane::u_from_quartic(alpha)?;
    // u = j / (4(j - 1728))
    let (un, ud) = (u.num(), u.den());
    PValue::ratio(field.elem(6912) * un, field.elem(4) * un - ud)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{all_lines, join};
    use rand::{Rng, SeedableRng};

    fn fl(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn fermat(f: Field) -> HomPoly {
        HomPoly::from_int_terms(f, 3, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], -1)]).unwrap()
    }

    #[test]
    fn eval_and_gradient_examples() {
        let f = fl(13);
        let g = fermat(f);
        assert!(g.eval(&ProjPoint::from_ints(&f, [1, -1, 0]).unwrap()).is_zero());
        let grad = g.gradient(&ProjPoint::from_ints(&f, [0, 0, 1]).unwrap());
        assert_eq!(grad, [f.zero(), f.zero(), f.elem(-3)]);
    }

    #[test]
    fn euler_relation() {
        let f = fl(31);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let poly = HomPoly::from_terms(
            f,
            4,
            (0..=4u32)
                .flat_map(|i| (0..=4 - i).map(move |j| [i, j, 4 - i - j]))
                .map(|e| (e, f.elem(rng.gen_range(0..31)))),
        )
        .unwrap();
        let pts = all_points(&f);
        for _ in 0..20 {
            let p = pts[rng.gen_range(0..pts.len())];
            let lhs = dot(&poly.gradient(&p), &p.coords());
            assert_eq!(lhs, f.elem(4) * poly.eval(&p));
        }
    }

    #[test]
    fn tangent_examples() {
        let f = fl(13);
        // F = X·Z² + X² + Y² (affine x + x² + y²) at the origin -> X = 0
        let g = HomPoly::from_int_terms(f, 3, &[([1, 0, 2], 1), ([2, 0, 1], 1), ([0, 2, 1], 1)]).unwrap();
        let o = ProjPoint::from_ints(&f, [0, 0, 1]).unwrap();
        assert_eq!(
            tangent_line(&g, &o).unwrap(),
            ProjLine::from_ints(&f, [1, 0, 0]).unwrap()
        );

        let t = tangent_line(&fermat(f), &ProjPoint::from_ints(&f, [0, 1, 1]).unwrap()).unwrap();
        assert_eq!(t, ProjLine::from_ints(&f, [0, 1, -1]).unwrap());

        let nodal = LegendreCubic::new(f.zero()).poly();
        assert_eq!(tangent_line(&nodal, &o), Err(Error::SingularPoint));
        assert_eq!(
            tangent_line(&nodal, &ProjPoint::from_ints(&f, [1, 1, 1]).unwrap()),
            Err(Error::NotOnCurve)
        );
    }

    #[test]
    fn tangent_is_the_unique_line_of_contact() {
        let f = fl(13);
        let cubic = LegendreCubic::new(f.elem(5)).poly();
        for p in all_points(&f).into_iter().filter(|p| cubic.vanishes_at(p)) {
            let t = tangent_line(&cubic, &p).unwrap();
            for l in all_lines(&f).into_iter().filter(|l| l.contains(&p)) {
                let (a, b) = l.base_points();
                let q = if a == p { b } else { a };
                let mult = cubic.multiplicity_on_line(&p, &q);
                assert_eq!(mult >= 2, l == t, "p = {p}, line = {l}");
            }
        }
    }

    #[test]
    fn hessian_of_fermat_is_multiple_of_xyz() {
        let f = fl(13);
        let h = fermat(f).hessian();
        // ∂² = diag(6X, 6Y, -6Z) -> -216 XYZ
        let xyz = HomPoly::from_int_terms(f, 3, &[([1, 1, 1], 1)]).unwrap();
        assert_eq!(h, xyz.scale(f.elem(-216)));
    }

    #[test]
    fn hessian_of_equianharmonic_legendre_factors() {
        for p in [7u64, 13, 19, 31, 37, 43] {
            let f = fl(p);
            for c in f.elements().filter(|&c| (c * c - c + f.one()).is_zero()) {
                let h = LegendreCubic::new(c).poly().hessian();
                let three = f.elem(3);
                let a = (c + f.one()) / three;
                let r = (f.one() - f.elem(2) * c) / three;
                let vert = HomPoly::linear(f, [f.one(), f.zero(), -a]);
                let horiz = HomPoly::from_terms(f, 2, [([0, 2, 0], f.one()), ([0, 0, 2], -r)]).unwrap();
                let prod = vert.mul(&horiz);
                let ratio = h.coeff([1, 2, 0]) / prod.coeff([1, 2, 0]);
                assert_eq!(h, prod.scale(ratio), "p={p} c={c}");
            }
        }
    }

    #[test]
    fn hessian_of_triangle_vanishes_at_vertices() {
        let f = fl(13);
        let ls = [[1, 2, 3], [0, 1, 5], [4, 0, 1]].map(|c| ProjLine::from_ints(&f, c).unwrap());
        let tri = HomPoly::from_line(f, &ls[0])
            .mul(&HomPoly::from_line(f, &ls[1]))
            .mul(&HomPoly::from_line(f, &ls[2]));
        let h = tri.hessian();
        assert_eq!(h.degree(), 3);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let v = crate::plane::meet(&ls[i], &ls[j]).unwrap();
            assert!(h.vanishes_at(&v));
        }
        // the Hessian of a triangle is a multiple of the triangle itself
        let ratio = h.terms().iter().next().map(|(e, &c)| c / tri.coeff(*e)).unwrap();
        assert_eq!(h, tri.scale(ratio));
    }

    #[test]
    fn hessian_covariance() {
        let f = fl(13);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let polys = [fermat(f), LegendreCubic::new(f.elem(5)).poly()];
        let mut tested = 0;
        while tested < 10 {
            let m = [[0; 3]; 3].map(|r: [i64; 3]| r.map(|_| rng.gen_range(0..13)));
            let Ok(proj) = Projectivity::from_ints(&f, m) else {
                continue;
            };
            for poly in &polys {
                let lhs = poly.compose(&proj).hessian();
                let d = proj.determinant();
                let rhs = poly.hessian().compose(&proj).scale(d * d);
                assert_eq!(lhs, rhs);
            }
            tested += 1;
        }
    }

    #[test]
    fn corners_examples() {
        let f = fl(13);
        // c = 4: (c+1)/3 = 5·9 = 45 = 6, (1-2c)/3 = -7/3 = 2, a non-residue mod 13
        assert!((f.elem(16) - f.elem(4) + f.one()).is_zero());
        assert_eq!(corners_legendre(f.elem(4)), Err(Error::NoSquareRoot(2)));
        assert_eq!(corners_legendre(f.elem(2)), Err(Error::NotEquianharmonic));

        let mut found = 0;
        for p in [7u64, 19, 31, 37, 43, 61, 67, 73, 79, 97] {
            let f = fl(p);
            for c in f.elements().filter(|&c| (c * c - c + f.one()).is_zero()) {
                let Ok(corners) = corners_legendre(c) else { continue };
                found += 1;
                let h = LegendreCubic::new(c).poly().hessian();
                for q in &corners.points {
                    assert!(h.vanishes_at(q));
                    assert!(!LegendreCubic::new(c).poly().vanishes_at(q));
                }
                // each pair of corners spans a line contained in the Hessian
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    let l = join(&corners.points[i], &corners.points[j]).unwrap();
                    assert!(h.contains_line(&l));
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn j_invariant_examples() {
        let f = fl(13);
        for c in f.elements().filter(|&c| (c * c - c + f.one()).is_zero()) {
            assert_eq!(j_invariant(c), PValue::finite(f.zero()));
        }
        assert_eq!(j_invariant(f.zero()), PValue::infinity(&f));
        let f = fl(10007);
        assert_eq!(j_invariant(f.elem(-1)), PValue::finite(f.elem(1728)));
    }

    #[test]
    fn j_invariant_constant_on_anharmonic_orbit_mod_13() {
        let f = fl(13);
        for c in f.elements().filter(|c| !c.is_zero() && !c.is_one()) {
            let j = j_invariant(c);
            for img in crate::plane::anharmonic_images(PValue::finite(c)) {
                assert_eq!(j_invariant(img.as_scalar().unwrap()), j);
            }
        }
    }

    #[test]
    fn j_from_tangents_matches_legendre_formula() {
        for p in [13u64, 31, 101] {
            let f = fl(p);
            for c in f.elements().filter(|c| !c.is_zero() && !c.is_one()) {
                let curve = LegendreCubic::new(c).poly();
                let expect = j_invariant(c);
                // from the flex at infinity and from every affine point
                for q in all_points(&f).into_iter().filter(|q| curve.vanishes_at(q)).take(4) {
                    assert_eq!(j_from_tangents_at(&curve, &q), Some(expect), "p={p} c={c} q={q}");
                }
            }
        }
    }

    #[test]
    fn pencil_check_on_hesse_base_locus() {
        let f = fl(13);
        let g1 = HomPoly::from_int_terms(f, 3, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]).unwrap();
        let g2 = HomPoly::from_int_terms(f, 3, &[([1, 1, 1], 1)]).unwrap();
        let e = |v| f.elem(v);
        let report = pencil_crossratio_check(&g1, &g2, e(2), e(3), e(5), e(7)).unwrap();
        assert_eq!(report.values.len(), 9);
        assert!(report.passed());
        assert_eq!(report.expected, PValue::finite(e(2) * e(7) / (e(5) * e(3))));
        // scaling (α, β) leaves κ unchanged
        let scaled = pencil_crossratio_check(&g1, &g2, e(8), e(12), e(5), e(7)).unwrap();
        assert_eq!(scaled.expected, report.expected);
        assert_eq!(scaled.values, report.values);
        // coincident members
        assert!(matches!(
            pencil_crossratio_check(&g1, &g2, e(2), e(3), e(2), e(3)),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            pencil_crossratio_check(&g1, &g2, e(2), e(3), e(4), e(6)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn pencil_check_rejects_wrong_base_locus() {
        let f = fl(11);
        // 11 ≢ 1 mod 3: X³+Y³+Z³ meets XYZ = 0 in fewer than 9 rational points
        let g1 = HomPoly::from_int_terms(f, 3, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]).unwrap();
        let g2 = HomPoly::from_int_terms(f, 3, &[([1, 1, 1], 1)]).unwrap();
        let e = |v| f.elem(v);
        assert!(matches!(
            pencil_crossratio_check(&g1, &g2, e(1), e(2), e(3), e(4)),
            Err(Error::BaseLocusSize { expected: 9, .. })
        ));
    }

    #[test]
    fn j0_identities_random() {
        let f = fl(101);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let [a, b, c, m] = [0; 4].map(|_| f.elem(rng.gen_range(0..101)));
            let r = cubic_j0_identities(a, b, c, m);
            assert!(r.holds(), "a={a} b={b} c={c} m={m}");
            // f and g have m-degree 2 and 3
            assert!(r.f.coeffs().len() <= 3 && r.g.coeffs().len() <= 4);
        }
    }

    #[test]
    fn j0_identities_vanish_at_corner() {
        let mut hits = 0;
        for p in [7u64, 19, 31, 37, 43, 61, 67, 73, 79, 97, 103] {
            let f = fl(p);
            for c in f.elements().filter(|&c| (c * c - c + f.one()).is_zero()) {
                let three = f.elem(3);
                let a = (c + f.one()) / three;
                let Some((b, _)) = f.sqrt((f.one() - f.elem(2) * c) / three) else {
                    continue;
                };
                let r = cubic_j0_identities(a, b, c, f.elem(17));
                assert!(r.betas.iter().all(|x| x.is_zero()), "p={p}");
                assert!(r.holds());
                hits += 1;
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn j0_identity_rhs_vanishes_on_curve() {
        let f = fl(101);
        let c = f.elem(7);
        let curve = LegendreCubic::new(c).poly();
        for q in all_points(&f).into_iter().filter(|q| curve.vanishes_at(q)).take(10) {
            let Some((a, b)) = q.to_affine() else { continue };
            for m in 0..10 {
                let r = cubic_j0_identities(a, b, c, f.elem(m));
                assert!(r.rhs1.is_zero() && r.lhs1.is_zero());
            }
        }
    }

    #[test]
    fn singular_point_examples() {
        let f = fl(13);
        assert!(singular_points(&LegendreCubic::new(f.elem(5)).poly()).is_empty());
        let nodal = LegendreCubic::new(f.zero()).poly();
        let sing = singular_points(&nodal);
        assert_eq!(sing, vec![ProjPoint::from_ints(&f, [0, 0, 1]).unwrap()]);
        assert_eq!(double_point_kind(&nodal, &sing[0]), DoublePoint::Node);
        let cusp = HomPoly::from_int_terms(f, 3, &[([0, 2, 1], 1), ([3, 0, 0], -1)]).unwrap();
        let sing = singular_points(&cusp);
        assert_eq!(sing, vec![ProjPoint::from_ints(&f, [0, 0, 1]).unwrap()]);
        assert_eq!(double_point_kind(&cusp, &sing[0]), DoublePoint::Cusp);
    }

    #[test]
    fn pencil_members_vanish_on_base_points() {
        let f = fl(13);
        let g1 = fermat(f);
        let g2 = HomPoly::from_int_terms(f, 3, &[([1, 1, 1], 1)]).unwrap();
        let base = common_points(&g1, &g2);
        for a in 0..13 {
            for b in 0..13 {
                let member = g1.scale(f.elem(a)).add(&g2.scale(f.elem(b)));
                assert!(base.iter().all(|p| member.vanishes_at(p)));
            }
        }
    }
}
