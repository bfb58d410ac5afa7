//! Builders for the families of dual nets.

use crate::cubic_group::CurveGroup;
use crate::curves::HomPoly;
use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::nets::DualNet;
use crate::plane::{all_lines, ProjLine, ProjPoint};

fn point(coords: [Scalar; 3]) -> ProjPoint {
    ProjPoint::new(coords).expect("constructor points are nonzero")
}

/// `Λ1 = {(1, 0, ξⁱ)}`, `Λ2 = {(0, 1, cξʲ)}`, `Λ3 = {(cξᵏ, -1, 0)}`: the lines
/// through the `i`-th and `j`-th points meet `Λ3` at `k = j - i`.
pub fn triangular_cyclic(n: usize, p: u64, c: Scalar) -> Result<DualNet> {
    let f = Field::new(p)?;
    if c.modulus() != p || c.is_zero() {
        return Err(Error::InvalidParameter("c must be a nonzero element of GF(p)".into()));
    }
    let xi = f.nth_root_of_unity(n as u64)?;
    let (zero, one) = (f.zero(), f.one());
    let pw = |i: usize| xi.pow(i as u64);
    let comps = vec![
        (0..n).map(|i| point([one, zero, pw(i)])).collect(),
        (0..n).map(|j| point([zero, one, c * pw(j)])).collect(),
        (0..n).map(|k| point([c * pw(k), -one, zero])).collect(),
    ];
    DualNet::verify(f, comps)
}

/// Affine points `(a, 0)`, `(b, 1)`, `(c, 2)` for all `a, b, c` in GF(p); a net of
/// order `p` whose lines are `c = 2b - a`. The carrier lines meet at `(1, 0, 0)`.
pub fn pencil_char_p(p: u64) -> Result<DualNet> {
    let f = Field::new(p)?;
    let comps = (0..3)
        .map(|y| f.elements().map(|x| ProjPoint::affine(x, f.elem(y))).collect())
        .collect();
    DualNet::verify_with(f, comps, true)
}

/// `Λ2 = {(cξⁱ, c⁻¹ξ⁻ⁱ, 1)}`, `Λ3 = -Λ2` on the conic `XY = Z²` and
/// `Λ1 = {(1, c⁻²ξⁱ, 0)}` on the line at infinity.
pub fn conic_line(n: usize, p: u64, c: Scalar) -> Result<DualNet> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidParameter("n must be odd".into()));
    }
    let f = Field::new(p)?;
    if c.modulus() != p || c.is_zero() {
        return Err(Error::InvalidParameter("c must be a nonzero element of GF(p)".into()));
    }
    let xi = f.nth_root_of_unity(n as u64)?;
    let xi_inv = xi.inv().unwrap();
    let c_inv = c.inv().unwrap();
    let (zero, one) = (f.zero(), f.one());
    let pw = |x: Scalar, i: usize| x.pow(i as u64);
    let comps = vec![
        (0..n).map(|i| point([one, c_inv * c_inv * pw(xi, i), zero])).collect(),
        (0..n)
            .map(|i| point([c * pw(xi, i), c_inv * pw(xi_inv, i), one]))
            .collect(),
        (0..n)
            .map(|i| point([-c * pw(xi, i), -c_inv * pw(xi_inv, i), one]))
            .collect(),
    ];
    DualNet::verify(f, comps)
}

/// Coset net `(H + P, H + u(P), H + u²(P))` on `X³ + Y³ = Z³` for the first
/// u-invariant cyclic subgroup `H` of order `n` and the least usable `P`.
/// Returns the net and its expected center `(0, 0, 1)`.
pub fn algebraic_fermat(n: usize, p: u64) -> Result<(DualNet, ProjPoint)> {
    let f = Field::new(p)?;
    let g = CurveGroup::new(f)?;
    for (_, h) in g.invariant_subgroups(n) {
        for base in g.points() {
            let Ok(comps) = g.coset_net(&h, base) else { continue };
            if let Ok(net) = DualNet::verify(f, comps.to_vec()) {
                return Ok((net, ProjPoint::from_ints(&f, [0, 0, 1])?));
            }
        }
    }
    Err(Error::NotFound(format!(
        "no u-invariant subgroup of order {n} with a usable base point over GF({p})"
    )))
}

/// Tetrahedron vertices `E1..E4` and the edges `a1 = E2E3, a2 = E1E3, a3 = E1E2,
/// b1 = E1E4, b2 = E2E4, b3 = E3E4`, each as a pair of vertex indices.
const EDGES: [(usize, usize); 6] = [(1, 2), (0, 2), (0, 1), (0, 3), (1, 3), (2, 3)];

/// Faces `(Γ1,Γ2,Γ3), (Γ1,Δ2,Δ3), (Δ1,Γ2,Δ3), (Δ1,Δ2,Γ3)` as edge indices.
const FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 4, 5], [3, 1, 5], [3, 4, 2]];

/// Order `2m` net with `Λi = Γi ∪ Δi`, `Γi` on edge `ai` and `Δi` on edge `bi` of
/// the tetrahedron `(1,0,0), (0,1,0), (0,0,1), (1,1,1)`. Each edge carries a coset
/// of the `m`-th roots of unity in the parametrization `Ea + t·Eb`; the coset
/// representatives are found by search, checking each face with the verifier.
pub fn tetrahedron(m: usize, p: u64) -> Result<DualNet> {
    if m < 2 {
        return Err(Error::InvalidParameter("m must be at least 2".into()));
    }
    let f = Field::new(p)?;
    let mu = f.roots_of_unity(m as u64)?;
    let reps: Vec<Scalar> = {
        let g = f.generator();
        (0..(p - 1) / m as u64).map(|r| g.pow(r)).collect()
    };
    let vertices = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].map(|c| c.map(|x| f.elem(x)));
    let edge_points = |e: usize, r: Scalar| -> Vec<ProjPoint> {
        let (a, b) = EDGES[e];
        mu.iter()
            .map(|&z| {
                let t = r * z;
                point([0, 1, 2].map(|i| vertices[a][i] + t * vertices[b][i]))
            })
            .collect()
    };
    let face_ok = |sets: &[Vec<ProjPoint>; 6], face: usize| {
        let comps = FACES[face].iter().map(|&e| sets[e].clone()).collect();
        DualNet::verify(f, comps).is_ok()
    };
    let empty: Vec<ProjPoint> = Vec::new();
    let mut sets: [Vec<ProjPoint>; 6] = std::array::from_fn(|_| empty.clone());
    // the frame is fixed up to scaling the first edge, so its representative is 1
    sets[0] = edge_points(0, f.one());
    for &r1 in &reps {
        sets[1] = edge_points(1, r1);
        for &r2 in &reps {
            sets[2] = edge_points(2, r2);
            if !face_ok(&sets, 0) {
                continue;
            }
            for &r4 in &reps {
                sets[4] = edge_points(4, r4);
                for &r5 in &reps {
                    sets[5] = edge_points(5, r5);
                    if !face_ok(&sets, 1) {
                        continue;
                    }
                    for &r3 in &reps {
                        sets[3] = edge_points(3, r3);
                        if !face_ok(&sets, 2) || !face_ok(&sets, 3) {
                            continue;
                        }
                        let comps = (0..3)
                            .map(|i| sets[i].iter().chain(sets[i + 3].iter()).copied().collect())
                            .collect();
                        if let Ok(net) = DualNet::verify(f, comps) {
                            return Ok(net);
                        }
                    }
                }
            }
        }
    }
    Err(Error::NotFound(format!(
        "no tetrahedron realization of order {} over GF({p})",
        2 * m
    )))
}

/// Lines of PG(2, p) contained in the curve.
pub fn lines_on(curve: &HomPoly) -> Vec<ProjLine> {
    all_lines(&curve.field())
        .into_iter()
        .filter(|l| curve.contains_line(l))
        .collect()
}

/// The four triangles of the Hesse pencil `λ(X³+Y³+Z³) + μXYZ`, each dualized
/// to three points: a dual 4-net of order 3.
pub fn hesse_4net(p: u64) -> Result<DualNet> {
    let f = Field::new(p)?;
    f.cube_root_of_unity()?;
    let sum = HomPoly::from_int_terms(f, 3, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)])?;
    let xyz = HomPoly::from_int_terms(f, 3, &[([1, 1, 1], 1)])?;
    let members = std::iter::once((f.zero(), f.one())).chain(f.elements().map(|mu| (f.one(), mu)));
    let mut comps = Vec::new();
    for (lambda, mu) in members {
        let curve = sum.scale(lambda).add(&xyz.scale(mu));
        let lines = lines_on(&curve);
        if lines.len() == 3 {
            comps.push(lines.iter().map(|l| point(l.coords())).collect::<Vec<_>>());
        }
    }
    if comps.len() != 4 {
        return Err(Error::NotFound(format!(
            "found {} triangles in the Hesse pencil",
            comps.len()
        )));
    }
    DualNet::verify(f, comps)
}
