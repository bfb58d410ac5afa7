use std::collections::BTreeSet;

use knets::cli::NetDocument;
use knets::constructors::{algebraic_fermat, conic_line, hesse_4net, pencil_char_p, tetrahedron, triangular_cyclic};
use knets::cubic_group::CurveGroup;
use knets::gf::{is_prime, Field};
use knets::latin::{GroupTable, LatinSquare};
use knets::nets::DualNet;
use knets::plane::{all_points, perspectivity, ProjLine, ProjPoint, Projectivity};
use proptest::prelude::*;

/// `(n, p)` with `n | p - 1`, `3 <= n < p`.
fn order_and_prime(odd: bool) -> impl Strategy<Value = (usize, u64)> {
    let pairs: Vec<(usize, u64)> = (5..50u64)
        .filter(|&p| is_prime(p))
        .flat_map(|p| {
            (3..p as usize)
                .filter(move |&n| (p - 1) % n as u64 == 0)
                .map(move |n| (n, p))
        })
        .filter(|&(n, _)| !odd || n % 2 == 1)
        .collect();
    proptest::sample::select(pairs)
}

fn random_projectivity(f: &Field, m: [i64; 9]) -> Option<Projectivity> {
    Projectivity::from_ints(f, [[m[0], m[1], m[2]], [m[3], m[4], m[5]], [m[6], m[7], m[8]]]).ok()
}

fn image(net: &DualNet, u: &Projectivity) -> Vec<Vec<ProjPoint>> {
    net.components()
        .iter()
        .map(|c| c.iter().map(|q| u.apply(q)).collect())
        .collect()
}

fn round_trip(net: &DualNet) {
    let doc = NetDocument::from_net(net, None);
    let parsed = NetDocument::from_json(&doc.to_json()).unwrap();
    assert_eq!(parsed, doc);
    let back = parsed.to_net().unwrap();
    assert_eq!(NetDocument::from_net(&back, None), doc);
    for (a, b) in back.components().iter().zip(net.components()) {
        assert_eq!(a.iter().collect::<BTreeSet<_>>(), b.iter().collect::<BTreeSet<_>>());
    }
}

/// Net consequences that hold for every verified 3-net.
fn net_laws(net: &DualNet) {
    let n = net.order();
    assert_eq!(net.net_lines().len(), n * n);
    let l = LatinSquare::from_net(net).unwrap();
    assert_eq!(l.order(), n);
    let centers = net.find_centers();
    for t in &centers {
        net.constant_cross_ratio(t).unwrap();
    }
    if !centers.is_empty() {
        assert!(l.transversal_search().is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triangular_nets((n, p) in order_and_prime(false), c in 1i64..1000) {
        let f = Field::new(p).unwrap();
        let c = f.elem(c);
        prop_assume!(!c.is_zero());
        let net = triangular_cyclic(n, p, c).unwrap();
        net_laws(&net);
        round_trip(&net);
        prop_assert!(net.find_centers_sweep().is_empty());
        prop_assert_eq!(net.classify().tag(), "triangular");
    }

    #[test]
    fn conic_line_nets((n, p) in order_and_prime(true), c in 1i64..1000) {
        let f = Field::new(p).unwrap();
        let c = f.elem(c);
        prop_assume!(!c.is_zero());
        let net = conic_line(n, p, c).unwrap();
        net_laws(&net);
        round_trip(&net);
        let t = ProjPoint::from_ints(&f, [0, 0, 1]).unwrap();
        let kappa = net.constant_cross_ratio(&t).unwrap().as_scalar().unwrap();
        let axis = ProjLine::from_ints(&f, [0, 0, 1]).unwrap();
        prop_assert!(net.maps_component(&perspectivity(&t, &axis, kappa).unwrap(), 1, 2));
    }

    /// A projective image of a net is a net with the image centers and the same constants.
    #[test]
    fn nets_are_projectively_invariant((n, p) in order_and_prime(true), m in proptest::array::uniform9(-50i64..50)) {
        let f = Field::new(p).unwrap();
        let u = random_projectivity(&f, m);
        prop_assume!(u.is_some());
        let u = u.unwrap();
        let net = conic_line(n, p, f.one()).unwrap();
        let moved = DualNet::verify(f, image(&net, &u)).unwrap();
        let t = ProjPoint::from_ints(&f, [0, 0, 1]).unwrap();
        prop_assert!(moved.is_perspective_center(&u.apply(&t)));
        prop_assert_eq!(moved.constant_cross_ratio(&u.apply(&t)).unwrap(), net.constant_cross_ratio(&t).unwrap());
        prop_assert_eq!(moved.classify().tag(), "conic-line");
    }

    /// Moving one point anywhere off the net lines breaks the net.
    #[test]
    fn single_point_moves_are_rejected((n, p) in order_and_prime(false), comp in 0usize..3, idx in 0usize..64, pick in 0usize..10_000) {
        let f = Field::new(p).unwrap();
        let net = triangular_cyclic(n, p, f.one()).unwrap();
        let lines = net.net_lines();
        let free: Vec<ProjPoint> = all_points(&f)
            .into_iter()
            .filter(|q| !lines.iter().any(|l| l.contains(q)))
            .collect();
        prop_assume!(!free.is_empty());
        let mut comps = net.components().to_vec();
        comps[comp][idx % n] = free[pick % free.len()];
        prop_assert!(DualNet::verify(f, comps).is_err());
    }

    #[test]
    fn coordinatization_is_isotopy_invariant(
        k in 0usize..6,
        r in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
        c in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
        s in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let z2 = GroupTable::cyclic(2);
        let groups = [
            GroupTable::cyclic(8),
            GroupTable::dihedral(4),
            GroupTable::quaternion(),
            GroupTable::direct_product(&z2, &GroupTable::cyclic(4)),
            GroupTable::direct_product(&z2, &GroupTable::direct_product(&z2, &z2)),
            GroupTable::cyclic(8),
        ];
        let g = &groups[k];
        let l = LatinSquare::new(g.table().to_vec()).unwrap().isotope(&r, &c, &s);
        let h = l.is_group_coordinatizable().unwrap();
        prop_assert!(h.is_isomorphic(g));
    }

    #[test]
    fn curve_group_commutes(p in proptest::sample::select(vec![7u64, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97]), a in 0usize..10_000, b in 0usize..10_000) {
        let g = CurveGroup::new(Field::new(p).unwrap()).unwrap();
        let (x, y) = (g.points()[a % g.len()], g.points()[b % g.len()]);
        prop_assert_eq!(g.add(&x, &y), g.add(&y, &x));
        prop_assert_eq!(g.sub(&g.add(&x, &y), &y), x);
    }
}

#[test]
fn constructor_outputs_round_trip_and_obey_the_net_laws() {
    let f19 = Field::new(19).unwrap();
    let nets = [
        pencil_char_p(5).unwrap(),
        pencil_char_p(7).unwrap(),
        algebraic_fermat(3, 19).unwrap().0,
        algebraic_fermat(7, 61).unwrap().0,
        tetrahedron(2, 13).unwrap(),
        tetrahedron(3, 19).unwrap(),
        conic_line(9, 19, f19.elem(4)).unwrap(),
    ];
    for net in &nets {
        net_laws(net);
        let doc = NetDocument::from_net(net, None);
        assert_eq!(NetDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
    let hesse = hesse_4net(13).unwrap();
    let doc = NetDocument::from_net(&hesse, None);
    assert_eq!(NetDocument::from_net(&doc.to_net().unwrap(), None), doc);
    for d in 0..4 {
        net_laws(&hesse.derived_net(d).unwrap());
    }
}

#[test]
fn coset_net_centers_are_corners() {
    for (n, p) in [(3, 19), (3, 31), (7, 61)] {
        let Ok((net, _)) = algebraic_fermat(n, p) else { continue };
        let f = net.field();
        let corners = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|c| ProjPoint::from_ints(&f, c).unwrap());
        let centers = net.find_centers_sweep();
        assert!(!centers.is_empty() && centers.len() <= 3);
        assert!(centers.iter().all(|c| corners.contains(c)));
    }
    assert!(is_prime(61));
}
