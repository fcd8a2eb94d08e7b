//! Shared fixtures and random generators for the integration suites.

#![allow(dead_code)]

use horosphere::fan::DivisorialFan;
use horosphere::lattice::{int, rat, Int, IntMatrix, Rat};
use horosphere::pdiv::{ColoredPolyhedralDivisor, CurveKind, CurveWithOpen, Point};
use horosphere::polyhedra::{Cone, Polyhedron};
use horosphere::rootdata::{HorosphericalDatum, RootDatum, SimpleType};
use rand::Rng;
use std::collections::BTreeMap;

/// G = SL3, I = {alpha2}, M = Z omega1 (rank one).
pub fn sl3_datum() -> HorosphericalDatum {
    let rd = RootDatum::new(&[(SimpleType::A, 2)], 0).unwrap();
    let m = IntMatrix::from_i64(&[&[1, 0]]);
    HorosphericalDatum::new(rd, m, [1].into()).unwrap()
}

/// G = SL2, I empty, M = Z omega (rank one).
pub fn sl2_datum() -> HorosphericalDatum {
    let rd = RootDatum::new(&[(SimpleType::A, 1)], 0).unwrap();
    let m = IntMatrix::from_i64(&[&[1]]);
    HorosphericalDatum::new(rd, m, [].into()).unwrap()
}

/// G a torus of the given rank: no simple roots, no colors.
pub fn torus_datum(rank: usize) -> HorosphericalDatum {
    let rd = RootDatum::new(&[], rank).unwrap();
    HorosphericalDatum::new(rd, IntMatrix::identity(rank), [].into()).unwrap()
}

/// The quadric-cone item: sigma = Q+, Delta_0 = [1/2, inf) on the affine
/// line, no colors.
pub fn sl3_item() -> ColoredPolyhedralDivisor {
    let sigma = Cone::from_rays(1, &[vec![int(1)]]);
    let delta0 = Polyhedron::new(1, &[vec![rat(1, 2)]], &sigma).unwrap();
    ColoredPolyhedralDivisor::new(
        CurveWithOpen::affine_line(),
        sigma,
        [(Point::zero(), delta0)].into(),
        vec![],
    )
    .unwrap()
}

pub fn sl3_fan() -> DivisorialFan {
    DivisorialFan::new(vec![sl3_item()]).unwrap()
}

/// Trivial divisor with tail Q+ on the affine line, no colors.
pub fn sl2_trivial_item() -> ColoredPolyhedralDivisor {
    let sigma = Cone::from_rays(1, &[vec![int(1)]]);
    ColoredPolyhedralDivisor::trivial(CurveWithOpen::affine_line(), sigma, vec![]).unwrap()
}

/// Single-vertex divisor over P1 with sigma = Q+ and prescribed vertex
/// denominators at 0, 1, infinity (pattern entries; 1 means integral).
pub fn mu_pattern_item(mus: &[i64]) -> ColoredPolyhedralDivisor {
    let sigma = Cone::from_rays(1, &[vec![int(1)]]);
    let points = [Point::zero(), Point::finite(1, 1), Point::Infinity];
    let mut coeffs = BTreeMap::new();
    for (z, &m) in points.iter().zip(mus) {
        let p = Polyhedron::new(1, &[vec![rat(1, m)]], &sigma).unwrap();
        coeffs.insert(z.clone(), p);
    }
    ColoredPolyhedralDivisor::new(
        CurveWithOpen { kind: CurveKind::P1, removed: [].into() },
        sigma,
        coeffs,
        vec![],
    )
    .unwrap()
}

/// The six-chart colorless fan covering N_Q x P1 for a rank-one torus.
pub fn six_item_fan() -> DivisorialFan {
    let mut items = Vec::new();
    for removed in [Point::Infinity, Point::zero()] {
        let curve = CurveWithOpen { kind: CurveKind::P1, removed: [removed].into() };
        for tail in [
            Cone::from_rays(1, &[vec![int(1)]]),
            Cone::from_rays(1, &[vec![int(-1)]]),
            Cone::zero(1),
        ] {
            items.push(ColoredPolyhedralDivisor::trivial(curve.clone(), tail, vec![]).unwrap());
        }
    }
    DivisorialFan::new(items).unwrap()
}

/// Random proper colorless divisor of rank <= 2 over complete P1: vertex
/// denominators <= `denom_max`, at most four special points, retried until
/// properness holds.
pub fn random_p1_divisor(rng: &mut impl Rng, denom_max: i64) -> ColoredPolyhedralDivisor {
    loop {
        if let Some(d) = try_random_divisor(rng, denom_max, CurveWithOpen::p1()) {
            return d;
        }
    }
}

/// Random proper colorless divisor of rank <= 2 on the affine line.
pub fn random_affine_divisor(rng: &mut impl Rng, denom_max: i64) -> ColoredPolyhedralDivisor {
    loop {
        if let Some(d) = try_random_divisor(rng, denom_max, CurveWithOpen::affine_line()) {
            return d;
        }
    }
}

fn try_random_divisor(
    rng: &mut impl Rng,
    denom_max: i64,
    curve: CurveWithOpen,
) -> Option<ColoredPolyhedralDivisor> {
    let n = rng.gen_range(1..=2);
    let nrays = rng.gen_range(1..=n);
    let rays: Vec<Vec<Int>> = (0..nrays)
        .map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect())
        .collect();
    if rays.iter().any(|r| r.iter().all(|x| x == &int(0))) {
        return None;
    }
    let tail = Cone::from_rays(n, &rays);
    if !tail.is_strongly_convex() {
        return None;
    }
    let all_points = [Point::zero(), Point::finite(1, 1), Point::finite(2, 1), Point::Infinity];
    let npts = rng.gen_range(1..=4);
    let mut coeffs = BTreeMap::new();
    for z in all_points.iter().take(npts) {
        if !curve.contains(z) {
            continue;
        }
        let nv = rng.gen_range(1..=2);
        let verts: Vec<Vec<Rat>> = (0..nv)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let den = rng.gen_range(1..=denom_max);
                        Rat::new(int(rng.gen_range(-2 * denom_max..=2 * denom_max)), int(den))
                    })
                    .collect()
            })
            .collect();
        coeffs.insert(z.clone(), Polyhedron::new(n, &verts, &tail).ok()?);
    }
    let d = ColoredPolyhedralDivisor::new(curve, tail, coeffs, vec![]).ok()?;
    d.is_proper().ok().filter(|p| p.proper).map(|_| d)
}
