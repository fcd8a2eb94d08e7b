//! Cross-cutting property tests tying the modules together.

mod common;

use common::*;
use horosphere::fan::{mu_of, DivisorialFan};
use horosphere::geometry::{
    canonical_divisor, class_group, is_cartier, is_log_terminal, is_q_gorenstein, is_smooth,
    has_rational_singularities, pl_to_divisor, CartierStatus, SmoothStatus,
};
use horosphere::lattice::{dot, dot_ir, int, unimodular_inverse, Int, IntMatrix, Rat};
use horosphere::pdiv::ColoredPolyhedralDivisor;
use horosphere::polyhedra::{Cone, Polyhedron};
use horosphere::rootdata::HorosphericalDatum;
use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Random unimodular matrix: a short product of elementary transvections.
fn random_unimodular(rng: &mut impl Rng, n: usize) -> IntMatrix {
    let mut w = IntMatrix::identity(n);
    for _ in 0..8 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let mut rows = vec![vec![Int::zero(); n]; n];
        for (d, row) in rows.iter_mut().enumerate() {
            row[d] = Int::one();
        }
        rows[i][j] = int(rng.gen_range(-2..=2));
        if i != j {
            rows[i][i] = Int::one();
        }
        w = w.mul(&IntMatrix::from_rows(n, &rows));
    }
    w
}

/// Applies a unimodular change of N-coordinates to a colorless divisor.
fn transform_divisor(d: &ColoredPolyhedralDivisor, w: &IntMatrix) -> ColoredPolyhedralDivisor {
    let n = d.rank();
    let rays: Vec<Vec<Int>> = d.tail().rays().iter().map(|r| w.mul_vec(r)).collect();
    let tail = Cone::from_rays(n, &rays);
    let mut coeffs = BTreeMap::new();
    for (z, p) in d.nontrivial_coeffs() {
        let verts: Vec<Vec<Rat>> = p
            .vertices()
            .iter()
            .map(|v| (0..n).map(|i| dot_ir(w.row(i), v)).collect())
            .collect();
        coeffs.insert(z.clone(), Polyhedron::new(n, &verts, &tail).unwrap());
    }
    ColoredPolyhedralDivisor::new(d.curve.clone(), tail, coeffs, vec![]).unwrap()
}

/// Class-group invariants do not depend on the chosen N-coordinates.
#[test]
fn class_group_is_invariant_under_unimodular_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for _ in 0..25 {
        let d = if rng.gen_bool(0.5) {
            random_affine_divisor(&mut rng, 4)
        } else {
            random_p1_divisor(&mut rng, 4)
        };
        let n = d.rank();
        let datum = torus_datum(n);
        let fan = DivisorialFan::new(vec![d.clone()]).unwrap();
        let cl = class_group(&datum, &fan).unwrap();

        let w = random_unimodular(&mut rng, n);
        // M-coordinates transform by the inverse so pairings are preserved.
        let m_basis = IntMatrix::identity(n).mul(&unimodular_inverse(&w));
        let datum_w = HorosphericalDatum::new(
            horosphere::rootdata::RootDatum::new(&[], n).unwrap(),
            m_basis,
            [].into(),
        )
        .unwrap();
        let fan_w = DivisorialFan::new(vec![transform_divisor(&d, &w)]).unwrap();
        let cl_w = class_group(&datum_w, &fan_w).unwrap();
        assert_eq!(cl.free_rank, cl_w.free_rank);
        assert_eq!(cl.invariant_factors, cl_w.invariant_factors);
    }
}

/// The canonical divisor of the quadric-cone example round-trips through
/// the Cartier inversion.
#[test]
fn canonical_cartier_roundtrip() {
    let datum = sl3_datum();
    let fan = sl3_fan();
    let k = canonical_divisor(&datum, &fan, None).unwrap();
    match is_cartier(&datum, &fan, &k.divisor).unwrap() {
        CartierStatus::Cartier(theta) => {
            assert_eq!(pl_to_divisor(&datum, &fan, &theta).unwrap(), k.divisor);
        }
        CartierStatus::NotCartier(why) => panic!("canonical not Cartier: {why}"),
    }
}

/// Resolving any proper divisor yields a smooth fan, which is Gorenstein of
/// index one and has rational singularities on every chart.
#[test]
fn smooth_resolutions_have_index_one_and_rational_charts() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for _ in 0..15 {
        let d = random_affine_divisor(&mut rng, 3);
        let datum = torus_datum(d.rank());
        let fan = DivisorialFan::new(vec![d]).unwrap();
        let res = fan.resolve().unwrap();
        assert_eq!(is_smooth(&datum, &res.fan).unwrap(), SmoothStatus::Smooth);
        // Cartier conditions are local, so the index is checked per chart.
        for item in &res.fan.items {
            let chart = DivisorialFan::new(vec![item.clone()]).unwrap();
            let qg = is_q_gorenstein(&datum, &chart).unwrap().expect("smooth chart is Gorenstein");
            assert!(qg.index.is_one());
            assert!(has_rational_singularities(item).unwrap());
        }
    }
}

/// Discrepancy sanity: for an affine Q-Gorenstein divisor, every
/// exceptional coefficient of K_res - pullback(K_X) exceeds -1 exactly when
/// the divisor is log-terminal.
#[test]
fn discrepancies_match_log_terminality() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut checked = 0;
    for _ in 0..40 {
        let d = random_affine_divisor(&mut rng, 4);
        let datum = torus_datum(d.rank());
        let fan = DivisorialFan::new(vec![d.clone()]).unwrap();
        let Some(qg) = is_q_gorenstein(&datum, &fan).unwrap() else { continue };
        let lt = is_log_terminal(&datum, &d).unwrap();
        let res = fan.resolve().unwrap();
        let k_res = canonical_divisor(&datum, &res.fan, Some(&qg.k_c)).unwrap();
        let theta = &qg.theta.items[0];
        let dd = Rat::from(qg.index.clone());

        let mut min_discrepancy: Option<Rat> = None;
        let mut record = |disc: Rat| {
            min_discrepancy = Some(match min_discrepancy.take() {
                Some(cur) if cur <= disc => cur,
                _ => disc,
            });
        };
        for rho in &res.exceptional_rays {
            // K_res coefficient of D_rho is -1; the pullback evaluates
            // theta linearly on the ray.
            let pulled = Rat::from(dot(&theta.m, rho)) / &dd;
            record(-Rat::one() - pulled);
        }
        for vd in &res.exceptional_vertices {
            let (m_z, gamma) = theta
                .at
                .get(&vd.point)
                .cloned()
                .unwrap_or_else(|| (theta.m.clone(), Int::zero()));
            let mu = Rat::from(vd.mu.clone());
            let b_z = qg.k_c.coefficient(&vd.point);
            let k_coeff = &mu * &b_z + &mu - Rat::one();
            let pulled = (&mu * dot_ir(&m_z, &vd.v) + &mu * Rat::from(gamma)) / &dd;
            record(k_coeff - pulled);
        }
        let _ = &k_res; // canonical on the resolution must exist
        if let Some(min) = min_discrepancy {
            checked += 1;
            assert_eq!(min > -Rat::one(), lt, "min discrepancy {min} vs log-terminal {lt}");
        }
    }
    assert!(checked >= 5, "too few samples with exceptional divisors: {checked}");
}

/// mu parameters of vertices are the denominators after clearing: mu(v) * v
/// is a primitive-free lattice point and mu is minimal.
#[test]
fn mu_is_the_minimal_clearing_denominator() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let v: Vec<Rat> = (0..n)
            .map(|_| Rat::new(int(rng.gen_range(-12..=12)), int(rng.gen_range(1..=9))))
            .collect();
        let mu = mu_of(&v);
        assert!(mu.is_positive());
        for x in &v {
            assert!((x * Rat::from(mu.clone())).is_integer());
        }
        if mu > Int::one() {
            // mu is the lcm of the denominators, so mu - 1 cannot clear
            // every coordinate.
            let smaller = &mu - Int::one();
            assert!(v.iter().any(|x| !(x * Rat::from(smaller.clone())).is_integer()));
        }
    }
}

/// Resolved fans survive the JSON round trip through problem files.
#[test]
fn resolved_fan_round_trips_through_json() {
    use horosphere::cli::problem::*;
    let fan = sl3_fan();
    let res = fan.resolve().unwrap();
    let datum = torus_datum(1);
    let file = ProblemFile {
        schema_version: 1,
        group: GroupSpec { factors: vec![], torus_rank: 1 },
        lattice: LatticeSpec { m_basis: vec![vec![1]] },
        i_set: vec![],
        curve: CurveSpec { kind: CurveKindSpec::Name("P1".into()) },
        fan: fan_to_specs(&res.fan),
        options: OptionsSpec::default(),
    };
    let text = file.to_json().unwrap();
    let reparsed: ProblemFile = serde_json::from_str(&text).unwrap();
    let rebuilt = reparsed.fan(&datum).unwrap();
    assert_eq!(rebuilt, res.fan);
}
