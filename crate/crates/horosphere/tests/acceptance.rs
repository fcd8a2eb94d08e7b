//! Acceptance gate: one test per criterion, each ending in a single
//! pass/fail line. Run with `cargo test --test acceptance`.

mod common;

use common::*;
use horosphere::fan::DivisorialFan;
use horosphere::geometry::{
    canonical_divisor, check_colored_cone_smooth, class_group, class_group_tvariety,
    divisor_class, has_rational_singularities, is_cartier, is_log_terminal, is_q_gorenstein,
    is_smooth, pl_to_divisor, rational_brute_oracle, BStableDivisor, CartierStatus, PLFunction,
    PLItem, SmoothStatus,
};
use horosphere::lattice::{int, rat, smith_normal_form, Int, IntMatrix};
use horosphere::pdiv::Point;
use horosphere::polyhedra::Cone;
use horosphere::rootdata::{HorosphericalDatum, RootDatum, SimpleType};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::Instant;

fn pass(n: u32, what: &str) {
    println!("criterion {n}: PASS - {what}");
}

/// Identity plus k in position (i, j): an elementary unimodular matrix.
fn elementary(n: usize, i: usize, j: usize, k: i64) -> IntMatrix {
    let mut rows = vec![vec![Int::zero(); n]; n];
    for (d, row) in rows.iter_mut().enumerate() {
        row[d] = Int::one();
    }
    rows[i][j] += int(k);
    IntMatrix::from_rows(n, &rows)
}

/// SL3 worked example end-to-end through the CLI binary.
#[test]
fn criterion_1_sl3_end_to_end() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sl3_example.json");
    let start = Instant::now();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_horosphere"))
        .args(["analyze", data])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(out.status.success(), "analyze failed: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &report["results"];
    assert_eq!(r["class_group"], "Z + Z/2");
    assert_eq!(r["rational"], true);
    assert_eq!(r["smooth"], false);
    assert_eq!(r["log_terminal"], true);
    assert_eq!(r["gorenstein_index"], 1);
    let k = &r["canonical"];
    assert_eq!(k["rays"], serde_json::json!([{ "coeff": "-1", "ray": [1] }]));
    assert_eq!(k["vertices"], serde_json::json!([{ "coeff": "1", "point": "0", "v": ["1/2"] }]));
    assert_eq!(k["colors"], serde_json::json!([{ "alpha": "alpha1", "coeff": "-3" }]));
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(1, "SL3 example: Cl = Z + Z/2, rational, not smooth, log-terminal, index 1, K_X exact");
}

/// SL2 remark: trivial divisor on the affine line.
#[test]
fn criterion_2_sl2_remark() {
    let datum = sl2_datum();
    let fan = DivisorialFan::new(vec![sl2_trivial_item()]).unwrap();
    let cl_x = class_group(&datum, &fan).unwrap();
    assert_eq!(cl_x.describe(), "Z");
    let cl_y = class_group_tvariety(&sl2_trivial_item()).unwrap();
    assert!(cl_y.is_trivial());
    assert_eq!(is_smooth(&datum, &fan).unwrap(), SmoothStatus::Smooth);
    pass(2, "SL2 trivial item: Cl(X) = Z, Cl(Y) = 0, smooth");
}

/// Box algorithm vs brute-force rationality oracle on random inputs.
#[test]
fn criterion_3_rationality_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for i in 0..100 {
        let d = random_p1_divisor(&mut rng, 6);
        let fast = has_rational_singularities(&d).unwrap();
        let brute = rational_brute_oracle(&d, 50).unwrap();
        assert_eq!(fast, brute, "disagreement on sample {i}: {d:?}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    pass(3, "box algorithm matches brute-force oracle on 100 random divisors");
}

/// Smoothness kernel table plus resolve -> smooth on random inputs.
#[test]
fn criterion_4_smoothness_kernel() {
    let start = Instant::now();
    // Hand-verified table.
    assert!(check_colored_cone_smooth(&sl3_datum(), &Cone::zero(1), &[]).unwrap());
    let q_plus = Cone::from_rays(1, &[vec![int(1)]]);
    assert!(check_colored_cone_smooth(&sl2_datum(), &q_plus, &[(0, vec![int(1)])]).unwrap());
    let quadric = Cone::from_rays(2, &[vec![int(1), int(0)], vec![int(1), int(2)]]);
    assert!(!check_colored_cone_smooth(&sl3_datum(), &quadric, &[]).unwrap());
    // Resolution always lands in the smooth locus of the criterion.
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for i in 0..50 {
        let d = random_affine_divisor(&mut rng, 4);
        let datum = torus_datum(d.rank());
        let fan = DivisorialFan::new(vec![d]).unwrap();
        let res = fan.resolve().unwrap();
        assert_eq!(
            is_smooth(&datum, &res.fan).unwrap(),
            SmoothStatus::Smooth,
            "sample {i} not smooth after resolve"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 180, "took {elapsed:?}");
    pass(4, "kernel table matches and resolve always yields a smooth fan (50 samples)");
}

fn principal_divisor(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    m: &[Int],
    gamma: &BTreeMap<Point, Int>,
) -> BStableDivisor {
    let items = fan
        .items
        .iter()
        .map(|item| PLItem {
            m: m.to_vec(),
            at: gamma
                .iter()
                .filter(|(z, _)| item.curve.contains(z))
                .map(|(z, g)| (z.clone(), (m.to_vec(), g.clone())))
                .collect(),
        })
        .collect();
    let r_alpha = datum
        .colors()
        .into_iter()
        .map(|c| (c.alpha, horosphere::lattice::dot(m, &c.image)))
        .collect();
    let theta = PLFunction { items, r_alpha, assumed_principal: false };
    pl_to_divisor(datum, fan, &theta).unwrap()
}

/// Principal divisors are Cartier with class zero; the inversion is exact.
#[test]
fn criterion_5_cartier_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for i in 0..50 {
        let d = if i % 2 == 0 {
            random_affine_divisor(&mut rng, 4)
        } else {
            random_p1_divisor(&mut rng, 4)
        };
        let n = d.rank();
        let datum = torus_datum(n);
        let fan = DivisorialFan::new(vec![d]).unwrap();
        let m: Vec<Int> = (0..n).map(|_| int(rng.gen_range(-3..=3))).collect();
        // div f supported on the special points; degree zero on a complete
        // base so that f exists.
        let special: Vec<Point> = fan.special_points().into_iter().collect();
        let mut gamma = BTreeMap::new();
        let projective = fan.items[0].curve.is_projective();
        if !special.is_empty() {
            let mut total = Int::zero();
            for z in &special[..special.len() - 1] {
                let g = int(rng.gen_range(-3..=3));
                total += &g;
                gamma.insert(z.clone(), g);
            }
            let last = special.last().unwrap().clone();
            let g = if projective { -total } else { int(rng.gen_range(-3..=3)) };
            gamma.insert(last, g);
        }
        let div = principal_divisor(&datum, &fan, &m, &gamma);
        let (coords, pres) = divisor_class(&datum, &fan, &div).unwrap();
        assert!(
            pres.reduce_class(&coords).iter().all(|x| x.is_zero()),
            "principal divisor has nonzero class (sample {i})"
        );
        match is_cartier(&datum, &fan, &div).unwrap() {
            CartierStatus::Cartier(theta) => {
                let back = pl_to_divisor(&datum, &fan, &theta).unwrap();
                assert_eq!(back, div, "roundtrip mismatch (sample {i})");
            }
            CartierStatus::NotCartier(why) => panic!("principal not Cartier (sample {i}): {why}"),
        }
    }
    // The half-integral vertex divisor of the quadric cone is not Cartier.
    let datum = sl3_datum();
    let fan = sl3_fan();
    let mut dv = BStableDivisor::zero();
    dv.coeff_vert.insert((Point::zero(), vec![rat(1, 2)]), rat(1, 1));
    assert!(matches!(
        is_cartier(&datum, &fan, &dv).unwrap(),
        CartierStatus::NotCartier(_)
    ));
    pass(5, "50 random principal pairs are Cartier with class 0; D_(0,1/2) rejected");
}

/// Color coefficients of the canonical divisor are always >= 2, checked
/// exhaustively over all simple types up to rank four.
#[test]
fn criterion_6_canonical_bound() {
    let mut checked = 0usize;
    for t in [SimpleType::A, SimpleType::B, SimpleType::C, SimpleType::D, SimpleType::F, SimpleType::G] {
        for rank in 1..=4 {
            if t.validate_rank(rank).is_err() {
                continue;
            }
            let rd = RootDatum::new(&[(t, rank)], 0).unwrap();
            let nsimple = rd.simple_rank();
            for mask in 0u32..(1 << nsimple) {
                let i_set: std::collections::BTreeSet<usize> =
                    (0..nsimple).filter(|i| mask & (1 << i) != 0).collect();
                // M = 0 pairs to zero with everything.
                let m = IntMatrix::from_rows(rd.weight_rank(), &[]);
                let datum = HorosphericalDatum::new(rd.clone(), m, i_set.clone()).unwrap();
                for alpha in 0..nsimple {
                    if i_set.contains(&alpha) {
                        continue;
                    }
                    let a = datum.a_alpha(alpha).unwrap();
                    assert!(a >= int(2), "a_alpha = {a} for type {t:?} rank {rank}, I = {i_set:?}, alpha = {alpha}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100, "exhaustive sweep too small: {checked}");
    pass(6, "a_alpha >= 2 over every (type <= rank 4, I, alpha), exhaustively");
}

/// Log-terminality arithmetic over P1 and the affine dichotomy.
#[test]
fn criterion_7_log_terminal() {
    let datum = torus_datum(1);
    assert!(is_log_terminal(&datum, &mu_pattern_item(&[2, 3, 5])).unwrap());
    assert!(!is_log_terminal(&datum, &mu_pattern_item(&[2, 3, 7])).unwrap());
    assert!(is_log_terminal(&datum, &mu_pattern_item(&[1, 1, 1])).unwrap());
    // Affine base: always log-terminal once Q-Gorenstein.
    assert!(is_log_terminal(&sl3_datum(), &sl3_item()).unwrap());
    assert!(is_log_terminal(&sl2_datum(), &sl2_trivial_item()).unwrap());
    pass(7, "mu-patterns (2,3,5) / (2,3,7) / (1,1,1) and the affine dichotomy");
}

/// Structural invariants: involution, SNF, superadditivity, Weyl orders,
/// fan completeness.
#[test]
fn criterion_8_structural_invariants() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);

    // Dual-cone involution on random cones of rank <= 3.
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let nrays = rng.gen_range(0..=n + 1);
        let rays: Vec<Vec<Int>> =
            (0..nrays).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
        let c = Cone::from_rays(n, &rays);
        assert_eq!(c.dual().dual(), c);
    }

    // SNF diagonal is invariant under unimodular row/column mixes.
    for _ in 0..25 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let entries: Vec<Vec<Int>> = (0..rows)
            .map(|_| (0..cols).map(|_| int(rng.gen_range(-5..=5))).collect())
            .collect();
        let a = IntMatrix::from_rows(cols, &entries);
        let mut left = IntMatrix::identity(rows);
        let mut right = IntMatrix::identity(cols);
        for _ in 0..6 {
            let (i, j) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
            if i != j {
                left = elementary(rows, i, j, rng.gen_range(-2..=2)).mul(&left);
            }
            let (i, j) = (rng.gen_range(0..cols), rng.gen_range(0..cols));
            if i != j {
                right = right.mul(&elementary(cols, i, j, rng.gen_range(-2..=2)));
            }
        }
        let b = left.mul(&a).mul(&right);
        assert_eq!(smith_normal_form(&a).diagonal(), smith_normal_form(&b).diagonal());
    }

    // Superadditivity of the evaluation divisor: D(m + m') >= D(m) + D(m').
    for _ in 0..25 {
        let d = random_p1_divisor(&mut rng, 4);
        let dual = d.tail().dual();
        let n = d.rank();
        let mut ms = Vec::new();
        while ms.len() < 2 {
            let m: Vec<Int> = (0..n).map(|_| int(rng.gen_range(-5..=5))).collect();
            if dual.contains(&m) {
                ms.push(m);
            }
        }
        let sum: Vec<Int> = ms[0].iter().zip(&ms[1]).map(|(a, b)| a + b).collect();
        let e0 = d.evaluate(&ms[0]).unwrap();
        let e1 = d.evaluate(&ms[1]).unwrap();
        let es = d.evaluate(&sum).unwrap();
        for (z, _) in e0.iter().chain(e1.iter()).chain(es.iter()) {
            assert!(es.coefficient(z) >= e0.coefficient(z) + e1.coefficient(z));
        }
    }

    // Weyl orders vs the matrix-generation oracle at rank <= 3.
    for t in [SimpleType::A, SimpleType::B, SimpleType::C, SimpleType::G] {
        for rank in 1..=3 {
            if t.validate_rank(rank).is_err() {
                continue;
            }
            let rd = RootDatum::new(&[(t, rank)], 0).unwrap();
            for mask in 0u32..(1 << rank) {
                let j: std::collections::BTreeSet<usize> =
                    (0..rank).filter(|i| mask & (1 << i) != 0).collect();
                let expect = horosphere::rootdata::weyl_order_matrix_oracle(&rd, &j);
                assert_eq!(rd.weyl_order(&j), int(expect as i64));
            }
        }
    }

    // The six-chart fan covers N_Q x P1.
    assert!(six_item_fan().is_complete().unwrap());

    // Smooth fans are Gorenstein of index one with rational singularities.
    let fan = six_item_fan();
    let datum = torus_datum(1);
    assert_eq!(is_smooth(&datum, &fan).unwrap(), SmoothStatus::Smooth);
    let qg = is_q_gorenstein(&datum, &fan).unwrap().unwrap();
    assert!(qg.index.is_one());
    for item in &fan.items {
        assert!(has_rational_singularities(item).unwrap());
    }
    let k = canonical_divisor(&datum, &fan, None).unwrap();
    assert!(k.divisor.is_integral());

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}");
    pass(8, "involution, SNF invariance, superadditivity, Weyl orders, completeness");
}
