//! Rational singularities of a simple model: affine bases are always
//! rational; over P1 the criterion deg floor(D(m)) >= -1 for every
//! m in the dual cone is decided by a finite box search.
//!
//! On each maximal cone lambda of the common refinement of the normal
//! quasi-fans of the coefficients, the minimizing vertex v_z is constant,
//! so f(m) = sum_z floor(<m, v_z>) is periodic up to monotone growth:
//! f(m + mu_j h_j) = f(m) + mu_j sum_z <h_j, v_z> >= f(m) for every monoid
//! generator h_j of lambda and mu_j the lcm of the denominators of its
//! pairings. It therefore suffices to test the combinations with exponents
//! below the periods.

use crate::error::{Error, Result};
use crate::lattice::{
    dot, dot_ir, int, integer_kernel, primitive, primitive_from_rat, smith_normal_form,
    unimodular_inverse, Int, IntMatrix, Rat,
};
use crate::pdiv::{ColoredPolyhedralDivisor, Point};
use crate::polyhedra::{parallelepiped_lattice_points, triangulate, Cone};
use num::{Integer, One, Signed, ToPrimitive, Zero};

/// Decides whether the simple model X(D) has rational singularities.
pub fn has_rational_singularities(d: &ColoredPolyhedralDivisor) -> Result<bool> {
    let properness = d.is_proper()?;
    if !properness.proper {
        return Err(Error::Precondition(format!(
            "has_rational_singularities: divisor is not proper ({})",
            properness.reason
        )));
    }
    if d.curve.is_affine() {
        return Ok(true);
    }
    if d.curve.genus() >= 1 {
        // The projective criterion requires a rational base curve.
        return Ok(false);
    }
    let n = d.rank();
    let sigma_dual = d.tail().dual();
    let special: Vec<(Point, Vec<Vec<Rat>>)> = d
        .nontrivial_coeffs()
        .map(|(z, p)| (z.clone(), p.vertices().to_vec()))
        .collect();
    if special.is_empty() {
        return Ok(true);
    }
    // Maximal cones of the common refinement: one vertex choice per point.
    let mut cones: Vec<(Cone, Vec<Vec<Rat>>)> = Vec::new();
    let mut choice = vec![0usize; special.len()];
    'outer: loop {
        let mut ineqs: Vec<Vec<Int>> = sigma_dual.normals().to_vec();
        let mut chosen: Vec<Vec<Rat>> = Vec::new();
        for (k, (_, verts)) in special.iter().enumerate() {
            let v = &verts[choice[k]];
            chosen.push(v.clone());
            for (j, other) in verts.iter().enumerate() {
                if j != choice[k] {
                    let diff: Vec<Rat> = other.iter().zip(v).map(|(a, b)| a - b).collect();
                    ineqs.push(primitive_from_rat(&diff));
                }
            }
        }
        let lambda = Cone::from_halfspaces(n, &ineqs, sigma_dual.equations());
        if lambda.dim() == n && !cones.iter().any(|(c, _)| c == &lambda) {
            cones.push((lambda, chosen));
        }
        for k in (0..special.len()).rev() {
            choice[k] += 1;
            if choice[k] < special[k].1.len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    for (lambda, verts) in &cones {
        if !check_cone(lambda, verts)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_cone(lambda: &Cone, verts: &[Vec<Rat>]) -> Result<bool> {
    let gens = monoid_generators(lambda)?;
    // Period of each generator: lcm of the denominators of its pairings
    // with the minimizing vertices.
    let periods: Vec<Int> = gens
        .iter()
        .map(|h| {
            let mut m = Int::one();
            for v in verts {
                m = m.lcm(&dot_ir(h, v).denom().abs());
            }
            m
        })
        .collect();
    let active: Vec<usize> = (0..gens.len()).filter(|&j| periods[j] > Int::one()).collect();
    // f(m) = <m, sum v_z> - sum frac(<m, v_z>) > <m, V> - s with s the number
    // of non-integral minimizing vertices, so every m with <m, V> >= s - 1 is
    // automatic. Each generator has <g_j, V> >= 0 (V lies in the degree, hence
    // in sigma), so exponents e_j with e_j <g_j, V> >= s - 1 need no check.
    let s = verts.iter().filter(|v| v.iter().any(|x| !x.denom().is_one())).count();
    let bound = Rat::from(Int::from(s as i64) - Int::one());
    if bound <= Rat::zero() {
        return Ok(true);
    }
    let radices: Vec<u64> = active
        .iter()
        .map(|&j| {
            let d_j: Rat = verts.iter().map(|v| dot_ir(&gens[j], v)).sum();
            let cap = if d_j > Rat::zero() {
                (&bound / d_j).ceil().to_integer().max(Int::one())
            } else {
                periods[j].clone()
            };
            cap.min(periods[j].clone())
                .to_u64()
                .ok_or_else(|| Error::InvalidInput("rationality box period overflow".into()))
        })
        .collect::<Result<_>>()?;
    if radices.iter().product::<u64>() > 5_000_000 {
        return Err(Error::InvalidInput("rationality box too large".into()));
    }
    let n = lambda.ambient;
    let mut exps = vec![0u64; active.len()];
    'outer: loop {
        let mut m = vec![Int::zero(); n];
        for (pos, &j) in active.iter().enumerate() {
            let e = Int::from(exps[pos]);
            for (mi, gi) in m.iter_mut().zip(&gens[j]) {
                *mi += &e * gi;
            }
        }
        // On lambda the minimizing vertices are exactly `verts`, so the
        // floor degree is a direct sum (trivial coefficients contribute 0).
        let deg: Int = verts.iter().map(|v| dot_ir(&m, v).floor().to_integer()).sum();
        if deg < -Int::one() {
            return Ok(false);
        }
        for pos in (0..active.len()).rev() {
            exps[pos] += 1;
            if exps[pos] < radices[pos] {
                continue 'outer;
            }
            exps[pos] = 0;
        }
        break;
    }
    Ok(true)
}

/// Generators of the monoid lambda cap Z^n for a full-dimensional cone,
/// allowing lineality: the pointed quotient is handled by a Hilbert-type
/// basis, the lineality lattice by +- a basis.
fn monoid_generators(lambda: &Cone) -> Result<Vec<Vec<Int>>> {
    if lambda.lineality().is_empty() {
        return pointed_monoid_generators(lambda);
    }
    let n = lambda.ambient;
    // The lineality lattice is the integer kernel of the defining forms.
    let mut forms: Vec<Vec<Int>> = lambda.normals().to_vec();
    forms.extend(lambda.equations().to_vec());
    let a = IntMatrix::from_rows(n, &forms);
    let l_basis = integer_kernel(&a);
    let k = l_basis.len();
    // Smith form of the (saturated) basis: U B V = [I_k | 0], so the first
    // k rows of W = V^{-1} are a basis of the lineality lattice, the last
    // n-k rows project onto the quotient lattice, and columns k..n of V
    // section the projection.
    let b = IntMatrix::from_rows(n, &l_basis);
    let snf = smith_normal_form(&b);
    debug_assert!(snf.diagonal().iter().all(|x| x.is_one()));
    let w = unimodular_inverse(&snf.v);
    let project = |x: &[Int]| -> Vec<Int> { (k..n).map(|i| dot(w.row(i), x)).collect() };
    let prays: Vec<Vec<Int>> = lambda.rays().iter().map(|r| primitive(&project(r))).collect();
    let downstairs = Cone::from_rays(n - k, &prays);
    let mut gens = Vec::new();
    for g in pointed_monoid_generators(&downstairs)? {
        // Lift through the section; the lift lies in lambda because the
        // kernel of the projection is the lineality space.
        let lift: Vec<Int> = (0..n)
            .map(|r| (0..n - k).map(|j| &snf.v[(r, k + j)] * &g[j]).sum())
            .collect();
        debug_assert!(lambda.contains(&lift));
        gens.push(lift);
    }
    for i in 0..k {
        let row = w.row(i).to_vec();
        gens.push(row.iter().map(|x| -x).collect());
        gens.push(row);
    }
    Ok(gens)
}

/// Monoid generators of a pointed cone: primitive rays plus the
/// parallelepiped lattice points of a triangulation.
fn pointed_monoid_generators(c: &Cone) -> Result<Vec<Vec<Int>>> {
    if c.rays().is_empty() {
        return Ok(Vec::new());
    }
    let mut gens: Vec<Vec<Int>> = c.rays().to_vec();
    for simplex in triangulate(c)? {
        gens.extend(parallelepiped_lattice_points(&simplex));
    }
    gens.sort();
    gens.dedup();
    gens.retain(|g| g.iter().any(|x| !x.is_zero()));
    // Prune generators that are sums of two others: the set still generates
    // the monoid, and every removal divides the box search size.
    loop {
        let mut removed = false;
        'scan: for i in 0..gens.len() {
            for a in 0..gens.len() {
                if a == i {
                    continue;
                }
                for b in a..gens.len() {
                    if b == i {
                        continue;
                    }
                    let sum: Vec<Int> =
                        gens[a].iter().zip(&gens[b]).map(|(x, y)| x + y).collect();
                    if sum == gens[i] {
                        gens.remove(i);
                        removed = true;
                        break 'scan;
                    }
                }
            }
        }
        if !removed {
            break;
        }
    }
    Ok(gens)
}

/// Brute-force oracle: checks deg floor(D(m)) >= -1 on every lattice point
/// of the dual cone with coordinates bounded by `bound`. Affine and
/// positive-genus cases delegate to the main routine.
pub fn rational_brute_oracle(d: &ColoredPolyhedralDivisor, bound: i64) -> Result<bool> {
    if d.curve.is_affine() || d.curve.genus() >= 1 {
        return has_rational_singularities(d);
    }
    let n = d.rank();
    let sigma_dual = d.tail().dual();
    let mut m = vec![-bound; n];
    'outer: loop {
        let mi: Vec<Int> = m.iter().map(|&x| int(x)).collect();
        if sigma_dual.contains(&mi) && d.evaluate(&mi)?.floor().degree() < -Rat::one() {
            return Ok(false);
        }
        for j in (0..n).rev() {
            m[j] += 1;
            if m[j] <= bound {
                continue 'outer;
            }
            m[j] = -bound;
        }
        break;
    }
    Ok(true)
}
