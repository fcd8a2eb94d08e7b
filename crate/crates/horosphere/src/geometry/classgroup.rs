//! Divisor class groups of X(Sigma) and of the underlying T-variety
//! Y(D), presented by generators and relations and normalized via the
//! Smith form, plus the factoriality criterion with its two diagnostic
//! conditions.

use crate::error::{Error, Result};
use crate::fan::DivisorialFan;
use crate::lattice::{
    cokernel, primitive, solve_integer, AbelianGroupPresentation, Int, IntMatrix, Rat,
};
use crate::pdiv::{ColoredPolyhedralDivisor, CurveKind, Point, VertexDatum};
use crate::rootdata::{Color, HorosphericalDatum};
use num::{One, Zero};
use std::collections::BTreeSet;

/// Cl(X(Sigma)): generators [pt] (complete rational base only), the
/// vertical divisors D_(z,v), the horizontal divisors D_rho, and the
/// colors; one relation per special point and one per M-basis vector.
pub fn class_group(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
) -> Result<AbelianGroupPresentation> {
    require_rational(fan.curve_kind())?;
    check_proper(fan)?;
    let (verts, rays) = fan.vert_and_ray()?;
    let colors = datum.colors();
    let complete = is_complete_base(fan);
    Ok(presentation(
        datum.rank(),
        complete,
        &fan.special_points(),
        &verts,
        &rays,
        &colors,
        &[],
    ))
}

/// Cl(Y(D)) for a single divisor: same presentation without colors, and
/// with the rays taken without the color filter.
pub fn class_group_tvariety(d: &ColoredPolyhedralDivisor) -> Result<AbelianGroupPresentation> {
    require_rational(&d.curve.kind)?;
    let properness = d.is_proper()?;
    if !properness.proper {
        return Err(Error::Precondition(format!(
            "class_group_tvariety: divisor is not proper ({})",
            properness.reason
        )));
    }
    let (verts, _) = d.vertices_and_rays()?;
    let rays = uncolored_rays(d)?;
    let complete = d.curve.is_projective();
    let special: BTreeSet<Point> = d.nontrivial_points().cloned().collect();
    Ok(presentation(d.rank(), complete, &special, &verts, &rays, &[], &[]))
}

/// Factoriality of X(Sigma) (trivial class group), with the two
/// single-item diagnostic conditions: (i) Cl(Y) is generated by the ray
/// classes meeting a color image, (ii) for every color alpha there is an
/// integral pair (m_alpha, f_alpha) whose principal divisor cuts out
/// exactly D_alpha.
pub struct FactorialityReport {
    pub factorial: bool,
    pub class_group: AbelianGroupPresentation,
    /// Diagnostics are reported for single-item fans only.
    pub condition_i: Option<bool>,
    pub condition_ii: Option<bool>,
}

pub fn is_factorial(datum: &HorosphericalDatum, fan: &DivisorialFan) -> Result<FactorialityReport> {
    let cl = class_group(datum, fan)?;
    let factorial = cl.is_trivial();
    let (condition_i, condition_ii) = if fan.items.len() == 1 {
        let item = &fan.items[0];
        (
            Some(condition_colored_rays_generate(item)?),
            Some(condition_color_sections(datum, item)?),
        )
    } else {
        (None, None)
    };
    Ok(FactorialityReport { factorial, class_group: cl, condition_i, condition_ii })
}

/// Condition (i): Cl(Y(D)) is generated by the classes of the rays whose
/// cone meets a color image, checked by adjoining one unit relation per
/// such ray and testing triviality.
fn condition_colored_rays_generate(item: &ColoredPolyhedralDivisor) -> Result<bool> {
    let (verts, _) = item.vertices_and_rays()?;
    let rays = uncolored_rays(item)?;
    let special: BTreeSet<Point> = item.nontrivial_points().cloned().collect();
    let complete = item.curve.is_projective();
    let colored: Vec<bool> = rays
        .iter()
        .map(|rho| item.colors.iter().any(|c| primitive(&c.image) == *rho))
        .collect();
    let pres = presentation(item.rank(), complete, &special, &verts, &rays, &[], &colored);
    Ok(pres.is_trivial())
}

/// Condition (ii): for each color alpha outside I solve for m in M and
/// gamma_z in Z with <m, rho(D_beta)> = delta_{alpha beta},
/// mu(v)(<m, v> + gamma_z) = 0 on Vert, <m, rho> = 0 on Ray, and degree
/// zero on a projective base.
fn condition_color_sections(
    datum: &HorosphericalDatum,
    item: &ColoredPolyhedralDivisor,
) -> Result<bool> {
    let n = datum.rank();
    let (verts, rays) = item.vertices_and_rays()?;
    let special: Vec<Point> = item.nontrivial_points().cloned().collect();
    let cols = n + special.len();
    let gamma = |z: &Point| n + special.iter().position(|p| p == z).unwrap();
    for color in datum.colors() {
        let mut rows: Vec<Vec<Int>> = Vec::new();
        let mut rhs: Vec<Int> = Vec::new();
        for other in datum.colors() {
            let mut row = vec![Int::zero(); cols];
            row[..n].clone_from_slice(&other.image);
            rows.push(row);
            rhs.push(if other.alpha == color.alpha { Int::one() } else { Int::zero() });
        }
        for vd in &verts {
            let mut row = vec![Int::zero(); cols];
            for (j, x) in vd.v.iter().enumerate() {
                row[j] = (Rat::from(vd.mu.clone()) * x).to_integer();
            }
            row[gamma(&vd.point)] = vd.mu.clone();
            rows.push(row);
            rhs.push(Int::zero());
        }
        for rho in &rays {
            let mut row = vec![Int::zero(); cols];
            row[..n].clone_from_slice(rho);
            rows.push(row);
            rhs.push(Int::zero());
        }
        if item.curve.is_projective() {
            let mut row = vec![Int::zero(); cols];
            for z in &special {
                row[gamma(z)] = Int::one();
            }
            rows.push(row);
            rhs.push(Int::zero());
        }
        let a = IntMatrix::from_rows(cols, &rows);
        if solve_integer(&a, &rhs).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extremal rays of the tail with the degree filter (projective base) but
/// without the color filter.
fn uncolored_rays(d: &ColoredPolyhedralDivisor) -> Result<Vec<Vec<Int>>> {
    let mut rays = d.tail().rays().to_vec();
    if d.curve.is_projective() {
        let deg = d.degree_polytope()?;
        rays.retain(|rho| !crate::pdiv::ray_meets_polyhedron(rho, &deg));
    }
    Ok(rays)
}

fn require_rational(kind: &CurveKind) -> Result<()> {
    match kind {
        CurveKind::P1 => Ok(()),
        CurveKind::Abstract { genus } => Err(Error::Precondition(format!(
            "class group over a genus-{genus} curve is not finitely generated by point classes"
        ))),
    }
}

fn check_proper(fan: &DivisorialFan) -> Result<()> {
    for (i, item) in fan.items.iter().enumerate() {
        let p = item.is_proper()?;
        if !p.proper {
            return Err(Error::Precondition(format!(
                "class_group: item {i} is not proper ({})",
                p.reason
            )));
        }
    }
    Ok(())
}

/// C_Sigma = C exactly when every point survives in some item's base.
fn is_complete_base(fan: &DivisorialFan) -> bool {
    let mut removed = fan.items[0].curve.removed.clone();
    for item in &fan.items[1..] {
        removed = removed.intersection(&item.curve.removed).cloned().collect();
    }
    removed.is_empty()
}

/// Shared presentation builder. `unit_rays[j]` adds the extra relation
/// killing the j-th ray generator (used by the factoriality diagnostic).
fn presentation(
    rank: usize,
    complete: bool,
    special: &BTreeSet<Point>,
    verts: &[VertexDatum],
    rays: &[Vec<Int>],
    colors: &[Color],
    unit_rays: &[bool],
) -> AbelianGroupPresentation {
    let pt = usize::from(complete);
    let cols = pt + verts.len() + rays.len() + colors.len();
    let mut labels: Vec<String> = Vec::new();
    if complete {
        labels.push("[pt]".into());
    }
    for vd in verts {
        let coords: Vec<String> = vd.v.iter().map(|x| x.to_string()).collect();
        labels.push(format!("D_({},({}))", vd.point, coords.join(",")));
    }
    for rho in rays {
        let coords: Vec<String> = rho.iter().map(|x| x.to_string()).collect();
        labels.push(format!("D_rho({})", coords.join(",")));
    }
    for c in colors {
        labels.push(format!("D_{}", c.label));
    }
    let mut rows: Vec<Vec<Int>> = Vec::new();
    // One relation per special point: [z] = sum mu(v) D_(z,v).
    for z in special {
        let mut row = vec![Int::zero(); cols];
        if complete {
            row[0] = Int::one();
        }
        for (j, vd) in verts.iter().enumerate() {
            if &vd.point == z {
                row[pt + j] = -vd.mu.clone();
            }
        }
        rows.push(row);
    }
    // One relation per M-basis vector: the principal divisor of chi^m. In
    // the coordinates dual to the basis, <m_i, v> is the i-th entry of v.
    for i in 0..rank {
        let mut row = vec![Int::zero(); cols];
        for (j, vd) in verts.iter().enumerate() {
            row[pt + j] = (Rat::from(vd.mu.clone()) * &vd.v[i]).to_integer();
        }
        for (j, rho) in rays.iter().enumerate() {
            row[pt + verts.len() + j] = rho[i].clone();
        }
        for (j, c) in colors.iter().enumerate() {
            row[pt + verts.len() + rays.len() + j] = c.image[i].clone();
        }
        rows.push(row);
    }
    for (j, &kill) in unit_rays.iter().enumerate() {
        if kill {
            let mut row = vec![Int::zero(); cols];
            row[pt + verts.len() + j] = Int::one();
            rows.push(row);
        }
    }
    cokernel(&IntMatrix::from_rows(cols, &rows), &labels)
}
