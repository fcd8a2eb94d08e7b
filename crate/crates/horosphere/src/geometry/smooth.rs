//! Smoothness: the colored-cone kernel (distinct color images, regular
//! cone generated by a basis subset containing the color images, Weyl
//! order product identity) and the fan-level test running it on every
//! hypercone slice, with a two-point normalization for projective bases.

use crate::error::{Error, Result};
use crate::fan::DivisorialFan;
use crate::lattice::{Int, Rat};
use crate::pdiv::{ColoredPolyhedralDivisor, Point};
use crate::polyhedra::Cone;
use crate::rootdata::HorosphericalDatum;
use num::{One, Zero};
use std::collections::BTreeSet;

/// Three-valued smoothness verdict; Undecided is first-class and never
/// coerced to a boolean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothStatus {
    Smooth,
    NotSmooth(String),
    Undecided(String),
}

/// Smoothness of the simple embedding attached to a colored cone. The cone
/// lives in an arbitrary ambient lattice (N or N x Z); colors are passed as
/// (alpha, embedded image) pairs. Conditions: (i) pairwise distinct color
/// images, (ii) the cone is generated by part of a lattice basis containing
/// the color images, (iii) |W_I| * prod a_alpha = |W_{I cup I_F}|.
pub fn check_colored_cone_smooth(
    datum: &HorosphericalDatum,
    cone: &Cone,
    colors: &[(usize, Vec<Int>)],
) -> Result<bool> {
    if !cone.is_strongly_convex() {
        return Err(Error::InvalidInput(
            "check_colored_cone_smooth: cone is not strongly convex".into(),
        ));
    }
    for (alpha, image) in colors {
        if image.iter().all(|x| x.is_zero()) || !cone.contains(image) {
            return Err(Error::InvalidInput(format!(
                "check_colored_cone_smooth: image of alpha{} is zero or outside the cone",
                alpha + 1
            )));
        }
    }
    // (i) pairwise distinct images.
    let images: BTreeSet<&Vec<Int>> = colors.iter().map(|(_, im)| im).collect();
    if images.len() != colors.len() {
        return Ok(false);
    }
    // (ii) regular cone whose ray generators include every color image.
    if !cone.is_regular() {
        return Ok(false);
    }
    if !colors.iter().all(|(_, im)| cone.rays().contains(im)) {
        return Ok(false);
    }
    // (iii) Weyl order identity.
    let alphas: Vec<usize> = colors.iter().map(|(a, _)| *a).collect();
    let mut product = datum.root_datum.weyl_order(&datum.i_set);
    for &alpha in &alphas {
        product *= datum.a_alpha(alpha)?;
    }
    let mut extended = datum.i_set.clone();
    extended.extend(alphas);
    Ok(product == datum.root_datum.weyl_order(&extended))
}

/// Smoothness of X(Sigma): every hypercone slice of every item must pass
/// the colored-cone check, with the item's colors embedded at level zero.
/// Projective-base items are normalized to two-point support first; when
/// that fails the verdict is Undecided.
pub fn is_smooth(datum: &HorosphericalDatum, fan: &DivisorialFan) -> Result<SmoothStatus> {
    fan.validate()?;
    let mut undecided: Option<String> = None;
    for (i, item) in fan.items.iter().enumerate() {
        let properness = item.is_proper()?;
        if !properness.proper {
            return Err(Error::Precondition(format!(
                "is_smooth: item {i} is not proper ({})",
                properness.reason
            )));
        }
        let embedded: Vec<(usize, Vec<Int>)> = item
            .colors
            .iter()
            .map(|c| {
                let mut im = c.image.clone();
                im.push(Int::zero());
                (c.alpha, im)
            })
            .collect();
        if item.curve.is_affine() {
            for z in item.nontrivial_points() {
                if !check_colored_cone_smooth(datum, &item.slice(z)?, &embedded)? {
                    return Ok(SmoothStatus::NotSmooth(format!(
                        "item {i}: slice at {z} fails the colored-cone criterion"
                    )));
                }
            }
            if !check_colored_cone_smooth(datum, &item.generic_slice(), &embedded)? {
                return Ok(SmoothStatus::NotSmooth(format!(
                    "item {i}: generic slice fails the colored-cone criterion"
                )));
            }
        } else {
            match projective_cone(item)? {
                ProjectiveNormalization::Cone(cone) => {
                    if !check_colored_cone_smooth(datum, &cone, &embedded)? {
                        return Ok(SmoothStatus::NotSmooth(format!(
                            "item {i}: two-point hypercone fails the colored-cone criterion"
                        )));
                    }
                }
                ProjectiveNormalization::Undecided(reason) => {
                    undecided.get_or_insert(format!("item {i}: {reason}"));
                }
            }
        }
    }
    Ok(match undecided {
        Some(reason) => SmoothStatus::Undecided(reason),
        None => SmoothStatus::Smooth,
    })
}

enum ProjectiveNormalization {
    Cone(Cone),
    Undecided(String),
}

/// Two-point normalization of a projective-base item: coefficients that are
/// integral lattice translates of sigma are shifted onto a designated
/// support point; with at most two genuinely non-translatable points p, q
/// left, the criterion cone is generated by sigma x {0}, Delta_p x {1} and
/// Delta_q x {-1}.
fn projective_cone(item: &ColoredPolyhedralDivisor) -> Result<ProjectiveNormalization> {
    let n = item.rank();
    let translatable = |z: &Point| -> Option<Vec<Rat>> {
        let p = item.coefficient(z);
        let v = p.single_vertex()?;
        v.iter().all(|x| x.is_integer()).then(|| v.clone())
    };
    let hard: Vec<Point> =
        item.nontrivial_points().filter(|z| translatable(z).is_none()).cloned().collect();
    if hard.len() > 2 {
        return Ok(ProjectiveNormalization::Undecided(format!(
            "{} points resist integral-translation normalization",
            hard.len()
        )));
    }
    // Designated support pair: the hard points, padded from {inf, 0}.
    let mut support = hard.clone();
    for fallback in [Point::Infinity, Point::zero()] {
        if support.len() < 2 && !support.contains(&fallback) {
            support.push(fallback);
        }
    }
    let (p, q) = (support[0].clone(), support[1].clone());
    // Total shift collected from the translated-away points.
    let mut shift = vec![Rat::zero(); n];
    for z in item.nontrivial_points() {
        if *z != p && *z != q {
            let v = translatable(z).expect("non-support points are translatable");
            for (s, x) in shift.iter_mut().zip(&v) {
                *s += x;
            }
        }
    }
    let delta_p = item.coefficient(&p).translate(&shift);
    let delta_q = item.coefficient(&q);
    let mut gens: Vec<Vec<Int>> = item
        .tail()
        .rays()
        .iter()
        .map(|r| {
            let mut g = r.clone();
            g.push(Int::zero());
            g
        })
        .collect();
    for (poly, level) in [(&delta_p, Rat::one()), (&delta_q, -Rat::one())] {
        for v in poly.vertices() {
            let mut g = v.clone();
            g.push(level.clone());
            gens.push(crate::lattice::primitive_from_rat(&g));
        }
    }
    let cone = Cone::from_rays(n + 1, &gens);
    if !cone.is_strongly_convex() {
        return Ok(ProjectiveNormalization::Undecided(
            "two-point hypercone is not strongly convex".into(),
        ));
    }
    Ok(ProjectiveNormalization::Cone(cone))
}
