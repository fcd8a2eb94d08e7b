//! Piecewise-linear functions on a divisorial fan, the Cartier test by an
//! exact integer linear system, canonical divisors, Q-Gorenstein indices,
//! and log-terminality.
//!
//! A PL function is a per-item family (m_z, gamma_z) with generic value m;
//! its divisor has vertex coefficients mu(v)<m_z, v> + mu(v) gamma_z, ray
//! coefficients <m, rho>, color coefficients <m, rho(D_alpha)> for colors
//! carried by some item and free integers r_alpha otherwise, plus gamma_z
//! fibers over points that are trivial everywhere.

use super::BStableDivisor;
use crate::error::{Error, Result};
use crate::fan::{mu_of, CheckedPoint, DivisorialFan};
use crate::lattice::{
    dot, dot_ir, solve_integer, solve_integer_minimal_dilation, Int, IntMatrix, Rat,
};
use crate::pdiv::{CurveQDivisor, Point, VertexDatum};
use crate::rootdata::HorosphericalDatum;
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Linear data of one item: generic weight m, and per relevant point the
/// pair (m_z, gamma_z). Projective items share m across all points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLItem {
    pub m: Vec<Int>,
    pub at: BTreeMap<Point, (Vec<Int>, Int)>,
}

impl PLItem {
    fn data_at(&self, z: &Point) -> (Vec<Int>, Int) {
        self.at.get(z).cloned().unwrap_or_else(|| (self.m.clone(), Int::zero()))
    }
}

/// An integral piecewise-linear function on a divisorial fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    pub items: Vec<PLItem>,
    /// Coefficients of the colors not carried by any item.
    pub r_alpha: BTreeMap<usize, Int>,
    /// Set when a positive-genus principality constraint was only checked
    /// in degree.
    pub assumed_principal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartierStatus {
    Cartier(PLFunction),
    NotCartier(String),
}

/// Canonical divisor together with the curve divisor K_C it was computed
/// from and whether the default representative had to move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDivisor {
    pub divisor: BStableDivisor,
    pub k_c: CurveQDivisor,
    pub moved_default: bool,
}

/// K_X = -sum D_rho + sum (mu(v) b_z + mu(v) - 1) D_(z,v) - sum a_alpha
/// D_alpha, for K_C = sum b_z [z]. The default on a rational curve is
/// K_C = -2[inf], moved to a fresh finite point when inf is special.
pub fn canonical_divisor(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    k_c: Option<&CurveQDivisor>,
) -> Result<CanonicalDivisor> {
    let genus = match fan.curve_kind() {
        crate::pdiv::CurveKind::P1 => 0,
        crate::pdiv::CurveKind::Abstract { genus } => *genus,
    };
    let special = fan.special_points();
    let mut moved_default = false;
    let k_c = match k_c {
        Some(k) => {
            if !k.is_integral() || k.degree() != Rat::from(Int::from(2 * genus as i64 - 2)) {
                return Err(Error::InvalidInput(format!(
                    "canonical_divisor: K_C must be integral of degree {}",
                    2 * genus as i64 - 2
                )));
            }
            k.clone()
        }
        None => {
            if genus >= 1 {
                return Err(Error::Precondition(
                    "canonical_divisor: a K_C representative is required on a positive-genus curve"
                        .into(),
                ));
            }
            let mut at = Point::Infinity;
            if special.contains(&at) {
                moved_default = true;
                at = (0..)
                    .map(|k| Point::finite(k, 1))
                    .find(|p| !special.contains(p))
                    .unwrap();
            }
            CurveQDivisor::from_pairs([(at, Rat::from(Int::from(-2)))])
        }
    };
    let (verts, rays) = fan.vert_and_ray()?;
    let mut divisor = BStableDivisor::zero();
    for vd in &verts {
        let b = k_c.coefficient(&vd.point);
        let mu = Rat::from(vd.mu.clone());
        divisor
            .coeff_vert
            .insert((vd.point.clone(), vd.v.clone()), &mu * b + &mu - Rat::one());
    }
    for rho in &rays {
        divisor.coeff_ray.insert(rho.clone(), -Rat::one());
    }
    for c in datum.colors() {
        divisor.coeff_color.insert(c.alpha, -Rat::from(datum.a_alpha(c.alpha)?));
    }
    for (z, b) in k_c.iter() {
        let in_base = fan.items.iter().any(|it| it.curve.contains(z));
        if in_base && !special.contains(z) && !b.is_zero() {
            divisor.curve_part.add(z.clone(), b.clone());
        }
    }
    Ok(CanonicalDivisor { divisor, k_c, moved_default })
}

/// Unknown layout of the Cartier system: per item the generic m block and
/// per relevant point an optional m_z block (affine bases only) and a
/// gamma_z scalar.
struct ItemVars {
    m: usize,
    at: BTreeMap<Point, (Option<usize>, usize)>,
}

struct Vars {
    n: usize,
    ncols: usize,
    items: Vec<ItemVars>,
}

impl Vars {
    /// Adds sign * theta_i(z, u, l) to a row: u against the weight block,
    /// l against the gamma variable when one exists at z.
    fn add_theta(
        &self,
        row: &mut [Int],
        sign: i64,
        item: usize,
        z: &CheckedPoint,
        u: &[Int],
        l: &Int,
    ) {
        let iv = &self.items[item];
        let (m_off, gamma) = match z {
            CheckedPoint::Generic => (iv.m, None),
            CheckedPoint::At(p) => match iv.at.get(p) {
                Some((mo, go)) => (mo.unwrap_or(iv.m), Some(*go)),
                None => (iv.m, None),
            },
        };
        for (k, uk) in u.iter().enumerate() {
            row[m_off + k] += Int::from(sign) * uk;
        }
        if let Some(go) = gamma {
            if !l.is_zero() {
                row[go] += Int::from(sign) * l;
            }
        }
    }
}

/// Builds the integer system A x = rhs whose solutions are the PL
/// functions theta with D_theta = d.
fn assemble_cartier_system(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    d: &BStableDivisor,
) -> Result<(IntMatrix, Vec<Int>, Vars)> {
    let n = fan.rank();
    let special = fan.special_points();
    let (verts, rays) = fan.vert_and_ray()?;
    validate_divisor(datum, fan, d, &special, &verts, &rays)?;
    let mut relevant: BTreeSet<Point> = special.clone();
    relevant.extend(d.curve_part.support().cloned());
    // Allocate unknowns.
    let mut ncols = 0;
    let mut items = Vec::new();
    for item in &fan.items {
        let m = ncols;
        ncols += n;
        let mut at = BTreeMap::new();
        for z in &relevant {
            if item.curve.contains(z) {
                let mo = item.curve.is_affine().then(|| {
                    let o = ncols;
                    ncols += n;
                    o
                });
                at.insert(z.clone(), (mo, ncols));
                ncols += 1;
            }
        }
        items.push(ItemVars { m, at });
    }
    let vars = Vars { n, ncols, items };
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Int> = Vec::new();
    // Tail consistency: m_z agrees with m on the tail cone.
    for (i, item) in fan.items.iter().enumerate() {
        for (mo, _) in vars.items[i].at.values() {
            let Some(mo) = mo else { continue };
            for r in item.tail().rays() {
                let mut row = vec![Int::zero(); vars.ncols];
                for (k, rk) in r.iter().enumerate() {
                    row[mo + k] += rk;
                    row[vars.items[i].m + k] -= rk;
                }
                rows.push(row);
                rhs.push(Int::zero());
            }
        }
    }
    // Cross-item consistency on shared slice faces.
    for i in 0..fan.items.len() {
        for j in i + 1..fan.items.len() {
            for cz in fan.checked_points() {
                if let CheckedPoint::At(p) = &cz {
                    if !fan.items[i].curve.contains(p) || !fan.items[j].curve.contains(p) {
                        continue;
                    }
                }
                let meet = fan.slice_at(i, &cz).intersect(&fan.slice_at(j, &cz));
                for r in meet.rays() {
                    let mut row = vec![Int::zero(); vars.ncols];
                    vars.add_theta(&mut row, 1, i, &cz, &r[..n], &r[n]);
                    vars.add_theta(&mut row, -1, j, &cz, &r[..n], &r[n]);
                    rows.push(row);
                    rhs.push(Int::zero());
                }
            }
        }
    }
    // Vertex coefficients: theta(z, mu v, mu) = d_(z,v).
    for vd in &verts {
        let i = owner_of_vertex(fan, vd);
        let u: Vec<Int> = vd
            .v
            .iter()
            .map(|x| (Rat::from(vd.mu.clone()) * x).to_integer())
            .collect();
        let mut row = vec![Int::zero(); vars.ncols];
        vars.add_theta(&mut row, 1, i, &CheckedPoint::At(vd.point.clone()), &u, &vd.mu);
        rows.push(row);
        rhs.push(coeff_int(d.coeff_vert.get(&(vd.point.clone(), vd.v.clone()))));
    }
    // Ray coefficients: <m_i, rho> = d_rho on any item whose tail holds rho.
    for rho in &rays {
        let i = fan
            .items
            .iter()
            .position(|it| it.tail().contains(rho))
            .expect("ray comes from some item");
        let mut row = vec![Int::zero(); vars.ncols];
        vars.add_theta(&mut row, 1, i, &CheckedPoint::Generic, rho, &Int::zero());
        rows.push(row);
        rhs.push(coeff_int(d.coeff_ray.get(rho)));
    }
    // Colors carried by some item: <m_i, rho(D_alpha)> = d_alpha. Colors
    // outside every item are free (their coefficient becomes r_alpha).
    for alpha in fan_colors(fan) {
        let (i, image) = fan
            .items
            .iter()
            .enumerate()
            .find_map(|(i, it)| {
                it.colors.iter().find(|c| c.alpha == alpha).map(|c| (i, c.image.clone()))
            })
            .unwrap();
        let mut row = vec![Int::zero(); vars.ncols];
        vars.add_theta(&mut row, 1, i, &CheckedPoint::Generic, &image, &Int::zero());
        rows.push(row);
        rhs.push(coeff_int(d.coeff_color.get(&alpha)));
    }
    // Whole fibers over non-special points: gamma_z = c_z on every owner.
    for (z, c) in d.curve_part.iter() {
        for iv in &vars.items {
            if let Some((_, go)) = iv.at.get(z) {
                let mut row = vec![Int::zero(); vars.ncols];
                row[*go] = Int::one();
                rows.push(row);
                rhs.push(c.to_integer());
            }
        }
    }
    // Principality on projective items: sum of gamma_z is zero (the full
    // condition on genus zero; the degree part only otherwise).
    for (i, item) in fan.items.iter().enumerate() {
        if item.curve.is_projective() {
            let mut row = vec![Int::zero(); vars.ncols];
            for (_, go) in vars.items[i].at.values() {
                row[*go] = Int::one();
            }
            rows.push(row);
            rhs.push(Int::zero());
        }
    }
    if rows.is_empty() {
        rows.push(vec![Int::zero(); vars.ncols]);
        rhs.push(Int::zero());
    }
    Ok((IntMatrix::from_rows(vars.ncols, &rows), rhs, vars))
}

fn coeff_int(c: Option<&Rat>) -> Int {
    c.map(|x| x.to_integer()).unwrap_or_else(Int::zero)
}

fn owner_of_vertex(fan: &DivisorialFan, vd: &VertexDatum) -> usize {
    fan.items
        .iter()
        .position(|it| {
            it.curve.contains(&vd.point)
                && it.coefficient(&vd.point).vertices().contains(&vd.v)
        })
        .expect("vertex comes from some item")
}

fn fan_colors(fan: &DivisorialFan) -> BTreeSet<usize> {
    fan.items.iter().flat_map(|it| it.colors.iter().map(|c| c.alpha)).collect()
}

fn validate_divisor(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    d: &BStableDivisor,
    special: &BTreeSet<Point>,
    verts: &[VertexDatum],
    rays: &[Vec<Int>],
) -> Result<()> {
    for (z, v) in d.coeff_vert.keys() {
        if !verts.iter().any(|vd| &vd.point == z && &vd.v == v) {
            return Err(Error::InvalidInput(format!(
                "divisor has a vertex coefficient at ({z}, ...) not present in the fan"
            )));
        }
    }
    for rho in d.coeff_ray.keys() {
        if !rays.contains(rho) {
            return Err(Error::InvalidInput(
                "divisor has a ray coefficient outside Ray(Sigma)".into(),
            ));
        }
    }
    let alphas: BTreeSet<usize> = datum.colors().iter().map(|c| c.alpha).collect();
    for alpha in d.coeff_color.keys() {
        if !alphas.contains(alpha) {
            return Err(Error::InvalidInput(format!(
                "divisor has a coefficient for the unknown color alpha{}",
                alpha + 1
            )));
        }
    }
    for z in d.curve_part.support() {
        if special.contains(z) {
            return Err(Error::InvalidInput(format!(
                "divisor carries a whole fiber over the special point {z}"
            )));
        }
        if !fan.items.iter().any(|it| it.curve.contains(z)) {
            return Err(Error::InvalidInput(format!(
                "divisor carries a fiber over {z}, which lies outside the base locus"
            )));
        }
    }
    Ok(())
}

fn theta_from_solution(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    vars: &Vars,
    x: &[Int],
    d: &BStableDivisor,
) -> PLFunction {
    let n = vars.n;
    let mut items = Vec::new();
    for iv in &vars.items {
        let m: Vec<Int> = x[iv.m..iv.m + n].to_vec();
        let mut at = BTreeMap::new();
        for (z, (mo, go)) in &iv.at {
            let mz = match mo {
                Some(o) => x[*o..*o + n].to_vec(),
                None => m.clone(),
            };
            at.insert(z.clone(), (mz, x[*go].clone()));
        }
        items.push(PLItem { m, at });
    }
    let carried = fan_colors(fan);
    let r_alpha: BTreeMap<usize, Int> = datum
        .colors()
        .iter()
        .filter(|c| !carried.contains(&c.alpha))
        .map(|c| (c.alpha, coeff_int(d.coeff_color.get(&c.alpha))))
        .collect();
    let assumed_principal = fan
        .items
        .iter()
        .any(|it| it.curve.is_projective() && it.curve.genus() >= 1);
    PLFunction { items, r_alpha, assumed_principal }
}

/// Decides whether an integral B-stable divisor is Cartier, returning the
/// PL function realizing it.
pub fn is_cartier(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    d: &BStableDivisor,
) -> Result<CartierStatus> {
    if !d.is_integral() {
        return Err(Error::InvalidInput("is_cartier: divisor is not integral".into()));
    }
    let (a, b, vars) = assemble_cartier_system(datum, fan, d)?;
    Ok(match solve_integer(&a, &b) {
        Some(x) => CartierStatus::Cartier(theta_from_solution(datum, fan, &vars, &x, d)),
        None => CartierStatus::NotCartier(
            "no integral piecewise-linear function realizes the divisor".into(),
        ),
    })
}

/// Evaluates a PL function into its B-stable divisor.
pub fn pl_to_divisor(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    theta: &PLFunction,
) -> Result<BStableDivisor> {
    if theta.items.len() != fan.items.len() {
        return Err(Error::DimensionMismatch("pl_to_divisor: item count mismatch".into()));
    }
    let special = fan.special_points();
    let (verts, rays) = fan.vert_and_ray()?;
    let mut out = BStableDivisor::zero();
    for vd in &verts {
        let i = owner_of_vertex(fan, vd);
        let (mz, g) = theta.items[i].data_at(&vd.point);
        let mu = Rat::from(vd.mu.clone());
        out.coeff_vert.insert(
            (vd.point.clone(), vd.v.clone()),
            &mu * dot_ir(&mz, &vd.v) + &mu * Rat::from(g),
        );
    }
    for rho in &rays {
        let i = fan.items.iter().position(|it| it.tail().contains(rho)).unwrap();
        out.coeff_ray.insert(rho.clone(), Rat::from(dot(&theta.items[i].m, rho)));
    }
    for c in datum.colors() {
        let coeff = match fan
            .items
            .iter()
            .enumerate()
            .find(|(_, it)| it.colors.iter().any(|fc| fc.alpha == c.alpha))
        {
            Some((i, _)) => Rat::from(dot(&theta.items[i].m, &c.image)),
            None => Rat::from(theta.r_alpha.get(&c.alpha).cloned().unwrap_or_default()),
        };
        out.coeff_color.insert(c.alpha, coeff);
    }
    for pl in &theta.items {
        for (z, (_, g)) in &pl.at {
            if !special.contains(z) && !g.is_zero() && out.curve_part.coefficient(z).is_zero() {
                out.curve_part.add(z.clone(), Rat::from(g.clone()));
            }
        }
    }
    Ok(out)
}

/// Class of an integral B-stable divisor in Cl(X(Sigma)): the coordinate
/// vector in the generator order of `class_group`, with the curve part
/// contributing its degree to the point class on a complete base.
pub fn divisor_class(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    d: &BStableDivisor,
) -> Result<(Vec<Int>, crate::lattice::AbelianGroupPresentation)> {
    if !d.is_integral() {
        return Err(Error::InvalidInput("divisor_class: divisor is not integral".into()));
    }
    let pres = super::class_group(datum, fan)?;
    let (verts, rays) = fan.vert_and_ray()?;
    let complete = pres.generator_labels.first().map(|l| l == "[pt]").unwrap_or(false);
    let mut coords = Vec::new();
    if complete {
        coords.push(d.curve_part.degree().to_integer());
    }
    for vd in &verts {
        coords.push(coeff_int(d.coeff_vert.get(&(vd.point.clone(), vd.v.clone()))));
    }
    for rho in &rays {
        coords.push(coeff_int(d.coeff_ray.get(rho)));
    }
    for c in datum.colors() {
        coords.push(coeff_int(d.coeff_color.get(&c.alpha)));
    }
    Ok((coords, pres))
}

/// Q-Gorenstein certificate: minimal index d with d K_X Cartier, and the
/// realizing PL function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGorenstein {
    pub index: Int,
    pub theta: PLFunction,
    pub k_c: CurveQDivisor,
    pub moved_default: bool,
}

/// Minimal d > 0 making d K_X Cartier; None when the defining linear
/// system is rationally infeasible.
pub fn is_q_gorenstein(
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
) -> Result<Option<QGorenstein>> {
    let canonical = canonical_divisor(datum, fan, None)?;
    let (a, b, vars) = assemble_cartier_system(datum, fan, &canonical.divisor)?;
    let Some((index, x)) = solve_integer_minimal_dilation(&a, &b) else {
        return Ok(None);
    };
    let mut scaled = canonical.divisor.clone();
    let factor = Rat::from(index.clone());
    for c in scaled
        .coeff_vert
        .values_mut()
        .chain(scaled.coeff_ray.values_mut())
        .chain(scaled.coeff_color.values_mut())
    {
        *c *= &factor;
    }
    let scaled_curve = CurveQDivisor::from_pairs(
        scaled.curve_part.iter().map(|(z, c)| (z.clone(), c * &factor)),
    );
    scaled.curve_part = scaled_curve;
    let theta = theta_from_solution(datum, fan, &vars, &x, &scaled);
    Ok(Some(QGorenstein {
        index,
        theta,
        k_c: canonical.k_c,
        moved_default: canonical.moved_default,
    }))
}

/// Log-terminality of the simple model X(D): requires Q-Gorenstein; then
/// true iff the base is affine, or rational with
/// sum_z (1 - 1/mu_z) < 2 for mu_z the largest vertex multiplicity of
/// Delta_z.
pub fn is_log_terminal(
    datum: &HorosphericalDatum,
    d: &crate::pdiv::ColoredPolyhedralDivisor,
) -> Result<bool> {
    let fan = DivisorialFan::new(vec![d.clone()])?;
    if is_q_gorenstein(datum, &fan)?.is_none() {
        return Err(Error::Precondition("is_log_terminal: X(D) is not Q-Gorenstein".into()));
    }
    if d.curve.is_affine() {
        return Ok(true);
    }
    if d.curve.genus() >= 1 {
        return Ok(false);
    }
    let mut total = Rat::zero();
    for (_, p) in d.nontrivial_coeffs() {
        let mu_z = p.vertices().iter().map(|v| mu_of(v)).max().unwrap_or_else(Int::one);
        total += Rat::one() - Rat::new(Int::one(), mu_z);
    }
    Ok(total < Rat::from(Int::from(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures::{
        mu_pattern_item, sl3_datum, sl3_fan, sl3_item, torus_datum,
    };
    use crate::lattice::{int, rat};
    use crate::pdiv::{ColoredPolyhedralDivisor, CurveKind, CurveWithOpen};
    use crate::polyhedra::{Cone, Polyhedron};

    #[test]
    fn sl3_canonical_divisor() {
        let c = canonical_divisor(&sl3_datum(), &sl3_fan(), None).unwrap();
        assert!(!c.moved_default);
        let d = &c.divisor;
        assert_eq!(d.coeff_vert[&(Point::zero(), vec![rat(1, 2)])], rat(1, 1));
        assert_eq!(d.coeff_ray[&vec![int(1)]], rat(-1, 1));
        assert_eq!(d.coeff_color[&0], rat(-3, 1));
        assert_eq!(d.curve_part, CurveQDivisor::zero());
    }

    #[test]
    fn sl3_canonical_is_cartier() {
        let datum = sl3_datum();
        let fan = sl3_fan();
        let c = canonical_divisor(&datum, &fan, None).unwrap();
        let CartierStatus::Cartier(theta) = is_cartier(&datum, &fan, &c.divisor).unwrap() else {
            panic!("canonical divisor must be Cartier here");
        };
        assert_eq!(theta.items[0].m, vec![int(-1)]);
        assert_eq!(theta.items[0].at[&Point::zero()], (vec![int(-1)], int(1)));
        assert_eq!(theta.r_alpha[&0], int(-3));
        assert_eq!(pl_to_divisor(&datum, &fan, &theta).unwrap(), c.divisor);
    }

    #[test]
    fn sl3_vertex_divisor_is_not_cartier() {
        let datum = sl3_datum();
        let fan = sl3_fan();
        let mut d = BStableDivisor::zero();
        d.coeff_vert.insert((Point::zero(), vec![rat(1, 2)]), rat(1, 1));
        assert!(matches!(
            is_cartier(&datum, &fan, &d).unwrap(),
            CartierStatus::NotCartier(_)
        ));
    }

    #[test]
    fn principal_divisor_roundtrip_with_class_zero() {
        let datum = sl3_datum();
        let fan = sl3_fan();
        // theta of the principal pair (m = 2, f with div f = 3[1]).
        let theta = PLFunction {
            items: vec![PLItem {
                m: vec![int(2)],
                at: [
                    (Point::zero(), (vec![int(2)], int(0))),
                    (Point::finite(1, 1), (vec![int(2)], int(3))),
                ]
                .into(),
            }],
            // Principal pairs carry r_alpha = <m, rho(D_alpha)> on the
            // colors outside F_Sigma.
            r_alpha: [(0, int(2))].into(),
            assumed_principal: false,
        };
        let d = pl_to_divisor(&datum, &fan, &theta).unwrap();
        assert_eq!(d.curve_part.coefficient(&Point::finite(1, 1)), rat(3, 1));
        let CartierStatus::Cartier(back) = is_cartier(&datum, &fan, &d).unwrap() else {
            panic!("principal divisor must be Cartier");
        };
        assert_eq!(pl_to_divisor(&datum, &fan, &back).unwrap(), d);
        let (coords, pres) = divisor_class(&datum, &fan, &d).unwrap();
        assert!(pres.is_zero_class(&coords));
    }

    #[test]
    fn sl3_gorenstein_index_one() {
        let qg = is_q_gorenstein(&sl3_datum(), &sl3_fan()).unwrap().unwrap();
        assert_eq!(qg.index, int(1));
        assert_eq!(qg.theta.items[0].m, vec![int(-1)]);
        assert_eq!(qg.theta.items[0].at[&Point::zero()], (vec![int(-1)], int(1)));
        assert_eq!(qg.theta.r_alpha[&0], int(-3));
    }

    #[test]
    fn six_item_fan_gorenstein_index_one() {
        use crate::pdiv::Point;
        let mut items = Vec::new();
        for removed in [Point::Infinity, Point::zero()] {
            let curve = CurveWithOpen { kind: CurveKind::P1, removed: [removed].into() };
            for tail in [
                Cone::from_rays(1, &[vec![int(1)]]),
                Cone::from_rays(1, &[vec![int(-1)]]),
                Cone::zero(1),
            ] {
                items.push(
                    ColoredPolyhedralDivisor::trivial(curve.clone(), tail, vec![]).unwrap(),
                );
            }
        }
        let fan = DivisorialFan::new(items).unwrap();
        let qg = is_q_gorenstein(&torus_datum(1), &fan).unwrap().unwrap();
        assert_eq!(qg.index, int(1));
    }

    #[test]
    fn log_terminal_patterns() {
        let datum = torus_datum(1);
        assert!(is_log_terminal(&datum, &mu_pattern_item(&[2, 3, 5])).unwrap());
        assert!(!is_log_terminal(&datum, &mu_pattern_item(&[2, 3, 7])).unwrap());
        assert!(is_log_terminal(&datum, &mu_pattern_item(&[1, 1, 1])).unwrap());
        assert!(is_log_terminal(&sl3_datum(), &sl3_item()).unwrap());
    }

    #[test]
    fn rationally_infeasible_gorenstein() {
        // Two rays pin m = (-d, -d); the vertex and principality rows then
        // force d = 0, so no positive index exists.
        let sigma = Cone::from_rays(2, &[vec![int(1), int(0)], vec![int(0), int(1)]]);
        let v0 = Polyhedron::new(2, &[vec![rat(1, 3), rat(2, 3)]], &sigma).unwrap();
        let vinf = Polyhedron::new(2, &[vec![rat(1, 3), rat(-1, 3)]], &sigma).unwrap();
        let d = ColoredPolyhedralDivisor::new(
            CurveWithOpen { kind: CurveKind::P1, removed: [].into() },
            sigma,
            [(Point::zero(), v0), (Point::Infinity, vinf)].into(),
            vec![],
        )
        .unwrap();
        assert!(d.is_proper().unwrap().proper);
        let fan = DivisorialFan::new(vec![d]).unwrap();
        assert!(is_q_gorenstein(&torus_datum(2), &fan).unwrap().is_none());
    }

    #[test]
    fn smooth_projective_item_gorenstein_index_one() {
        let sigma = Cone::from_rays(1, &[vec![int(1)]]);
        let one = Polyhedron::new(1, &[vec![rat(1, 1)]], &sigma).unwrap();
        let d = ColoredPolyhedralDivisor::new(
            CurveWithOpen { kind: CurveKind::P1, removed: [].into() },
            sigma,
            [(Point::zero(), one)].into(),
            vec![],
        )
        .unwrap();
        let fan = DivisorialFan::new(vec![d]).unwrap();
        let qg = is_q_gorenstein(&torus_datum(1), &fan).unwrap().unwrap();
        assert_eq!(qg.index, int(1));
    }
}
