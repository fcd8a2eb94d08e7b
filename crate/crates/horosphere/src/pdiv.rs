//! Colored sigma-polyhedral divisors on a curve with an open subset:
//! evaluation D(m), degree polytope, properness, localization, hypercone
//! slices, vertices/rays, and G-valuations.

use crate::error::{Error, Result};
use crate::lattice::{denominator_lcm, dot, dot_ir, primitive, Int, Rat};
use crate::polyhedra::{Cone, Polyhedron, SupportValue};
use crate::rootdata::Color;
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A closed point of the curve. Only equality and ordering matter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    Finite(Rat),
    Infinity,
    Named(String),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(q) => write!(f, "{q}"),
            Point::Infinity => write!(f, "inf"),
            Point::Named(s) => write!(f, "{s}"),
        }
    }
}

impl Point {
    pub fn finite(n: i64, d: i64) -> Point {
        Point::Finite(crate::lattice::rat(n, d))
    }

    pub fn zero() -> Point {
        Point::finite(0, 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveKind {
    /// The projective line; points are rationals plus infinity.
    P1,
    /// A smooth projective curve of positive genus; points are opaque.
    Abstract { genus: usize },
}

/// The curve C together with the open subset C0 = C minus `removed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveWithOpen {
    pub kind: CurveKind,
    pub removed: BTreeSet<Point>,
}

impl CurveWithOpen {
    pub fn p1() -> CurveWithOpen {
        CurveWithOpen { kind: CurveKind::P1, removed: BTreeSet::new() }
    }

    pub fn affine_line() -> CurveWithOpen {
        CurveWithOpen { kind: CurveKind::P1, removed: [Point::Infinity].into() }
    }

    pub fn genus(&self) -> usize {
        match self.kind {
            CurveKind::P1 => 0,
            CurveKind::Abstract { genus } => genus,
        }
    }

    /// C0 is affine exactly when at least one point has been removed.
    pub fn is_affine(&self) -> bool {
        !self.removed.is_empty()
    }

    pub fn is_projective(&self) -> bool {
        self.removed.is_empty()
    }

    pub fn contains(&self, z: &Point) -> bool {
        !self.removed.contains(z)
    }

    /// Degree of the canonical class of C.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus() as i64 - 2
    }
}

/// A Q-divisor on the curve: finite support, rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CurveQDivisor {
    coeffs: BTreeMap<Point, Rat>,
}

impl CurveQDivisor {
    pub fn zero() -> CurveQDivisor {
        CurveQDivisor::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Point, Rat)>) -> CurveQDivisor {
        let mut d = CurveQDivisor::zero();
        for (z, c) in pairs {
            d.add(z, c);
        }
        d
    }

    pub fn add(&mut self, z: Point, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(z).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            // Re-borrow to remove; clone the key lookup via retain.
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coefficient(&self, z: &Point) -> Rat {
        self.coeffs.get(z).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.coeffs.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &Rat)> {
        self.coeffs.iter()
    }

    pub fn degree(&self) -> Rat {
        self.coeffs.values().cloned().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Entrywise floor.
    pub fn floor(&self) -> CurveQDivisor {
        CurveQDivisor::from_pairs(
            self.coeffs.iter().map(|(z, c)| (z.clone(), Rat::from(c.floor().to_integer()))),
        )
    }

    pub fn plus(&self, other: &CurveQDivisor) -> CurveQDivisor {
        let mut out = self.clone();
        for (z, c) in &other.coeffs {
            out.add(z.clone(), c.clone());
        }
        out
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }
}

/// A B-eigenfunction f chi^m, represented by its weight and div f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BEigenfunction {
    pub weight: Vec<Int>,
    pub div_f: CurveQDivisor,
}

/// A G-valuation (z, v, l) with l >= 0; when l = 0 the point is
/// irrelevant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GValuation {
    pub point: Option<Point>,
    pub v: Vec<Rat>,
    pub l: Rat,
}

impl GValuation {
    /// min_i (<m_i, v> + l ord_z f_i) over the eigenfunction terms.
    pub fn apply(&self, terms: &[BEigenfunction]) -> Result<Rat> {
        if terms.is_empty() {
            return Err(Error::Precondition("gvaluation_apply: empty term list".into()));
        }
        terms
            .iter()
            .map(|t| {
                let ord = match (&self.point, self.l.is_zero()) {
                    (Some(z), false) => t.div_f.coefficient(z),
                    _ => Rat::zero(),
                };
                dot_ir(&t.weight, &self.v) + &self.l * ord
            })
            .min()
            .ok_or_else(|| Error::Precondition("empty minimum".into()))
    }
}

/// A vertex (z, v) of some coefficient polyhedron, with mu(v) = smallest
/// d > 0 making d v integral.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexDatum {
    pub point: Point,
    pub v: Vec<Rat>,
    pub mu: Int,
}

/// Properness verdict with its reasoning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Properness {
    pub proper: bool,
    pub reason: String,
    /// Set when principality on a positive-genus curve was assumed rather
    /// than proven (only the degree-0 necessary condition was checked).
    pub assumed_principal: bool,
}

/// A colored sigma-polyhedral divisor (D, F): tail cone sigma, coefficient
/// polyhedra Delta_z on C0 (absent points mean Delta_z = sigma), color set
/// F with 0 not in rho(F) and rho(F) inside sigma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPolyhedralDivisor {
    pub curve: CurveWithOpen,
    tail: Cone,
    coeffs: BTreeMap<Point, Polyhedron>,
    pub colors: Vec<Color>,
}

impl ColoredPolyhedralDivisor {
    pub fn new(
        curve: CurveWithOpen,
        tail: Cone,
        coeffs: BTreeMap<Point, Polyhedron>,
        colors: Vec<Color>,
    ) -> Result<ColoredPolyhedralDivisor> {
        if !tail.is_strongly_convex() {
            return Err(Error::InvalidInput("tail cone must be strongly convex".into()));
        }
        for c in &colors {
            if c.image.iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidInput(format!(
                    "color {} has image 0, forbidden",
                    c.label
                )));
            }
            if !tail.contains(&c.image) {
                return Err(Error::InvalidInput(format!(
                    "color {} image lies outside the tail cone",
                    c.label
                )));
            }
        }
        let mut cleaned = BTreeMap::new();
        for (z, p) in coeffs {
            if !curve.contains(&z) {
                return Err(Error::InvalidInput(format!(
                    "coefficient at removed point {z}"
                )));
            }
            if p.tail() != &tail {
                return Err(Error::InvalidInput(format!(
                    "coefficient at {z} has a different tail cone"
                )));
            }
            if !p.is_trivial() {
                cleaned.insert(z, p);
            }
        }
        let mut colors = colors;
        colors.sort();
        colors.dedup();
        Ok(ColoredPolyhedralDivisor { curve, tail, coeffs: cleaned, colors })
    }

    /// Divisor with all coefficients trivial.
    pub fn trivial(curve: CurveWithOpen, tail: Cone, colors: Vec<Color>) -> Result<Self> {
        Self::new(curve, tail, BTreeMap::new(), colors)
    }

    pub fn rank(&self) -> usize {
        self.tail.ambient
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    /// Points carrying a nontrivial coefficient.
    pub fn nontrivial_points(&self) -> impl Iterator<Item = &Point> {
        self.coeffs.keys()
    }

    pub fn coefficient(&self, z: &Point) -> Polyhedron {
        self.coeffs.get(z).cloned().unwrap_or_else(|| Polyhedron::trivial(&self.tail))
    }

    pub fn nontrivial_coeffs(&self) -> impl Iterator<Item = (&Point, &Polyhedron)> {
        self.coeffs.iter()
    }

    /// D(m) = sum_z min_{v in Delta_z} <m, v> [z] for m in the dual of the
    /// tail cone.
    pub fn evaluate(&self, m: &[Int]) -> Result<CurveQDivisor> {
        let mut out = CurveQDivisor::zero();
        for (z, p) in &self.coeffs {
            match p.support_value(m) {
                SupportValue::Finite(c) => out.add(z.clone(), c),
                SupportValue::MinusInfinity => {
                    return Err(Error::Precondition(
                        "evaluate: m outside the dual of the tail cone".into(),
                    ))
                }
            }
        }
        // m must also be nonnegative on the tail itself.
        if self.tail.rays().iter().any(|r| dot(m, r).is_negative()) {
            return Err(Error::Precondition(
                "evaluate: m outside the dual of the tail cone".into(),
            ));
        }
        Ok(out)
    }

    /// deg D = Minkowski sum of all coefficients; projective base only.
    pub fn degree_polytope(&self) -> Result<Polyhedron> {
        if !self.curve.is_projective() {
            return Err(Error::Precondition("degree_polytope: base must be projective".into()));
        }
        let mut acc = Polyhedron::trivial(&self.tail);
        for p in self.coeffs.values() {
            acc = acc.minkowski_sum(p)?;
        }
        Ok(acc)
    }

    /// Properness: automatic on affine C0; on projective C it requires
    /// deg D properly contained in sigma plus principality of multiples of
    /// D(m) on the zero-minimum face of the dual cone.
    pub fn is_proper(&self) -> Result<Properness> {
        if self.curve.is_affine() {
            return Ok(Properness {
                proper: true,
                reason: "C0 is affine".into(),
                assumed_principal: false,
            });
        }
        let deg = self.degree_polytope()?;
        // deg is contained in sigma iff all its vertices are; since the
        // tails agree, deg equals sigma iff it contains 0.
        for v in deg.vertices() {
            if !self.tail.contains_rat(v) {
                return Ok(Properness {
                    proper: false,
                    reason: "deg D is not contained in the tail cone".into(),
                    assumed_principal: false,
                });
            }
        }
        let zero = vec![Rat::zero(); self.rank()];
        if deg.contains(&zero) {
            return Ok(Properness {
                proper: false,
                reason: "deg D equals the tail cone (0 lies in deg D)".into(),
                assumed_principal: false,
            });
        }
        // Zero-minimum face of the dual cone: m with min over deg D of
        // <m, .> equal to 0. deg(D(m)) is exactly that minimum, so on P1
        // (genus 0) a multiple of D(m) is principal automatically; on
        // higher genus only the degree-0 necessary condition holds.
        let mut assumed = false;
        if self.curve.genus() > 0 {
            let dual = self.tail.dual();
            let gens: Vec<Vec<Int>> = dual
                .rays()
                .iter()
                .cloned()
                .chain(dual.lineality().iter().flat_map(|l| {
                    [l.clone(), l.iter().map(|x| -x).collect()]
                }))
                .collect();
            for m in &gens {
                let min = deg
                    .support_value(m)
                    .finite()
                    .cloned()
                    .unwrap_or_else(Rat::zero);
                if min.is_zero() && m.iter().any(|x| !x.is_zero()) {
                    assumed = true;
                }
            }
        }
        Ok(Properness {
            proper: true,
            reason: "deg D is a proper subset of the tail cone; degree-0 \
                     principality holds on the zero-minimum face"
                .into(),
            assumed_principal: assumed,
        })
    }

    /// Localization by w and an eigenfunction f of weight w: restrict the
    /// base to the complement of Supp(div f + D(w)), take faces in
    /// direction w, cut the tail by w-perp, keep colors with image in
    /// w-perp.
    pub fn localize(&self, w: &[Int], f: &BEigenfunction) -> Result<ColoredPolyhedralDivisor> {
        if f.weight != w {
            return Err(Error::Precondition("localize: eigenfunction weight differs from w".into()));
        }
        let dw = self.evaluate(w)?;
        let total = f.div_f.plus(&dw);
        // Section condition on C0 only: points outside C0 do not constrain.
        for (z, c) in total.iter() {
            if self.curve.contains(z) && c.is_negative() {
                return Err(Error::Precondition(
                    "localize: f chi^w is not a section (div f + D(w) has a negative \
                     coefficient on C0)"
                        .into(),
                ));
            }
        }
        if self.curve.is_projective() && self.curve.genus() == 0 {
            if !f.div_f.degree().is_zero() {
                return Err(Error::Precondition(
                    "localize: div f must have degree 0 on the projective line".into(),
                ));
            }
        }
        let mut curve = self.curve.clone();
        for (z, c) in total.iter() {
            if !c.is_zero() {
                curve.removed.insert(z.clone());
            }
        }
        let face_tail = self.tail.face_at(w);
        let mut coeffs = BTreeMap::new();
        for (z, p) in &self.coeffs {
            if !curve.contains(z) {
                continue;
            }
            let face = p.face_of(w)?;
            // Rebuild on the localized tail (identical cone, canonical).
            let q = Polyhedron::new(self.rank(), face.vertices(), &face_tail)?;
            coeffs.insert(z.clone(), q);
        }
        let colors: Vec<Color> = self
            .colors
            .iter()
            .filter(|c| dot(w, &c.image).is_zero())
            .cloned()
            .collect();
        ColoredPolyhedralDivisor::new(curve, face_tail, coeffs, colors)
    }

    /// The hypercone slice at z: cone generated by sigma x {0} and
    /// Delta_z x {1} in N_Q x Q.
    pub fn slice(&self, z: &Point) -> Result<Cone> {
        if !self.curve.contains(z) {
            return Err(Error::Precondition(format!("slice: {z} lies outside C0")));
        }
        Ok(self.coefficient(z).homogenization().clone())
    }

    /// Slice over a generic point: cone(sigma x {0}, (0,1)).
    pub fn generic_slice(&self) -> Cone {
        Polyhedron::trivial(&self.tail).homogenization().clone()
    }

    /// Vert(D) with multiplicities, and Ray(D, F) after the color filter
    /// (plus the degree filter on projective base).
    pub fn vertices_and_rays(&self) -> Result<(Vec<VertexDatum>, Vec<Vec<Int>>)> {
        let properness = self.is_proper()?;
        if !properness.proper {
            return Err(Error::Precondition("vertices_and_rays: divisor is not proper".into()));
        }
        let mut verts = Vec::new();
        for (z, p) in &self.coeffs {
            for v in p.vertices() {
                verts.push(VertexDatum {
                    point: z.clone(),
                    v: v.clone(),
                    mu: denominator_lcm(v),
                });
            }
        }
        let deg = if self.curve.is_projective() {
            Some(self.degree_polytope()?)
        } else {
            None
        };
        let mut rays = Vec::new();
        for rho in self.tail.rays() {
            let absorbed = self.colors.iter().any(|c| primitive(&c.image) == *rho);
            if absorbed {
                continue;
            }
            if let Some(deg) = &deg {
                if ray_meets_polyhedron(rho, deg) {
                    continue;
                }
            }
            rays.push(rho.clone());
        }
        Ok((verts, rays))
    }

    /// Hilbert coefficient max(0, deg floor(D(m)) + 1) on a projective
    /// genus-0 base.
    pub fn graded_dim(&self, m: &[Int]) -> Result<Int> {
        if !self.curve.is_projective() || self.curve.genus() != 0 {
            return Err(Error::Precondition(
                "graded_dim requires a projective base of genus 0".into(),
            ));
        }
        let d = self.evaluate(m)?.floor().degree();
        debug_assert!(d.is_integer());
        let d: Int = d.to_integer() + 1;
        Ok(if d.is_negative() { Int::zero() } else { d })
    }

    /// Same polyhedral data with the color set emptied.
    pub fn decolor(&self) -> ColoredPolyhedralDivisor {
        let mut out = self.clone();
        out.colors.clear();
        out
    }
}

/// Does the ray through `rho` (excluding 0) meet the polyhedron? One-
/// variable exact feasibility over t > 0 using the homogenization facets.
pub fn ray_meets_polyhedron(rho: &[Int], p: &Polyhedron) -> bool {
    // (t rho, 1) must satisfy <n, .> >= 0 for every facet normal of the
    // homogenization: t <n_x, rho> + n_l >= 0.
    let ambient = p.ambient;
    let mut lower = Rat::zero(); // implicit t >= 0; t = 0 handled below
    let mut upper: Option<Rat> = None;
    for n in p.homogenization().normals() {
        let a = dot(&n[..ambient], rho);
        let b = Rat::from(n[ambient].clone());
        if a.is_zero() {
            if b.is_negative() {
                return false;
            }
            continue;
        }
        let bound = -b / Rat::from(a.clone());
        if a.is_positive() {
            if bound > lower {
                lower = bound;
            }
        } else {
            upper = Some(match upper {
                None => bound.clone(),
                Some(u) if bound < u => bound,
                Some(u) => u,
            });
        }
    }
    match upper {
        None => true, // interval [max(lower, 0+), infinity)
        Some(u) => {
            if u > lower {
                true
            } else if u == lower {
                // Single candidate t = u; needs t > 0.
                u.is_positive()
            } else {
                false
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, rat};

    fn ray_sigma() -> Cone {
        Cone::from_rays(1, &[vec![int(1)]])
    }

    /// The SL3 worked example: C0 = A^1, sigma = Q>=0, Delta_0 = [1/2, oo),
    /// one color with image 1.
    fn sl3_divisor() -> ColoredPolyhedralDivisor {
        let sigma = ray_sigma();
        let delta0 = Polyhedron::new(1, &[vec![rat(1, 2)]], &sigma).unwrap();
        let color = Color { alpha: 0, label: "alpha1".into(), image: vec![int(1)] };
        ColoredPolyhedralDivisor::new(
            CurveWithOpen::affine_line(),
            sigma,
            [(Point::zero(), delta0)].into(),
            vec![color],
        )
        .unwrap()
    }

    /// Delta_0 = Delta_inf = [1/2, oo) on P1, no colors.
    fn p1_half_half() -> ColoredPolyhedralDivisor {
        let sigma = ray_sigma();
        let half = Polyhedron::new(1, &[vec![rat(1, 2)]], &sigma).unwrap();
        ColoredPolyhedralDivisor::new(
            CurveWithOpen::p1(),
            sigma,
            [(Point::zero(), half.clone()), (Point::Infinity, half)].into(),
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let d = sl3_divisor();
        let e = d.evaluate(&[int(2)]).unwrap();
        assert_eq!(e.coefficient(&Point::zero()), rat(1, 1));
        assert_eq!(d.evaluate(&[int(0)]).unwrap(), CurveQDivisor::zero());
        let trivial =
            ColoredPolyhedralDivisor::trivial(CurveWithOpen::affine_line(), ray_sigma(), vec![])
                .unwrap();
        assert_eq!(trivial.evaluate(&[int(5)]).unwrap(), CurveQDivisor::zero());
        assert!(d.evaluate(&[int(-1)]).is_err());
    }

    #[test]
    fn floor_examples() {
        let half = CurveQDivisor::from_pairs([(Point::zero(), rat(1, 2))]);
        assert_eq!(half.floor(), CurveQDivisor::zero());
        let d = CurveQDivisor::from_pairs([(Point::zero(), rat(-1, 3)), (Point::Infinity, rat(5, 6))]);
        assert_eq!(
            d.floor(),
            CurveQDivisor::from_pairs([(Point::zero(), rat(-1, 1))])
        );
        let integral = CurveQDivisor::from_pairs([(Point::zero(), rat(3, 1))]);
        assert_eq!(integral.floor(), integral);
    }

    #[test]
    fn degree_polytope_examples() {
        let d = p1_half_half();
        let deg = d.degree_polytope().unwrap();
        assert_eq!(deg.vertices(), [vec![rat(1, 1)]]);
        let trivial =
            ColoredPolyhedralDivisor::trivial(CurveWithOpen::p1(), ray_sigma(), vec![]).unwrap();
        assert!(trivial.degree_polytope().unwrap().is_trivial());
        // Three coefficients -1/3, -1/3, 5/6 sum to 1/6.
        let sigma = ray_sigma();
        let mk = |n, dd| Polyhedron::new(1, &[vec![rat(n, dd)]], &sigma).unwrap();
        let d3 = ColoredPolyhedralDivisor::new(
            CurveWithOpen::p1(),
            sigma.clone(),
            [
                (Point::zero(), mk(-1, 3)),
                (Point::finite(1, 1), mk(-1, 3)),
                (Point::Infinity, mk(5, 6)),
            ]
            .into(),
            vec![],
        )
        .unwrap();
        assert_eq!(d3.degree_polytope().unwrap().vertices(), [vec![rat(1, 6)]]);
    }

    #[test]
    fn properness_examples() {
        assert!(sl3_divisor().is_proper().unwrap().proper);
        let trivial =
            ColoredPolyhedralDivisor::trivial(CurveWithOpen::p1(), ray_sigma(), vec![]).unwrap();
        let p = trivial.is_proper().unwrap();
        assert!(!p.proper);
        assert!(p1_half_half().is_proper().unwrap().proper);
    }

    #[test]
    fn slice_examples() {
        let d = sl3_divisor();
        let s = d.slice(&Point::zero()).unwrap();
        assert_eq!(s, Cone::from_rays(2, &[vec![int(1), int(0)], vec![int(1), int(2)]]));
        let g = d.generic_slice();
        assert_eq!(g, Cone::from_rays(2, &[vec![int(0), int(1)], vec![int(1), int(0)]]));
        // Delta = conv{0,1} + [0,oo): redundant generator (1,1) collapses.
        let sigma = ray_sigma();
        let p = Polyhedron::new(1, &[vec![rat(0, 1)], vec![rat(1, 1)]], &sigma).unwrap();
        let d2 = ColoredPolyhedralDivisor::new(
            CurveWithOpen::affine_line(),
            sigma,
            [(Point::zero(), p)].into(),
            vec![],
        )
        .unwrap();
        let s2 = d2.slice(&Point::zero()).unwrap();
        assert_eq!(s2, Cone::from_rays(2, &[vec![int(0), int(1)], vec![int(1), int(0)]]));
        assert!(d.slice(&Point::Infinity).is_err());
    }

    #[test]
    fn vertices_and_rays_examples() {
        let d = sl3_divisor();
        let (verts, rays) = d.vertices_and_rays().unwrap();
        assert_eq!(verts.len(), 1);
        assert_eq!(verts[0].point, Point::zero());
        assert_eq!(verts[0].v, vec![rat(1, 2)]);
        assert_eq!(verts[0].mu, int(2));
        // The single ray of sigma is absorbed by the color with image 1.
        assert!(rays.is_empty());

        // Without colors the ray survives on the affine line.
        let trivial =
            ColoredPolyhedralDivisor::trivial(CurveWithOpen::affine_line(), ray_sigma(), vec![])
                .unwrap();
        let (verts, rays) = trivial.vertices_and_rays().unwrap();
        assert!(verts.is_empty());
        assert_eq!(rays, vec![vec![int(1)]]);
    }

    #[test]
    fn ray_degree_filter() {
        // deg D = [1, oo) meets the ray Q>0, so the ray is filtered out on
        // the projective base.
        let d = p1_half_half();
        let (_, rays) = d.vertices_and_rays().unwrap();
        assert!(rays.is_empty());
        let deg = d.degree_polytope().unwrap();
        assert!(ray_meets_polyhedron(&[int(1)], &deg));
        assert!(!ray_meets_polyhedron(&[int(-1)], &deg));
    }

    #[test]
    fn localization_examples() {
        let d = sl3_divisor();
        // w = 0, f = t with div f = [0] - [inf]; on C0 = A^1 only [0]
        // matters; the support of div f + D(0) = [0] is removed.
        let f = BEigenfunction {
            weight: vec![int(0)],
            div_f: CurveQDivisor::from_pairs([
                (Point::zero(), rat(1, 1)),
                (Point::Infinity, rat(-1, 1)),
            ]),
        };
        let loc = d.localize(&[int(0)], &f).unwrap();
        assert!(loc.curve.removed.contains(&Point::zero()));
        assert_eq!(loc.nontrivial_points().count(), 0);
        assert_eq!(loc.colors.len(), 1);
        assert_eq!(loc.tail(), d.tail());

        // w = 2, div f = -[0]: div f + D(2) = 0, base stays A^1, the
        // coefficient becomes the face {1/2}, tail shrinks to {0}, color
        // with image 1 is dropped.
        let f2 = BEigenfunction {
            weight: vec![int(2)],
            div_f: CurveQDivisor::from_pairs([
                (Point::zero(), rat(-1, 1)),
                (Point::Infinity, rat(1, 1)),
            ]),
        };
        let loc2 = d.localize(&[int(2)], &f2).unwrap();
        assert!(loc2.curve.removed.len() == 1); // still only infinity
        let c = loc2.coefficient(&Point::zero());
        assert_eq!(c.vertices(), [vec![rat(1, 2)]]);
        assert!(c.tail().is_zero());
        assert!(loc2.colors.is_empty());
    }

    #[test]
    fn gvaluation_examples() {
        // l = 0: only the weight pairing matters.
        let u = GValuation { point: None, v: vec![rat(1, 1)], l: rat(0, 1) };
        let t1 = BEigenfunction { weight: vec![int(3)], div_f: CurveQDivisor::zero() };
        assert_eq!(u.apply(std::slice::from_ref(&t1)).unwrap(), rat(3, 1));
        // (0, 1/2, 1) applied to weight 2, f = 1: 2 * 1/2 + 0 = 1.
        let u2 = GValuation {
            point: Some(Point::zero()),
            v: vec![rat(1, 2)],
            l: rat(1, 1),
        };
        let t2 = BEigenfunction { weight: vec![int(2)], div_f: CurveQDivisor::zero() };
        assert_eq!(u2.apply(std::slice::from_ref(&t2)).unwrap(), rat(1, 1));
        // Minimum of several terms.
        let t3 = BEigenfunction { weight: vec![int(1)], div_f: CurveQDivisor::zero() };
        assert_eq!(u.apply(&[t1, t3]).unwrap(), rat(1, 1));
        assert!(u.apply(&[]).is_err());
    }

    #[test]
    fn graded_dim_examples() {
        let d = p1_half_half();
        assert_eq!(d.graded_dim(&[int(2)]).unwrap(), int(3));
        assert_eq!(d.graded_dim(&[int(0)]).unwrap(), int(1));
        assert_eq!(d.graded_dim(&[int(1)]).unwrap(), int(1));
        // Negative floor degree clips to zero.
        let sigma = ray_sigma();
        let mk = |n, dd| Polyhedron::new(1, &[vec![rat(n, dd)]], &sigma).unwrap();
        let neg = ColoredPolyhedralDivisor::new(
            CurveWithOpen::p1(),
            sigma.clone(),
            [
                (Point::zero(), mk(-1, 3)),
                (Point::finite(1, 1), mk(-1, 3)),
                (Point::Infinity, mk(5, 6)),
            ]
            .into(),
            vec![],
        )
        .unwrap();
        assert_eq!(neg.graded_dim(&[int(1)]).unwrap(), int(0));
        assert!(sl3_divisor().graded_dim(&[int(1)]).is_err());
    }

    #[test]
    fn superadditivity_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let sigma = ray_sigma();
        for _ in 0..30 {
            let npts = rng.gen_range(1..=3);
            let mut coeffs = BTreeMap::new();
            for i in 0..npts {
                let v = rat(rng.gen_range(-4..=4), rng.gen_range(1..=4));
                coeffs.insert(
                    Point::finite(i as i64, 1),
                    Polyhedron::new(1, &[vec![v]], &sigma).unwrap(),
                );
            }
            let d = ColoredPolyhedralDivisor::new(
                CurveWithOpen::affine_line(),
                sigma.clone(),
                coeffs,
                vec![],
            )
            .unwrap();
            for _ in 0..10 {
                let m1 = vec![int(rng.gen_range(0..=5))];
                let m2 = vec![int(rng.gen_range(0..=5))];
                let msum = vec![&m1[0] + &m2[0]];
                let e1 = d.evaluate(&m1).unwrap();
                let e2 = d.evaluate(&m2).unwrap();
                let es = d.evaluate(&msum).unwrap();
                for z in es.support() {
                    assert!(e1.coefficient(z) + e2.coefficient(z) <= es.coefficient(z));
                }
            }
        }
    }

    #[test]
    fn degree_of_evaluation_matches_degree_polytope() {
        let d = p1_half_half();
        let deg = d.degree_polytope().unwrap();
        for m in 0..6 {
            let e = d.evaluate(&[int(m)]).unwrap();
            assert_eq!(
                SupportValue::Finite(e.degree()),
                deg.support_value(&[int(m)])
            );
        }
    }

    #[test]
    fn slice_level_sets() {
        let d = sl3_divisor();
        let s = d.slice(&Point::zero()).unwrap();
        // l = 0 slice is sigma x {0}.
        for r in s.rays() {
            assert!(!r[1].is_negative());
        }
        // Level 1 recovers Delta_z: (1/2, 1) lies inside.
        assert!(s.contains_rat(&[rat(1, 2), rat(1, 1)]));
        assert!(!s.contains_rat(&[rat(1, 4), rat(1, 1)]));
    }
}
