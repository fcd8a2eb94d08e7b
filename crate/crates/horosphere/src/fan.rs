//! Colored divisorial fans: coherence validation, support and
//! completeness, germ enumeration with colored data, decoloration, and
//! regular resolution by slice subdivision.

use crate::error::{Error, Result};
use crate::lattice::{denominator_lcm, Int, Rat};
use crate::pdiv::{ColoredPolyhedralDivisor, CurveWithOpen, Point, VertexDatum};
use crate::polyhedra::{
    parallelepiped_point, stellar_subdivide, triangulate, Cone, Polyhedron,
};
use crate::rootdata::Color;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A point of the curve at which slices are compared: either a concrete
/// point or a symbolic generic point (one representative of the constant
/// behavior away from the finitely many special points).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckedPoint {
    At(Point),
    Generic,
}

impl std::fmt::Display for CheckedPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckedPoint::At(z) => write!(f, "{z}"),
            CheckedPoint::Generic => write!(f, "generic"),
        }
    }
}

/// A finite coherent collection of colored polyhedral divisors on a common
/// curve with a common lattice N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialFan {
    pub items: Vec<ColoredPolyhedralDivisor>,
}

/// Kind of a germ (G-stable irreducible closed subvariety) datum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GermKind {
    /// A nonzero face of some tail cone, shared across all points.
    Horizontal,
    /// A face of the slice at a special point, not inside N x {0}.
    VerticalSpecial(Point),
    /// A face of the generic slice, one symbolic family per face.
    VerticalGeneric,
    /// The whole hypercone of a projective-support item (case B).
    Hyper,
}

/// Colored datum of a germ: the underlying cone piece in N x Z (None for
/// the case-B whole hypercone) plus the colors containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermDatum {
    pub kind: GermKind,
    /// For Horizontal: the face embedded as F x {0}; for Vertical kinds the
    /// slice face; None for Hyper.
    pub cone: Option<Cone>,
    pub colors: Vec<Color>,
    /// Indices of items whose hypercone contains this germ.
    pub owners: Vec<usize>,
    /// The datum corresponds to a prime divisor: a colorless ray germ or a
    /// colorless vertex germ over a special point.
    pub is_divisorial: bool,
}

/// Outcome of `resolve`: the resolved fan plus the exceptional parameters.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub fan: DivisorialFan,
    /// Rays of the resolved fan not present in the input (as Ray data).
    pub exceptional_rays: Vec<Vec<Int>>,
    /// Vertices (z, v) of the resolved fan not present in the input.
    pub exceptional_vertices: Vec<VertexDatum>,
    /// Germ data removed by decoloration (color sets that were dropped).
    pub decolored_germs: Vec<GermDatum>,
}

impl DivisorialFan {
    pub fn new(items: Vec<ColoredPolyhedralDivisor>) -> Result<DivisorialFan> {
        if items.is_empty() {
            return Err(Error::InvalidInput("divisorial fan needs at least one item".into()));
        }
        let rank = items[0].rank();
        let kind = items[0].curve.kind.clone();
        for it in &items {
            if it.rank() != rank {
                return Err(Error::InvalidInput("items live in different lattices".into()));
            }
            if it.curve.kind != kind {
                return Err(Error::InvalidInput("items live on different curves".into()));
            }
        }
        Ok(DivisorialFan { items })
    }

    pub fn rank(&self) -> usize {
        self.items[0].rank()
    }

    pub fn curve_kind(&self) -> &crate::pdiv::CurveKind {
        &self.items[0].curve.kind
    }

    /// Points at which some item has a nontrivial coefficient.
    pub fn special_points(&self) -> BTreeSet<Point> {
        self.items
            .iter()
            .flat_map(|it| it.nontrivial_points().cloned())
            .collect()
    }

    /// Points to compare slices at: the special points plus the symbolic
    /// generic point.
    pub fn checked_points(&self) -> Vec<CheckedPoint> {
        let mut out: Vec<CheckedPoint> =
            self.special_points().into_iter().map(CheckedPoint::At).collect();
        out.push(CheckedPoint::Generic);
        out
    }

    /// Slice of item i at a checked point, with the convention that a point
    /// outside C0^i contributes only the tail part sigma_i x {0}.
    pub fn slice_at(&self, i: usize, z: &CheckedPoint) -> Cone {
        let item = &self.items[i];
        match z {
            CheckedPoint::Generic => item.generic_slice(),
            CheckedPoint::At(p) => {
                if item.curve.contains(p) {
                    item.slice(p).expect("point is in C0")
                } else {
                    tail_times_zero(item.tail())
                }
            }
        }
    }

    /// Coherence: for every pair (i, j) and every checked point z, the
    /// slice intersection is a common face realized (with matching colors)
    /// by some item of the fan.
    pub fn validate(&self) -> Result<()> {
        // Per-item sanity: projective-support items are case-B hypercones
        // and must be proper for strong convexity (0 outside deg D).
        for (i, it) in self.items.iter().enumerate() {
            if it.curve.is_projective() {
                let p = it.is_proper()?;
                if !p.proper {
                    return Err(Error::InvalidInput(format!(
                        "item {i}: projective support but improper ({})",
                        p.reason
                    )));
                }
            }
        }
        let checked = self.checked_points();
        let n = self.items.len();
        for z in &checked {
            // Slices are recomputed once per point, and items are grouped by
            // slice so realization lookups touch only the matching items.
            let slices: Vec<Cone> = (0..n).map(|i| self.slice_at(i, z)).collect();
            let mut by_slice: BTreeMap<(Vec<Vec<Int>>, Vec<Vec<Int>>), Vec<usize>> =
                BTreeMap::new();
            for (i, s) in slices.iter().enumerate() {
                by_slice
                    .entry((s.rays().to_vec(), s.lineality().to_vec()))
                    .or_default()
                    .push(i);
            }
            for i in 0..n {
                for j in i + 1..n {
                    self.validate_pair_at(i, j, z, &slices, &by_slice)?;
                }
            }
        }
        Ok(())
    }

    #[allow(clippy::type_complexity)]
    fn validate_pair_at(
        &self,
        i: usize,
        j: usize,
        z: &CheckedPoint,
        slices: &[Cone],
        by_slice: &BTreeMap<(Vec<Vec<Int>>, Vec<Vec<Int>>), Vec<usize>>,
    ) -> Result<()> {
        let si = &slices[i];
        let sj = &slices[j];
        let meet = if si == sj { si.clone() } else { si.intersect(sj) };
        if si != sj && (!is_face_of(&meet, si) || !is_face_of(&meet, sj)) {
            return Err(Error::InvalidInput(format!(
                "fan incoherent: slices of items {i} and {j} at {z} do not meet in a \
                 common face"
            )));
        }
        // Colors of i and j restricted to the intersection must agree.
        let ci = colors_in(&self.items[i].colors, &meet);
        let cj = colors_in(&self.items[j].colors, &meet);
        if ci != cj {
            return Err(Error::InvalidInput(format!(
                "fan incoherent: color sets of items {i} and {j} restricted to their \
                 intersection at {z} differ"
            )));
        }
        // Some item must realize the intersection slice with those colors.
        let key = (meet.rays().to_vec(), meet.lineality().to_vec());
        let found = by_slice.get(&key).is_some_and(|items| {
            items
                .iter()
                .any(|&l| slices[l] == meet && colors_in(&self.items[l].colors, &meet) == ci)
        });
        if !found {
            return Err(Error::InvalidInput(format!(
                "fan incoherent: no item realizes the intersection of items {i} and {j} \
                 at {z}"
            )));
        }
        Ok(())
    }

    /// Completeness: C_Sigma = C and the slices cover N_Q x Q>=0 over every
    /// point (finitely many slice arrangements: special points, removed
    /// points, generic).
    pub fn is_complete(&self) -> Result<bool> {
        self.validate()?;
        // C_Sigma = C: no point removed from every chart.
        let mut common: Option<BTreeSet<Point>> = None;
        for it in &self.items {
            let r = it.curve.removed.clone();
            common = Some(match common {
                None => r,
                Some(c) => c.intersection(&r).cloned().collect(),
            });
        }
        if !common.unwrap_or_default().is_empty() {
            return Ok(false);
        }
        let mut checked = self.checked_points();
        for it in &self.items {
            for z in &it.curve.removed {
                let c = CheckedPoint::At(z.clone());
                if !checked.contains(&c) {
                    checked.push(c);
                }
            }
        }
        let full_dim = self.rank() + 1;
        for z in &checked {
            // Only charts actually containing z cover it.
            let slices: Vec<Cone> = (0..self.items.len())
                .filter(|&i| match z {
                    CheckedPoint::Generic => true,
                    CheckedPoint::At(p) => self.items[i].curve.contains(p),
                })
                .map(|i| self.slice_at(i, z))
                .collect();
            let maximal: Vec<&Cone> = slices.iter().filter(|c| c.dim() == full_dim).collect();
            if maximal.is_empty() {
                return Ok(false);
            }
            // Wall crossing: every facet of a maximal slice either lies in
            // the boundary l = 0 or is shared with another maximal slice.
            for k in &maximal {
                for facet in k.faces()? {
                    if facet.dim() + 1 != k.dim() {
                        continue;
                    }
                    let in_boundary = facet
                        .rays()
                        .iter()
                        .all(|r| r[self.rank()].is_zero());
                    if in_boundary {
                        continue;
                    }
                    let shared = maximal
                        .iter()
                        .any(|k2| k2 != k && facet.is_subcone_of(k2));
                    if !shared {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Deduplicated colored germ data across all items.
    pub fn enumerate_germs(&self) -> Result<Vec<GermDatum>> {
        for (i, it) in self.items.iter().enumerate() {
            let p = it.is_proper()?;
            if !p.proper {
                return Err(Error::Precondition(format!("item {i} is not proper")));
            }
        }
        let n = self.rank();
        let mut out: Vec<GermDatum> = Vec::new();
        let push = |kind: GermKind, cone: Option<Cone>, colors: Vec<Color>, owner: usize,
                        is_divisorial: bool, out: &mut Vec<GermDatum>| {
            if let Some(existing) = out
                .iter_mut()
                .find(|g| g.kind == kind && g.cone == cone)
            {
                existing.owners.push(owner);
                return;
            }
            out.push(GermDatum { kind, cone, colors, owners: vec![owner], is_divisorial });
        };
        for (i, it) in self.items.iter().enumerate() {
            let (_, filtered_rays) = it.vertices_and_rays()?;
            // Horizontal germs: nonzero faces of the tail; on projective
            // support only faces avoiding the degree polytope are
            // hyperfaces of the case-B hypercone.
            let deg = if it.curve.is_projective() {
                Some(it.degree_polytope()?)
            } else {
                None
            };
            for face in it.tail().faces()? {
                if face.is_zero() {
                    continue;
                }
                if let Some(deg) = &deg {
                    if cone_meets_polyhedron(&face, deg) {
                        continue;
                    }
                }
                let colors = colors_in_tail(&it.colors, &face);
                let lifted = tail_times_zero(&face);
                let divisorial = face.rays().len() == 1
                    && colors.is_empty()
                    && filtered_rays.contains(&face.rays()[0]);
                push(GermKind::Horizontal, Some(lifted), colors, i, divisorial, &mut out);
            }
            // Vertical germs at special points: faces of the slice not
            // contained in N x {0}.
            for z in it.nontrivial_points() {
                let slice = it.slice(z)?;
                for face in slice.faces()? {
                    if face.rays().iter().all(|r| r[n].is_zero()) {
                        continue;
                    }
                    let colors = colors_in(&it.colors, &face);
                    let divisorial = face.rays().len() == 1 && colors.is_empty();
                    push(
                        GermKind::VerticalSpecial(z.clone()),
                        Some(face),
                        colors,
                        i,
                        divisorial,
                        &mut out,
                    );
                }
            }
            // Generic vertical family: faces of the generic slice.
            let generic = it.generic_slice();
            for face in generic.faces()? {
                if face.rays().iter().all(|r| r[n].is_zero()) {
                    continue;
                }
                let colors = colors_in(&it.colors, &face);
                push(GermKind::VerticalGeneric, Some(face), colors, i, false, &mut out);
            }
            // Case-B whole-hypercone datum for projective support.
            if it.curve.is_projective() {
                push(GermKind::Hyper, None, it.colors.clone(), i, false, &mut out);
            }
        }
        Ok(out)
    }

    /// Same fan with every color set emptied.
    pub fn decolor(&self) -> DivisorialFan {
        DivisorialFan { items: self.items.iter().map(|it| it.decolor()).collect() }
    }

    /// Decoloration together with the germ correspondence: each colored
    /// datum is paired with the datum obtained by dropping its colors.
    pub fn decolor_with_germ_map(&self) -> Result<(DivisorialFan, Vec<(GermDatum, GermDatum)>)> {
        let dec = self.decolor();
        let map = self
            .enumerate_germs()?
            .into_iter()
            .map(|g| {
                let mut image = g.clone();
                image.colors.clear();
                image.is_divisorial = match image.kind {
                    GermKind::Horizontal => {
                        image.cone.as_ref().map(|c| c.rays().len() == 1).unwrap_or(false)
                    }
                    GermKind::VerticalSpecial(_) => {
                        image.cone.as_ref().map(|c| c.rays().len() == 1).unwrap_or(false)
                    }
                    _ => false,
                };
                (g, image)
            })
            .collect();
        Ok((dec, map))
    }

    /// Vert(Sigma) and Ray(Sigma), deduplicated over items.
    pub fn vert_and_ray(&self) -> Result<(Vec<VertexDatum>, Vec<Vec<Int>>)> {
        let mut verts: Vec<VertexDatum> = Vec::new();
        let mut rays: Vec<Vec<Int>> = Vec::new();
        for it in &self.items {
            let (v, r) = it.vertices_and_rays()?;
            for vd in v {
                if !verts.contains(&vd) {
                    verts.push(vd);
                }
            }
            for ray in r {
                if !rays.contains(&ray) {
                    rays.push(ray);
                }
            }
        }
        verts.sort();
        rays.sort();
        Ok((verts, rays))
    }

    /// Combinatorial resolution of singularities: decolor, split projective
    /// supports into affine charts, then refine all slices (coherently
    /// across points) until every slice cone is regular.
    pub fn resolve(&self) -> Result<Resolution> {
        self.validate()?;
        let (_, germ_map) = self.decolor_with_germ_map()?;
        let decolored_germs: Vec<GermDatum> = germ_map
            .iter()
            .filter(|(g, _)| !g.colors.is_empty())
            .map(|(g, _)| g.clone())
            .collect();
        let (orig_verts, orig_rays) = self.vert_and_ray()?;

        // Step 1: decolor and split projective-support items into two
        // affine charts.
        let mut split: Vec<ColoredPolyhedralDivisor> = Vec::new();
        for it in self.decolor().items {
            if it.curve.is_affine() {
                split.push(it);
            } else {
                let (a, b) = chart_points(&it);
                for chart in [a, b] {
                    let mut curve = it.curve.clone();
                    curve.removed.insert(chart.clone());
                    let coeffs: BTreeMap<Point, Polyhedron> = it
                        .nontrivial_coeffs()
                        .filter(|(z, _)| **z != chart)
                        .map(|(z, p)| (z.clone(), p.clone()))
                        .collect();
                    split.push(ColoredPolyhedralDivisor::new(
                        curve,
                        it.tail().clone(),
                        coeffs,
                        vec![],
                    )?);
                }
            }
        }
        let n = self.rank();
        let special: BTreeSet<Point> = split
            .iter()
            .flat_map(|it| it.nontrivial_points().cloned())
            .collect();

        // Step 2: triangulate the tail fan T (in N) and the slice fans F_z
        // (in N x Q) with the shared pulling rule, then stellarly subdivide
        // until regular; l = 0 subdivision points propagate everywhere.
        let mut tail_fan: Vec<Cone> = Vec::new();
        for it in &split {
            for t in triangulate(it.tail())? {
                if !tail_fan.contains(&t) {
                    tail_fan.push(t);
                }
            }
        }
        let mut slice_fans: BTreeMap<Point, Vec<Cone>> = BTreeMap::new();
        for z in &special {
            let mut cones = Vec::new();
            for it in &split {
                if !it.curve.contains(z) {
                    continue;
                }
                for t in triangulate(&it.slice(z)?)? {
                    if !cones.contains(&t) {
                        cones.push(t);
                    }
                }
            }
            slice_fans.insert(z.clone(), cones);
        }
        loop {
            // Tail cones first (they are shared by every slice), then the
            // slice fans in point order.
            let mut point: Option<Vec<Int>> = None; // in N x Z, l = 0 for tail
            if let Some(t) = tail_fan.iter().find(|t| !t.simplicial_index().is_one()) {
                let p = parallelepiped_point(t).expect("irregular cone has a witness point");
                let mut lifted = p;
                lifted.push(Int::zero());
                point = Some(lifted);
            } else {
                'search: for cones in slice_fans.values() {
                    for k in cones {
                        if !k.simplicial_index().is_one() {
                            point =
                                Some(parallelepiped_point(k).expect("irregular cone has a witness"));
                            break 'search;
                        }
                    }
                }
            }
            let Some(p) = point else { break };
            if p[n].is_zero() {
                // Tail-level point: subdivide the tail fan and every slice.
                let pn = p[..n].to_vec();
                tail_fan = stellar_subdivide(&tail_fan, &pn)?;
                for cones in slice_fans.values_mut() {
                    *cones = stellar_subdivide(cones, &p)?;
                }
            } else {
                // Vertical point: local to its slice fan.
                for cones in slice_fans.values_mut() {
                    if cones.iter().any(|k| k.contains(&p)) {
                        *cones = stellar_subdivide(cones, &p)?;
                    }
                }
            }
        }

        // Step 3: emit the resolved fan: one item per (z, K) for every face
        // K of a slice cone with a vertical part, plus trivial items for
        // every face of the tail fan.
        let curve_kind = self.curve_kind().clone();
        let mut items: Vec<ColoredPolyhedralDivisor> = Vec::new();
        for (z, cones) in &slice_fans {
            let mut faces: Vec<Cone> = Vec::new();
            for k in cones {
                for f in k.faces()? {
                    if !faces.contains(&f) {
                        faces.push(f);
                    }
                }
            }
            for k in faces {
                if k.rays().iter().all(|r| r[n].is_zero()) {
                    continue; // pure tail part, handled by trivial items
                }
                // One item per chart (distinct removed set among owners),
                // so every emitted item keeps an affine base.
                let charts: BTreeSet<BTreeSet<Point>> = split
                    .iter()
                    .filter(|it| {
                        it.curve.contains(z)
                            && k.is_subcone_of(&it.slice(z).expect("z in C0"))
                    })
                    .map(|it| it.curve.removed.clone())
                    .collect();
                for chart in charts {
                    let mut removed: BTreeSet<Point> = special.clone();
                    removed.remove(z);
                    removed.extend(chart);
                    let curve = CurveWithOpen { kind: curve_kind.clone(), removed };
                    let (tail, coeff) = split_slice(&k, n);
                    let item = ColoredPolyhedralDivisor::new(
                        curve,
                        tail,
                        [(z.clone(), coeff)].into(),
                        vec![],
                    )?;
                    if !items.contains(&item) {
                        items.push(item);
                    }
                }
            }
        }
        let mut tail_faces: Vec<Cone> = Vec::new();
        for t in &tail_fan {
            for f in t.faces()? {
                if !tail_faces.contains(&f) {
                    tail_faces.push(f);
                }
            }
        }
        for tau in tail_faces {
            let charts: BTreeSet<BTreeSet<Point>> = split
                .iter()
                .filter(|it| tau.is_subcone_of(it.tail()))
                .map(|it| it.curve.removed.clone())
                .collect();
            for chart in charts {
                let mut removed: BTreeSet<Point> = special.clone();
                removed.extend(chart);
                let curve = CurveWithOpen { kind: curve_kind.clone(), removed };
                let item = ColoredPolyhedralDivisor::trivial(curve, tau.clone(), vec![])?;
                if !items.contains(&item) {
                    items.push(item);
                }
            }
        }
        let fan = DivisorialFan::new(items)?;

        // Step 4: exceptional parameters.
        let (new_verts, new_rays) = fan.vert_and_ray()?;
        let exceptional_vertices = new_verts
            .into_iter()
            .filter(|v| !orig_verts.iter().any(|o| o.point == v.point && o.v == v.v))
            .collect();
        let exceptional_rays =
            new_rays.into_iter().filter(|r| !orig_rays.contains(r)).collect();
        Ok(Resolution { fan, exceptional_rays, exceptional_vertices, decolored_germs })
    }
}

/// sigma x {0} inside N x Z.
pub fn tail_times_zero(tail: &Cone) -> Cone {
    let gens: Vec<Vec<Int>> = tail
        .rays()
        .iter()
        .map(|r| {
            let mut g = r.clone();
            g.push(Int::zero());
            g
        })
        .collect();
    Cone::from_rays(tail.ambient + 1, &gens)
}

/// Splits a slice cone K in N x Q into its tail (bottom face, projected to
/// N) and its level-1 coefficient polyhedron.
pub fn split_slice(k: &Cone, n: usize) -> (Cone, Polyhedron) {
    let tail_gens: Vec<Vec<Int>> = k
        .rays()
        .iter()
        .filter(|r| r[n].is_zero())
        .map(|r| r[..n].to_vec())
        .collect();
    let tail = Cone::from_rays(n, &tail_gens);
    let verts: Vec<Vec<Rat>> = k
        .rays()
        .iter()
        .filter(|r| r[n].is_positive())
        .map(|r| {
            let l = Rat::from(r[n].clone());
            r[..n].iter().map(|x| Rat::from(x.clone()) / &l).collect()
        })
        .collect();
    let coeff = Polyhedron::new(n, &verts, &tail).expect("slice with vertical part");
    (tail, coeff)
}

/// Is `face` a face of `c`? Subcone test plus the tight-normal cut.
pub fn is_face_of(face: &Cone, c: &Cone) -> bool {
    if !face.is_subcone_of(c) {
        return false;
    }
    let tight: Vec<Vec<Int>> = c
        .normals()
        .iter()
        .filter(|nrm| {
            face.rays().iter().all(|r| crate::lattice::dot(nrm, r).is_zero())
                && face
                    .lineality()
                    .iter()
                    .all(|l| crate::lattice::dot(nrm, l).is_zero())
        })
        .cloned()
        .collect();
    let mut eqs = c.equations().to_vec();
    eqs.extend(tight);
    let cut = Cone::from_halfspaces(c.ambient, c.normals(), &eqs);
    &cut == face
}

/// Colors whose image, embedded as (rho, 0), lies in the given cone of
/// N x Z.
fn colors_in(colors: &[Color], cone: &Cone) -> Vec<Color> {
    colors
        .iter()
        .filter(|c| {
            let mut v = c.image.clone();
            v.push(Int::zero());
            cone.contains(&v)
        })
        .cloned()
        .collect()
}

/// Colors whose image lies in a cone of N itself.
fn colors_in_tail(colors: &[Color], cone: &Cone) -> Vec<Color> {
    colors.iter().filter(|c| cone.contains(&c.image)).cloned().collect()
}

/// Does the cone (minus the origin) meet the polyhedron? Exact feasibility
/// via a homogenized double-description run.
pub fn cone_meets_polyhedron(c: &Cone, p: &Polyhedron) -> bool {
    let ambient = p.ambient;
    // Feasible (x, l): x in cone, (x, l) in hom(P), l > 0 scaled; existence
    // of a ray with positive last coordinate decides it.
    let mut ineqs: Vec<Vec<Int>> = Vec::new();
    for nrm in p.homogenization().normals() {
        ineqs.push(nrm.clone());
    }
    for nrm in c.normals() {
        let mut v = nrm.clone();
        v.push(Int::zero());
        ineqs.push(v);
    }
    let mut last = vec![Int::zero(); ambient + 1];
    last[ambient] = Int::from(1);
    ineqs.push(last);
    let mut eqs: Vec<Vec<Int>> = Vec::new();
    for e in c.equations() {
        let mut v = e.clone();
        v.push(Int::zero());
        eqs.push(v);
    }
    let (lineality, rays) = crate::polyhedra::double_description(ambient + 1, &ineqs, &eqs);
    debug_assert!(lineality.iter().all(|l| l[ambient].is_zero()));
    rays.iter().any(|r| r[ambient].is_positive())
}

/// Two distinct chart points for splitting a projective base: 0 and
/// infinity on P1, fresh named points otherwise.
fn chart_points(it: &ColoredPolyhedralDivisor) -> (Point, Point) {
    match it.curve.kind {
        crate::pdiv::CurveKind::P1 => (Point::Infinity, Point::zero()),
        crate::pdiv::CurveKind::Abstract { .. } => (
            Point::Named("_chart_a".into()),
            Point::Named("_chart_b".into()),
        ),
    }
}

/// mu(v) for a rational vector.
pub fn mu_of(v: &[Rat]) -> Int {
    denominator_lcm(v)
}
