//! Convex polyhedral cones over Q with exact dual representations.

use crate::error::{Error, Result};
use crate::lattice::{dot, lattice_basis, primitive, Int, IntMatrix, Rat};
use num::{One, Signed, Zero};

/// Double description step: returns (lineality basis, extremal rays) of
/// { x : e·x = 0 for e in equalities, a·x >= 0 for a in inequalities }.
///
/// The lineality basis is the canonical HNF basis of the lineality lattice;
/// the rays are primitive, irredundant and lexicographically sorted.
pub fn double_description(
    ambient: usize,
    inequalities: &[Vec<Int>],
    equalities: &[Vec<Int>],
) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    // Current generators: lineality basis plus candidate rays.
    let mut lin: Vec<Vec<Int>> = (0..ambient)
        .map(|i| {
            let mut e = vec![Int::zero(); ambient];
            e[i] = Int::one();
            e
        })
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    // Constraints processed so far, for the extremality rank test.
    let mut processed: Vec<(Vec<Int>, bool)> = Vec::new(); // (row, is_equality)

    let all: Vec<(Vec<Int>, bool)> = equalities
        .iter()
        .map(|e| (e.clone(), true))
        .chain(inequalities.iter().map(|a| (a.clone(), false)))
        .collect();

    for (a, is_eq) in all {
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Some(pos) = lin.iter().position(|l| !dot(&a, l).is_zero()) {
            // Lineality reduction: project every other generator onto the
            // hyperplane a = 0 along l0.
            let mut l0 = lin.remove(pos);
            if dot(&a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let p = dot(&a, &l0);
            for l in lin.iter_mut() {
                let c = dot(&a, l);
                if !c.is_zero() {
                    *l = primitive(
                        &(0..ambient).map(|i| &p * &l[i] - &c * &l0[i]).collect::<Vec<_>>(),
                    );
                }
            }
            for r in rays.iter_mut() {
                let c = dot(&a, r);
                if !c.is_zero() {
                    *r = primitive(
                        &(0..ambient).map(|i| &p * &r[i] - &c * &l0[i]).collect::<Vec<_>>(),
                    );
                }
            }
            if !is_eq {
                // l0 survives on the positive side.
                rays.push(primitive(&l0));
            }
        } else {
            // All lineality is inside the hyperplane; split the rays.
            let mut keep: Vec<Vec<Int>> = Vec::new();
            let mut plus: Vec<Vec<Int>> = Vec::new();
            let mut minus: Vec<Vec<Int>> = Vec::new();
            for r in rays.drain(..) {
                let c = dot(&a, &r);
                if c.is_zero() {
                    keep.push(r);
                } else if c.is_positive() {
                    plus.push(r);
                } else {
                    minus.push(r);
                }
            }
            for rp in &plus {
                for rm in &minus {
                    let cp = dot(&a, rp);
                    let cm = dot(&a, rm);
                    let combo: Vec<Int> =
                        (0..ambient).map(|i| &cp * &rm[i] - &cm * &rp[i]).collect();
                    if combo.iter().any(|x| !x.is_zero()) {
                        keep.push(primitive(&combo));
                    }
                }
            }
            if !is_eq {
                keep.extend(plus);
            }
            rays = keep;
        }
        processed.push((a, is_eq));
        rays.sort();
        rays.dedup();
        rays = extremal_filter(ambient, &rays, &lin, &processed);
    }
    let lin = lattice_basis(ambient, &lin);
    let mut rays = extremal_filter(ambient, &rays, &lin, &processed);
    rays.sort();
    (lin, rays)
}

/// Keeps rays whose tight processed constraints have rank
/// ambient - dim(lineality) - 1, the extremality criterion; rays lying in
/// the lineality space are dropped.
fn extremal_filter(
    ambient: usize,
    rays: &[Vec<Int>],
    lin: &[Vec<Int>],
    processed: &[(Vec<Int>, bool)],
) -> Vec<Vec<Int>> {
    if ambient == lin.len() {
        return Vec::new();
    }
    // Every processed constraint vanishes on the current lineality space, so
    // the tight locus of a ray r always contains span(lin) + Q r; r is
    // extremal exactly when the tight constraints cut that locus down to it.
    rays.iter()
        .filter(|r| {
            // A ray inside the lineality space is redundant.
            let mut span = lin.to_vec();
            span.push((*r).clone());
            if IntMatrix::from_rows(ambient, &span).rank() == lin.len() {
                return false;
            }
            let tight: Vec<Vec<Int>> = processed
                .iter()
                .filter(|(a, is_eq)| *is_eq || dot(a, r).is_zero())
                .map(|(a, _)| a.clone())
                .collect();
            IntMatrix::from_rows(ambient, &tight).rank() == ambient - lin.len() - 1
        })
        .cloned()
        .collect()
}

/// A convex polyhedral cone with both exact representations cached.
///
/// All four generator lists are canonical (primitive sorted extremal rays,
/// HNF lattice bases for lineality and equations), so structural equality
/// is semantic equality and `dual` is a constant-time field swap.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    pub ambient: usize,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    normals: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
}

impl Cone {
    /// Cone generated by the given rays (and optional lineality
    /// generators); both representations are computed and canonicalized.
    pub fn from_rays(ambient: usize, generators: &[Vec<Int>]) -> Cone {
        Self::from_rays_and_lineality(ambient, generators, &[])
    }

    pub fn from_rays_and_lineality(
        ambient: usize,
        generators: &[Vec<Int>],
        lineality_gens: &[Vec<Int>],
    ) -> Cone {
        // Dual cone of the generated cone: inequalities <g, m> >= 0,
        // equalities <l, m> = 0. Its lineality is our equation space, its
        // rays are our facet normals.
        let (equations, normals) = double_description(ambient, generators, lineality_gens);
        // Canonical primal form from the H-representation.
        let (lineality, rays) = double_description(ambient, &normals, &equations);
        Cone { ambient, rays, lineality, normals, equations }
    }

    /// Cone { x : n·x >= 0, e·x = 0 }.
    pub fn from_halfspaces(
        ambient: usize,
        inequalities: &[Vec<Int>],
        equalities: &[Vec<Int>],
    ) -> Cone {
        let (lineality, rays) = double_description(ambient, inequalities, equalities);
        let mut gens = rays.clone();
        gens.extend(lineality.iter().cloned());
        let (equations, normals) = double_description(ambient, &gens, &lineality);
        // Recompute the primal form from the canonical H-representation so
        // that equal cones described differently normalize identically.
        let (lineality, rays) = double_description(ambient, &normals, &equations);
        Cone { ambient, rays, lineality, normals, equations }
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone::from_rays(ambient, &[])
    }

    pub fn full(ambient: usize) -> Cone {
        let mut gens = Vec::new();
        for i in 0..ambient {
            let mut e = vec![Int::zero(); ambient];
            e[i] = Int::one();
            gens.push(e.clone());
            e[i] = -Int::one();
            gens.push(e);
        }
        Cone::from_rays(ambient, &gens)
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn normals(&self) -> &[Vec<Int>] {
        &self.normals
    }

    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    pub fn dual(&self) -> Cone {
        Cone {
            ambient: self.ambient,
            rays: self.normals.clone(),
            lineality: self.equations.clone(),
            normals: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.normals.iter().all(|n| !dot(n, v).is_negative())
            && self.equations.iter().all(|e| dot(e, v).is_zero())
    }

    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        use crate::lattice::dot_ir;
        self.normals.iter().all(|n| !dot_ir(n, v).is_negative())
            && self.equations.iter().all(|e| dot_ir(e, v).is_zero())
    }

    /// Relative-interior membership: inside, and no facet normal tight
    /// unless it vanishes on the whole cone.
    pub fn contains_in_relative_interior(&self, v: &[Rat]) -> bool {
        use crate::lattice::dot_ir;
        self.contains_rat(v)
            && self.normals.iter().all(|n| !dot_ir(n, v).is_zero())
    }

    pub fn is_subcone_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
            && self.lineality.iter().all(|l| {
                other.contains(l) && other.contains(&l.iter().map(|x| -x).collect::<Vec<_>>())
            })
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient, other.ambient, "intersect: ambient mismatch");
        let mut ineqs = self.normals.clone();
        ineqs.extend(other.normals.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_halfspaces(self.ambient, &ineqs, &eqs)
    }

    /// The face of this cone on which the supporting covector w vanishes.
    /// Requires w nonnegative on the cone.
    pub fn face_at(&self, w: &[Int]) -> Cone {
        debug_assert!(self.rays.iter().all(|r| !dot(w, r).is_negative()));
        let mut eqs = self.equations.clone();
        eqs.push(w.to_vec());
        Cone::from_halfspaces(self.ambient, &self.normals, &eqs)
    }

    /// Full face lattice, each face once, including {0} and the cone
    /// itself. Requires strong convexity.
    pub fn faces(&self) -> Result<Vec<Cone>> {
        if !self.is_strongly_convex() {
            return Err(Error::Precondition("faces: cone must be strongly convex".into()));
        }
        // Each face is the tight locus of a subset of facet normals; with
        // few facets, subset enumeration is exact and simple.
        let n = self.normals.len();
        let mut seen: Vec<Vec<Vec<Int>>> = Vec::new(); // ray lists
        let mut out: Vec<Cone> = Vec::new();
        for mask in 0..(1u64 << n.min(20)) {
            let tight: Vec<Vec<Int>> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.normals[i].clone())
                .collect();
            let mut eqs = self.equations.clone();
            eqs.extend(tight);
            let face = Cone::from_halfspaces(self.ambient, &self.normals, &eqs);
            if !seen.contains(&face.rays) {
                seen.push(face.rays.clone());
                out.push(face);
            }
        }
        out.sort_by(|a, b| a.rays.len().cmp(&b.rays.len()).then(a.rays.cmp(&b.rays)));
        Ok(out)
    }

    /// True iff the primitive ray generators are part of a lattice basis
    /// (SNF diagonal all ones and the cone is simplicial).
    pub fn is_regular(&self) -> bool {
        if !self.is_strongly_convex() {
            return false;
        }
        if self.rays.is_empty() {
            return true;
        }
        if self.rays.len() != self.dim() {
            return false;
        }
        let m = IntMatrix::from_rows(self.ambient, &self.rays);
        let snf = crate::lattice::smith_normal_form(&m);
        snf.diagonal().iter().take(self.rays.len()).all(|d| d.is_one())
    }

    /// Lattice index of a simplicial cone: product of the SNF diagonal of
    /// its ray matrix. Panics on non-simplicial input.
    pub fn simplicial_index(&self) -> Int {
        assert_eq!(self.rays.len(), self.dim(), "simplicial_index: cone not simplicial");
        let m = IntMatrix::from_rows(self.ambient, &self.rays);
        let snf = crate::lattice::smith_normal_form(&m);
        snf.diagonal().iter().filter(|d| !d.is_zero()).product()
    }
}
