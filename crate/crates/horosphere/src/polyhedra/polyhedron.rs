//! Sigma-polyhedra: Minkowski sums conv(vertices) + tail cone, handled
//! exactly through the homogenization cone in one dimension more.

use super::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{denominator_lcm, dot_ir, Int, Rat};
use num::{One, Signed, Zero};

/// min over a polyhedron of a linear form: either finite or -infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportValue {
    Finite(Rat),
    MinusInfinity,
}

impl SupportValue {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            SupportValue::Finite(q) => Some(q),
            SupportValue::MinusInfinity => None,
        }
    }
}

/// P = conv(vertices) + tail, vertices irredundant and sorted.
///
/// Internally P is the slice {l = 1} of its homogenization cone
/// C(P) = cone{(v,1) : v vertex} + cone{(r,0) : r tail ray}; vertex
/// irredundancy and membership are inherited from the cone code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    pub ambient: usize,
    vertices: Vec<Vec<Rat>>,
    tail: Cone,
    hom: Cone,
}

impl Polyhedron {
    pub fn new(ambient: usize, vertex_candidates: &[Vec<Rat>], tail: &Cone) -> Result<Polyhedron> {
        if vertex_candidates.is_empty() {
            return Err(Error::InvalidInput("polyhedron needs at least one vertex candidate".into()));
        }
        if !tail.is_strongly_convex() {
            return Err(Error::InvalidInput("tail cone must be strongly convex".into()));
        }
        let mut gens: Vec<Vec<Int>> = Vec::new();
        for v in vertex_candidates {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch("vertex length".into()));
            }
            gens.push(homogenize_point(v));
        }
        for r in tail.rays() {
            let mut g = r.clone();
            g.push(Int::zero());
            gens.push(g);
        }
        let hom = Cone::from_rays(ambient + 1, &gens);
        Self::from_hom(ambient, hom, tail)
    }

    /// Polyhedron from its homogenization cone. The cone must be strongly
    /// convex, contained in {l >= 0}, and have at least one ray with l > 0.
    pub fn from_homogenization(ambient: usize, hom: Cone) -> Result<Polyhedron> {
        let tail_gens: Vec<Vec<Int>> = hom
            .rays()
            .iter()
            .filter(|r| r[ambient].is_zero())
            .map(|r| r[..ambient].to_vec())
            .collect();
        let tail = Cone::from_rays(ambient, &tail_gens);
        Self::from_hom(ambient, hom, &tail)
    }

    fn from_hom(ambient: usize, hom: Cone, tail: &Cone) -> Result<Polyhedron> {
        if !hom.is_strongly_convex() {
            return Err(Error::InvalidInput("homogenization cone not strongly convex".into()));
        }
        let mut vertices: Vec<Vec<Rat>> = Vec::new();
        let mut tail_rays: Vec<Vec<Int>> = Vec::new();
        for r in hom.rays() {
            let l = &r[ambient];
            if l.is_negative() {
                return Err(Error::InvalidInput("homogenization ray below l = 0".into()));
            }
            if l.is_zero() {
                tail_rays.push(r[..ambient].to_vec());
            } else {
                let lq = Rat::from(l.clone());
                vertices.push(r[..ambient].iter().map(|x| Rat::from(x.clone()) / &lq).collect());
            }
        }
        if vertices.is_empty() {
            return Err(Error::InvalidInput("polyhedron is empty (no l > 0 ray)".into()));
        }
        let recession = Cone::from_rays(ambient, &tail_rays);
        if &recession != tail {
            return Err(Error::InvalidInput(
                "vertex candidates generate a larger recession cone than the declared tail".into(),
            ));
        }
        vertices.sort();
        Ok(Polyhedron { ambient, vertices, tail: tail.clone(), hom })
    }

    /// The polyhedron consisting of the tail cone itself (vertex 0).
    pub fn trivial(tail: &Cone) -> Polyhedron {
        let ambient = tail.ambient;
        Polyhedron::new(ambient, &[vec![Rat::zero(); ambient]], tail)
            .expect("trivial polyhedron is well formed")
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn homogenization(&self) -> &Cone {
        &self.hom
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].iter().all(|x| x.is_zero())
    }

    /// True when the polyhedron is v + tail for a single lattice point v
    /// shifted by `v`; used by the smoothness normal form.
    pub fn single_vertex(&self) -> Option<&Vec<Rat>> {
        if self.vertices.len() == 1 {
            Some(&self.vertices[0])
        } else {
            None
        }
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        let mut h = p.to_vec();
        h.push(Rat::one());
        self.hom.contains_rat(&h)
    }

    /// min_{x in P} <w, x>; -infinity exactly when w is negative on a tail
    /// ray.
    pub fn support_value(&self, w: &[Int]) -> SupportValue {
        if self.tail.rays().iter().any(|r| crate::lattice::dot(w, r).is_negative()) {
            return SupportValue::MinusInfinity;
        }
        let m = self
            .vertices
            .iter()
            .map(|v| dot_ir(w, v))
            .min()
            .expect("nonempty vertex list");
        SupportValue::Finite(m)
    }

    /// Face of P minimizing w: convex hull of the minimizing vertices plus
    /// the tail rays on which w vanishes.
    pub fn face_of(&self, w: &[Int]) -> Result<Polyhedron> {
        let min = match self.support_value(w) {
            SupportValue::Finite(q) => q,
            SupportValue::MinusInfinity => {
                return Err(Error::Precondition("face_of: w unbounded below on P".into()))
            }
        };
        let verts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .filter(|v| dot_ir(w, v) == min)
            .cloned()
            .collect();
        let face_tail = Cone::from_halfspaces(
            self.ambient,
            self.tail.normals(),
            &{
                let mut eqs = self.tail.equations().to_vec();
                eqs.push(w.to_vec());
                eqs
            },
        );
        Polyhedron::new(self.ambient, &verts, &face_tail)
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("minkowski_sum ambient".into()));
        }
        if self.tail != other.tail {
            return Err(Error::Precondition("minkowski_sum: tail cones differ".into()));
        }
        let mut sums = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push((0..self.ambient).map(|i| &a[i] + &b[i]).collect::<Vec<Rat>>());
            }
        }
        Polyhedron::new(self.ambient, &sums, &self.tail)
    }

    pub fn translate(&self, by: &[Rat]) -> Polyhedron {
        let verts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| (0..self.ambient).map(|i| &v[i] + &by[i]).collect())
            .collect();
        Polyhedron::new(self.ambient, &verts, &self.tail).expect("translate preserves validity")
    }

    /// Smallest d > 0 with d*v integral, over a single vertex.
    pub fn vertex_multiplicity(v: &[Rat]) -> Int {
        denominator_lcm(v)
    }

    /// Normal quasi-fan: for each vertex v the cone of covectors minimized
    /// at v; the union of the cones is dual(tail).
    pub fn normal_quasifan(&self) -> QuasiFan {
        let mut cones = Vec::new();
        for v in &self.vertices {
            let mut ineqs: Vec<Vec<Int>> = Vec::new();
            for v2 in &self.vertices {
                if v2 == v {
                    continue;
                }
                let diff: Vec<Rat> = (0..self.ambient).map(|i| &v2[i] - &v[i]).collect();
                ineqs.push(crate::lattice::primitive_from_rat(&diff));
            }
            for r in self.tail.rays() {
                ineqs.push(r.clone());
            }
            cones.push((v.clone(), Cone::from_halfspaces(self.ambient, &ineqs, &[])));
        }
        QuasiFan { cones }
    }
}

fn homogenize_point(v: &[Rat]) -> Vec<Int> {
    let d = denominator_lcm(v);
    let mut g: Vec<Int> = v.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    g.push(d);
    crate::lattice::primitive(&g)
}

/// Quasi-fan of cones in the dual space, indexed by the vertices that
/// realize the minimum on each cone.
#[derive(Clone, Debug)]
pub struct QuasiFan {
    pub cones: Vec<(Vec<Rat>, Cone)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, rat};

    fn qv(xs: &[(i64, i64)]) -> Vec<Rat> {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn ray_q() -> Cone {
        Cone::from_rays(1, &[vec![int(1)]])
    }

    #[test]
    fn half_line_support() {
        // P = [1/2, oo) in Q^1.
        let p = Polyhedron::new(1, &[qv(&[(1, 2)])], &ray_q()).unwrap();
        assert_eq!(p.support_value(&[int(2)]), SupportValue::Finite(rat(1, 1)));
        assert_eq!(p.support_value(&[int(0)]), SupportValue::Finite(rat(0, 1)));
        assert_eq!(p.support_value(&[int(-1)]), SupportValue::MinusInfinity);
        let face = p.face_of(&[int(1)]).unwrap();
        assert_eq!(face.vertices(), [qv(&[(1, 2)])]);
        assert!(face.tail().is_zero());
    }

    #[test]
    fn face_at_zero_is_whole() {
        let p = Polyhedron::new(1, &[qv(&[(1, 2)])], &ray_q()).unwrap();
        assert_eq!(p.face_of(&[int(0)]).unwrap(), p);
    }

    #[test]
    fn two_vertex_support() {
        // P = conv{(0,0),(1,-1)} + orthant.
        let orthant = Cone::from_rays(2, &[vec![int(1), int(0)], vec![int(0), int(1)]]);
        let p = Polyhedron::new(2, &[qv(&[(0, 1), (0, 1)]), qv(&[(1, 1), (-1, 1)])], &orthant)
            .unwrap();
        assert_eq!(p.support_value(&[int(1), int(1)]), SupportValue::Finite(rat(0, 1)));
        assert_eq!(p.support_value(&[int(0), int(1)]), SupportValue::Finite(rat(-1, 1)));
        let nf = p.normal_quasifan();
        assert_eq!(nf.cones.len(), 2);
        // The wall between the two maximal cones is spanned by (1,1).
        let meet = nf.cones[0].1.intersect(&nf.cones[1].1);
        assert_eq!(meet.rays(), [vec![int(1), int(1)]]);
    }

    #[test]
    fn minkowski_intervals() {
        let p = Polyhedron::new(1, &[qv(&[(1, 2)])], &ray_q()).unwrap();
        let s = p.minkowski_sum(&p).unwrap();
        assert_eq!(s.vertices(), [qv(&[(1, 1)])]);
        let trivial = Polyhedron::trivial(&ray_q());
        assert_eq!(p.minkowski_sum(&trivial).unwrap(), p);
    }

    #[test]
    fn minkowski_square() {
        let zero = Cone::zero(2);
        let e1 = Polyhedron::new(2, &[qv(&[(0, 1), (0, 1)]), qv(&[(1, 1), (0, 1)])], &zero).unwrap();
        let e2 = Polyhedron::new(2, &[qv(&[(0, 1), (0, 1)]), qv(&[(0, 1), (1, 1)])], &zero).unwrap();
        let sq = e1.minkowski_sum(&e2).unwrap();
        assert_eq!(sq.vertices().len(), 4);
        let left = sq.face_of(&[int(1), int(0)]).unwrap();
        assert_eq!(left.vertices().len(), 2);
        assert!(left.vertices().iter().all(|v| v[0].is_zero()));
    }

    #[test]
    fn minkowski_support_additivity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let orthant = Cone::from_rays(2, &[vec![int(1), int(0)], vec![int(0), int(1)]]);
        for _ in 0..20 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let n = rng.gen_range(1..=3);
                let verts: Vec<Vec<Rat>> = (0..n)
                    .map(|_| {
                        (0..2)
                            .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
                            .collect()
                    })
                    .collect();
                Polyhedron::new(2, &verts, &orthant).unwrap()
            };
            let p = mk(&mut rng);
            let q = mk(&mut rng);
            let s = p.minkowski_sum(&q).unwrap();
            for _ in 0..10 {
                let w = vec![int(rng.gen_range(0..=5)), int(rng.gen_range(0..=5))];
                let sp = p.support_value(&w).finite().unwrap().clone();
                let sq2 = q.support_value(&w).finite().unwrap().clone();
                assert_eq!(s.support_value(&w), SupportValue::Finite(sp + sq2));
            }
        }
    }

    #[test]
    fn vertex_irredundancy() {
        let zero = Cone::zero(1);
        // Midpoint is not a vertex.
        let p = Polyhedron::new(1, &[qv(&[(0, 1)]), qv(&[(1, 2)]), qv(&[(1, 1)])], &zero).unwrap();
        assert_eq!(p.vertices(), [qv(&[(0, 1)]), qv(&[(1, 1)])]);
    }

    #[test]
    fn recession_mismatch_rejected() {
        // Declared trivial tail but unbounded vertex set cannot happen with
        // finitely many vertices; instead check tail inference consistency.
        let tail = Cone::from_rays(1, &[vec![int(1)]]);
        let p = Polyhedron::new(1, &[qv(&[(0, 1)])], &tail).unwrap();
        assert_eq!(p.tail().rays().len(), 1);
        assert!(p.contains(&qv(&[(7, 2)])));
        assert!(!p.contains(&qv(&[(-1, 2)])));
    }
}
