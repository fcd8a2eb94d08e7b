//! Regular (smooth) subdivision of cones by stellar subdivision at
//! parallelepiped lattice points, plus a deterministic pulling
//! triangulation.

use super::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{
    integer_kernel, smith_normal_form, solve_rational, to_rat_vec, unimodular_inverse, Int,
    IntMatrix, Rat,
};
use num::{One, Zero};

/// Lattice index of a simplicial cone (1 = regular).
pub fn multiplicity(c: &Cone) -> Int {
    c.simplicial_index()
}

/// Deterministic pulling triangulation: recursively pull at the
/// lexicographically smallest ray. Compatible across shared faces.
pub fn triangulate(c: &Cone) -> Result<Vec<Cone>> {
    if !c.is_strongly_convex() {
        return Err(Error::Precondition("triangulate: cone must be strongly convex".into()));
    }
    if c.rays().len() <= c.dim() {
        return Ok(vec![c.clone()]);
    }
    let r0 = c.rays()[0].clone(); // rays are sorted, so this is lex-min
    let mut out = Vec::new();
    for facet in proper_facets(c)? {
        if facet.contains(&r0) {
            continue;
        }
        for simplex in triangulate(&facet)? {
            let mut gens = simplex.rays().to_vec();
            gens.push(r0.clone());
            out.push(Cone::from_rays(c.ambient, &gens));
        }
    }
    out.sort_by(|a, b| a.rays().cmp(b.rays()));
    Ok(out)
}

fn proper_facets(c: &Cone) -> Result<Vec<Cone>> {
    let d = c.dim();
    Ok(c.faces()?.into_iter().filter(|f| f.dim() + 1 == d).collect())
}

/// Stellar subdivision of a face-compatible simplicial collection at a
/// primitive lattice point p: every cone containing p is replaced by the
/// joins of p with its facets not containing p.
pub fn stellar_subdivide(cones: &[Cone], p: &[Int]) -> Result<Vec<Cone>> {
    let mut out = Vec::new();
    for k in cones {
        if !k.contains(p) {
            out.push(k.clone());
            continue;
        }
        for facet in proper_facets(k)? {
            if facet.contains(p) {
                continue;
            }
            let mut gens = facet.rays().to_vec();
            gens.push(p.to_vec());
            out.push(Cone::from_rays(k.ambient, &gens));
        }
    }
    out.sort_by(|a, b| a.rays().cmp(b.rays()));
    out.dedup();
    Ok(out)
}

/// The nonzero lattice point of the half-open parallelepiped
/// { sum t_i r_i : 0 <= t_i < 1 } minimizing sum t_i (ties: lex smallest
/// point); None when the cone is regular.
pub fn parallelepiped_point(c: &Cone) -> Option<Vec<Int>> {
    if c.rays().is_empty() || c.simplicial_index().is_one() {
        return None;
    }
    parallelepiped_scan(c)
        .into_iter()
        .min()
        .map(|(_, p)| p)
}

/// All nonzero lattice points of the half-open parallelepiped of a
/// simplicial cone's ray generators.
pub fn parallelepiped_lattice_points(c: &Cone) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = parallelepiped_scan(c).into_iter().map(|(_, p)| p).collect();
    out.sort();
    out
}

fn parallelepiped_scan(c: &Cone) -> Vec<(Rat, Vec<Int>)> {
    let rays = c.rays();
    if rays.is_empty() {
        return Vec::new();
    }
    let ambient = c.ambient;
    let k = rays.len();
    // Basis B of the saturated lattice Z^n cap span(rays), via double
    // orthogonal complement.
    let perp = integer_kernel(&IntMatrix::from_rows(ambient, &rays.to_vec()));
    let l_basis: Vec<Vec<Int>> = if perp.is_empty() {
        (0..ambient)
            .map(|i| {
                let mut e = vec![Int::zero(); ambient];
                e[i] = Int::one();
                e
            })
            .collect()
    } else {
        integer_kernel(&IntMatrix::from_rows(ambient, &perp))
    };
    debug_assert_eq!(l_basis.len(), k, "parallelepiped_scan: cone must be simplicial");
    // Ray coordinates in that basis: the columns of a k x k matrix A; the
    // lattice points of the half-open parallelepiped are in bijection with
    // Z^k / A Z^k, of order |det A|.
    let b_mat = IntMatrix::from_rows(ambient, &l_basis).transpose();
    let a_cols: Vec<Vec<Int>> = rays
        .iter()
        .map(|r| {
            let (t, _) = solve_rational(&b_mat, &to_rat_vec(r)).expect("ray lies in its span");
            t.iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    let a_mat = IntMatrix::from_rows(k, &a_cols).transpose();
    // Columns of A^{-1}, so residue lifts need no further solving.
    let inv_cols: Vec<Vec<Rat>> = (0..k)
        .map(|j| {
            let mut e = vec![Rat::zero(); k];
            e[j] = Rat::one();
            solve_rational(&a_mat, &e).expect("A is invertible").0
        })
        .collect();
    let snf = smith_normal_form(&a_mat);
    let u_inv = unimodular_inverse(&snf.u);
    let radices = snf.diagonal();
    let mut found: Vec<(Rat, Vec<Int>)> = Vec::new();
    let mut class = vec![Int::zero(); k];
    'outer: loop {
        // Integer representative y = U^{-1} class of the residue, fractional
        // coordinates t = frac(A^{-1} y), point p = sum t_i r_i.
        let y: Vec<Int> = (0..k).map(|i| crate::lattice::dot(u_inv.row(i), &class)).collect();
        let t: Vec<Rat> = (0..k)
            .map(|i| {
                let ti: Rat = (0..k).map(|j| &inv_cols[j][i] * Rat::from(y[j].clone())).sum();
                &ti - ti.floor()
            })
            .collect();
        if t.iter().any(|ti| !ti.is_zero()) {
            let p: Vec<Int> = (0..ambient)
                .map(|row| {
                    let x: Rat = (0..k).map(|i| &t[i] * Rat::from(rays[i][row].clone())).sum();
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect();
            let total: Rat = t.iter().cloned().sum();
            found.push((total, p));
        }
        for i in (0..k).rev() {
            class[i] += 1;
            if class[i] < radices[i] {
                continue 'outer;
            }
            class[i] = Int::zero();
        }
        break;
    }
    found
}

/// Subdivides a strongly convex cone into regular cones: pulling
/// triangulation followed by stellar subdivision at minimal parallelepiped
/// points until every piece is regular. Rays of the input are preserved.
pub fn regularize(c: &Cone) -> Result<Vec<Cone>> {
    let mut cones = triangulate(c)?;
    loop {
        let target = cones
            .iter()
            .find(|k| !k.simplicial_index().is_one())
            .cloned();
        let Some(k) = target else { break };
        let p = parallelepiped_point(&k)
            .expect("non-regular simplicial cone has a parallelepiped point");
        cones = stellar_subdivide(&cones, &p)?;
    }
    Ok(cones)
}
