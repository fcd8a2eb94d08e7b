//! Exact integer and rational linear algebra: Smith/Hermite normal forms,
//! linear solving over Z and Q, and finitely generated abelian group
//! presentations.

use num::traits::Euclid;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::fmt;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_ir(a: &[Int], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| Rat::from(x.clone()) * y).sum()
}

pub fn dot_rr(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and reduces to a primitive
/// integer vector pointing in the same direction.
pub fn primitive_from_rat(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&ints)
}

/// Smallest d > 0 with d*v integral.
pub fn denominator_lcm(v: &[Rat]) -> Int {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    lcm
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from(x.clone())).collect()
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Int>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(cols, &v)
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self[(r, k)].is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let p = &self[(r, k)] * &other[(k, c)];
                    out[(r, c)] += p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let ai = a * self.cols + c;
            let bi = b * self.cols + c;
            self.data.swap(ai, bi);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let ai = r * self.cols + a;
            let bi = r * self.cols + b;
            self.data.swap(ai, bi);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: &Int) {
        for c in 0..self.cols {
            let v = k * &self[(b, c)];
            self[(a, c)] += v;
        }
    }

    #[cfg(test)]
    fn add_col(&mut self, a: usize, b: usize, k: &Int) {
        for r in 0..self.rows {
            let v = k * &self[(r, b)];
            self[(r, a)] += v;
        }
    }

    /// (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
    fn combine_rows(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        for col in 0..self.cols {
            let x = self[(i, col)].clone();
            let y = self[(j, col)].clone();
            self[(i, col)] = a * &x + b * &y;
            self[(j, col)] = c * &x + d * &y;
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        for row in 0..self.rows {
            let x = self[(row, i)].clone();
            let y = self[(row, j)].clone();
            self[(row, i)] = a * &x + b * &y;
            self[(row, j)] = c * &x + d * &y;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self[(r, c)].clone();
            self[(r, c)] = v;
        }
    }

    /// Rank over Q, by fraction-free elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            let pivot = (rank..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap_rows(rank, p);
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let a = m[(rank, col)].clone();
                let b = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = &a * &m[(r, c)] - &b * &m[(rank, c)];
                    m[(r, c)] = v;
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

/// U * A * V = S with U, V unimodular and S diagonal with a divisibility
/// chain d1 | d2 | ...
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.s.rows.min(self.s.cols);
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Pivot choice: smallest nonzero absolute value, ties broken by lowest row
/// then column index.
fn find_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in k..m.rows {
        for c in k..m.cols {
            if m[(r, c)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((r, c)),
                Some(b) => {
                    if m[(r, c)].abs() < m[b].abs() {
                        best = Some((r, c));
                    }
                }
            }
        }
    }
    best
}

/// Unimodular 2x2 block (a,b,c,d) with [a b; c d]·(p,q) = (gcd, 0).
///
/// When p already divides q this is a pure elimination leaving the first
/// slot untouched; the SNF clean loop relies on that to terminate.
fn gcd_block(p: &Int, q: &Int) -> (Int, Int, Int, Int) {
    debug_assert!(!q.is_zero());
    if !p.is_zero() && (q % p).is_zero() {
        return (Int::one(), Int::zero(), -(q / p), Int::one());
    }
    let e = p.extended_gcd(q);
    let mut g = e.gcd;
    let (mut x, mut y) = (e.x, e.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
    }
    // Normalize to the minimal Bezout pair to keep transforms small.
    let qg = q / &g;
    let pg = p / &g;
    if !qg.is_zero() {
        let t = x.div_euclid(&qg);
        if !t.is_zero() {
            x -= &t * &qg;
            y += &t * &pg;
        }
    }
    (x, y, -qg, pg)
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let mut k = 0;
    while let Some((pr, pc)) = find_pivot(&s, k) {
        s.swap_rows(k, pr);
        u.swap_rows(k, pr);
        s.swap_cols(k, pc);
        v.swap_cols(k, pc);
        // Eliminate row and column k with 2x2 unimodular gcd blocks.
        // A row step can disturb cleared column entries and vice versa, but
        // each disturbance strictly shrinks |pivot|, so this terminates.
        loop {
            let mut clean = true;
            for r in k + 1..s.rows {
                if !s[(r, k)].is_zero() {
                    let (a2, b2, c2, d2) = gcd_block(&s[(k, k)], &s[(r, k)]);
                    s.combine_rows(k, r, &a2, &b2, &c2, &d2);
                    u.combine_rows(k, r, &a2, &b2, &c2, &d2);
                    clean = false;
                }
            }
            for c in k + 1..s.cols {
                if !s[(k, c)].is_zero() {
                    let (a2, b2, c2, d2) = gcd_block(&s[(k, k)], &s[(k, c)]);
                    s.combine_cols(k, c, &a2, &b2, &c2, &d2);
                    v.combine_cols(k, c, &a2, &b2, &c2, &d2);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // Divisibility: fold in any entry not divisible by the pivot.
        let mut fixed = true;
        'scan: for r in k + 1..s.rows {
            for c in k + 1..s.cols {
                if !(&s[(r, c)] % &s[(k, k)]).is_zero() {
                    s.add_row(k, r, &Int::one());
                    u.add_row(k, r, &Int::one());
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            if s[(k, k)].is_negative() {
                s.negate_row(k);
                u.negate_row(k);
            }
            k += 1;
            if k >= s.rows || k >= s.cols {
                break;
            }
        }
    }
    Snf { u, s, v }
}

/// Row-style Hermite normal form: H = U * A with U unimodular, H in
/// row echelon form with positive pivots and reduced entries above them.
/// Zero rows are moved to the bottom. The nonzero rows of H are the
/// canonical basis of the row space of A as a lattice.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row >= h.rows {
            break;
        }
        // Reduce the column below pivot_row to a single nonzero entry via
        // 2x2 unimodular gcd blocks.
        if h[(pivot_row, col)].is_zero() {
            if let Some(r) = (pivot_row + 1..h.rows).find(|&r| !h[(r, col)].is_zero()) {
                h.swap_rows(pivot_row, r);
                u.swap_rows(pivot_row, r);
            }
        }
        for r in pivot_row + 1..h.rows {
            if !h[(r, col)].is_zero() {
                let (a2, b2, c2, d2) = gcd_block(&h[(pivot_row, col)], &h[(r, col)]);
                h.combine_rows(pivot_row, r, &a2, &b2, &c2, &d2);
                u.combine_rows(pivot_row, r, &a2, &b2, &c2, &d2);
            }
        }
        if !h[(pivot_row, col)].is_zero() {
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            // Reduce entries above the pivot.
            for r in 0..pivot_row {
                let q = -h[(r, col)].div_euclid(&h[(pivot_row, col)]);
                if !q.is_zero() {
                    h.add_row(r, pivot_row, &q);
                    u.add_row(r, pivot_row, &q);
                }
            }
            pivot_row += 1;
        }
    }
    (h, u)
}

/// Canonical lattice basis (HNF rows) of the row span of the given vectors.
pub fn lattice_basis(dim: usize, vectors: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(dim, vectors);
    let (h, _) = hermite_normal_form(&m);
    (0..h.rows)
        .map(|r| h.row(r).to_vec())
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Finitely generated abelian group Z^cols / rowspan(A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    pub generator_labels: Vec<String>,
    pub relations: IntMatrix,
    /// Invariant factors > 1, forming a divisibility chain.
    pub invariant_factors: Vec<Int>,
    pub free_rank: usize,
    /// Column transform of the SNF of the relations: generator classes in
    /// the normalized coordinates are read off through it.
    pub snf_v: IntMatrix,
    pub snf_diagonal: Vec<Int>,
}

impl AbelianGroupPresentation {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Canonical representative of a class: coordinates through the SNF
    /// column transform, reduced modulo the diagonal. Two divisor classes
    /// are equal iff their reduced forms are equal.
    pub fn reduce_class(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.generator_labels.len(), "class length mismatch");
        let v = &self.snf_v;
        let mut y: Vec<Int> = (0..v.cols)
            .map(|j| (0..v.rows).map(|i| &x[i] * &v[(i, j)]).sum())
            .collect();
        for (i, d) in self.snf_diagonal.iter().enumerate() {
            if !d.is_zero() {
                y[i] = y[i].mod_floor(d);
            }
        }
        y
    }

    pub fn is_zero_class(&self, x: &[Int]) -> bool {
        self.reduce_class(x).iter().all(|c| c.is_zero())
    }

    /// "Z^r + Z/d1 + ..." display form.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn cokernel(a: &IntMatrix, labels: &[String]) -> AbelianGroupPresentation {
    assert_eq!(a.cols, labels.len(), "cokernel: label count mismatch");
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let invariant_factors: Vec<Int> =
        diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
    AbelianGroupPresentation {
        generator_labels: labels.to_vec(),
        relations: a.clone(),
        invariant_factors,
        free_rank: a.cols - rank,
        snf_v: snf.v,
        snf_diagonal: diag,
    }
}

/// Saturated basis of the integer kernel {x in Z^cols : A x = 0}: the
/// columns of the SNF transform beyond the rank.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols).map(|j| snf.v.col(j)).collect()
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows, m.cols, "unimodular_inverse: square matrix required");
    let snf = smith_normal_form(m);
    assert!(
        snf.diagonal().iter().all(|d| d.is_one()),
        "unimodular_inverse: matrix is not unimodular"
    );
    // U M V = I  =>  M^{-1} = V U.
    snf.v.mul(&snf.u)
}

/// One integral solution of A x = b, or None when the system has no
/// integral solution.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows, b.len(), "solve_integer: rhs length mismatch");
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let n = a.rows.min(a.cols);
    let mut y = vec![Int::zero(); a.cols];
    for i in 0..a.rows {
        let d = if i < n { snf.s[(i, i)].clone() } else { Int::zero() };
        if d.is_zero() {
            if !c[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = c[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Smallest d > 0 such that A x = d*b has an integral solution, together
/// with a witness; None when the system is rationally infeasible.
pub fn solve_integer_minimal_dilation(a: &IntMatrix, b: &[Int]) -> Option<(Int, Vec<Int>)> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let n = a.rows.min(a.cols);
    let mut d0 = Int::one();
    for i in 0..a.rows {
        let s = if i < n { snf.s[(i, i)].clone() } else { Int::zero() };
        if s.is_zero() {
            if !c[i].is_zero() {
                return None;
            }
        } else if !c[i].is_zero() {
            let g = s.gcd(&c[i]);
            d0 = d0.lcm(&(&s / &g));
        }
    }
    let scaled: Vec<Int> = b.iter().map(|x| x * &d0).collect();
    let x = solve_integer(a, &scaled).expect("dilated system must be solvable");
    Some((d0, x))
}

/// Rational solution of A x = b with a kernel basis, by Gaussian
/// elimination; None when inconsistent.
pub fn solve_rational(a: &IntMatrix, b: &[Rat]) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    assert_eq!(a.rows, b.len(), "solve_rational: rhs length mismatch");
    let rows = a.rows;
    let cols = a.cols;
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = a.row(r).iter().map(|x| Rat::from(x.clone())).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for c in col..=cols {
            let v = &m[rank][c] / &inv;
            m[rank][c] = v;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let v = &m[r][c] - &f * &m[rank][c];
                    m[r][c] = v;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut witness = vec![Rat::zero(); cols];
    for (col, p) in pivot_of_col.iter().enumerate() {
        if let Some(r) = p {
            witness[col] = m[*r][cols].clone();
        }
    }
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut k = vec![Rat::zero(); cols];
        k[free] = Rat::one();
        for (col, p) in pivot_of_col.iter().enumerate() {
            if let Some(r) = p {
                k[col] = -m[*r][free].clone();
            }
        }
        kernel.push(k);
    }
    Some((witness, kernel))
}
