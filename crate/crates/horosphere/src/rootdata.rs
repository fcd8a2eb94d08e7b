//! Root systems of simply connected reductive groups, horospherical data
//! (M, I), colors and the map rho, Weyl orders, a_alpha coefficients, and
//! the Weyl dimension formula for Levi subgroups.
//!
//! Weight coordinates throughout: fundamental weights of the simple factors
//! concatenated with standard torus characters, so coroot pairing with the
//! i-th simple root reads off the i-th coordinate.

use crate::error::{Error, Result};
use crate::lattice::{int, Int, IntMatrix, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    pub fn validate_rank(self, rank: usize) -> Result<()> {
        let ok = match self {
            SimpleType::A => rank >= 1,
            SimpleType::B | SimpleType::C => rank >= 2,
            SimpleType::D => rank >= 3,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid rank {rank} for type {self:?}")))
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self, rank: usize) -> usize {
        match self {
            SimpleType::A => rank * (rank + 1) / 2,
            SimpleType::B | SimpleType::C => rank * rank,
            SimpleType::D => rank * (rank - 1),
            SimpleType::E => [36, 63, 120][rank - 6],
            SimpleType::F => 24,
            SimpleType::G => 6,
        }
    }

    /// Order of the full Weyl group.
    pub fn weyl_order(self, rank: usize) -> Int {
        let factorial = |n: usize| -> Int { (1..=n).map(int_from).product() };
        match self {
            SimpleType::A => factorial(rank + 1),
            SimpleType::B | SimpleType::C => (int(2).pow(rank as u32)) * factorial(rank),
            SimpleType::D => (int(2).pow(rank as u32 - 1)) * factorial(rank),
            SimpleType::E => int([51_840, 2_903_040, 696_729_600][rank - 6]),
            SimpleType::F => int(1152),
            SimpleType::G => int(12),
        }
    }
}

fn int_from(n: usize) -> Int {
    Int::from(n)
}

/// Cartan matrix of one simple factor, convention cartan[i][j] =
/// <alpha_j, coroot(alpha_i)>.
fn factor_cartan(t: SimpleType, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match t {
        SimpleType::A => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1, -1, -1);
            }
        }
        SimpleType::B => {
            // alpha_n short: <alpha_{n-1}, coroot(alpha_n)> = -2.
            for i in 0..n - 1 {
                link(&mut a, i, i + 1, -1, -1);
            }
            a[n - 1][n - 2] = -2;
        }
        SimpleType::C => {
            // alpha_n long: <alpha_n, coroot(alpha_{n-1})> = -2.
            for i in 0..n - 1 {
                link(&mut a, i, i + 1, -1, -1);
            }
            a[n - 2][n - 1] = -2;
        }
        SimpleType::D => {
            for i in 0..n - 2 {
                link(&mut a, i, i + 1, -1, -1);
            }
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            link(&mut a, n - 3, n - 1, -1, -1);
        }
        SimpleType::E => {
            // Bourbaki numbering: chain 1-3-4-5-...-n, with 2 attached to 4.
            link(&mut a, 0, 2, -1, -1);
            link(&mut a, 1, 3, -1, -1);
            for i in 2..n - 1 {
                link(&mut a, i, i + 1, -1, -1);
            }
        }
        SimpleType::F => {
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short.
            link(&mut a, 0, 1, -1, -1);
            link(&mut a, 1, 2, -1, -2);
            link(&mut a, 2, 3, -1, -1);
        }
        SimpleType::G => {
            // alpha_1 short: <alpha_2, coroot(alpha_1)> = -3.
            link(&mut a, 0, 1, -3, -1);
        }
    }
    a
}

/// Root datum of a simply connected reductive group G = product of simple
/// factors times a torus.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub factors: Vec<(SimpleType, usize)>,
    pub torus_rank: usize,
    /// Block-diagonal Cartan matrix over the simple ranks.
    pub cartan: IntMatrix,
    /// Positive roots in simple-root coordinates (length = simple rank).
    pub positive_roots: Vec<Vec<Int>>,
    /// Symmetrizers d_i with d_i a_ij = d_j a_ji (per factor, integral).
    symmetrizers: Vec<Int>,
    /// Factor index of each simple root.
    factor_of: Vec<usize>,
}

impl RootDatum {
    pub fn new(factors: &[(SimpleType, usize)], torus_rank: usize) -> Result<RootDatum> {
        for &(t, n) in factors {
            t.validate_rank(n)?;
        }
        let nsimple: usize = factors.iter().map(|&(_, n)| n).sum();
        let mut cartan = IntMatrix::zero(nsimple, nsimple);
        let mut factor_of = Vec::with_capacity(nsimple);
        let mut offset = 0;
        for (fi, &(t, n)) in factors.iter().enumerate() {
            let block = factor_cartan(t, n);
            for i in 0..n {
                for j in 0..n {
                    cartan[(offset + i, offset + j)] = int(block[i][j]);
                }
                factor_of.push(fi);
            }
            offset += n;
        }
        let positive_roots = positive_roots_by_closure(&cartan, nsimple);
        let expected: usize = factors.iter().map(|&(t, n)| t.positive_root_count(n)).sum();
        debug_assert_eq!(positive_roots.len(), expected, "positive root count mismatch");
        let symmetrizers = compute_symmetrizers(&cartan, nsimple);
        Ok(RootDatum { factors: factors.to_vec(), torus_rank, cartan, positive_roots, symmetrizers, factor_of })
    }

    pub fn simple_rank(&self) -> usize {
        self.cartan.rows
    }

    /// Dimension of the weight coordinate space chi(T).
    pub fn weight_rank(&self) -> usize {
        self.simple_rank() + self.torus_rank
    }

    pub fn simple_labels(&self) -> Vec<String> {
        (1..=self.simple_rank()).map(|i| format!("alpha{i}")).collect()
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        let idx = label
            .strip_prefix("alpha")
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&i| 1 <= i && i <= self.simple_rank())
            .ok_or_else(|| Error::InvalidInput(format!("unknown simple root label {label:?}")))?;
        Ok(idx - 1)
    }

    /// <beta, coroot(alpha_i)> for beta in simple-root coordinates.
    pub fn pair_with_simple_coroot(&self, beta: &[Int], i: usize) -> Int {
        (0..self.simple_rank()).map(|j| &self.cartan[(i, j)] * &beta[j]).sum()
    }

    /// Weight coordinates of a root given in simple-root coordinates; torus
    /// coordinates are zero.
    pub fn root_weight_coords(&self, beta: &[Int]) -> Vec<Int> {
        let n = self.simple_rank();
        let mut w: Vec<Int> = (0..n).map(|i| self.pair_with_simple_coroot(beta, i)).collect();
        w.extend(std::iter::repeat(Int::zero()).take(self.torus_rank));
        w
    }

    /// Positive roots whose support lies inside the index set J.
    pub fn positive_roots_supported_on(&self, j_set: &BTreeSet<usize>) -> Vec<Vec<Int>> {
        self.positive_roots
            .iter()
            .filter(|beta| {
                beta.iter().enumerate().all(|(j, c)| c.is_zero() || j_set.contains(&j))
            })
            .cloned()
            .collect()
    }

    /// |W_J| via connected components of the induced Dynkin subdiagram.
    pub fn weyl_order(&self, j_set: &BTreeSet<usize>) -> Int {
        let mut order = Int::one();
        let mut remaining: BTreeSet<usize> = j_set.clone();
        while let Some(&start) = remaining.iter().next() {
            // Connected component of start in the induced diagram.
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                if !comp.insert(i) {
                    continue;
                }
                for &j in remaining.iter() {
                    if j != i && !self.cartan[(i, j)].is_zero() && !comp.contains(&j) {
                        stack.push(j);
                    }
                }
            }
            for i in &comp {
                remaining.remove(i);
            }
            order *= self.component_weyl_order(&comp);
        }
        order
    }

    /// Weyl order of one connected induced subdiagram, by classifying its
    /// type from the diagram shape.
    fn component_weyl_order(&self, comp: &BTreeSet<usize>) -> Int {
        let n = comp.len();
        let nodes: Vec<usize> = comp.iter().copied().collect();
        debug_assert!(nodes.iter().all(|&i| self.factor_of[i] == self.factor_of[nodes[0]]));
        // Edge multiplicities a_ij * a_ji and node degrees.
        let mut max_mult = 1i64;
        let mut double_edge: Option<(usize, usize)> = None;
        let mut degree = vec![0usize; n];
        for (ai, &i) in nodes.iter().enumerate() {
            for (aj, &j) in nodes.iter().enumerate() {
                if ai < aj && !self.cartan[(i, j)].is_zero() {
                    degree[ai] += 1;
                    degree[aj] += 1;
                    let m = &self.cartan[(i, j)] * &self.cartan[(j, i)];
                    let m: i64 = m.try_into().expect("small edge multiplicity");
                    if m > max_mult {
                        max_mult = m;
                        double_edge = Some((ai, aj));
                    }
                }
            }
        }
        let factorial = |k: usize| -> Int { (1..=k).map(int_from).product() };
        if max_mult == 3 {
            debug_assert_eq!(n, 2);
            return int(12); // G2
        }
        if max_mult == 2 {
            // F4 iff the double edge is interior; otherwise B/C (same order).
            if let Some((ai, aj)) = double_edge {
                if degree[ai] == 2 && degree[aj] == 2 {
                    debug_assert_eq!(n, 4);
                    return int(1152); // F4
                }
            }
            return int(2).pow(n as u32) * factorial(n);
        }
        // Simply laced: path = A_n, branch = D or E.
        if let Some(branch) = degree.iter().position(|&d| d == 3) {
            // Arm lengths from the branch node.
            let mut arms: Vec<usize> = Vec::new();
            let adj = |ai: usize, aj: usize| !self.cartan[(nodes[ai], nodes[aj])].is_zero();
            for start in 0..n {
                if start == branch || !adj(branch, start) {
                    continue;
                }
                let mut len = 1;
                let mut prev = branch;
                let mut cur = start;
                loop {
                    let next = (0..n).find(|&k| k != prev && k != cur && adj(cur, k));
                    match next {
                        Some(k) => {
                            prev = cur;
                            cur = k;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => int(2).pow(n as u32 - 1) * factorial(n), // D_n
                [1, 2, 2] => int(51_840),                             // E6
                [1, 2, 3] => int(2_903_040),                          // E7
                [1, 2, 4] => int(696_729_600),                        // E8
                other => panic!("impossible Dynkin arms {other:?}"),
            }
        } else {
            factorial(n + 1) // A_n
        }
    }
}

/// Closure of the simple roots under root strings: beta + alpha_i is a root
/// whenever q = p - <beta, coroot(alpha_i)> > 0, with p the length of the
/// descending string.
fn positive_roots_by_closure(cartan: &IntMatrix, n: usize) -> Vec<Vec<Int>> {
    let mut roots: BTreeSet<Vec<Int>> = BTreeSet::new();
    for i in 0..n {
        let mut e = vec![Int::zero(); n];
        e[i] = Int::one();
        roots.insert(e);
    }
    loop {
        let mut added = false;
        let snapshot: Vec<Vec<Int>> = roots.iter().cloned().collect();
        for beta in &snapshot {
            for i in 0..n {
                // p = max k with beta - k alpha_i a root (or beta = alpha_i).
                let mut p = 0i64;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    let neg: Vec<Int> = probe.iter().map(|x| -x).collect();
                    if roots.contains(&probe) || roots.contains(&neg) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: Int = (0..n).map(|j| &cartan[(i, j)] * &beta[j]).sum();
                let pairing: i64 = pairing.try_into().expect("small pairing");
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if roots.insert(up) {
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    roots.into_iter().collect()
}

/// Integral symmetrizers: d_i a_ij = d_j a_ji, minimal positive per factor.
fn compute_symmetrizers(cartan: &IntMatrix, n: usize) -> Vec<Int> {
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rat::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if j != i && !cartan[(i, j)].is_zero() && d[j].is_none() {
                    // d_j = d_i a_ij / a_ji.
                    let aij = Rat::from(cartan[(i, j)].clone());
                    let aji = Rat::from(cartan[(j, i)].clone());
                    d[j] = Some(&di * aij / aji);
                    stack.push(j);
                }
            }
        }
    }
    // Scale each connected component to minimal positive integers.
    let rat_d: Vec<Rat> = d.into_iter().map(|x| x.unwrap()).collect();
    let mut lcm = Int::one();
    for x in &rat_d {
        lcm = num::Integer::lcm(&lcm, x.denom());
    }
    rat_d.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// A horospherical homogeneous space G/H: sublattice M of chi(T) together
/// with a set I of simple roots pairing to zero with M.
#[derive(Clone, Debug)]
pub struct HorosphericalDatum {
    pub root_datum: RootDatum,
    /// Rows: a basis of M in weight coordinates.
    pub m_basis: IntMatrix,
    /// Indices of the simple roots in I.
    pub i_set: BTreeSet<usize>,
}

/// A color D_alpha with its image rho(D_alpha) in N.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Color {
    /// Index of alpha in the simple roots.
    pub alpha: usize,
    pub label: String,
    /// Coroot restriction to M, in the coordinates dual to the M-basis.
    pub image: Vec<Int>,
}

impl HorosphericalDatum {
    pub fn new(
        root_datum: RootDatum,
        m_basis: IntMatrix,
        i_set: BTreeSet<usize>,
    ) -> Result<HorosphericalDatum> {
        if m_basis.cols != root_datum.weight_rank() {
            return Err(Error::DimensionMismatch(format!(
                "M-basis has {} columns, expected {}",
                m_basis.cols,
                root_datum.weight_rank()
            )));
        }
        for &alpha in &i_set {
            if alpha >= root_datum.simple_rank() {
                return Err(Error::InvalidInput(format!("I contains invalid index {alpha}")));
            }
        }
        let d = HorosphericalDatum { root_datum, m_basis, i_set };
        if !d.validate() {
            return Err(Error::InvalidInput(
                "datum invalid: M must pair to zero with coroots of I and have full row rank"
                    .into(),
            ));
        }
        Ok(d)
    }

    /// rank(M) = rank(N) = number of basis rows.
    pub fn rank(&self) -> usize {
        self.m_basis.rows
    }

    /// The pairing condition of the classification: <m, coroot(alpha)> = 0
    /// for alpha in I, plus full row rank of the M-basis.
    pub fn validate(&self) -> bool {
        for &alpha in &self.i_set {
            for r in 0..self.m_basis.rows {
                // Weight coordinate alpha is the pairing with coroot(alpha).
                if !self.m_basis[(r, alpha)].is_zero() {
                    return false;
                }
            }
        }
        self.m_basis.rank() == self.m_basis.rows
    }

    /// One color per simple root outside I; image = coroot restricted to M.
    pub fn colors(&self) -> Vec<Color> {
        (0..self.root_datum.simple_rank())
            .filter(|alpha| !self.i_set.contains(alpha))
            .map(|alpha| Color {
                alpha,
                label: format!("alpha{}", alpha + 1),
                image: self.m_basis.col(alpha),
            })
            .collect()
    }

    /// a_alpha = <sum of positive roots outside Phi_I, coroot(alpha)>,
    /// always >= 2.
    pub fn a_alpha(&self, alpha: usize) -> Result<Int> {
        if self.i_set.contains(&alpha) {
            return Err(Error::Precondition("a_alpha: alpha must lie outside I".into()));
        }
        let rd = &self.root_datum;
        let inside = rd.positive_roots_supported_on(&self.i_set);
        let mut total = Int::zero();
        for beta in &rd.positive_roots {
            if inside.contains(beta) {
                continue;
            }
            total += rd.pair_with_simple_coroot(beta, alpha);
        }
        debug_assert!(total >= int(2), "a_alpha bound violated");
        Ok(total)
    }

    /// Levi subset I' = I together with the alphas of the given colors.
    pub fn levi_subset(&self, colors: &[Color]) -> BTreeSet<usize> {
        let mut out = self.i_set.clone();
        out.extend(colors.iter().map(|c| c.alpha));
        out
    }

    /// Weyl dimension formula for the Levi with simple roots I', applied to
    /// a weight m (weight coordinates). Requires m dominant for the Levi.
    pub fn weyl_dim(&self, levi: &BTreeSet<usize>, m: &[Int]) -> Result<Int> {
        let rd = &self.root_datum;
        if m.len() != rd.weight_rank() {
            return Err(Error::DimensionMismatch("weyl_dim weight length".into()));
        }
        for &i in levi {
            if m[i].is_negative() {
                return Err(Error::Precondition(format!(
                    "weight not dominant for the Levi: coordinate {} is negative",
                    i + 1
                )));
            }
        }
        let mut dim = Rat::one();
        for beta in rd.positive_roots_supported_on(levi) {
            // <x, coroot(beta)> = sum_j c_j d_j x_j / d_beta; the common
            // factor d_beta cancels in the quotient and is omitted.
            let pair = |x: &dyn Fn(usize) -> Int| -> Rat {
                let mut s = Rat::zero();
                for j in 0..rd.simple_rank() {
                    if !beta[j].is_zero() {
                        s += Rat::from(&beta[j] * &rd.symmetrizers[j] * x(j));
                    }
                }
                s
            };
            let num = pair(&|j| {
                let rho = if levi.contains(&j) { Int::one() } else { Int::zero() };
                &m[j] + rho
            });
            let den = pair(&|j| if levi.contains(&j) { Int::one() } else { Int::zero() });
            dim *= num / den;
        }
        if !dim.is_integer() {
            return Err(Error::InvalidInput("Weyl dimension did not come out integral".into()));
        }
        Ok(dim.to_integer())
    }
}

/// Order of the reflection group generated by the simple reflections of the
/// given index set, computed by explicit matrix generation on the root
/// coordinate space. Exponential; intended as a test oracle at rank <= 3.
pub fn weyl_order_matrix_oracle(rd: &RootDatum, j_set: &BTreeSet<usize>) -> usize {
    let n = rd.simple_rank();
    let id = IntMatrix::identity(n);
    // s_i(alpha_j) = alpha_j - cartan[i][j] alpha_i, as matrices on
    // simple-root coordinates.
    let gens: Vec<IntMatrix> = j_set
        .iter()
        .map(|&i| {
            let mut s = IntMatrix::identity(n);
            for j in 0..n {
                let v = &s[(i, j)] - &rd.cartan[(i, j)];
                s[(i, j)] = v;
            }
            s
        })
        .collect();
    let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
    let flat = |m: &IntMatrix| -> Vec<Int> {
        (0..n).flat_map(|r| m.row(r).to_vec()).collect()
    };
    let mut frontier = vec![id];
    seen.insert(flat(&frontier[0]));
    while let Some(w) = frontier.pop() {
        for g in &gens {
            let next = g.mul(&w);
            if seen.insert(flat(&next)) {
                frontier.push(next);
            }
        }
    }
    seen.len()
}
