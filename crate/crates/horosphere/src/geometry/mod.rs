//! Geometric criteria and invariants of the combinatorial models: rational
//! singularities, smoothness, divisor class groups, factoriality, Cartier
//! divisors and piecewise-linear functions, canonical classes, Gorenstein
//! indices, and log-terminality.

mod cartier;
mod classgroup;
mod rational;
mod smooth;

pub use cartier::{
    canonical_divisor, divisor_class, is_cartier, is_log_terminal, is_q_gorenstein,
    pl_to_divisor, CanonicalDivisor, CartierStatus, PLFunction, PLItem, QGorenstein,
};
pub use classgroup::{class_group, class_group_tvariety, is_factorial, FactorialityReport};
pub use rational::{has_rational_singularities, rational_brute_oracle};
pub use smooth::{check_colored_cone_smooth, is_smooth, SmoothStatus};

use crate::lattice::Rat;
use crate::pdiv::{CurveQDivisor, Point};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A B-stable Q-divisor in the coordinates of the orbit decomposition:
/// coefficients on the vertical prime divisors D_(z,v), the horizontal
/// prime divisors D_rho, the colors D_alpha, plus a residual Q-divisor of
/// whole fibers over points that are trivial in every item.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BStableDivisor {
    /// Keyed by (z, v) with v the rational vertex.
    pub coeff_vert: BTreeMap<(Point, Vec<Rat>), Rat>,
    /// Keyed by the primitive ray generator.
    pub coeff_ray: BTreeMap<Vec<crate::lattice::Int>, Rat>,
    /// Keyed by the simple-root index alpha.
    pub coeff_color: BTreeMap<usize, Rat>,
    /// Fibers over non-special points, as a divisor on the curve.
    pub curve_part: CurveQDivisor,
}

impl BStableDivisor {
    pub fn zero() -> BStableDivisor {
        BStableDivisor::default()
    }

    /// Weil divisor test: every coefficient integral.
    pub fn is_integral(&self) -> bool {
        self.coeff_vert.values().all(|c| c.is_integer())
            && self.coeff_ray.values().all(|c| c.is_integer())
            && self.coeff_color.values().all(|c| c.is_integer())
            && self.curve_part.is_integral()
    }
}

impl fmt::Display for BStableDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        let rat_vec = |v: &[Rat]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let int_vec = |v: &[crate::lattice::Int]| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        for ((z, v), c) in &self.coeff_vert {
            if !c.is_zero() {
                terms.push(format!("{c} D_({z},({}))", rat_vec(v)));
            }
        }
        for (rho, c) in &self.coeff_ray {
            if !c.is_zero() {
                terms.push(format!("{c} D_rho({})", int_vec(rho)));
            }
        }
        for (alpha, c) in &self.coeff_color {
            if !c.is_zero() {
                terms.push(format!("{c} D_alpha{}", alpha + 1));
            }
        }
        for (z, c) in self.curve_part.iter() {
            terms.push(format!("{c} F_{z}"));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
