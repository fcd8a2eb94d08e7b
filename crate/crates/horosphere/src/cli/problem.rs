//! JSON problem files: schema types, parsing into the library model, and
//! re-emission. Rationals are "p/q" strings throughout; points are "inf",
//! rationals, or opaque labels.

use crate::error::{Error, Result};
use crate::fan::DivisorialFan;
use crate::geometry::BStableDivisor;
use crate::lattice::{Int, IntMatrix, Rat};
use crate::pdiv::{ColoredPolyhedralDivisor, CurveKind, CurveQDivisor, CurveWithOpen, Point};
use crate::polyhedra::{Cone, Polyhedron};
use crate::rootdata::{HorosphericalDatum, RootDatum, SimpleType};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProblemFile {
    pub schema_version: u32,
    pub group: GroupSpec,
    pub lattice: LatticeSpec,
    #[serde(rename = "I", default)]
    pub i_set: Vec<String>,
    pub curve: CurveSpec,
    pub fan: Vec<ItemSpec>,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSpec {
    #[serde(default)]
    pub factors: Vec<FactorSpec>,
    #[serde(default)]
    pub torus_rank: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorSpec {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeSpec {
    #[serde(rename = "M_basis")]
    pub m_basis: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum CurveKindSpec {
    Name(String),
    Genus { genus: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CurveSpec {
    pub kind: CurveKindSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ItemSpec {
    #[serde(default)]
    pub chart_removed_points: Vec<String>,
    pub tail_rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub coefficients: Vec<CoeffSpec>,
    #[serde(default)]
    pub colors: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoeffSpec {
    pub point: String,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_divisor: Option<Vec<CurveCoeffSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub commands: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CurveCoeffSpec {
    pub point: String,
    pub coeff: String,
}

/// A B-stable divisor as a standalone file (for `cartier`).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct DivisorFile {
    #[serde(default)]
    pub vertices: Vec<VertexCoeffSpec>,
    #[serde(default)]
    pub rays: Vec<RayCoeffSpec>,
    #[serde(default)]
    pub colors: Vec<ColorCoeffSpec>,
    #[serde(default)]
    pub curve: Vec<CurveCoeffSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexCoeffSpec {
    pub point: String,
    pub v: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RayCoeffSpec {
    pub ray: Vec<i64>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ColorCoeffSpec {
    pub alpha: String,
    pub coeff: String,
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::InvalidInput(format!("cannot parse rational '{s}': {e}")))
}

pub fn parse_point(s: &str) -> Point {
    match s.trim() {
        "inf" | "infinity" => Point::Infinity,
        t => match Rat::from_str(t) {
            Ok(q) => Point::Finite(q),
            Err(_) => Point::Named(t.to_string()),
        },
    }
}

pub fn point_to_string(p: &Point) -> String {
    p.to_string()
}

pub fn rat_to_string(q: &Rat) -> String {
    q.to_string()
}

impl ProblemFile {
    pub fn from_path(path: &std::path::Path) -> Result<ProblemFile> {
        let text = std::fs::read_to_string(path)?;
        let file: ProblemFile = serde_json::from_str(&text)?;
        if file.schema_version != 1 {
            return Err(Error::InvalidInput(format!(
                "unsupported schema_version {}",
                file.schema_version
            )));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn datum(&self) -> Result<HorosphericalDatum> {
        let factors: Vec<(SimpleType, usize)> = self
            .group
            .factors
            .iter()
            .map(|f| Ok((parse_type(&f.kind)?, f.rank)))
            .collect::<Result<_>>()?;
        let rd = RootDatum::new(&factors, self.group.torus_rank)?;
        let rows: Vec<Vec<Int>> = self
            .lattice
            .m_basis
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        if rows.iter().any(|r| r.len() != rd.weight_rank()) {
            return Err(Error::InvalidInput(format!(
                "lattice.M_basis: rows must have length {}",
                rd.weight_rank()
            )));
        }
        let m_basis = IntMatrix::from_rows(rd.weight_rank(), &rows);
        let i_set = self
            .i_set
            .iter()
            .map(|l| rd.label_index(l))
            .collect::<Result<_>>()?;
        HorosphericalDatum::new(rd, m_basis, i_set)
    }

    pub fn curve_kind(&self) -> Result<CurveKind> {
        match &self.curve.kind {
            CurveKindSpec::Name(n) if n == "P1" => Ok(CurveKind::P1),
            CurveKindSpec::Name(n) => {
                Err(Error::InvalidInput(format!("curve.kind: unknown curve '{n}'")))
            }
            CurveKindSpec::Genus { genus } if *genus >= 1 => {
                Ok(CurveKind::Abstract { genus: *genus })
            }
            CurveKindSpec::Genus { .. } => {
                Err(Error::InvalidInput("curve.kind: genus must be >= 1".into()))
            }
        }
    }

    pub fn fan(&self, datum: &HorosphericalDatum) -> Result<DivisorialFan> {
        let kind = self.curve_kind()?;
        let n = datum.rank();
        let all_colors = datum.colors();
        let mut items = Vec::new();
        for (idx, spec) in self.fan.iter().enumerate() {
            let at = |msg: &str| format!("fan[{idx}]: {msg}");
            let removed = spec.chart_removed_points.iter().map(|s| parse_point(s)).collect();
            let curve = CurveWithOpen { kind: kind.clone(), removed };
            let rays: Vec<Vec<Int>> = spec
                .tail_rays
                .iter()
                .map(|r| {
                    if r.len() != n {
                        return Err(Error::InvalidInput(at(&format!(
                            "tail_rays entries must have length {n}"
                        ))));
                    }
                    Ok(r.iter().map(|&x| Int::from(x)).collect())
                })
                .collect::<Result<_>>()?;
            let tail = Cone::from_rays(n, &rays);
            let mut coeffs = BTreeMap::new();
            for c in &spec.coefficients {
                let verts: Vec<Vec<Rat>> = c
                    .vertices
                    .iter()
                    .map(|v| {
                        if v.len() != n {
                            return Err(Error::InvalidInput(at(&format!(
                                "coefficient vertices must have length {n}"
                            ))));
                        }
                        v.iter().map(|s| parse_rat(s)).collect()
                    })
                    .collect::<Result<_>>()?;
                coeffs.insert(parse_point(&c.point), Polyhedron::new(n, &verts, &tail)?);
            }
            let colors = spec
                .colors
                .iter()
                .map(|label| {
                    all_colors
                        .iter()
                        .find(|c| &c.label == label)
                        .cloned()
                        .ok_or_else(|| {
                            Error::InvalidInput(at(&format!("unknown color label '{label}'")))
                        })
                })
                .collect::<Result<_>>()?;
            items.push(ColoredPolyhedralDivisor::new(curve, tail, coeffs, colors)?);
        }
        DivisorialFan::new(items)
    }

    pub fn canonical_choice(&self) -> Result<Option<CurveQDivisor>> {
        let Some(spec) = &self.options.canonical_divisor else { return Ok(None) };
        Ok(Some(curve_divisor(spec)?))
    }
}

pub fn curve_divisor(spec: &[CurveCoeffSpec]) -> Result<CurveQDivisor> {
    let mut out = CurveQDivisor::zero();
    for c in spec {
        out.add(parse_point(&c.point), parse_rat(&c.coeff)?);
    }
    Ok(out)
}

fn parse_type(s: &str) -> Result<SimpleType> {
    match s {
        "A" => Ok(SimpleType::A),
        "B" => Ok(SimpleType::B),
        "C" => Ok(SimpleType::C),
        "D" => Ok(SimpleType::D),
        "E" => Ok(SimpleType::E),
        "F" => Ok(SimpleType::F),
        "G" => Ok(SimpleType::G),
        _ => Err(Error::InvalidInput(format!("group.factors: unknown type '{s}'"))),
    }
}

impl DivisorFile {
    pub fn from_path(path: &std::path::Path) -> Result<DivisorFile> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn to_divisor(&self, datum: &HorosphericalDatum) -> Result<BStableDivisor> {
        let mut d = BStableDivisor::zero();
        for v in &self.vertices {
            let vv: Vec<Rat> = v.v.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
            d.coeff_vert.insert((parse_point(&v.point), vv), parse_rat(&v.coeff)?);
        }
        for r in &self.rays {
            let rho: Vec<Int> = r.ray.iter().map(|&x| Int::from(x)).collect();
            d.coeff_ray.insert(rho, parse_rat(&r.coeff)?);
        }
        let colors = datum.colors();
        for c in &self.colors {
            let color = colors.iter().find(|x| x.label == c.alpha).ok_or_else(|| {
                Error::InvalidInput(format!("divisor: unknown color label '{}'", c.alpha))
            })?;
            d.coeff_color.insert(color.alpha, parse_rat(&c.coeff)?);
        }
        d.curve_part = curve_divisor(&self.curve)?;
        Ok(d)
    }
}

/// Re-encodes a fan (e.g. the output of `resolve`) as problem-file items.
pub fn fan_to_specs(fan: &DivisorialFan) -> Vec<ItemSpec> {
    fan.items
        .iter()
        .map(|item| ItemSpec {
            chart_removed_points: item.curve.removed.iter().map(point_to_string).collect(),
            tail_rays: item
                .tail()
                .rays()
                .iter()
                .map(|r| r.iter().map(int_to_i64).collect())
                .collect(),
            coefficients: item
                .nontrivial_coeffs()
                .map(|(z, p)| CoeffSpec {
                    point: point_to_string(z),
                    vertices: p
                        .vertices()
                        .iter()
                        .map(|v| v.iter().map(rat_to_string).collect())
                        .collect(),
                })
                .collect(),
            colors: item.colors.iter().map(|c| c.label.clone()).collect(),
        })
        .collect()
}

fn int_to_i64(x: &Int) -> i64 {
    use num::ToPrimitive;
    x.to_i64().expect("ray coordinate fits in i64")
}

/// A divisor re-encoded for reports.
pub fn divisor_to_spec(d: &BStableDivisor, datum: &HorosphericalDatum) -> DivisorFile {
    let colors = datum.colors();
    DivisorFile {
        vertices: d
            .coeff_vert
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((z, v), c)| VertexCoeffSpec {
                point: point_to_string(z),
                v: v.iter().map(rat_to_string).collect(),
                coeff: rat_to_string(c),
            })
            .collect(),
        rays: d
            .coeff_ray
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(rho, c)| RayCoeffSpec {
                ray: rho.iter().map(int_to_i64).collect(),
                coeff: rat_to_string(c),
            })
            .collect(),
        colors: d
            .coeff_color
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(alpha, c)| ColorCoeffSpec {
                alpha: colors
                    .iter()
                    .find(|x| x.alpha == *alpha)
                    .map(|x| x.label.clone())
                    .unwrap_or_else(|| format!("alpha{}", alpha + 1)),
                coeff: rat_to_string(c),
            })
            .collect(),
        curve: d
            .curve_part
            .iter()
            .map(|(z, c)| CurveCoeffSpec {
                point: point_to_string(z),
                coeff: rat_to_string(c),
            })
            .collect(),
    }
}
