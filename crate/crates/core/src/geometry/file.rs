//! TOML body files.
//!
//! ```toml
//! type = "ellipsoid"       # ball | ellipsoid | polytope | cube | radial_series
//! dim = 3
//! mollify = 0.05          # optional shell-average scale
//!
//! [parameters]
//! center = [0.0, 0.0, 0.1]
//! semi_axes = [1.0, 1.2, 0.8]
//! axes = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]   # optional, unit principal axes
//! ```
//!
//! Parameters per type:
//! `ball`: `center`, `radius`;
//! `polytope`: `normals` (unit vectors), `offsets` (positive);
//! `cube`: `half`, optional `shift`;
//! `radial_series`: `base`, `terms = [[degree, index, coeff], ...]` in the
//! real orthonormal harmonic basis.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::body::StarBody;
use super::mollify::mollify;
use super::spec::{ConvexBodySpec, SeriesTerm};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BodyFile {
    #[serde(rename = "type")]
    pub kind: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mollify: Option<f64>,
    pub parameters: toml::Table,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BallParams {
    center: Option<Vec<f64>>,
    radius: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EllipsoidParams {
    center: Option<Vec<f64>>,
    semi_axes: Vec<f64>,
    axes: Option<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeParams {
    normals: Vec<Vec<f64>>,
    offsets: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeParams {
    half: f64,
    shift: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesParams {
    base: f64,
    #[serde(default)]
    terms: Vec<(usize, usize, f64)>,
}

fn params<T: for<'de> Deserialize<'de>>(t: &toml::Table) -> Result<T> {
    toml::Value::Table(t.clone()).try_into().map_err(|e: toml::de::Error| Error::Parse(e.message().to_string()))
}

fn check_len(what: &str, v: &[f64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::Parse(format!("{what} has length {}, expected dim = {n}", v.len())));
    }
    Ok(())
}

impl BodyFile {
    pub fn from_spec(spec: &ConvexBodySpec) -> Self {
        let mut p = toml::Table::new();
        let arr = |v: &[f64]| toml::Value::Array(v.iter().map(|c| toml::Value::Float(*c)).collect());
        let kind = match spec {
            ConvexBodySpec::Ball { center, radius } => {
                p.insert("center".into(), arr(center));
                p.insert("radius".into(), toml::Value::Float(*radius));
                "ball"
            }
            ConvexBodySpec::Ellipsoid { center, semi_axes, axes } => {
                p.insert("center".into(), arr(center));
                p.insert("semi_axes".into(), arr(semi_axes));
                p.insert("axes".into(), toml::Value::Array(axes.iter().map(|a| arr(a)).collect()));
                "ellipsoid"
            }
            ConvexBodySpec::Polytope { normals, offsets } => {
                p.insert("normals".into(), toml::Value::Array(normals.iter().map(|a| arr(a)).collect()));
                p.insert("offsets".into(), arr(offsets));
                "polytope"
            }
            ConvexBodySpec::RadialSeries { base, terms, .. } => {
                p.insert("base".into(), toml::Value::Float(*base));
                let t = terms
                    .iter()
                    .map(|t| {
                        toml::Value::Array(vec![
                            toml::Value::Integer(t.degree as i64),
                            toml::Value::Integer(t.index as i64),
                            toml::Value::Float(t.coeff),
                        ])
                    })
                    .collect();
                p.insert("terms".into(), toml::Value::Array(t));
                "radial_series"
            }
        };
        BodyFile { kind: kind.into(), dim: spec.dim(), mollify: None, parameters: p }
    }

    pub fn to_spec(&self) -> Result<ConvexBodySpec> {
        let n = self.dim;
        let zero = || vec![0.0; n];
        let spec = match self.kind.as_str() {
            "ball" => {
                let b: BallParams = params(&self.parameters)?;
                ConvexBodySpec::Ball { center: b.center.unwrap_or_else(zero), radius: b.radius }
            }
            "ellipsoid" => {
                let e: EllipsoidParams = params(&self.parameters)?;
                check_len("semi_axes", &e.semi_axes, n)?;
                let axes = e.axes.unwrap_or_else(|| {
                    (0..n)
                        .map(|i| {
                            let mut a = vec![0.0; n];
                            a[i] = 1.0;
                            a
                        })
                        .collect()
                });
                ConvexBodySpec::Ellipsoid { center: e.center.unwrap_or_else(zero), semi_axes: e.semi_axes, axes }
            }
            "polytope" => {
                let p: PolytopeParams = params(&self.parameters)?;
                for a in &p.normals {
                    check_len("normal", a, n)?;
                }
                ConvexBodySpec::Polytope { normals: p.normals, offsets: p.offsets }
            }
            "cube" => {
                let c: CubeParams = params(&self.parameters)?;
                let shift = c.shift.unwrap_or_else(zero);
                check_len("shift", &shift, n)?;
                ConvexBodySpec::cube(n, c.half, &shift)
            }
            "radial_series" => {
                let s: SeriesParams = params(&self.parameters)?;
                ConvexBodySpec::RadialSeries {
                    dim: n,
                    base: s.base,
                    terms: s.terms.into_iter().map(|(degree, index, coeff)| SeriesTerm { degree, index, coeff }).collect(),
                }
            }
            other => return Err(Error::Parse(format!("unknown body type '{other}'"))),
        };
        if let ConvexBodySpec::Ball { center, .. } | ConvexBodySpec::Ellipsoid { center, .. } = &spec {
            check_len("center", center, n)?;
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<StarBody> {
        let body = self.to_spec()?.build()?;
        match self.mollify {
            Some(d) => mollify(&body, d),
            None => Ok(body),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("body file serializes")
    }
}

/// Reads and builds a body file.
pub fn load_body(path: &Path) -> Result<StarBody> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    BodyFile::parse(&text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_specs() {
        let specs = [
            ConvexBodySpec::shifted_ball(3, 0.2),
            ConvexBodySpec::ellipsoid(vec![1.0, 1.2, 0.8]),
            ConvexBodySpec::cube(2, 1.0, &[0.1, 0.0]),
            ConvexBodySpec::RadialSeries { dim: 3, base: 1.0, terms: vec![SeriesTerm { degree: 2, index: 3, coeff: 0.01 }] },
        ];
        for s in specs {
            let text = BodyFile::from_spec(&s).to_toml();
            assert_eq!(BodyFile::parse(&text).unwrap().to_spec().unwrap(), s);
        }
    }

    #[test]
    fn cube_and_errors() {
        let f = BodyFile::parse("type = \"cube\"\ndim = 3\n[parameters]\nhalf = 1.0\n").unwrap();
        assert!(f.build().is_ok());
        assert!(BodyFile::parse("type = \"ball\"\n").is_err());
        let bad = BodyFile::parse("type = \"ball\"\ndim = 3\n[parameters]\ncenter = [0.0]\nradius = 1.0\n").unwrap();
        assert!(bad.to_spec().is_err());
        let unknown = BodyFile::parse("type = \"torus\"\ndim = 3\n[parameters]\n").unwrap();
        assert!(unknown.to_spec().is_err());
    }
}
