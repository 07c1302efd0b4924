//! Generator lists of the relation ideals `I_1` and `I_2`.
//!
//! Each family is a list of templates written in a small text form:
//! `d` is δ, `A[x,y]` a variable, and subscripts may be `x`, `y`, `z`,
//! `aob` for `a∘b` or `a*b` for `a∗b`.

mod basis;
mod template;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::biquandle::Biquandle;
use crate::error::{Error, Result};
use crate::poly::{Domain, Polynomial};
pub use basis::{cache_dir, cache_path, IdealBasis, CACHE_ENV, CACHE_FORMAT};
pub use template::Template;

/// How δ enters the generators.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaSpec {
    Value(i64),
    Symbolic,
}

impl Default for DeltaSpec {
    fn default() -> Self {
        DeltaSpec::Value(1)
    }
}

impl std::fmt::Display for DeltaSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeltaSpec::Value(v) => write!(f, "{v}"),
            DeltaSpec::Symbolic => write!(f, "delta"),
        }
    }
}

/// Reading of the two third-move templates whose first summand mixes the
/// subscript `x,z` into the left-hand side.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum R3Reading {
    /// Left-hand terms all use the subscripts `(x,y), (y,z), (x∘y, z∗y)`.
    #[default]
    Consistent,
    /// The subscripts exactly as printed.
    Literal,
}

struct Family {
    name: &'static str,
    arity: usize,
    templates: Vec<&'static str>,
}

const R3_COMMON: [&str; 12] = [
    "A[x,y]A[y,z]A[xoy,z*y] + C[x,y]C[y,z]A[xoy,z*y] - A[x,z]A[y*x,z*x]A[xoz,yoz] - A[x,z]C[y*x,z*x]C[xoz,yoz]",
    "A[x,y]B[y,z]B[xoy,z*y] + C[x,y]B[y,z]C[xoy,z*y] - B[x,z]B[y*x,z*x]A[xoz,yoz] - C[x,z]B[y*x,z*x]C[xoz,yoz]",
    "B[x,y]A[y,z]B[xoy,z*y] + B[x,y]C[y,z]C[xoy,z*y] - B[x,z]A[y*x,z*x]B[xoz,yoz] - C[x,z]C[y*x,z*x]B[xoz,yoz]",
    "A[x,y]C[y,z]A[xoy,z*y] + C[x,y]A[y,z]A[xoy,z*y] - C[x,z]A[y*x,z*x]A[xoz,yoz]",
    "A[x,y]A[y,z]C[xoy,z*y] - A[x,z]A[y*x,z*x]C[xoz,yoz] - A[x,z]C[y*x,z*x]A[xoz,yoz]",
    "A[x,y]C[y,z]B[xoy,z*y] - B[x,z]B[y*x,z*x]C[xoz,yoz] - C[x,z]B[y*x,z*x]A[xoz,yoz]",
    "@7",
    "@8",
    "C[x,y]A[y,z]B[xoy,z*y] - B[x,z]C[y*x,z*x]B[xoz,yoz] - C[x,z]A[y*x,z*x]B[xoz,yoz]",
    "C[x,y]C[y,z]B[xoy,z*y] - B[x,z]C[y*x,z*x]C[xoz,yoz]",
    "A[x,y]C[y,z]C[xoy,z*y] - C[x,z]C[y*x,z*x]A[xoz,yoz]",
    "C[x,y]A[y,z]C[xoy,z*y] - C[x,z]A[y*x,z*x]C[xoz,yoz]",
];

const R3_SEVEN: [&str; 2] = [
    "B[x,y]C[y,z]B[xoy,z*y] + B[x,y]A[y,z]C[xoy,z*y] - B[x,z]A[y*x,z*x]C[xoz,yoz]",
    "B[x,y]C[y,z]B[xoy,z*y] + B[x,z]A[y,z]C[xoy,z*y] - B[x,z]A[y*x,z*x]C[xoz,yoz]",
];

const R3_EIGHT: [&str; 2] = [
    "A[x,y]B[y,z]C[xoy,z*y] + C[x,y]B[y,z]B[xoy,z*y] - B[x,z]C[y*x,z*x]A[xoz,yoz]",
    "A[x,y]B[y,z]C[xoy,z*y] + C[x,z]B[y,z]B[xoy,z*y] - B[x,z]C[y*x,z*x]A[xoz,yoz]",
];

fn families(variant: u8) -> Result<Vec<Family>> {
    Ok(match variant {
        1 => vec![
            Family {
                name: "(i)_1",
                arity: 1,
                templates: vec!["dA[x,x] + B[x,x] - 1", "dD[x,x] + E[x,x] - 1", "C[x,x]", "F[x,x]"],
            },
            Family {
                name: "(ii)_1",
                arity: 2,
                templates: vec![
                    "A[x,y]F[x,y]",
                    "C[x,y]D[x,y]",
                    "B[x,y]F[x,y]",
                    "C[x,y]E[x,y]",
                    "A[x,y]D[x,y] - B[x,y]E[x,y]",
                    "A[x,y]D[x,y] + C[x,y]F[x,y] - 1",
                    "dA[x,y]D[x,y] + A[x,y]E[x,y] + B[x,y]D[x,y]",
                ],
            },
            Family {
                name: "(iii)_1",
                arity: 3,
                templates: R3_COMMON
                    .iter()
                    .copied()
                    .chain([
                        "B[x,y]C[y,z]A[xoy,z*y]",
                        "C[x,y]B[y,z]A[xoy,z*y]",
                        "B[x,y]B[y,z]C[xoy,z*y]",
                        "C[x,y]C[y,z]C[xoy,z*y]",
                        "A[x,z]B[y*x,z*x]C[xoz,yoz]",
                        "A[x,z]C[y*x,z*x]B[xoz,yoz]",
                        "C[x,z]B[y*x,z*x]B[xoz,yoz]",
                        "C[x,z]C[y*x,z*x]C[xoz,yoz]",
                        "A[x,y]A[y,z]B[xoy,z*y] - A[x,z]B[y*x,z*x]A[xoz,yoz] - A[x,z]A[y*x,z*x]B[xoz,yoz] \
                         - dA[x,z]B[y*x,z*x]B[xoz,yoz] - B[x,z]B[y*x,z*x]B[xoz,yoz]",
                        "B[x,z]A[y*x,z*x]A[xoz,yoz] - B[x,y]A[y,z]A[xoy,z*y] - A[x,y]B[y,z]A[xoy,z*y] \
                         - dB[x,y]B[y,z]A[xoy,z*y] - B[x,y]B[y,z]B[xoy,z*y]",
                    ])
                    .collect(),
            },
        ],
        2 => vec![
            Family { name: "(i)_2", arity: 1, templates: vec!["dA[x,x] + B[x,x] + C[x,x] - 1", "dD[x,x] + E[x,x] + F[x,x] - 1"] },
            Family {
                name: "(ii)_2",
                arity: 2,
                templates: vec![
                    "A[x,y]F[x,y] + C[x,y]D[x,y]",
                    "B[x,y]F[x,y] + C[x,y]E[x,y]",
                    "A[x,y]D[x,y] - B[x,y]E[x,y]",
                    "A[x,y]D[x,y] + C[x,y]F[x,y] - 1",
                    "dA[x,y]D[x,y] + A[x,y]E[x,y] + B[x,y]D[x,y]",
                ],
            },
            Family {
                name: "(iii)_2",
                arity: 3,
                templates: R3_COMMON
                    .iter()
                    .copied()
                    .chain([
                        "C[x,y]C[y,z]C[xoy,z*y]",
                        "C[x,z]C[y*x,z*x]C[xoz,yoz]",
                        "A[x,y]A[y,z]B[xoy,z*y] - A[x,z]B[y*x,z*x]A[xoz,yoz] - A[x,z]A[y*x,z*x]B[xoz,yoz] \
                         - dA[x,z]B[y*x,z*x]B[xoz,yoz] - B[x,z]B[y*x,z*x]B[xoz,yoz] - A[x,z]B[y*x,z*x]C[xoz,yoz] \
                         - A[x,z]C[y*x,z*x]B[xoz,yoz] - C[x,z]B[y*x,z*x]B[xoz,yoz]",
                        "B[x,z]A[y*x,z*x]A[xoz,yoz] - B[x,y]A[y,z]A[xoy,z*y] - A[x,y]B[y,z]A[xoy,z*y] \
                         - dB[x,y]B[y,z]A[xoy,z*y] - B[x,y]B[y,z]B[xoy,z*y] - B[x,y]C[y,z]A[xoy,z*y] \
                         - C[x,y]B[y,z]A[xoy,z*y] - B[x,y]B[y,z]C[xoy,z*y]",
                    ])
                    .collect(),
            },
        ],
        v => return Err(Error::InvalidVariant(v)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCount {
    pub family: String,
    pub templates: usize,
    /// Instances before removing duplicates and zeros.
    pub instances: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealManifest {
    pub format: String,
    pub biquandle_hash: String,
    pub m: usize,
    pub variant: u8,
    pub delta: DeltaSpec,
    pub reading: R3Reading,
    pub families: Vec<FamilyCount>,
    pub raw_count: usize,
    pub generator_count: usize,
}

impl IdealManifest {
    /// Content hash used as the cache key.
    pub fn key(&self) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(self).expect("serializable"));
        hex::encode(h.finalize())
    }
}

#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub manifest: IdealManifest,
    /// Every instance in family order, then lexicographic subscripts.
    pub raw: Vec<Polynomial>,
    /// `raw` without zeros and repeated copies.
    pub generators: Vec<Polynomial>,
}

/// Instantiates every template of `I_j` over all subscripts.
pub fn build_ideal(b: &Biquandle, variant: u8, delta: DeltaSpec) -> Result<IdealSpec> {
    build_ideal_with(b, variant, delta, R3Reading::default())
}

pub fn build_ideal_with(b: &Biquandle, variant: u8, delta: DeltaSpec, reading: R3Reading) -> Result<IdealSpec> {
    let fams = families(variant)?;
    let pick = match reading {
        R3Reading::Consistent => 0,
        R3Reading::Literal => 1,
    };
    let m = b.m();
    let mut raw = Vec::new();
    let mut counts = Vec::new();
    for fam in fams {
        let templates: Vec<Template> = fam
            .templates
            .iter()
            .map(|t| match *t {
                "@7" => R3_SEVEN[pick],
                "@8" => R3_EIGHT[pick],
                t => t,
            })
            .map(|t| Template::parse(t).expect("built-in template"))
            .collect();
        let before = raw.len();
        let tuples: Vec<[usize; 3]> = match fam.arity {
            1 => (1..=m).map(|x| [x, x, x]).collect(),
            2 => (1..=m).flat_map(|x| (1..=m).map(move |y| [x, y, y])).collect(),
            _ => (1..=m).flat_map(|x| (1..=m).flat_map(move |y| (1..=m).map(move |z| [x, y, z]))).collect(),
        };
        for t in &templates {
            for &[x, y, z] in &tuples {
                raw.push(t.instantiate(b, x, y, z, delta));
            }
        }
        counts.push(FamilyCount { family: fam.name.into(), templates: templates.len(), instances: raw.len() - before });
    }
    let mut seen = std::collections::HashSet::new();
    let generators: Vec<Polynomial> =
        raw.iter().filter(|g| !g.is_zero() && seen.insert(g.to_string())).cloned().collect();
    let manifest = IdealManifest {
        format: "pbb-ideal/1".into(),
        biquandle_hash: b.hash(),
        m,
        variant,
        delta,
        reading,
        families: counts,
        raw_count: raw.len(),
        generator_count: generators.len(),
    };
    Ok(IdealSpec { manifest, raw, generators })
}

impl IdealSpec {
    pub fn domain(&self) -> Domain {
        Domain::Integers
    }

    /// JSON document: manifest plus generators in the polynomial JSON form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "manifest": self.manifest,
            "generators": self.generators.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
        })
    }
}
