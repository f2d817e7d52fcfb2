//! Problem instances `(K/k, m, S)` and their JSON form.

use serde::{Deserialize, Serialize};

use crate::cyclic::CyclicExtension;
use crate::error::{Error, Result};
use crate::field::{Field, NFElement, NumberField};
use crate::places::{real_places, split_prime, validate_place, Place};
use crate::poly::Polynomial;
use crate::real::RootInterval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    General,
    Abelian,
    Cyclic,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Mode::General),
            "abelian" => Ok(Mode::Abelian),
            "cyclic" => Ok(Mode::Cyclic),
            _ => Err(Error::Malformed(format!("unknown mode {s:?}"))),
        }
    }
}

/// A place as written by a user: finite places may omit the factor (then `index`
/// selects among the primes over `q` in canonical order), real places may omit the interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PlaceSpec {
    Finite {
        q: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        factor: Option<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        e: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        f: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        index: Option<usize>,
    },
    Real {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        interval: Option<RootInterval>,
        #[serde(default)]
        index: usize,
    },
}

impl PlaceSpec {
    pub fn resolve(&self, k: &Field) -> Result<Place> {
        match self {
            PlaceSpec::Finite { q, factor: Some(factor), e, f, .. } => {
                let all = split_prime(k, *q)?;
                let fac = crate::fp::FpPoly::new(*q, factor.clone());
                let p = all
                    .into_iter()
                    .find(|p| matches!(p, Place::Finite { factor: g, .. } if *g == fac))
                    .ok_or_else(|| Error::Malformed(format!("no prime over {q} with the given factor")))?;
                if let Place::Finite { e: pe, f: pf, .. } = &p {
                    if e.is_some_and(|x| x != *pe) || f.is_some_and(|x| x != *pf) {
                        return Err(Error::Malformed(format!("wrong (e, f) for the prime over {q}")));
                    }
                }
                Ok(p)
            }
            PlaceSpec::Finite { q, index, .. } => {
                let all = split_prime(k, *q)?;
                let i = index.unwrap_or(0);
                all.get(i).cloned().ok_or_else(|| Error::Malformed(format!("only {} primes over {q}", all.len())))
            }
            PlaceSpec::Real { interval, index } => {
                let all = real_places(k);
                let p = all.get(*index).cloned().ok_or_else(|| Error::Malformed(format!("no real place #{index}")))?;
                if let Some(iv) = interval {
                    let given = Place::Real { interval: iv.clone(), index: *index };
                    validate_place(k, &given)?;
                }
                Ok(p)
            }
        }
    }

    pub fn from_place(p: &Place) -> Self {
        match p {
            Place::Finite { q, factor, e, f } => PlaceSpec::Finite {
                q: *q,
                factor: Some(factor.coeffs().to_vec()),
                e: Some(*e),
                f: Some(*f),
                index: None,
            },
            Place::Real { interval, index } => PlaceSpec::Real { interval: Some(interval.clone()), index: *index },
        }
    }
}

/// JSON form of `K/k`: the defining polynomial of `K` and the image of its generator under `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub field: Vec<String>,
    pub sigma: Vec<String>,
}

impl ExtensionJson {
    pub fn build(&self) -> Result<CyclicExtension> {
        let k = NumberField::new(Polynomial::from_json(&self.field)?)?;
        let s = NFElement::from_json(&k, &self.sigma)?;
        CyclicExtension::new(&k, s)
    }

    pub fn from_extension(e: &CyclicExtension) -> Self {
        ExtensionJson { field: e.field().poly().to_json(), sigma: e.sigma().to_json() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub extension: ExtensionJson,
    pub m: u64,
    #[serde(default)]
    pub places: Vec<PlaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

/// `(K/k, m, S)` with `S` resolved to places of `K`.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub extension: CyclicExtension,
    pub m: u64,
    pub places: Vec<Place>,
    pub mode: Mode,
}

impl ProblemInstance {
    pub fn new(extension: CyclicExtension, m: u64, places: Vec<Place>, mode: Mode) -> Result<Self> {
        if m == 0 {
            return Err(Error::Malformed("m must be positive".into()));
        }
        for (i, p) in places.iter().enumerate() {
            validate_place(extension.field(), p)?;
            if places[..i].contains(p) {
                return Err(Error::Malformed(format!("place {} listed twice", p.label())));
            }
        }
        Ok(ProblemInstance { extension, m, places, mode })
    }

    pub fn from_json(j: &InstanceJson, mode: Option<Mode>) -> Result<Self> {
        let e = j.extension.build()?;
        let places = j.places.iter().map(|p| p.resolve(e.field())).collect::<Result<Vec<_>>>()?;
        let mode = mode.or(j.mode).unwrap_or(Mode::General);
        Self::new(e, j.m, places, mode)
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson {
            extension: ExtensionJson::from_extension(&self.extension),
            m: self.m,
            places: self.places.iter().map(PlaceSpec::from_place).collect(),
            mode: Some(self.mode),
        }
    }

    pub fn finite_places(&self) -> impl Iterator<Item = &Place> {
        self.places.iter().filter(|p| !p.is_real())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::examples;

    #[test]
    fn instance_round_trip() {
        let src = r#"{"extension":{"field":["-2","0","1"],"sigma":["0","-1"]},"m":2,
                     "places":[{"kind":"finite","q":3},{"kind":"real","index":1}],"mode":"cyclic"}"#;
        let j: InstanceJson = serde_json::from_str(src).unwrap();
        let inst = ProblemInstance::from_json(&j, None).unwrap();
        assert_eq!(inst.mode, Mode::Cyclic);
        assert_eq!(inst.places.len(), 2);
        let back = ProblemInstance::from_json(&inst.to_json(), None).unwrap();
        assert_eq!(back.places, inst.places);
        assert_eq!(back.extension.order(), 2);
    }

    #[test]
    fn rejects_duplicates_and_bad_places() {
        let e = examples::gaussian();
        let p = crate::places::first_place_over(e.field(), 5).unwrap();
        assert!(ProblemInstance::new(e.clone(), 2, vec![p.clone(), p], Mode::General).is_err());
        let spec = PlaceSpec::Real { interval: None, index: 0 };
        assert!(spec.resolve(e.field()).is_err());
        let spec = PlaceSpec::Finite { q: 5, factor: None, e: None, f: None, index: Some(2) };
        assert!(spec.resolve(e.field()).is_err());
    }
}
