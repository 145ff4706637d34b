//! JSON job description shared by the CLI and the bundled examples.
//!
//! ```json
//! {"ring": {"field": {"p": 3, "s": 2}, "f_roots": [0, 1, 2], "g_roots": [1, 2]},
//!  "n": 7, "autom": {"theta": 1}, "alpha": [1, 1, 2, 1, 2, 1],
//!  "gen": {"autom": {"theta": 1}, "coeffs": [[1, 1, 1, 1, 1, 1], ...]}}
//! ```
//!
//! A code is given either by `gen` (a polynomial over `R`, ascending) or by
//! `components`, a table of generators over `F_q` indexed by 1-based `(i, j)`.
//! Reports produced by [`code_report`] parse back as a `JobConfig`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::autom::Autom;
use crate::codes::Code;
use crate::display::{format_field_poly, format_ring_element, format_ring_poly};
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::ring::{Ring, RingElement, RingSpec};
use crate::skewpoly::{SkewPoly, SkewRing};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobConfig {
    pub ring: RingSpec,
    pub n: usize,
    pub autom: Autom,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen: Option<PolyInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentInput>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Tagged { autom: Autom, coeffs: Vec<Vec<u32>> },
    Plain(Vec<Vec<u32>>),
}

impl PolyInput {
    fn parts(&self) -> (Option<Autom>, &[Vec<u32>]) {
        match self {
            PolyInput::Tagged { autom, coeffs } => (Some(*autom), coeffs),
            PolyInput::Plain(coeffs) => (None, coeffs),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentInput {
    pub i: usize,
    pub j: usize,
    pub gen: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u32>,
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct Job {
    pub ring: Ring,
    pub n: usize,
    pub autom: Autom,
    pub alpha: RingElement,
    pub gen: Option<SkewPoly<RingElement>>,
    /// Per-coordinate generators in CRT order.
    pub components: Option<Vec<SkewPoly<FieldElement>>>,
}

fn config(msg: String) -> Error {
    Error::Config(msg)
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<JobConfig> {
        serde_json::from_str(text).map_err(|e| config(format!("JSON: {e}")))
    }

    pub fn resolve(&self) -> Result<Job> {
        let ring = Ring::new(&self.ring)?;
        ring.validate_autom(self.autom)?;
        if self.n == 0 {
            return Err(config("n: code length must be positive".into()));
        }
        let w = ring.width();
        let field = ring.field().clone();

        let mut alpha = match &self.alpha {
            Some(a) => Some(ring.element(a).map_err(|e| config(format!("alpha: {e}")))?),
            None => None,
        };

        let gen = match &self.gen {
            None => None,
            Some(p) => {
                let (tag, coeffs) = p.parts();
                if let Some(t) = tag {
                    if t != self.autom {
                        return Err(config(format!("gen.autom: {t} does not match autom {}", self.autom)));
                    }
                }
                if coeffs.is_empty() {
                    return Err(config("gen.coeffs: empty coefficient list".into()));
                }
                let cs = coeffs
                    .iter()
                    .enumerate()
                    .map(|(d, c)| ring.element(c).map_err(|e| config(format!("gen.coeffs[{d}]: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                Some(SkewRing::new(ring.clone(), self.autom)?.poly(cs))
            }
        };

        let components = match &self.components {
            None => None,
            Some(table) => {
                if self.autom == Autom::Psi {
                    return Err(config("components: psi codes do not split into component codes; give gen".into()));
                }
                let fr = SkewRing::new(field.clone(), self.autom)?;
                let mut slots: Vec<Option<SkewPoly<FieldElement>>> = vec![None; w];
                let mut alphas: Vec<Option<FieldElement>> = vec![None; w];
                for (m, c) in table.iter().enumerate() {
                    if c.i == 0 || c.i > ring.k() {
                        return Err(config(format!("components[{m}].i: {} out of range 1..={}", c.i, ring.k())));
                    }
                    if c.j == 0 || c.j > ring.l() {
                        return Err(config(format!("components[{m}].j: {} out of range 1..={}", c.j, ring.l())));
                    }
                    let slot = ring.coord(c.i - 1, c.j - 1);
                    if slots[slot].is_some() {
                        return Err(config(format!("components[{m}]: duplicate entry for (i, j) = ({}, {})", c.i, c.j)));
                    }
                    let g = c
                        .gen
                        .iter()
                        .enumerate()
                        .map(|(d, &x)| field.element(x).map_err(|e| config(format!("components[{m}].gen[{d}]: {e}"))))
                        .collect::<Result<Vec<_>>>()?;
                    let g = fr.poly(g);
                    if g.is_zero() {
                        return Err(config(format!("components[{m}].gen: zero polynomial")));
                    }
                    slots[slot] = Some(g);
                    if let Some(a) = c.alpha {
                        let a = field.element(a).map_err(|e| config(format!("components[{m}].alpha: {e}")))?;
                        if let Some(top) = &alpha {
                            if top.crt[slot] != a {
                                return Err(config(format!(
                                    "components[{m}].alpha: {} disagrees with alpha coordinate {}",
                                    a.index(),
                                    top.crt[slot].index()
                                )));
                            }
                        }
                        alphas[slot] = Some(a);
                    }
                }
                if let Some(missing) = slots.iter().position(Option::is_none) {
                    let (i, j) = (missing / ring.l() + 1, missing % ring.l() + 1);
                    return Err(config(format!("components: no entry for (i, j) = ({i}, {j})")));
                }
                if alpha.is_none() {
                    let crt = alphas.into_iter().map(|a| a.unwrap_or(FieldElement::ONE)).collect();
                    alpha = Some(RingElement { crt });
                }
                Some(slots.into_iter().map(Option::unwrap).collect())
            }
        };

        let alpha = alpha.unwrap_or_else(|| ring.one());
        Ok(Job { ring, n: self.n, autom: self.autom, alpha, gen, components })
    }
}

impl Job {
    /// The configured code, built from the component table when present.
    pub fn code(&self) -> Result<Code> {
        if let Some(parts) = &self.components {
            return Code::from_components(&self.ring, self.n, self.autom, &self.alpha.crt, parts);
        }
        match &self.gen {
            Some(g) => Code::from_generator(&self.ring, self.n, self.autom, &self.alpha, g),
            None => Err(config("config needs gen or components".into())),
        }
    }

    /// The generator as given, or assembled from the component table.
    pub fn generator(&self) -> Result<SkewPoly<RingElement>> {
        if let Some(g) = &self.gen {
            return Ok(g.clone());
        }
        Ok(self.code()?.gen().clone())
    }
}

pub fn poly_json(f: &SkewPoly<RingElement>) -> Value {
    let coeffs: Vec<Vec<u32>> = f.coeffs().iter().map(RingElement::indices).collect();
    json!({ "autom": f.autom(), "coeffs": coeffs })
}

pub fn field_poly_json(f: &SkewPoly<FieldElement>) -> Vec<u32> {
    f.coeffs().iter().map(|c| c.index()).collect()
}

/// Full description of a code; parses back as a [`JobConfig`].
pub fn code_report(code: &Code) -> Value {
    let ring = code.ring();
    let mut report = json!({
        "ring": ring.spec(),
        "n": code.n(),
        "autom": code.autom(),
        "alpha": code.alpha().indices(),
        "alpha_display": format_ring_element(ring, code.alpha()),
        "gen": poly_json(code.gen()),
        "gen_display": format_ring_poly(ring, code.gen()),
        "size_exponent": code.size_exponent(),
        "classification": code.classify_shift(),
        "classification_display": code.classify_shift().to_string(),
    });
    if let Ok(parts) = code.decompose() {
        let table: Vec<Value> = parts
            .iter()
            .map(|c| {
                json!({
                    "i": c.i + 1,
                    "j": c.j + 1,
                    "alpha": c.alpha.index(),
                    "alpha_display": ring.field().format(c.alpha),
                    "gen": field_poly_json(&c.gen),
                    "gen_display": format_field_poly(ring.field(), &c.gen),
                    "dim": c.dim(code.n()),
                })
            })
            .collect();
        report["components"] = Value::Array(table);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;

    const EX6: &str = r#"{
        "ring": {"field": {"p": 5, "s": 2, "modulus": [2, 4, 1]}, "f_roots": [0, 1, 4], "g_roots": [0, 1]},
        "n": 6, "autom": {"theta": 1}, "alpha": [1, 1, 4, 1, 4, 1],
        "components": [
            {"i": 1, "j": 1, "gen": [1, 1, 1]}, {"i": 1, "j": 2, "gen": [1, 1, 1]},
            {"i": 2, "j": 1, "gen": [4, 3, 1]}, {"i": 2, "j": 2, "gen": [1, 1, 1]},
            {"i": 3, "j": 1, "gen": [4, 3, 1]}, {"i": 3, "j": 2, "gen": [1, 1, 1]}
        ]}"#;

    #[test]
    fn report_round_trips() {
        let code = JobConfig::from_json(EX6).unwrap().resolve().unwrap().code().unwrap();
        let report = code_report(&code);
        assert_eq!(report["gen_display"], "x^2 + (1+2u^2-2u^2v)x + (1-2u^2+2u^2v)");
        let back = JobConfig::from_json(&report.to_string()).unwrap().resolve().unwrap();
        let g = back.gen.clone().unwrap();
        assert_eq!(&g, code.gen());
        let rebuilt = Code::from_generator(&back.ring, back.n, back.autom, &back.alpha, &g).unwrap();
        assert_eq!(rebuilt.decompose().unwrap(), code.decompose().unwrap());
    }

    #[test]
    fn field_precise_errors() {
        let mut v: Value = serde_json::from_str(EX6).unwrap();
        v["components"][2]["i"] = json!(7);
        let e = JobConfig::from_json(&v.to_string()).unwrap().resolve().unwrap_err();
        assert_eq!(e.kind(), ErrorKind::Config);
        assert!(e.to_string().contains("components[2].i"), "{e}");

        let mut v: Value = serde_json::from_str(EX6).unwrap();
        v["components"].as_array_mut().unwrap().pop();
        let e = JobConfig::from_json(&v.to_string()).unwrap().resolve().unwrap_err();
        assert!(e.to_string().contains("(3, 2)"), "{e}");

        let mut v: Value = serde_json::from_str(EX6).unwrap();
        v["components"][0]["gen"] = json!([1, 2, 1]);
        let e = JobConfig::from_json(&v.to_string()).unwrap().resolve().unwrap().code().unwrap_err();
        assert_eq!(e.kind(), ErrorKind::Math);
        assert!(e.to_string().contains("(1,1)"), "{e}");
    }

    #[test]
    fn tag_mismatch_rejected() {
        let text = r#"{"ring": {"field": {"p": 3, "s": 1}, "f_roots": [0, 1], "g_roots": [0, 1]},
            "n": 2, "autom": "psi", "gen": {"autom": "id", "coeffs": [[2, 2, 2, 2], [1, 1, 1, 1]]}}"#;
        let e = JobConfig::from_json(text).unwrap().resolve().unwrap_err();
        assert!(e.to_string().contains("gen.autom"), "{e}");
    }
}
