//! JSON fixture files. Basis degrees are internal (unsuspended); coefficients
//! are exact strings such as `"3/2"`, `"t"` or `"1+2t"`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bar::{CoderComponents, ComapForms, Frame};
use crate::deform::{DeformationDatum, HElement, Polarization};
use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::scalars::{Field, RingSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBasis {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCoder {
    #[serde(rename = "in")]
    pub input: Vec<String>,
    pub out: String,
    pub coeff: String,
}

/// `word` has `k` letters before the module slot and ends with the evaluation letter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawForm {
    pub k: usize,
    pub word: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBlock {
    #[serde(default)]
    pub coder: Vec<RawCoder>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comap: Option<Vec<RawForm>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawElement {
    pub name: String,
    pub degree: i64,
    #[serde(flatten)]
    pub block: RawBlock,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFixture {
    pub field: String,
    pub space: Vec<RawBasis>,
    pub weight: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<RawBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<RawBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<RawBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<RawElement>,
    /// Attached by structured command output; ignored on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
}

impl RawFixture {
    pub fn parse(text: &str) -> Result<RawFixture> {
        serde_json::from_str(text).map_err(parse_error)
    }

    /// Drops components above weight `w` and sets the weight.
    pub fn truncate(&mut self, w: usize) {
        let cut = |b: &mut RawBlock| {
            b.coder.retain(|e| e.input.len() <= w);
            if let Some(f) = b.comap.as_mut() {
                f.retain(|e| e.word.len() <= w);
            }
        };
        self.weight = w;
        for b in [&mut self.structure, &mut self.perturbation, &mut self.generator].into_iter().flatten() {
            cut(b);
        }
        for e in &mut self.elements {
            cut(&mut e.block);
        }
    }
}

/// A loaded fixture. The structure lives over the field, the remaining blocks over the ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub frame: Frame,
    pub ring: Option<Arc<RingSpec>>,
    pub coder: Option<CoderComponents>,
    pub comap: Option<ComapForms>,
    pub perturbation: Option<HElement>,
    pub generator: Option<HElement>,
    pub elements: Vec<(String, HElement)>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

fn lookup(space: &GradedSpace, name: &str, at: &str) -> Result<usize> {
    space.index_of(name).ok_or_else(|| Error::Structural(format!("{at}: unknown basis element `{name}`")))
}

fn context(at: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Structural(m) => Error::Structural(format!("{at}: {m}")),
        other => other,
    }
}

fn load_block(frame: &Frame, raw: &RawBlock, degree: i64, at: &str) -> Result<(CoderComponents, Option<ComapForms>)> {
    let sp = &frame.space;
    let mut f = CoderComponents::zero(frame, -degree);
    for (n, e) in raw.coder.iter().enumerate() {
        let at = format!("{at}.coder[{n}]");
        let word = e.input.iter().map(|x| lookup(sp, x, &at)).collect::<Result<Vec<_>>>()?;
        let out = lookup(sp, &e.out, &at)?;
        let c = frame.ring.parse_element(&e.coeff).map_err(context(&at))?;
        f.set(word, out, c).map_err(context(&at))?;
    }
    let i = match &raw.comap {
        None => None,
        Some(forms) => {
            let mut i = ComapForms::zero(frame, 1 - degree);
            for (n, e) in forms.iter().enumerate() {
                let at = format!("{at}.comap[{n}]");
                let word = e.word.iter().map(|x| lookup(sp, x, &at)).collect::<Result<Vec<_>>>()?;
                let c = frame.ring.parse_element(&e.coeff).map_err(context(&at))?;
                i.set(e.k, word, c).map_err(context(&at))?;
            }
            Some(i)
        }
    };
    Ok((f, i))
}

fn load_element(frame: &Frame, raw: &RawBlock, degree: i64, at: &str) -> Result<HElement> {
    let (f, i) = load_block(frame, raw, degree, at)?;
    let i = i.unwrap_or_else(|| ComapForms::zero(frame, 1 - degree));
    HElement::new(f, i, degree).map_err(context(at))
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        Fixture::from_raw(&RawFixture::parse(text)?)
    }

    pub fn from_raw(raw: &RawFixture) -> Result<Fixture> {
        let field = Field::parse(&raw.field)?;
        let space = GradedSpace::new(field, raw.space.iter().map(|b| (b.name.clone(), b.degree)).collect())?;
        let frame = Frame::new(space, RingSpec::field(field), raw.weight);
        let ring = raw.ring.as_deref().map(|r| RingSpec::parse_spec(field, r)).transpose()?;
        let (coder, comap) = match &raw.structure {
            None => (None, None),
            Some(b) => {
                let (f, i) = load_block(&frame, b, 1, "structure")?;
                (Some(f), i)
            }
        };
        let over_ring = |what: &str| -> Result<Frame> {
            let r = ring.as_ref().ok_or_else(|| Error::MissingBlock(format!("ring (needed by {what})")))?;
            Ok(frame.with_ring(r))
        };
        let perturbation = match &raw.perturbation {
            None => None,
            Some(b) => Some(load_element(&over_ring("perturbation")?, b, 1, "perturbation")?),
        };
        let generator = match &raw.generator {
            None => None,
            Some(b) => Some(load_element(&over_ring("generator")?, b, 0, "generator")?),
        };
        let elem_frame = match &ring {
            Some(r) => frame.with_ring(r),
            None => frame.clone(),
        };
        let mut elements = Vec::new();
        for e in &raw.elements {
            let at = format!("elements.{}", e.name);
            elements.push((e.name.clone(), load_element(&elem_frame, &e.block, e.degree, &at)?));
        }
        Ok(Fixture { frame, ring, coder, comap, perturbation, generator, elements })
    }

    pub fn to_raw(&self) -> RawFixture {
        let sp = &self.frame.space;
        let names = |w: &[usize]| w.iter().map(|&i| sp.name(i).to_string()).collect::<Vec<_>>();
        let coder = |f: &CoderComponents| {
            f.entries()
                .map(|(w, o, c)| RawCoder { input: names(w), out: sp.name(o).to_string(), coeff: c.to_string() })
                .collect::<Vec<_>>()
        };
        let forms = |i: &ComapForms| {
            i.entries().map(|((k, w), c)| RawForm { k: *k, word: names(w), coeff: c.to_string() }).collect::<Vec<_>>()
        };
        let element = |x: &HElement| RawBlock { coder: coder(&x.f), comap: (!x.i.is_zero()).then(|| forms(&x.i)) };
        RawFixture {
            field: sp.field().name(),
            space: (0..sp.dim()).map(|i| RawBasis { name: sp.name(i).to_string(), degree: sp.degree(i) }).collect(),
            weight: self.frame.weight,
            ring: self.ring.as_ref().map(|r| r.spec_string()),
            structure: self.coder.as_ref().map(|d| RawBlock { coder: coder(d), comap: self.comap.as_ref().map(forms) }),
            perturbation: self.perturbation.as_ref().map(element),
            generator: self.generator.as_ref().map(element),
            elements: self
                .elements
                .iter()
                .map(|(n, x)| RawElement { name: n.clone(), degree: x.degree(), block: element(x) })
                .collect(),
            report: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("fixture serializes")
    }

    pub fn from_polarization(p: &Polarization) -> Fixture {
        Fixture {
            frame: p.frame().clone(),
            ring: None,
            coder: Some(p.d.clone()),
            comap: Some(p.i.clone()),
            perturbation: None,
            generator: None,
            elements: Vec::new(),
        }
    }

    pub fn require_ring(&self) -> Result<&Arc<RingSpec>> {
        self.ring.as_ref().ok_or_else(|| Error::MissingBlock("ring".into()))
    }

    pub fn structure(&self) -> Result<&CoderComponents> {
        self.coder.as_ref().ok_or_else(|| Error::MissingBlock("structure".into()))
    }

    pub fn polarization(&self) -> Result<Polarization> {
        let i = self.comap.clone().ok_or_else(|| Error::MissingBlock("structure.comap".into()))?;
        Polarization::new(self.structure()?.clone(), i)
    }

    pub fn datum(&self) -> Result<DeformationDatum> {
        let pert = self.perturbation.clone().ok_or_else(|| Error::MissingBlock("perturbation".into()))?;
        DeformationDatum::new(self.polarization()?, self.require_ring()?.clone(), pert)
    }

    pub fn element(&self, name: &str) -> Result<&HElement> {
        self.elements
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, x)| x)
            .ok_or_else(|| Error::MissingBlock(format!("elements.{name}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{dual_numbers, fix_def_perturbation};

    #[test]
    fn round_trip() {
        let p = dual_numbers(Field::Rationals, 3);
        let ring = RingSpec::parse_spec(Field::Rationals, "k[t]/t^2").unwrap();
        let mut fx = Fixture::from_polarization(&p);
        fx.perturbation = Some(fix_def_perturbation(&p, &ring).unwrap());
        fx.ring = Some(ring);
        let text = fx.to_json();
        let back = Fixture::parse(&text).unwrap();
        assert_eq!(back, fx);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match Fixture::parse("{\n  \"field\": \"Q\",\n  \"space\": [,]\n}") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 13)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_names_and_missing_blocks() {
        let text = r#"{"field":"Q","space":[{"name":"e","degree":0}],"weight":2,
            "structure":{"coder":[{"in":["e","y"],"out":"e","coeff":"1"}]}}"#;
        let err = Fixture::parse(text).unwrap_err().to_string();
        assert!(err.contains("structure.coder[0]") && err.contains("`y`"), "{err}");
        let text = r#"{"field":"Q","space":[{"name":"e","degree":0}],"weight":2,
            "structure":{"coder":[{"in":["e","e"],"out":"e","coeff":"1"}]}}"#;
        let fx = Fixture::parse(text).unwrap();
        assert_eq!(fx.polarization().unwrap_err(), Error::MissingBlock("structure.comap".into()));
        assert_eq!(fx.datum().unwrap_err(), Error::MissingBlock("perturbation".into()));
    }

    #[test]
    fn degree_violations_are_structural() {
        let text = r#"{"field":"Q","space":[{"name":"e","degree":0}],"weight":2,
            "structure":{"coder":[{"in":["e"],"out":"e","coeff":"1"}]}}"#;
        assert!(matches!(Fixture::parse(text), Err(Error::Structural(_))));
    }
}
