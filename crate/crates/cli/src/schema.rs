//! JSON shapes of the command outputs. Laurent polynomials are encoded as
//! their `v`-form strings (`"-v^1 + v^-1"`), which parse back exactly.

use parahoric_core::affweyl::{AffineElt, AffineWeylGroup};
use parahoric_core::{BernsteinCoords, Coweight, HeckeElt, LaurentPoly, RootDatum, WeightMultiset};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub fn poly_to_json(p: &LaurentPoly) -> String {
    p.to_string()
}

pub fn poly_from_json(s: &str) -> Result<LaurentPoly, CliError> {
    s.parse().map_err(|e: parahoric_core::Error| CliError::File(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EltJson {
    /// Parseable form `t[...]*s1*...`.
    pub element: String,
    pub translation: Vec<i64>,
    /// Reduced word in the affine simple reflections.
    pub word: Vec<String>,
    /// `Omega` component.
    pub omega: Vec<i64>,
    pub length: usize,
}

impl EltJson {
    pub fn new(w: &AffineWeylGroup, x: &AffineElt) -> Self {
        let (word, _) = w.reduced_word(x);
        EltJson {
            element: w.format_elt(x),
            translation: x.translation.coords().to_vec(),
            word: word.iter().map(|&s| w.node_label(s)).collect(),
            omega: w.omega_component(x).0,
            length: w.length(x),
        }
    }

    /// Parses `element` and checks the derived fields against it.
    pub fn to_elt(&self, w: &AffineWeylGroup) -> Result<AffineElt, CliError> {
        let x = w.parse_elt(&self.element).map_err(|e| CliError::File(e.to_string()))?;
        if &EltJson::new(w, &x) != self {
            return Err(CliError::File(format!("fields of element {} are inconsistent", self.element)));
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeTermJson {
    pub element: EltJson,
    pub coeff: String,
}

pub fn hecke_to_json(w: &AffineWeylGroup, h: &HeckeElt) -> Vec<HeckeTermJson> {
    let mut terms: Vec<_> = h.terms().map(|(x, c)| (w.order_key(x), x, c)).collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    terms.into_iter().map(|(_, x, c)| HeckeTermJson { element: EltJson::new(w, x), coeff: poly_to_json(c) }).collect()
}

pub fn hecke_from_json(w: &AffineWeylGroup, terms: &[HeckeTermJson]) -> Result<HeckeElt, CliError> {
    let mut out = HeckeElt::zero();
    for t in terms {
        out.add_term(t.element.to_elt(w)?, poly_from_json(&t.coeff)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordEntryJson {
    pub lambda: Vec<i64>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BernsteinJson {
    pub group: String,
    /// 1-based simple-root indices of the Levi.
    pub levi: Vec<usize>,
    pub entries: Vec<CoordEntryJson>,
}

impl BernsteinJson {
    pub fn new(c: &BernsteinCoords) -> Self {
        BernsteinJson {
            group: c.group().name().to_string(),
            levi: c.levi().indices().map(|i| i + 1).collect(),
            entries: c
                .sorted_entries()
                .into_iter()
                .map(|(l, a)| CoordEntryJson { lambda: l.coords().to_vec(), coeff: poly_to_json(a) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultEntryJson {
    pub lambda: Vec<i64>,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultisetJson {
    pub highest: Vec<i64>,
    pub mults: Vec<MultEntryJson>,
    pub dimension: u64,
}

impl WeightMultisetJson {
    pub fn new(rd: &RootDatum, ws: &WeightMultiset) -> Self {
        WeightMultisetJson {
            highest: ws.highest.coords().to_vec(),
            mults: ws
                .sorted_entries(rd)
                .into_iter()
                .map(|(l, m)| MultEntryJson { lambda: l.coords().to_vec(), m })
                .collect(),
            dimension: ws.dimension(rd),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntryJson {
    pub element: EltJson,
    pub value: String,
    /// `v^{d_mu} * value`.
    pub normalized: String,
    /// `normalized` written in `q = v^2`.
    pub normalized_q: String,
}

impl ReportEntryJson {
    pub fn new(w: &AffineWeylGroup, x: &AffineElt, value: &LaurentPoly, d_mu: i64) -> Self {
        let normalized = value.shift(d_mu as i32);
        ReportEntryJson {
            element: EltJson::new(w, x),
            value: poly_to_json(value),
            normalized_q: normalized.to_q_string(),
            normalized: poly_to_json(&normalized),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub central: bool,
    pub support_contained: bool,
    pub support_equal: bool,
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub group: String,
    pub mu: Vec<i64>,
    pub d_mu: i64,
    pub omega: Vec<i64>,
    pub entries: Vec<ReportEntryJson>,
    pub checks: ChecksJson,
    pub lefschetz: String,
    pub lefschetz_q: String,
}

impl ReportJson {
    /// Rebuilds the report from its parsed core values, so that
    /// `parse -> rebuild -> emit` exercises every field.
    pub fn rebuild(&self, w: &AffineWeylGroup) -> Result<Self, CliError> {
        let mu = w.datum().coweight(&self.mu).map_err(|e| CliError::File(e.to_string()))?;
        let mut entries = Vec::new();
        for e in &self.entries {
            let x = e.element.to_elt(w)?;
            entries.push(ReportEntryJson::new(w, &x, &poly_from_json(&e.value)?, self.d_mu));
        }
        let lefschetz = poly_from_json(&self.lefschetz)?;
        Ok(ReportJson {
            group: w.datum().name().to_string(),
            mu: mu.coords().to_vec(),
            d_mu: w.datum().two_rho_pairing(&mu),
            omega: w.datum().omega_class(&mu),
            entries,
            checks: self.checks.clone(),
            lefschetz: poly_to_json(&lefschetz),
            lefschetz_q: lefschetz.to_q_string(),
        })
    }
}

pub fn coweight_json(c: &Coweight) -> Vec<i64> {
    c.coords().to_vec()
}
