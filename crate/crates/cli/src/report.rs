//! Serializable reports and their plain-text renderings.

use std::fmt::Write as _;

use serde::Serialize;
use walshcode_core::enumerators::{CertificationReport, Comparison};
use walshcode_core::families::{Condition, FamilyDescriptor, SpectrumClaim};
use walshcode_core::WalshSpectrum;

use crate::emit::{dimension_of, EnumeratorDocument};

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEntry {
    pub w: i64,
    pub mult: u64,
}

pub fn spectrum_entries(s: &WalshSpectrum) -> Vec<SpectrumEntry> {
    s.entries().iter().map(|(&w, &mult)| SpectrumEntry { w, mult }).collect()
}

pub fn classify(s: &WalshSpectrum, n: u32) -> String {
    if let Some(m) = s.bent_exponent() {
        format!("bent (values ±{})", 1u64 << m)
    } else if s.is_semibent(n) {
        "semibent".into()
    } else if let Some(a) = s.three_valued_amplitude() {
        format!("three-valued (A = {a})")
    } else {
        format!("{}-valued", s.len())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionDoc {
    pub text: String,
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&Condition> for ConditionDoc {
    fn from(c: &Condition) -> Self {
        ConditionDoc { text: c.text.clone(), holds: c.holds, note: c.note.clone() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationDoc {
    pub claim: String,
    pub spectrum: Vec<SpectrumEntry>,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FamilyParamsDoc {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_hex: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub kind: &'static str,
    pub name: String,
    pub params: FamilyParamsDoc,
    pub exponent_formula: String,
    /// Decimal; may exceed 64 bits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    pub conditions: Vec<ConditionDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<CertificationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FamilyReport {
    pub fn from_descriptor(desc: &FamilyDescriptor) -> FamilyReport {
        FamilyReport {
            kind: "family",
            name: desc.family.name().into(),
            params: FamilyParamsDoc {
                n: desc.n,
                h: desc.h.map(u64::from),
                alpha_hex: Some(format!("{:x}", desc.alpha)),
                ..Default::default()
            },
            exponent_formula: desc.family.exponent_formula().into(),
            d: Some(desc.d.to_string()),
            conditions: desc.conditions.iter().map(ConditionDoc::from).collect(),
            certification: Some(certification_doc(desc.certification.claim, &desc.certification.spectrum, desc.certification.passed)),
            note: None,
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let p = &self.params;
        let _ = write!(s, "family {}: d = {}", self.name, self.exponent_formula);
        if let Some(d) = &self.d {
            let _ = write!(s, " = {d}");
        }
        let _ = write!(s, "\nn = {}", p.n);
        if let Some(l) = p.l {
            let _ = write!(s, ", l = {l}");
        }
        if let Some(h) = p.h {
            let _ = write!(s, ", h = {h}");
        }
        if let Some(t) = p.t {
            let _ = write!(s, ", t = {t}");
        }
        if let Some(a) = &p.alpha_hex {
            let _ = write!(s, ", alpha = {a}");
        }
        s.push('\n');
        for c in &self.conditions {
            let status = match c.holds {
                Some(true) => "ok",
                Some(false) => "FAILED",
                None => "not evaluated",
            };
            let _ = write!(s, "  {}: {status}", c.text);
            if let Some(n) = &c.note {
                let _ = write!(s, " ({n})");
            }
            s.push('\n');
        }
        if let Some(c) = &self.certification {
            let verdict = if c.passed { "passed" } else { "FAILED" };
            let _ = writeln!(s, "certification ({}): {verdict}", c.claim);
        }
        if let Some(n) = &self.note {
            let _ = writeln!(s, "{n}");
        }
        s
    }
}

pub fn certification_doc(claim: SpectrumClaim, spectrum: &WalshSpectrum, passed: bool) -> CertificationDoc {
    CertificationDoc { claim: claim.describe(), spectrum: spectrum_entries(spectrum), passed }
}

#[derive(Debug, Clone, Serialize)]
pub struct WalshDocument {
    pub n: Vec<u32>,
    pub q: u64,
    pub f_at_zero: bool,
    pub w_at_zero: i64,
    pub spectrum: Vec<SpectrumEntry>,
    pub class: String,
    pub admissible_t: Vec<u32>,
    /// Single functions with `n <= 20` only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_table_hex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walsh: Option<Vec<i64>>,
}

impl WalshDocument {
    pub fn render(&self, spectrum: &WalshSpectrum) -> String {
        let mut s = String::new();
        let n: Vec<String> = self.n.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "n = {}, q = {}, f(0) = {}", n.join(" + "), self.q, u8::from(self.f_at_zero));
        let _ = writeln!(s, "spectrum {spectrum}");
        let _ = writeln!(s, "W_f(0) = {}", self.w_at_zero);
        let _ = writeln!(s, "class {}", self.class);
        let ts: Vec<String> = self.admissible_t.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "admissible t: {}", if ts.is_empty() { "none".into() } else { ts.join(", ") });
        if let Some(f) = &self.family {
            s.push_str(&f.render());
        }
        if let Some(w) = &self.walsh {
            for (y, v) in w.iter().enumerate() {
                let _ = writeln!(s, "{y:x} {v}");
            }
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonDoc {
    pub name: String,
    pub status: &'static str,
    pub predicted: String,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&Comparison> for ComparisonDoc {
    fn from(c: &Comparison) -> Self {
        ComparisonDoc {
            name: c.name.clone(),
            status: match c.passed {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "skip",
            },
            predicted: c.predicted.clone(),
            observed: c.observed.clone(),
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CodePair {
    pub full: EnumeratorDocument,
    pub reduced: EnumeratorDocument,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyDocument {
    pub q: u64,
    pub t: u32,
    pub full_length: u64,
    pub length: u64,
    pub spectrum: String,
    pub passed: bool,
    pub comparisons: Vec<ComparisonDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<CodePair>,
    pub observed: CodePair,
}

impl CertifyDocument {
    pub fn new(r: &CertificationReport) -> CertifyDocument {
        let predicted = r.prediction.as_ref().map(|p| CodePair {
            full: EnumeratorDocument::new(&p.full_we, p.dimension, p.source.name()).with_cwe(&p.full_cwe),
            reduced: EnumeratorDocument::new(&p.reduced_we, p.dimension, p.source.name()),
        });
        let b = &r.bruteforce;
        let dim = dimension_of(b.distinct_codewords(), r.t);
        CertifyDocument {
            q: r.q,
            t: r.t,
            full_length: r.full_length,
            length: r.length,
            spectrum: r.spectrum.clone(),
            passed: r.passed(),
            comparisons: r.comparisons.iter().map(ComparisonDoc::from).collect(),
            predicted,
            observed: CodePair {
                full: EnumeratorDocument::new(&b.full_we, dim, "bruteforce").with_cwe(&b.full_cwe),
                reduced: EnumeratorDocument::new(&b.reduced_we, dim, "bruteforce"),
            },
        }
    }
}
