//! Codeword streams, generator matrices and enumerator documents.

use std::io::Write;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use walshcode_core::code::{CodeInstance, CodeKind, Codeword, Domain};
use walshcode_core::field::default_poly;
use walshcode_core::{CompleteWeightEnumerator, WeightEnumerator};

use crate::error::Result;
use crate::parallel::map_ordered;

const BLOCK: u64 = 256;

fn row(inst: &CodeInstance, word: &Codeword) -> String {
    let mut s = inst.format_source(word.source);
    for &sym in &word.symbols {
        s.push(',');
        s.push_str(&format!("{sym:x}"));
    }
    s.push('\n');
    s
}

/// One line per `b`: the source `b` (or `b1:b2`) and then the symbols as hex
/// labels. Rows come in increasing `b`.
pub fn write_csv(out: &mut dyn Write, inst: &CodeInstance, kind: CodeKind, workers: usize) -> Result<()> {
    let q = inst.order();
    let mut start = 0;
    while start < q {
        let end = (start + BLOCK * workers.max(1) as u64).min(q);
        for line in map_ordered(start..end, workers, |b| row(inst, &inst.codeword(kind, b))) {
            out.write_all(line.as_bytes())?;
        }
        start = end;
    }
    Ok(())
}

fn fields_text(inst: &CodeInstance) -> String {
    match inst.domain() {
        Domain::Single(f) => format!("n={} poly={:x}", f.n(), f.field().poly()),
        Domain::Product(p) => {
            let (a, b) = p.factors();
            format!("n1={} poly1={:x} n2={} poly2={:x}", a.n(), a.field().poly(), b.n(), b.field().poly())
        }
    }
}

fn alphabet_text(t: u32) -> String {
    match default_poly(t) {
        Ok(p) => format!("GF(2^{t}) labels mod {p:x}"),
        Err(_) => format!("GF(2^{t})"),
    }
}

/// Rows for the basis `theta^k` (per factor for products), in CSV row format
/// below a `#` header line.
pub fn write_genmatrix(out: &mut dyn Write, inst: &CodeInstance, kind: CodeKind) -> Result<()> {
    let rows = inst.generator_matrix(kind);
    writeln!(
        out,
        "# rows={} cols={} alphabet={} {}",
        rows.len(),
        inst.support(kind).len(),
        alphabet_text(inst.t()),
        fields_text(inst)
    )?;
    for r in &rows {
        out.write_all(row(inst, r).as_bytes())?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightCount {
    pub w: u64,
    pub count: u64,
}

/// Symbol counts keyed by hex label, in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition(pub Vec<u64>);

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (label, count) in self.0.iter().enumerate() {
            map.serialize_entry(&format!("{label:x}"), count)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CweTerm {
    pub composition: Composition,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratorDocument {
    pub length: u64,
    pub dimension: u32,
    pub weights: Vec<WeightCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cwe: Option<Vec<CweTerm>>,
    pub provenance: String,
}

impl EnumeratorDocument {
    pub fn new(we: &WeightEnumerator, dimension: u32, provenance: &str) -> EnumeratorDocument {
        EnumeratorDocument {
            length: we.length,
            dimension,
            weights: we.terms.iter().map(|(&w, &count)| WeightCount { w, count }).collect(),
            cwe: None,
            provenance: provenance.to_string(),
        }
    }

    pub fn with_cwe(mut self, cwe: &CompleteWeightEnumerator) -> EnumeratorDocument {
        self.cwe = Some(
            cwe.terms
                .iter()
                .map(|(c, &mult)| CweTerm { composition: Composition(c.clone()), mult })
                .collect(),
        );
        self
    }
}

/// Dimension over GF(2^t) of a code with `distinct` codewords.
pub fn dimension_of(distinct: u64, t: u32) -> u32 {
    distinct.max(1).ilog2() / t
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}
