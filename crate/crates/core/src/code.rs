//! Trace codes over GF(2^t) indexed by the zeros of a coset-invariant
//! Boolean function.
//!
//! Points of the domain are `u64` indices: a field element for a single
//! field, or `x1 * q2 + x2` for a product of two fields. The full code has
//! one coordinate per nonzero zero of `f`; the reduced code keeps one
//! coordinate per `F_{2^t}^*` coset (its smallest point).
//!
//! For a fixed `b`, the map `x -> label(Tr_t^n(b x))` is GF(2)-linear in the
//! bits of `x`, so each label bit is the parity of `x` under a mask. Codewords
//! are generated from those `t` masks without any field multiplication per
//! coordinate.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::boolean::{BooleanFunction, ProductFunction, WalshSpectrum};
use crate::error::{Error, Result};
use crate::field::{Field, Subfield};

#[derive(Debug, Clone)]
pub enum Domain {
    Single(BooleanFunction),
    Product(ProductFunction),
}

impl Domain {
    pub fn order(&self) -> u64 {
        match self {
            Domain::Single(f) => f.field().order() as u64,
            Domain::Product(p) => p.order(),
        }
    }

    /// Total extension degree: `n`, or `n1 + n2` for a product.
    pub fn degree(&self) -> u32 {
        match self {
            Domain::Single(f) => f.n(),
            Domain::Product(p) => p.factors().0.n() + p.factors().1.n(),
        }
    }

    pub fn eval(&self, point: u64) -> bool {
        match self {
            Domain::Single(f) => f.eval(point as u32),
            Domain::Product(p) => p.eval_index(point),
        }
    }

    pub fn f_at_zero(&self) -> bool {
        self.eval(0)
    }

    pub fn spectrum(&self) -> WalshSpectrum {
        match self {
            Domain::Single(f) => f.walsh_spectrum(),
            Domain::Product(p) => p.walsh_spectrum(),
        }
    }

    fn factors(&self) -> Vec<&BooleanFunction> {
        match self {
            Domain::Single(f) => vec![f],
            Domain::Product(p) => vec![p.factors().0, p.factors().1],
        }
    }

    /// Bits of the second coordinate in a product index, 0 for a single field.
    pub fn low_bits(&self) -> u32 {
        match self {
            Domain::Single(_) => 0,
            Domain::Product(p) => p.factors().1.n(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Hypothesis {
    SubfieldDivides,
    CosetInvariant,
    ZeroInSpectrum,
    NoCancellation,
    Integrality,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 5] = [
        Hypothesis::SubfieldDivides,
        Hypothesis::CosetInvariant,
        Hypothesis::ZeroInSpectrum,
        Hypothesis::NoCancellation,
        Hypothesis::Integrality,
    ];

    pub fn tag(self) -> char {
        match self {
            Hypothesis::SubfieldDivides => 'a',
            Hypothesis::CosetInvariant => 'b',
            Hypothesis::ZeroInSpectrum => 'c',
            Hypothesis::NoCancellation => 'd',
            Hypothesis::Integrality => 'e',
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Hypothesis::SubfieldDivides => "t divides n",
            Hypothesis::CosetInvariant => "f is constant on every coset x F_{2^t}^*",
            Hypothesis::ZeroInSpectrum => "W_f(0) occurs in the spectrum",
            Hypothesis::NoCancellation => "W_f(0) - w != -q for every spectrum value w",
            Hypothesis::Integrality => "2^(t+1) divides q + W_f(0) - w for every spectrum value w",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub hypothesis: Hypothesis,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<HypothesisCheck>,
    /// For products, the first factor (1 or 2) that is not coset-invariant.
    pub failing_factor: Option<u8>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&HypothesisCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "({}) {}: {status}", c.hypothesis.tag(), c.hypothesis.describe())?;
            if let Some(d) = &c.detail {
                write!(f, " [{d}]")?;
            }
        }
        Ok(())
    }
}

fn check(hypothesis: Hypothesis, passed: bool, detail: Option<String>) -> HypothesisCheck {
    HypothesisCheck { hypothesis, passed, detail }
}

pub fn validate(domain: &Domain, t: u32) -> ValidationReport {
    validate_with(domain, t, &domain.spectrum())
}

fn validate_with(domain: &Domain, t: u32, spectrum: &WalshSpectrum) -> ValidationReport {
    let mut checks = Vec::with_capacity(5);
    let mut failing_factor = None;
    let factors = domain.factors();
    let divides = t >= 1 && factors.iter().all(|f| f.n() % t == 0);
    checks.push(check(
        Hypothesis::SubfieldDivides,
        divides,
        (!divides).then(|| "t does not divide n".into()),
    ));
    if divides {
        for (k, f) in factors.iter().enumerate() {
            if !f.is_coset_invariant(t).unwrap_or(false) && failing_factor.is_none() {
                failing_factor = Some(k as u8 + 1);
            }
        }
        let detail = failing_factor.map(|k| match domain {
            Domain::Single(_) => "f is not coset-invariant".into(),
            Domain::Product(_) => format!("factor f{k} is not coset-invariant"),
        });
        checks.push(check(Hypothesis::CosetInvariant, failing_factor.is_none(), detail));
    } else {
        checks.push(check(Hypothesis::CosetInvariant, false, Some("not evaluated".into())));
        // Only meaningful for products; a single field has nothing to blame.
        failing_factor = None;
    }

    let q = domain.order() as i64;
    let wi = spectrum.at_zero();
    let present = spectrum.multiplicity(wi) > 0;
    checks.push(check(
        Hypothesis::ZeroInSpectrum,
        present,
        (!present).then(|| format!("W_f(0) = {wi} missing")),
    ));
    let cancel = spectrum.entries().keys().find(|&&w| wi - w == -q);
    checks.push(check(
        Hypothesis::NoCancellation,
        cancel.is_none(),
        cancel.map(|w| format!("w = {w}")),
    ));
    let modulus = if t < 62 { 1i64 << (t + 1) } else { i64::MAX };
    let bad = spectrum.entries().keys().find(|&&w| (q + wi - w).rem_euclid(modulus) != 0);
    checks.push(check(
        Hypothesis::Integrality,
        bad.is_none(),
        bad.map(|w| format!("w = {w}: q + W_f(0) - w = {}", q + wi - w)),
    ));
    ValidationReport { checks, failing_factor }
}

/// Which of the two codes a codeword belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    /// One coordinate per point of the defining set.
    Full,
    /// One coordinate per coset representative.
    Reduced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    /// Subfield labels, one per coordinate.
    pub symbols: Vec<u32>,
    /// The index `b` (or `b1 * q2 + b2`) that generated the word.
    pub source: u64,
}

impl Codeword {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }
}

/// `t` parity masks: label bit `k` of the symbol at point `p` is the parity
/// of `p & masks[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMasks(pub Vec<u64>);

impl SymbolMasks {
    #[inline]
    pub fn symbol(&self, point: u64) -> u32 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (k, m)| acc | (((point & m).count_ones() & 1) << k))
    }
}

#[derive(Debug, Clone)]
pub struct CodeInstance {
    domain: Domain,
    t: u32,
    subfields: Vec<Subfield>,
    full_support: Vec<u64>,
    reduced_support: Vec<u64>,
    spectrum: WalshSpectrum,
    validation: ValidationReport,
}

impl CodeInstance {
    /// Code from a single function on GF(2^n).
    pub fn new(f: BooleanFunction, t: u32) -> Result<CodeInstance> {
        CodeInstance::build(Domain::Single(f), t)
    }

    /// Code from `f1(x1) + f2(x2)` on `GF(2^n1) x GF(2^n2)`, reduced under the
    /// diagonal `F_{2^t}^*` action.
    pub fn product(f1: BooleanFunction, f2: BooleanFunction, t: u32) -> Result<CodeInstance> {
        CodeInstance::build(Domain::Product(ProductFunction::new(f1, f2)), t)
    }

    pub fn build(domain: Domain, t: u32) -> Result<CodeInstance> {
        let spectrum = domain.spectrum();
        let validation = validate_with(&domain, t, &spectrum);
        let fail = |h: Hypothesis| validation.checks.iter().any(|c| c.hypothesis == h && !c.passed);
        if fail(Hypothesis::SubfieldDivides) {
            let n = domain.factors().iter().map(|f| f.n()).find(|n| t == 0 || n % t != 0).unwrap_or(0);
            return Err(Error::BadSubfieldDegree { t, n });
        }
        if fail(Hypothesis::CosetInvariant) {
            return Err(match (&domain, validation.failing_factor) {
                (Domain::Product(_), Some(factor)) => Error::Condition26Failed { factor },
                _ => Error::HypothesisViolation(Hypothesis::CosetInvariant.describe().into()),
            });
        }
        let full_support: Vec<u64> = (1..domain.order()).filter(|&p| !domain.eval(p)).collect();
        if full_support.is_empty() {
            return Err(Error::EmptyDefiningSet);
        }
        if let Some(c) = validation.first_failure() {
            let mut msg = String::from(c.hypothesis.describe());
            if let Some(d) = &c.detail {
                msg.push_str(&format!(" ({d})"));
            }
            return Err(Error::HypothesisViolation(msg));
        }
        let subfields = domain
            .factors()
            .iter()
            .map(|f| f.field().subfield(t))
            .collect::<Result<Vec<_>>>()?;
        let mut inst = CodeInstance {
            domain,
            t,
            subfields,
            full_support,
            reduced_support: Vec::new(),
            spectrum,
            validation,
        };
        inst.reduced_support = inst.coset_representatives()?;
        Ok(inst)
    }

    /// Scans the defining set in ascending order; the first unvisited point of
    /// each orbit is its minimum.
    fn coset_representatives(&self) -> Result<Vec<u64>> {
        let mut seen = vec![false; self.full_support.len()];
        let mut reps = Vec::with_capacity(self.full_support.len() >> self.t);
        for (i, &p) in self.full_support.iter().enumerate() {
            if seen[i] {
                continue;
            }
            reps.push(p);
            for label in 1..1u32 << self.t {
                let image = self.scale(label, p);
                match self.full_support.binary_search(&image) {
                    Ok(j) => seen[j] = true,
                    Err(_) => return Err(Error::NotCosetClosed { element: p as u32 }),
                }
            }
        }
        Ok(reps)
    }

    /// The point `alpha * p` for the subfield element with the given label.
    pub fn scale(&self, label: u32, p: u64) -> u64 {
        let shift = self.domain.low_bits();
        let low_mask = (1u64 << shift) - 1;
        let fields = self.fields();
        match fields.len() {
            1 => {
                let a = self.subfields[0].element(label).expect("label in range");
                fields[0].mul(a, p as u32) as u64
            }
            _ => {
                let a1 = self.subfields[0].element(label).expect("label in range");
                let a2 = self.subfields[1].element(label).expect("label in range");
                let x1 = fields[0].mul(a1, (p >> shift) as u32) as u64;
                let x2 = fields[1].mul(a2, (p & low_mask) as u32) as u64;
                x1 << shift | x2
            }
        }
    }

    fn fields(&self) -> Vec<&Field> {
        self.domain.factors().into_iter().map(|f| f.field().as_ref()).collect()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Size of the domain: `q` or `q1 q2`.
    pub fn order(&self) -> u64 {
        self.domain.order()
    }

    pub fn dimension(&self) -> u32 {
        self.domain.degree() / self.t
    }

    pub fn full_support(&self) -> &[u64] {
        &self.full_support
    }

    pub fn reduced_support(&self) -> &[u64] {
        &self.reduced_support
    }

    pub fn support(&self, kind: CodeKind) -> &[u64] {
        match kind {
            CodeKind::Full => &self.full_support,
            CodeKind::Reduced => &self.reduced_support,
        }
    }

    pub fn full_length(&self) -> usize {
        self.full_support.len()
    }

    pub fn length(&self) -> usize {
        self.reduced_support.len()
    }

    pub fn spectrum(&self) -> &WalshSpectrum {
        &self.spectrum
    }

    pub fn w_at_zero(&self) -> i64 {
        self.spectrum.at_zero()
    }

    pub fn f_at_zero(&self) -> bool {
        self.domain.f_at_zero()
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.validation
    }

    pub fn subfield(&self) -> &Subfield {
        &self.subfields[0]
    }

    /// Masks for the label of `Tr_t^n(b x)` (summed over both factors for a
    /// product) as a function of the point index.
    pub fn symbol_masks(&self, b: u64) -> SymbolMasks {
        let shift = self.domain.low_bits();
        let fields = self.fields();
        let mut masks = vec![0u64; self.t as usize];
        let parts: Vec<(u32, u32)> = match fields.len() {
            1 => vec![(b as u32, 0)],
            _ => vec![((b >> shift) as u32, shift), ((b & ((1u64 << shift) - 1)) as u32, 0)],
        };
        for (k, (bk, offset)) in parts.into_iter().enumerate() {
            let field = fields[k];
            let sub = &self.subfields[k];
            for i in 0..field.n() {
                let z = field.mul(bk, 1 << i);
                let tr = field.relative_trace(self.t, z).expect("t divides n");
                let label = sub.label(tr).expect("trace lies in the subfield");
                for (bit, mask) in masks.iter_mut().enumerate() {
                    if label >> bit & 1 == 1 {
                        *mask |= 1u64 << (i + offset);
                    }
                }
            }
        }
        SymbolMasks(masks)
    }

    /// Symbol label at a point, computed directly from the trace.
    pub fn symbol_direct(&self, b: u64, point: u64) -> u32 {
        let shift = self.domain.low_bits();
        let fields = self.fields();
        let low = (1u64 << shift) - 1;
        let pairs: Vec<(u32, u32)> = match fields.len() {
            1 => vec![(b as u32, point as u32)],
            _ => vec![
                ((b >> shift) as u32, (point >> shift) as u32),
                ((b & low) as u32, (point & low) as u32),
            ],
        };
        pairs
            .into_iter()
            .enumerate()
            .map(|(k, (bk, x))| {
                let tr = fields[k].relative_trace(self.t, fields[k].mul(bk, x)).expect("t divides n");
                self.subfields[k].label(tr).expect("trace lies in the subfield")
            })
            .fold(0, |a, l| a ^ l)
    }

    pub fn codeword(&self, kind: CodeKind, b: u64) -> Codeword {
        let masks = self.symbol_masks(b);
        Codeword {
            symbols: self.support(kind).iter().map(|&p| masks.symbol(p)).collect(),
            source: b,
        }
    }

    pub fn codeword_full(&self, b: u64) -> Codeword {
        self.codeword(CodeKind::Full, b)
    }

    pub fn codeword_reduced(&self, b: u64) -> Codeword {
        self.codeword(CodeKind::Reduced, b)
    }

    /// Indices `b` of a basis over GF(2^t): powers `theta^k`, `k < n/t`, of the
    /// field generator (one block per factor for a product).
    pub fn basis_sources(&self) -> Vec<u64> {
        let shift = self.domain.low_bits();
        let fields = self.fields();
        let mut out = Vec::new();
        for (k, field) in fields.iter().enumerate() {
            let offset = if fields.len() == 2 && k == 0 { shift } else { 0 };
            let mut p = 1u32;
            for _ in 0..field.n() / self.t {
                out.push((p as u64) << offset);
                p = field.mul(p, field.generator());
            }
        }
        out
    }

    pub fn generator_matrix(&self, kind: CodeKind) -> Vec<Codeword> {
        self.basis_sources().into_iter().map(|b| self.codeword(kind, b)).collect()
    }

    /// Formats `b` as hex, or `b1:b2` for a product.
    pub fn format_source(&self, b: u64) -> String {
        match &self.domain {
            Domain::Single(_) => format!("{b:x}"),
            Domain::Product(_) => {
                let s = self.domain.low_bits();
                format!("{:x}:{:x}", b >> s, b & ((1u64 << s) - 1))
            }
        }
    }
}

/// Convenience wrapper around [`CodeInstance::product`].
pub fn product_instance(f1: BooleanFunction, f2: BooleanFunction, t: u32) -> Result<CodeInstance> {
    CodeInstance::product(f1, f2, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{monomial_bent, Family};
    use alloc::sync::Arc;

    fn field(n: u32) -> Arc<Field> {
        Arc::new(Field::new(n, None).unwrap())
    }

    fn dillon() -> BooleanFunction {
        let f = field(4);
        let w = f.pow(f.generator(), 5);
        monomial_bent(f, Family::Dillon, None, w).unwrap().function
    }

    #[test]
    fn dillon_gf16() {
        let inst = CodeInstance::new(dillon(), 2).unwrap();
        assert!(inst.validation().passed());
        assert_eq!(inst.w_at_zero(), 4);
        assert_eq!(inst.full_length(), 9);
        assert_eq!(inst.length(), 3);
        assert_eq!(inst.dimension(), 2);
        let words: Vec<_> = (0..16).map(|b| inst.codeword_reduced(b).symbols).collect();
        let mut dedup = words.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 16);
        assert!(inst.codeword_full(0).symbols.iter().all(|&s| s == 0));
    }

    #[test]
    fn masks_agree_with_direct_trace() {
        let inst = CodeInstance::new(dillon(), 2).unwrap();
        for b in 0..16 {
            let masks = inst.symbol_masks(b);
            for &p in inst.full_support() {
                assert_eq!(masks.symbol(p), inst.symbol_direct(b, p));
            }
        }
        let f1 = BooleanFunction::zero(field(4));
        let f2 = BooleanFunction::zero(field(2));
        let prod = CodeInstance::product(f1, f2, 2).unwrap();
        for b in 0..64 {
            let masks = prod.symbol_masks(b);
            for &p in prod.full_support() {
                assert_eq!(masks.symbol(p), prod.symbol_direct(b, p));
            }
        }
    }

    #[test]
    fn trace_fails_invariance() {
        let f = field(4);
        let tr = BooleanFunction::from_fn(f.clone(), |x| f.trace(x));
        let report = validate(&Domain::Single(tr.clone()), 2);
        assert!(!report.checks[1].passed);
        assert!(matches!(CodeInstance::new(tr, 2), Err(Error::HypothesisViolation(_))));
        let z = BooleanFunction::zero(f);
        assert!(matches!(CodeInstance::new(z, 3), Err(Error::BadSubfieldDegree { t: 3, n: 4 })));
    }

    #[test]
    fn zero_and_one() {
        let f = field(4);
        let zero = CodeInstance::new(BooleanFunction::zero(f.clone()), 2).unwrap();
        assert_eq!(zero.full_length(), 15);
        assert_eq!(zero.length(), 5);
        let one = BooleanFunction::from_fn(f, |_| true);
        assert_eq!(CodeInstance::new(one, 1).unwrap_err(), Error::EmptyDefiningSet);
    }

    #[test]
    fn product_zero() {
        let f1 = BooleanFunction::zero(field(4));
        let f2 = BooleanFunction::zero(field(2));
        let inst = CodeInstance::product(f1.clone(), f2.clone(), 1).unwrap();
        assert_eq!(inst.full_length(), 63);
        assert_eq!(inst.dimension(), 6);
        let t2 = CodeInstance::product(f1, f2, 2).unwrap();
        assert_eq!(t2.length(), 21);
        assert_eq!(t2.basis_sources(), [4, 8, 1]);
    }

    #[test]
    fn product_condition_fails() {
        let f = field(4);
        let tr = BooleanFunction::from_fn(f.clone(), |x| f.trace(x));
        let z = BooleanFunction::zero(field(2));
        assert_eq!(
            CodeInstance::product(tr.clone(), z.clone(), 2).unwrap_err(),
            Error::Condition26Failed { factor: 1 }
        );
        assert_eq!(
            CodeInstance::product(z, tr.clone(), 4).unwrap_err(),
            Error::BadSubfieldDegree { t: 4, n: 2 }
        );
        let z4 = BooleanFunction::zero(field(4));
        assert_eq!(
            CodeInstance::product(z4, tr, 2).unwrap_err(),
            Error::Condition26Failed { factor: 2 }
        );
    }

    #[test]
    fn source_format() {
        let f1 = BooleanFunction::zero(field(4));
        let f2 = BooleanFunction::zero(field(2));
        let inst = CodeInstance::product(f1, f2, 1).unwrap();
        assert_eq!(inst.format_source(0xb << 2 | 2), "b:2");
    }
}
