//! Complete and Hamming weight enumerators, by exhaustive enumeration and by
//! closed forms in the Walsh spectrum.
//!
//! For an admissible `f` with `w_i = W_f(0)`, every `b != 0` with
//! `W_f(b) = w_j` gives a full-code word with `M_j = (q + w_i - w_j) / 2^(t+1)`
//! copies of each nonzero symbol and
//! `N_j = (q + w_i + (2^t - 1) w_j) / 2^(t+1) - (1 + (-1)^f(0)) / 2` zeros.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::boolean::WalshSpectrum;
use crate::code::{CodeInstance, Codeword, Domain};
use crate::error::{Error, Result};

/// Symbol tallies indexed by subfield label.
pub type Composition = Vec<u64>;

pub fn composition(word: &Codeword, alphabet: usize) -> Composition {
    let mut counts = vec![0u64; alphabet];
    for &s in &word.symbols {
        counts[s as usize] += 1;
    }
    counts
}

/// Whether all nonzero symbols occur equally often.
pub fn is_constant_on_nonzero(counts: &[u64]) -> bool {
    counts[1..].windows(2).all(|w| w[0] == w[1])
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompleteWeightEnumerator {
    pub length: u64,
    pub alphabet: usize,
    /// Composition (ordered lexicographically by label) to multiplicity.
    pub terms: BTreeMap<Composition, u64>,
}

impl CompleteWeightEnumerator {
    pub fn new(length: u64, alphabet: usize) -> Self {
        CompleteWeightEnumerator { length, alphabet, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, comp: Composition, mult: u64) {
        if mult > 0 {
            *self.terms.entry(comp).or_insert(0) += mult;
        }
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// `x_0 = 1`, `x_gamma = x`: the Hamming weight enumerator.
    pub fn collapse(&self) -> WeightEnumerator {
        let mut we = WeightEnumerator::new(self.length);
        for (comp, &m) in &self.terms {
            we.add(self.length - comp[0], m);
        }
        we
    }
}

impl fmt::Display for CompleteWeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (comp, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m != 1 {
                write!(f, "{m}")?;
            }
            let mut any = false;
            for (label, &c) in comp.iter().enumerate().filter(|p| *p.1 != 0) {
                if any || *m != 1 {
                    f.write_str(" ")?;
                }
                any = true;
                write!(f, "x{label:x}")?;
                if c != 1 {
                    write!(f, "^{c}")?;
                }
            }
            if !any && *m == 1 {
                f.write_str("1")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub length: u64,
    /// Hamming weight to number of codewords, including weight 0.
    pub terms: BTreeMap<u64, u64>,
}

impl WeightEnumerator {
    pub fn new(length: u64) -> Self {
        WeightEnumerator { length, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, weight: u64, mult: u64) {
        if mult > 0 {
            *self.terms.entry(weight).or_insert(0) += mult;
        }
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn count(&self, weight: u64) -> u64 {
        self.terms.get(&weight).copied().unwrap_or(0)
    }

    pub fn nonzero_weights(&self) -> usize {
        self.terms.keys().filter(|&&w| w != 0).count()
    }

    pub fn min_distance(&self) -> Option<u64> {
        self.terms.keys().copied().find(|&w| w != 0)
    }
}

/// `1 + 10x^6 + 15x^8 + 6x^10`.
impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (&w, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (w, c) {
                (0, c) => write!(f, "{c}")?,
                (w, 1) => write!(f, "x^{w}")?,
                (w, c) => write!(f, "{c}x^{w}")?,
            }
        }
        Ok(())
    }
}

/// Mergeable tallies over a range of `b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub codewords: u64,
    pub full_cwe: BTreeMap<Composition, u64>,
    pub full_we: BTreeMap<u64, u64>,
    pub reduced_we: BTreeMap<u64, u64>,
    /// Number of `b` (including 0) giving the zero word of the full code.
    pub zero_words: u64,
    pub scaling_failures: u64,
    pub first_scaling_failure: Option<u64>,
    pub non_constant: u64,
    pub first_non_constant: Option<u64>,
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Tally {
    pub fn merge(&mut self, other: Tally) {
        self.codewords += other.codewords;
        for (k, v) in other.full_cwe {
            *self.full_cwe.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.full_we {
            *self.full_we.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.reduced_we {
            *self.reduced_we.entry(k).or_insert(0) += v;
        }
        self.zero_words += other.zero_words;
        self.scaling_failures += other.scaling_failures;
        self.first_scaling_failure = min_opt(self.first_scaling_failure, other.first_scaling_failure);
        self.non_constant += other.non_constant;
        self.first_non_constant = min_opt(self.first_non_constant, other.first_non_constant);
    }
}

/// Streams the codewords for `b` in `range` and tallies them without storing
/// any codeword.
pub fn tally_range(inst: &CodeInstance, range: Range<u64>) -> Tally {
    let alphabet = 1usize << inst.t();
    let scale = alphabet as u64 - 1;
    let mut tally = Tally::default();
    let mut counts = vec![0u64; alphabet];
    for b in range {
        let masks = inst.symbol_masks(b);
        counts.iter_mut().for_each(|c| *c = 0);
        if inst.t() == 1 {
            let m = masks.0[0];
            let ones: u64 = inst.full_support().iter().map(|&p| ((p & m).count_ones() & 1) as u64).sum();
            counts[1] = ones;
            counts[0] = inst.full_length() as u64 - ones;
        } else {
            for &p in inst.full_support() {
                counts[masks.symbol(p) as usize] += 1;
            }
        }
        let full_weight = inst.full_length() as u64 - counts[0];
        let reduced_weight = inst.reduced_support().iter().filter(|&&p| masks.symbol(p) != 0).count() as u64;
        tally.codewords += 1;
        if full_weight == 0 {
            tally.zero_words += 1;
        }
        if full_weight != scale * reduced_weight {
            tally.scaling_failures += 1;
            tally.first_scaling_failure.get_or_insert(b);
        }
        if !is_constant_on_nonzero(&counts) {
            tally.non_constant += 1;
            tally.first_non_constant.get_or_insert(b);
        }
        *tally.full_we.entry(full_weight).or_insert(0) += 1;
        *tally.reduced_we.entry(reduced_weight).or_insert(0) += 1;
        match tally.full_cwe.get_mut(counts.as_slice()) {
            Some(m) => *m += 1,
            None => {
                tally.full_cwe.insert(counts.clone(), 1);
            }
        }
    }
    tally
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub full_cwe: CompleteWeightEnumerator,
    pub full_we: WeightEnumerator,
    pub reduced_we: WeightEnumerator,
    pub tally: Tally,
}

impl BruteForce {
    pub fn from_tally(inst: &CodeInstance, tally: Tally) -> BruteForce {
        let alphabet = 1usize << inst.t();
        let mut full_cwe = CompleteWeightEnumerator::new(inst.full_length() as u64, alphabet);
        full_cwe.terms = tally.full_cwe.clone();
        let mut full_we = WeightEnumerator::new(inst.full_length() as u64);
        full_we.terms = tally.full_we.clone();
        let mut reduced_we = WeightEnumerator::new(inst.length() as u64);
        reduced_we.terms = tally.reduced_we.clone();
        BruteForce { full_cwe, full_we, reduced_we, tally }
    }

    pub fn distinct_codewords(&self) -> u64 {
        self.tally.codewords / self.tally.zero_words.max(1)
    }
}

pub fn bruteforce(inst: &CodeInstance) -> BruteForce {
    BruteForce::from_tally(inst, tally_range(inst, 0..inst.order()))
}

pub fn cwe_bruteforce(inst: &CodeInstance) -> CompleteWeightEnumerator {
    bruteforce(inst).full_cwe
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// General spectrum.
    General,
    /// Bent spectrum `{±2^m}`.
    Bent,
    /// Three-valued spectrum `{0, ±A}`.
    ThreeValued,
    /// Sum of two functions on a product of fields.
    Product,
}

impl ClosedForm {
    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::General => "general",
            ClosedForm::Bent => "bent",
            ClosedForm::ThreeValued => "three-valued",
            ClosedForm::Product => "product",
        }
    }
}

/// Per-spectrum-value data of a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumTerm {
    pub w: i64,
    /// Number of `b != 0` with `W_f(b) = w`.
    pub words: u64,
    /// Zeros in each such full-code word.
    pub zeros: u64,
    /// Occurrences of each nonzero symbol in each such full-code word; also the
    /// reduced-code weight.
    pub per_symbol: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormPrediction {
    pub source: ClosedForm,
    pub q: u64,
    pub t: u32,
    pub w_at_zero: i64,
    pub full_length: u64,
    pub length: u64,
    pub dimension: u32,
    /// Spectrum values that contribute codewords; values seen only at `b = 0` are omitted.
    pub terms: Vec<SpectrumTerm>,
    /// Number of distinct values in the spectrum.
    pub spectrum_values: usize,
    pub full_cwe: CompleteWeightEnumerator,
    pub full_we: WeightEnumerator,
    pub reduced_we: WeightEnumerator,
}

impl ClosedFormPrediction {
    /// Whether the reduced weights `M_j` are pairwise distinct and every
    /// spectrum value contributes a word, so the weight count equals the
    /// number of spectrum values.
    pub fn weight_count_applies(&self) -> bool {
        let mut ms: Vec<u64> = self.terms.iter().map(|t| t.per_symbol).collect();
        ms.sort_unstable();
        ms.dedup();
        ms.len() == self.terms.len() && self.terms.len() == self.spectrum_values
    }

    /// Same enumerators and lengths, ignoring which closed form produced them.
    pub fn same_values(&self, other: &ClosedFormPrediction) -> bool {
        self.full_length == other.full_length
            && self.length == other.length
            && self.dimension == other.dimension
            && self.full_cwe == other.full_cwe
            && self.full_we == other.full_we
            && self.reduced_we == other.reduced_we
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::HypothesisViolation(msg.into())
}

fn log2_exact(q: u64) -> Result<u32> {
    if q >= 2 && q.is_power_of_two() {
        Ok(q.trailing_zeros())
    } else {
        Err(violation(format!("domain size {q} is not a power of two")))
    }
}

/// Closed-form enumerators from any Walsh spectrum satisfying the code hypotheses.
pub fn predict_general(spectrum: &WalshSpectrum, t: u32, f0: bool) -> Result<ClosedFormPrediction> {
    let q = spectrum.total();
    let n = log2_exact(q)?;
    if t == 0 || n % t != 0 || t > 30 {
        return Err(violation(format!("t = {t} does not divide n = {n}")));
    }
    let qi = q as i64;
    let wi = spectrum.at_zero();
    let mi = spectrum.multiplicity(wi);
    if mi == 0 {
        return Err(violation(format!("W_f(0) = {wi} does not occur in the spectrum")));
    }
    let den = 1i64 << (t + 1);
    let scale = (1i64 << t) - 1;
    let sign = if f0 { -1 } else { 1 };
    let full_len = qi / 2 + (wi - 1 - sign) / 2;
    if full_len <= 0 {
        return Err(Error::EmptyDefiningSet);
    }
    if full_len % scale != 0 {
        return Err(violation(format!("length {full_len} is not divisible by 2^t - 1 = {scale}")));
    }
    let zero_shift = (1 + sign) / 2;
    let mut terms = Vec::with_capacity(spectrum.len());
    for (&wj, &mult) in spectrum.entries() {
        let num = qi + wi - wj;
        if num == 0 {
            return Err(violation(format!("W_f(0) - w = -q for w = {wj}")));
        }
        if num % den != 0 {
            return Err(violation(format!("2^(t+1) does not divide q + W_f(0) - w = {num}")));
        }
        let per_symbol = num / den;
        let zeros = (qi + wi + scale * wj) / den - zero_shift;
        let words = if wj == wi { mult - 1 } else { mult };
        // W_f(0) occurring only at b = 0 contributes no word; its counts may be negative.
        if words == 0 {
            continue;
        }
        if per_symbol < 0 || zeros < 0 {
            return Err(violation(format!("negative symbol count for w = {wj}")));
        }
        debug_assert_eq!(zeros + scale * per_symbol, full_len);
        terms.push(SpectrumTerm {
            w: wj,
            words,
            zeros: zeros as u64,
            per_symbol: per_symbol as u64,
        });
    }
    let alphabet = 1usize << t;
    let full_len = full_len as u64;
    let mut full_cwe = CompleteWeightEnumerator::new(full_len, alphabet);
    let mut zero = vec![0u64; alphabet];
    zero[0] = full_len;
    full_cwe.add(zero, 1);
    let mut full_we = WeightEnumerator::new(full_len);
    let mut reduced_we = WeightEnumerator::new(full_len / scale as u64);
    full_we.add(0, 1);
    reduced_we.add(0, 1);
    for term in &terms {
        let mut comp = vec![term.per_symbol; alphabet];
        comp[0] = term.zeros;
        full_cwe.add(comp, term.words);
        full_we.add(scale as u64 * term.per_symbol, term.words);
        reduced_we.add(term.per_symbol, term.words);
    }
    Ok(ClosedFormPrediction {
        source: ClosedForm::General,
        q,
        t,
        w_at_zero: wi,
        full_length: full_len,
        length: full_len / scale as u64,
        dimension: n / t,
        terms,
        spectrum_values: spectrum.len(),
        full_cwe,
        full_we,
        reduced_we,
    })
}

/// Two-weight code from a bent function on GF(2^n), `n = 2m`, with
/// `W_f(0) = epsilon 2^m`. Lengths and weights are computed from their own
/// closed forms and must agree with [`predict_general`].
pub fn predict_bent(n: u32, f0: bool, epsilon: i8, t: u32) -> Result<ClosedFormPrediction> {
    if n % 2 != 0 || !(2..=62).contains(&n) {
        return Err(violation(format!("bent spectrum needs even n, got {n}")));
    }
    if epsilon != 1 && epsilon != -1 {
        return Err(violation("epsilon must be +1 or -1"));
    }
    let m = n / 2;
    let amp = 1i64 << m;
    let s = if f0 { -1i64 } else { 1 };
    let half = 1i64 << (n - 1);
    let plus = (half + s * (amp / 2)) as u64;
    let minus = (half - s * (amp / 2)) as u64;
    let spectrum = WalshSpectrum::from_pairs([(amp, plus), (-amp, minus)], epsilon as i64 * amp);
    let mut pred = predict_general(&spectrum, t, f0)?;

    let scale = (1i64 << t) - 1;
    let eps = epsilon as i64;
    let full_len = half + (eps * amp - 1 - s) / 2;
    let low = 1u64 << (n - t - 1);
    let high = low as i64 + eps * (1i64 << m) / (1i64 << t);
    let low_count = (half + eps * (amp / 2) * s - 1) as u64;
    let high_count = (half - eps * (amp / 2) * s) as u64;
    let mut reduced = WeightEnumerator::new((full_len / scale) as u64);
    reduced.add(0, 1);
    reduced.add(low, low_count);
    reduced.add(high as u64, high_count);
    if full_len as u64 != pred.full_length || reduced != pred.reduced_we {
        return Err(violation("bent closed form disagrees with the general closed form"));
    }
    pred.source = ClosedForm::Bent;
    Ok(pred)
}

/// Three-weight code from a spectrum `{0, ±A}` with the closed-form
/// multiplicities and `W_f(0) = w_i`.
pub fn predict_three_valued(q: u64, amplitude: u64, f0: bool, w_at_zero: i64, t: u32) -> Result<ClosedFormPrediction> {
    let (m0, mp, mm) = crate::families::three_value_multiplicities(q, amplitude, f0)?;
    let a = amplitude as i64;
    let spectrum = WalshSpectrum::from_pairs([(0, m0), (a, mp), (-a, mm)], w_at_zero);
    let mut pred = predict_general(&spectrum, t, f0)?;
    let n = log2_exact(q)?;
    let scale = (1i64 << t) - 1;
    let s = if f0 { -1 } else { 1 };
    let full_len = (q as i64 / 2) + (w_at_zero - 1 - s) / 2;
    let base = 1i64 << (n - t - 1);
    let mut reduced = WeightEnumerator::new((full_len / scale) as u64);
    reduced.add(0, 1);
    for (w, mult) in [(0, m0), (a, mp), (-a, mm)] {
        let count = if w == w_at_zero { mult - 1 } else { mult };
        reduced.add((base + (w_at_zero - w) / (1i64 << (t + 1))) as u64, count);
    }
    if full_len as u64 != pred.full_length || reduced != pred.reduced_we {
        return Err(violation("three-valued closed form disagrees with the general closed form"));
    }
    pred.source = ClosedForm::ThreeValued;
    Ok(pred)
}

/// Code from `f1(x1) + f2(x2)`: the merged spectrum has `W(0) = W1(0) W2(0)`.
pub fn predict_product(
    first: &WalshSpectrum,
    second: &WalshSpectrum,
    t: u32,
    f1_zero: bool,
    f2_zero: bool,
) -> Result<ClosedFormPrediction> {
    let merged = WalshSpectrum::product(first, second);
    let f0 = f1_zero ^ f2_zero;
    let mut pred = predict_general(&merged, t, f0)?;
    let q = merged.total() as i64;
    let omega = merged.at_zero();
    let s = if f0 { -1 } else { 1 };
    let scale = (1i64 << t) - 1;
    let length = (q + omega - 1 - s) / (2 * scale);
    let mut reduced = WeightEnumerator::new(length as u64);
    reduced.add(0, 1);
    for (&w, &mult) in merged.entries() {
        let count = if w == omega { mult - 1 } else { mult };
        reduced.add(((q + omega - w) / (1i64 << (t + 1))) as u64, count);
    }
    if length as u64 != pred.length || reduced != pred.reduced_we {
        return Err(violation("product closed form disagrees with the general closed form"));
    }
    pred.source = ClosedForm::Product;
    Ok(pred)
}

/// The specialized closed form that applies to an instance, if any.
pub fn specialized_prediction(inst: &CodeInstance) -> Option<Result<ClosedFormPrediction>> {
    let spectrum = inst.spectrum();
    let f0 = inst.f_at_zero();
    let t = inst.t();
    match inst.domain() {
        Domain::Product(p) => {
            let (f1, f2) = p.factors();
            Some(predict_product(&f1.walsh_spectrum(), &f2.walsh_spectrum(), t, f1.eval(0), f2.eval(0)))
        }
        Domain::Single(f) => {
            if let Some(m) = spectrum.bent_exponent() {
                let eps = if spectrum.at_zero() > 0 { 1 } else { -1 };
                debug_assert_eq!(f.n(), 2 * m);
                Some(predict_bent(2 * m, f0, eps, t))
            } else {
                spectrum
                    .three_valued_amplitude()
                    .map(|a| predict_three_valued(spectrum.total(), a as u64, f0, spectrum.at_zero(), t))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub name: String,
    pub predicted: String,
    pub observed: String,
    /// `None` when the comparison does not apply.
    pub passed: Option<bool>,
    pub detail: Option<String>,
}

impl Comparison {
    fn new(name: &str, predicted: impl ToString, observed: impl ToString, passed: bool) -> Self {
        Comparison {
            name: name.into(),
            predicted: predicted.to_string(),
            observed: observed.to_string(),
            passed: Some(passed),
            detail: None,
        }
    }

    fn skipped(name: &str, reason: impl Into<String>) -> Self {
        Comparison {
            name: name.into(),
            predicted: String::new(),
            observed: String::new(),
            passed: None,
            detail: Some(reason.into()),
        }
    }

    fn detail(mut self, d: Option<String>) -> Self {
        self.detail = d;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationReport {
    pub q: u64,
    pub t: u32,
    pub full_length: u64,
    pub length: u64,
    pub spectrum: String,
    pub prediction: Option<ClosedFormPrediction>,
    pub bruteforce: BruteForce,
    pub comparisons: Vec<Comparison>,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.passed != Some(false))
    }

    pub fn first_failure(&self) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.passed == Some(false))
    }
}

impl fmt::Display for CertificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q = {}, t = {}, full length {}, length {}", self.q, self.t, self.full_length, self.length)?;
        writeln!(f, "spectrum {}", self.spectrum)?;
        for c in &self.comparisons {
            let status = match c.passed {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skip",
            };
            write!(f, "{status} {}", c.name)?;
            if c.passed.is_some() {
                write!(f, ": predicted {} observed {}", c.predicted, c.observed)?;
            }
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "certified" } else { "MISMATCH" })
    }
}

fn first_we_mismatch(pred: &WeightEnumerator, obs: &WeightEnumerator) -> Option<String> {
    let mut weights: Vec<u64> = pred.terms.keys().chain(obs.terms.keys()).copied().collect();
    weights.sort_unstable();
    weights.dedup();
    weights
        .into_iter()
        .find(|&w| pred.count(w) != obs.count(w))
        .map(|w| format!("first mismatch at weight {w}: predicted {} observed {}", pred.count(w), obs.count(w)))
}

fn first_cwe_mismatch(pred: &CompleteWeightEnumerator, obs: &CompleteWeightEnumerator) -> Option<String> {
    let mut keys: Vec<&Composition> = pred.terms.keys().chain(obs.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let (p, o) = (pred.terms.get(k).copied().unwrap_or(0), obs.terms.get(k).copied().unwrap_or(0));
        (p != o).then(|| format!("first mismatch at composition {k:?}: predicted {p} observed {o}"))
    })
}

/// Exhaustive enumeration compared against the closed forms for the
/// instance's own spectrum.
pub fn certify(inst: &CodeInstance) -> CertificationReport {
    let brute = bruteforce(inst);
    let pred = predict_general(inst.spectrum(), inst.t(), inst.f_at_zero());
    certify_against(inst, brute, pred)
}

/// Compares a finished enumeration against a prediction, which may come from
/// a different (for example deliberately altered) spectrum.
pub fn certify_against(
    inst: &CodeInstance,
    brute: BruteForce,
    prediction: Result<ClosedFormPrediction>,
) -> CertificationReport {
    let mut comparisons = Vec::new();
    let obs_len = inst.full_length() as u64;
    let obs_red = inst.length() as u64;
    let scale = (1u64 << inst.t()) - 1;
    comparisons.push(Comparison::new("full length = (2^t - 1) length", obs_len, scale * obs_red, obs_len == scale * obs_red));
    comparisons.push(
        Comparison::new("scaling wt(full) = (2^t - 1) wt(reduced)", 0, brute.tally.scaling_failures, brute.tally.scaling_failures == 0)
            .detail(brute.tally.first_scaling_failure.map(|b| format!("first at b = {}", inst.format_source(b)))),
    );
    comparisons.push(
        Comparison::new("nonzero symbols equidistributed", 0, brute.tally.non_constant, brute.tally.non_constant == 0)
            .detail(brute.tally.first_non_constant.map(|b| format!("first at b = {}", inst.format_source(b)))),
    );
    let pred = match prediction {
        Ok(p) => p,
        Err(e) => {
            comparisons.push(Comparison {
                name: "closed form".into(),
                predicted: String::new(),
                observed: String::new(),
                passed: Some(false),
                detail: Some(e.to_string()),
            });
            return CertificationReport {
                q: inst.order(),
                t: inst.t(),
                full_length: obs_len,
                length: obs_red,
                spectrum: inst.spectrum().to_string(),
                prediction: None,
                bruteforce: brute,
                comparisons,
            };
        }
    };
    comparisons.push(Comparison::new("full length", pred.full_length, obs_len, pred.full_length == obs_len));
    comparisons.push(Comparison::new("length", pred.length, obs_red, pred.length == obs_red));
    let distinct = brute.distinct_codewords();
    let expected_distinct = 1u64 << (pred.dimension * inst.t());
    comparisons.push(
        Comparison::new("dimension", pred.dimension, format!("{distinct} distinct codewords"), distinct == expected_distinct),
    );
    comparisons.push(
        Comparison::new("CWE full code", &pred.full_cwe, &brute.full_cwe, pred.full_cwe == brute.full_cwe)
            .detail(first_cwe_mismatch(&pred.full_cwe, &brute.full_cwe)),
    );
    comparisons.push(
        Comparison::new("WE full code", &pred.full_we, &brute.full_we, pred.full_we == brute.full_we)
            .detail(first_we_mismatch(&pred.full_we, &brute.full_we)),
    );
    comparisons.push(
        Comparison::new("WE reduced code", &pred.reduced_we, &brute.reduced_we, pred.reduced_we == brute.reduced_we)
            .detail(first_we_mismatch(&pred.reduced_we, &brute.reduced_we)),
    );
    let collapsed = brute.full_cwe.collapse();
    comparisons.push(Comparison::new("CWE collapses to WE", &collapsed, &brute.full_we, collapsed == brute.full_we));
    if pred.weight_count_applies() {
        let r = inst.spectrum().len();
        let observed = brute.reduced_we.nonzero_weights();
        comparisons.push(Comparison::new("distinct nonzero weights = spectrum values", r, observed, r == observed));
    } else {
        comparisons.push(Comparison::skipped(
            "distinct nonzero weights = spectrum values",
            "weights M_j not pairwise distinct or W_f(0) occurs once",
        ));
    }
    if let Some(special) = specialized_prediction(inst) {
        let name = "specialized closed form";
        comparisons.push(match special {
            Ok(s) => {
                let ok = s.same_values(&pred);
                Comparison::new(name, s.source.name(), pred.source.name(), ok)
            }
            Err(e) => Comparison::new(name, "ok", "error", false).detail(Some(e.to_string())),
        });
    }
    CertificationReport {
        q: inst.order(),
        t: inst.t(),
        full_length: obs_len,
        length: obs_red,
        spectrum: inst.spectrum().to_string(),
        prediction: Some(pred),
        bruteforce: brute,
        comparisons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::BooleanFunction;
    use crate::families::{monomial_bent, Family};
    use crate::field::Field;
    use alloc::sync::Arc;

    fn field(n: u32) -> Arc<Field> {
        Arc::new(Field::new(n, None).unwrap())
    }

    fn we(pairs: &[(u64, u64)], length: u64) -> WeightEnumerator {
        let mut w = WeightEnumerator::new(length);
        for &(k, c) in pairs {
            w.add(k, c);
        }
        w
    }

    #[test]
    fn cube_gf32() {
        let f = BooleanFunction::monomial(field(5), 3, 1).unwrap();
        let inst = CodeInstance::new(f, 1).unwrap();
        let report = certify(&inst);
        assert!(report.passed(), "{report}");
        assert_eq!(report.bruteforce.reduced_we, we(&[(0, 1), (6, 10), (8, 15), (10, 6)], 15));
        assert_eq!(report.bruteforce.reduced_we.to_string(), "1 + 10x^6 + 15x^8 + 6x^10");
    }

    #[test]
    fn dillon_gf16() {
        let fl = field(4);
        let w = fl.pow(fl.generator(), 5);
        let f = monomial_bent(fl, Family::Dillon, None, w).unwrap().function;
        let inst = CodeInstance::new(f, 2).unwrap();
        let report = certify(&inst);
        assert!(report.passed(), "{report}");
        assert_eq!(report.bruteforce.reduced_we.to_string(), "1 + 9x^2 + 6x^3");
        // W_f(b) = -4 words: 3 copies of each nonzero symbol, no zeros.
        assert_eq!(report.bruteforce.full_cwe.terms.get(&vec![0, 3, 3, 3]), Some(&6));
        let p3 = predict_bent(4, false, 1, 2).unwrap();
        assert_eq!(p3.length, 3);
    }

    #[test]
    fn zero_function_simplex() {
        let inst = CodeInstance::new(BooleanFunction::zero(field(4)), 1).unwrap();
        let report = certify(&inst);
        assert!(report.passed(), "{report}");
        assert_eq!(report.bruteforce.reduced_we, we(&[(0, 1), (8, 15)], 15));
    }

    #[test]
    fn corrupted_prediction_is_located() {
        let f = BooleanFunction::monomial(field(5), 3, 1).unwrap();
        let inst = CodeInstance::new(f, 1).unwrap();
        let wrong = WalshSpectrum::from_pairs([(-8, 8), (0, 16), (8, 8)], 0);
        let report = certify_against(&inst, bruteforce(&inst), predict_general(&wrong, 1, false));
        assert!(!report.passed());
        let fail = report.comparisons.iter().find(|c| c.name == "WE reduced code").unwrap();
        assert_eq!(fail.passed, Some(false));
        assert_eq!(fail.detail.as_deref(), Some("first mismatch at weight 6: predicted 8 observed 10"));
    }

    #[test]
    fn hypothesis_errors() {
        let ones = WalshSpectrum::from_pairs([(-16, 1), (0, 15)], -16);
        assert!(matches!(predict_general(&ones, 1, true), Err(Error::EmptyDefiningSet)));
        let missing = WalshSpectrum::from_pairs([(4, 10), (-4, 6)], 8);
        assert!(matches!(predict_general(&missing, 1, false), Err(Error::HypothesisViolation(_))));
        assert!(matches!(predict_bent(5, false, 1, 1), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn tallies_merge_to_whole() {
        let f = BooleanFunction::monomial(field(6), 9, 1).unwrap();
        let inst = CodeInstance::new(f, 3).unwrap();
        let whole = tally_range(&inst, 0..64);
        let mut parts = tally_range(&inst, 40..64);
        parts.merge(tally_range(&inst, 0..17));
        parts.merge(tally_range(&inst, 17..40));
        assert_eq!(whole, parts);
    }

    #[test]
    fn display_forms() {
        let mut c = CompleteWeightEnumerator::new(3, 4);
        c.add(vec![3, 0, 0, 0], 1);
        c.add(vec![0, 1, 1, 1], 6);
        assert_eq!(c.to_string(), "6 x1 x2 x3 + x0^3");
        assert_eq!(c.collapse(), we(&[(0, 1), (3, 6)], 3));
    }
}
