//! Named families of Boolean functions with known Walsh spectra: monomial
//! bent functions (Gold, Dillon, Kasami, Leander, CCK), monomials with three
//! Walsh values (series I to VI), quadratic forms, and sums of functions on a
//! product of fields.
//!
//! Each constructor evaluates the conditions attached to its family and then
//! certifies the claimed spectrum by computing it. The computed spectrum is the
//! ground truth: a condition report is informational.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::boolean::{BooleanFunction, ProductFunction, QuadraticForm, WalshSpectrum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gf2poly;

use num_bigint::BigUint;
pub use num_integer::gcd;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Gold,
    Dillon,
    Kasami,
    Leander,
    Cck,
    Series1,
    Series2,
    Series3,
    Series4,
    Series5,
    Series6,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Gold,
        Family::Dillon,
        Family::Kasami,
        Family::Leander,
        Family::Cck,
        Family::Series1,
        Family::Series2,
        Family::Series3,
        Family::Series4,
        Family::Series5,
        Family::Series6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gold => "gold",
            Family::Dillon => "dillon",
            Family::Kasami => "kasami",
            Family::Leander => "leander",
            Family::Cck => "cck",
            Family::Series1 => "series1",
            Family::Series2 => "series2",
            Family::Series3 => "series3",
            Family::Series4 => "series4",
            Family::Series5 => "series5",
            Family::Series6 => "series6",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == name)
    }

    pub fn is_bent(self) -> bool {
        matches!(
            self,
            Family::Gold | Family::Dillon | Family::Kasami | Family::Leander | Family::Cck
        )
    }

    /// Whether the family takes the integer parameter `h`.
    pub fn uses_h(self) -> bool {
        !matches!(
            self,
            Family::Dillon | Family::Series3 | Family::Series4 | Family::Series5
        )
    }

    pub fn exponent_formula(self) -> &'static str {
        match self {
            Family::Gold => "2^h + 1",
            Family::Dillon => "2^m - 1",
            Family::Kasami => "2^(2h) - 2^h + 1",
            Family::Leander => "(2^h + 1)^2",
            Family::Cck => "2^(2h) + 2^h + 1",
            Family::Series1 => "2^h + 1",
            Family::Series2 => "2^(2h) - 2^h + 1",
            Family::Series3 => "2^m + 2^((m-1)/2) + 1",
            Family::Series4 => "2^((m+1)/2) + 3",
            Family::Series5 => "2^m + 3",
            Family::Series6 => "2*3^h + 1",
        }
    }

    pub fn conditions_text(self) -> &'static str {
        match self {
            Family::Gold => "n = 2m; 2 does not divide n/gcd(n,h); alpha != 0; alpha not in <theta^(2^h+1)>",
            Family::Dillon => "n = 2m; alpha in GF(2^m)^*; sum_{x in GF(2^m)^*} (-1)^Tr_1^m(1/x + alpha x) = -1",
            Family::Kasami => "n = 2m; 3 does not divide m; gcd(h,n) = 1; alpha != 0; alpha not in <theta^3>",
            Family::Leander => "n = 4h; h odd",
            Family::Cck => "n = 6h; alpha in GF(2^(3h))^*; Tr_h^(3h)(alpha) = 0",
            Family::Series1 | Family::Series2 => "v2(h) >= v2(n)",
            Family::Series3 | Family::Series4 => "n = 2m; m odd",
            Family::Series5 => "n = 2m + 1",
            Family::Series6 => "n | 4h + 1",
        }
    }

    pub fn amplitude_formula(self) -> &'static str {
        match self {
            Family::Series1 | Family::Series2 => "sqrt(2^gcd(h,n) q)",
            Family::Series3 | Family::Series4 => "2 sqrt(q)",
            Family::Series5 | Family::Series6 => "sqrt(2q)",
            _ => "2^m (bent)",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluated family condition. `holds` is `None` when the condition
/// needs data that was not supplied (for example `alpha` without a field).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub text: String,
    pub holds: Option<bool>,
    pub note: Option<String>,
}

impl Condition {
    fn new(text: impl Into<String>, holds: bool) -> Condition {
        Condition { text: text.into(), holds: Some(holds), note: None }
    }

    fn unknown(text: impl Into<String>, note: impl Into<String>) -> Condition {
        Condition { text: text.into(), holds: None, note: Some(note.into()) }
    }

    fn with_note(mut self, note: impl Into<String>) -> Condition {
        self.note = Some(note.into());
        self
    }
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(b: u64) -> u32 {
    assert!(b != 0, "v2 of zero");
    b.trailing_zeros()
}

/// `t | n` and `(2^t - 1) | d`: sufficient for coset invariance of `Tr(alpha x^d)`.
pub fn condition16(n: u32, t: u32, d: u64) -> bool {
    t != 0 && n % t == 0 && t < 64 && d % ((1u64 << t) - 1) == 0
}

/// `h = 30 l + 21`, the series VI parameter for which `31 | 2*3^h + 1`.
pub fn series6_h_for(l: u64) -> u64 {
    30 * l + 21
}

/// `2 * 3^h + 1`, which overflows `u64` once `h > 39`.
fn series6_exponent(h: u64) -> BigUint {
    BigUint::from(3u32).pow(h as u32) * 2u32 + 1u32
}

/// Conditions for building a code over GF(2^t) from `Tr(x^(2*3^h+1))` on
/// GF(2^n), evaluated on integers only (no field is constructed).
pub fn series6_conditions(h: u64, n: u64, t: u32) -> Vec<Condition> {
    let modulus = (1u64 << t) - 1;
    let d = series6_exponent(h);
    vec![
        Condition::new(format!("{t} | n"), n % t as u64 == 0),
        Condition::new(
            format!("{modulus} | 2*3^h + 1"),
            (&d % modulus).is_zero(),
        ),
        Condition::new("n | 4h + 1", (4 * h + 1) % n == 0),
        // 2*3^h + 1 is odd, so it is <= 2^n - 1 exactly when it has at most n bits.
        Condition::new("2*3^h + 1 <= 2^n - 1", d.bits() <= n),
    ]
}

/// `(2^h + 1)`-style exponents for the family, or `BadParams` when the
/// structural constraints on `n` and `h` fail.
pub fn exponent(family: Family, n: u32, h: Option<u32>) -> Result<u64> {
    let need_h = || {
        h.filter(|&h| h >= 1)
            .ok_or_else(|| Error::BadParams(format!("{family} needs a parameter h >= 1")))
    };
    let pow2 = |e: u32| -> Result<u64> {
        1u64.checked_shl(e)
            .filter(|_| e < 63)
            .ok_or_else(|| Error::BadParams(format!("2^{e} overflows")))
    };
    let d = match family {
        Family::Gold | Family::Series1 => pow2(need_h()?)? + 1,
        Family::Kasami | Family::Series2 => {
            let h = need_h()?;
            pow2(2 * h)? - pow2(h)? + 1
        }
        Family::Dillon => {
            even_n(family, n)?;
            pow2(n / 2)? - 1
        }
        Family::Leander => {
            let h = need_h()?;
            if n != 4 * h {
                return Err(Error::BadParams(format!("leander needs n = 4h, got n = {n}, h = {h}")));
            }
            (pow2(h)? + 1) * (pow2(h)? + 1)
        }
        Family::Cck => {
            let h = need_h()?;
            if n != 6 * h {
                return Err(Error::BadParams(format!("cck needs n = 6h, got n = {n}, h = {h}")));
            }
            pow2(2 * h)? + pow2(h)? + 1
        }
        Family::Series3 | Family::Series4 => {
            even_n(family, n)?;
            let m = n / 2;
            if m % 2 == 0 {
                return Err(Error::BadParams(format!("{family} needs n = 2m with m odd")));
            }
            if family == Family::Series3 {
                pow2(m)? + pow2((m - 1) / 2)? + 1
            } else {
                pow2((m + 1) / 2)? + 3
            }
        }
        Family::Series5 => {
            if n % 2 == 0 {
                return Err(Error::BadParams("series5 needs n = 2m + 1".into()));
            }
            pow2((n - 1) / 2)? + 3
        }
        Family::Series6 => {
            let h = need_h()?;
            if (4 * h as u64 + 1) % n as u64 != 0 {
                return Err(Error::BadParams(format!("series6 needs n | 4h + 1, got n = {n}, h = {h}")));
            }
            3u64.checked_pow(h)
                .and_then(|p| p.checked_mul(2))
                .map(|p| p + 1)
                .ok_or_else(|| Error::BadParams(format!("2*3^{h} + 1 overflows")))?
        }
    };
    Ok(d)
}

fn even_n(family: Family, n: u32) -> Result<()> {
    if n % 2 != 0 || n < 2 {
        Err(Error::BadParams(format!("{family} needs even n, got {n}")))
    } else {
        Ok(())
    }
}

/// Family conditions that depend only on `n`, `h` (and `t`, when given); the
/// conditions involving `alpha` are listed with `holds = None`.
pub fn integer_conditions(family: Family, n: u32, h: Option<u32>, t: Option<u32>) -> Result<Vec<Condition>> {
    let d = exponent(family, n, h)?;
    let (n64, hh) = (n as u64, h.unwrap_or(0) as u64);
    let mut out = Vec::new();
    match family {
        Family::Gold => {
            out.push(Condition::new("n = 2m", n % 2 == 0));
            out.push(
                Condition::new("2 does not divide n/gcd(n,h)", (n64 / gcd(n64, hh)) % 2 == 1)
                    .with_note("listed form; Walsh certification decides bentness"),
            );
            out.push(Condition::unknown("alpha not in <theta^(2^h+1)>", "needs alpha"));
        }
        Family::Dillon => {
            out.push(Condition::new("n = 2m", n % 2 == 0));
            out.push(Condition::unknown("alpha in GF(2^m)^*", "needs alpha"));
            out.push(Condition::unknown("Kloosterman sum = -1", "needs alpha"));
        }
        Family::Kasami => {
            out.push(Condition::new("n = 2m", n % 2 == 0));
            out.push(Condition::new("3 does not divide m", (n / 2) % 3 != 0));
            out.push(Condition::new("gcd(h, n) = 1", gcd(n64, hh) == 1));
            out.push(Condition::unknown("alpha not in <theta^3>", "needs alpha"));
        }
        Family::Leander => {
            out.push(Condition::new("n = 4h", n64 == 4 * hh));
            out.push(Condition::new("2 does not divide h", hh % 2 == 1));
        }
        Family::Cck => {
            out.push(Condition::new("n = 6h", n64 == 6 * hh));
            out.push(Condition::unknown("alpha in GF(2^(3h))^*", "needs alpha"));
            out.push(Condition::unknown("Tr_h^(3h)(alpha) = 0", "needs alpha"));
        }
        Family::Series1 | Family::Series2 => {
            out.push(Condition::new("v2(h) >= v2(n)", v2(hh) >= v2(n64)));
        }
        Family::Series3 | Family::Series4 => {
            out.push(Condition::new("n = 2m, m odd", n % 2 == 0 && (n / 2) % 2 == 1));
        }
        Family::Series5 => out.push(Condition::new("n = 2m + 1", n % 2 == 1)),
        Family::Series6 => {
            out.push(
                Condition::new("n | 4h + 1", (4 * hh + 1) % n64 == 0)
                    .with_note("read as n divides 4h + 1"),
            );
        }
    }
    if n < 64 {
        out.push(Condition::new("1 <= d <= 2^n - 1", d >= 1 && d < (1u64 << n)));
    }
    if let Some(t) = t {
        out.push(Condition::new(
            format!("t = {t}: t | n and (2^t - 1) | d"),
            condition16(n, t, d),
        ));
    }
    Ok(out)
}

/// Predicted amplitude `A` for the three-valued series, when it is an integer.
pub fn predicted_amplitude(family: Family, n: u32, h: Option<u32>) -> Option<i64> {
    let twice_log = match family {
        Family::Series1 | Family::Series2 => gcd(n as u64, h? as u64) as u32 + n,
        Family::Series3 | Family::Series4 => n + 2,
        Family::Series5 | Family::Series6 => n + 1,
        _ => return None,
    };
    (twice_log % 2 == 0 && twice_log / 2 < 63).then(|| 1i64 << (twice_log / 2))
}

/// The closed-form multiplicities `(m_0, m_A, m_-A)` of the values `0, A, -A`
/// for a three-valued spectrum on a domain of size `q`.
pub fn three_value_multiplicities(q: u64, a: u64, f0: bool) -> Result<(u64, u64, u64)> {
    if a == 0 || q % a != 0 {
        return Err(Error::NonIntegerMultiplicity);
    }
    let r = q / a;
    let r2 = r.checked_mul(r).ok_or(Error::NonIntegerMultiplicity)?;
    if r2 > q {
        return Err(Error::NonIntegerMultiplicity);
    }
    let (plus, minus) = if f0 { (r2 - r, r2 + r) } else { (r2 + r, r2 - r) };
    if plus % 2 != 0 {
        return Err(Error::NonIntegerMultiplicity);
    }
    Ok((q - r2, plus / 2, minus / 2))
}

/// Kloosterman-type sum `sum_{x in GF(2^m)^*} (-1)^(Tr_1^m(1/x + alpha x))` over the
/// copy of GF(2^m) inside `field`.
pub fn dillon_sum(field: &Field, m: u32, alpha: u32) -> Result<i64> {
    let sub = field.subfield(m)?;
    if alpha == 0 || sub.label(alpha).is_none() {
        return Err(Error::AlphaNotInSubfield { alpha, m });
    }
    let tr_m = |z: u32| {
        let mut acc = 0u32;
        let mut p = z;
        for _ in 0..m {
            acc ^= p;
            p = field.square(p);
        }
        acc == 1
    };
    sub.nonzero()
        .iter()
        .map(|&x| {
            let inv = field.inv(x)?;
            Ok(if tr_m(inv ^ field.mul(alpha, x)) { -1 } else { 1 })
        })
        .sum()
}

/// What the family claims about the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumClaim {
    /// Values `±2^m`.
    Bent { m: u32 },
    /// Values `{0, ±A}` with the closed-form multiplicities; `A` unknown when
    /// the amplitude formula is not an integer.
    ThreeValued { amplitude: Option<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certification {
    pub claim: SpectrumClaim,
    pub spectrum: WalshSpectrum,
    pub passed: bool,
}

/// Checks a computed spectrum against a claim, including exact multiplicities.
pub fn certify_spectrum(claim: SpectrumClaim, spectrum: &WalshSpectrum, f0: bool) -> bool {
    let q = spectrum.total();
    match claim {
        SpectrumClaim::Bent { m } => {
            if spectrum.bent_exponent() != Some(m) {
                return false;
            }
            let half = q / 2;
            let shift = 1u64 << (m - 1);
            let (plus, minus) = if f0 { (half - shift, half + shift) } else { (half + shift, half - shift) };
            spectrum.multiplicity(1 << m) == plus && spectrum.multiplicity(-(1 << m)) == minus
        }
        SpectrumClaim::ThreeValued { amplitude } => {
            let Some(a) = spectrum.three_valued_amplitude() else {
                return false;
            };
            if amplitude.is_some_and(|p| p != a) {
                return false;
            }
            match three_value_multiplicities(q, a as u64, f0) {
                Ok((m0, mp, mm)) => {
                    spectrum.multiplicity(0) == m0
                        && spectrum.multiplicity(a) == mp
                        && spectrum.multiplicity(-a) == mm
                }
                Err(_) => false,
            }
        }
    }
}

/// Kind, parameters and evaluated conditions of a constructed family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub family: Family,
    pub n: u32,
    pub h: Option<u32>,
    pub alpha: u32,
    pub d: u64,
    pub conditions: Vec<Condition>,
    pub certification: Certification,
}

impl FamilyDescriptor {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds != Some(false))
    }
}

#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub function: BooleanFunction,
    pub descriptor: FamilyDescriptor,
}

/// `f(x) = Tr(alpha x^d)` for one of the bent exponent families, with its condition
/// report and a computed-spectrum certification.
pub fn monomial_bent(field: Arc<Field>, family: Family, h: Option<u32>, alpha: u32) -> Result<FamilyInstance> {
    if !family.is_bent() {
        return Err(Error::BadParams(format!("{family} is not a bent family")));
    }
    let n = field.n();
    even_n(family, n)?;
    if alpha == 0 {
        return Err(Error::BadParams("alpha must be nonzero".into()));
    }
    field.check(alpha as u64)?;
    let d = exponent(family, n, h)?;
    let q1 = field.order() as u64 - 1;
    if d > q1 {
        return Err(Error::BadParams(format!("exponent {d} exceeds q - 1 = {q1}")));
    }
    let m = n / 2;
    let mut conditions = integer_conditions(family, n, h, None)?;
    let not_in_subgroup = |e: u64| field.pow(alpha, q1 / gcd(e, q1)) != 1;
    for c in conditions.iter_mut().filter(|c| c.holds.is_none()) {
        let holds = match c.text.as_str() {
            "alpha not in <theta^(2^h+1)>" => not_in_subgroup(d),
            "alpha not in <theta^3>" => not_in_subgroup(3),
            "alpha in GF(2^m)^*" => field.in_subfield(m, alpha),
            "Kloosterman sum = -1" => dillon_sum(&field, m, alpha).map(|s| s == -1).unwrap_or(false),
            "alpha in GF(2^(3h))^*" => field.in_subfield(n / 2, alpha),
            "Tr_h^(3h)(alpha) = 0" => {
                let hh = n / 6;
                alpha ^ field.frobenius(alpha, hh) ^ field.frobenius(alpha, 2 * hh) == 0
            }
            _ => continue,
        };
        c.holds = Some(holds);
        c.note = None;
    }
    let function = BooleanFunction::monomial(field, d, alpha)?;
    let spectrum = function.walsh_spectrum();
    let claim = SpectrumClaim::Bent { m };
    let passed = certify_spectrum(claim, &spectrum, function.eval(0));
    Ok(FamilyInstance {
        function,
        descriptor: FamilyDescriptor {
            family,
            n,
            h,
            alpha,
            d,
            conditions,
            certification: Certification { claim, spectrum, passed },
        },
    })
}

/// `f(x) = Tr(x^d)` for one of the three-valued series, certified against `{0, ±A}` and the
/// closed-form multiplicities.
pub fn semibent_monomial(field: Arc<Field>, family: Family, h: Option<u32>) -> Result<FamilyInstance> {
    if family.is_bent() {
        return Err(Error::BadParams(format!("{family} is not a three-valued series")));
    }
    let n = field.n();
    let d = exponent(family, n, h)?;
    let q1 = field.order() as u64 - 1;
    if d > q1 {
        return Err(Error::BadParams(format!("exponent {d} exceeds q - 1 = {q1}")));
    }
    let conditions = integer_conditions(family, n, h, None)?;
    let function = BooleanFunction::monomial(field, d, 1)?;
    let spectrum = function.walsh_spectrum();
    let claim = SpectrumClaim::ThreeValued { amplitude: predicted_amplitude(family, n, h) };
    let passed = certify_spectrum(claim, &spectrum, function.eval(0));
    Ok(FamilyInstance {
        function,
        descriptor: FamilyDescriptor {
            family,
            n,
            h,
            alpha: 1,
            d,
            conditions,
            certification: Certification { claim, spectrum, passed },
        },
    })
}

/// The most specific quadratic shape a form matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadraticShape {
    /// `sum_{i=1}^{floor(n/2)} Tr(c_i x^(1+2^i))`, no half-trace term.
    General,
    /// `n = 2m`, full-trace terms with `i <= m - 1` plus an optional half-trace term.
    EvenBent,
    /// Only exponents `1 + 2^(2 lambda + 1)`, `lambda <= floor(m/2) - 1`.
    OddExponents,
    /// `m = 2s + 1`, odd exponents with `lambda <= s - 1`, plus a half-trace term.
    OddExponentsHalf,
    /// As `OddExponentsHalf` with binary coefficients and `c_m = 1`.
    Binary,
    /// As `Binary` with exactly one `c_lambda = 1`.
    BinarySingle,
    /// Matches none of the above.
    Other,
}

impl QuadraticShape {
    pub fn name(self) -> &'static str {
        match self {
            QuadraticShape::General => "general",
            QuadraticShape::EvenBent => "even",
            QuadraticShape::OddExponents => "odd-exponents",
            QuadraticShape::OddExponentsHalf => "odd-exponents-half",
            QuadraticShape::Binary => "binary",
            QuadraticShape::BinarySingle => "binary-single",
            QuadraticShape::Other => "other",
        }
    }

    pub const ALL: [QuadraticShape; 7] = [
        QuadraticShape::General,
        QuadraticShape::EvenBent,
        QuadraticShape::OddExponents,
        QuadraticShape::OddExponentsHalf,
        QuadraticShape::Binary,
        QuadraticShape::BinarySingle,
        QuadraticShape::Other,
    ];

    pub fn from_name(name: &str) -> Option<QuadraticShape> {
        QuadraticShape::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn describe(self) -> &'static str {
        match self {
            QuadraticShape::General => "sum_{i=1}^{n/2} Tr(c_i x^(1+2^i)), c_i in GF(2^n)",
            QuadraticShape::EvenBent => "n = 2m; sum_{i=1}^{m-1} Tr(c_i x^(1+2^i)) + Tr_1^m(c_m x^(1+2^m)), c_m in GF(2^m)",
            QuadraticShape::OddExponents => "n = 2m; sum_{l=0}^{m/2-1} Tr(c_l x^(1+2^(2l+1)))",
            QuadraticShape::OddExponentsHalf => "n = 2m, m = 2s+1; sum_{l=0}^{s-1} Tr(c_l x^(1+2^(2l+1))) + Tr_1^m(c_m x^(1+2^m))",
            QuadraticShape::Binary => "as odd-exponents-half with c_l in GF(2), c_m = 1; bent iff gcd(c(x), x^m + 1) = 1",
            QuadraticShape::BinarySingle => "Tr(x^(1+2^(2l+1))) + Tr_1^m(x^(1+2^m)); bent iff gcd(3(2l+1), m) = 1",
            QuadraticShape::Other => "any other coefficient pattern",
        }
    }
}

/// Whether `form` on GF(2^n) has the given shape (shapes nest, so a form
/// usually fits several).
pub fn fits_shape(n: u32, form: &QuadraticForm, shape: QuadraticShape) -> bool {
    let support: Vec<(u32, u32)> = form
        .full
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k as u32 + 1, c))
        .collect();
    let max_i = support.last().map_or(0, |p| p.0);
    let half = form.half.filter(|&c| c != 0);
    let m = n / 2;
    let even = n % 2 == 0;
    let odd_only = support.iter().all(|&(i, _)| i % 2 == 1);
    let odd_m_shape = even && m % 2 == 1 && m >= 3 && odd_only && max_i <= m - 2;
    let binary = odd_m_shape && half == Some(1) && support.iter().all(|&(_, c)| c == 1);
    match shape {
        QuadraticShape::BinarySingle => binary && support.len() == 1,
        QuadraticShape::Binary => binary,
        QuadraticShape::OddExponents => even && half.is_none() && odd_only && max_i < 2 * (m / 2),
        QuadraticShape::OddExponentsHalf => odd_m_shape,
        QuadraticShape::EvenBent => even && max_i < m,
        QuadraticShape::General => half.is_none() && max_i <= n / 2,
        QuadraticShape::Other => true,
    }
}

/// The most specific shape `form` fits.
pub fn classify_quadratic(n: u32, form: &QuadraticForm) -> QuadraticShape {
    [
        QuadraticShape::BinarySingle,
        QuadraticShape::Binary,
        QuadraticShape::OddExponents,
        QuadraticShape::OddExponentsHalf,
        QuadraticShape::EvenBent,
        QuadraticShape::General,
    ]
    .into_iter()
    .find(|&s| fits_shape(n, form, s))
    .unwrap_or(QuadraticShape::Other)
}

#[derive(Debug, Clone)]
pub struct QuadraticInstance {
    pub function: BooleanFunction,
    pub shape: QuadraticShape,
}

pub fn quadratic_function(field: Arc<Field>, form: QuadraticForm) -> Result<QuadraticInstance> {
    let shape = classify_quadratic(field.n(), &form);
    let function = BooleanFunction::quadratic(field, form)?;
    Ok(QuadraticInstance { function, shape })
}

/// The binary-coefficient form `sum c_lambda Tr(x^(1+2^(2 lambda+1))) + Tr_1^m(x^(1+2^m))`
/// on GF(2^(2m)), `m = 2s + 1`, `coeffs.len() = s`.
pub fn binary_form(m: u32, coeffs: &[bool]) -> Result<QuadraticForm> {
    check_binary_shape(m, coeffs.len())?;
    let mut full = vec![0u32; (2 * coeffs.len()).saturating_sub(1)];
    for (lambda, &c) in coeffs.iter().enumerate() {
        if c {
            full[2 * lambda] = 1;
        }
    }
    Ok(QuadraticForm { full, half: Some(1) })
}

/// `Tr(x^(1+2^(2 lambda+1))) + Tr_1^m(x^(1+2^m))`.
pub fn single_form(m: u32, lambda: u32) -> Result<QuadraticForm> {
    let s = (m.saturating_sub(1) / 2) as usize;
    if lambda as usize >= s {
        return Err(Error::BadShape(format!("lambda = {lambda} must be below s = {s}")));
    }
    let mut coeffs = vec![false; s];
    coeffs[lambda as usize] = true;
    binary_form(m, &coeffs)
}

fn check_binary_shape(m: u32, len: usize) -> Result<()> {
    if m < 3 || m % 2 == 0 || m > 63 {
        return Err(Error::BadShape(format!("m = {m} must be odd, >= 3")));
    }
    if len != ((m - 1) / 2) as usize {
        return Err(Error::BadShape(format!(
            "expected {} coefficients for m = {m}, got {len}",
            (m - 1) / 2
        )));
    }
    Ok(())
}

/// Coprimality of `c(x) = sum c_lambda (x^(2 lambda+1) + x^(m-2 lambda-1)) + x^m`
/// with `x^m + 1` over GF(2); equivalent to bentness of [`binary_form`].
pub fn quadratic_bent_criterion(m: u32, coeffs: &[bool]) -> Result<bool> {
    check_binary_shape(m, coeffs.len())?;
    let mut c: u128 = 1 << m;
    for (lambda, &bit) in coeffs.iter().enumerate() {
        if bit {
            let e = 2 * lambda as u32 + 1;
            c ^= 1 << e;
            c ^= 1 << (m - e);
        }
    }
    Ok(gf2poly::gcd(c, (1u128 << m) | 1) == 1)
}

/// `gcd(3(2 lambda + 1), m) = 1`, the criterion for [`single_form`].
pub fn single_form_criterion(m: u32, lambda: u32) -> bool {
    gcd(3 * (2 * lambda as u64 + 1), m as u64) == 1
}

/// `f1(x1) + f2(x2)`; its spectrum is the merged product of the factor spectra.
pub fn product_function(f1: BooleanFunction, f2: BooleanFunction) -> ProductFunction {
    ProductFunction::new(f1, f2)
}

/// Multiplicities `(M_0, M_+, M_-)` of the spectrum of a sum of two
/// three-valued functions with amplitudes `A1`, `A2`.
pub fn three_by_three_multiplicities(first: (u64, u64, u64), second: (u64, u64, u64)) -> (u64, u64, u64) {
    let (m0, mp, mm) = first;
    let (u0, up, um) = second;
    (
        m0 * (u0 + up + um) + (mp + mm) * u0,
        mp * up + mm * um,
        mp * um + mm * up,
    )
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.holds {
            Some(true) => "ok",
            Some(false) => "FAILED",
            None => "not evaluated",
        };
        write!(f, "{}: {}", self.text, status)?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

impl SpectrumClaim {
    pub fn describe(&self) -> String {
        match self {
            SpectrumClaim::Bent { m } => format!("bent, values ±{}", 1u64 << m),
            SpectrumClaim::ThreeValued { amplitude: Some(a) } => format!("three-valued, A = {a}"),
            SpectrumClaim::ThreeValued { amplitude: None } => "three-valued, A not integral".to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u32) -> Arc<Field> {
        Arc::new(Field::new(n, None).unwrap())
    }

    fn omega(f: &Field) -> u32 {
        // generator of F_4^* inside F_16: theta^5
        f.pow(f.generator(), 5)
    }

    #[test]
    fn dillon_sums_gf4() {
        let f = field(4);
        assert_eq!(dillon_sum(&f, 2, 1).unwrap(), 3);
        assert_eq!(dillon_sum(&f, 2, omega(&f)).unwrap(), -1);
        assert_eq!(dillon_sum(&f, 2, 2), Err(Error::AlphaNotInSubfield { alpha: 2, m: 2 }));
        for a in f.subfield(2).unwrap().nonzero() {
            assert_eq!(dillon_sum(&f, 2, *a).unwrap().rem_euclid(2), 1);
        }
    }

    #[test]
    fn dillon_gf16_is_bent() {
        let f = field(4);
        let inst = monomial_bent(f.clone(), Family::Dillon, None, omega(&f)).unwrap();
        assert_eq!(inst.descriptor.d, 3);
        assert!(inst.descriptor.conditions_hold());
        assert!(inst.descriptor.certification.passed);
        let s = &inst.descriptor.certification.spectrum;
        assert_eq!(s.bent_exponent(), Some(2));
        // alpha = 1 fails the Kloosterman condition and is not bent
        let bad = monomial_bent(f, Family::Dillon, None, 1).unwrap();
        assert!(!bad.descriptor.conditions_hold());
        assert!(!bad.descriptor.certification.passed);
    }

    #[test]
    fn leander_n4() {
        let conds = integer_conditions(Family::Leander, 4, Some(1), None).unwrap();
        assert!(conds.iter().all(|c| c.holds == Some(true)));
        assert_eq!(exponent(Family::Leander, 4, Some(1)).unwrap(), 9);
        assert!(matches!(exponent(Family::Leander, 8, Some(1)), Err(Error::BadParams(_))));
        assert!(matches!(exponent(Family::Cck, 8, Some(1)), Err(Error::BadParams(_))));
    }

    #[test]
    fn bad_params() {
        let f = field(4);
        assert!(matches!(monomial_bent(f.clone(), Family::Gold, Some(1), 0), Err(Error::BadParams(_))));
        assert!(matches!(monomial_bent(field(5), Family::Dillon, None, 1), Err(Error::BadParams(_))));
        assert!(matches!(semibent_monomial(field(6), Family::Series5, None), Err(Error::BadParams(_))));
        assert!(matches!(semibent_monomial(field(7), Family::Series6, Some(1)), Err(Error::BadParams(_))));
    }

    #[test]
    fn series_one_gf32() {
        let inst = semibent_monomial(field(5), Family::Series1, Some(1)).unwrap();
        assert_eq!(inst.descriptor.d, 3);
        let s = &inst.descriptor.certification.spectrum;
        assert_eq!(s.multiplicity(0), 16);
        assert_eq!(s.multiplicity(8), 10);
        assert_eq!(s.multiplicity(-8), 6);
        assert!(inst.descriptor.certification.passed);
    }

    #[test]
    fn series_five_gf32() {
        let inst = semibent_monomial(field(5), Family::Series5, None).unwrap();
        assert_eq!(inst.descriptor.d, 7);
        assert_eq!(inst.descriptor.certification.claim, SpectrumClaim::ThreeValued { amplitude: Some(8) });
        assert!(inst.descriptor.certification.passed);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(three_value_multiplicities(32, 8, false).unwrap(), (16, 10, 6));
        assert_eq!(three_value_multiplicities(32, 8, true).unwrap(), (16, 6, 10));
        assert_eq!(three_value_multiplicities(16, 4, false).unwrap(), (0, 10, 6));
        assert_eq!(three_value_multiplicities(32, 3, false), Err(Error::NonIntegerMultiplicity));
        assert_eq!(three_value_multiplicities(64, 4, false), Err(Error::NonIntegerMultiplicity));
        assert_eq!(v2(12), 2);
    }

    #[test]
    fn bent_criterion_small() {
        // m = 5, lambda = 0: c(x) = x^5 + x^4 + x; x^5 + 1 = (x+1)(x^4+x^3+x^2+x+1).
        // c(1) = 1 and c(x) mod (x^4+x^3+x^2+x+1) = x^3 + x^2 + 1 != 0, so coprime.
        assert!(quadratic_bent_criterion(5, &[true, false]).unwrap());
        assert!(!quadratic_bent_criterion(3, &[true]).unwrap());
        assert!(single_form_criterion(5, 0));
        assert!(!single_form_criterion(3, 0));
        assert!(matches!(quadratic_bent_criterion(4, &[true]), Err(Error::BadShape(_))));
        assert!(matches!(quadratic_bent_criterion(5, &[true]), Err(Error::BadShape(_))));
    }

    #[test]
    fn quadratic_shapes() {
        let f = field(10);
        let form = single_form(5, 0).unwrap();
        assert_eq!(form, QuadraticForm { full: vec![1, 0, 0], half: Some(1) });
        let inst = quadratic_function(f.clone(), form).unwrap();
        assert_eq!(inst.shape, QuadraticShape::BinarySingle);
        assert_eq!(inst.function.walsh_spectrum().bent_exponent(), Some(5));
        let zero = quadratic_function(f.clone(), QuadraticForm { full: vec![0, 0], half: None }).unwrap();
        assert!(zero.function.bits().all(|b| !b));
        let bad = QuadraticForm { full: vec![], half: Some(2) };
        assert!(matches!(quadratic_function(f, bad), Err(Error::CoeffFieldViolation(_))));
        let g = field(6);
        let inst = quadratic_function(g, single_form(3, 0).unwrap_or(QuadraticForm { full: vec![1], half: Some(1) })).unwrap();
        assert!(inst.function.walsh_spectrum().bent_exponent().is_none());
    }

    #[test]
    fn series6_example() {
        let h = series6_h_for(0);
        assert_eq!(h, 21);
        let conds = series6_conditions(h, 85, 5);
        assert!(conds.iter().all(|c| c.holds == Some(true)), "{conds:?}");
        assert!(!series6_conditions(20, 85, 5)[1].holds.unwrap());
        assert_eq!(series6_exponent(2), BigUint::from(19u32));
        let l1 = series6_h_for(1);
        assert!(series6_conditions(l1, 205, 5).iter().all(|c| c.holds == Some(true)));
    }

    #[test]
    fn condition16_implies_invariance() {
        let f = field(8);
        for d in 1..255u64 {
            for t in [1u32, 2, 4] {
                if condition16(8, t, d) {
                    let g = BooleanFunction::monomial(f.clone(), d, 7).unwrap();
                    assert!(g.is_coset_invariant(t).unwrap(), "d = {d}, t = {t}");
                }
            }
        }
    }
}
