//! Boolean functions `f: GF(2^n) -> GF(2)` stored as truth tables, and their
//! Walsh transforms `W_f(y) = sum_x (-1)^(f(x) + Tr(x y))`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// `f(x) = sum_i Tr(c_i x^(1 + 2^i)) + Tr_1^m(c_m x^(1 + 2^m))`.
///
/// `full[k]` is the coefficient of the full-trace term with `i = k + 1`;
/// `half` is the optional coefficient of the half-trace term (`n = 2m` only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub full: Vec<u32>,
    pub half: Option<u32>,
}

impl QuadraticForm {
    pub fn eval(&self, field: &Field, x: u32) -> bool {
        let mut bit = false;
        let mut frob = x;
        for &c in &self.full {
            frob = field.square(frob);
            if c != 0 {
                bit ^= field.trace(field.mul(c, field.mul(x, frob)));
            }
        }
        if let Some(c) = self.half {
            let m = field.n() / 2;
            let y = field.mul(c, field.mul(x, field.frobenius(x, m)));
            // Tr_1^m of an element of GF(2^m): sum of its first m conjugates.
            let mut acc = 0u32;
            let mut p = y;
            for _ in 0..m {
                acc ^= p;
                p = field.square(p);
            }
            bit ^= acc == 1;
        }
        bit
    }
}

/// How a truth table was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Descriptor {
    /// `Tr(alpha x^d)`.
    Monomial { d: u64, alpha: u32 },
    Quadratic(QuadraticForm),
    Raw,
}

/// A Boolean function on GF(2^n); `table` bit `x` is `f(x)`.
#[derive(Debug, Clone)]
pub struct BooleanFunction {
    field: Arc<Field>,
    table: Vec<u64>,
    descriptor: Descriptor,
}

impl PartialEq for BooleanFunction {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.table == other.table
    }
}

impl BooleanFunction {
    pub fn from_fn(field: Arc<Field>, mut f: impl FnMut(u32) -> bool) -> BooleanFunction {
        let q = field.order();
        let mut table = vec![0u64; q.div_ceil(64)];
        for x in 0..q {
            if f(x as u32) {
                table[x / 64] |= 1 << (x % 64);
            }
        }
        BooleanFunction { field, table, descriptor: Descriptor::Raw }
    }

    pub fn from_bits(field: Arc<Field>, bits: &[bool]) -> Result<BooleanFunction> {
        if bits.len() != field.order() {
            return Err(Error::BadParams(alloc::format!(
                "truth table has {} entries, expected {}",
                bits.len(),
                field.order()
            )));
        }
        Ok(BooleanFunction::from_fn(field, |x| bits[x as usize]))
    }

    pub fn zero(field: Arc<Field>) -> BooleanFunction {
        BooleanFunction::from_fn(field, |_| false)
    }

    /// `f(x) = Tr(alpha x^d)` with `d >= 1`.
    pub fn monomial(field: Arc<Field>, d: u64, alpha: u32) -> Result<BooleanFunction> {
        field.check(alpha as u64)?;
        if d == 0 {
            return Err(Error::BadParams("monomial exponent must be at least 1".into()));
        }
        let mut f = {
            let fl = field.clone();
            BooleanFunction::from_fn(field, |x| fl.trace(fl.mul(alpha, fl.pow(x, d))))
        };
        f.descriptor = Descriptor::Monomial { d, alpha };
        Ok(f)
    }

    /// Builds the quadratic function; the half-trace coefficient must lie in
    /// GF(2^(n/2)) and requires even `n`.
    pub fn quadratic(field: Arc<Field>, form: QuadraticForm) -> Result<BooleanFunction> {
        for &c in &form.full {
            field.check(c as u64)?;
        }
        if let Some(c) = form.half {
            field.check(c as u64)?;
            if field.n() % 2 != 0 {
                return Err(Error::CoeffFieldViolation(
                    "half-trace term needs even n".into(),
                ));
            }
            if !field.in_subfield(field.n() / 2, c) {
                return Err(Error::CoeffFieldViolation(alloc::format!(
                    "c_m = {c:x} is not in GF(2^{})",
                    field.n() / 2
                )));
            }
        }
        let mut f = {
            let fl = field.clone();
            BooleanFunction::from_fn(field, |x| form.eval(&fl, x))
        };
        f.descriptor = Descriptor::Quadratic(form);
        Ok(f)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    #[inline]
    pub fn eval(&self, x: u32) -> bool {
        self.table[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.field.order() as u32).map(move |x| self.eval(x))
    }

    /// Re-evaluates a structured descriptor point by point and compares with the table.
    pub fn descriptor_matches(&self) -> bool {
        let fl = &self.field;
        let direct = |x: u32| match &self.descriptor {
            Descriptor::Monomial { d, alpha } => Some(fl.trace_by_powers(fl.mul(*alpha, fl.pow(x, *d)))),
            Descriptor::Quadratic(form) => Some(form.eval(fl, x)),
            Descriptor::Raw => None,
        };
        (0..fl.order() as u32).all(|x| direct(x).is_none_or(|v| v == self.eval(x)))
    }

    /// Returns a copy with `f(x)` flipped at one point; the result is raw.
    pub fn with_flipped(&self, x: u32) -> BooleanFunction {
        let mut g = self.clone();
        g.table[(x / 64) as usize] ^= 1 << (x % 64);
        g.descriptor = Descriptor::Raw;
        g
    }

    /// `W_f(y)` summed directly over all `q` points.
    pub fn walsh_naive(&self, y: u32) -> i64 {
        let fl = &self.field;
        (0..fl.order() as u32)
            .map(|x| if self.eval(x) ^ fl.trace(fl.mul(x, y)) { -1 } else { 1 })
            .sum()
    }

    /// `W_f(y)` for every `y`, indexed by element value.
    ///
    /// A ±1 Hadamard transform over polynomial-basis coordinates gives
    /// `H[u] = sum_x (-1)^(f(x) + x.u)`, and `Tr(x y) = x . dual_coords(y)`, so
    /// `W_f(y) = H[dual_coords(y)]`.
    pub fn walsh_full(&self) -> Vec<i64> {
        let q = self.field.order();
        let mut h: Vec<i64> = (0..q as u32).map(|x| if self.eval(x) { -1 } else { 1 }).collect();
        fwht(&mut h);
        (0..q as u32).map(|y| h[self.field.dual_coords(y) as usize]).collect()
    }

    pub fn walsh_spectrum(&self) -> WalshSpectrum {
        let w = self.walsh_full();
        WalshSpectrum::from_values(&w, w[0])
    }

    /// Whether `f(alpha x) = f(x)` for every `alpha` in `F_{2^t}^*` and `x` in `F_q^*`.
    pub fn is_coset_invariant(&self, t: u32) -> Result<bool> {
        let sub = self.field.subfield(t)?;
        let fl = &self.field;
        Ok((1..fl.order() as u32).all(|x| {
            let v = self.eval(x);
            sub.nonzero().iter().all(|&a| self.eval(fl.mul(a, x)) == v)
        }))
    }

    /// Divisors `t` of `n` for which `f` is coset invariant, ascending.
    pub fn admissible_subfields(&self) -> Vec<u32> {
        let n = self.n();
        (1..=n)
            .filter(|t| n % t == 0)
            .filter(|&t| self.is_coset_invariant(t).unwrap_or(false))
            .collect()
    }
}

/// In-place unnormalised Walsh-Hadamard transform; `data.len()` must be a power of two.
pub fn fwht(data: &mut [i64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "fwht length must be a power of two");
    let mut half = 1;
    while half < len {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
}

/// Multiset of Walsh values: distinct value `w` maps to its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    entries: BTreeMap<i64, u64>,
    at_zero: i64,
}

impl WalshSpectrum {
    pub fn from_values(values: &[i64], at_zero: i64) -> WalshSpectrum {
        let mut entries = BTreeMap::new();
        for &w in values {
            *entries.entry(w).or_insert(0) += 1;
        }
        WalshSpectrum { entries, at_zero }
    }

    /// Builds a spectrum from `(value, multiplicity)` pairs, merging repeats and
    /// dropping zero multiplicities.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u64)>, at_zero: i64) -> WalshSpectrum {
        let mut entries = BTreeMap::new();
        for (w, m) in pairs {
            if m > 0 {
                *entries.entry(w).or_insert(0) += m;
            }
        }
        WalshSpectrum { entries, at_zero }
    }

    pub fn entries(&self) -> &BTreeMap<i64, u64> {
        &self.entries
    }

    pub fn at_zero(&self) -> i64 {
        self.at_zero
    }

    /// Number `r` of distinct values.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, w: i64) -> u64 {
        self.entries.get(&w).copied().unwrap_or(0)
    }

    /// Sum of multiplicities, which is the size of the domain.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn moment(&self, k: u32) -> i128 {
        self.entries
            .iter()
            .map(|(&w, &m)| (w as i128).pow(k) * m as i128)
            .sum()
    }

    /// Checks `sum m = q`, `sum m w = q (-1)^f(0)`, `sum m w^2 = q^2` and that
    /// `W_f(0)` is one of the values.
    pub fn satisfies_identities(&self, q: u64, f0: bool) -> bool {
        let q = q as i128;
        let sign = if f0 { -1 } else { 1 };
        self.total() as i128 == q
            && self.moment(1) == q * sign
            && self.moment(2) == q * q
            && self.entries.contains_key(&self.at_zero)
    }

    /// `Some(m)` when the values are exactly `{2^m, -2^m}` with `q = 4^m`.
    pub fn bent_exponent(&self) -> Option<u32> {
        let q = self.total();
        if q < 4 || !q.is_power_of_two() || q.trailing_zeros() % 2 != 0 {
            return None;
        }
        let m = q.trailing_zeros() / 2;
        let a = 1i64 << m;
        let only_pm = self.entries.keys().all(|&w| w == a || w == -a);
        (only_pm && !self.entries.is_empty()).then_some(m)
    }

    /// `Some(A)` when the values are exactly `{0, A, -A}` with `A > 0`.
    pub fn three_valued_amplitude(&self) -> Option<i64> {
        if self.entries.len() != 3 {
            return None;
        }
        let keys: Vec<i64> = self.entries.keys().copied().collect();
        (keys[1] == 0 && keys[0] == -keys[2] && keys[2] > 0).then_some(keys[2])
    }

    /// Semibent: values in `{0, ±2^(floor(n/2)+1)}`.
    pub fn is_semibent(&self, n: u32) -> bool {
        let a = 1i64 << (n / 2 + 1);
        self.entries.keys().all(|&w| w == 0 || w == a || w == -a)
            && self.three_valued_amplitude() == Some(a)
    }

    /// Spectrum of `f1(x1) + f2(x2)`: all products `w_i omega_j` with
    /// multiplicity `m_i mu_j`, equal products merged.
    pub fn product(a: &WalshSpectrum, b: &WalshSpectrum) -> WalshSpectrum {
        let pairs = a
            .entries
            .iter()
            .flat_map(|(&w, &m)| b.entries.iter().map(move |(&v, &mu)| (w * v, m * mu)));
        WalshSpectrum::from_pairs(pairs, a.at_zero * b.at_zero)
    }
}

/// Formats as `[w1]^m1 [w2]^m2 ...` with values ascending.
impl fmt::Display for WalshSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (w, m)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "[{w}]^{m}")?;
        }
        Ok(())
    }
}

/// `f(x1, x2) = f1(x1) + f2(x2)` on `GF(2^n1) x GF(2^n2)`. Points are indexed
/// lexicographically as `x1 * q2 + x2`.
#[derive(Debug, Clone)]
pub struct ProductFunction {
    f1: BooleanFunction,
    f2: BooleanFunction,
}

impl ProductFunction {
    pub fn new(f1: BooleanFunction, f2: BooleanFunction) -> ProductFunction {
        ProductFunction { f1, f2 }
    }

    pub fn factors(&self) -> (&BooleanFunction, &BooleanFunction) {
        (&self.f1, &self.f2)
    }

    pub fn order(&self) -> u64 {
        (self.f1.field().order() * self.f2.field().order()) as u64
    }

    pub fn eval(&self, x1: u32, x2: u32) -> bool {
        self.f1.eval(x1) ^ self.f2.eval(x2)
    }

    pub fn eval_index(&self, idx: u64) -> bool {
        let n2 = self.f2.n();
        self.eval((idx >> n2) as u32, (idx & ((1 << n2) - 1)) as u32)
    }

    /// Direct double sum over the product space.
    pub fn walsh_naive(&self, y1: u32, y2: u32) -> i64 {
        let (fl1, fl2) = (self.f1.field(), self.f2.field());
        let mut sum = 0i64;
        for x1 in 0..fl1.order() as u32 {
            let a = self.f1.eval(x1) ^ fl1.trace(fl1.mul(x1, y1));
            for x2 in 0..fl2.order() as u32 {
                let b = self.f2.eval(x2) ^ fl2.trace(fl2.mul(x2, y2));
                sum += if a ^ b { -1 } else { 1 };
            }
        }
        sum
    }

    pub fn walsh_at_zero(&self) -> i64 {
        self.f1.walsh_naive(0) * self.f2.walsh_naive(0)
    }

    pub fn walsh_spectrum(&self) -> WalshSpectrum {
        WalshSpectrum::product(&self.f1.walsh_spectrum(), &self.f2.walsh_spectrum())
    }

    pub fn f_at_zero(&self) -> bool {
        self.eval(0, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u32) -> Arc<Field> {
        Arc::new(Field::new(n, None).unwrap())
    }

    #[test]
    fn zero_function_spectrum() {
        let f = BooleanFunction::zero(field(5));
        let w = f.walsh_full();
        assert_eq!(w[0], 32);
        assert!(w[1..].iter().all(|&v| v == 0));
        let s = f.walsh_spectrum();
        assert_eq!(s.multiplicity(32), 1);
        assert_eq!(s.multiplicity(0), 31);
        assert!(s.satisfies_identities(32, false));
    }

    #[test]
    fn linear_function_peak() {
        let fl = field(6);
        let c = 0b101101;
        let f = BooleanFunction::from_fn(fl.clone(), |x| fl.trace(fl.mul(c, x)));
        let w = f.walsh_full();
        for y in 0..64u32 {
            assert_eq!(w[y as usize], if y == c { 64 } else { 0 });
        }
    }

    #[test]
    fn tr_x3_on_gf32() {
        let fl = field(5);
        let f = BooleanFunction::monomial(fl.clone(), 3, 1).unwrap();
        for x in 0..32 {
            assert_eq!(f.eval(x), fl.trace(fl.pow(x, 3)));
        }
        assert!(!f.eval(0));
        let s = f.walsh_spectrum();
        assert_eq!(s.entries().iter().map(|(&w, &m)| (w, m)).collect::<Vec<_>>(), [(-8, 6), (0, 16), (8, 10)]);
        assert_eq!(s.three_valued_amplitude(), Some(8));
        assert!(s.is_semibent(5));
        assert_eq!(alloc::format!("{s}"), "[-8]^6 [0]^16 [8]^10");
    }

    #[test]
    fn fast_matches_naive() {
        let fl = field(7);
        let f = BooleanFunction::from_fn(fl.clone(), |x| x.wrapping_mul(2654435761u32) >> 31 == 1);
        let w = f.walsh_full();
        for y in 0..128 {
            assert_eq!(w[y as usize], f.walsh_naive(y));
        }
    }

    #[test]
    fn invariance() {
        let fl = field(4);
        let lin = BooleanFunction::monomial(fl.clone(), 1, 1).unwrap();
        assert!(lin.is_coset_invariant(1).unwrap());
        assert!(!lin.is_coset_invariant(2).unwrap());
        assert_eq!(lin.admissible_subfields(), [1]);
        assert_eq!(BooleanFunction::zero(fl.clone()).admissible_subfields(), [1, 2, 4]);
        let cube = BooleanFunction::monomial(fl.clone(), 3, 2).unwrap();
        assert!(cube.admissible_subfields().contains(&2));
        assert!(lin.is_coset_invariant(3).is_err());
    }

    #[test]
    fn flipped_bit() {
        let fl = field(4);
        let f = BooleanFunction::monomial(fl, 3, 1).unwrap();
        let g = f.with_flipped(5);
        assert_ne!(f.eval(5), g.eval(5));
        assert_eq!(*g.descriptor(), Descriptor::Raw);
        assert!(f.descriptor_matches());
    }

    #[test]
    fn product_spectrum_small() {
        let f1 = BooleanFunction::monomial(field(4), 3, 1).unwrap();
        let f2 = BooleanFunction::monomial(field(3), 1, 3).unwrap();
        let p = ProductFunction::new(f1.clone(), f2.clone());
        let w1 = f1.walsh_full();
        let w2 = f2.walsh_full();
        let mut vals = Vec::new();
        for y1 in 0..16u32 {
            for y2 in 0..8u32 {
                let direct = p.walsh_naive(y1, y2);
                assert_eq!(direct, w1[y1 as usize] * w2[y2 as usize]);
                vals.push(direct);
            }
        }
        let direct = WalshSpectrum::from_values(&vals, vals[0]);
        assert_eq!(direct, p.walsh_spectrum());
    }
}
