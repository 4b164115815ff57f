//! Arithmetic in GF(2^n) for `2 <= n <= 24`.
//!
//! Elements are `u32` values holding coordinates in the polynomial basis
//! `1, x, ..., x^(n-1)`. Multiplication goes through log/antilog tables for
//! `n <= 16` and through a carryless multiply with reduction above that.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf2poly;

pub const MIN_N: u32 = 2;
pub const MAX_N: u32 = 24;
/// Largest `n` that gets log/antilog tables by default.
pub const TABLE_MAX_N: u32 = 16;

/// Default modulus for each `n` in `2..=24` (index `n - 2`), encoded with bit
/// `i` holding the coefficient of `x^i`. Every entry is primitive, so the
/// element `x` (value 2) generates the multiplicative group.
pub const DEFAULT_POLYS: [u32; 23] = [
    0x7,       // x^2 + x + 1
    0xb,       // x^3 + x + 1
    0x13,      // x^4 + x + 1
    0x25,      // x^5 + x^2 + 1
    0x43,      // x^6 + x + 1
    0x83,      // x^7 + x + 1
    0x11d,     // x^8 + x^4 + x^3 + x^2 + 1
    0x211,     // x^9 + x^4 + 1
    0x409,     // x^10 + x^3 + 1
    0x805,     // x^11 + x^2 + 1
    0x1053,    // x^12 + x^6 + x^4 + x + 1
    0x201b,    // x^13 + x^4 + x^3 + x + 1
    0x4443,    // x^14 + x^10 + x^6 + x + 1
    0x8003,    // x^15 + x + 1
    0x1100b,   // x^16 + x^12 + x^3 + x + 1
    0x20009,   // x^17 + x^3 + 1
    0x40081,   // x^18 + x^7 + 1
    0x80027,   // x^19 + x^5 + x^2 + x + 1
    0x100009,  // x^20 + x^3 + 1
    0x200005,  // x^21 + x^2 + 1
    0x400003,  // x^22 + x + 1
    0x800021,  // x^23 + x^5 + 1
    0x1000087, // x^24 + x^7 + x^2 + x + 1
];

pub fn default_poly(n: u32) -> Result<u32> {
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    Ok(DEFAULT_POLYS[(n - MIN_N) as usize])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Tables,
    Clmul,
}

#[derive(Debug, Clone)]
struct LogTables {
    log: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q - 1)`, so sums of two logs index directly.
    exp: Vec<u32>,
}

/// An immutable GF(2^n) context.
#[derive(Debug, Clone)]
pub struct Field {
    n: u32,
    poly: u32,
    generator: u32,
    tables: Option<LogTables>,
    /// Bit `i` is `Tr(x^i)`.
    trace_mask: u32,
    /// Entry `j` has bit `i` equal to `Tr(x^i * x^j)`: the dual-basis coordinates of `x^j`.
    dual_rows: Vec<u32>,
    dual_basis: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.poly == other.poly
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(2^n) modulo `poly`, or modulo the default table entry when
    /// `poly` is `None`.
    pub fn new(n: u32, poly: Option<u32>) -> Result<Field> {
        let backend = if n <= TABLE_MAX_N { Backend::Tables } else { Backend::Clmul };
        Field::with_backend(n, poly, backend)
    }

    pub fn with_backend(n: u32, poly: Option<u32>, backend: Backend) -> Result<Field> {
        let poly = match poly {
            None => default_poly(n)?,
            Some(p) => {
                if !(MIN_N..=MAX_N).contains(&n) {
                    return Err(Error::UnsupportedN(n));
                }
                if gf2poly::degree(p as u128) != Some(n) {
                    return Err(Error::DegreeMismatch { n, poly: p as u64 });
                }
                if !gf2poly::is_irreducible(p as u128) {
                    return Err(Error::ReduciblePoly(p as u64));
                }
                p
            }
        };
        let mut field = Field {
            n,
            poly,
            generator: 0,
            tables: None,
            trace_mask: 0,
            dual_rows: Vec::new(),
            dual_basis: Vec::new(),
        };
        field.generator = field.find_generator();
        if backend == Backend::Tables {
            field.tables = Some(field.build_tables());
        }
        field.trace_mask = (0..n)
            .map(|i| (field.trace_by_powers(1 << i) as u32) << i)
            .fold(0, |a, b| a | b);
        field.dual_rows = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| (field.trace(field.mul(1 << i, 1 << j)) as u32) << i)
                    .fold(0, |a, b| a | b)
            })
            .collect();
        field.dual_basis = field.invert_dual_map();
        Ok(field)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field order `q = 2^n`.
    pub fn order(&self) -> usize {
        1usize << self.n
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// The smallest element (by value) of multiplicative order `q - 1`.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn backend(&self) -> Backend {
        if self.tables.is_some() {
            Backend::Tables
        } else {
            Backend::Clmul
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        x < self.order() as u64
    }

    pub fn check(&self, x: u64) -> Result<u32> {
        if self.contains(x) {
            Ok(x as u32)
        } else {
            Err(Error::ElementOutOfRange { value: x, n: self.n })
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => self.mul_clmul(a, b),
        }
    }

    /// Schoolbook carryless product reduced modulo the field polynomial.
    pub fn mul_clmul(&self, a: u32, b: u32) -> u32 {
        let mut prod = 0u64;
        let mut a = a as u64;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                prod ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        let poly = self.poly as u64;
        let n = self.n;
        let mut bit = 2 * n;
        while bit > n {
            bit -= 1;
            if prod >> bit & 1 == 1 {
                prod ^= poly << (bit - n);
            }
        }
        prod as u32
    }

    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivideByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a as usize];
                t.exp[((self.order() as u32 - 1 - l) % (self.order() as u32 - 1)) as usize]
            }
            None => self.pow(a, self.order() as u64 - 2),
        })
    }

    /// Discrete log base [`Field::generator`], when tables are present.
    pub fn log(&self, a: u32) -> Option<u32> {
        match &self.tables {
            Some(t) if a != 0 => Some(t.log[a as usize]),
            _ => None,
        }
    }

    /// `x^(2^k)`.
    pub fn frobenius(&self, x: u32, k: u32) -> u32 {
        (0..k).fold(x, |acc, _| self.square(acc))
    }

    /// Absolute trace `Tr(x) = x + x^2 + ... + x^(2^(n-1))`, from the
    /// precomputed linear form.
    #[inline]
    pub fn trace(&self, x: u32) -> bool {
        (x & self.trace_mask).count_ones() & 1 == 1
    }

    /// Absolute trace summed literally over the Frobenius orbit.
    pub fn trace_by_powers(&self, x: u32) -> bool {
        let mut acc = 0u32;
        let mut p = x;
        for _ in 0..self.n {
            acc ^= p;
            p = self.square(p);
        }
        debug_assert!(acc <= 1);
        acc == 1
    }

    /// Relative trace `Tr_t^n(x) = sum_{i < n/t} x^(2^(t i))` onto GF(2^t).
    pub fn relative_trace(&self, t: u32, x: u32) -> Result<u32> {
        self.check_divisor(t)?;
        let mut acc = 0u32;
        let mut p = x;
        for _ in 0..self.n / t {
            acc ^= p;
            p = self.frobenius(p, t);
        }
        Ok(acc)
    }

    /// `x^(2^t) == x`.
    pub fn in_subfield(&self, t: u32, x: u32) -> bool {
        self.frobenius(x, t) == x
    }

    pub fn check_divisor(&self, t: u32) -> Result<()> {
        if t == 0 || self.n % t != 0 {
            Err(Error::BadSubfieldDegree { t, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Coordinates of `y` in the trace-dual basis: bit `i` is `Tr(x^i y)`.
    /// Hence `Tr(x y) = parity(x & dual_coords(y))` for all `x`.
    #[inline]
    pub fn dual_coords(&self, y: u32) -> u32 {
        let mut acc = 0u32;
        let mut y = y;
        let mut j = 0;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= self.dual_rows[j];
            }
            y >>= 1;
            j += 1;
        }
        acc
    }

    /// The polynomial basis `1, x, ..., x^(n-1)` as element values.
    pub fn basis(&self) -> Vec<u32> {
        (0..self.n).map(|i| 1 << i).collect()
    }

    /// `dual_basis()[j]` satisfies `Tr(x^i * dual_basis()[j]) = [i == j]`.
    pub fn dual_basis(&self) -> &[u32] {
        &self.dual_basis
    }

    /// The elements of the subfield GF(2^t) with their canonical labels.
    pub fn subfield(&self, t: u32) -> Result<Subfield> {
        self.check_divisor(t)?;
        Subfield::new(self, t)
    }

    /// One representative (the minimum value) of each coset `x F_{2^t}^*`
    /// contained in `set`, ascending. Fails if `set` is not a union of cosets.
    pub fn coset_representatives(&self, t: u32, set: &[u32]) -> Result<Vec<u32>> {
        let sub = self.subfield(t)?;
        let scalars = sub.nonzero();
        let mut member = vec![false; self.order()];
        for &x in set {
            if x == 0 || !self.contains(x as u64) {
                return Err(Error::NotCosetClosed { element: x });
            }
            member[x as usize] = true;
        }
        let mut sorted: Vec<u32> = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::with_capacity(sorted.len() / scalars.len().max(1));
        for &x in &sorted {
            if seen[x as usize] {
                continue;
            }
            reps.push(x);
            for &a in scalars {
                let y = self.mul(a, x);
                if !member[y as usize] {
                    return Err(Error::NotCosetClosed { element: x });
                }
                seen[y as usize] = true;
            }
        }
        Ok(reps)
    }

    fn find_generator(&self) -> u32 {
        let group = (1u64 << self.n) - 1;
        let factors = gf2poly::prime_factors(group);
        (2..(1u32 << self.n))
            .find(|&g| factors.iter().all(|p| self.pow(g, group / p) != 1))
            .unwrap_or(1) // only reachable for q = 2, excluded by MIN_N
    }

    fn build_tables(&self) -> LogTables {
        let q = self.order();
        let mut log = vec![0u32; q];
        let mut exp = vec![0u32; 2 * (q - 1)];
        let mut acc = 1u32;
        for i in 0..q - 1 {
            exp[i] = acc;
            exp[i + q - 1] = acc;
            log[acc as usize] = i as u32;
            acc = self.mul_clmul(acc, self.generator);
        }
        LogTables { log, exp }
    }

    /// Inverts the symmetric matrix `M[i][j] = Tr(x^(i+j))` by Gauss-Jordan
    /// elimination; column `j` of the inverse is the dual basis element `j`.
    fn invert_dual_map(&self) -> Vec<u32> {
        let n = self.n as usize;
        let mut rows: Vec<u32> = self.dual_rows.clone();
        let mut inv: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| rows[r] >> col & 1 == 1)
                .expect("trace form is nondegenerate");
            rows.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        // `inv` now holds the rows of M^{-1}; M is symmetric so its inverse is too,
        // and row j doubles as column j.
        inv
    }
}

/// The subfield GF(2^t) embedded in a [`Field`], together with a labeling onto
/// canonical `t`-bit symbols.
///
/// Labels are the coordinates of the image under the field isomorphism onto
/// GF(2^t) built with the default degree-`t` polynomial: the smallest root `r`
/// of that polynomial inside the subfield is sent to `x`. Labels therefore add
/// by XOR and multiply like elements of the default GF(2^t).
#[derive(Debug, Clone)]
pub struct Subfield {
    t: u32,
    /// Ascending element values.
    elements: Vec<u32>,
    /// `labels[i]` is the label of `elements[i]`.
    labels: Vec<u32>,
    /// `by_label[l]` is the element with label `l`.
    by_label: Vec<u32>,
}

impl Subfield {
    fn new(field: &Field, t: u32) -> Result<Subfield> {
        let size = 1usize << t;
        let by_label: Vec<u32> = if t == 1 {
            vec![0, 1]
        } else {
            let target = default_poly(t)?;
            let root = if t == field.n() && field.poly() == target {
                2
            } else {
                // Walk F_{2^t}^* as powers of theta^((q-1)/(2^t-1)); any root found
                // is one of the t conjugate roots of the default polynomial.
                let step = (field.order() as u64 - 1) / ((1u64 << t) - 1);
                let h = field.pow(field.generator(), step);
                (0..(1u32 << t) - 1)
                    .scan(1u32, |p, _| {
                        let cur = *p;
                        *p = field.mul(*p, h);
                        Some(cur)
                    })
                    .filter(|&r| eval_poly(field, target, r) == 0)
                    .min()
                    .ok_or(Error::BadSubfieldDegree { t, n: field.n() })?
            };
            let powers: Vec<u32> = (0..t).scan(1u32, |p, _| {
                let cur = *p;
                *p = field.mul(*p, root);
                Some(cur)
            })
            .collect();
            (0..size as u32)
                .map(|label| {
                    (0..t)
                        .filter(|i| label >> i & 1 == 1)
                        .fold(0, |acc, i| acc ^ powers[i as usize])
                })
                .collect()
        };
        let mut pairs: Vec<(u32, u32)> =
            by_label.iter().enumerate().map(|(l, &e)| (e, l as u32)).collect();
        pairs.sort_unstable();
        Ok(Subfield {
            t,
            elements: pairs.iter().map(|p| p.0).collect(),
            labels: pairs.iter().map(|p| p.1).collect(),
            by_label,
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All `2^t` elements, ascending by value.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Nonzero elements, ascending by value.
    pub fn nonzero(&self) -> &[u32] {
        &self.elements[1..]
    }

    pub fn label(&self, x: u32) -> Option<u32> {
        self.elements.binary_search(&x).ok().map(|i| self.labels[i])
    }

    pub fn element(&self, label: u32) -> Option<u32> {
        self.by_label.get(label as usize).copied()
    }

    pub fn by_label(&self) -> &[u32] {
        &self.by_label
    }
}

/// Evaluates the GF(2) polynomial `p` at `x` with Horner's rule.
fn eval_poly(field: &Field, p: u32, x: u32) -> u32 {
    let deg = 31 - p.leading_zeros();
    (0..=deg).rev().fold(0, |acc, i| field.mul(acc, x) ^ (p >> i & 1))
}
