use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use walshcode_core::code::{validate, CodeInstance, Domain};
use walshcode_core::enumerators::{bruteforce, is_constant_on_nonzero, predict_general};
use walshcode_core::{BooleanFunction, Field, ProductFunction, WalshSpectrum};

fn field(n: u32) -> Arc<Field> {
    static FIELDS: OnceLock<Vec<Arc<Field>>> = OnceLock::new();
    FIELDS.get_or_init(|| (2..=12).map(|n| Arc::new(Field::new(n, None).unwrap())).collect())[n as usize - 2].clone()
}

fn random_function() -> impl Strategy<Value = BooleanFunction> {
    (2u32..=9).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1usize << n)
            .prop_map(move |bits| BooleanFunction::from_bits(field(n), &bits).unwrap())
    })
}

/// A coset-invariant function: constant on each `x F_{2^t}^*`, chosen at random.
fn invariant_function() -> impl Strategy<Value = (BooleanFunction, u32)> {
    (2u32..=8)
        .prop_flat_map(|n| {
            let divisors: Vec<u32> = (1..=n).filter(|t| n % t == 0).collect();
            (Just(n), proptest::sample::select(divisors), any::<u64>())
        })
        .prop_map(|(n, t, seed)| {
            let fl = field(n);
            let sub = fl.subfield(t).unwrap();
            let q = fl.order() as u32;
            let mut bits = vec![false; q as usize];
            bits[0] = seed & 1 == 1;
            let mut state = seed | 1;
            let mut seen = vec![false; q as usize];
            for x in 1..q {
                if seen[x as usize] {
                    continue;
                }
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let v = state & 2 == 2;
                for &a in sub.nonzero() {
                    let y = fl.mul(a, x) as usize;
                    seen[y] = true;
                    bits[y] = v;
                }
            }
            (BooleanFunction::from_bits(fl, &bits).unwrap(), t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(n in 2u32..=24, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Field::new(n, None).unwrap();
        let mask = (1u32 << n) - 1;
        let (a, b, c) = (a & mask, b & mask, c & mask);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.trace(a ^ b), f.trace(a) ^ f.trace(b));
    }

    #[test]
    fn walsh_identities(f in random_function()) {
        let s = f.walsh_spectrum();
        let q = f.field().order() as u64;
        prop_assert_eq!(s.total(), q);
        prop_assert!(s.satisfies_identities(q, f.eval(0)));
        let full = f.walsh_full();
        prop_assert_eq!(full[0], s.at_zero());
        prop_assert!(full.iter().all(|w| (w - q as i64).rem_euclid(2) == 0));
    }

    #[test]
    fn flipping_one_bit_moves_every_value_by_two(f in random_function(), x in any::<u32>()) {
        let x = x % f.field().order() as u32;
        let g = f.with_flipped(x);
        let (a, b) = (f.walsh_full(), g.walsh_full());
        prop_assert!(a.iter().zip(&b).all(|(u, v)| (u - v).abs() == 2));
    }

    #[test]
    fn invariant_codes((f, t) in invariant_function()) {
        prop_assert!(f.is_coset_invariant(t).unwrap());
        let report = validate(&Domain::Single(f.clone()), t);
        let Ok(inst) = CodeInstance::new(f.clone(), t) else {
            prop_assert!(!report.passed() || f.bits().skip(1).all(|b| b));
            return Ok(());
        };
        let q = inst.order() as i64;
        let scale = (1usize << t) - 1;
        // Coset closure and length identities.
        let sub = f.field().subfield(t).unwrap();
        for &x in inst.full_support() {
            for &a in sub.nonzero() {
                prop_assert!(!f.eval(f.field().mul(a, x as u32)));
            }
        }
        prop_assert_eq!(inst.full_length(), scale * inst.length());
        let sign = if f.eval(0) { -1 } else { 1 };
        prop_assert_eq!(inst.full_length() as i64, q / 2 + (inst.w_at_zero() - 1 - sign) / 2);

        let brute = bruteforce(&inst);
        prop_assert_eq!(brute.tally.scaling_failures, 0);
        prop_assert_eq!(brute.tally.non_constant, 0);
        prop_assert_eq!(brute.tally.zero_words, 1);
        prop_assert_eq!(brute.full_cwe.collapse(), brute.full_we.clone());
        for comp in brute.full_cwe.terms.keys() {
            prop_assert!(is_constant_on_nonzero(comp));
            prop_assert_eq!(comp.iter().sum::<u64>(), inst.full_length() as u64);
        }
        let pred = predict_general(inst.spectrum(), t, f.eval(0)).unwrap();
        prop_assert_eq!(&pred.full_cwe, &brute.full_cwe);
        prop_assert_eq!(&pred.full_we, &brute.full_we);
        prop_assert_eq!(&pred.reduced_we, &brute.reduced_we);
        if pred.weight_count_applies() {
            prop_assert_eq!(brute.reduced_we.nonzero_weights(), inst.spectrum().len());
        }
    }

    #[test]
    fn product_walsh_factorizes(f1 in random_function(), f2 in random_function()) {
        prop_assume!(f1.n() + f2.n() <= 10);
        let p = ProductFunction::new(f1.clone(), f2.clone());
        let (w1, w2) = (f1.walsh_full(), f2.walsh_full());
        for y1 in 0..w1.len() as u32 {
            for y2 in (0..w2.len() as u32).step_by(3) {
                prop_assert_eq!(p.walsh_naive(y1, y2), w1[y1 as usize] * w2[y2 as usize]);
            }
        }
        let merged = WalshSpectrum::product(&f1.walsh_spectrum(), &f2.walsh_spectrum());
        prop_assert_eq!(merged.at_zero(), p.walsh_at_zero());
        prop_assert!(merged.satisfies_identities(p.order(), p.f_at_zero()));
    }
}
