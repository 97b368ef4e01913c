//! Nimber arithmetic.
//!
//! Nim addition is the bitwise exclusive-or. Nim multiplication is Conway's
//! product, computed two ways: [`MexTable`] evaluates the defining mex
//! recursion directly and serves as a reference, while [`nim_mul`] uses the
//! Fermat splitting rule. On every Fermat 2-power `q = 2^(2^a)` the range
//! `[0, q)` is a field under the two operations ([`FermatField`]).

use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::VerificationReport;
use crate::{Error, Result};

/// Exclusive upper bound for nimber values (63 bits).
pub const NIMBER_LIMIT: u64 = 1 << 63;

/// Exclusive upper bound for nim-multiplication operands: the Fermat field
/// of order `2^32`, whose products stay inside the 63-bit domain.
pub const NIM_MUL_LIMIT: u64 = 1 << 32;

/// Largest bound accepted by [`MexTable::build`].
pub const MEX_TABLE_LIMIT: usize = 1 << 12;

/// Largest field order for which exhaustive checks are allowed.
pub const EXHAUSTIVE_FIELD_LIMIT: u64 = 256;

#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(try_from = "u64", into = "u64")]
pub struct Nimber(u64);

impl Nimber {
    pub const ZERO: Nimber = Nimber(0);
    pub const ONE: Nimber = Nimber(1);

    pub fn new(value: u64) -> Result<Self> {
        check_range(value, NIMBER_LIMIT)?;
        Ok(Nimber(value))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Binary expansion `(a_0, a_1, ...)`, least significant first, with no
    /// trailing zeros.
    pub fn binary_expansion(self) -> Vec<bool> {
        let len = 64 - self.0.leading_zeros() as usize;
        (0..len).map(|i| self.0 >> i & 1 == 1).collect()
    }

    pub fn from_binary_expansion(bits: &[bool]) -> Result<Self> {
        if bits.iter().skip(63).any(|&b| b) {
            return Err(Error::OutOfRange { value: u64::MAX, limit: NIMBER_LIMIT });
        }
        let value = bits.iter().take(63).enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
        Ok(Nimber(value))
    }

    pub fn checked_mul(self, rhs: Nimber) -> Result<Nimber> {
        nim_mul(self.0, rhs.0).map(Nimber)
    }
}

impl TryFrom<u64> for Nimber {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Nimber::new(value)
    }
}

impl From<Nimber> for u64 {
    fn from(n: Nimber) -> u64 {
        n.0
    }
}

// nim addition is XOR by definition
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Nimber {
    type Output = Nimber;

    fn add(self, rhs: Nimber) -> Nimber {
        Nimber(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Nimber {
    fn add_assign(&mut self, rhs: Nimber) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Nimber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*{}", self.0)
    }
}

fn check_range(value: u64, limit: u64) -> Result<()> {
    if value >= limit {
        Err(Error::OutOfRange { value, limit })
    } else {
        Ok(())
    }
}

pub fn nim_add(a: u64, b: u64) -> Result<u64> {
    check_range(a, NIMBER_LIMIT)?;
    check_range(b, NIMBER_LIMIT)?;
    Ok(a ^ b)
}

/// Conway nim-product of two values below [`NIM_MUL_LIMIT`].
pub fn nim_mul(a: u64, b: u64) -> Result<u64> {
    check_range(a, NIM_MUL_LIMIT)?;
    check_range(b, NIM_MUL_LIMIT)?;
    Ok(split_mul(a, b, split_width(a.max(b))))
}

/// Half-width `h` (a power of two) of the smallest Fermat field `2^(2h)`
/// containing `x`.
fn split_width(x: u64) -> u32 {
    let mut half = 1;
    while half < 32 && x >> (2 * half) != 0 {
        half *= 2;
    }
    half
}

/// Product of `a, b < 2^(2·half)` by the Fermat splitting rule.
///
/// With `F = 2^half`, `a = a1·F ⊕ a0` and `F⊗F = F ⊕ F/2`:
/// `a⊗b = (a1b1 ⊕ a1b0 ⊕ a0b1)·F ⊕ a0b0 ⊕ a1b1⊗(F/2)`, and the middle
/// terms come from one Karatsuba product `(a0⊕a1)⊗(b0⊕b1)`.
fn split_mul(a: u64, b: u64, half: u32) -> u64 {
    if a < 2 || b < 2 {
        return a * b;
    }
    let mask = (1u64 << half) - 1;
    let (a1, a0) = (a >> half, a & mask);
    let (b1, b0) = (b >> half, b & mask);
    let next = half / 2;
    let high = split_mul(a1, b1, next);
    let low = split_mul(a0, b0, next);
    let mixed = split_mul(a0 ^ a1, b0 ^ b1, next);
    ((mixed ^ low) << half) | (low ^ split_mul(high, 1 << (half - 1), next))
}

/// Returns whether the greediness implication holds for `(a, b, c)`:
/// if `c < a⊕b` then `a⊕c < b` or `b⊕c < a`.
pub fn greediness_lemma_holds(a: u64, b: u64, c: u64) -> Result<bool> {
    let ab = nim_add(a, b)?;
    check_range(c, NIMBER_LIMIT)?;
    Ok(lemma_unchecked(a, b, c, ab))
}

#[inline]
pub(crate) fn lemma_unchecked(a: u64, b: u64, c: u64, ab: u64) -> bool {
    c >= ab || (a ^ c) < b || (b ^ c) < a
}

/// Memoized table of the mex recursion
/// `a⊗b = mex{ a'⊗b ⊕ a⊗b' ⊕ a'⊗b' : a' < a, b' < b }` on `[0, bound)²`.
///
/// The table is a reference for testing the fast product, not a production
/// path: building it costs `O(bound⁴)`.
#[derive(Debug, Clone)]
pub struct MexTable {
    bound: usize,
    table: Vec<u64>,
}

impl MexTable {
    pub fn build(bound: usize) -> Result<Self> {
        if bound > MEX_TABLE_LIMIT {
            return Err(Error::OutOfRange { value: bound as u64, limit: MEX_TABLE_LIMIT as u64 + 1 });
        }
        let mut table = vec![0u64; bound * bound];
        // seen[v] == stamp marks v as present in the current mex set; a mex
        // never exceeds the set size, so larger values can be dropped.
        let mut seen = vec![0u32; bound * bound + 1];
        let mut stamp = 0u32;
        for a in 0..bound {
            for b in 0..bound {
                stamp += 1;
                let limit = a * b;
                for a2 in 0..a {
                    let row2 = &table[a2 * bound..a2 * bound + b];
                    let row = &table[a * bound..a * bound + b];
                    let col = table[a2 * bound + b];
                    for (&x, &y) in row2.iter().zip(row) {
                        let v = (col ^ x ^ y) as usize;
                        if v <= limit {
                            seen[v] = stamp;
                        }
                    }
                }
                let mex = (0..=limit).find(|&v| seen[v] != stamp).unwrap_or(limit + 1);
                table[a * bound + b] = mex as u64;
            }
        }
        Ok(Self { bound, table })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn get(&self, a: u64, b: u64) -> Option<u64> {
        let (a, b) = (a as usize, b as usize);
        (a < self.bound && b < self.bound).then(|| self.table[a * self.bound + b])
    }
}

/// Returns `Some(a)` when `q = 2^(2^a)`.
pub fn fermat_exponent(q: u64) -> Option<u32> {
    (0..6).find(|&a| 1u128 << (1u32 << a) == q as u128)
}

/// The field `GF(q)` on `[0, q)`, `q = 2^(2^a)`, under nim addition and
/// multiplication. Orders up to `2^32` are supported.
#[derive(Debug)]
pub struct FermatField {
    exponent: u32,
    q: u64,
    /// Product table for `q <= 256`, filled from the splitting rule.
    products: Option<Vec<u64>>,
    inverses: OnceLock<Vec<u64>>,
}

impl Clone for FermatField {
    fn clone(&self) -> Self {
        FermatField {
            exponent: self.exponent,
            q: self.q,
            products: self.products.clone(),
            inverses: self.inverses.clone(),
        }
    }
}

impl FermatField {
    /// Field of order `2^(2^exponent)`, `exponent <= 5`.
    pub fn new(exponent: u32) -> Result<Self> {
        if exponent > 5 {
            return Err(Error::InvalidParameter(format!(
                "field exponent {exponent} too large (orders up to 2^32 are supported)"
            )));
        }
        let q: u64 = 1 << (1u32 << exponent);
        let products = (q <= EXHAUSTIVE_FIELD_LIMIT).then(|| {
            let half = split_width(q - 1);
            (0..q * q).map(|i| split_mul(i / q, i % q, half)).collect()
        });
        Ok(Self { exponent, q, products, inverses: OnceLock::new() })
    }

    pub fn from_order(q: u64) -> Result<Self> {
        match fermat_exponent(q) {
            Some(a) if a <= 5 => Self::new(a),
            _ => Err(Error::InvalidParameter(format!("{q} is not a Fermat 2-power 2^(2^a)"))),
        }
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn contains(&self, x: u64) -> bool {
        x < self.q
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        x ^ y
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        debug_assert!(x < self.q && y < self.q);
        match &self.products {
            Some(table) => table[(x * self.q + y) as usize],
            None => split_mul(x, y, split_width(self.q - 1)),
        }
    }

    pub fn pow(&self, x: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (x, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Small fields use a table filled by exhaustive
    /// scan; larger ones use `x^(q-2)`.
    pub fn inv(&self, x: u64) -> Option<u64> {
        if x == 0 || x >= self.q {
            return None;
        }
        if self.q <= EXHAUSTIVE_FIELD_LIMIT {
            let table = self.inverses.get_or_init(|| {
                (0..self.q)
                    .map(|x| if x == 0 { 0 } else { (1..self.q).find(|&y| self.mul(x, y) == 1).unwrap_or(0) })
                    .collect()
            });
            Some(table[x as usize]).filter(|&y| y != 0)
        } else {
            let y = self.pow(x, self.q - 2);
            (self.mul(x, y) == 1).then_some(y)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldCheckMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl FieldCheckMode {
    pub const DEFAULT_SAMPLES: usize = 1_000_000;

    pub fn sampled() -> Self {
        FieldCheckMode::Sampled { samples: Self::DEFAULT_SAMPLES, seed: 0x5eed }
    }
}

/// Validates the field axioms of nim arithmetic on `[0, q)`.
///
/// Exhaustive mode (only for `q <= 256`) also compares every product with
/// the mex reference table.
pub fn field_check(q: u64, mode: FieldCheckMode) -> Result<VerificationReport> {
    let field = FermatField::from_order(q)?;
    let mut report = VerificationReport::new(format!("field q={q}"));
    report.count("q", q).count("a", field.exponent());
    match mode {
        FieldCheckMode::Exhaustive => {
            if q > EXHAUSTIVE_FIELD_LIMIT {
                return Err(Error::Resource(format!(
                    "exhaustive field check limited to q <= {EXHAUSTIVE_FIELD_LIMIT}, got {q}"
                )));
            }
            exhaustive_checks(&field, &mut report)?;
        }
        FieldCheckMode::Sampled { samples, seed } => {
            report.count("samples", samples);
            sampled_checks(&field, samples, seed, &mut report);
        }
    }
    Ok(report.finish())
}

fn exhaustive_checks(field: &FermatField, report: &mut VerificationReport) -> Result<()> {
    let q = field.order();
    let pairs = || (0..q).flat_map(move |x| (0..q).map(move |y| (x, y)));

    let closure = pairs().find(|&(x, y)| field.mul(x, y) >= q);
    report.check("closure", closure.map(|(x, y)| format!("({x}, {y})")));

    let commutative = pairs().find(|&(x, y)| field.mul(x, y) != field.mul(y, x));
    report.check("commutativity", commutative.map(|(x, y)| format!("({x}, {y})")));

    let identity = (0..q).find(|&x| field.mul(1, x) != x || field.mul(0, x) != 0);
    report.check("identity", identity.map(|x| format!("x = {x}")));

    let triple = |pred: &(dyn Fn(u64, u64, u64) -> bool + Sync)| {
        (0..q).into_par_iter().find_map_first(|x| {
            pairs().find(|&(y, z)| !pred(x, y, z)).map(|(y, z)| format!("({x}, {y}, {z})"))
        })
    };
    report.check(
        "associativity",
        triple(&|x, y, z| field.mul(field.mul(x, y), z) == field.mul(x, field.mul(y, z))),
    );
    report.check(
        "distributivity",
        triple(&|x, y, z| field.mul(x, y ^ z) == field.mul(x, y) ^ field.mul(x, z)),
    );

    let no_inverse = (1..q).find(|&x| !(1..q).any(|y| field.mul(x, y) == 1));
    report.check("inverses", no_inverse.map(|x| format!("x = {x}")));

    let table = MexTable::build(q as usize)?;
    let mismatch = pairs().find(|&(x, y)| table.get(x, y) != Some(field.mul(x, y)));
    report.check("mex_oracle", mismatch.map(|(x, y)| format!("({x}, {y})")));
    Ok(())
}

fn sampled_checks(field: &FermatField, samples: usize, seed: u64, report: &mut VerificationReport) {
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[u64; 3]> =
        (0..samples).map(|_| [rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q)]).collect();
    let first = |pred: &(dyn Fn(u64, u64, u64) -> bool + Sync)| {
        triples
            .par_iter()
            .find_first(|&&[x, y, z]| !pred(x, y, z))
            .map(|[x, y, z]| format!("({x}, {y}, {z})"))
    };
    report.check("closure", first(&|x, y, _| field.mul(x, y) < q));
    report.check("commutativity", first(&|x, y, _| field.mul(x, y) == field.mul(y, x)));
    report.check("identity", first(&|x, _, _| field.mul(1, x) == x && field.mul(0, x) == 0));
    report.check(
        "associativity",
        first(&|x, y, z| field.mul(field.mul(x, y), z) == field.mul(x, field.mul(y, z))),
    );
    report.check(
        "distributivity",
        first(&|x, y, z| field.mul(x, y ^ z) == field.mul(x, y) ^ field.mul(x, z)),
    );
    report.check("inverses", first(&|x, _, _| x == 0 || field.inv(x).is_some()));
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Unmemoized mex recursion, only usable for tiny operands.
    fn mex_naive(a: u64, b: u64) -> u64 {
        let mut set = Vec::new();
        for a2 in 0..a {
            for b2 in 0..b {
                set.push(mex_naive(a2, b) ^ mex_naive(a, b2) ^ mex_naive(a2, b2));
            }
        }
        (0..).find(|v| !set.contains(v)).unwrap()
    }

    #[test]
    fn nim_add_examples() {
        assert_eq!(nim_add(1, 2).unwrap(), 3);
        assert_eq!(nim_add(5, 6).unwrap(), 3);
        for x in [0, 1, 77, NIMBER_LIMIT - 1] {
            assert_eq!(nim_add(x, x).unwrap(), 0);
        }
        assert!(matches!(nim_add(NIMBER_LIMIT, 0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn nim_mul_examples() {
        assert_eq!(mex_naive(2, 2), 3);
        assert_eq!(mex_naive(2, 3), 1);
        assert_eq!(nim_mul(2, 2).unwrap(), 3);
        assert_eq!(nim_mul(2, 3).unwrap(), 1);
        for x in [0, 1, 5, 255, 65_535, NIM_MUL_LIMIT - 1] {
            assert_eq!(nim_mul(0, x).unwrap(), 0);
            assert_eq!(nim_mul(1, x).unwrap(), x);
        }
        assert!(nim_mul(NIM_MUL_LIMIT, 1).is_err());
    }

    #[test]
    fn mex_table_matches_naive_recursion() {
        let table = MexTable::build(6).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(table.get(a, b), Some(mex_naive(a, b)), "({a}, {b})");
            }
        }
        assert_eq!(table.get(6, 0), None);
        assert!(MexTable::build(MEX_TABLE_LIMIT + 1).is_err());
    }

    #[test]
    fn split_product_matches_mex_table_on_16() {
        let table = MexTable::build(16).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(Some(nim_mul(a, b).unwrap()), table.get(a, b));
                assert!(nim_mul(a, b).unwrap() < 16);
            }
        }
    }

    #[test]
    fn fermat_square_rule() {
        // F⊗F = F + F/2 for F = 2^(2^a)
        for f in [2u64, 4, 16, 256, 65_536] {
            assert_eq!(nim_mul(f, f).unwrap(), f + f / 2);
        }
    }

    #[test]
    fn lemma_examples() {
        assert!(greediness_lemma_holds(1, 2, 0).unwrap());
        assert!(greediness_lemma_holds(5, 6, 2).unwrap());
        assert!(greediness_lemma_holds(3, 5, 7).unwrap());
    }

    #[test]
    fn lemma_exhaustive_below_64() {
        for a in 0..64 {
            for b in 0..64 {
                for c in 0..64 {
                    assert!(greediness_lemma_holds(a, b, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn nim_add_group_laws_exhaustive_below_256() {
        for a in 0..256u64 {
            for b in 0..256 {
                assert_eq!(a ^ b, nim_add(b, a).unwrap());
                for c in (0..256).step_by(7) {
                    assert_eq!(nim_add(nim_add(a, b).unwrap(), c).unwrap(), nim_add(a, nim_add(b, c).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn distributive_exhaustive_below_16() {
        for a in 0..16 {
            for b in 0..16 {
                for c in 0..16 {
                    assert_eq!(nim_mul(a, b ^ c).unwrap(), nim_mul(a, b).unwrap() ^ nim_mul(a, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn fermat_orders() {
        assert_eq!(fermat_exponent(2), Some(0));
        assert_eq!(fermat_exponent(4), Some(1));
        assert_eq!(fermat_exponent(16), Some(2));
        assert_eq!(fermat_exponent(256), Some(3));
        assert_eq!(fermat_exponent(65_536), Some(4));
        for q in [0, 1, 3, 6, 8, 32, 512] {
            assert_eq!(fermat_exponent(q), None);
        }
        assert!(matches!(FermatField::from_order(6), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn field_check_examples() {
        assert!(field_check(2, FieldCheckMode::Exhaustive).unwrap().is_pass());
        assert!(field_check(4, FieldCheckMode::Exhaustive).unwrap().is_pass());
        let r16 = field_check(16, FieldCheckMode::Exhaustive).unwrap();
        assert!(r16.is_pass(), "{r16:?}");
        assert!(r16.find("mex_oracle").is_some());
        assert!(matches!(field_check(6, FieldCheckMode::Exhaustive), Err(Error::InvalidParameter(_))));
        assert!(matches!(field_check(65_536, FieldCheckMode::Exhaustive), Err(Error::Resource(_))));
        let sampled = field_check(65_536, FieldCheckMode::Sampled { samples: 20_000, seed: 1 }).unwrap();
        assert!(sampled.is_pass());
    }

    #[test]
    fn inverses_in_small_and_large_fields() {
        for q in [2u64, 4, 16, 256, 65_536] {
            let field = FermatField::from_order(q).unwrap();
            for x in (1..q).step_by(((q / 200) as usize).max(1)) {
                let y = field.inv(x).unwrap();
                assert_eq!(field.mul(x, y), 1);
            }
            assert_eq!(field.inv(0), None);
        }
    }

    proptest! {
        #[test]
        fn binary_expansion_round_trips(v in 0u64..NIMBER_LIMIT) {
            let n = Nimber::new(v).unwrap();
            prop_assert_eq!(Nimber::from_binary_expansion(&n.binary_expansion()).unwrap(), n);
        }

        #[test]
        fn nim_add_laws(a in 0u64..1 << 16, b in 0u64..1 << 16, c in 0u64..1 << 16) {
            prop_assert_eq!(a ^ b ^ c, nim_add(a, nim_add(b, c).unwrap()).unwrap());
            prop_assert_eq!(nim_add(a, b).unwrap(), nim_add(b, a).unwrap());
            prop_assert!(greediness_lemma_holds(a, b, c).unwrap());
        }

        #[test]
        fn nim_mul_is_a_field_product_on_2_pow_32(a in 0u64..NIM_MUL_LIMIT, b in 0u64..NIM_MUL_LIMIT, c in 0u64..NIM_MUL_LIMIT) {
            let m = |x, y| nim_mul(x, y).unwrap();
            prop_assert!(m(a, b) < NIM_MUL_LIMIT);
            prop_assert_eq!(m(a, b), m(b, a));
            prop_assert_eq!(m(m(a, b), c), m(a, m(b, c)));
            prop_assert_eq!(m(a, b ^ c), m(a, b) ^ m(a, c));
        }
    }
}
