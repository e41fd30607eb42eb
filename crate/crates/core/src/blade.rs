//! Exact arithmetic in the abstract Clifford algebra Cl(s,t): blades, signed
//! blade products and rational multivectors.
//!
//! Generators are numbered 1..=s+t. Numbers 1..=t are the complex unities
//! I_1..I_t (square -E), numbers t+1..=t+s are the product unities J_1..J_s
//! (square +E). Distinct generators anticommute.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::matrix::Rational;

/// Signature of the algebra: `s` product unities, `t` complex unities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub s: u32,
    pub t: u32,
}

impl Signature {
    pub fn new(s: u32, t: u32) -> Self {
        assert!(s + t <= 20, "signature too large for a dense blade table");
        Signature { s, t }
    }

    /// Number of generators n = s + t.
    pub fn gen_count(&self) -> u32 {
        self.s + self.t
    }

    /// Algebra dimension k = 2^(s+t).
    pub fn dim(&self) -> usize {
        1usize << self.gen_count()
    }

    /// Sign of the square of the generator at bit position `p` (0-based).
    pub fn square_sign(&self, p: u32) -> i8 {
        debug_assert!(p < self.gen_count());
        if p < self.t {
            -1
        } else {
            1
        }
    }

    /// Printable name of the generator at bit position `p`.
    pub fn generator_name(&self, p: u32) -> String {
        if p < self.t {
            format!("I{}", p + 1)
        } else {
            format!("J{}", p - self.t + 1)
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.s, self.t)
    }
}

/// A basis monomial: a subset of generators encoded as a bit mask.
/// The empty subset is the unit blade E.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade {
    mask: u32,
}

impl Blade {
    pub const UNIT: Blade = Blade { mask: 0 };

    pub fn from_mask(mask: u32) -> Self {
        Blade { mask }
    }

    /// Single-generator blade for bit position `p`.
    pub fn generator(p: u32) -> Self {
        Blade { mask: 1 << p }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn grade(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_unit(&self) -> bool {
        self.mask == 0
    }

    /// Ascending bit positions of the generators in this blade.
    pub fn generator_positions(&self) -> impl Iterator<Item = u32> + '_ {
        let mask = self.mask;
        (0..32).filter(move |p| mask & (1 << p) != 0)
    }

    pub fn name(&self, sig: &Signature) -> String {
        if self.is_unit() {
            return "E".to_string();
        }
        self.generator_positions()
            .map(|p| sig.generator_name(p))
            .collect()
    }
}

/// A blade together with a sign; the product of two blades is exactly one of
/// these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedBlade {
    pub blade: Blade,
    pub sign: i8,
}

/// Number of transpositions needed to merge the two ascending generator
/// sequences: pairs (i in a, j in b) with i > j.
fn reorder_swaps(a: u32, b: u32) -> u32 {
    let mut a = a >> 1;
    let mut total = 0;
    while a != 0 {
        total += (a & b).count_ones();
        a >>= 1;
    }
    total
}

/// Product of two blades: sort the concatenated generator word, collecting a
/// transposition sign, then cancel squared generators with their square sign.
pub fn blade_mul(a: Blade, b: Blade, sig: &Signature) -> SignedBlade {
    let valid = (1u32 << sig.gen_count()) - 1;
    debug_assert!(a.mask & !valid == 0 && b.mask & !valid == 0);
    let mut sign = if reorder_swaps(a.mask, b.mask) % 2 == 0 {
        1i8
    } else {
        -1i8
    };
    let mut common = a.mask & b.mask;
    while common != 0 {
        let p = common.trailing_zeros();
        sign *= sig.square_sign(p);
        common &= common - 1;
    }
    SignedBlade {
        blade: Blade::from_mask(a.mask ^ b.mask),
        sign,
    }
}

/// Canonical order: ascending grade, then lexicographic on the ascending
/// generator index tuples.
fn canonical_cmp(a: u32, b: u32) -> Ordering {
    let (ga, gb) = (a.count_ones(), b.count_ones());
    if ga != gb {
        return ga.cmp(&gb);
    }
    let (mut a, mut b) = (a, b);
    while a != 0 && b != 0 {
        let (pa, pb) = (a.trailing_zeros(), b.trailing_zeros());
        if pa != pb {
            return pa.cmp(&pb);
        }
        a &= a - 1;
        b &= b - 1;
    }
    Ordering::Equal
}

/// Canonical blade order of Cl(s,t): E first, then the generators I_1..I_t,
/// J_1..J_s, then higher-grade monomials.
pub fn canonical_basis(sig: &Signature) -> Vec<Blade> {
    let mut masks: Vec<u32> = (0..sig.dim() as u32).collect();
    masks.sort_by(|&a, &b| canonical_cmp(a, b));
    masks.into_iter().map(Blade::from_mask).collect()
}

/// Canonical basis with an index lookup.
#[derive(Debug, Clone)]
pub struct BladeBasis {
    sig: Signature,
    blades: Vec<Blade>,
    index_by_mask: Vec<usize>,
}

impl BladeBasis {
    pub fn new(sig: Signature) -> Self {
        let blades = canonical_basis(&sig);
        let mut index_by_mask = vec![0usize; sig.dim()];
        for (i, b) in blades.iter().enumerate() {
            index_by_mask[b.mask() as usize] = i;
        }
        BladeBasis {
            sig,
            blades,
            index_by_mask,
        }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn len(&self) -> usize {
        self.blades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn blade(&self, i: usize) -> Blade {
        self.blades[i]
    }

    pub fn blades(&self) -> &[Blade] {
        &self.blades
    }

    pub fn index_of(&self, b: Blade) -> usize {
        self.index_by_mask[b.mask() as usize]
    }

    /// Canonical index of the generator blade at bit position `p`.
    /// Grade-1 blades sit right after E, in bit order.
    pub fn generator_index(&self, p: u32) -> usize {
        1 + p as usize
    }

    pub fn names(&self) -> Vec<String> {
        self.blades.iter().map(|b| b.name(&self.sig)).collect()
    }

    /// Product in canonical indices: (index, sign) of blade_i * blade_j.
    pub fn mul_indices(&self, i: usize, j: usize) -> (usize, i8) {
        let p = blade_mul(self.blades[i], self.blades[j], &self.sig);
        (self.index_of(p.blade), p.sign)
    }
}

/// A finite rational linear combination of blades. Absent blades have
/// coefficient zero; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiVector {
    coeffs: BTreeMap<u32, Rational>,
}

impl MultiVector {
    pub fn zero() -> Self {
        MultiVector {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Self::term(Blade::UNIT, Rational::one())
    }

    pub fn term(blade: Blade, coeff: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(blade.mask(), coeff);
        }
        MultiVector { coeffs }
    }

    pub fn coeff(&self, blade: Blade) -> Rational {
        self.coeffs
            .get(&blade.mask())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Rational)> {
        self.coeffs
            .iter()
            .map(|(&m, c)| (Blade::from_mask(m), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, blade: Blade, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(blade.mask())
            .or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&blade.mask());
        }
    }

    pub fn add(&self, other: &MultiVector) -> MultiVector {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiVector {
        MultiVector {
            coeffs: self.coeffs.iter().map(|(&m, c)| (m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> MultiVector {
        if factor.is_zero() {
            return MultiVector::zero();
        }
        MultiVector {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&m, c)| (m, c * factor))
                .collect(),
        }
    }
}

/// Bilinear extension of `blade_mul`: distributive, associative, exact.
pub fn mv_mul(x: &MultiVector, y: &MultiVector, sig: &Signature) -> MultiVector {
    let mut out = MultiVector::zero();
    for (bx, cx) in x.terms() {
        for (by, cy) in y.terms() {
            let p = blade_mul(bx, by, sig);
            let mut c = cx * cy;
            if p.sign < 0 {
                c = -c;
            }
            out.add_term(p.blade, c);
        }
    }
    out
}
