//! k x k matrix representations of Cl(s,t): left regular, right regular, and
//! the tensor-periodicity construction, together with exact relation
//! verification, the monomial property and span witnesses.

use serde_json::{json, Value};

use crate::blade::{blade_mul, BladeBasis, Signature};
use crate::error::{Error, Result};
use crate::matrix::{rat, Rational, RationalMatrix};
use num::{One, Zero};

/// How a representation was constructed. Left regular and periodicity reps
/// are algebra homomorphisms; the right regular rep is an anti-homomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepKind {
    LeftRegular,
    RightRegular,
    Periodicity,
}

impl RepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RepKind::LeftRegular => "left-regular",
            RepKind::RightRegular => "right-regular",
            RepKind::Periodicity => "periodicity",
        }
    }

    pub fn parse(s: &str) -> Option<RepKind> {
        match s {
            "left-regular" | "left" => Some(RepKind::LeftRegular),
            "right-regular" | "right" => Some(RepKind::RightRegular),
            "periodicity" => Some(RepKind::Periodicity),
            _ => None,
        }
    }

    /// Matrix product convention: for homomorphisms F_a F_b represents the
    /// blade product a*b, for anti-homomorphisms it represents b*a.
    pub fn is_anti(&self) -> bool {
        matches!(self, RepKind::RightRegular)
    }
}

/// An ordered list of k = 2^(s+t) matrices aligned with the canonical blade
/// basis; `matrices[0]` is the identity.
#[derive(Debug, Clone)]
pub struct RepSet {
    pub sig: Signature,
    pub kind: RepKind,
    pub matrices: Vec<RationalMatrix>,
}

impl RepSet {
    pub fn k(&self) -> usize {
        self.sig.dim()
    }

    pub fn basis(&self) -> BladeBasis {
        BladeBasis::new(self.sig)
    }

    pub fn blade_names(&self) -> Vec<String> {
        self.basis().names()
    }

    /// Generator matrices in canonical order (I_1..I_t, J_1..J_s).
    pub fn generator_matrices(&self) -> Vec<&RationalMatrix> {
        (0..self.sig.gen_count())
            .map(|p| &self.matrices[1 + p as usize])
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "s": self.sig.s,
            "t": self.sig.t,
            "kind": self.kind.as_str(),
            "blades": self.blade_names(),
            "matrices": self.matrices.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Ordered tensor factors realizing Cl(s,t), outermost first. Every factor
/// is one of the five base signatures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRecipe {
    pub factors: Vec<Signature>,
}

impl DecompositionRecipe {
    pub fn factor_names(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.to_string()).collect()
    }
}

/// Expansion of Cl(q,0) (resp. Cl(0,q) with `positive` false) into base
/// factors by the residue of q mod 4, outermost first.
fn definite_factors(q: u32, positive: bool) -> Vec<Signature> {
    // For Cl(q,0): peel Cl(1,0) / Cl(2,0) / Cl(0,1)+Cl(2,0) heads, then p
    // copies of Cl(0,2) x Cl(2,0). The negative-definite side mirrors it.
    let (head, pair): (Vec<Signature>, [Signature; 2]) = if positive {
        let head = match q % 4 {
            0 => vec![],
            1 => vec![Signature::new(1, 0)],
            2 => vec![Signature::new(2, 0)],
            3 => vec![Signature::new(0, 1), Signature::new(2, 0)],
            _ => unreachable!(),
        };
        (head, [Signature::new(0, 2), Signature::new(2, 0)])
    } else {
        let head = match q % 4 {
            0 => vec![],
            1 => vec![Signature::new(0, 1)],
            2 => vec![Signature::new(0, 2)],
            3 => vec![Signature::new(1, 0), Signature::new(0, 2)],
            _ => unreachable!(),
        };
        (head, [Signature::new(2, 0), Signature::new(0, 2)])
    };
    let mut factors = head;
    for _ in 0..q / 4 {
        factors.push(pair[0]);
        factors.push(pair[1]);
    }
    factors
}

/// Decompose Cl(s,t) into base tensor factors: first peel min(s,t) copies of
/// Cl(1,1), then expand the leftover definite algebra. Factors are listed
/// outermost first; rejects the scalar algebra Cl(0,0).
pub fn classify(sig: &Signature) -> Result<DecompositionRecipe> {
    if sig.gen_count() == 0 {
        return Err(Error::ScalarAlgebra);
    }
    let mut factors = if sig.s > sig.t {
        definite_factors(sig.s - sig.t, true)
    } else if sig.s < sig.t {
        definite_factors(sig.t - sig.s, false)
    } else {
        vec![]
    };
    for _ in 0..sig.s.min(sig.t) {
        factors.push(Signature::new(1, 1));
    }
    let dim_product: usize = factors.iter().map(|f| f.dim()).product();
    debug_assert_eq!(dim_product, sig.dim());
    Ok(DecompositionRecipe { factors })
}

/// Left regular representation: column j of matrix i holds the coordinates
/// of blade_i * blade_j. Monomial with entries in {-1, 0, +1} and an exact
/// homomorphism by construction.
pub fn left_regular_rep(sig: &Signature) -> RepSet {
    regular_rep(sig, false)
}

/// Right regular representation: matrix i is right multiplication by blade
/// i, an anti-homomorphism (R_a R_b = R_{ba}). Every right multiplication
/// commutes with every left multiplication.
pub fn right_regular_rep(sig: &Signature) -> RepSet {
    regular_rep(sig, true)
}

fn regular_rep(sig: &Signature, right: bool) -> RepSet {
    let basis = BladeBasis::new(*sig);
    let k = basis.len();
    let mut matrices = Vec::with_capacity(k);
    for i in 0..k {
        let mut m = RationalMatrix::zeros(k, k);
        for j in 0..k {
            let p = if right {
                blade_mul(basis.blade(j), basis.blade(i), &sig.clone())
            } else {
                blade_mul(basis.blade(i), basis.blade(j), &sig.clone())
            };
            let r = basis.index_of(p.blade);
            m[(r, j)] = rat(p.sign as i64, 1);
        }
        matrices.push(m);
    }
    RepSet {
        sig: *sig,
        kind: if right {
            RepKind::RightRegular
        } else {
            RepKind::LeftRegular
        },
        matrices,
    }
}

/// Signed permutation form of a monomial matrix: column j maps to
/// (row, sign).
#[derive(Debug, Clone, PartialEq, Eq)]
struct SignedPerm {
    to: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPerm {
    fn identity(n: usize) -> Self {
        SignedPerm {
            to: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    fn from_matrix(m: &RationalMatrix) -> Option<Self> {
        m.signed_permutation().map(|(to, sign)| SignedPerm { to, sign })
    }

    fn mul(&self, rhs: &SignedPerm) -> SignedPerm {
        let n = self.to.len();
        let mut to = vec![0usize; n];
        let mut sign = vec![0i8; n];
        for j in 0..n {
            let (mid, s1) = (rhs.to[j], rhs.sign[j]);
            to[j] = self.to[mid];
            sign[j] = s1 * self.sign[mid];
        }
        SignedPerm { to, sign }
    }

    fn to_matrix(&self) -> RationalMatrix {
        let n = self.to.len();
        let mut m = RationalMatrix::zeros(n, n);
        for j in 0..n {
            m[(self.to[j], j)] = rat(self.sign[j] as i64, 1);
        }
        m
    }

    /// Key usable for set membership tests.
    fn key(&self) -> Vec<(usize, i8)> {
        self.to.iter().cloned().zip(self.sign.iter().cloned()).collect()
    }
}

/// Base-case matrices for the periodicity construction. Cl(1,0), Cl(0,1)
/// and Cl(2,0) are fixed 2x2 / 4x4 reference matrices; Cl(0,2) and Cl(1,1)
/// use their left regular representations.
fn base_blade_matrices(sig: &Signature) -> Vec<RationalMatrix> {
    match (sig.s, sig.t) {
        (1, 0) => vec![
            RationalMatrix::identity(2),
            RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
        ],
        (0, 1) => vec![
            RationalMatrix::identity(2),
            RationalMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]),
        ],
        (2, 0) => {
            let g1 = RationalMatrix::from_i64_rows(&[
                &[0, -1, 0, 0],
                &[-1, 0, 0, 0],
                &[0, 0, 0, 1],
                &[0, 0, 1, 0],
            ]);
            let g2 = RationalMatrix::from_i64_rows(&[
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
            ]);
            let g1g2 = g1.mat_mul(&g2).expect("4x4");
            vec![RationalMatrix::identity(4), g1, g2, g1g2]
        }
        (0, 2) | (1, 1) => left_regular_rep(sig).matrices,
        _ => panic!("not a base factor: {sig}"),
    }
}

/// Generator matrices of a base factor (the grade-1 blades).
fn base_generators(sig: &Signature) -> Vec<RationalMatrix> {
    let blades = base_blade_matrices(sig);
    (0..sig.gen_count() as usize)
        .map(|p| blades[1 + p].clone())
        .collect()
}

struct Tower {
    dim: usize,
    /// Generator images in construction order (inner factor first).
    gens: Vec<RationalMatrix>,
    /// The flattened tensor-product basis: kron of factor blade matrices,
    /// outer factor major.
    pure: Vec<RationalMatrix>,
}

/// Recursive tensor construction over the recipe factors, peeling the last
/// (innermost) factor: its generators embed as id (x) b, the generators of
/// the remaining outer algebra embed as a (x) (b1 b2), where b1 b2 is the
/// grade-2 volume element of the peeled factor.
fn build_tower(factors: &[Signature]) -> Tower {
    if factors.len() == 1 {
        let sig = factors[0];
        return Tower {
            dim: sig.dim(),
            gens: base_generators(&sig),
            pure: base_blade_matrices(&sig),
        };
    }
    let (outer, last) = factors.split_at(factors.len() - 1);
    let sub = build_tower(outer);
    let b_sig = last[0];
    let b_gens = base_generators(&b_sig);
    assert_eq!(b_gens.len(), 2, "peeled factor must be four-dimensional");
    let vol = b_gens[0].mat_mul(&b_gens[1]).expect("square");
    let id_sub = RationalMatrix::identity(sub.dim);
    let mut gens: Vec<RationalMatrix> = b_gens.iter().map(|b| id_sub.kron(b)).collect();
    gens.extend(sub.gens.iter().map(|a| a.kron(&vol)));
    let b_blades = base_blade_matrices(&b_sig);
    let mut pure = Vec::with_capacity(sub.pure.len() * b_blades.len());
    for p in &sub.pure {
        for q in &b_blades {
            pure.push(p.kron(q));
        }
    }
    Tower {
        dim: sub.dim * b_sig.dim(),
        gens,
        pure,
    }
}

fn square_sign_of(perm: &SignedPerm) -> Option<i8> {
    let sq = perm.mul(perm);
    let n = sq.to.len();
    if (0..n).all(|j| sq.to[j] == j) {
        let s = sq.sign[0];
        if sq.sign.iter().all(|&x| x == s) {
            return Some(s);
        }
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out.sort();
    out
}

fn heap_permute(items: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
    if n == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..n {
        heap_permute(items, n - 1, out);
        if n % 2 == 0 {
            items.swap(i, n - 1);
        } else {
            items.swap(0, n - 1);
        }
    }
}

/// Blade images for a generator ordering: ascending products over the
/// canonical basis.
fn blade_images(basis: &BladeBasis, gens: &[SignedPerm], dim: usize) -> Vec<SignedPerm> {
    basis
        .blades()
        .iter()
        .map(|b| {
            let mut acc = SignedPerm::identity(dim);
            for p in b.generator_positions() {
                acc = acc.mul(&gens[p as usize]);
            }
            acc
        })
        .collect()
}

/// Periodicity representation: generator matrices built from the recipe by
/// Kronecker products, the remaining blades as ascending products of the
/// generator images. Among the valid intra-type generator orderings we pick,
/// when one exists, the canonical ordering whose blade images coincide with
/// the unsigned tensor-product basis; otherwise construction order is kept.
pub fn periodicity_rep(sig: &Signature) -> Result<RepSet> {
    let recipe = classify(sig)?;
    let tower = build_tower(&recipe.factors);
    let basis = BladeBasis::new(*sig);
    let dim = tower.dim;

    let mut i_gens: Vec<SignedPerm> = Vec::new();
    let mut j_gens: Vec<SignedPerm> = Vec::new();
    for g in &tower.gens {
        let perm = SignedPerm::from_matrix(g).expect("tower generators are monomial");
        match square_sign_of(&perm) {
            Some(-1) => i_gens.push(perm),
            Some(1) => j_gens.push(perm),
            _ => unreachable!("tower generator does not square to +/- identity"),
        }
    }
    assert_eq!(i_gens.len(), sig.t as usize);
    assert_eq!(j_gens.len(), sig.s as usize);

    let pure_keys: std::collections::BTreeSet<Vec<(usize, i8)>> = tower
        .pure
        .iter()
        .map(|m| {
            SignedPerm::from_matrix(m)
                .expect("tensor basis is monomial")
                .key()
        })
        .collect();

    let aligned = if sig.gen_count() <= 8 {
        let mut found = None;
        'outer: for pi in permutations(i_gens.len()) {
            for pj in permutations(j_gens.len()) {
                let ordered: Vec<SignedPerm> = pi
                    .iter()
                    .map(|&x| i_gens[x].clone())
                    .chain(pj.iter().map(|&x| j_gens[x].clone()))
                    .collect();
                let images = blade_images(&basis, &ordered, dim);
                if images.iter().all(|im| pure_keys.contains(&im.key())) {
                    found = Some(images);
                    break 'outer;
                }
            }
        }
        found
    } else {
        None
    };

    let images = aligned.unwrap_or_else(|| {
        let ordered: Vec<SignedPerm> = i_gens.into_iter().chain(j_gens).collect();
        blade_images(&basis, &ordered, dim)
    });

    Ok(RepSet {
        sig: *sig,
        kind: RepKind::Periodicity,
        matrices: images.iter().map(|p| p.to_matrix()).collect(),
    })
}

/// A violated relation, carrying the canonical indices of every blade it
/// touches (factors and product).
#[derive(Debug, Clone)]
pub struct Violation {
    pub blades: Vec<usize>,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "violations": self
                .violations
                .iter()
                .map(|v| v.message.clone())
                .collect::<Vec<_>>(),
        })
    }
}

/// Check every defining relation of the representation: the unit blade maps
/// to the identity, entries are monomial in {-1,0,+1}, generator squares and
/// anticommutation hold, and the full k x k product table matches the blade
/// product (through the anti-homomorphism convention for right regular
/// representations). Violations are data, not errors.
pub fn verify_relations(rep: &RepSet) -> VerificationReport {
    let mut report = VerificationReport::default();
    let basis = rep.basis();
    let k = basis.len();
    let names = basis.names();
    if rep.matrices.len() != k {
        report.violations.push(Violation {
            blades: vec![],
            message: format!("expected {k} matrices, found {}", rep.matrices.len()),
        });
        return report;
    }
    if !rep.matrices[0].is_identity() {
        report.violations.push(Violation {
            blades: vec![0],
            message: "F_1 (unit blade) is not the identity".to_string(),
        });
    }

    let perms: Vec<Option<SignedPerm>> = rep
        .matrices
        .iter()
        .map(SignedPerm::from_matrix)
        .collect();
    for (i, p) in perms.iter().enumerate() {
        if p.is_none() {
            report.violations.push(Violation {
                blades: vec![i],
                message: format!("{} is not a monomial +/-1 matrix", names[i]),
            });
        }
    }

    let product = |i: usize, j: usize| -> Option<RationalMatrix> {
        match (&perms[i], &perms[j]) {
            (Some(a), Some(b)) => Some(a.mul(b).to_matrix()),
            _ => rep.matrices[i].mat_mul(&rep.matrices[j]).ok(),
        }
    };

    // Generator squares and anticommutation.
    let n = rep.sig.gen_count();
    for p in 0..n {
        let gi = basis.generator_index(p);
        if let Some(sq) = product(gi, gi) {
            let expected = if rep.sig.square_sign(p) < 0 {
                RationalMatrix::identity(rep.matrices[0].rows()).neg()
            } else {
                RationalMatrix::identity(rep.matrices[0].rows())
            };
            if sq != expected {
                report.violations.push(Violation {
                    blades: vec![gi],
                    message: format!(
                        "{}^2 != {}E",
                        names[gi],
                        if rep.sig.square_sign(p) < 0 { "-" } else { "+" }
                    ),
                });
            }
        }
        for q in p + 1..n {
            let gj = basis.generator_index(q);
            if let (Some(ab), Some(ba)) = (product(gi, gj), product(gj, gi)) {
                if ab != ba.neg() {
                    report.violations.push(Violation {
                        blades: vec![gi, gj],
                        message: format!("{} and {} do not anticommute", names[gi], names[gj]),
                    });
                }
            }
        }
    }

    // Full product table against the blade product.
    for i in 0..k {
        for j in 0..k {
            let Some(actual) = product(i, j) else { continue };
            let (l, sign) = if rep.kind.is_anti() {
                basis.mul_indices(j, i)
            } else {
                basis.mul_indices(i, j)
            };
            let expected = if sign < 0 {
                rep.matrices[l].neg()
            } else {
                rep.matrices[l].clone()
            };
            if actual != expected {
                report.violations.push(Violation {
                    blades: vec![i, j, l],
                    message: format!(
                        "{} * {} != {}{}",
                        names[i],
                        names[j],
                        if sign < 0 { "-" } else { "" },
                        names[l]
                    ),
                });
            }
        }
    }
    report
}

/// The linear combination sum_i coeffs[i] * F_i.
pub fn generic_element(rep: &RepSet, coeffs: &[Rational]) -> Result<RationalMatrix> {
    if coeffs.len() != rep.matrices.len() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} coefficients, got {}",
            rep.matrices.len(),
            coeffs.len()
        )));
    }
    let k = rep.matrices[0].rows();
    let mut out = RationalMatrix::zeros(k, k);
    for (c, m) in coeffs.iter().zip(&rep.matrices) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    Ok(out)
}

/// True iff each F_i is monomial and, for every fixed column j, the nonzero
/// row positions of F_1..F_k are pairwise distinct — so the generic element
/// has exactly one coefficient per row and column.
pub fn monomial_check(rep: &RepSet) -> bool {
    let k = rep.matrices.len();
    let mut perms = Vec::with_capacity(k);
    for m in &rep.matrices {
        match SignedPerm::from_matrix(m) {
            Some(p) => perms.push(p),
            None => return false,
        }
    }
    let dim = rep.matrices[0].rows();
    for j in 0..dim {
        let mut seen = vec![false; dim];
        for p in &perms {
            let r = p.to[j];
            if seen[r] {
                return false;
            }
            seen[r] = true;
        }
        // With dim == k every row is hit exactly once; for k < dim the
        // positions only need to be distinct, which the loop checked.
    }
    true
}

/// A vector X with the exact rank certificate for the span {F_i X}.
#[derive(Debug, Clone)]
pub struct SpanWitness {
    pub vector: Vec<Rational>,
    pub rank: usize,
}

fn span_rank(rep: &RepSet, x: &[Rational]) -> usize {
    let dim = rep.matrices[0].rows();
    let k = rep.matrices.len();
    let m = RationalMatrix::from_fn(dim, k, |r, i| {
        (0..dim)
            .map(|c| &rep.matrices[i][(r, c)] * &x[c])
            .fold(Rational::zero(), |a, b| a + b)
    });
    m.rank()
}

/// Find a vector X with dim <F_i X> = k, trying e_1 first, then the other
/// standard basis vectors, then small deterministic integer vectors.
pub fn span_witness(rep: &RepSet) -> Result<SpanWitness> {
    let dim = rep.matrices[0].rows();
    let k = rep.matrices.len();
    for j in 0..dim {
        let mut x = vec![Rational::zero(); dim];
        x[j] = Rational::one();
        let rank = span_rank(rep, &x);
        if rank == k {
            return Ok(SpanWitness { vector: x, rank });
        }
    }
    // Deterministic small-integer probes.
    let mut state = 0x5eed_cafe_u64;
    for _ in 0..32 {
        let x: Vec<Rational> = (0..dim)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                rat(((state >> 33) % 7) as i64 - 3, 1)
            })
            .collect();
        if x.iter().all(|v| v.is_zero()) {
            continue;
        }
        let rank = span_rank(rep, &x);
        if rank == k {
            return Ok(SpanWitness { vector: x, rank });
        }
    }
    Err(Error::NoSpanWitness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: u32, t: u32) -> Signature {
        Signature::new(s, t)
    }

    #[test]
    fn classify_examples() {
        let r = classify(&sig(3, 0)).unwrap();
        assert_eq!(r.factors, vec![sig(0, 1), sig(2, 0)]);
        let r = classify(&sig(2, 2)).unwrap();
        assert_eq!(r.factors, vec![sig(1, 1), sig(1, 1)]);
        let r = classify(&sig(0, 4)).unwrap();
        assert_eq!(r.factors, vec![sig(2, 0), sig(0, 2)]);
        assert!(matches!(classify(&sig(0, 0)), Err(Error::ScalarAlgebra)));
    }

    #[test]
    fn classify_covers_all_residues() {
        for s in 0..=6u32 {
            for t in 0..=6u32 {
                if s + t == 0 {
                    continue;
                }
                let r = classify(&sig(s, t)).unwrap();
                let dim: usize = r.factors.iter().map(|f| f.dim()).product();
                assert_eq!(dim, sig(s, t).dim());
                for f in &r.factors {
                    assert!(f.gen_count() <= 2);
                }
            }
        }
    }

    #[test]
    fn left_regular_cl10_generic_element() {
        let rep = left_regular_rep(&sig(1, 0));
        let g = generic_element(&rep, &[rat(7, 1), rat(3, 1)]).unwrap();
        let expected = RationalMatrix::from_i64_rows(&[&[7, 3], &[3, 7]]);
        assert_eq!(g, expected);
    }

    #[test]
    fn left_regular_cl01_follows_blade_products() {
        // Column j of L_I is the coordinate vector of I * blade_j:
        // I*E = I and I*I = -E, so L_I = [[0,-1],[1,0]].
        let rep = left_regular_rep(&sig(0, 1));
        let expected = RationalMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(rep.matrices[1], expected);
        let g = generic_element(&rep, &[rat(2, 1), rat(5, 1)]).unwrap();
        assert_eq!(g, RationalMatrix::from_i64_rows(&[&[2, -5], &[5, 2]]));
    }

    #[test]
    fn left_regular_is_homomorphism() {
        for (s, t) in [(0, 2), (1, 1), (2, 1)] {
            let rep = left_regular_rep(&sig(s, t));
            let basis = rep.basis();
            for i in 0..rep.k() {
                for j in 0..rep.k() {
                    let actual = rep.matrices[i].mat_mul(&rep.matrices[j]).unwrap();
                    let (l, sign) = basis.mul_indices(i, j);
                    let expected = if sign < 0 {
                        rep.matrices[l].neg()
                    } else {
                        rep.matrices[l].clone()
                    };
                    assert_eq!(actual, expected);
                }
            }
        }
    }

    #[test]
    fn right_regular_is_anti_homomorphism() {
        let rep = right_regular_rep(&sig(0, 2));
        let basis = rep.basis();
        assert!(rep.matrices[0].is_identity());
        // R_{I1} R_{I2} = R_{I2 I1} = -R_{I1 I2}
        let actual = rep.matrices[1].mat_mul(&rep.matrices[2]).unwrap();
        let (l, sign) = basis.mul_indices(2, 1);
        assert_eq!(l, 3);
        assert_eq!(sign, -1);
        assert_eq!(actual, rep.matrices[3].neg());
    }

    #[test]
    fn left_and_right_multiplications_commute() {
        let s = sig(0, 3);
        let left = left_regular_rep(&s);
        let right = right_regular_rep(&s);
        for a in &left.matrices {
            for b in &right.matrices {
                assert_eq!(
                    a.mat_mul(b).unwrap(),
                    b.mat_mul(a).unwrap(),
                    "left and right multiplications must commute"
                );
            }
        }
    }

    #[test]
    fn periodicity_cl20_matches_reference_display() {
        let rep = periodicity_rep(&sig(2, 0)).unwrap();
        let expected = base_blade_matrices(&sig(2, 0));
        assert_eq!(rep.matrices, expected);
    }

    #[test]
    fn periodicity_cl11_relations() {
        let rep = periodicity_rep(&sig(1, 1)).unwrap();
        assert_eq!(rep.matrices.len(), 4);
        let i1 = &rep.matrices[1];
        let j1 = &rep.matrices[2];
        assert_eq!(
            i1.mat_mul(i1).unwrap(),
            RationalMatrix::identity(4).neg()
        );
        assert_eq!(j1.mat_mul(j1).unwrap(), RationalMatrix::identity(4));
        assert_eq!(
            i1.mat_mul(j1).unwrap(),
            j1.mat_mul(i1).unwrap().neg()
        );
    }

    #[test]
    fn verify_relations_on_clean_reps() {
        for (s, t) in [(0, 1), (1, 0), (0, 2), (1, 1), (3, 0), (1, 2)] {
            let sg = sig(s, t);
            assert!(verify_relations(&left_regular_rep(&sg)).is_valid());
            assert!(verify_relations(&right_regular_rep(&sg)).is_valid());
            assert!(verify_relations(&periodicity_rep(&sg).unwrap()).is_valid());
        }
    }

    #[test]
    fn verify_relations_on_scalar_algebra() {
        let rep = left_regular_rep(&sig(0, 0));
        assert_eq!(rep.matrices.len(), 1);
        assert!(verify_relations(&rep).is_valid());
    }

    #[test]
    fn verify_relations_flags_flipped_sign() {
        let mut rep = left_regular_rep(&sig(0, 2));
        let flipped = 3usize;
        rep.matrices[flipped] = rep.matrices[flipped].neg();
        let report = verify_relations(&rep);
        assert!(!report.is_valid());
        for v in &report.violations {
            assert!(
                v.blades.contains(&flipped),
                "violation not touching the mutated blade: {}",
                v.message
            );
        }
    }

    #[test]
    fn monomial_check_examples() {
        for n in 0..=5u32 {
            for t in 0..=n {
                let sg = sig(n - t, t);
                assert!(monomial_check(&left_regular_rep(&sg)), "{sg}");
                assert!(monomial_check(&right_regular_rep(&sg)), "{sg}");
                if n >= 1 {
                    assert!(monomial_check(&periodicity_rep(&sg).unwrap()), "{sg}");
                }
            }
        }
        // Degenerate fake rep {E, E}: positions collide.
        let fake = RepSet {
            sig: sig(0, 1),
            kind: RepKind::LeftRegular,
            matrices: vec![RationalMatrix::identity(2), RationalMatrix::identity(2)],
        };
        assert!(!monomial_check(&fake));
    }

    #[test]
    fn span_witness_examples() {
        let rep = left_regular_rep(&sig(0, 2));
        let w = span_witness(&rep).unwrap();
        assert_eq!(w.rank, 4);
        assert_eq!(w.vector[0], rat(1, 1));
        // the stacked columns F_i e_1 of the 4x4 reference rep have rank 4
        let rep = periodicity_rep(&sig(2, 0)).unwrap();
        let cols = RationalMatrix::from_fn(4, 4, |r, i| rep.matrices[i][(r, 0)].clone());
        assert_eq!(cols.rank(), 4);
        let rep = periodicity_rep(&sig(3, 0)).unwrap();
        let w = span_witness(&rep).unwrap();
        assert_eq!(w.rank, 8);
        let rep = left_regular_rep(&sig(0, 0));
        let w = span_witness(&rep).unwrap();
        assert_eq!(w.rank, 1);
    }

    #[test]
    fn generic_element_dimension_check() {
        let rep = left_regular_rep(&sig(0, 1));
        assert!(generic_element(&rep, &[rat(1, 1)]).is_err());
        let zero = generic_element(&rep, &[rat(0, 1), rat(0, 1)]).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn periodicity_and_left_regular_share_relation_tables() {
        for (s, t) in [(2, 0), (0, 2), (1, 1), (3, 0), (0, 3)] {
            let sg = sig(s, t);
            let p = periodicity_rep(&sg).unwrap();
            let basis = p.basis();
            for i in 0..p.k() {
                for j in 0..p.k() {
                    let actual = p.matrices[i].mat_mul(&p.matrices[j]).unwrap();
                    let (l, sign) = basis.mul_indices(i, j);
                    let expected = if sign < 0 {
                        p.matrices[l].neg()
                    } else {
                        p.matrices[l].clone()
                    };
                    assert_eq!(actual, expected, "{sg} table entry ({i},{j})");
                }
            }
        }
    }
}
