//! Lie algebras of the Clifford linear groups on the flat model V = R^{km},
//! their first prolongations as exact nullspaces, the sign-coefficient
//! algorithm for the S^A operators, and the S^xi elements.

use serde_json::{json, Value};

use crate::blade::{BladeBasis, Signature};
use crate::error::{Error, Result};
use crate::matrix::{dense_to_sparse, rat, sparse_to_dense, Rational, RationalMatrix, SparseReducer, SparseVec};
use crate::rep::{right_regular_rep, RepSet};
use num::{One, Zero};

/// Which linear group the flat model is reduced to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// GL(m, O): everything commuting with the structure affinors.
    Clifford,
    /// GL(m, O) GL(1, O): the previous algebra plus the blockwise right
    /// action of O itself.
    Cliffordian,
}

impl Flavor {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flavor::Clifford => "clifford",
            Flavor::Cliffordian => "cliffordian",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "clifford" => Some(Flavor::Clifford),
            "cliffordian" => Some(Flavor::Cliffordian),
            _ => None,
        }
    }
}

/// The flat model: O^m with O = Cl(s,t), so N = k*m. The scalar signature
/// (0,0) is allowed as a degenerate control case (no affinor constraints).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupSpec {
    pub sig: Signature,
    pub m: usize,
    pub flavor: Flavor,
}

impl GroupSpec {
    pub fn new(sig: Signature, m: usize, flavor: Flavor) -> Self {
        assert!(m >= 1, "model needs at least one O-block");
        GroupSpec { sig, m, flavor }
    }

    /// Model dimension N = k * m.
    pub fn model_dim(&self) -> usize {
        self.sig.dim() * self.m
    }
}

/// Structure affinors of the flat model: the m-fold block-diagonal copies of
/// the right regular representation of the k blades. Right multiplication is
/// the convention under which block matrices over O acting on the left
/// commute with every affinor.
pub fn structure_affinors(spec: &GroupSpec) -> Vec<RationalMatrix> {
    let rep = right_regular_rep(&spec.sig);
    let id_m = RationalMatrix::identity(spec.m);
    rep.matrices.iter().map(|r| id_m.kron(r)).collect()
}

/// Generator affinors only (the grade-1 blades), in canonical order.
fn generator_affinors(spec: &GroupSpec) -> Vec<RationalMatrix> {
    let all = structure_affinors(spec);
    (0..spec.sig.gen_count())
        .map(|p| all[1 + p as usize].clone())
        .collect()
}

/// An exact basis of the Lie algebra of the chosen group.
#[derive(Debug, Clone)]
pub struct LieAlgebraBasis {
    pub spec: GroupSpec,
    pub basis: Vec<RationalMatrix>,
}

fn vec_index(n: usize, r: usize, c: usize) -> usize {
    r * n + c
}

fn matrix_to_sparse(m: &RationalMatrix) -> SparseVec {
    let n = m.cols();
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..n {
            if !m[(r, c)].is_zero() {
                out.push((vec_index(n, r, c), m[(r, c)].clone()));
            }
        }
    }
    out
}

fn sparse_to_matrix(v: &SparseVec, n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for (idx, val) in v {
        m[(idx / n, idx % n)] = val.clone();
    }
    m
}

/// Commutant of the generator affinors, i.e. gl(m, O), as the exact kernel
/// of the linear system [B, G] = 0. Each affinor is monomial, so every
/// equation couples exactly two entries of B.
fn commutant_kernel(spec: &GroupSpec) -> Vec<SparseVec> {
    let n = spec.model_dim();
    let mut red = SparseReducer::new(n * n);
    for g in generator_affinors(spec) {
        let (to, sign) = g
            .signed_permutation()
            .expect("structure affinors are monomial");
        let mut inv = vec![0usize; n];
        for (c, &r) in to.iter().enumerate() {
            inv[r] = c;
        }
        for r in 0..n {
            for c in 0..n {
                // (B G - G B)[r, c] = sign[c] B[r, to[c]] - sign[inv[r]] B[inv[r], c]
                let mut row: SparseVec = vec![
                    (vec_index(n, r, to[c]), rat(sign[c] as i64, 1)),
                    (vec_index(n, inv[r], c), rat(-(sign[inv[r]] as i64), 1)),
                ];
                row.sort_by_key(|(i, _)| *i);
                if row[0].0 == row[1].0 {
                    let v = row[0].1.clone() + row[1].1.clone();
                    row = if v.is_zero() { vec![] } else { vec![(row[0].0, v)] };
                }
                if !row.is_empty() {
                    red.insert(row);
                }
            }
        }
    }
    red.kernel_basis()
}

/// Basis of the Lie algebra. Clifford flavor: the commutant of the generator
/// affinors; its dimension is m^2 k. Cliffordian flavor: the sum of the
/// commutant with the span of the k affinors themselves; the overlap (the
/// center of O) is removed by elimination, keeping the basis independent.
pub fn lie_algebra_basis(spec: &GroupSpec) -> LieAlgebraBasis {
    let n = spec.model_dim();
    let kernel = commutant_kernel(spec);
    let mut basis: Vec<RationalMatrix> =
        kernel.iter().map(|v| sparse_to_matrix(v, n)).collect();
    if spec.flavor == Flavor::Cliffordian {
        let mut red = SparseReducer::new(n * n);
        for v in kernel {
            red.insert(v);
        }
        for aff in structure_affinors(spec) {
            if red.insert(matrix_to_sparse(&aff)) {
                basis.push(aff);
            }
        }
    }
    LieAlgebraBasis { spec: *spec, basis }
}

/// A symmetric bilinear map t: V x V -> V with rational coefficients,
/// t(e_a, e_b) = sum_c coeffs[(a*N + b)*N + c] e_c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymBilinearMap {
    dim: usize,
    coeffs: Vec<Rational>,
}

impl SymBilinearMap {
    pub fn zero(dim: usize) -> Self {
        SymBilinearMap {
            dim,
            coeffs: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.coeffs[(a * self.dim + b) * self.dim + c]
    }

    pub fn add_coeff(&mut self, a: usize, b: usize, c: usize, v: Rational) {
        self.coeffs[(a * self.dim + b) * self.dim + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.coeff(a, b, c) == self.coeff(b, a, c)))
        })
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                let f = &x[a] * &y[b];
                for c in 0..n {
                    let t = self.coeff(a, b, c);
                    if !t.is_zero() {
                        out[c] += t * &f;
                    }
                }
            }
        }
        out
    }

    /// The matrix of v -> t(v, e_a).
    pub fn fixed_second(&self, a: usize) -> RationalMatrix {
        let n = self.dim;
        RationalMatrix::from_fn(n, n, |r, c| self.coeff(c, a, r).clone())
    }

    /// Independent coordinates: (pair (a<=b), c), pair-major.
    fn to_pair_major(&self) -> Vec<Rational> {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n * (n + 1) / 2);
        for a in 0..n {
            for b in a..n {
                for c in 0..n {
                    out.push(self.coeff(a, b, c).clone());
                }
            }
        }
        out
    }

    fn from_pair_major(dim: usize, v: &[Rational]) -> Self {
        let mut t = SymBilinearMap::zero(dim);
        let mut idx = 0;
        for a in 0..dim {
            for b in a..dim {
                for c in 0..dim {
                    t.coeffs[(a * dim + b) * dim + c] = v[idx].clone();
                    t.coeffs[(b * dim + a) * dim + c] = v[idx].clone();
                    idx += 1;
                }
            }
        }
        t
    }

    /// Flat JSON array (full a,b,c order) plus an index legend.
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "coeffs": self
                .coeffs
                .iter()
                .map(|e| json!([e.numer().to_string(), e.denom().to_string()]))
                .collect::<Vec<_>>(),
        })
    }
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    // index of (a, b) with a <= b among lexicographically ordered pairs
    debug_assert!(a <= b && b < n);
    a * (2 * n - a + 1) / 2 + (b - a)
}

/// Exact basis of the first prolongation: symmetric bilinear maps t such
/// that v -> t(v, e_a) lies in span(g.basis) for every a. Membership is
/// encoded through the annihilator of span(g.basis), computed once, and the
/// whole system is solved as one rational nullspace problem in the
/// coefficients t_{abc} with a <= b.
pub fn first_prolongation(g: &LieAlgebraBasis) -> Vec<SymBilinearMap> {
    let n = g.spec.model_dim();
    // Annihilator of the span of g inside gl(N).
    let mut span = SparseReducer::new(n * n);
    for b in &g.basis {
        span.insert(matrix_to_sparse(b));
    }
    let annihilator = span.kernel_basis();

    let unknowns = n * n * (n + 1) / 2;
    let mut red = SparseReducer::new(unknowns);
    for a in 0..n {
        for f in &annihilator {
            // f applied to the matrix M_a with M_a[r, c] = t(e_c, e_a)_r.
            let mut row: std::collections::BTreeMap<usize, Rational> = Default::default();
            for (pos, coef) in f {
                let (r, c) = (pos / n, pos % n);
                let (p, q) = if c <= a { (c, a) } else { (a, c) };
                let col = pair_index(n, p, q) * n + r;
                let e = row.entry(col).or_insert_with(Rational::zero);
                *e += coef.clone();
            }
            let row: SparseVec = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if !row.is_empty() {
                red.insert(row);
            }
        }
    }
    red.kernel_basis()
        .iter()
        .map(|v| SymBilinearMap::from_pair_major(n, &sparse_to_dense(v, unknowns)))
        .collect()
}

/// One sign per blade, aligned with the canonical basis; signs[E] = +1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector {
    pub signs: Vec<i8>,
}

impl SignVector {
    pub fn negated(&self) -> SignVector {
        SignVector {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

/// Derive the sign vector from the blade product table alone: eps_E = +1,
/// grade-1 blades get the sign of their generator's square, higher grades by
/// propagation along every one-generator factorization. Propagation along
/// edge (i, j) enforces eps_i * sgn(i j) = eps_{i xor j} * sgn(j (i xor j));
/// if two factorization paths force opposite signs no valid vector exists,
/// so the inconsistency is surfaced as an error.
pub fn epsilon_signs_for(sig: &Signature) -> Result<SignVector> {
    let basis = BladeBasis::new(*sig);
    let k = basis.len();
    let n = sig.gen_count();
    let mut signs: Vec<Option<i8>> = vec![None; k];
    signs[0] = Some(1);
    loop {
        let mut progress = false;
        for i in 0..k {
            let Some(eps_i) = signs[i] else { continue };
            for p in 0..n {
                let j = basis.generator_index(p);
                let (l, sigma) = basis.mul_indices(i, j);
                let (_, tau) = basis.mul_indices(j, l);
                let candidate = eps_i * sigma * tau;
                match signs[l] {
                    None => {
                        signs[l] = Some(candidate);
                        progress = true;
                    }
                    Some(existing) => {
                        if existing != candidate {
                            return Err(Error::InconsistentPropagation {
                                blade: basis.blade(l).name(sig),
                            });
                        }
                    }
                }
            }
        }
        if !progress {
            break;
        }
    }
    Ok(SignVector {
        signs: signs.into_iter().map(|s| s.expect("hypercube is connected")).collect(),
    })
}

/// Sign vector for the representation's signature (the derivation only uses
/// the blade product table, so it is independent of the construction kind).
pub fn epsilon_signs(rep: &RepSet) -> Result<SignVector> {
    epsilon_signs_for(&rep.sig)
}

#[derive(Debug, Clone)]
pub struct GeneratorIdentity {
    pub generator: String,
    /// Coefficient-level identity: for every one-form A and vectors X, Y,
    /// S^A(GX, Y) - G S^A(X, Y) = 0 exactly.
    pub exact: bool,
    /// Weaker statement: for the symmetrized S^xi and every fixed X, the
    /// defect Y -> S_X(GY) - G S_X(Y) lies in the span of the blade matrices.
    pub hull: bool,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub generators: Vec<GeneratorIdentity>,
}

impl IdentityReport {
    pub fn exact_all(&self) -> bool {
        self.generators.iter().all(|g| g.exact)
    }

    pub fn hull_all(&self) -> bool {
        self.generators.iter().all(|g| g.hull)
    }
}

/// Check, per generator, the identity satisfied by the sign vector: the
/// exact coefficient-level form (evaluated by reindexing through blade
/// products, honoring the representation's product convention) and the hull
/// membership form for the symmetrized operator.
pub fn check_sa_identity(rep: &RepSet, eps: &SignVector) -> IdentityReport {
    let basis = rep.basis();
    let k = basis.len();
    let anti = rep.kind.is_anti();
    // Matrix-level product sign: M_a M_b = sign * M_{a xor b}.
    let msign = |a: usize, b: usize| -> (usize, i8) {
        if anti {
            basis.mul_indices(b, a)
        } else {
            basis.mul_indices(a, b)
        }
    };

    let mut span = SparseReducer::new(k * k);
    for m in &rep.matrices {
        span.insert(matrix_to_sparse(m));
    }

    let perms: Vec<(Vec<usize>, Vec<i8>)> = rep
        .matrices
        .iter()
        .map(|m| m.signed_permutation().expect("representation matrices are monomial"))
        .collect();

    let mut generators = Vec::new();
    for p in 0..rep.sig.gen_count() {
        let gj = basis.generator_index(p);
        let exact = (0..k).all(|i| {
            let (l, s1) = msign(i, gj);
            let (_, s2) = msign(gj, l);
            eps.signs[i] * s1 == eps.signs[l] * s2
        });

        let mut hull = true;
        'outer: for xi_p in 0..k {
            for x in 0..k {
                // Matrix of Y -> S_X(Y) for xi = e_{xi_p}^T, X = e_x.
                let mut a1 = RationalMatrix::zeros(k, k);
                for i in 0..k {
                    let (to, sign) = &perms[i];
                    // term xi(F_i X) F_i Y
                    if to[x] == xi_p {
                        let factor = rat((eps.signs[i] * sign[x]) as i64, 1);
                        a1 = a1.add(&rep.matrices[i].scale(&factor));
                    }
                    // term xi(F_i Y) F_i X: one entry per blade
                    let y = to.iter().position(|&r| r == xi_p).expect("permutation");
                    let v = rat((eps.signs[i] * sign[x] * sign[y]) as i64, 1);
                    let cur = a1[(to[x], y)].clone();
                    a1[(to[x], y)] = cur + v;
                }
                let g = &rep.matrices[gj];
                let defect = a1.mat_mul(g).unwrap().sub(&g.mat_mul(&a1).unwrap());
                if !span.contains(matrix_to_sparse(&defect)) {
                    hull = false;
                    break 'outer;
                }
            }
        }

        generators.push(GeneratorIdentity {
            generator: rep.sig.generator_name(p),
            exact,
            hull,
        });
    }
    IdentityReport { generators }
}

/// A one-form on the model, given by its N components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    pub components: Vec<Rational>,
}

impl OneForm {
    pub fn zero(dim: usize) -> Self {
        OneForm {
            components: vec![Rational::zero(); dim],
        }
    }

    pub fn standard(dim: usize, a: usize) -> Self {
        let mut components = vec![Rational::zero(); dim];
        components[a] = Rational::one();
        OneForm { components }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

/// The symmetric bilinear map
/// S^xi(X, Y) = sum_i eps_i (xi(F_i X) F_i Y + xi(F_i Y) F_i X)
/// built from the structure affinors.
pub fn s_xi_element(
    spec: &GroupSpec,
    affinors: &[RationalMatrix],
    eps: &SignVector,
    xi: &OneForm,
) -> SymBilinearMap {
    let n = spec.model_dim();
    assert_eq!(xi.components.len(), n, "one-form length must be N = k*m");
    let mut t = SymBilinearMap::zero(n);
    for (i, f) in affinors.iter().enumerate() {
        let (to, sign) = f.signed_permutation().expect("affinors are monomial");
        let e = eps.signs[i] as i64;
        for a in 0..n {
            // xi(F_i e_a) = sign[a] * xi[to[a]]
            let xa = &xi.components[to[a]] * rat(sign[a] as i64 * e, 1);
            if xa.is_zero() {
                continue;
            }
            for b in 0..n {
                // (F_i e_b)_c nonzero only at c = to[b]
                let v = &xa * rat(sign[b] as i64, 1);
                t.add_coeff(a, b, to[b], v.clone());
                t.add_coeff(b, a, to[b], v);
            }
        }
    }
    t
}

/// Reusable context for S^xi membership checks against a fixed group spec.
pub struct SxiChecker {
    spec: GroupSpec,
    affinors: Vec<RationalMatrix>,
    eps: SignVector,
    g: LieAlgebraBasis,
    g_span: SparseReducer,
    g1: Vec<SymBilinearMap>,
    g1_span: SparseReducer,
}

impl SxiChecker {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let affinors = structure_affinors(spec);
        let eps = epsilon_signs_for(&spec.sig)?;
        let g = lie_algebra_basis(spec);
        let n = spec.model_dim();
        let mut g_span = SparseReducer::new(n * n);
        for b in &g.basis {
            g_span.insert(matrix_to_sparse(b));
        }
        let g1 = first_prolongation(&g);
        let unknowns = n * n * (n + 1) / 2;
        let mut g1_span = SparseReducer::new(unknowns);
        for t in &g1 {
            g1_span.insert(dense_to_sparse(&t.to_pair_major()));
        }
        Ok(SxiChecker {
            spec: *spec,
            affinors,
            eps,
            g,
            g_span,
            g1,
            g1_span,
        })
    }

    pub fn prolongation_dim(&self) -> usize {
        self.g1.len()
    }

    pub fn lie_algebra_dim(&self) -> usize {
        self.g.basis.len()
    }

    pub fn prolongation(&self) -> &[SymBilinearMap] {
        &self.g1
    }

    pub fn s_xi(&self, xi: &OneForm) -> SymBilinearMap {
        s_xi_element(&self.spec, &self.affinors, &self.eps, xi)
    }

    /// True iff S^xi lies in span(first_prolongation) and, directly, each
    /// slice Y -> S^xi(Y, e_a) lies in span(g).
    pub fn check(&self, xi: &OneForm) -> bool {
        let t = self.s_xi(xi);
        let in_g1 = self.g1_span.contains(dense_to_sparse(&t.to_pair_major()));
        let n = self.spec.model_dim();
        let slices_in_g = (0..n).all(|a| {
            self.g_span
                .contains(matrix_to_sparse(&t.fixed_second(a)))
        });
        in_g1 && slices_in_g
    }

    /// Rank of the stacked coefficient matrix of xi -> S^xi over the N
    /// standard one-forms; N means the map is injective.
    pub fn injectivity_rank(&self) -> usize {
        let n = self.spec.model_dim();
        let mut red = SparseReducer::new(n * n * (n + 1) / 2);
        let mut rank = 0;
        for a in 0..n {
            let t = self.s_xi(&OneForm::standard(n, a));
            if red.insert(dense_to_sparse(&t.to_pair_major())) {
                rank += 1;
            }
        }
        rank
    }

    /// True iff the given maps span exactly the computed prolongation.
    pub fn spans_prolongation(&self, maps: &[SymBilinearMap]) -> bool {
        let n = self.spec.model_dim();
        let mut red = SparseReducer::new(n * n * (n + 1) / 2);
        let mut rank = 0;
        for t in maps {
            let v = dense_to_sparse(&t.to_pair_major());
            if !self.g1_span.contains(v.clone()) {
                return false;
            }
            if red.insert(v) {
                rank += 1;
            }
        }
        rank == self.g1.len()
    }
}

/// One-shot membership check (spec'd for the Cliffordian flavor, but total).
pub fn verify_sxi_membership(spec: &GroupSpec, xi: &OneForm) -> Result<bool> {
    Ok(SxiChecker::new(spec)?.check(xi))
}

/// Machine-generated table of the exact vs hull identity status per (s,t),
/// 1 <= s+t <= max_n, ordered by n then s.
pub fn epsilon_table(max_n: u32) -> Result<Value> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for s in 0..=n {
            let sig = Signature::new(s, n - s);
            let rep = right_regular_rep(&sig);
            let eps = epsilon_signs_for(&sig)?;
            let report = check_sa_identity(&rep, &eps);
            rows.push(json!({
                "s": sig.s,
                "t": sig.t,
                "k": sig.dim(),
                "signs": eps.signs,
                "exact_identity": report.exact_all(),
                "hull_identity": report.hull_all(),
                "per_generator": report
                    .generators
                    .iter()
                    .map(|g| json!({
                        "generator": g.generator,
                        "exact": g.exact,
                        "hull": g.hull,
                    }))
                    .collect::<Vec<_>>(),
            }));
        }
    }
    Ok(Value::Array(rows))
}

/// JSON emission of a prolongation basis: flat arrays plus an index legend.
pub fn prolongation_to_json(basis: &[SymBilinearMap]) -> Value {
    json!({
        "dim_g1": basis.len(),
        "legend": "coeffs[(a*N + b)*N + c] is the e_c component of t(e_a, e_b); entries are [num, den] strings",
        "basis": basis.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
    })
}
