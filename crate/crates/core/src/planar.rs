//! Constant-coefficient connections on the flat model: deformation by a
//! one-form through the structure affinors, difference tensors, hull
//! membership, and numeric planarity checks along integrated curves.

use num::Zero;

use crate::error::{Error, Result};
use crate::matrix::{rational_to_f64, Rational, RationalMatrix};
use crate::prolong::{OneForm, SignVector};

/// A connection with constant Christoffel array Gamma^c_{ab}, stored as
/// gamma[(a*N + b)*N + c]. The antisymmetric part in (a, b) is the torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatConnection {
    dim: usize,
    gamma: Vec<Rational>,
}

impl FlatConnection {
    pub fn trivial(dim: usize) -> Self {
        FlatConnection {
            dim,
            gamma: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn from_coefficients(dim: usize, gamma: Vec<Rational>) -> Self {
        assert_eq!(gamma.len(), dim * dim * dim);
        FlatConnection { dim, gamma }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.gamma[(a * self.dim + b) * self.dim + c]
    }

    fn coeff_mut(&mut self, a: usize, b: usize, c: usize) -> &mut Rational {
        &mut self.gamma[(a * self.dim + b) * self.dim + c]
    }

    /// Torsion tensor T^c_{ab} = Gamma^c_{ab} - Gamma^c_{ba}.
    pub fn torsion(&self) -> Vec<Rational> {
        let n = self.dim;
        let mut t = vec![Rational::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t[(a * n + b) * n + c] = self.coeff(a, b, c) - self.coeff(b, a, c);
                }
            }
        }
        t
    }

    /// The matrix (Gamma_a)^c_b = Gamma^c_{ab} of nabla along e_a.
    pub fn direction_matrix(&self, a: usize) -> RationalMatrix {
        RationalMatrix::from_fn(self.dim, self.dim, |c, b| self.coeff(a, b, c).clone())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.gamma.iter().map(rational_to_f64).collect()
    }
}

/// The deformation term P^c_{ab} of the connection class: the symmetrized
/// product (1/2) sum_i eps_i [ Y(F_i e_a) (F_i e_b)^c + Y(F_i e_b) (F_i e_a)^c ].
/// The factor 1/2 makes P(X,X) = sum_i eps_i Y(F_i X) F_i X exactly.
pub fn deformation_term(
    upsilon: &OneForm,
    affinors: &[RationalMatrix],
    eps: &SignVector,
) -> FlatConnection {
    let n = upsilon.components.len();
    let half = Rational::new(1.into(), 2.into());
    let mut p = FlatConnection::trivial(n);
    for (i, f) in affinors.iter().enumerate() {
        let (to, sign) = f.signed_permutation().expect("affinors are monomial");
        let e = eps.signs[i] as i64;
        for a in 0..n {
            let ya = &upsilon.components[to[a]]
                * Rational::new((sign[a] as i64 * e).into(), 1.into());
            if ya.is_zero() {
                continue;
            }
            for b in 0..n {
                let v = &ya * Rational::new((sign[b] as i64).into(), 1.into()) * &half;
                *p.coeff_mut(a, b, to[b]) += v.clone();
                *p.coeff_mut(b, a, to[b]) += v;
            }
        }
    }
    p
}

/// Deform a connection by a one-form through the affinors. The added term is
/// symmetric in (a, b), so the torsion is preserved exactly.
pub fn deform(
    conn: &FlatConnection,
    upsilon: &OneForm,
    affinors: &[RationalMatrix],
    eps: &SignVector,
) -> Result<FlatConnection> {
    if upsilon.components.len() != conn.dim || affinors[0].rows() != conn.dim {
        return Err(Error::DimensionMismatch(format!(
            "connection dim {} vs one-form length {} / affinor dim {}",
            conn.dim,
            upsilon.components.len(),
            affinors[0].rows()
        )));
    }
    let p = deformation_term(upsilon, affinors, eps);
    let gamma = conn
        .gamma
        .iter()
        .zip(&p.gamma)
        .map(|(a, b)| a + b)
        .collect();
    Ok(FlatConnection::from_coefficients(conn.dim, gamma))
}

/// A base connection bundled with the deformation data: applying it yields
/// base + deformation_term(upsilon).
#[derive(Debug, Clone)]
pub struct ConnectionDeformation {
    pub base: FlatConnection,
    pub upsilon: OneForm,
    pub affinors: Vec<RationalMatrix>,
    pub eps: SignVector,
}

impl ConnectionDeformation {
    pub fn apply(&self) -> Result<FlatConnection> {
        deform(&self.base, &self.upsilon, &self.affinors, &self.eps)
    }
}

/// Exact Christoffel difference of two connections of the same dimension.
pub fn difference_tensor(a: &FlatConnection, b: &FlatConnection) -> Vec<Rational> {
    assert_eq!(a.dim, b.dim);
    a.gamma.iter().zip(&b.gamma).map(|(x, y)| x - y).collect()
}

/// Is the array d[(a*N+b)*N+c] symmetric in (a, b)?
pub fn tensor_is_symmetric(d: &[Rational], n: usize) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| d[(a * n + b) * n + c] == d[(b * n + a) * n + c]))
    })
}

/// True iff nabla F = 0 exactly for every affinor, i.e. every direction
/// matrix of the connection commutes with every affinor.
pub fn preserves_affinors(conn: &FlatConnection, affinors: &[RationalMatrix]) -> bool {
    (0..conn.dim).all(|a| {
        let g = conn.direction_matrix(a);
        affinors
            .iter()
            .all(|f| g.commutator(f).map(|c| c.is_zero()).unwrap_or(false))
    })
}

/// Exact hull membership: decompose v against {F_i X}. The residual is zero
/// iff v lies in the hull of X.
#[derive(Debug, Clone)]
pub struct HullMembership {
    pub coefficients: Vec<Rational>,
    pub residual_sq: Rational,
}

pub fn hull_membership(
    v: &[Rational],
    x: &[Rational],
    affinors: &[RationalMatrix],
) -> HullMembership {
    assert!(x.iter().any(|e| !e.is_zero()), "hull of the zero vector");
    let n = x.len();
    let k = affinors.len();
    let h = RationalMatrix::from_fn(n, k, |r, i| {
        (0..n)
            .map(|c| &affinors[i][(r, c)] * &x[c])
            .fold(Rational::zero(), |a, b| a + b)
    });
    let (coefficients, residual_sq) = h.least_squares(v);
    HullMembership {
        coefficients,
        residual_sq,
    }
}

/// Exact dimension of the hull span {F_i X}.
pub fn hull_dim(x: &[Rational], affinors: &[RationalMatrix]) -> usize {
    let n = x.len();
    let k = affinors.len();
    RationalMatrix::from_fn(n, k, |r, i| {
        (0..n)
            .map(|c| &affinors[i][(r, c)] * &x[c])
            .fold(Rational::zero(), |a, b| a + b)
    })
    .rank()
}

/// Recover the one-form from an assembled deformation array, solving the
/// exact linear system P = deformation_term(Y). `None` when inconsistent or
/// underdetermined.
pub fn recover_one_form(
    p: &[Rational],
    affinors: &[RationalMatrix],
    eps: &SignVector,
) -> Option<OneForm> {
    let n = affinors[0].rows();
    assert_eq!(p.len(), n * n * n);
    // Column j: the deformation array of the standard one-form e_j.
    let columns: Vec<FlatConnection> = (0..n)
        .map(|j| deformation_term(&OneForm::standard(n, j), affinors, eps))
        .collect();
    let m = RationalMatrix::from_fn(n * n * n, n, |r, j| columns[j].gamma[r].clone());
    if m.rank() < n {
        return None;
    }
    m.solve(p).map(|components| OneForm { components })
}

/// Position, velocity and time of a curve point.
#[derive(Debug, Clone)]
pub struct CurveState {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub time: f64,
}

#[derive(Debug, Clone)]
pub struct TrajectorySample {
    pub time: f64,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    /// Acceleration from the integrated equation, evaluated at the sample.
    pub acceleration: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub step: f64,
}

/// Float view of the Christoffel array, with Gamma(v, v) contraction.
pub struct GammaF64 {
    dim: usize,
    gamma: Vec<f64>,
}

impl GammaF64 {
    pub fn new(conn: &FlatConnection) -> Self {
        GammaF64 {
            dim: conn.dim,
            gamma: conn.to_f64(),
        }
    }

    pub fn contract(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for a in 0..n {
            if u[a] == 0.0 {
                continue;
            }
            for b in 0..n {
                let f = u[a] * v[b];
                if f == 0.0 {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += self.gamma[(a * n + b) * n + c] * f;
                }
            }
        }
        out
    }
}

type Forcing<'a> = Option<&'a dyn Fn(f64, &[f64], &[f64]) -> Vec<f64>>;

/// Fixed-step RK4 integration of x'' = -Gamma(x', x') (+ forcing).
/// Deterministic for fixed inputs; aborts on non-finite state.
pub fn integrate_curve(
    conn: &FlatConnection,
    init: &CurveState,
    horizon: f64,
    step: f64,
) -> Result<Trajectory> {
    integrate_curve_forced(conn, init, horizon, step, None)
}

pub fn integrate_curve_forced(
    conn: &FlatConnection,
    init: &CurveState,
    horizon: f64,
    step: f64,
    forcing: Forcing<'_>,
) -> Result<Trajectory> {
    assert!(step > 0.0, "step must be positive");
    let gamma = GammaF64::new(conn);
    let n = conn.dim;
    assert_eq!(init.position.len(), n);
    assert_eq!(init.velocity.len(), n);

    let accel = |t: f64, x: &[f64], v: &[f64]| -> Vec<f64> {
        let mut a = gamma.contract(v, v);
        for e in a.iter_mut() {
            *e = -*e;
        }
        if let Some(f) = forcing {
            for (e, fe) in a.iter_mut().zip(f(t, x, v)) {
                *e += fe;
            }
        }
        a
    };

    let steps = (horizon / step).round() as usize;
    let mut x = init.position.clone();
    let mut v = init.velocity.clone();
    let mut t = init.time;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(TrajectorySample {
        time: t,
        position: x.clone(),
        velocity: v.clone(),
        acceleration: accel(t, &x, &v),
    });

    let axpy = |base: &[f64], k: &[f64], h: f64| -> Vec<f64> {
        base.iter().zip(k).map(|(b, kk)| b + h * kk).collect()
    };

    for _ in 0..steps {
        let k1x = v.clone();
        let k1v = accel(t, &x, &v);
        let k2x = axpy(&v, &k1v, step / 2.0);
        let k2v = accel(
            t + step / 2.0,
            &axpy(&x, &k1x, step / 2.0),
            &axpy(&v, &k1v, step / 2.0),
        );
        let k3x = axpy(&v, &k2v, step / 2.0);
        let k3v = accel(
            t + step / 2.0,
            &axpy(&x, &k2x, step / 2.0),
            &axpy(&v, &k2v, step / 2.0),
        );
        let k4x = axpy(&v, &k3v, step);
        let k4v = accel(t + step, &axpy(&x, &k3x, step), &axpy(&v, &k3v, step));

        for i in 0..n {
            x[i] += step / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
            v[i] += step / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        }
        t += step;
        if x.iter().chain(v.iter()).any(|e| !e.is_finite()) {
            return Err(Error::NonFiniteState { t });
        }
        samples.push(TrajectorySample {
            time: t,
            position: x.clone(),
            velocity: v.clone(),
            acceleration: accel(t, &x, &v),
        });
    }
    Ok(Trajectory { samples, step })
}

/// Float least squares of `rhs` against the columns {F_i x}; returns the
/// Euclidean residual norm. Rank deficiency is handled by dropping
/// near-dependent columns in the normal equations.
fn hull_residual_f64(rhs: &[f64], x: &[f64], affinors: &[Vec<Vec<f64>>]) -> f64 {
    let n = x.len();
    let k = affinors.len();
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(k);
    for f in affinors {
        let mut col = vec![0.0; n];
        for (r, row) in f.iter().enumerate() {
            col[r] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        cols.push(col);
    }
    // normal equations with pivoted Gaussian elimination
    let mut ata = vec![vec![0.0; k]; k];
    let mut atb = vec![0.0; k];
    for i in 0..k {
        for j in 0..k {
            ata[i][j] = cols[i].iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
        }
        atb[i] = cols[i].iter().zip(rhs).map(|(a, b)| a * b).sum();
    }
    let mut sol = vec![0.0; k];
    let mut aug: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut row = ata[i].clone();
            row.push(atb[i]);
            row
        })
        .collect();
    let scale: f64 = aug
        .iter()
        .flat_map(|r| r.iter().take(k))
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1.0);
    let mut rank_cols = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..k).max_by(|&a, &b| {
            aug[a][col].abs().partial_cmp(&aug[b][col].abs()).unwrap()
        }) else {
            break;
        };
        if aug[p][col].abs() <= 1e-12 * scale {
            continue;
        }
        aug.swap(row, p);
        let pivot = aug[row][col];
        for r in 0..k {
            if r != row && aug[r][col] != 0.0 {
                let f = aug[r][col] / pivot;
                for c in col..=k {
                    aug[r][c] -= f * aug[row][c];
                }
            }
        }
        rank_cols.push((row, col));
        row += 1;
        if row == k {
            break;
        }
    }
    for &(r, c) in &rank_cols {
        sol[c] = aug[r][k] / aug[r][c];
    }
    let mut res = 0.0;
    for r in 0..n {
        let mut v = rhs[r];
        for (i, col) in cols.iter().enumerate() {
            v -= sol[i] * col[r];
        }
        res += v * v;
    }
    res.sqrt()
}

#[derive(Debug, Clone)]
pub struct PlanarityReport {
    /// max over samples of |residual of nabla_c' c' against the hull of c'|
    /// normalized by |c'|^2.
    pub max_residual: f64,
    pub residuals: Vec<f64>,
}

/// Evaluate nabla_{c'} c' = a + Gamma(c', c') at every sample and measure
/// its distance to the hull of c', normalized by |c'|^2.
pub fn planarity_report(
    traj: &Trajectory,
    conn: &FlatConnection,
    affinors: &[RationalMatrix],
) -> PlanarityReport {
    let gamma = GammaF64::new(conn);
    let aff: Vec<Vec<Vec<f64>>> = affinors.iter().map(|m| m.to_f64()).collect();
    let mut residuals = Vec::with_capacity(traj.samples.len());
    let mut max_residual = 0.0f64;
    for s in &traj.samples {
        let v2: f64 = s.velocity.iter().map(|v| v * v).sum();
        assert!(v2 > 0.0, "planarity is undefined for zero velocity");
        let mut u = gamma.contract(&s.velocity, &s.velocity);
        for (e, a) in u.iter_mut().zip(&s.acceleration) {
            *e += a;
        }
        let r = hull_residual_f64(&u, &s.velocity, &aff) / v2;
        max_residual = max_residual.max(r);
        residuals.push(r);
    }
    PlanarityReport {
        max_residual,
        residuals,
    }
}

/// Deterministic CSV of a trajectory: t, x_1..x_N, v_1..v_N, residual.
pub fn trajectory_csv(traj: &Trajectory, residuals: &[f64]) -> String {
    let n = traj.samples.first().map(|s| s.position.len()).unwrap_or(0);
    let mut out = String::from("t");
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    for i in 1..=n {
        out.push_str(&format!(",v{i}"));
    }
    out.push_str(",residual\n");
    for (s, r) in traj.samples.iter().zip(residuals) {
        out.push_str(&format!("{:.12e}", s.time));
        for x in &s.position {
            out.push_str(&format!(",{x:.12e}"));
        }
        for v in &s.velocity {
            out.push_str(&format!(",{v:.12e}"));
        }
        out.push_str(&format!(",{r:.12e}\n"));
    }
    out
}

/// Outcome of the seeded end-to-end demonstration on one signature: deform
/// the trivial connection by a random one-form and measure torsion, affinor
/// compatibility, and planarity of geodesics in both directions.
#[derive(Debug, Clone)]
pub struct PlanarDemo {
    pub upsilon: OneForm,
    pub torsion_preserved: bool,
    pub base_preserves_affinors: bool,
    /// geodesic of the base connection, measured against the deformation
    pub forward_residual: f64,
    /// geodesic of the deformation, measured against the base
    pub reverse_residual: f64,
    pub trajectory: Trajectory,
    pub residuals: Vec<f64>,
}

/// Seeded, deterministic demo of the connection class on the flat model
/// O^m: RK4 geodesics with the given step over the given horizon.
pub fn run_demo(
    sig: &crate::blade::Signature,
    m: usize,
    seed: u64,
    step: f64,
    horizon: f64,
) -> Result<PlanarDemo> {
    use crate::prolong::{epsilon_signs_for, structure_affinors, Flavor, GroupSpec};
    use rand::{Rng, SeedableRng};

    let spec = GroupSpec::new(*sig, m, Flavor::Cliffordian);
    let affinors = structure_affinors(&spec);
    let eps = epsilon_signs_for(sig)?;
    let n = spec.model_dim();
    let base = FlatConnection::trivial(n);
    let base_preserves_affinors = preserves_affinors(&base, &affinors);

    // Small coefficients keep the quadratic geodesic flow of the deformed
    // connection away from finite-time blowup over the demo horizon.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let upsilon = loop {
        let components: Vec<Rational> = (0..n)
            .map(|_| Rational::new(rng.gen_range(-2i64..=2).into(), 16.into()))
            .collect();
        if components.iter().any(|c| !c.is_zero()) {
            break OneForm { components };
        }
    };
    let deformed = deform(&base, &upsilon, &affinors, &eps)?;
    let torsion_preserved = deformed.torsion() == base.torsion();

    let init = CurveState {
        position: vec![0.0; n],
        velocity: (0..n).map(|i| 0.2 + 0.4 * (i + 1) as f64 / n as f64).collect(),
        time: 0.0,
    };
    let trajectory = integrate_curve(&base, &init, horizon, step)?;
    let forward = planarity_report(&trajectory, &deformed, &affinors);
    let reverse_traj = integrate_curve(&deformed, &init, horizon, step)?;
    let reverse = planarity_report(&reverse_traj, &base, &affinors);

    Ok(PlanarDemo {
        upsilon,
        torsion_preserved,
        base_preserves_affinors,
        forward_residual: forward.max_residual,
        reverse_residual: reverse.max_residual,
        trajectory,
        residuals: forward.residuals,
    })
}
