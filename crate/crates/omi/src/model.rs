//! Physical model of the three-mode interface: dynamics matrices in the mode
//! and quadrature bases, stability analysis, and eigenmode classification.

use nalgebra::{Complex, ComplexField, DMatrix, Matrix2, Matrix3, Matrix4, Matrix6, Vector3};

use crate::error::{Error, Result};
use crate::real::{real, to_f64, Real};
use crate::symplectic::quadrature_matrix_from_mode_map;

/// Interaction variant of the interface.
///
/// `TwoToneSqueezing`: cavity 1 red-detuned (beamsplitter coupling), cavity 2
/// blue-detuned (parametric coupling). `DoubleBeamsplitter`: both cavities
/// red-detuned, both couplings excitation-conserving.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    TwoToneSqueezing,
    DoubleBeamsplitter,
}

/// Physical parameters of the interface, all rates in a common arbitrary
/// frequency unit with hbar = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceModel<T: Real> {
    pub variant: Variant,
    /// Effective coupling of cavity 1 to the mechanics.
    pub g1: T,
    /// Effective coupling of cavity 2 to the mechanics.
    pub g2: T,
    /// Cavity amplitude damping rates.
    pub kappa1: T,
    pub kappa2: T,
    /// Mechanical damping rate.
    pub gamma_m: T,
    /// Bath thermal phonon occupation.
    pub n_th: T,
    /// Initial-state thermal phonon occupation (may differ from `n_th`).
    pub n_0: T,
}

impl<T: Real> InterfaceModel<T> {
    pub fn new(
        variant: Variant,
        g1: T,
        g2: T,
        kappa1: T,
        kappa2: T,
        gamma_m: T,
        n_th: T,
        n_0: T,
    ) -> Result<Self> {
        let zero = T::zero();
        for (name, v) in [
            ("g1", g1),
            ("g2", g2),
            ("kappa1", kappa1),
            ("kappa2", kappa2),
            ("gamma_m", gamma_m),
            ("n_th", n_th),
            ("n_0", n_0),
        ] {
            if v < zero || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and nonnegative, got {}",
                    to_f64(v)
                )));
            }
        }
        Ok(Self {
            variant,
            g1,
            g2,
            kappa1,
            kappa2,
            gamma_m,
            n_th,
            n_0,
        })
    }

    /// Two-tone model parametrized by (g0, r): g1 = g0 cosh r, g2 = g0 sinh r.
    pub fn two_tone(g0: T, r: T, kappa1: T, kappa2: T, gamma_m: T, n_th: T, n_0: T) -> Result<Self> {
        Self::new(
            Variant::TwoToneSqueezing,
            g0 * r.cosh(),
            g0 * r.sinh(),
            kappa1,
            kappa2,
            gamma_m,
            n_th,
            n_0,
        )
    }

    /// Squeezing parameter r = atanh(g2/g1); finite only for g1 > g2.
    pub fn squeezing_parameter(&self) -> Option<T> {
        if self.g1 > self.g2 {
            Some((self.g2 / self.g1).atanh())
        } else {
            None
        }
    }

    /// Characteristic coupling g0 = sqrt(g1^2 - g2^2) of the two-tone model.
    pub fn g0(&self) -> Option<T> {
        if self.g1 > self.g2 {
            Some((self.g1 * self.g1 - self.g2 * self.g2).sqrt())
        } else {
            None
        }
    }

    /// Model with both damping rates and the mechanical damping scaled by `eps`.
    pub fn scaled_damping(&self, eps: T) -> Self {
        Self {
            kappa1: self.kappa1 * eps,
            kappa2: self.kappa2 * eps,
            gamma_m: self.gamma_m * eps,
            ..*self
        }
    }
}

/// Time dependence of the couplings (g1(t), g2(t)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScheduleKind<T: Real> {
    Constant { g1: T, g2: T },
    /// g1(t) = g0 cosh(lambda t), g2(t) = g0 sinh(lambda t).
    AdiabaticSqueeze { g0: T, lambda: T },
    /// g1(t) = g0 sin(lambda t), g2(t) = -g0 cos(lambda t).
    BeamsplitterSwap { g0: T, lambda: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSchedule<T: Real> {
    pub kind: ScheduleKind<T>,
    pub t_final: T,
}

impl<T: Real> CouplingSchedule<T> {
    pub fn new(kind: ScheduleKind<T>, t_final: T) -> Result<Self> {
        if t_final <= T::zero() || !t_final.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "t_final must be positive, got {}",
                to_f64(t_final)
            )));
        }
        Ok(Self { kind, t_final })
    }

    pub fn constant(g1: T, g2: T, t_final: T) -> Result<Self> {
        Self::new(ScheduleKind::Constant { g1, g2 }, t_final)
    }

    pub fn adiabatic_squeeze(g0: T, lambda: T, t_final: T) -> Result<Self> {
        Self::new(ScheduleKind::AdiabaticSqueeze { g0, lambda }, t_final)
    }

    /// Resonant beamsplitter swap: lambda = g0/(4n), t_final = pi/(4 lambda).
    pub fn beamsplitter_resonant(g0: T, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        let lambda = g0 / real::<T>(4.0 * n as f64);
        let t_final = real::<T>(std::f64::consts::PI) / (real::<T>(4.0) * lambda);
        Self::new(ScheduleKind::BeamsplitterSwap { g0, lambda }, t_final)
    }

    /// Beamsplitter swap at the exact rotating-frame resonance
    /// lambda = g0 / sqrt(16 n^2 - 1) (even n), where the discrete
    /// half-period map is reproduced without adiabatic error. For large n
    /// this approaches the nominal g0/(4n) sweep rate.
    pub fn beamsplitter_exact(g0: T, n: u32) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidParameter(
                "exact resonance requires even n >= 2".into(),
            ));
        }
        let lambda = g0 / real::<T>((16.0 * (n as f64) * (n as f64) - 1.0).sqrt());
        let t_final = real::<T>(std::f64::consts::PI) / (real::<T>(4.0) * lambda);
        Self::new(ScheduleKind::BeamsplitterSwap { g0, lambda }, t_final)
    }

    /// Instantaneous couplings (g1(t), g2(t)).
    pub fn couplings_at(&self, t: T) -> (T, T) {
        match self.kind {
            ScheduleKind::Constant { g1, g2 } => (g1, g2),
            ScheduleKind::AdiabaticSqueeze { g0, lambda } => {
                ((lambda * t).cosh() * g0, (lambda * t).sinh() * g0)
            }
            ScheduleKind::BeamsplitterSwap { g0, lambda } => {
                ((lambda * t).sin() * g0, -(lambda * t).cos() * g0)
            }
        }
    }

    /// lambda/g0, where applicable; the adiabatic schemes assume this is small.
    pub fn adiabaticity_ratio(&self) -> Option<T> {
        match self.kind {
            ScheduleKind::Constant { .. } => None,
            ScheduleKind::AdiabaticSqueeze { g0, lambda }
            | ScheduleKind::BeamsplitterSwap { g0, lambda } => {
                if g0 > T::zero() {
                    Some(lambda / g0)
                } else {
                    None
                }
            }
        }
    }

    /// True when lambda/g0 > 0.1, i.e. the adiabatic assumption is marginal.
    pub fn adiabaticity_marginal(&self) -> bool {
        self.adiabaticity_ratio()
            .map(|x| x > real(0.1))
            .unwrap_or(false)
    }

    /// Largest |g_i(t)| over [t0, t1].
    pub fn max_coupling_on(&self, t0: T, t1: T) -> T {
        match self.kind {
            ScheduleKind::Constant { g1, g2 } => g1.abs().max(g2.abs()),
            // cosh dominates and is monotone in |t|
            ScheduleKind::AdiabaticSqueeze { g0, lambda } => {
                let tm = t0.abs().max(t1.abs());
                g0.abs() * (lambda * tm).cosh()
            }
            ScheduleKind::BeamsplitterSwap { g0, .. } => g0.abs(),
        }
    }
}

/// All dynamics matrices derived from the model at instantaneous couplings.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsMatrices<T: Real> {
    /// Mode-basis non-Hermitian matrix acting on (a1, b_m, a2^dag) for
    /// `TwoToneSqueezing`, or on (a1, b_m, a2) for `DoubleBeamsplitter`.
    pub m: Matrix3<Complex<T>>,
    /// Quadrature-basis drift: d sigma/dt = A sigma + sigma A^T + D.
    pub a: Matrix6<T>,
    /// Quadrature-basis diffusion (diagonal).
    pub d: Matrix6<T>,
    /// Diag[kappa1, gamma_m, kappa2].
    pub k: Matrix3<T>,
}

/// Mode matrix M, quadrature drift A, diffusion D, and damping K for the
/// given instantaneous couplings.
pub fn dynamics_matrix<T: Real>(model: &InterfaceModel<T>, g1: T, g2: T) -> DynamicsMatrices<T> {
    let zero = T::zero();
    let half = real::<T>(0.5);
    let k1h = model.kappa1 * half;
    let k2h = model.kappa2 * half;
    let gmh = model.gamma_m * half;
    let c = |re: T, im: T| Complex::new(re, im);

    let m = match model.variant {
        Variant::TwoToneSqueezing => Matrix3::new(
            c(zero, -k1h),
            c(g1, zero),
            c(zero, zero),
            c(g1, zero),
            c(zero, -gmh),
            c(zero, g2),
            c(zero, zero),
            c(zero, g2),
            c(zero, -k2h),
        ),
        Variant::DoubleBeamsplitter => Matrix3::new(
            c(zero, -k1h),
            c(g1, zero),
            c(zero, zero),
            c(g1, zero),
            c(zero, -gmh),
            c(g2, zero),
            c(zero, zero),
            c(g2, zero),
            c(zero, -k2h),
        ),
    };

    // Quadrature order (x1, p1, x_m, p_m, x2, p2), x = (a + a^dag)/sqrt(2).
    let mut a = Matrix6::zeros();
    a[(0, 0)] = -k1h;
    a[(1, 1)] = -k1h;
    a[(2, 2)] = -gmh;
    a[(3, 3)] = -gmh;
    a[(4, 4)] = -k2h;
    a[(5, 5)] = -k2h;
    a[(0, 3)] = g1;
    a[(1, 2)] = -g1;
    a[(2, 1)] = g1;
    a[(3, 0)] = -g1;
    match model.variant {
        Variant::TwoToneSqueezing => {
            a[(2, 4)] = g2;
            a[(3, 5)] = -g2;
            a[(4, 2)] = g2;
            a[(5, 3)] = -g2;
        }
        Variant::DoubleBeamsplitter => {
            a[(2, 5)] = g2;
            a[(3, 4)] = -g2;
            a[(4, 3)] = g2;
            a[(5, 2)] = -g2;
        }
    }

    let mech = model.gamma_m * (real::<T>(2.0) * model.n_th + T::one()) * half;
    let d = Matrix6::from_diagonal(&nalgebra::Vector6::new(k1h, k1h, mech, mech, k2h, k2h));

    let k = Matrix3::from_diagonal(&Vector3::new(model.kappa1, model.gamma_m, model.kappa2));

    DynamicsMatrices { m, a, d, k }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport<T: Real> {
    /// True iff all eigenvalues of the drift matrix A have Re < 0.
    pub stable: bool,
    /// -max Re(spec A).
    pub margin: T,
    /// The closed-form approximation g1^2/g2^2 > max(k2/k1, k1/k2).
    pub approx_condition_holds: bool,
}

/// Eigenvalue-based stability verdict plus the closed-form approximation.
///
/// The two indicators may disagree near the stability boundary.
pub fn stability_check<T: Real>(model: &InterfaceModel<T>) -> StabilityReport<T> {
    let dm = dynamics_matrix(model, model.g1, model.g2);
    let a = DMatrix::from_fn(6, 6, |i, j| dm.a[(i, j)]);
    let eigs = a.complex_eigenvalues();
    let max_re = eigs.iter().map(|l| l.re).fold(real::<T>(f64::NEG_INFINITY), |m, x| m.max(x));
    let margin = -max_re;

    let approx = match model.variant {
        Variant::DoubleBeamsplitter => true,
        Variant::TwoToneSqueezing => {
            if model.g2 == T::zero() {
                true
            } else if model.kappa1 == T::zero() || model.kappa2 == T::zero() {
                false
            } else {
                let ratio = (model.kappa2 / model.kappa1).max(model.kappa1 / model.kappa2);
                model.g1 * model.g1 > model.g2 * model.g2 * ratio
            }
        }
    };

    StabilityReport {
        stable: margin > T::zero(),
        margin,
        approx_condition_holds: approx,
    }
}

/// Classified eigenmodes of the two-tone interface.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenmodeReport<T: Real> {
    /// Sorted by |Re lambda| ascending: dark, bright(+g0), bright(-g0).
    pub eigenvalues: [Complex<T>; 3],
    /// Im of the dark-mode eigenvalue.
    pub delta_lambda1: T,
    /// Im of the bright-mode eigenvalue with Re ~ +g0.
    pub delta_lambda2: T,
    /// Dark-mode eigenvector in the (a1, b_m, a2^dag) basis, bilinear-normalized
    /// and phase-aligned with the zero-damping dark mode.
    pub dark_mode_coeffs: Vector3<Complex<T>>,
    /// Bright-mode eigenvectors (for +g0 and -g0 respectively).
    pub bright_mode_coeffs: [Vector3<Complex<T>>; 2],
    /// |b_m component| of the dark mode, normalized so the cavity components
    /// match (sinh r, cosh r) in magnitude.
    pub mechanical_leakage: T,
}

/// Roots of the monic cubic z^3 + a2 z^2 + a1 z + a0 (Cardano + Newton polish).
pub(crate) fn cubic_roots<T: Real>(
    a2: Complex<T>,
    a1: Complex<T>,
    a0: Complex<T>,
) -> [Complex<T>; 3] {
    let one = Complex::new(T::one(), T::zero());
    let three = Complex::new(real::<T>(3.0), T::zero());
    let two = Complex::new(real::<T>(2.0), T::zero());
    // depressed cubic t^3 + p t + q with z = t - a2/3
    let shift = a2 / three;
    let p = a1 - a2 * a2 / three;
    let q = two * a2 * a2 * a2 / Complex::new(real::<T>(27.0), T::zero()) - a2 * a1 / three + a0;

    let croots = if p.modulus() == T::zero() && q.modulus() == T::zero() {
        [Complex::new(T::zero(), T::zero()); 3]
    } else {
        let disc = (q / two).powi(2) + (p / three).powi(3);
        let s = disc.sqrt();
        // pick the branch that avoids cancellation
        let c1 = -q / two + s;
        let c2 = -q / two - s;
        let u3 = if c1.modulus() >= c2.modulus() { c1 } else { c2 };
        let u = complex_cbrt(u3);
        let v = if u.modulus() > T::zero() {
            -p / (three * u)
        } else {
            Complex::new(T::zero(), T::zero())
        };
        let half = real::<T>(0.5);
        let w = Complex::new(-half, real::<T>(0.75).sqrt()); // primitive cube root of unity
        let w2 = w * w;
        [u + v, w * u + w2 * v, w2 * u + w * v]
    };

    let mut roots = [Complex::new(T::zero(), T::zero()); 3];
    for (i, t) in croots.iter().enumerate() {
        let mut z = t - shift;
        // Newton polish
        for _ in 0..3 {
            let f = ((z + a2) * z + a1) * z + a0;
            let df = three * z * z + two * a2 * z + a1;
            if df.modulus() > T::zero() {
                z -= f / df;
            }
        }
        roots[i] = z;
        let _ = one;
    }
    roots
}

fn complex_cbrt<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.modulus() == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    (z.ln() / Complex::new(real::<T>(3.0), T::zero())).exp()
}

/// Eigenvalues of a 3x3 complex matrix via its characteristic polynomial.
pub(crate) fn eigenvalues3<T: Real>(m: &Matrix3<Complex<T>>) -> [Complex<T>; 3] {
    let tr = m[(0, 0)] + m[(1, 1)] + m[(2, 2)];
    let minor = |i: usize, j: usize, k: usize, l: usize| m[(i, i)] * m[(j, j)] - m[(k, l)] * m[(l, k)];
    // sum of principal 2x2 minors
    let c = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)])
        + (m[(0, 0)] * m[(2, 2)] - m[(0, 2)] * m[(2, 0)])
        + (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)]);
    let _ = minor;
    let det = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]);
    cubic_roots(-tr, c, -det)
}

/// Null vector of (M - lambda I) via the largest cross product of two rows.
pub(crate) fn eigenvector3<T: Real>(
    m: &Matrix3<Complex<T>>,
    lambda: Complex<T>,
) -> Vector3<Complex<T>> {
    let mut b = *m;
    for i in 0..3 {
        b[(i, i)] -= lambda;
    }
    let row = |i: usize| Vector3::new(b[(i, 0)], b[(i, 1)], b[(i, 2)]);
    let cross = |u: &Vector3<Complex<T>>, v: &Vector3<Complex<T>>| {
        Vector3::new(
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )
    };
    let r = [row(0), row(1), row(2)];
    let cands = [cross(&r[0], &r[1]), cross(&r[0], &r[2]), cross(&r[1], &r[2])];
    let mut best = cands[0];
    for c in &cands[1..] {
        if c.norm() > best.norm() {
            best = *c;
        }
    }
    best
}

/// Analytic zero-damping eigenmode coefficients in the (a1, b_m, a2^dag)
/// basis, bilinear-normalized (v^T v = 1): dark, bright(+g0), bright(-g0).
pub(crate) fn analytic_modes<T: Real>(r: T) -> [Vector3<Complex<T>>; 3] {
    let ch = r.cosh();
    let sh = r.sinh();
    let z = T::zero();
    let sq = real::<T>(0.5).sqrt();
    let c = |re: T, im: T| Complex::new(re, im);
    [
        // alpha_1 = beta_2^dag = -i sinh(r) a1 + cosh(r) a2^dag
        Vector3::new(c(z, -sh), c(z, z), c(ch, z)),
        // alpha_2 = (beta_1 + b_m)/sqrt(2)
        Vector3::new(c(ch * sq, z), c(sq, z), c(z, sh * sq)),
        // alpha_3 = (beta_1 - b_m)/sqrt(2)
        Vector3::new(c(ch * sq, z), c(-sq, z), c(z, sh * sq)),
    ]
}

/// Numerically diagonalize M and classify dark/bright modes by overlap with
/// the analytic zero-damping modes.
pub fn eigenmode_analysis<T: Real>(model: &InterfaceModel<T>) -> Result<EigenmodeReport<T>> {
    if model.variant != Variant::TwoToneSqueezing {
        return Err(Error::InvalidParameter(
            "eigenmode analysis requires the TwoToneSqueezing variant".into(),
        ));
    }
    let r = model
        .squeezing_parameter()
        .ok_or_else(|| Error::InvalidParameter("eigenmode analysis requires g1 > g2".into()))?;
    let g0 = model.g0().expect("g1 > g2 checked above");

    let dm = dynamics_matrix(model, model.g1, model.g2);
    let eigs = eigenvalues3(&dm.m);

    // collision guard
    let tol = real::<T>(1e-9) * g0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let sep = (eigs[i] - eigs[j]).modulus();
            if sep < tol {
                return Err(Error::EigenvalueCollision {
                    separation: to_f64(sep),
                });
            }
        }
    }

    let targets = analytic_modes::<T>(r);
    // M is complex symmetric, so eigenvectors are bilinear-orthogonal; classify
    // by Hermitian overlap with the analytic modes.
    let mut vecs = [Vector3::zeros(); 3];
    for (i, l) in eigs.iter().enumerate() {
        let v = eigenvector3(&dm.m, *l);
        vecs[i] = v / Complex::new(v.norm(), T::zero());
    }
    let overlap = |v: &Vector3<Complex<T>>, w: &Vector3<Complex<T>>| -> T {
        let mut s = Complex::new(T::zero(), T::zero());
        for k in 0..3 {
            s += v[k].conj() * w[k];
        }
        s.modulus() / w.norm()
    };

    // assign each analytic mode its best matching eigenpair (greedy over all
    // 6 permutations would also do; 3x3 greedy is sufficient at the spec'd
    // collision guard)
    let mut assigned = [usize::MAX; 3]; // analytic index -> eig index
    let mut used = [false; 3];
    for a in 0..3 {
        let mut best = T::zero();
        let mut best_i = usize::MAX;
        for i in 0..3 {
            if used[i] {
                continue;
            }
            let ov = overlap(&vecs[i], &targets[a]);
            if best_i == usize::MAX || ov > best {
                best = ov;
                best_i = i;
            }
        }
        assigned[a] = best_i;
        used[best_i] = true;
    }
    // bright modes: ensure the "+g0" slot has Re > 0
    let (mut b_plus, mut b_minus) = (assigned[1], assigned[2]);
    if eigs[b_plus].re < eigs[b_minus].re {
        std::mem::swap(&mut b_plus, &mut b_minus);
    }
    let dark = assigned[0];

    // bilinear normalization v^T v = 1, phase aligned with the analytic mode
    let normalize = |v: &Vector3<Complex<T>>, target: &Vector3<Complex<T>>| -> Vector3<Complex<T>> {
        let mut bil = Complex::new(T::zero(), T::zero());
        for k in 0..3 {
            bil += v[k] * v[k];
        }
        let scale = bil.sqrt();
        let mut u = v / scale;
        // fix the sign left free by the bilinear normalization
        let mut ov = Complex::new(T::zero(), T::zero());
        for k in 0..3 {
            ov += target[k].conj() * u[k];
        }
        if ov.re < T::zero() {
            u = -u;
        }
        u
    };
    let dark_vec = normalize(&vecs[dark], &targets[0]);
    let bright_plus = normalize(&vecs[b_plus], &targets[1]);
    let bright_minus = normalize(&vecs[b_minus], &targets[2]);

    // leakage: scale so the cavity part matches (sinh r, cosh r)
    let cav_norm = (dark_vec[0].norm_sqr() + dark_vec[2].norm_sqr()).sqrt();
    let target_cav = (r.sinh() * r.sinh() + r.cosh() * r.cosh()).sqrt();
    let leakage = if cav_norm > T::zero() {
        dark_vec[1].modulus() * target_cav / cav_norm
    } else {
        dark_vec[1].modulus()
    };

    Ok(EigenmodeReport {
        eigenvalues: [eigs[dark], eigs[b_plus], eigs[b_minus]],
        delta_lambda1: eigs[dark].im,
        delta_lambda2: eigs[b_plus].im,
        dark_mode_coeffs: dark_vec,
        bright_mode_coeffs: [bright_plus, bright_minus],
        mechanical_leakage: leakage,
    })
}

/// Quadrature-basis symplectic matrix implementing (a1, a2) -> (beta1, beta2):
/// beta1 = cosh(r) a1 + i sinh(r) a2^dag, beta2 = cosh(r) a2 + i sinh(r) a1^dag.
pub fn bogoliubov_modes<T: Real>(r: T) -> Matrix4<T> {
    let ch = Complex::new(r.cosh(), T::zero());
    let ish = Complex::new(T::zero(), r.sinh());
    let z = Complex::new(T::zero(), T::zero());
    let p = Matrix2::new(ch, z, z, ch);
    let q = Matrix2::new(z, ish, ish, z);
    quadrature_matrix_from_mode_map(&p, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{is_symplectic_4, omega4};
    use approx::assert_relative_eq;
    use nalgebra::Vector6;

    fn paper_model(r: f64) -> InterfaceModel<f64> {
        InterfaceModel::two_tone(3.0, r, 0.3, 0.2, 0.001, 0.0, 0.0).unwrap()
    }

    #[test]
    fn decoupled_m_is_pure_decay() {
        let model =
            InterfaceModel::new(Variant::TwoToneSqueezing, 0.0, 0.0, 0.3, 0.2, 0.001, 0.0, 0.0)
                .unwrap();
        let dm = dynamics_matrix(&model, 0.0, 0.0);
        let expect = [-0.15, -0.0005, -0.1];
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_relative_eq!(dm.m[(i, i)].im, expect[i], epsilon = 1e-15);
                    assert_eq!(dm.m[(i, i)].re, 0.0);
                } else {
                    assert_eq!(dm.m[(i, j)].norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn m_matches_eq4_entrywise_at_paper_parameters() {
        let model = paper_model(1.0);
        let (g1, g2) = (model.g1, model.g2);
        assert_relative_eq!(g1, 4.629244, epsilon = 1e-5);
        assert_relative_eq!(g2, 3.525603, epsilon = 1e-5);
        let dm = dynamics_matrix(&model, g1, g2);
        assert_eq!(dm.m[(0, 1)], Complex::new(g1, 0.0));
        assert_eq!(dm.m[(1, 0)], Complex::new(g1, 0.0));
        assert_eq!(dm.m[(1, 2)], Complex::new(0.0, g2));
        assert_eq!(dm.m[(2, 1)], Complex::new(0.0, g2));
        assert_eq!(dm.m[(0, 2)], Complex::new(0.0, 0.0));
        assert_eq!(dm.m[(2, 0)], Complex::new(0.0, 0.0));
        assert_eq!(dm.m[(0, 0)], Complex::new(0.0, -0.15));
        assert_eq!(dm.m[(1, 1)], Complex::new(0.0, -0.0005));
        assert_eq!(dm.m[(2, 2)], Complex::new(0.0, -0.1));
    }

    #[test]
    fn zero_damping_eigenvalues_are_0_and_pm_g0() {
        for r in [0.3, 1.0, 1.7] {
            let g0 = 3.0;
            let model = InterfaceModel::two_tone(g0, r, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
            let dm = dynamics_matrix(&model, model.g1, model.g2);
            let mut eigs: Vec<_> = eigenvalues3(&dm.m).to_vec();
            eigs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
            assert_relative_eq!(eigs[0].re, -g0, epsilon = 1e-12 * g0);
            assert_relative_eq!(eigs[1].re, 0.0, epsilon = 1e-12 * g0);
            assert_relative_eq!(eigs[2].re, g0, epsilon = 1e-12 * g0);
            for e in eigs {
                assert_relative_eq!(e.im, 0.0, epsilon = 1e-12 * g0);
            }
        }
    }

    /// Independent oracle: Durand-Kerner iteration on det(M - lambda I),
    /// evaluated directly from the matrix entries.
    fn durand_kerner_eigs(m: &Matrix3<Complex<f64>>) -> Vec<Complex<f64>> {
        let det = |l: Complex<f64>| {
            let mut b = *m;
            for i in 0..3 {
                b[(i, i)] -= l;
            }
            b[(0, 0)] * (b[(1, 1)] * b[(2, 2)] - b[(1, 2)] * b[(2, 1)])
                - b[(0, 1)] * (b[(1, 0)] * b[(2, 2)] - b[(1, 2)] * b[(2, 0)])
                + b[(0, 2)] * (b[(1, 0)] * b[(2, 1)] - b[(1, 1)] * b[(2, 0)])
        };
        // det(M - lambda I) = -(lambda^3 + ...): monic version is -det
        let p = |l: Complex<f64>| -det(l);
        let mut z = vec![
            Complex::new(0.4, 0.9),
            Complex::new(0.4, 0.9).powi(2),
            Complex::new(0.4, 0.9).powi(3),
        ];
        for _ in 0..200 {
            let old = z.clone();
            for i in 0..3 {
                let mut denom = Complex::new(1.0, 0.0);
                for j in 0..3 {
                    if j != i {
                        denom *= old[i] - old[j];
                    }
                }
                z[i] = old[i] - p(old[i]) / denom;
            }
        }
        z
    }

    #[test]
    fn eigenvalues_match_durand_kerner_oracle() {
        let model = paper_model(1.0);
        let dm = dynamics_matrix(&model, model.g1, model.g2);
        let ours = eigenvalues3(&dm.m);
        let oracle = durand_kerner_eigs(&dm.m);
        for e in ours {
            let best = oracle.iter().map(|o| (o - e).norm()).fold(f64::MAX, f64::min);
            assert!(best < 1e-9, "eigenvalue {e} off oracle by {best}");
        }
    }

    #[test]
    fn m_vs_a_spectral_consistency_on_random_models() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for k in 0..100 {
            let variant = if k % 2 == 0 {
                Variant::TwoToneSqueezing
            } else {
                Variant::DoubleBeamsplitter
            };
            let model = InterfaceModel::new(
                variant,
                rng.gen_range(0.0..5.0),
                rng.gen_range(0.0..5.0),
                rng.gen_range(0.0..0.5),
                rng.gen_range(0.0..0.5),
                rng.gen_range(0.0..0.01),
                rng.gen_range(0.0..10.0),
                0.0,
            )
            .unwrap();
            let dm = dynamics_matrix(&model, model.g1, model.g2);
            let m_eigs = eigenvalues3(&dm.m);
            let a = DMatrix::from_fn(6, 6, |i, j| dm.a[(i, j)]);
            let a_eigs = a.complex_eigenvalues();
            // spec(A) must equal {-i lam, +i conj(lam)} over spec(M)
            let mut expected: Vec<Complex<f64>> = Vec::new();
            for l in m_eigs {
                expected.push(Complex::new(0.0, -1.0) * l);
                expected.push(Complex::new(0.0, 1.0) * l.conj());
            }
            let scale = expected.iter().map(|e| e.norm()).fold(1e-30, f64::max);
            for e in a_eigs.iter() {
                let best = expected.iter().map(|x| (x - e).norm()).fold(f64::MAX, f64::min);
                assert!(
                    best <= 1e-10 * scale.max(1.0),
                    "A eigenvalue {e} unmatched (best {best}) on model {k}"
                );
            }
        }
    }

    #[test]
    fn diffusion_matches_convention() {
        let model = InterfaceModel::two_tone(3.0, 1.0, 0.3, 0.2, 0.001, 1000.0, 0.0).unwrap();
        let dm = dynamics_matrix(&model, model.g1, model.g2);
        let expect = Vector6::new(0.15, 0.15, 0.001 * 2001.0 / 2.0, 0.001 * 2001.0 / 2.0, 0.1, 0.1);
        assert_relative_eq!(dm.d.diagonal(), expect, epsilon = 1e-14);
        for v in dm.d.symmetric_eigenvalues().iter() {
            assert!(*v >= 0.0);
        }
    }

    #[test]
    fn stability_at_paper_parameters() {
        let model = paper_model(1.0);
        let rep = stability_check(&model);
        assert!(rep.stable);
        assert!(rep.margin > 0.0);
        // coth^2(1) = 1.724... > 1.5
        assert!(rep.approx_condition_holds);
        let coth2 = (1.0f64 / 1.0f64.tanh()).powi(2);
        assert!(coth2 > 1.5 && (coth2 - 1.7240).abs() < 1e-3);
    }

    #[test]
    fn stability_equal_couplings_fails_approx() {
        let model =
            InterfaceModel::new(Variant::TwoToneSqueezing, 2.0, 2.0, 0.3, 0.3, 0.001, 0.0, 0.0)
                .unwrap();
        let rep = stability_check(&model);
        assert!(!rep.approx_condition_holds);
    }

    #[test]
    fn stability_pure_beamsplitter_is_passive() {
        let model =
            InterfaceModel::new(Variant::TwoToneSqueezing, 2.0, 0.0, 0.3, 0.2, 0.001, 0.0, 0.0)
                .unwrap();
        let rep = stability_check(&model);
        assert!(rep.stable);
        assert!(rep.approx_condition_holds);
    }

    #[test]
    fn stability_degenerate_undamped_is_marginal() {
        let model =
            InterfaceModel::new(Variant::TwoToneSqueezing, 3.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
                .unwrap();
        let rep = stability_check(&model);
        assert!(rep.margin <= 1e-12);
        assert!(!rep.stable);
    }

    #[test]
    fn eigenmodes_zero_damping() {
        let r = 0.8;
        let model = InterfaceModel::two_tone(3.0, r, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let rep = eigenmode_analysis(&model).unwrap();
        assert_relative_eq!(rep.delta_lambda1, 0.0, epsilon = 1e-12);
        assert_relative_eq!(rep.delta_lambda2, 0.0, epsilon = 1e-12);
        assert_relative_eq!(rep.mechanical_leakage, 0.0, epsilon = 1e-10);
        // dark mode proportional to (sinh r, 0, cosh r) up to phase
        let v = rep.dark_mode_coeffs;
        assert_relative_eq!(v[1].norm(), 0.0, epsilon = 1e-10);
        assert_relative_eq!(v[0].norm() / v[2].norm(), r.tanh(), epsilon = 1e-10);
        // eigenvalues {0, +g0, -g0}
        assert_relative_eq!(rep.eigenvalues[0].norm(), 0.0, epsilon = 1e-10);
        assert_relative_eq!(rep.eigenvalues[1].re, 3.0, epsilon = 1e-10);
        assert_relative_eq!(rep.eigenvalues[2].re, -3.0, epsilon = 1e-10);
    }

    #[test]
    fn delta_lambda_trends_with_r() {
        // kappa1 > kappa2: |delta_lambda1| -> 0 as r grows
        // stay below the instability threshold r = atanh(sqrt(2/3))
        let mut prev = f64::MAX;
        for i in 1..=7 {
            let r = 0.15 * i as f64;
            let model = InterfaceModel::two_tone(3.0, r, 0.3, 0.2, 0.001, 0.0, 0.0).unwrap();
            let rep = eigenmode_analysis(&model).unwrap();
            let d1 = rep.delta_lambda1.abs();
            assert!(d1 <= prev + 1e-12, "|dl1| not decreasing at r={r}");
            prev = d1;
        }
        // kappa2 > kappa1: |delta_lambda2| -> 0 as r grows
        // stay below the instability threshold r = atanh(sqrt(2/3))
        let mut prev = f64::MAX;
        for i in 1..=7 {
            let r = 0.15 * i as f64;
            let model = InterfaceModel::two_tone(3.0, r, 0.2, 0.3, 0.001, 0.0, 0.0).unwrap();
            let rep = eigenmode_analysis(&model).unwrap();
            let d2 = rep.delta_lambda2.abs();
            assert!(d2 <= prev + 1e-12, "|dl2| not decreasing at r={r}");
            prev = d2;
        }
    }

    #[test]
    fn mechanical_leakage_scales_linearly_in_damping() {
        let base = paper_model(1.0);
        let mut ratios = Vec::new();
        for eps in [1e-3, 1e-2, 1e-1] {
            let m = base.scaled_damping(eps);
            let rep = eigenmode_analysis(&m).unwrap();
            ratios.push((eps, rep.mechanical_leakage));
        }
        // fit exponent over the epsilon sweep
        let (e0, l0) = ratios[0];
        let (e2, l2) = ratios[2];
        let slope = (l2.ln() - l0.ln()) / (e2.ln() - e0.ln());
        assert!(
            (0.9..=1.1).contains(&slope),
            "leakage scaling exponent {slope} outside [0.9, 1.1]"
        );
    }

    #[test]
    fn bogoliubov_identity_at_r0_and_symplectic() {
        let s = bogoliubov_modes(0.0f64);
        assert_relative_eq!(s, Matrix4::identity(), epsilon = 1e-14);
        for r in [0.2, 1.0, 2.3] {
            let s = bogoliubov_modes(r);
            assert!(is_symplectic_4(&s, 1e-12));
            let om = omega4::<f64>();
            assert_relative_eq!(s * om * s.transpose(), om, epsilon = 1e-12);
        }
    }

    #[test]
    fn schedule_helpers() {
        let s = CouplingSchedule::beamsplitter_resonant(3.0f64, 4).unwrap();
        match s.kind {
            ScheduleKind::BeamsplitterSwap { g0, lambda } => {
                assert_relative_eq!(lambda, 3.0 / 16.0, epsilon = 1e-15);
                assert_relative_eq!(g0, 3.0, epsilon = 1e-15);
            }
            _ => panic!("wrong kind"),
        }
        assert_relative_eq!(
            s.t_final,
            std::f64::consts::PI / (4.0 * 3.0 / 16.0),
            epsilon = 1e-15
        );
        let (g1, g2) = s.couplings_at(0.0);
        assert_relative_eq!(g1, 0.0, epsilon = 1e-15);
        assert_relative_eq!(g2, -3.0, epsilon = 1e-15);
        assert!(!s.adiabaticity_marginal());
        let fast = CouplingSchedule::adiabatic_squeeze(3.0f64, 0.5, 1.0).unwrap();
        assert!(fast.adiabaticity_marginal());
    }

    #[test]
    fn negative_rates_rejected() {
        assert!(
            InterfaceModel::new(Variant::TwoToneSqueezing, 1.0, 0.0, -0.1, 0.2, 0.0, 0.0, 0.0)
                .is_err()
        );
        assert!(CouplingSchedule::constant(1.0f64, 0.0, 0.0).is_err());
    }
}
