//! Truncated Fock-space (number-state) simulation of the full master
//! equation. This is the non-Gaussian reference implementation used to
//! cross-check the covariance propagator and to compute discrete-state
//! figures of merit (fidelity, negativity of the two-cavity state).

use nalgebra::{Complex, ComplexField, DMatrix, Matrix3, Matrix6, Vector6};

use crate::error::{Error, Result};
use crate::gaussian::CovarianceState;
use crate::model::{CouplingSchedule, InterfaceModel, Variant};
use crate::real::{real, to_f64, Real};

/// Hard cap on the total Hilbert-space dimension d1*dm*d2.
pub const DIMENSION_CAP: usize = 20_000;

/// Top-level population above which the truncation is flagged unreliable.
pub const LEAKAGE_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockConfig {
    /// Levels per mode, order (cavity 1, mechanics, cavity 2).
    pub dims: (usize, usize, usize),
}

impl FockConfig {
    pub fn new(dims: (usize, usize, usize)) -> Result<Self> {
        let (d1, dm, d2) = dims;
        if d1 < 2 || dm < 2 || d2 < 2 {
            return Err(Error::InvalidParameter(
                "each mode needs at least 2 levels".into(),
            ));
        }
        let dim = d1 * dm * d2;
        if dim > DIMENSION_CAP {
            return Err(Error::DimensionCap {
                dim,
                cap: DIMENSION_CAP,
            });
        }
        Ok(Self { dims })
    }

    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1 * self.dims.2
    }

    fn index(&self, n1: usize, nm: usize, n2: usize) -> usize {
        (n1 * self.dims.1 + nm) * self.dims.2 + n2
    }
}

#[derive(Debug, Clone)]
pub struct FockState<T: Real> {
    pub rho: DMatrix<Complex<T>>,
    pub t: T,
    pub config: FockConfig,
    /// Sticky flag: the trajectory visited states with significant top-level
    /// population, so observables may be truncation-limited.
    pub truncation_unreliable: bool,
}

impl<T: Real> FockState<T> {
    pub fn new(rho: DMatrix<Complex<T>>, t: T, config: FockConfig) -> Result<Self> {
        let dim = config.dim();
        if rho.nrows() != dim || rho.ncols() != dim {
            return Err(Error::InvalidParameter(format!(
                "density matrix is {}x{}, expected {dim}x{dim}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let tr: Complex<T> = rho.diagonal().sum();
        if (tr.re - T::one()).abs() > real(1e-9) || tr.im.abs() > real(1e-9) {
            return Err(Error::NonPhysical(format!(
                "density matrix trace {} + {}i is not 1",
                to_f64(tr.re),
                to_f64(tr.im)
            )));
        }
        let herm_dev = (&rho - rho.adjoint()).camax();
        if herm_dev > real(1e-9) {
            return Err(Error::NonPhysical(format!(
                "density matrix is not Hermitian (deviation {})",
                to_f64(herm_dev)
            )));
        }
        Ok(Self {
            rho,
            t,
            config,
            truncation_unreliable: false,
        })
    }

    /// |0,0,0><0,0,0|.
    pub fn vacuum(config: FockConfig) -> Result<Self> {
        Self::number(config, (0, 0, 0))
    }

    /// Product number state |n1, nm, n2>.
    pub fn number(config: FockConfig, ns: (usize, usize, usize)) -> Result<Self> {
        let (d1, dm, d2) = config.dims;
        if ns.0 >= d1 || ns.1 >= dm || ns.2 >= d2 {
            return Err(Error::InvalidParameter(format!(
                "number state {ns:?} outside dims {:?}",
                config.dims
            )));
        }
        let dim = config.dim();
        let mut rho = DMatrix::zeros(dim, dim);
        let i = config.index(ns.0, ns.1, ns.2);
        rho[(i, i)] = Complex::new(T::one(), T::zero());
        Self::new(rho, T::zero(), config)
    }

    /// Cavity number states with the mechanics in a thermal state at
    /// occupation n0.
    pub fn cavity_fock_mech_thermal(
        config: FockConfig,
        n1: usize,
        n2: usize,
        n0: T,
    ) -> Result<Self> {
        let (d1, dm, d2) = config.dims;
        if n1 >= d1 || n2 >= d2 {
            return Err(Error::InvalidParameter("cavity occupation outside dims".into()));
        }
        if n0 < T::zero() {
            return Err(Error::InvalidParameter("n0 must be nonnegative".into()));
        }
        // p_n = n0^n / (n0+1)^(n+1), renormalized over the kept levels
        let mut probs = vec![T::zero(); dm];
        let ratio = n0 / (n0 + T::one());
        let mut p = T::one() / (n0 + T::one());
        let mut total = T::zero();
        for q in probs.iter_mut() {
            *q = p;
            total += p;
            p *= ratio;
        }
        let dim = config.dim();
        let mut rho = DMatrix::zeros(dim, dim);
        for (nm, q) in probs.iter().enumerate() {
            let i = config.index(n1, nm, n2);
            rho[(i, i)] = Complex::new(*q / total, T::zero());
        }
        Self::new(rho, T::zero(), config)
    }

    pub fn trace(&self) -> Complex<T> {
        self.rho.diagonal().sum()
    }

    /// Total population in basis states where any mode sits at its top level.
    pub fn top_level_population(&self) -> T {
        let (d1, dm, d2) = self.config.dims;
        let mut pop = T::zero();
        for n1 in 0..d1 {
            for nm in 0..dm {
                for n2 in 0..d2 {
                    if n1 == d1 - 1 || nm == dm - 1 || n2 == d2 - 1 {
                        let i = self.config.index(n1, nm, n2);
                        pop += self.rho[(i, i)].re;
                    }
                }
            }
        }
        pop
    }

    /// <n1 + nm + n2>.
    pub fn total_excitation(&self) -> T {
        let (d1, dm, d2) = self.config.dims;
        let mut tot = T::zero();
        for n1 in 0..d1 {
            for nm in 0..dm {
                for n2 in 0..d2 {
                    let i = self.config.index(n1, nm, n2);
                    tot += self.rho[(i, i)].re * real((n1 + nm + n2) as f64);
                }
            }
        }
        tot
    }
}

/// Triplet-list sparse operator; ladder operators and their products have
/// O(dim) entries, so all superoperator applications stay O(dim^2).
#[derive(Debug, Clone)]
pub(crate) struct SparseOp<T: Real> {
    dim: usize,
    entries: Vec<(usize, usize, Complex<T>)>,
}

impl<T: Real> SparseOp<T> {
    fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    fn dagger(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|&(r, c, v)| (c, r, v.conj()))
                .collect(),
        }
    }

    fn add(&mut self, other: &Self, factor: Complex<T>) {
        for &(r, c, v) in &other.entries {
            self.entries.push((r, c, v * factor));
        }
    }

    /// out += factor * self * rho
    fn left_mul_into(
        &self,
        rho: &DMatrix<Complex<T>>,
        out: &mut DMatrix<Complex<T>>,
        factor: Complex<T>,
    ) {
        for &(r, k, v) in &self.entries {
            let f = v * factor;
            for c in 0..self.dim {
                out[(r, c)] += f * rho[(k, c)];
            }
        }
    }

    /// out += factor * rho * self
    fn right_mul_into(
        &self,
        rho: &DMatrix<Complex<T>>,
        out: &mut DMatrix<Complex<T>>,
        factor: Complex<T>,
    ) {
        for &(k, c, v) in &self.entries {
            let f = v * factor;
            for r in 0..self.dim {
                out[(r, c)] += rho[(r, k)] * f;
            }
        }
    }

    /// tr(self * mat)
    fn trace_with(&self, mat: &DMatrix<Complex<T>>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for &(r, k, v) in &self.entries {
            acc += v * mat[(k, r)];
        }
        acc
    }

    /// Diagonal of self^dag self (exact for operators with at most one entry
    /// per column, which holds for ladder operators and is all we use).
    fn number_diagonal(&self) -> Vec<T> {
        let mut diag = vec![T::zero(); self.dim];
        for &(_, c, v) in &self.entries {
            diag[c] += v.norm_sqr();
        }
        diag
    }
}

/// Annihilation operator for mode 0, 1 or 2 (cavity 1, mechanics, cavity 2).
fn annihilation<T: Real>(config: &FockConfig, mode: usize) -> SparseOp<T> {
    let (d1, dm, d2) = config.dims;
    let mut op = SparseOp::zeros(config.dim());
    for n1 in 0..d1 {
        for nm in 0..dm {
            for n2 in 0..d2 {
                let n = [n1, nm, n2][mode];
                if n == 0 {
                    continue;
                }
                let col = config.index(n1, nm, n2);
                let mut lower = [n1, nm, n2];
                lower[mode] -= 1;
                let row = config.index(lower[0], lower[1], lower[2]);
                op.entries
                    .push((row, col, Complex::new(real::<T>(n as f64).sqrt(), T::zero())));
            }
        }
    }
    op
}

struct Dissipator<T: Real> {
    op: SparseOp<T>,
    op_dag: SparseOp<T>,
    number_diag: Vec<T>,
    rate: T,
}

struct OpSet<T: Real> {
    dim: usize,
    /// a1^dag b + b^dag a1
    h1: SparseOp<T>,
    /// variant-dependent second coupling term (see `build_ops`)
    h2: SparseOp<T>,
    dissipators: Vec<Dissipator<T>>,
}

fn build_ops<T: Real>(model: &InterfaceModel<T>, config: &FockConfig) -> OpSet<T> {
    let a1 = annihilation::<T>(config, 0);
    let b = annihilation::<T>(config, 1);
    let a2 = annihilation::<T>(config, 2);
    let one = Complex::new(T::one(), T::zero());
    let i_unit = Complex::new(T::zero(), T::one());

    // a1^dag b + h.c.
    let a1dag_b = compose(&a1.dagger(), &b);
    let mut h1 = SparseOp::zeros(config.dim());
    h1.add(&a1dag_b, one);
    h1.add(&a1dag_b.dagger(), one);

    let mut h2 = SparseOp::zeros(config.dim());
    match model.variant {
        Variant::TwoToneSqueezing => {
            // i (a2^dag b^dag - a2 b)
            let a2dag_bdag = compose(&a2.dagger(), &b.dagger());
            h2.add(&a2dag_bdag, i_unit);
            h2.add(&a2dag_bdag.dagger(), -i_unit);
        }
        Variant::DoubleBeamsplitter => {
            let a2dag_b = compose(&a2.dagger(), &b);
            h2.add(&a2dag_b, one);
            h2.add(&a2dag_b.dagger(), one);
        }
    }

    let mut dissipators = Vec::new();
    let mut push = |op: SparseOp<T>, rate: T| {
        if rate > T::zero() {
            dissipators.push(Dissipator {
                op_dag: op.dagger(),
                number_diag: op.number_diagonal(),
                op,
                rate,
            });
        }
    };
    push(a1, model.kappa1);
    push(a2, model.kappa2);
    push(b.clone(), model.gamma_m * (model.n_th + T::one()));
    push(b.dagger(), model.gamma_m * model.n_th);

    OpSet {
        dim: config.dim(),
        h1,
        h2,
        dissipators,
    }
}

/// Product of two ladder-type sparse operators (still O(dim) entries).
fn compose<T: Real>(a: &SparseOp<T>, b: &SparseOp<T>) -> SparseOp<T> {
    // index b's entries by row for the contraction sum_k a[r,k] b[k,c]
    let mut by_row: Vec<Vec<(usize, Complex<T>)>> = vec![Vec::new(); b.dim];
    for &(r, c, v) in &b.entries {
        by_row[r].push((c, v));
    }
    let mut out = SparseOp::zeros(a.dim);
    for &(r, k, va) in &a.entries {
        for &(c, vb) in &by_row[k] {
            out.entries.push((r, c, va * vb));
        }
    }
    out
}

fn lindblad_rhs<T: Real>(
    rho: &DMatrix<Complex<T>>,
    g1: T,
    g2: T,
    ops: &OpSet<T>,
    scratch: &mut DMatrix<Complex<T>>,
) -> DMatrix<Complex<T>> {
    let dim = ops.dim;
    let mut out = DMatrix::zeros(dim, dim);
    let half = real::<T>(0.5);

    // -i [g1 H1 + g2 H2, rho]
    for (h, g) in [(&ops.h1, g1), (&ops.h2, g2)] {
        if g == T::zero() {
            continue;
        }
        let mi_g = Complex::new(T::zero(), -g);
        h.left_mul_into(rho, &mut out, mi_g);
        h.right_mul_into(rho, &mut out, -mi_g);
    }

    for d in &ops.dissipators {
        // rate * L rho L^dag
        scratch.fill(Complex::new(T::zero(), T::zero()));
        d.op.left_mul_into(rho, scratch, Complex::new(T::one(), T::zero()));
        d.op_dag
            .right_mul_into(scratch, &mut out, Complex::new(d.rate, T::zero()));
        // -rate/2 {L^dag L, rho}; L^dag L is diagonal
        for c in 0..dim {
            for r in 0..dim {
                let w = (d.number_diag[r] + d.number_diag[c]) * d.rate * half;
                out[(r, c)] -= rho[(r, c)] * Complex::new(w, T::zero());
            }
        }
    }
    out
}

/// Integrate the master equation through every grid time; the grid must
/// start at `state.t` and be strictly increasing. Returns the state at each
/// grid point (the first entry is the initial state).
pub fn lindblad_evolve<T: Real>(
    state: &FockState<T>,
    model: &InterfaceModel<T>,
    schedule: &CouplingSchedule<T>,
    t_grid: &[T],
) -> Result<Vec<FockState<T>>> {
    if t_grid.is_empty() || (t_grid[0] - state.t).abs() > real(1e-12) {
        return Err(Error::InvalidParameter(
            "time grid must start at the state time".into(),
        ));
    }
    for w in t_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidParameter(
                "time grid must be strictly increasing".into(),
            ));
        }
    }

    let ops = build_ops(model, &state.config);
    let t0 = t_grid[0];
    let tf = *t_grid.last().unwrap();
    let rate_max = model
        .kappa1
        .max(model.kappa2)
        .max(model.gamma_m * (real::<T>(2.0) * model.n_th + T::one()))
        .max(schedule.max_coupling_on(t0, tf))
        .max(real(1e-12));
    let h_max = real::<T>(0.02) / rate_max;

    let dim = state.config.dim();
    let mut scratch = DMatrix::zeros(dim, dim);
    let mut rho = state.rho.clone();
    let mut t = state.t;
    let mut unreliable = state.truncation_unreliable;

    let mut out = Vec::with_capacity(t_grid.len());
    out.push(FockState {
        rho: rho.clone(),
        t,
        config: state.config,
        truncation_unreliable: unreliable,
    });

    let two = real::<T>(2.0);
    let six = real::<T>(6.0);
    for &t_next in &t_grid[1..] {
        let span = t_next - t;
        let n_steps = (to_f64(span / h_max)).ceil().max(1.0) as usize;
        let h = span / real(n_steps as f64);
        for _ in 0..n_steps {
            let gs = |tt: T| schedule.couplings_at(tt);
            let (g1a, g2a) = gs(t);
            let (g1b, g2b) = gs(t + h / two);
            let (g1c, g2c) = gs(t + h);
            let k1 = lindblad_rhs(&rho, g1a, g2a, &ops, &mut scratch);
            let k2 = lindblad_rhs(
                &(&rho + &k1 * Complex::new(h / two, T::zero())),
                g1b,
                g2b,
                &ops,
                &mut scratch,
            );
            let k3 = lindblad_rhs(
                &(&rho + &k2 * Complex::new(h / two, T::zero())),
                g1b,
                g2b,
                &ops,
                &mut scratch,
            );
            let k4 = lindblad_rhs(
                &(&rho + &k3 * Complex::new(h, T::zero())),
                g1c,
                g2c,
                &ops,
                &mut scratch,
            );
            rho += (k1 + k2 * Complex::new(two, T::zero()) + k3 * Complex::new(two, T::zero())
                + k4)
                * Complex::new(h / six, T::zero());
            t += h;
        }
        t = t_next;
        // re-Hermitize to remove accumulated floating-point skew
        let herm = (&rho + rho.adjoint()) * Complex::new(real::<T>(0.5), T::zero());
        rho = herm;

        let tr: Complex<T> = rho.diagonal().sum();
        if !tr.re.is_finite() || (tr.re - T::one()).abs() > real(1e-4) {
            return Err(Error::Divergence { t: to_f64(t) });
        }
        let probe = FockState {
            rho: rho.clone(),
            t,
            config: state.config,
            truncation_unreliable: unreliable,
        };
        if to_f64(probe.top_level_population()) > LEAKAGE_THRESHOLD {
            unreliable = true;
        }
        let mut rec = probe;
        rec.truncation_unreliable = unreliable;
        out.push(rec);
    }
    Ok(out)
}

/// Symmetrized quadrature covariance from a ladder-operator moment matrix
/// <c_i c_j> in the ordering (a1, a1^dag, b, b^dag, a2, a2^dag) with zero
/// first moments.
pub fn quadrature_covariance_from_ladder_moments<T: Real>(
    mom: &Matrix6<Complex<T>>,
) -> Matrix6<T> {
    let s = Complex::new(real::<T>(0.5).sqrt(), T::zero());
    let mi = Complex::new(T::zero(), -T::one()) * s;
    let pi_ = Complex::new(T::zero(), T::one()) * s;
    let mut l = Matrix6::<Complex<T>>::zeros();
    for m in 0..3 {
        l[(2 * m, 2 * m)] = s;
        l[(2 * m, 2 * m + 1)] = s;
        l[(2 * m + 1, 2 * m)] = mi;
        l[(2 * m + 1, 2 * m + 1)] = pi_;
    }
    let q = l * mom * l.transpose();
    let mut out = Matrix6::zeros();
    let half = real::<T>(0.5);
    for i in 0..6 {
        for j in 0..6 {
            out[(i, j)] = (q[(i, j)].re + q[(j, i)].re) * half;
        }
    }
    out
}

/// Gaussian summary (first and symmetrized second quadrature moments) of a
/// Fock-space state; the truncation flag stays on the Fock state.
pub fn covariance_from_fock<T: Real>(state: &FockState<T>) -> Result<CovarianceState<T>> {
    let c_ops: [SparseOp<T>; 6] = {
        let a1 = annihilation::<T>(&state.config, 0);
        let b = annihilation::<T>(&state.config, 1);
        let a2 = annihilation::<T>(&state.config, 2);
        [
            a1.clone(),
            a1.dagger(),
            b.clone(),
            b.dagger(),
            a2.clone(),
            a2.dagger(),
        ]
    };
    let mut first = [Complex::new(T::zero(), T::zero()); 6];
    for (i, op) in c_ops.iter().enumerate() {
        first[i] = op.trace_with(&state.rho);
    }
    let dim = state.config.dim();
    let mut mom = Matrix6::<Complex<T>>::zeros();
    for (j, opj) in c_ops.iter().enumerate() {
        // B = c_j rho; then <c_i c_j> = tr(rho c_i c_j) = tr(c_i B)
        let mut b_mat = DMatrix::zeros(dim, dim);
        opj.left_mul_into(&state.rho, &mut b_mat, Complex::new(T::one(), T::zero()));
        for (i, opi) in c_ops.iter().enumerate() {
            mom[(i, j)] = opi.trace_with(&b_mat) - first[i] * first[j];
        }
    }
    let sigma = quadrature_covariance_from_ladder_moments(&mom);
    let s = real::<T>(0.5).sqrt();
    let mut mean = Vector6::zeros();
    for m in 0..3 {
        mean[2 * m] = (first[2 * m] + first[2 * m + 1]).re * s;
        mean[2 * m + 1] = ((first[2 * m] - first[2 * m + 1]) * Complex::new(T::zero(), -T::one()))
            .re
            * s;
    }
    CovarianceState::new(sigma, mean, state.t)
}

/// Discrete-state figures of merit of the reduced two-cavity state against
/// the single-photon Bell states (|1,0> +- |0,1>)/sqrt(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteEntanglement<T: Real> {
    /// Logarithmic negativity of the reduced two-cavity state.
    pub e_n: T,
    pub fidelity_plus: T,
    pub fidelity_minus: T,
    /// Fidelities renormalized within the single-excitation subspace
    /// span{|1,0>, |0,1>}; insensitive to photon loss to vacuum.
    pub conditional_fidelity_plus: T,
    pub conditional_fidelity_minus: T,
    /// Probability weight of the single-excitation subspace.
    pub single_excitation_weight: T,
}

/// Reduced two-cavity density matrix, mechanics traced out; index (n1*d2+n2).
pub fn reduced_cavity_state<T: Real>(state: &FockState<T>) -> DMatrix<Complex<T>> {
    let (d1, dm, d2) = state.config.dims;
    let dc = d1 * d2;
    let mut out = DMatrix::zeros(dc, dc);
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for j1 in 0..d1 {
                for j2 in 0..d2 {
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for m in 0..dm {
                        acc += state.rho[(
                            state.config.index(i1, m, i2),
                            state.config.index(j1, m, j2),
                        )];
                    }
                    out[(i1 * d2 + i2, j1 * d2 + j2)] = acc;
                }
            }
        }
    }
    out
}

pub fn discrete_entanglement<T: Real>(state: &FockState<T>) -> Result<DiscreteEntanglement<T>> {
    let (d1, _, d2) = state.config.dims;
    let rho_c = reduced_cavity_state(state);
    let dc = d1 * d2;

    // partial transpose on cavity 2
    let mut pt = DMatrix::zeros(dc, dc);
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for j1 in 0..d1 {
                for j2 in 0..d2 {
                    pt[(i1 * d2 + j2, j1 * d2 + i2)] = rho_c[(i1 * d2 + i2, j1 * d2 + j2)];
                }
            }
        }
    }
    let eig = pt.symmetric_eigen();
    let mut trace_norm = T::zero();
    for ev in eig.eigenvalues.iter() {
        trace_norm += ev.abs();
    }
    let e_n = to_f64(trace_norm).log2().max(0.0);

    let i10 = d2; // |1,0>
    let i01 = 1; // |0,1>
    let p10 = rho_c[(i10, i10)].re;
    let p01 = rho_c[(i01, i01)].re;
    let coh = rho_c[(i10, i01)].re;
    let half = real::<T>(0.5);
    let f_plus = (p10 + p01) * half + coh;
    let f_minus = (p10 + p01) * half - coh;
    let weight = p10 + p01;
    let (cf_plus, cf_minus) = if weight > real(1e-12) {
        (f_plus / weight, f_minus / weight)
    } else {
        (T::zero(), T::zero())
    };
    Ok(DiscreteEntanglement {
        e_n: real(e_n),
        fidelity_plus: f_plus,
        fidelity_minus: f_minus,
        conditional_fidelity_plus: cf_plus,
        conditional_fidelity_minus: cf_minus,
        single_excitation_weight: weight,
    })
}

/// Heisenberg-picture propagator of the lossless single-excitation sector
/// for double-beamsplitter couplings: a(t_f) = W a(0) on (a1, b, a2).
pub fn single_excitation_propagator<T: Real>(
    schedule: &CouplingSchedule<T>,
) -> Matrix3<Complex<T>> {
    let g_max = schedule.max_coupling_on(T::zero(), schedule.t_final).max(real(1e-12));
    let n_steps = (to_f64(schedule.t_final * g_max) / 0.002).ceil().max(8.0) as usize;
    let h = schedule.t_final / real(n_steps as f64);
    let two = real::<T>(2.0);
    let six = real::<T>(6.0);
    let ham = |tt: T| -> Matrix3<Complex<T>> {
        let (g1, g2) = schedule.couplings_at(tt);
        let z = Complex::new(T::zero(), T::zero());
        let c1 = Complex::new(g1, T::zero());
        let c2 = Complex::new(g2, T::zero());
        Matrix3::new(z, c1, z, c1, z, c2, z, c2, z)
    };
    let mut w = Matrix3::<Complex<T>>::identity();
    let mut t = T::zero();
    let mi = Complex::new(T::zero(), -T::one());
    for _ in 0..n_steps {
        let k1 = ham(t) * w * mi;
        let k2 = ham(t + h / two) * (w + k1 * Complex::new(h / two, T::zero())) * mi;
        let k3 = ham(t + h / two) * (w + k2 * Complex::new(h / two, T::zero())) * mi;
        let k4 = ham(t + h) * (w + k3 * Complex::new(h, T::zero())) * mi;
        w += (k1 + k2 * Complex::new(two, T::zero()) + k3 * Complex::new(two, T::zero()) + k4)
            * Complex::new(h / six, T::zero());
        t += h;
    }
    w
}

/// Maximum entrywise deviation of the lossless single-excitation propagator
/// from the ideal discrete-beamsplitter map at resonance parameter n:
/// (a1, a2)(t_f) = 1/sqrt(2) [[1, -1], [1, 1]] (a1, (-1)^n a2)(0),
/// plus any residual mechanical admixture.
pub fn beamsplitter_transfer_check<T: Real>(schedule: &CouplingSchedule<T>, n: u32) -> Result<T> {
    let w = single_excitation_propagator(schedule);
    let s = real::<T>(0.5).sqrt();
    let parity = if n % 2 == 0 { T::one() } else { -T::one() };
    // target cavity block on (a1, a2)
    let target = [[s, -s * parity], [s, s * parity]];
    let idx = [0usize, 2usize];
    let mut dev = T::zero();
    for (ri, &r) in idx.iter().enumerate() {
        for (ci, &c) in idx.iter().enumerate() {
            let d = (w[(r, c)] - Complex::new(target[ri][ci], T::zero())).modulus();
            dev = dev.max(d);
        }
        // mechanical admixture in the cavity rows
        dev = dev.max(w[(r, 1)].modulus());
    }
    Ok(dev)
}
