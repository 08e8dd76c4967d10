//! Brute-force density-matrix swap test.
//!
//! This module is deliberately naive: it builds `ρ ⊗ σ`, the explicit
//! `d² × d²` swap permutation, projects, and partial-traces. It shares no code
//! with the closed-form [`gadget`](crate::gadget) and
//! [`recurrence`](crate::recurrence) modules and is used to certify them.

mod sweep;

pub use sweep::{oracle_sweep, SweepReport};

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_closed, Error, Result};
use crate::types::Seed;

pub type C64 = Complex<f64>;

/// Largest dimension the oracle accepts; `ρ ⊗ σ` is `d² × d²`.
pub const MAX_DIM: usize = 16;

/// Tolerance used by every validity check in this module.
pub const TOL: f64 = 1e-12;

fn check_dim(d: usize) -> Result<usize> {
    if d < 2 {
        Err(Error::InvalidDimension(d as u64))
    } else if d > MAX_DIM {
        Err(Error::DimensionCap { d, cap: MAX_DIM })
    } else {
        Ok(d)
    }
}

/// Unit vector in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<C64>,
}

impl PureState {
    pub fn new(amplitudes: DVector<C64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "state vector has norm {norm}"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(d: usize, index: usize) -> Result<Self> {
        check_dim(d)?;
        let mut v = DVector::zeros(d);
        v[index] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.amplitudes.dotc(&other.amplitudes).norm_sqr()
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix {
            entries: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

/// Normalized i.i.d. complex Gaussian vector (unitarily invariant).
pub fn random_pure_state(d: usize, seed: Seed) -> Result<PureState> {
    check_dim(d)?;
    let mut rng = seed.rng();
    let v = DVector::from_fn(d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = v.norm();
    Ok(PureState {
        amplitudes: v.unscale(norm),
    })
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// `R`'s diagonal folded back into `Q`.
pub fn random_unitary(d: usize, seed: Seed) -> Result<DMatrix<C64>> {
    check_dim(d)?;
    let mut rng = seed.rng();
    let g = DMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    Ok(q)
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and spectrum, each within [`TOL`].
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::InvalidDensityMatrix("matrix is not square".into()));
        }
        check_dim(entries.nrows())?;
        let herm_err = (&entries - entries.adjoint()).camax();
        if herm_err > TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (max deviation {herm_err:e})"
            )));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > TOL || tr.im.abs() > TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {tr}")));
        }
        let dm = Self { entries };
        let min_eig = dm
            .eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(dm)
    }

    pub fn maximally_mixed(d: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(Self {
            entries: DMatrix::identity(d, d).unscale(d as f64),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, u: &DMatrix<C64>) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: u.nrows(),
            });
        }
        DensityMatrix::new(u * &self.entries * u.adjoint())
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn fidelity_with(&self, psi: &PureState) -> f64 {
        let a = psi.amplitudes();
        a.dotc(&(&self.entries * a)).re
    }
}

/// `(1−δ)|ψ⟩⟨ψ| + δ·I/d`.
pub fn make_depolarized(psi: &PureState, delta: f64) -> Result<DensityMatrix> {
    check_closed("delta", delta, 0.0, 1.0, "[0, 1]")?;
    let d = psi.dim();
    let proj = psi.projector().entries;
    let mixed = DMatrix::<C64>::identity(d, d).unscale(d as f64);
    Ok(DensityMatrix {
        entries: proj.scale(1.0 - delta) + mixed.scale(delta),
    })
}

/// Outcome probabilities and normalized post-measurement states of one swap test.
#[derive(Debug, Clone)]
pub struct SwapTestResult {
    pub p0: f64,
    pub p1: f64,
    /// `ω(0)`; `None` when `p0 ≤ 1e−12`.
    pub omega0: Option<DensityMatrix>,
    /// `ω(1)`; `None` when `p1 ≤ 1e−12`.
    pub omega1: Option<DensityMatrix>,
}

/// `S |i⟩|j⟩ = |j⟩|i⟩` on `C^d ⊗ C^d`.
pub fn swap_operator(d: usize) -> DMatrix<C64> {
    let mut s = DMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            s[(j * d + i, i * d + j)] = C64::new(1.0, 0.0);
        }
    }
    s
}

/// Trace over the second tensor factor of a `d² × d²` matrix.
pub fn partial_trace_second(m: &DMatrix<C64>, d: usize) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |i, k| (0..d).map(|j| m[(i * d + j, k * d + j)]).sum())
}

/// Swap test on `ρ ⊗ σ`, keeping the first register.
///
/// The outcome-0 probability is computed twice, from `(1 + Tr ρσ)/2` and
/// from `Tr(Π₀ (ρ⊗σ) Π₀)`; a disagreement above `1e−12` is an error.
pub fn swap_test_apply(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<SwapTestResult> {
    let d = rho.dim();
    if sigma.dim() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: sigma.dim(),
        });
    }
    check_dim(d)?;

    let joint = rho.entries.kronecker(&sigma.entries);
    let id = DMatrix::<C64>::identity(d * d, d * d);
    let s = swap_operator(d);
    let sym = (&id + &s).unscale(2.0);
    let anti = (&id - &s).unscale(2.0);

    let branch0 = &sym * &joint * &sym;
    let branch1 = &anti * &joint * &anti;
    let p0 = branch0.trace().re;
    let p1 = branch1.trace().re;

    let p0_formula = 0.5 * (1.0 + (&rho.entries * &sigma.entries).trace().re);
    if (p0 - p0_formula).abs() > TOL {
        return Err(Error::OracleMismatch(format!(
            "projector gives p0 = {p0}, trace formula gives {p0_formula}"
        )));
    }

    let reduce = |branch: &DMatrix<C64>, p: f64| -> Result<Option<DensityMatrix>> {
        if p <= TOL {
            return Ok(None);
        }
        DensityMatrix::new(partial_trace_second(branch, d).unscale(p)).map(Some)
    };

    Ok(SwapTestResult {
        p0,
        p1,
        omega0: reduce(&branch0, p0)?,
        omega1: reduce(&branch1, p1)?,
    })
}

/// `(1/2) Σ |λ_k(A − B)|`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let diff = &a.entries - &b.entries;
    Ok(0.5
        * diff
            .symmetric_eigenvalues()
            .iter()
            .map(|x| x.abs())
            .sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_state_is_deterministic_and_normalized() {
        let a = random_pure_state(2, Seed::new(9, 1)).unwrap();
        let b = random_pure_state(2, Seed::new(9, 1)).unwrap();
        assert_eq!(a, b);
        let c = random_pure_state(5, Seed::new(9, 2)).unwrap();
        assert!((c.amplitudes().norm() - 1.0).abs() < 1e-12);
        let x = random_pure_state(8, Seed::new(1, 0)).unwrap();
        let y = random_pure_state(8, Seed::new(2, 0)).unwrap();
        assert!(x.overlap(&y) < 1.0 - 1e-9);
    }

    #[test]
    fn depolarized_examples() {
        let psi = random_pure_state(3, Seed::new(4, 0)).unwrap();
        let pure = make_depolarized(&psi, 0.0).unwrap();
        assert!(trace_distance(&pure, &psi.projector()).unwrap() < 1e-12);
        let mixed = make_depolarized(&psi, 1.0).unwrap();
        assert!(
            trace_distance(&mixed, &DensityMatrix::maximally_mixed(3).unwrap()).unwrap() < 1e-12
        );

        let q = random_pure_state(2, Seed::new(4, 1)).unwrap();
        let ev = make_depolarized(&q, 0.3).unwrap().eigenvalues();
        assert!((ev[0] - 0.85).abs() < 1e-12 && (ev[1] - 0.15).abs() < 1e-12);
    }

    #[test]
    fn swap_test_identical_pure_inputs() {
        let psi = random_pure_state(4, Seed::new(5, 0)).unwrap();
        let r = swap_test_apply(&psi.projector(), &psi.projector()).unwrap();
        assert!((r.p0 - 1.0).abs() < 1e-12);
        assert!(r.omega1.is_none());
        let w = r.omega0.unwrap();
        assert!(trace_distance(&w, &psi.projector()).unwrap() < 1e-12);
    }

    #[test]
    fn swap_test_orthogonal_inputs() {
        let zero = PureState::basis(2, 0).unwrap().projector();
        let one = PureState::basis(2, 1).unwrap().projector();
        let r = swap_test_apply(&zero, &one).unwrap();
        assert!((r.p0 - 0.5).abs() < 1e-15);
        assert!((r.p0 + r.p1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_distance_examples() {
        let psi = random_pure_state(2, Seed::new(6, 0)).unwrap();
        let a = make_depolarized(&psi, 0.0).unwrap();
        let b = make_depolarized(&psi, 1.0).unwrap();
        assert!(trace_distance(&a, &a).unwrap() < 1e-15);
        assert!((trace_distance(&a, &b).unwrap() - 0.5).abs() < 1e-12);
        let zero = PureState::basis(3, 0).unwrap().projector();
        let one = PureState::basis(3, 1).unwrap().projector();
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-12);
        let other = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(trace_distance(&zero, &other).is_err());
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(matches!(
            random_pure_state(17, Seed::new(0, 0)),
            Err(Error::DimensionCap { d: 17, cap: 16 })
        ));
        let mut m = DMatrix::<C64>::identity(2, 2);
        m[(0, 0)] = C64::new(2.0, 0.0);
        m[(1, 1)] = C64::new(-1.0, 0.0);
        assert!(DensityMatrix::new(m).is_err());
        let mut h = DMatrix::<C64>::identity(2, 2).unscale(2.0);
        h[(0, 1)] = C64::new(0.1, 0.0);
        assert!(DensityMatrix::new(h).is_err());
        let a = DensityMatrix::maximally_mixed(2).unwrap();
        let b = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(matches!(
            swap_test_apply(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn unitary_is_unitary() {
        let u = random_unitary(5, Seed::new(3, 3)).unwrap();
        let err = (&u * u.adjoint() - DMatrix::<C64>::identity(5, 5)).camax();
        assert!(err < 1e-12);
    }
}
