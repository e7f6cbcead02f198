//! Shared test oracles and random generators. Nothing here calls into the
//! code paths it is used to check.
#![allow(dead_code)]

use coupled_qubits::{
    diagonalize, lindblad_rates, BathSpectrum, DressedBasis, LindbladRates, ModelParams,
};
use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type M4 = Matrix4<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn max_abs(m: &M4) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The resonant, zero-temperature, equal-flat-bath regime of the figures.
pub fn figure_regime() -> (ModelParams, DressedBasis, LindbladRates) {
    let bath = BathSpectrum::flat(0.01, 0.0);
    let p = ModelParams::new(10.0, 10.0, 1.0, bath, bath).unwrap();
    let b = diagonalize(&p).unwrap();
    let r = lindblad_rates(&b, &bath, &bath).unwrap();
    (p, b, r)
}

pub fn random_state_vector(rng: &mut impl Rng) -> Vector4<Complex64> {
    let v = Vector4::from_fn(|_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    v / c(v.norm())
}

/// Random full-rank density matrix `W W^dagger / tr`.
pub fn random_density(rng: &mut impl Rng) -> M4 {
    let w = M4::from_fn(|_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let m = w * w.adjoint();
    let tr = m.trace();
    let mut m = m / tr;
    m = (m + m.adjoint()) * c(0.5);
    m
}

pub fn random_su2(rng: &mut impl Rng) -> Matrix2<Complex64> {
    let a = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let b = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    Matrix2::new(a, -b.conj(), b, a.conj())
}

pub fn kron(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> M4 {
    M4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// Wootters concurrence straight from the definition: eigenvalues of the
/// non-Hermitian `R = rho (sy sy) rho* (sy sy)` via a complex Schur form.
pub fn wootters_brute_force(rho: &M4) -> f64 {
    let sy = Matrix2::new(c(0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), c(0.0));
    let yy = kron(&sy, &sy);
    let tilde = yy * rho.conjugate() * yy;
    let r = rho * tilde;
    let ev = r.eigenvalues().expect("complex Schur form is triangular");
    let mut roots: Vec<f64> = ev.iter().map(|z| z.re.max(0.0).sqrt()).collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    (roots[0] - roots[1] - roots[2] - roots[3]).max(0.0)
}

/// Full Born-Markov-secular generator built from `sigma_x^(l)` in the
/// computational basis: jump operators collect every dressed transition
/// whose energy drop equals a Bohr frequency, then the standard GKSL form
/// is applied. Returns `d rho / dt` in computational coordinates.
pub fn gksl_oracle(params: &ModelParams, basis: &DressedBasis, rho: &M4) -> M4 {
    let h = coupled_qubits::hamiltonian_matrix(params).unwrap().map(c);
    let mut out = (h * rho - rho * h) * Complex64::new(0.0, -1.0);

    let flip = |pairs: [(usize, usize); 2]| {
        let mut m = M4::zeros();
        for (i, j) in pairs {
            m[(i, j)] = c(1.0);
            m[(j, i)] = c(1.0);
        }
        m
    };
    // order |00>, |01>, |10>, |11>; qubit 1 is the left factor
    let sx = [flip([(0, 2), (1, 3)]), flip([(0, 1), (2, 3)])];
    let baths = [params.bath1, params.bath2];
    let u = basis.u.map(c);
    let e = basis.energies;

    for (omega, pick) in [
        (basis.omega_i, (|b: &BathSpectrum| b.gamma_at_omega_i) as fn(&BathSpectrum) -> f64),
        (basis.omega_ii, |b: &BathSpectrum| b.gamma_at_omega_ii),
    ] {
        for (a, bath) in sx.iter().zip(baths.iter()) {
            let mut jump = M4::zeros();
            for m in 0..4 {
                for n in 0..4 {
                    if ((e[n] - e[m]) - omega).abs() < 1e-9 * (1.0 + omega) {
                        let um = u.column(m).into_owned();
                        let un = u.column(n).into_owned();
                        let elem = (um.adjoint() * a * un)[(0, 0)];
                        jump += um * un.adjoint() * elem;
                    }
                }
            }
            let gamma = pick(bath);
            let gbar = if bath.temperature == 0.0 {
                0.0
            } else {
                gamma * (-omega / bath.temperature).exp()
            };
            let jd = jump.adjoint();
            out += (jump * rho * jd - (jd * jump * rho + rho * jd * jump) * c(0.5)) * c(gamma);
            out += (jd * rho * jump - (jump * jd * rho + rho * jump * jd) * c(0.5)) * c(gbar);
        }
    }
    out
}
