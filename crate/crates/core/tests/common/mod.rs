//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use gkp_squeezing::fock::{hermite_functions, CMatrix, FockState};
use gkp_squeezing::Complex64;
use nalgebra::linalg::SymmetricEigen;

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Generalized Laguerre polynomial `L_n^{(k)}(x)` by the three-term recurrence.
pub fn laguerre(n: usize, k: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut l0, mut l1) = (1.0, 1.0 + k - x);
    for j in 1..n {
        let j = j as f64;
        let l2 = ((2.0 * j + 1.0 + k - x) * l1 - (j + k) * l0) / (j + 1.0);
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// `⟨m|D(α)|n⟩` in closed form.
pub fn displacement_element(alpha: Complex64, m: usize, n: usize) -> Complex64 {
    let x = alpha.norm_sqr();
    let env = (-x / 2.0).exp();
    if m >= n {
        let pre = (0.5 * (ln_factorial(n) - ln_factorial(m))).exp();
        alpha.powu((m - n) as u32) * (pre * env * laguerre(n, (m - n) as f64, x))
    } else {
        let pre = (0.5 * (ln_factorial(m) - ln_factorial(n))).exp();
        (-alpha.conj()).powu((n - m) as u32) * (pre * env * laguerre(m, (n - m) as f64, x))
    }
}

/// `exp(i(cx x + cp p + d))` on `dim` levels from the closed form, using
/// `i(cx x + cp p) = α a† − α* a` with `α = (i cx − cp)/√2`.
pub fn displacement_matrix(cx: f64, cp: f64, d: f64, dim: usize) -> CMatrix {
    let alpha = Complex64::new(-cp, cx) / 2f64.sqrt();
    let phase = Complex64::from_polar(1.0, d);
    CMatrix::from_fn(dim, dim, |m, n| phase * displacement_element(alpha, m, n))
}

/// `⟨ψ|M|ψ⟩` for a vector `ψ` (not necessarily normalized).
pub fn quad_form(m: &CMatrix, psi: &[Complex64]) -> Complex64 {
    let n = psi.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..n {
            row += m[(i, j)] * psi[j];
        }
        acc += psi[i].conj() * row;
    }
    acc
}

/// `⟨sin²(cx x + cp p)⟩` from the closed-form displacement.
pub fn sin2_reference(state: &FockState, cx: f64, cp: f64) -> f64 {
    let psi: Vec<Complex64> = state.amplitudes().iter().copied().collect();
    let m = displacement_matrix(2.0 * cx, 2.0 * cp, 0.0, psi.len());
    0.5 * (1.0 - quad_form(&m, &psi).re)
}

/// Position wavefunction `Σ cₙ hₙ(q)`.
pub fn position_wavefunction(state: &FockState, q: f64) -> Complex64 {
    let h = hermite_functions(q, state.dim());
    state.amplitudes().iter().zip(h).map(|(c, h)| c * h).sum()
}

/// `W(x, p) = (1/π) ∫ ψ*(x + y) ψ(x − y) e^{2ipy} dy` by the trapezoid rule.
pub fn wigner_integral(state: &FockState, x: f64, p: f64) -> f64 {
    let lim = (2.0 * state.dim() as f64 + 1.0).sqrt() + 8.0;
    let n = 4000;
    let h = 2.0 * lim / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=n {
        let y = -lim + h * i as f64;
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        let f = position_wavefunction(state, x + y).conj()
            * position_wavefunction(state, x - y)
            * Complex64::from_polar(1.0, 2.0 * p * y);
        acc += f * w;
    }
    (acc * h).re / PI
}

/// Balanced beam splitter `exp((π/4)(a₁†a₂ − a₁a₂†))` restricted to the
/// block of total photon number `m`, in the basis `|k, m − k⟩`.
pub fn beam_splitter_block(m: usize) -> CMatrix {
    let d = m + 1;
    // H = iG is Hermitian; U = exp((π/4) G) = V e^{−iπΛ/4} V†.
    let mut h = CMatrix::zeros(d, d);
    for k in 0..d {
        if k + 1 < d {
            let v = (((k + 1) * (m - k)) as f64).sqrt();
            h[(k + 1, k)] = Complex64::new(0.0, v);
        }
        if k >= 1 {
            let v = ((k * (m - k + 1)) as f64).sqrt();
            h[(k - 1, k)] = Complex64::new(0.0, -v);
        }
    }
    let eig = SymmetricEigen::new(h);
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -PI / 4.0 * l)),
    ));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Two-mode amplitudes `Ψ[k₁][k₂]` after the beam splitter acting on
/// `φ ⊗ φ`, on `2·dim − 1` levels per mode.
pub fn beam_split_product(phi: &[Complex64]) -> Vec<Vec<Complex64>> {
    let d = phi.len();
    let out_dim = 2 * d - 1;
    let mut psi = vec![vec![Complex64::new(0.0, 0.0); out_dim]; out_dim];
    for m in 0..out_dim {
        let u = beam_splitter_block(m);
        let input: Vec<Complex64> = (0..=m)
            .map(|k| {
                if k < d && m - k < d {
                    phi[k] * phi[m - k]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        for k in 0..=m {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, c) in input.iter().enumerate() {
                acc += u[(k, j)] * c;
            }
            psi[k][m - k] = acc;
        }
    }
    psi
}

/// ξ on `2 sin²(a x) + 2 sin²(b p)` after one breeding step simulated in
/// the two-mode Fock space: balanced beam splitter, ideal p measurement of
/// mode 2 with outcome p_m, feed-forward shift of mode 1's p by −p_m,
/// averaged over outcomes.
pub fn breeding_oracle(phi: &[Complex64], a: f64, b: f64) -> f64 {
    let psi = beam_split_product(phi);
    let n = psi.len();
    let f = displacement_matrix(2.0 * a, 0.0, 0.0, n);
    let e = displacement_matrix(0.0, 2.0 * b, 0.0, n);
    let (lim, step) = (18.0, 0.02);
    let count = (2.0 * lim / step) as usize;
    let mut total = 0.0;
    for i in 0..=count {
        let p = -lim + step * i as f64;
        let w = if i == 0 || i == count { 0.5 * step } else { step };
        let h = hermite_functions(p, n);
        // ⟨p|k⟩ = (−i)^k h_k(p)
        let bra: Vec<Complex64> = (0..n)
            .map(|k| Complex64::new(0.0, -1.0).powu(k as u32) * h[k])
            .collect();
        let cond: Vec<Complex64> = (0..n)
            .map(|k1| (0..n).map(|k2| bra[k2] * psi[k1][k2]).sum())
            .collect();
        let norm: f64 = cond.iter().map(|c| c.norm_sqr()).sum();
        let fx = quad_form(&f, &cond);
        let ep = quad_form(&e, &cond);
        let shift = Complex64::from_polar(1.0, -2.0 * b * p);
        total += w * (2.0 * norm - fx.re - (shift * ep).re);
    }
    total
}
