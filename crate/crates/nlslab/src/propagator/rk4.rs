//! Classical fourth-order Runge–Kutta integration of the rotating-frame
//! coupled-mode equations, with the interaction term evaluated through the
//! dealiased FFT convolution. The explicit `exp(jΩz)` phases make the
//! system non-autonomous, so stage times matter.

use num_complex::Complex64;

use crate::grid::ModeGrid;

use super::interaction::{rhs_fft, SpectralWorkspace};

pub struct Rk4Stepper {
    grid: ModeGrid,
    dz: f64,
    nonlinearity_on: bool,
    ws: SpectralWorkspace,
    u: Vec<Complex64>,
    stage: Vec<Complex64>,
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
}

impl Rk4Stepper {
    pub fn new(grid: ModeGrid, dz: f64, nonlinearity_on: bool) -> Self {
        let zeros = vec![Complex64::new(0.0, 0.0); grid.n()];
        Self {
            grid,
            dz,
            nonlinearity_on,
            ws: SpectralWorkspace::new(grid.n()),
            u: zeros.clone(),
            stage: zeros.clone(),
            k1: zeros.clone(),
            k2: zeros.clone(),
            k3: zeros.clone(),
            k4: zeros,
        }
    }

    /// Advance rotating-frame coefficients from `z` to `z + dz`.
    pub fn step(&mut self, state: &mut [Complex64], z: f64) {
        if !self.nonlinearity_on {
            // The rotating-frame system without the interaction term is
            // ∂_z Q = 0: bit-for-bit identity.
            return;
        }
        let dz = self.dz;
        let half = dz / 2.0;

        rhs_fft(&self.grid, state, z, &mut self.ws, &mut self.u, &mut self.k1);

        for i in 0..state.len() {
            self.stage[i] = state[i] + self.k1[i] * half;
        }
        rhs_fft(
            &self.grid,
            &self.stage,
            z + half,
            &mut self.ws,
            &mut self.u,
            &mut self.k2,
        );

        for i in 0..state.len() {
            self.stage[i] = state[i] + self.k2[i] * half;
        }
        rhs_fft(
            &self.grid,
            &self.stage,
            z + half,
            &mut self.ws,
            &mut self.u,
            &mut self.k3,
        );

        for i in 0..state.len() {
            self.stage[i] = state[i] + self.k3[i] * dz;
        }
        rhs_fft(
            &self.grid,
            &self.stage,
            z + dz,
            &mut self.ws,
            &mut self.u,
            &mut self.k4,
        );

        let w = dz / 6.0;
        for i in 0..state.len() {
            state[i] += (self.k1[i] + (self.k2[i] + self.k3[i]) * 2.0 + self.k4[i]) * w;
        }
    }
}
