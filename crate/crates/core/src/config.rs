use crate::error::{Error, Result};

/// Numerical and truncation settings shared by the evaluators.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Target accuracy of reported values; regularization fits must have residual below `10·tol`.
    pub tol: f64,
    /// Local tolerance of the adaptive Runge–Kutta stepper.
    pub ode_tol: f64,
    /// Shrink parameters `ε_j = 2^{−j}` for `j ∈ [j0, j1]`.
    pub reglim_samples: (u32, u32),
    /// Highest power `m` of the `ε^m·log^k ε` correction terms included in the regularization fits.
    pub reglim_eps_order: u32,
    /// Symmetric-power cutoff `M`.
    pub sym_cutoff: u32,
    /// Length cutoff `N`.
    pub length_cutoff: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: 1e-10,
            ode_tol: 1e-14,
            reglim_samples: (24, 60),
            reglim_eps_order: 2,
            sym_cutoff: 4,
            length_cutoff: 4,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.ode_tol > 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        let (j0, j1) = self.reglim_samples;
        if j0 >= j1 || j0 == 0 {
            return Err(Error::Domain(format!("need 0 < j0 < j1, got ({j0}, {j1})")));
        }
        if j1 > 900 {
            return Err(Error::Domain("j1 above 900 leaves too few normal floats near the punctures".into()));
        }
        Ok(())
    }

    /// The shrink parameters `ε_j`, largest first.
    pub fn eps_samples(&self) -> Vec<f64> {
        let (j0, j1) = self.reglim_samples;
        (j0..=j1).map(|j| (-(j as f64)).exp2()).collect()
    }
}
