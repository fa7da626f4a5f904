//! Quiver presentation of a schober on a disk with one marked point: three
//! spaces E_-, E_0, E_+ with sections u_± into E_0 and retractions v_± back,
//! transition maps t_{+-} = v_+ u_- and t_{-+} = v_- u_+ required invertible.

use serde::{Deserialize, Serialize};

use crate::arith::Matrix;
use crate::error::PervError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsQuiverData {
    pub dim_minus: usize,
    pub dim_zero: usize,
    pub dim_plus: usize,
    /// E_- -> E_0
    pub u_minus: Matrix,
    /// E_+ -> E_0
    pub u_plus: Matrix,
    /// E_0 -> E_-
    pub v_minus: Matrix,
    /// E_0 -> E_+
    pub v_plus: Matrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct KsReport {
    pub valid: bool,
    /// v_- u_- = 1 on E_-.
    pub retraction_minus: bool,
    /// v_+ u_+ = 1 on E_+.
    pub retraction_plus: bool,
    /// t_{+-} = v_+ u_-: E_- -> E_+.
    pub transition_plus_minus: Matrix,
    /// t_{-+} = v_- u_+: E_+ -> E_-.
    pub transition_minus_plus: Matrix,
    pub transitions_invertible: bool,
    /// mu_+ = t_{+-} t_{-+} on E_+.
    pub monodromy_plus: Matrix,
    /// mu_- = t_{-+} t_{+-} on E_-.
    pub monodromy_minus: Matrix,
}

impl KsQuiverData {
    fn check_shapes(&self) -> Result<(), PervError> {
        let want = [
            ("u_minus", &self.u_minus, self.dim_zero, self.dim_minus),
            ("u_plus", &self.u_plus, self.dim_zero, self.dim_plus),
            ("v_minus", &self.v_minus, self.dim_minus, self.dim_zero),
            ("v_plus", &self.v_plus, self.dim_plus, self.dim_zero),
        ];
        for (name, m, rows, cols) in want {
            if m.rows() != rows || m.cols() != cols {
                return Err(PervError::ShapeMismatch(format!(
                    "{name} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<KsReport, PervError> {
        self.check_shapes()?;
        let retraction_minus = self.v_minus.mul(&self.u_minus)?.is_identity();
        let retraction_plus = self.v_plus.mul(&self.u_plus)?.is_identity();
        let t_pm = self.v_plus.mul(&self.u_minus)?;
        let t_mp = self.v_minus.mul(&self.u_plus)?;
        let transitions_invertible = t_pm.is_invertible() && t_mp.is_invertible();
        let mu_plus = t_pm.mul(&t_mp)?;
        let mu_minus = t_mp.mul(&t_pm)?;
        Ok(KsReport {
            valid: retraction_minus && retraction_plus && transitions_invertible,
            retraction_minus,
            retraction_plus,
            transition_plus_minus: t_pm,
            transition_minus_plus: t_mp,
            transitions_invertible,
            monodromy_plus: mu_plus,
            monodromy_minus: mu_minus,
        })
    }
}
