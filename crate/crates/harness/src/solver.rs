//! Routing of a model to the free-fermion or dense solver.

use entspan_core::entanglement::concurrence;
use entspan_core::exact::{
    eigh, gap_from_eigenvalues, reduced_from_space, to_dense, DensityMatrix, GroundSpace, DEFAULT_DEGENERACY_TOL,
};
use entspan_core::freefermion::{is_quadratic, jordan_wigner, solve, two_site_rdm};
use entspan_core::model::{ChainModel, ProbePair};
use entspan_core::{Error, Result};

use crate::config::SolverChoice;

/// Largest chain the dense solver is used for.
pub const EXACT_MAX_SITES: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverUsed {
    Exact,
    FreeFermion,
}

/// Probe state and gap of a ground state.
#[derive(Clone, Debug)]
pub struct ProbeResult {
    pub rho: DensityMatrix,
    pub concurrence: f64,
    /// First excitation energy; zero for a degenerate dense ground level.
    pub gap: f64,
    pub solver: SolverUsed,
    /// Positivity correction of the free-fermion state.
    pub correction: f64,
}

pub fn route(model: &ChainModel, choice: SolverChoice) -> Result<SolverUsed> {
    match choice {
        SolverChoice::Exact => Ok(SolverUsed::Exact),
        SolverChoice::Freefermion => Ok(SolverUsed::FreeFermion),
        SolverChoice::Auto if is_quadratic(model) => Ok(SolverUsed::FreeFermion),
        SolverChoice::Auto if model.n_sites() <= EXACT_MAX_SITES => Ok(SolverUsed::Exact),
        SolverChoice::Auto => Err(Error::DenseCapExceeded { n_sites: model.n_sites(), cap: EXACT_MAX_SITES }),
    }
}

pub fn solve_probes(model: &ChainModel, probes: ProbePair, choice: SolverChoice) -> Result<ProbeResult> {
    match route(model, choice)? {
        SolverUsed::FreeFermion => {
            let sol = solve(&jordan_wigner(model)?)?;
            let st = two_site_rdm(&sol.covariance, probes)?;
            Ok(ProbeResult {
                concurrence: concurrence(&st.rho)?,
                rho: st.rho,
                gap: sol.gap(),
                solver: SolverUsed::FreeFermion,
                correction: st.correction,
            })
        }
        SolverUsed::Exact => {
            let op = to_dense(model)?;
            let spec = eigh(&op)?;
            let gs = GroundSpace::from_spectrum(&spec, DEFAULT_DEGENERACY_TOL);
            let rho = reduced_from_space(&gs, model.n_sites(), &[probes.a, probes.b])?;
            let gap = gap_from_eigenvalues(&spec.eigenvalues, DEFAULT_DEGENERACY_TOL).value;
            Ok(ProbeResult { concurrence: concurrence(&rho)?, rho, gap, solver: SolverUsed::Exact, correction: 0.0 })
        }
    }
}

/// Errors that reflect the configuration rather than one disorder sample.
pub fn is_fatal(e: &Error) -> bool {
    matches!(
        e,
        Error::DenseCapExceeded { .. } | Error::NotQuadratic { .. } | Error::InvalidParameter(_) | Error::SiteOutOfRange { .. }
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use entspan_core::model::{PauliLabel::*, Term};

    #[test]
    fn auto_routing() {
        let xx = ChainModel::new(20, [Term::pair(0, X, 1, X, 1.0).unwrap()]).unwrap();
        assert_eq!(route(&xx, SolverChoice::Auto).unwrap(), SolverUsed::FreeFermion);
        let zz = ChainModel::new(4, [Term::pair(0, Z, 1, Z, 1.0).unwrap()]).unwrap();
        assert_eq!(route(&zz, SolverChoice::Auto).unwrap(), SolverUsed::Exact);
        let big = ChainModel::new(20, [Term::pair(0, Z, 1, Z, 1.0).unwrap()]).unwrap();
        assert!(matches!(route(&big, SolverChoice::Auto), Err(Error::DenseCapExceeded { .. })));
    }
}
