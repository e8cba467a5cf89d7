//! Named models used by the experiments and the `model` subcommand.

use entspan_core::effective::Theorem2Params;
use entspan_core::model::{
    build_random_coupling, build_xy_demo, build_xy_demo_effective, build_xy_enhancement, ChainModel, PauliLabel::*,
    RandomCouplingParams, Term, XYChainParams,
};
use entspan_core::Result;

pub const PRESETS: [&str; 9] = [
    "classical-chain",
    "non-classical-chain",
    "ising-chain",
    "theorem2-environment",
    "xy-demo",
    "xy-demo-effective",
    "xy-enhancement",
    "xy-uniform",
    "random-coupling",
];

/// `0.7 Z1Z2 + 1.1 X2X3 + 0.9 X3X4`: the B side `X3X4` commutes with
/// `X2X3`, so the interaction splits classically.
pub fn classical_chain() -> Result<ChainModel> {
    ChainModel::new(4, [Term::pair(0, Z, 1, Z, 0.7)?, Term::pair(1, X, 2, X, 1.1)?, Term::pair(2, X, 3, X, 0.9)?])
}

/// The classical chain with its last bond turned into `0.9 Z3Z4`.
pub fn non_classical_chain() -> Result<ChainModel> {
    ChainModel::new(4, [Term::pair(0, Z, 1, Z, 0.7)?, Term::pair(1, X, 2, X, 1.1)?, Term::pair(2, Z, 3, Z, 0.9)?])
}

/// `X1X2 + X2X3 + h1z Z1 + h3z Z3`.
pub fn ising_chain(h1z: f64, h3z: f64) -> Result<ChainModel> {
    let mut terms = vec![Term::pair(0, X, 1, X, 1.0)?, Term::pair(1, X, 2, X, 1.0)?];
    for (s, h) in [(0, h1z), (2, h3z)] {
        if h != 0.0 {
            terms.push(Term::single(s, Z, h)?);
        }
    }
    ChainModel::new(3, terms)
}

pub const THEOREM2_J: [f64; 3] = [1.0, 0.8, 0.5];
pub const THEOREM2_JP: [f64; 3] = [0.7, 1.1, 0.3];

/// Three-spin chain with a strong middle field `h2z`, and its third spin
/// coupled to a fourth environment spin by `0.6 X3X4 + 0.4 Z3Z4 + 0.3 Z4 + 0.2 X4`.
pub fn theorem2_environment(h2z: f64) -> Result<ChainModel> {
    let core = Theorem2Params { j: THEOREM2_J, jp: THEOREM2_JP, h2z }.model(0.0, 0.0)?;
    let env = ChainModel::from_pairs(
        4,
        [
            (vec![(2, X), (3, X)], 0.6),
            (vec![(2, Z), (3, Z)], 0.4),
            (vec![(3, Z)], 0.3),
            (vec![(3, X)], 0.2),
        ],
    )?;
    ChainModel::new(4, core.terms().iter().cloned().chain(env.terms().iter().cloned()))
}

/// Enhancement chain with the same field `h0` on every mediator spin.
pub fn xy_uniform(n: usize, gamma: f64, alpha: i8, h0: f64) -> Result<ChainModel> {
    build_xy_enhancement(&XYChainParams::enhancement(n, gamma, alpha, vec![h0; n.saturating_sub(2)]))
}

pub fn xy_demo(n: usize, gamma: f64, h0: f64) -> Result<ChainModel> {
    build_xy_demo(&XYChainParams::demo(n, gamma, h0))
}

pub fn xy_demo_effective(n: usize, gamma: f64, h0: f64) -> Result<ChainModel> {
    build_xy_demo_effective(&XYChainParams::demo(n, gamma, h0))
}

/// Random-coupling chain drawn from sample stream `index` of `seed`.
pub fn random_coupling(n: usize, j: f64, amplitude: f64, seed: u64, index: u64) -> Result<ChainModel> {
    let mut rng = crate::rng::sample_rng(seed, index);
    build_random_coupling(&RandomCouplingParams { n, j, amplitude, seed }, &mut rng)
}
