//! Discord without entanglement in the three-spin Ising chain.

use entspan_core::entanglement::{concurrence, discord, zero_discord_test, DiscordOptions, MeasuredSpin};
use entspan_core::exact::{ground_space, reduced_from_space, to_dense, DEFAULT_DEGENERACY_TOL};

use super::{sweep_or, RunError};
use crate::config::{ExperimentConfig, Sweep};
use crate::presets;
use crate::record::{Cell, RunRecord};

const COLUMNS: [&str; 11] = [
    "h1z",
    "h3z",
    "degeneracy",
    "concurrence",
    "mutual_info",
    "discord_first",
    "discord_second",
    "zero_discord",
    "witness",
    "witness_01",
    "witness_10",
];

/// One row per sweep value; `h3z` follows `h1z` unless set.
pub(super) fn run(cfg: &ExperimentConfig) -> Result<RunRecord, RunError> {
    let h1_default = cfg.model.h1z.unwrap_or(1.0);
    let sweep = sweep_or(&cfg.sweep, Sweep::list("h1z", [h1_default]));
    let mut record = RunRecord::new(cfg.clone(), &COLUMNS);
    for x in sweep.values() {
        let p = super::with_param(&cfg.model, &sweep.param, x)?;
        let h1 = p.h1z.unwrap_or(h1_default);
        let h3 = cfg.model.h3z.unwrap_or(h1);
        let op = to_dense(&presets::ising_chain(h1, h3)?)?;
        let gs = ground_space(&op, DEFAULT_DEGENERACY_TOL)?;
        let rho = reduced_from_space(&gs, 3, &[0, 2])?;
        let c = concurrence(&rho)?;
        let first = discord(&rho, &DiscordOptions::default())?;
        let second = discord(&rho, &DiscordOptions { measure: MeasuredSpin::Second, ..Default::default() })?;
        let check = zero_discord_test(&rho, DiscordOptions::default().zero_discord_tol)?;
        let (label, w01, w10) = match &check.witness {
            Some(w) => (Cell::Text(w.to_string()), Cell::num(w.product[0][1].0), Cell::num(w.product[1][0].0)),
            None => (Cell::Null, Cell::Null, Cell::Null),
        };
        record.push_row(vec![
            Cell::num(h1),
            Cell::num(h3),
            Cell::from(gs.degeneracy),
            Cell::num(c),
            Cell::num(first.mutual_info),
            Cell::num(first.discord),
            Cell::num(second.discord),
            Cell::from(check.zero_discord),
            label,
            w01,
            w10,
        ]);
    }
    Ok(record)
}
