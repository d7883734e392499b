#![allow(dead_code)]

use bincover::generators::{gen_uniform, GeneratorConfig, GridRng};
use bincover::hardness::{build_batch_instance, BatchInstanceSpec};
use bincover::model::{simulate, ChoiceSequence, Instance};
use bincover::{Rational64 as Q, Side};

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn batch_spec(n_batches: usize) -> BatchInstanceSpec<Q> {
    BatchInstanceSpec {
        n_batches,
        smalls: vec![q(3, 5), q(3, 5), q(2, 5), q(2, 5)],
        sides: vec![Side::A, Side::B, Side::A, Side::B],
        bin_limit: 2,
    }
}

pub fn batch_instance(n_batches: usize) -> Instance<Q> {
    build_batch_instance(&batch_spec(n_batches)).unwrap()
}

/// Non-increasing profits on the grid `1/q`, first value positive.
pub fn random_profits(rng: &mut GridRng, bin_limit: usize, grid: u64) -> Vec<Q> {
    let mut top = grid;
    let mut out = Vec::with_capacity(bin_limit);
    for k in 0..bin_limit {
        let numer = if k == 0 { 1 + rng.below(top) } else { rng.below(top + 1) };
        top = numer;
        out.push(q(numer as i64, grid as i64));
    }
    out
}

/// Seeded instances with `n <= 7`, `K <= 3`, grid `q <= 8`, sizes `>= 1/4`.
pub fn random_suite(count: usize) -> Vec<Instance<Q>> {
    (0..count)
        .map(|i| {
            let seed = 0x5eed_0000 + i as u64;
            let n = 1 + i % 7;
            let bin_limit = 1 + (i / 7) % 3;
            let grid = 4 + (i % 5) as u64;
            let cfg = GeneratorConfig {
                seed,
                n,
                min_size: q(1, 4),
                distinct_sizes: None,
                grid,
            };
            let items = gen_uniform(&cfg).unwrap();
            let mut rng = GridRng::new(seed ^ 0xabcd);
            let profits = random_profits(&mut rng, bin_limit, grid);
            Instance::new(items, bin_limit, profits)
                .unwrap()
                .with_min_size_hint(q(1, 4))
                .unwrap()
        })
        .collect()
}

/// Replays every prefix of `choices` and checks the per-step load and
/// open-count invariants.
pub fn check_replay_invariants(inst: &Instance<Q>, choices: &ChoiceSequence) -> Result<(), String> {
    for t in 0..=inst.len() {
        let prefix = inst.prefix(t);
        let sol = simulate(&prefix, &ChoiceSequence(choices.0[..t].to_vec()))
            .map_err(|e| e.to_string())?;
        if sol.leftover_loads.len() > inst.bin_limit {
            return Err(format!("step {t}: {} open bins", sol.leftover_loads.len()));
        }
        if let Some(bad) = sol
            .leftover_loads
            .iter()
            .find(|l| **l <= q(0, 1) || **l >= q(1, 1))
        {
            return Err(format!("step {t}: open load {bad} outside (0, 1)"));
        }
        let total: Q = sol.events.iter().map(|e| e.profit).sum();
        if total != sol.total_profit {
            return Err(format!("step {t}: event profits do not add up"));
        }
        if sol.events.iter().any(|e| *inst.profit(e.open_count) != e.profit) {
            return Err(format!("step {t}: event profit differs from G(k)"));
        }
    }
    Ok(())
}
