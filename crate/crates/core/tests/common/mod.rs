#![allow(dead_code)]

use rand::Rng;
use zic::gf2::BitMatrix;
use zic::{make_config, DetConfig, LinearScheme};

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> BitMatrix {
    let mut out = BitMatrix::zeros(rows, cols).unwrap();
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.4) {
                out.set(i, j, true);
            }
        }
    }
    out
}

/// Random configuration with `q <= max_q` and `m >= 1`.
pub fn random_config(rng: &mut impl Rng, max_q: u32) -> DetConfig {
    let m = rng.gen_range(1..=max_q);
    let n = rng.gen_range(0..=max_q);
    let c = rng.gen_range(0..=max_q);
    make_config(m.into(), n.into(), c.into()).unwrap()
}

/// Random scheme for `cfg` with at most `max_inputs` input bits.
pub fn random_scheme(rng: &mut impl Rng, cfg: &DetConfig, max_inputs: usize) -> LinearScheme {
    let k1 = rng.gen_range(0..=max_inputs.min(6));
    let k2 = rng.gen_range(0..=(max_inputs - k1).min(6));
    let r = rng.gen_range(0..=max_inputs - k1 - k2);
    let shared = rng.gen_range(0..=k2.min(3));
    let (m, q) = (cfg.m() as usize, cfg.q() as usize);
    LinearScheme::new(
        random_matrix(rng, shared, k2),
        random_matrix(rng, m, k1),
        random_matrix(rng, m, shared),
        random_matrix(rng, m, r),
        random_matrix(rng, q, k2),
    )
    .unwrap()
}

/// Every configuration with `1 <= m`, `0 <= n`, `max(m, n) <= max_q`, and
/// `0 <= C <= q`.
pub fn all_configs(max_q: u32) -> Vec<DetConfig> {
    let mut out = Vec::new();
    for m in 1..=max_q {
        for n in 0..=max_q {
            let q = m.max(n);
            for c in 0..=q {
                out.push(make_config(m.into(), n.into(), c.into()).unwrap());
            }
        }
    }
    out
}
