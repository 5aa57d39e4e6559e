//! Prints the random-structure value estimate for CZ at five gates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vqc_core::{init_q, GateId, SearchConfig, TargetSpec};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0u64);
    let cfg = SearchConfig::new(
        TargetSpec::Cz,
        2,
        vec![GateId::RxHalfPi, GateId::Rz, GateId::Cnot],
        5,
    );
    let q0 = init_q(&cfg, &mut ChaCha8Rng::seed_from_u64(seed)).expect("init_q");
    println!(
        "{{\n  \"target\": \"cz\",\n  \"max_gates\": 5,\n  \"q_init_samples\": {},\n  \"seed\": {seed},\n  \"q0\": {q0:?}\n}}",
        cfg.q_init_samples
    );
}
