//! The factorization perturbations must land inside the admissible range
//! of the window at their level: the range the whole certification
//! machinery assumes.

use contfrac::Cf;
use pattern::Pattern;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sudler::epsilon_shifts;

fn random_cf(rng: &mut ChaCha8Rng) -> Cf {
    let prefix_len = rng.gen_range(0..=3);
    let period_len = rng.gen_range(1..=4);
    let digit = |rng: &mut ChaCha8Rng| rng.gen_range(1..=3u32).to_string();
    let prefix: Vec<String> = (0..prefix_len).map(|_| digit(rng)).collect();
    let period: Vec<String> = (0..period_len).map(|_| digit(rng)).collect();
    let mut s = String::from("[0;");
    if !prefix.is_empty() {
        s.push_str(&prefix.join(","));
        s.push(',');
    }
    s.push('(');
    s.push_str(&period.join(","));
    s.push_str(")]");
    s.parse().unwrap()
}

#[test]
fn factorization_perturbations_stay_in_window_ranges() {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut checked = 0usize;
    for _ in 0..30 {
        let cf = random_cf(&mut rng);
        for _ in 0..4 {
            let n = rng.gen_range(10u64..=100_000);
            for term in epsilon_shifts(&cf, n).unwrap() {
                // The window accessor needs four digits of history.
                if term.i < 4 {
                    continue;
                }
                let p = Pattern::from_cf(&cf, term.i).unwrap();
                let b = p.bounds();
                assert!(
                    term.eps >= b.eps_min - 1e-9 && term.eps <= b.eps_max + 1e-9,
                    "cf {cf} N={n} level {} copy {}: eps {} outside [{}, {}]",
                    term.i,
                    term.t,
                    term.eps,
                    b.eps_min,
                    b.eps_max
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 500, "too few checked terms: {checked}");
}

#[test]
fn copies_step_up_by_exactly_one_window_weight() {
    // Within a level, successive copies differ by q_i d_i, which the
    // window brackets between its weight bounds.
    let cf: Cf = "[0;(1,2,3)]".parse().unwrap();
    let terms = epsilon_shifts(&cf, 54_321).unwrap();
    for pair in terms.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.i != b.i || a.i < 4 {
            continue;
        }
        let p = Pattern::from_cf(&cf, a.i).unwrap();
        let bounds = p.bounds();
        let step = b.eps - a.eps;
        assert!(
            step >= bounds.lambda_min - 1e-9 && step <= bounds.lambda_max + 1e-9,
            "level {}: step {} outside [{}, {}]",
            a.i,
            step,
            bounds.lambda_min,
            bounds.lambda_max
        );
    }
}
