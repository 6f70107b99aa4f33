use contfrac::Cf;
use std::time::Instant;

#[test]
#[ignore]
fn speed_probe() {
    let x: Cf = "[0;(1,2,3)]".parse().unwrap();
    let t0 = Instant::now();
    let log = sudler::log_sudler_product(&x, 100_000_000);
    let dt = t0.elapsed().as_secs_f64();
    println!("1e8 terms in {dt:.2}s  ({:.1} ns/term across threads), log={log}", dt * 10.0);
    let t1 = Instant::now();
    let h = sudler::log_hk(&x, 24, 0.1).unwrap();
    let dt1 = t1.elapsed().as_secs_f64();
    println!("H_24 (q_24/2 = 188M terms) in {dt1:.2}s, log={h}");
}
