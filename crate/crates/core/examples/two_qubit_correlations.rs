//! Follows entanglement, discord, LQU, trace-norm discord and coherence of
//! the evolved Bell-like state, and locates entanglement sudden death.
//!
//! ```text
//! cargo run --example two_qubit_correlations
//! ```

use std::f64::consts::FRAC_PI_2;

use majorana_lab::correlations;
use majorana_lab::state::evolved_x_state;
use majorana_lab::DephasingChannel;

fn main() -> majorana_lab::Result<()> {
    let ch = DephasingChannel::from_params(1.0, 1.6, 1.0)?;
    println!("{:>5} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}", "t", "alpha", "C", "D", "LQU", "TND", "l1");
    for k in 0..=12 {
        let t = 0.1 * k as f64;
        let a = ch.alpha(t)?;
        let r = correlations::report(&evolved_x_state(FRAC_PI_2, a)?)?;
        println!(
            "{t:>5.2} {a:>8.5} {:>8.5} {:>8.5} {:>8.5} {:>8.5} {:>8.5}",
            r.concurrence, r.discord, r.lqu, r.tnd, r.coherence_l1
        );
    }

    // concurrence dies once α² drops to √2 - 1
    let (mut lo, mut hi) = (0.0, 10.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if correlations::concurrence_evolved(FRAC_PI_2, ch.alpha(mid)?) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    println!("\nsudden death at t = {hi:.10}, α² = {:.10}", ch.alpha(hi)?.powi(2));

    println!("\nclosed forms vs X-state algorithms at α = 0.8:");
    let s = evolved_x_state(FRAC_PI_2, 0.8)?;
    println!("  discord {:.12} vs {:.12}", correlations::discord_closed(0.8)?, correlations::discord_x(&s));
    println!("  LQU     {:.12} vs {:.12}", correlations::lqu_closed(FRAC_PI_2, 0.8), correlations::lqu_x(&s));
    Ok(())
}
