//! Tabulates I_Q(t) and α(t) for sub-Ohmic, Ohmic and super-Ohmic baths.
//!
//! ```text
//! cargo run --example influence_functional
//! ```

use majorana_lab::{kappa_to_q, DephasingChannel};

fn main() -> majorana_lab::Result<()> {
    let gamma0 = 1.6;
    let b = 1.0;
    println!("Γ₀ = {gamma0}, B = {b}");
    for q in [0.5, 1.0, 3.0] {
        let ch = DephasingChannel::from_params(q, gamma0, b)?;
        println!("\nQ = {q}: |β| = {:e}", ch.beta_abs());
        println!("  {:>6} {:>14} {:>14} {:>14}", "t", "I_Q", "alpha", "dalpha/dt");
        for k in 0..=10 {
            let p = ch.evaluate(0.5 * k as f64)?;
            println!("  {:>6.2} {:>14.6e} {:>14.6e} {:>14.6e}", p.t, p.i_q, p.alpha, p.dalpha_dt + 0.0);
        }
    }

    // Luttinger-liquid leads: κ = 2 gives the Q = 3 environment above
    println!("\nκ = 2 maps to Q = {}", kappa_to_q(2.0)?);
    Ok(())
}
