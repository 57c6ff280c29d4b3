//! Locates the smallest Ohmicity at which non-Markovianity appears.
//!
//! ```text
//! cargo run --release --example critical_q
//! ```

use majorana_lab::nonmarkov::{self, TimeWindow};

fn main() -> majorana_lab::Result<()> {
    for (gamma0, b) in [(1.6, 1.0), (5.0, 1.0), (0.1, 0.001)] {
        let w = TimeWindow::for_cutoff(gamma0)?;
        match nonmarkov::critical_q_scan(gamma0, b, (0.0, 4.0), &w)? {
            Some(q) => println!("Γ₀ = {gamma0:<4} B = {b:<6} critical Q ≈ {q:.3}"),
            None => println!("Γ₀ = {gamma0:<4} B = {b:<6} no detectable non-Markovianity for Q ≤ 4"),
        }
    }
    Ok(())
}
