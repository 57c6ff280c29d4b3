//! Quantum Fisher information for the field B, by the spectral formula and
//! by the closed form, in Markovian and non-Markovian baths.
//!
//! ```text
//! cargo run --release --example magnetometry
//! ```

use std::f64::consts::FRAC_PI_2;

use majorana_lab::magnetometry;
use majorana_lab::nonmarkov::TimeWindow;
use majorana_lab::DephasingChannel;

fn main() -> majorana_lab::Result<()> {
    let w = TimeWindow::new(10.0, 21, TimeWindow::DEFAULT_REFINE_TOL)?;
    for q in [1.0, 3.0] {
        let ch = DephasingChannel::from_params(q, 1.6, 1.0)?;
        println!("Q = {q}, Γ₀ = 1.6, B = 1");
        println!("  {:>5} {:>14} {:>14} {:>10}", "t", "F closed", "F spectral", "rel gap");
        for s in magnetometry::qfi_series(&ch, FRAC_PI_2, &w)? {
            println!("  {:>5.1} {:>14.6e} {:>14.6e} {:>10.2e}", s.t, s.f_closed, s.f_general, s.rel_gap);
        }
        println!();
    }
    Ok(())
}
