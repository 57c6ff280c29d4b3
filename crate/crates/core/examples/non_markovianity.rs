//! Compares the BLP, LPP and coherence-based measures across Q.
//!
//! ```text
//! cargo run --release --example non_markovianity
//! ```

use std::f64::consts::FRAC_PI_4;

use majorana_lab::nonmarkov::{self, TimeWindow};
use majorana_lab::DephasingChannel;

fn main() -> majorana_lab::Result<()> {
    let gamma0 = 1.6;
    let w = TimeWindow::for_cutoff(gamma0)?;
    println!("Γ₀ = {gamma0}, window [0, {:.1}] on {} points", w.t_max, w.n_grid);
    println!("{:>5} {:>14} {:>14} {:>14}  revivals", "Q", "N_BLP", "N_LPP", "N_CB(π/2)");
    for q in [1.0, 2.0, 2.5, 3.0, 3.5, 4.0] {
        let ch = DephasingChannel::from_params(q, gamma0, 1.0)?;
        let r = nonmarkov::analyze(&ch, &w)?;
        println!(
            "{q:>5.1} {:>14.6e} {:>14.6e} {:>14.6e}  {}",
            r.n_blp,
            r.n_lpp,
            r.n_cb,
            r.revival_intervals.len()
        );
    }

    let ch = DephasingChannel::from_params(3.0, gamma0, 1.0)?;
    let detail = nonmarkov::blp_detail(&ch, &w)?;
    println!("\nQ = 3 revival intervals:");
    for (a, b) in &detail.intervals {
        println!("  [{a:.6}, {b:.6}]");
    }
    println!("cb(π/4) = {:e}", nonmarkov::cb(FRAC_PI_4, &ch, &w)?);

    let short = TimeWindow::new(20.0, 512, TimeWindow::DEFAULT_REFINE_TOL)?;
    let scan = nonmarkov::blp_pair_scan(&ch, &short, 9)?;
    println!(
        "pair scan on [0, 20]: best pair at θ_B = {:.4}, φ_B = {:.4} with {:e}",
        scan.theta_b, scan.phi_b, scan.value
    );
    Ok(())
}
