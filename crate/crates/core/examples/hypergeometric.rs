//! Evaluates the special functions behind the influence functional.
//!
//! ```text
//! cargo run --example hypergeometric
//! ```

use majorana_lab::specfun::{self, EvalOptions};
use majorana_lab::OhmicEnvironment;

fn main() -> majorana_lab::Result<()> {
    let opts = EvalOptions::default();

    println!("Gamma function");
    for x in [0.5, 1.5, 2.5, -0.5, 4.0] {
        println!("  Γ({x:>4}) = {:.15}", specfun::gamma(x)?);
    }

    println!("\n1F1(a; 1/2; z) and M - 1 (cancellation-free)");
    for (a, z) in [(1.0, -0.5), (0.25, -10.0), (1.5, -100.0), (-0.25, -900.0)] {
        let m = specfun::hyp1f1(a, 0.5, z, &opts)?;
        let m1 = specfun::hyp1f1_minus_one(a, 0.5, z, &opts)?;
        let dm = specfun::dhyp1f1_dz(a, 0.5, z, &opts)?;
        println!("  a={a:<5} z={z:<7} M={m:<24e} M-1={m1:<24e} dM/dz={dm:e}");
    }

    println!("\n2F2(1,1; 3/2,2; z)");
    for z in [-0.25, -4.0, -100.0, -2500.0] {
        let f = specfun::hyp2f2_11_32_2(z, &opts)?;
        let df = specfun::dhyp2f2_11_32_2_dz(z, &opts)?;
        println!("  z={z:<8} F={f:<24e} dF/dz={df:e}");
    }

    // a tight term budget makes a large-argument evaluation report failure
    let tight = EvalOptions::new(1e-13, 20)?;
    let env = OhmicEnvironment::new(3.0, 1.0)?.with_options(tight);
    match env.i_q(80.0) {
        Ok(v) => println!("\nI_Q(80) within 20 terms: {v:e}"),
        Err(e) => println!("\nI_Q(80) within 20 terms: {e}"),
    }
    Ok(())
}
