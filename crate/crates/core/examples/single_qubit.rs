//! Applies the single-qubit dephasing map and inspects its Bloch action.
//!
//! ```text
//! cargo run --example single_qubit
//! ```

use majorana_lab::state::{bloch_affine_map, evolve_single, trace_distance};
use majorana_lab::{DensityMatrix, DephasingChannel};
use num_complex::Complex64;

fn main() -> majorana_lab::Result<()> {
    let ch = DephasingChannel::from_params(3.0, 1.6, 1.0)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DensityMatrix::pure([Complex64::new(s, 0.0), Complex64::new(s, 0.0)])?;
    let minus = DensityMatrix::pure([Complex64::new(s, 0.0), Complex64::new(-s, 0.0)])?;
    let zero = DensityMatrix::pure([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])?;

    println!("{:>5} {:>10} {:>12} {:>12} {:>12}", "t", "alpha", "D(+,-)", "<0|ρ|0>", "det M");
    for k in 0..=8 {
        let t = 0.5 * k as f64;
        let a = ch.alpha(t)?;
        let d = trace_distance(&evolve_single(&plus, a)?, &evolve_single(&minus, a)?);
        let p0 = evolve_single(&zero, a)?.get(0, 0).re;
        let det = bloch_affine_map(a)?.det();
        println!("{t:>5.2} {a:>10.6} {d:>12.6} {p0:>12.6} {det:>12.6}");
    }

    let m = bloch_affine_map(ch.alpha(1.0)?)?;
    println!("\nBloch map at t = 1:");
    for row in m.m {
        println!("  [{:>9.6} {:>9.6} {:>9.6}]", row[0], row[1], row[2]);
    }
    println!("  c = {:?}", m.c);
    Ok(())
}
