//! Runs a sweep programmatically, writes CSV and JSON, and recovers the spec
//! from the CSV header.
//!
//! ```text
//! cargo run --release --example sweep_recipes
//! ```
//!
//! The same sweeps are available from the command line, e.g.
//! `majorana-lab corr-series --spec recipes/fig4.json --out fig4.csv`.

use std::path::Path;

use majorana_lab::sweep::{self, Format};

fn main() -> majorana_lab::Result<()> {
    let recipe = Path::new(env!("CARGO_MANIFEST_DIR")).join("recipes/fig8.json");
    let spec = sweep::parse_spec(Some(&recipe), Default::default())?;
    println!("spec: {}", spec.echo());
    let table = sweep::run(&spec)?;
    println!("{} rows × {} columns: {:?}", table.rows.len(), table.columns.len(), table.columns);

    let f = table.column("f_closed").expect("qfi column");
    let q = table.column("Q").expect("Q column");
    for target in [0.5, 1.0, 2.0, 3.0] {
        let peak = f.iter().zip(&q).filter(|(_, &qq)| qq == target).map(|(v, _)| *v).fold(0.0, f64::max);
        println!("  Q = {target}: max F_B = {peak:.6e}");
    }

    let inline = sweep::parse_spec_str(
        r#"{"mode": "nm-scan", "q_values": "2:3:0.25", "gamma0_values": [1.6], "n_grid": 1024}"#,
    )?;
    let scan = sweep::run(&inline)?;
    let dir = std::env::temp_dir().join("majorana-lab-example");
    std::fs::create_dir_all(&dir).map_err(|source| majorana_lab::Error::Io { path: dir.clone(), source })?;
    let csv = dir.join("nm_scan.csv");
    scan.write(Some(&csv), Format::Csv)?;
    scan.write(Some(&dir.join("nm_scan.json")), Format::Json)?;
    let text = std::fs::read_to_string(&csv).map_err(|source| majorana_lab::Error::Io { path: csv.clone(), source })?;
    print!("\n{text}");
    let back = sweep::spec_from_csv(&text)?;
    println!("\nspec recovered from CSV header matches: {}", back == inline);
    Ok(())
}
