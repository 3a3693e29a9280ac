//! Driving the report runner directly (the census-cli binary is a thin
//! wrapper around exactly this).  Identical configs produce byte-identical
//! output; rank-2 runs resume from the JSON-lines verdict cache.

use drinfeld_census::runner::{run, Format, Mode, RunConfig};

fn main() -> drinfeld_census::Result<()> {
    let cfg = RunConfig {
        p: 5,
        e: 1,
        mode: Mode::Rank2,
        l: 2,
        s: vec!["T".into()],
        d_cap: 2,
        seed: 0,
        cache_dir: None,
        format: Format::Table,
        both_orientations: false,
    };
    print!("{}", run(&cfg)?);

    let bounds = RunConfig {
        mode: Mode::Bounds,
        format: Format::Csv,
        ..cfg.clone()
    };
    println!();
    print!("{}", run(&bounds)?);
    Ok(())
}
