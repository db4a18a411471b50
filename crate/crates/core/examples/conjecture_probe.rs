//! Compare normality of Γ_{n+r}|Γ_r with normality of the matching zig-zag
//! cover over a small range. Disagreements are marked.

use std::error::Error;
use std::io::{self, Write};

use zetagraph::covering::conjecture_probe;

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let mut disagreements = 0;
    for base in 1..=2 {
        for cover in base + 1..=base + 3 {
            let report = conjecture_probe(base, cover)?;
            disagreements += usize::from(!report.coincide);
            writeln!(out, "{report}")?;
        }
    }
    writeln!(out, "{disagreements} disagreements")?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run(&mut io::stdout().lock())
}
