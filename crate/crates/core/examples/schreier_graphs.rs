//! Build the first Schreier graphs of the Basilica group and print their
//! shape, the action on a few words, and the DOT rendering of Γ_2.

use std::error::Error;
use std::io::{self, Write};

use zetagraph::basilica::{apply, apply_sequence, build_schreier, Generator, Word};
use zetagraph::multigraph::export_dot;

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    for n in 1..=4 {
        let g = build_schreier(n)?;
        let loops = g.edges().iter().filter(|(x, y)| x.vertex == y.vertex).count();
        writeln!(out, "Γ_{n}: {} vertices, {} edges, {loops} loops", g.vertex_count(), g.edge_count())?;
    }

    let w: Word = "0010".parse()?;
    for gen in [Generator::A, Generator::B] {
        writeln!(out, "{gen}({w}) = {}", apply(gen, &w)?)?;
    }
    // b^-1 a has order 2^n on X^n
    let step = [Generator::A, Generator::BInv];
    let mut x = Word::zeros(3)?;
    let mut k = 0;
    loop {
        x = apply_sequence(&step, &x)?;
        k += 1;
        if x == Word::zeros(3)? {
            break;
        }
    }
    writeln!(out, "b^-1 a returns 000 to itself after {k} steps")?;

    let g2 = build_schreier(2)?;
    for v in ["11", "01", "00", "10"] {
        writeln!(out, "N({v}) = {:?}", g2.neighbor_labels(v)?)?;
    }
    write!(out, "{}", export_dot(&g2))?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run(&mut io::stdout().lock())
}
