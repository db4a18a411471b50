//! Frobenius permutations, monodromy and normality of Schreier and zig-zag
//! covers, with deck maps and per-sheet connectivity.

use std::error::Error;
use std::io::{self, Write};

use zetagraph::basilica::{apply, Generator};
use zetagraph::covering::{
    deck_transformations, frobenius_permutations, is_normal, sheet_connectivity, true_monodromy_order, CoverSpec,
    DEFAULT_GROUP_CAP,
};

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let order = ["110", "010", "000", "100", "101", "001", "011", "111"];
    let c = CoverSpec::schreier_cover(3, 2)?.with_sheet_order(&order)?;
    let perms = frobenius_permutations(&c)?;
    for (name, p) in &perms {
        writeln!(out, "Γ_5|Γ_2 σ({name}) = {p}")?;
    }
    let product = perms[0].1.compose(&perms[1].1)?;
    writeln!(out, "σ(e_a)σ(e_b) = {product}, order {}", product.order())?;
    writeln!(
        out,
        "Γ_5|Γ_2: monodromy {}, normal {}",
        true_monodromy_order(&c, DEFAULT_GROUP_CAP)?,
        is_normal(&c)?
    )?;

    for (n, r) in [(1, 2), (2, 2), (1, 3)] {
        let c = CoverSpec::schreier_cover(n, r)?;
        writeln!(
            out,
            "Γ_{}|Γ_{r}: {} sheets, {} deck maps, normal {}",
            n + r,
            c.sheet_count(),
            deck_transformations(&c).len(),
            is_normal(&c)?
        )?;
    }

    let z = CoverSpec::zigzag_cover(2, 1)?;
    for key in z.sheet_keys() {
        let fixed = apply(Generator::A, &key.parse()?)?.to_string() == *key;
        writeln!(out, "Γ_3ⓩC4|Γ_1ⓩC4 sheet {key}: connected {}, a-fixed {fixed}", sheet_connectivity(&z, key)?)?;
    }
    writeln!(out, "Γ_3ⓩC4|Γ_1ⓩC4: {} deck maps, normal {}", deck_transformations(&z).len(), is_normal(&z)?)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run(&mut io::stdout().lock())
}
