//! Artin matrices and L-function reciprocals of two-sheeted covers, and the
//! factorization of the cover's zeta function over the characters.

use std::error::Error;
use std::io::{self, Write};

use zetagraph::covering::CoverSpec;
use zetagraph::multigraph::VertexOrder;
use zetagraph::zeta::{
    artin_matrices, artin_reciprocal, characters, divisibility_check, factorization_check, ihara_reciprocal, Divisibility,
    GroupLabeling,
};

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let covers = [
        ("Γ_3|Γ_2", CoverSpec::schreier_cover(1, 2)?, vec!["11", "01", "00", "10"]),
        (
            "Γ_2ⓩC4|Γ_1ⓩC4",
            CoverSpec::zigzag_cover(1, 1)?,
            vec!["(0,a^-1)", "(1,a)", "(1,a^-1)", "(0,a)", "(0,b^-1)", "(1,b)", "(1,b^-1)", "(0,b)"],
        ),
    ];
    for (name, c, order) in &covers {
        let lab = GroupLabeling::from_deck_group(c)?;
        let mats = artin_matrices(c, &lab, &VertexOrder::from_labels(&c.base, order)?)?;
        for (g, m) in mats.iter().enumerate() {
            writeln!(out, "{name} A({}):\n{m}", lab.group().name(g))?;
        }
        for chi in characters(lab.group())? {
            writeln!(out, "{name} χ={:?}: L^-1 = {}", chi.values(), artin_reciprocal(c, &lab, &chi)?)?;
        }
        writeln!(out, "{name}: ζ^-1 is the product of the L^-1: {}", factorization_check(c, &lab)?)?;
    }

    let (_, c, _) = &covers[0];
    let base = ihara_reciprocal(&c.base, &VertexOrder::identity(&c.base))?;
    let cover = ihara_reciprocal(&c.cover, &VertexOrder::identity(&c.cover))?;
    match divisibility_check(&base, &cover)? {
        Divisibility::Quotient(q) => writeln!(out, "ζ_Γ3^-1 / ζ_Γ2^-1 = {q}")?,
        Divisibility::Remainder(r) => writeln!(out, "ζ_Γ2^-1 does not divide ζ_Γ3^-1, remainder {r}")?,
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run(&mut io::stdout().lock())
}
