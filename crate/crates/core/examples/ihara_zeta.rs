//! Ihara zeta reciprocals from the Bass determinant, checked against the
//! non-backtracking determinant.

use std::error::Error;
use std::io::{self, Write};

use zetagraph::basilica::build_schreier;
use zetagraph::multigraph::{cycle_graph, VertexOrder};
use zetagraph::products::zigzag_c4;
use zetagraph::zeta::{ihara_reciprocal, nonbacktracking_reciprocal, parse_factored};

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let g2 = build_schreier(2)?;
    let z = ihara_reciprocal(&g2, &VertexOrder::identity(&g2))?;
    writeln!(out, "ζ_Γ2(t)^-1 = {z}")?;
    writeln!(out, "coefficients: {:?}", z.to_decimal_strings())?;
    let factored = parse_factored("(1-t^2)^4 (t-1)(3t-1)(3t^2+1)(9t^4-2t^2+1)")?;
    writeln!(out, "equals the factored form: {}", z == factored)?;

    let graphs = [
        ("Γ_3", build_schreier(3)?),
        ("Γ_1 ⓩ C4", zigzag_c4(1)?),
        ("C_5", cycle_graph(5)?),
    ];
    for (name, g) in &graphs {
        let bass = ihara_reciprocal(g, &VertexOrder::identity(g))?;
        let nb = nonbacktracking_reciprocal(g)?;
        writeln!(out, "{name}: degree {:?}, oracle agrees {}", bass.degree(), bass == nb)?;
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run(&mut io::stdout().lock())
}
