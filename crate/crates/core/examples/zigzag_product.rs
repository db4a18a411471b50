//! Γ_n ⓩ C₄: rotation map, regularity and adjacency spectrum.

use std::error::Error;
use std::io::{self, Write};

use zetagraph::basilica::build_schreier;
use zetagraph::multigraph::{adjacency_matrix, VertexOrder};
use zetagraph::products::{c4, double_rotation_check, zigzag_c4, zigzag_rotation_table};
use zetagraph::zeta::char_poly;

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let y = zigzag_c4(1)?;
    writeln!(out, "Γ_1 ⓩ C4: {} vertices, degree {:?}", y.vertex_count(), y.is_regular())?;
    for v in ["(0,a^-1)", "(1,a)", "(0,b)"] {
        let x = y.index_of(v)?;
        for (port, name) in y.ports(x).iter().enumerate() {
            writeln!(out, "  Rot({v}, {name}) -> {}", y.label(y.target(x, port)))?;
        }
    }

    for n in 1..=4 {
        let table = zigzag_rotation_table(&build_schreier(n)?, &c4())?;
        let z = zigzag_c4(n)?;
        writeln!(
            out,
            "Γ_{n} ⓩ C4: {} vertices, involution {}, connected {}",
            z.vertex_count(),
            double_rotation_check(&table),
            z.is_connected()
        )?;
    }

    let z2 = zigzag_c4(2)?;
    let cp = char_poly(&adjacency_matrix(&z2, &VertexOrder::identity(&z2))?);
    writeln!(out, "char poly of Γ_2 ⓩ C4: {}", cp.display_in("x"))?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run(&mut io::stdout().lock())
}
