//! The generalized replacement product Γ_n ⓖ Γ_r and its identification with
//! Γ_{n+r} through f(v,u) = uv.

use std::error::Error;
use std::io::{self, Write};

use zetagraph::basilica::{all_words, build_schreier, suffix_distinct_check};
use zetagraph::multigraph::{verify_isomorphism, PortMatching, VertexMap};
use zetagraph::products::{alternation_path, concatenation_label, generalized_replacement};

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    for (n, r) in [(1, 2), (3, 2), (2, 3)] {
        let p = generalized_replacement(n, r)?;
        let g = build_schreier(n + r)?;
        let f = VertexMap::from_fn(&p, &g, concatenation_label)?;
        let verdict = verify_isomorphism(&p, &g, &f, PortMatching::SameLabel);
        writeln!(out, "Γ_{n} ⓖ Γ_{r} ≅ Γ_{}: {}", n + r, verdict.is_isomorphic())?;
    }

    let p = generalized_replacement(2, 2)?;
    for v in all_words(2) {
        let path = alternation_path(&p, 2, &v)?;
        let labels: Vec<&str> = path.iter().map(|&x| p.label(x)).collect();
        writeln!(out, "walk from ({v},00): {}", labels.join(" "))?;
    }

    for v in all_words(2) {
        writeln!(out, "suffix check r=1 v={v}: {:?}", suffix_distinct_check(1, &v)?)?;
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run(&mut io::stdout().lock())
}
