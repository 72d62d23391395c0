//! Worked examples for the README, regenerated from the library.

use std::fmt::Write;

use indsat::named::{bull, cycle, icosahedron_complement, path};
use indsat::{classify, induced_saturated, parse_graph6_str, to_graph6, Graph, Saturation};

fn examples() -> Vec<(&'static str, Graph)> {
    vec![
        ("P4", path(4)),
        ("C5", cycle(5)),
        ("bull", bull()),
        ("E?qw", parse_graph6_str("E?qw").expect("valid")),
        ("F?q~w", parse_graph6_str("F?q~w").expect("valid")),
        ("icosahedron complement", icosahedron_complement()),
    ]
}

/// Markdown listing a certificate for each example, then the saturation
/// check of the icosahedron complement against P5. Deterministic.
pub fn generate_docs_examples() -> Result<String, indsat::Error> {
    let mut s = String::from("# Worked certificates\n\nGenerated by `indsat docs`.\n");
    for (name, g) in examples() {
        let cert = classify(&g)?;
        let witness = serde_json::to_string(&cert.witness).expect("json");
        writeln!(s, "\n## {name} (`{}`)\n", to_graph6(&g)).expect("string");
        writeln!(s, "- case: `{}`", cert.case.name()).expect("string");
        writeln!(s, "- complemented: {}", cert.complemented).expect("string");
        writeln!(s, "- witness: `{witness}`").expect("string");
    }
    let g = icosahedron_complement();
    let p5 = path(5);
    let verdict = match induced_saturated(&g, &p5)? {
        Saturation::Saturated => format!("is P5-free and all {} single perturbations create an induced P5", g.pairs().count()),
        Saturation::NotFree { .. } => "contains an induced P5".to_string(),
        Saturation::Unfixed { pair } => format!("is not P5-saturated: perturbing {pair:?} leaves it P5-free"),
    };
    writeln!(s, "\n## Saturation check\n\nThe icosahedron complement (`{}`) {verdict}.", to_graph6(&g)).expect("string");
    Ok(s)
}
