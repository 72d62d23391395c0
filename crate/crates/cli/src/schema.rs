//! JSON schemas for command output, shipped in `schemas/`.

pub fn schema_for(command: &str) -> Option<&'static str> {
    Some(match command {
        "classify" => include_str!("../../../schemas/classify.json"),
        "sweep" => include_str!("../../../schemas/sweep.json"),
        "cores" => include_str!("../../../schemas/cores.json"),
        "gatekeepers" => include_str!("../../../schemas/gatekeepers.json"),
        "verify" => include_str!("../../../schemas/verify.json"),
        "prefix" => include_str!("../../../schemas/prefix.json"),
        "oracle" => include_str!("../../../schemas/oracle.json"),
        "structure12" => include_str!("../../../schemas/structure12.json"),
        _ => return None,
    })
}
