//! Reading and writing the JSON formats.

use lmconvex::io::{parse_json, StructureFile, Workspace};

const STRUCTURE: &str = r#"{
  "domain": "crisp",
  "carrier": ["a", "b", "c"],
  "M": "chain3",
  "default": "0",
  "entries": [
    {"set": [], "degree": "1"},
    {"set": ["a", "b", "c"], "degree": "1"},
    {"set": ["a"], "degree": "1"},
    {"set": ["a", "b"], "degree": "1/2"}
  ]
}"#;

fn main() -> Result<(), lmconvex::Error> {
    let mut ws = Workspace::new();
    let file: StructureFile = parse_json(STRUCTURE, "inline")?;
    let s = ws.structure_from_file(&file)?;
    println!("loaded {} entries over M with {} elements", s.support().len(), s.m().len());
    let out = serde_json::to_string_pretty(&ws.structure_to_file(&s)).expect("serializes");
    println!("{out}");

    match parse_json::<StructureFile>("{\"domain\": \"crisp\",\n \"M\": 3}", "broken.json") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
