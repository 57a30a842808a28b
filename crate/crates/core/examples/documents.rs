//! Reading and writing the JSON documents used by the command-line tool.

use topoforce::forcing::EvalContext;
use topoforce::harness::io::{FormulaDoc, SpaceDoc, TermDoc, UniverseDoc};
use topoforce::harness::{example1_regression, SuiteReport};

fn main() {
    let space: SpaceDoc = serde_json::from_str(r#"{"points": ["s", "r"], "opens": [["r", "s"], [], ["s"]]}"#).unwrap();
    let t = space.to_space().unwrap();
    println!("canonical space: {}", serde_json::to_string(&SpaceDoc::from_space(&t)).unwrap());

    let term: TermDoc = serde_json::from_str(r#"{"open": [[{"nat": 2}, ["s"]]], "point": [[{"hf": [[]]}, "r"]]}"#).unwrap();
    let sigma = term.to_term(&t).unwrap();
    println!("term: {}", sigma.render(&t));
    println!("settled at r: {}", serde_json::to_string(&TermDoc::from_term(&t, &sigma.settle(&t, t.point("r").unwrap()))).unwrap());

    let formula: FormulaDoc = serde_json::from_str(r#"{"text": "exists x. x in sigma", "params": {"sigma": {"open": [[{"nat": 0}, ["s"]]], "point": [[{"nat": 1}, "r"]]}}}"#).unwrap();
    let (phi, _) = formula.to_formula(&t).unwrap();
    let universe: UniverseDoc = serde_json::from_str(r#"{"hat_rank": 1, "cap": 10, "close_under": ["settle", "subterms"]}"#).unwrap();
    let spec = universe.to_spec(&t).unwrap();
    let ctx = EvalContext::new(t.clone(), spec.build(&t));
    println!("tv({}) = {}", formula.text, t.show(ctx.tv(&phi)));

    let report = example1_regression();
    let json = serde_json::to_string(&report).unwrap();
    let back: SuiteReport = serde_json::from_str(&json).unwrap();
    println!("report round-trips: {} ({} bytes, {} checks)", back == report, json.len(), back.checks.len());
}
