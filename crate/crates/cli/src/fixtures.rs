//! Bundled fixtures, addressable on the command line as `@name`, and the
//! fixture check run by `verify all`.

use serde::Deserialize;
use serde_json::json;

use m22_core::special::Check;

const FILES: &[(&str, &str)] = &[
    ("c0.json", include_str!("../fixtures/c0.json")),
    ("zero.json", include_str!("../fixtures/zero.json")),
    ("node-node.json", include_str!("../fixtures/node-node.json")),
    ("c0-desc.json", include_str!("../fixtures/c0-desc.json")),
    ("ccusp10.json", include_str!("../fixtures/ccusp10.json")),
    ("irreducible-weierstrass.json", include_str!("../fixtures/irreducible-weierstrass.json")),
    ("family-a.json", include_str!("../fixtures/family-a.json")),
    ("family-b.json", include_str!("../fixtures/family-b.json")),
    ("family-c.json", include_str!("../fixtures/family-c.json")),
    ("family-d.json", include_str!("../fixtures/family-d.json")),
    ("family-e.json", include_str!("../fixtures/family-e.json")),
    ("family-f.json", include_str!("../fixtures/family-f.json")),
    ("family-a-point.json", include_str!("../fixtures/family-a-point.json")),
    ("family-b-point.json", include_str!("../fixtures/family-b-point.json")),
    ("family-c-point.json", include_str!("../fixtures/family-c-point.json")),
    ("family-d-point.json", include_str!("../fixtures/family-d-point.json")),
    ("family-e-point.json", include_str!("../fixtures/family-e-point.json")),
    ("family-f-point.json", include_str!("../fixtures/family-f-point.json")),
    ("cases.json", include_str!("../fixtures/cases.json")),
];

pub const FAMILIES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn get(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Case {
    args: Vec<String>,
    #[serde(default)]
    stdout: Option<String>,
    code: u8,
}

fn run(args: &[&str]) -> (String, u8) {
    crate::run_args(std::iter::once("m22").chain(args.iter().copied()).map(String::from))
}

fn first_word(s: &str) -> &str {
    s.split(|c: char| c == ':' || c.is_whitespace()).next().unwrap_or("")
}

pub fn check() -> Check {
    let cases: Vec<Case> = serde_json::from_str(get("cases.json").expect("bundled")).expect("bundled cases parse");
    let mut failures = Vec::new();
    for c in &cases {
        let args: Vec<&str> = c.args.iter().map(String::as_str).collect();
        let (out, code) = run(&args);
        let text_ok = c.stdout.as_ref().is_none_or(|s| *s == out);
        if code != c.code || !text_ok {
            failures.push(json!({ "args": c.args, "stdout": out, "code": code }));
        }
    }
    // a family and its extracted point must get the same verdict
    let mut agreements = 0;
    for f in FAMILIES {
        for ch in ["i", "ii", "iii"] {
            let fam = run(&["classify", "--family", &format!("@family-{f}.json"), "--chamber", ch]);
            let pt = run(&["classify", "--point", &format!("@family-{f}-point.json"), "--chamber", ch]);
            if fam.1 == 0 && pt.1 == 0 && first_word(&fam.0) == first_word(&pt.0) {
                agreements += 1;
            } else {
                failures.push(json!({ "family": f, "chamber": ch, "family_verdict": fam.0, "point_verdict": pt.0 }));
            }
        }
    }
    Check {
        pass: failures.is_empty(),
        details: json!({ "cases": cases.len(), "family_agreements": agreements, "failures": failures }),
    }
}
