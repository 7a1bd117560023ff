mod support;

use proptest::prelude::*;
use toric_degen::problem::{cusp_family, dump, load_str, parse_problem, to_json};

use support::gen::{construct, doc, to_document};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn loader_matches_constructors(d in doc()) {
        let loaded = load_str(&to_document(&d));
        let built = construct(&d);
        prop_assert_eq!(loaded.is_ok(), built.is_ok(), "loader {:?} vs constructors {:?}", loaded.as_ref().err(), built.as_ref().err());
        if let (Ok(l), Ok(b)) = (loaded, built) {
            prop_assert_eq!(l.system.polynomials(), b.polynomials());
            let kinds: Vec<_> = l.system.equations().iter().map(|e| e.kind().clone()).collect();
            let expected: Vec<_> = b.equations().iter().map(|e| e.kind().clone()).collect();
            prop_assert_eq!(kinds, expected);
            let again = load_str(&to_json(&dump(&l.system, &l.base))).unwrap();
            prop_assert_eq!(again.system.polynomials(), l.system.polynomials());
        }
    }
}

#[test]
fn dumped_systems_certify_identically() {
    for (name, p) in support::bundled() {
        let dumped = match &p.branch {
            Some(b) => toric_degen::problem::dump_branch(b),
            None => dump(&p.system, &p.base),
        };
        let again = load_str(&to_json(&dumped)).unwrap();
        let a = p.system.clone().certify().unwrap();
        let b = again.system.clone().certify().unwrap();
        let (ca, cb) = (a.certificate().unwrap(), b.certificate().unwrap());
        assert_eq!(ca.standard_basis(), cb.standard_basis(), "{name}");
        assert_eq!(ca.head_basis(), cb.head_basis(), "{name}");
        assert_eq!(ca.dimension(), cb.dimension(), "{name}");
        assert_eq!(again.base, p.base, "{name}");
    }
}

#[test]
fn json_is_sorted_and_exact() {
    let text = to_json(&cusp_family(9).unwrap());
    assert!(text.find("\"base_indices\"").unwrap() < text.find("\"equations\"").unwrap());
    assert!(text.find("\"equations\"").unwrap() < text.find("\"field\"").unwrap());
    assert!(text.contains("\"19\""));
    assert_eq!(parse_problem(&text).unwrap(), cusp_family(9).unwrap());
}

#[test]
fn load_errors_name_their_location() {
    let cases = [
        (r#"{"field": "rational", "variables": [{"name": "x", "weight": ["0"]}]}"#, "variables[0].weight", "weights must be positive"),
        (r#"{"field": "rational", "variables": [{"name": "x", "weight": ["1"]}], "equations": [{"expr": "x^", "kind": "Fq"}]}"#, "equations[0].expr", "syntax error"),
        (r#"{"field": "rational", "variables": [{"name": "x", "weight": ["1"]}], "equations": [{"expr": "x - 1", "kind": "Fi", "trailing_var": "q"}]}"#, "equations[0].trailing_var", "unknown variable"),
        (r#"{"field": "rational", "variables": [{"name": "x", "weight": ["1"]}], "bogus": 1}"#, "bogus", "unknown field"),
        (r#"{"field": "rational", "variables": [{"name": "x", "weight": ["1"]}], "base_indices": [3]}"#, "base_indices[0]", "out of range"),
        (r#"{"field": "rational", "variables": [{"name": "x", "weight": [1]}]}"#, "variables[0].weight[0]", "expected a string"),
        (r#"{"field": "rational", "branch": {"gammas": ["1", "3/2", "11/4"], "n": [2, 2], "digits": [[3], [4, 1]]}}"#, "branch", "branch data"),
    ];
    for (doc, path, msg) in cases {
        let err = load_str(doc).unwrap_err().to_string();
        assert!(err.starts_with(path), "{doc}: {err}");
        assert!(err.contains(msg), "{doc}: {err}");
    }
}

#[test]
fn empty_equation_list_is_a_polynomial_ring() {
    let p = load_str(r#"{"field": "rational", "variables": [{"name": "x", "weight": ["1", "0"]}, {"name": "y", "weight": ["0", "3"]}], "equations": []}"#).unwrap();
    let s = p.system.certify().unwrap();
    assert_eq!(s.certificate().unwrap().dimension(), 2);
}
