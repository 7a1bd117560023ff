//! Random polynomials and random problem documents.

use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::json;
use toric_degen::deformation::{DeformationSystem, DeformedEquation, EquationKind};
use toric_degen::parser::parse_poly;
use toric_degen::value::Value;
use toric_degen::{Field, Monomial, Polynomial, Variable, WeightedRing};

/// `(exponents, numerator, denominator)` triples.
pub fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
}

pub fn poly(ring: &Arc<WeightedRing>, t: &[(Vec<u32>, i64, i64)]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        t.iter()
            .map(|(e, n, d)| (Monomial(e.clone()), BigRational::new((*n).into(), (*d).into()))),
    )
    .unwrap()
}

#[derive(Clone, Debug)]
pub struct Doc {
    pub prime: Option<u64>,
    pub vars: Vec<(String, Vec<String>)>,
    pub eqs: Vec<(String, bool, Option<String>)>,
}

pub fn doc() -> impl Strategy<Value = Doc> {
    let name = prop::sample::select(vec!["x", "y", "u", "z1", "u_2", "x"]);
    let weight = prop::sample::select(vec!["1", "2", "3", "3/2", "5", "4", "0", "-1", "7/3"]);
    let weights = prop_oneof![
        8 => prop::collection::vec(weight.clone(), 1..=1),
        1 => prop::collection::vec(weight, 2..=2),
    ];
    let var = (name.clone(), weights).prop_map(|(n, w)| (n.to_string(), w.into_iter().map(String::from).collect()));
    let atom = prop::sample::select(vec!["x", "y", "u", "z1", "u_2", "w", "1", "2", "-3", "1/2"]);
    let term = prop::collection::vec((atom, 0u32..4), 1..=2).prop_map(|fs| {
        fs.into_iter()
            .map(|(a, e)| if e > 1 { format!("{a}^{e}") } else { a.to_string() })
            .collect::<Vec<_>>()
            .join("*")
    });
    let expr = prop::collection::vec((any::<bool>(), term), 1..=4).prop_map(|ts| {
        let mut s = String::new();
        for (i, (neg, t)) in ts.into_iter().enumerate() {
            match (i, neg) {
                (0, false) => {}
                (0, true) => s.push('-'),
                (_, false) => s.push_str(" + "),
                (_, true) => s.push_str(" - "),
            }
            s.push_str(&t);
        }
        s
    });
    let known = prop_oneof![
        Just("y^2 - x^3".to_string()),
        Just("y^2 - x^3 - u".to_string()),
        Just("u^2 - x^2*y".to_string()),
        Just("x*y - u".to_string()),
    ];
    let eq = (
        prop_oneof![1 => expr, 1 => known],
        any::<bool>(),
        prop::option::of(name.prop_map(String::from)),
    );
    (
        prop::option::of(prop::sample::select(vec![2u64, 7, 9, 101])),
        prop::collection::vec(var, 1..=3),
        prop::collection::vec(eq, 0..=2),
    )
        .prop_map(|(prime, vars, eqs)| Doc { prime, vars, eqs })
}

pub fn to_document(d: &Doc) -> String {
    let field = match d.prime {
        Some(p) => json!({ "prime": p }),
        None => json!("rational"),
    };
    json!({
        "field": field,
        "variables": d.vars.iter().map(|(n, w)| json!({"name": n, "weight": w})).collect::<Vec<_>>(),
        "equations": d.eqs.iter().map(|(e, fi, t)| {
            let mut o = json!({"expr": e, "kind": if *fi { "Fi" } else { "Fq" }});
            if let Some(t) = t {
                o["trailing_var"] = json!(t);
            }
            o
        }).collect::<Vec<_>>(),
    })
    .to_string()
}

/// The same document built through the in-memory constructors.
pub fn construct(d: &Doc) -> toric_degen::Result<DeformationSystem> {
    let field = d.prime.map_or(Field::Rational, Field::Prime);
    let vars = d
        .vars
        .iter()
        .map(|(n, w)| {
            Ok(Variable {
                name: n.clone(),
                weight: Value::parse_coords(w)?,
            })
        })
        .collect::<toric_degen::Result<Vec<_>>>()?;
    let ring = WeightedRing::new(field, vars)?;
    let mut eqs = Vec::new();
    for (e, fi, t) in &d.eqs {
        let p = parse_poly(e, &ring)?;
        let kind = match (fi, t) {
            (false, None) => EquationKind::Fq,
            (false, Some(_)) => return Err(toric_degen::Error::Equation("Fq with a trailing variable".into())),
            (true, None) => EquationKind::Fi { trailing: None },
            (true, Some(t)) => EquationKind::Fi {
                trailing: Some(ring.var_index(t)?),
            },
        };
        eqs.push(DeformedEquation::new(p, kind)?);
    }
    DeformationSystem::new(&ring, eqs)
}

