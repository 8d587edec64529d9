//! Typed results and their text / JSON renderings.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use vmcat::k0sigma::K0LambdaPoly;
use vmcat::weyl::Letter;
use vmcat::{
    DiffPoly, G0NElem, IndResCombo, K0NElem, K0SigmaElem, LambdaPoly, QPoly, Report, WeylElem,
    XPoly,
};

pub enum Output {
    Poly(DiffPoly),
    Lambda(LambdaPoly),
    K0(K0SigmaElem),
    K0Lambda(K0LambdaPoly),
    K0N(K0NElem),
    G0N(G0NElem),
    X(XPoly),
    Q(QPoly),
    Weyl(WeylElem),
    Quantized { words: IndResCombo, weyl: WeylElem },
    Count(BigUint),
    Report(Report),
}

impl Output {
    pub fn text(&self) -> String {
        match self {
            Output::Poly(v) => v.to_string(),
            Output::Lambda(v) => v.to_string(),
            Output::K0(v) => v.to_string(),
            Output::K0Lambda(v) => v.to_string(),
            Output::K0N(v) => v.to_string(),
            Output::G0N(v) => v.to_string(),
            Output::X(v) => v.to_string(),
            Output::Q(v) => v.to_string(),
            Output::Weyl(v) => v.to_string(),
            Output::Quantized { words, weyl } => format!("{words}\n{weyl}"),
            Output::Count(n) => n.to_string(),
            Output::Report(r) => {
                let passed = r.records.iter().filter(|x| x.pass).count();
                format!("{r}{passed}/{} identities passed", r.records.len())
            }
        }
    }

    pub fn json(&self) -> Value {
        match self {
            Output::Poly(v) => json!({"type": "diffpoly", "text": v.to_string(), "terms": poly_terms(v)}),
            Output::Lambda(v) => {
                let terms: Vec<Value> = v
                    .coeffs()
                    .map(|(k, c)| json!({"lam": k, "coeff": poly_terms(c)}))
                    .collect();
                json!({"type": "lambda", "text": v.to_string(), "terms": terms})
            }
            Output::K0(v) => json!({"type": "k0sigma", "text": v.to_string(), "terms": k0_terms(v)}),
            Output::K0Lambda(v) => {
                let terms: Vec<Value> = v
                    .coeffs()
                    .map(|(k, c)| json!({"lam": k, "coeff": k0_terms(c)}))
                    .collect();
                json!({"type": "k0sigma-lambda", "text": v.to_string(), "terms": terms})
            }
            Output::K0N(v) => {
                let terms: Vec<Value> = v.terms().map(|(n, c)| json!({"n": n, "c": int(c)})).collect();
                json!({"type": "k0n", "text": v.to_string(), "terms": terms})
            }
            Output::G0N(v) => {
                let terms: Vec<Value> = v.terms().map(|(n, c)| json!({"n": n, "c": int(c)})).collect();
                json!({"type": "g0n", "text": v.to_string(), "terms": terms})
            }
            Output::X(v) => {
                let terms: Vec<Value> = v.terms().map(|(n, c)| json!({"deg": n, "c": int(c)})).collect();
                json!({"type": "xpoly", "text": v.to_string(), "terms": terms})
            }
            Output::Q(v) => {
                let terms: Vec<Value> = v
                    .terms()
                    .map(|(n, c)| json!({"deg": n, "num": int(c.numer()), "den": int(c.denom())}))
                    .collect();
                json!({"type": "qpoly", "text": v.to_string(), "terms": terms})
            }
            Output::Weyl(v) => json!({"type": "weyl", "text": v.to_string(), "terms": weyl_terms(v)}),
            Output::Quantized { words, weyl } => {
                let ws: Vec<Value> = words
                    .words()
                    .map(|(w, c)| {
                        let letters: Vec<&str> = w
                            .iter()
                            .map(|l| match l {
                                Letter::Ind => "Ind",
                                Letter::Res => "Res",
                            })
                            .collect();
                        json!({"word": letters, "c": int(c)})
                    })
                    .collect();
                json!({
                    "type": "quantization",
                    "words": {"text": words.to_string(), "terms": ws},
                    "weyl": {"text": weyl.to_string(), "terms": weyl_terms(weyl)},
                })
            }
            Output::Count(n) => json!({"type": "integer", "value": int(&BigInt::from(n.clone()))}),
            Output::Report(r) => {
                let mut v = r.to_json();
                v["type"] = json!("report");
                v["pass"] = json!(r.passed());
                v
            }
        }
    }
}

/// Integers that fit in `i64` become JSON numbers; larger ones are decimal strings.
pub fn int(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn poly_terms(p: &DiffPoly) -> Vec<Value> {
    p.terms()
        .map(|(m, c)| json!({"mono": m.orders(), "c": int(c)}))
        .collect()
}

fn k0_terms(e: &K0SigmaElem) -> Vec<Value> {
    e.terms()
        .map(|(p, c)| json!({"partition": p.parts(), "c": int(c)}))
        .collect()
}

fn weyl_terms(w: &WeylElem) -> Vec<Value> {
    w.terms()
        .map(|((a, b), c)| json!({"x": a, "d": b, "c": int(c)}))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(int(&BigInt::from(-7)), json!(-7));
        let big = BigInt::from(i64::MAX) * 10;
        assert_eq!(int(&big), json!("92233720368547758070"));
    }

    #[test]
    fn lambda_payload_shape() {
        let v: LambdaPoly = "(d1L) + (2 L)*lam".parse().unwrap();
        let out = Output::Lambda(v).json();
        assert_eq!(out["terms"][0]["lam"], 0);
        assert_eq!(out["terms"][0]["coeff"][0]["mono"], json!([1]));
        assert_eq!(out["terms"][1]["coeff"][0]["c"], 2);
    }
}
