//! Certificate serialization. Field order is fixed by the struct layout and
//! every exact value is a string, so output is byte-stable.

use heightforge::exact::format_rational;
use heightforge::{BoundFormula, Certificate, Check, Error, ExactReal, HeightValue, Rational, VectorQ, Witness};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";
const APPROX_DIGITS: u32 = 12;

#[derive(Serialize)]
pub struct JsonCertificate {
    pub schema_version: &'static str,
    pub task: String,
    pub claim: &'static str,
    pub witness: JsonWitness,
    pub heights: Option<JsonHeight>,
    pub bound: Option<JsonBound>,
    pub verdict: &'static str,
    pub checks: Vec<JsonCheck>,
    pub trace: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum JsonWitness {
    None,
    Vector(Vec<String>),
    Basis(Vec<Vec<String>>),
    Polynomial(String),
}

#[derive(Serialize)]
pub struct JsonHeight {
    pub kind: &'static str,
    pub exact: String,
    pub approx: String,
}

/// Parameters keep the order the formula lists them in.
pub struct OrderedParams(Vec<(String, String)>);

impl Serialize for OrderedParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
pub struct JsonBound {
    pub name: String,
    pub expression: String,
    pub approx: String,
    pub params: OrderedParams,
}

#[derive(Serialize)]
pub struct JsonCheck {
    pub label: String,
    pub verdict: &'static str,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub rhs_approx: Option<String>,
}

#[derive(Serialize)]
pub struct JsonError {
    pub schema_version: &'static str,
    pub task: String,
    pub error: JsonErrorBody,
}

#[derive(Serialize)]
pub struct JsonErrorBody {
    pub code: &'static str,
    pub message: String,
}

fn vector(v: &VectorQ) -> Vec<String> {
    v.0.iter().map(format_rational).collect()
}

fn exact(x: &ExactReal) -> String {
    match x.rational_value() {
        Some(r) => format_rational(&r),
        None => x.to_string(),
    }
}

fn height(h: &HeightValue) -> JsonHeight {
    JsonHeight { kind: h.kind.symbol(), exact: exact(&h.value), approx: h.value.to_fixed(APPROX_DIGITS) }
}

fn bound(b: &BoundFormula) -> JsonBound {
    let params = b.params.iter().map(|(k, v): &(String, Rational)| (k.clone(), format_rational(v))).collect();
    JsonBound {
        name: b.name.clone(),
        expression: b.expression(),
        approx: b.value.to_fixed(APPROX_DIGITS),
        params: OrderedParams(params),
    }
}

fn check(c: &Check) -> JsonCheck {
    JsonCheck {
        label: c.label.clone(),
        verdict: c.verdict().as_str(),
        lhs: c.lhs.as_ref().map(exact),
        rhs: c.rhs.as_ref().map(BoundFormula::expression),
        rhs_approx: c.rhs.as_ref().map(|b| b.value.to_fixed(APPROX_DIGITS)),
    }
}

fn witness(w: &Witness) -> JsonWitness {
    match w {
        Witness::None => JsonWitness::None,
        Witness::Vector(v) => JsonWitness::Vector(vector(v)),
        Witness::Basis(b) => JsonWitness::Basis(b.iter().map(vector).collect()),
        Witness::Matrix(m) => JsonWitness::Basis(m.row_vectors().iter().map(vector).collect()),
        Witness::Polynomial(p) => JsonWitness::Polynomial(p.to_string()),
    }
}

pub fn certificate(task: &str, c: &Certificate) -> JsonCertificate {
    JsonCertificate {
        schema_version: SCHEMA_VERSION,
        task: task.to_string(),
        claim: c.claim.tag(),
        witness: witness(&c.witness),
        heights: c.witness_height.as_ref().map(height),
        bound: c.bound.as_ref().map(bound),
        verdict: c.verdict.as_str(),
        checks: c.checks.iter().map(check).collect(),
        trace: c.trace.clone(),
        notes: c.notes.clone(),
    }
}

pub fn error(task: &str, e: &Error) -> JsonError {
    JsonError {
        schema_version: SCHEMA_VERSION,
        task: task.to_string(),
        error: JsonErrorBody { code: e.code(), message: e.to_string() },
    }
}

/// Pretty-printed with `indent` spaces, or compact when `indent` is 0.
/// Always ends with a newline.
pub fn render<T: Serialize>(value: &T, indent: usize) -> String {
    let mut out = if indent == 0 {
        serde_json::to_vec(value).expect("plain data serializes")
    } else {
        let pad = vec![b' '; indent];
        let mut buf = Vec::new();
        let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
        value.serialize(&mut ser).expect("plain data serializes");
        buf
    };
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use heightforge::exact::int;
    use heightforge::heights::height_projective;
    use heightforge::Claim;

    #[test]
    fn params_keep_insertion_order() {
        let b = BoundFormula::new("demo").param("z", int(1)).param("a", int(2)).factor(int(3));
        let text = render(&bound(&b), 0);
        assert_eq!(
            text,
            "{\"name\":\"demo\",\"expression\":\"3\",\"approx\":\"3.000000000000\",\"params\":{\"z\":\"1\",\"a\":\"2\"}}\n"
        );
    }

    #[test]
    fn height_of_unit_vector() {
        let v = VectorQ::from_ints(&[0, 1]);
        let c = Certificate::new(Claim::Height, Witness::Vector(v.clone()));
        let c = Certificate { witness_height: Some(height_projective(&v).unwrap()), ..c };
        let text = render(&certificate("height", &c), 0);
        assert!(text.contains("\"heights\":{\"kind\":\"H\",\"exact\":\"1\""), "{text}");
        assert!(text.contains("\"witness\":[\"0\",\"1\"]"));
    }

    #[test]
    fn irrational_values_stay_factored() {
        assert_eq!(exact(&ExactReal::sqrt_of(int(5))), "5^{1/2}");
        assert_eq!(exact(&ExactReal::pow_of(int(4), heightforge::exact::rat(1, 2))), "2");
    }
}
