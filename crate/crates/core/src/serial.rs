//! JSON, LaTeX and plain-text renderings of derivations and rewrite traces.
//!
//! Derivation records are `{"rule", "sequent", "params", "premises"}`. In the
//! multimodal calculus the structural steps below a logical rule are listed in
//! its `"then"` array, in the order they are applied, each as
//! `{"rule", "path", "params", "sequent"}`. A root record may carry a
//! `"signature"` object so the file can be read without a separate signature.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::SerialError;
use crate::hd::{Abstraction, HDerivation, HParams, HRule, HSequent};
use crate::md::{MDerivation, MParams, MRule, MSequent};
use crate::syntax::{parse_hsequent, parse_msequent, parse_term, Atom, Signature, Type};
use crate::term::{Rule, RuleApp, RewriteTrace, Step, StructTerm, TraceStep};

fn path_json(p: &[Step]) -> Value {
    Value::Array(p.iter().map(|s| json!(matches!(s, Step::Right) as u8)).collect())
}

fn path_from(v: &Value, what: &str) -> Result<Vec<Step>, SerialError> {
    let arr = v.as_array().ok_or_else(|| SerialError::Field(what.into()))?;
    arr.iter()
        .map(|x| match x.as_u64() {
            Some(0) => Ok(Step::Left),
            Some(1) => Ok(Step::Right),
            _ => Err(SerialError::Field(what.into())),
        })
        .collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, SerialError> {
    v.get(key).ok_or_else(|| SerialError::Field(key.into()))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, SerialError> {
    field(v, key)?.as_str().ok_or_else(|| SerialError::Field(key.into()))
}

fn usize_of(v: &Value, key: &str) -> Result<usize, SerialError> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| SerialError::Field(key.into()))
}

fn opt_usize(obj: &Value, key: &str) -> Result<Option<usize>, SerialError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => usize_of(v, key).map(Some),
    }
}

fn premises_of(v: &Value) -> Result<&Vec<Value>, SerialError> {
    match v.get("premises") {
        None => Err(SerialError::Field("premises".into())),
        Some(p) => p.as_array().ok_or_else(|| SerialError::Field("premises".into())),
    }
}

fn collect_atoms(t: &Type, out: &mut BTreeMap<String, usize>) {
    let mut atoms: Vec<Atom> = Vec::new();
    t.atoms(&mut atoms);
    for a in atoms {
        if !a.name().starts_with('#') {
            out.insert(a.name().to_string(), a.sort());
        }
    }
}

fn signature_json(atoms: BTreeMap<String, usize>) -> Value {
    Value::Object(atoms.into_iter().map(|(k, v)| (k, json!(v))).collect())
}

/// The signature to read a document with: `sig` extended by the document's own.
fn reading_signature(v: &Value, sig: Option<&Signature>) -> Result<Signature, SerialError> {
    let mut out = sig.cloned().unwrap_or_default();
    if let Some(obj) = v.get("signature") {
        let obj = obj.as_object().ok_or_else(|| SerialError::Field("signature".into()))?;
        for (name, sort) in obj {
            let sort = usize_of(sort, "signature")?;
            out.declare(name, sort).map_err(|_| SerialError::Field(format!("signature entry `{name}`")))?;
        }
    }
    Ok(out)
}

// hypersequent derivations

fn hparams_json(p: &HParams) -> Value {
    let mut m = Map::new();
    if let Some(at) = p.at {
        m.insert("at".into(), json!(at));
    }
    if let Some(end) = p.end {
        m.insert("end".into(), json!(end));
    }
    if let Some(k) = p.k {
        m.insert("k".into(), json!(k));
    }
    if let Some(a) = &p.abstraction {
        m.insert("chunks".into(), Value::Array(a.chunks.iter().map(|&(s, e)| json!([s, e])).collect()));
    }
    Value::Object(m)
}

fn hparams_from(v: Option<&Value>) -> Result<HParams, SerialError> {
    let Some(v) = v else { return Ok(HParams::default()) };
    let abstraction = match v.get("chunks") {
        None | Some(Value::Null) => None,
        Some(c) => {
            let arr = c.as_array().ok_or_else(|| SerialError::Field("chunks".into()))?;
            let chunks = arr
                .iter()
                .map(|pair| match pair.as_array().map(Vec::as_slice) {
                    Some([s, e]) => Ok((usize_of(s, "chunks")?, usize_of(e, "chunks")?)),
                    _ => Err(SerialError::Field("chunks".into())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(Abstraction { chunks })
        }
    };
    Ok(HParams { at: opt_usize(v, "at")?, end: opt_usize(v, "end")?, k: opt_usize(v, "k")?, abstraction })
}

fn hd_value(d: &HDerivation) -> Value {
    json!({
        "rule": d.rule.name(),
        "sequent": d.conclusion.to_string(),
        "params": hparams_json(&d.params),
        "premises": d.premises.iter().map(hd_value).collect::<Vec<_>>(),
    })
}

fn hd_atoms(d: &HDerivation, out: &mut BTreeMap<String, usize>) {
    for t in d.conclusion.tokens() {
        if let crate::syntax::Token::Leaf(ty) | crate::syntax::Token::Seg(ty, 0) = t {
            collect_atoms(&ty, out);
        }
    }
    collect_atoms(&d.conclusion.succedent, out);
    for p in &d.premises {
        hd_atoms(p, out);
    }
}

/// JSON value of a hypersequent derivation, with its signature at the root.
pub fn hd_to_json(d: &HDerivation) -> Value {
    let mut atoms = BTreeMap::new();
    hd_atoms(d, &mut atoms);
    let mut v = hd_value(d);
    v["signature"] = signature_json(atoms);
    v
}

fn hd_parse(v: &Value, sig: &Signature) -> Result<HDerivation, SerialError> {
    let name = str_field(v, "rule")?;
    let rule: HRule = name.parse().map_err(|_| SerialError::Rule(name.into()))?;
    let (antecedent, succedent) = parse_hsequent(str_field(v, "sequent")?, sig)?;
    let premises = premises_of(v)?.iter().map(|p| hd_parse(p, sig)).collect::<Result<_, _>>()?;
    Ok(HDerivation {
        rule,
        conclusion: HSequent { antecedent, succedent },
        premises,
        params: hparams_from(v.get("params"))?,
    })
}

/// Reads a hypersequent derivation; atoms come from `sig` and the document's
/// own signature.
pub fn hd_from_json(src: &str, sig: Option<&Signature>) -> Result<HDerivation, SerialError> {
    let v: Value = serde_json::from_str(src)?;
    let sig = reading_signature(&v, sig)?;
    hd_parse(&v, &sig)
}

// multimodal derivations

fn app_params_json(p: &BTreeMap<String, usize>) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), json!(v))).collect())
}

fn app_params_from(v: Option<&Value>) -> Result<BTreeMap<String, usize>, SerialError> {
    let Some(v) = v else { return Ok(BTreeMap::new()) };
    let obj = v.as_object().ok_or_else(|| SerialError::Field("params".into()))?;
    obj.iter().map(|(k, x)| Ok((k.clone(), usize_of(x, "params")?))).collect()
}

fn md_value(d: &MDerivation) -> Value {
    let mut chain = Vec::new();
    let mut cur = d;
    while let MRule::Structural(app) = &cur.rule {
        chain.push(json!({
            "rule": app.rule.name(),
            "path": path_json(&app.at),
            "params": app_params_json(&app.params),
            "sequent": cur.conclusion.to_string(),
        }));
        match cur.premises.as_slice() {
            [p] => cur = p,
            _ => break,
        }
    }
    let mut m = Map::new();
    if let Some(at) = &cur.params.at {
        m.insert("at".into(), path_json(at));
    }
    if let Some(k) = cur.params.k {
        m.insert("k".into(), json!(k));
    }
    let mut v = json!({
        "rule": cur.rule.name(),
        "sequent": cur.conclusion.to_string(),
        "params": Value::Object(m),
        "premises": cur.premises.iter().map(md_value).collect::<Vec<_>>(),
    });
    if !chain.is_empty() {
        chain.reverse();
        v["then"] = Value::Array(chain);
    }
    v
}

fn term_atoms(t: &StructTerm, out: &mut BTreeMap<String, usize>) {
    match t {
        StructTerm::I | StructTerm::J => {}
        StructTerm::Leaf(ty) => collect_atoms(ty, out),
        StructTerm::Cat(l, r) | StructTerm::Wrap(_, l, r) => {
            term_atoms(l, out);
            term_atoms(r, out);
        }
    }
}

fn md_atoms(d: &MDerivation, out: &mut BTreeMap<String, usize>) {
    term_atoms(&d.conclusion.antecedent, out);
    collect_atoms(&d.conclusion.succedent, out);
    for p in &d.premises {
        md_atoms(p, out);
    }
}

/// JSON value of a multimodal derivation, with its signature at the root.
pub fn md_to_json(d: &MDerivation) -> Value {
    let mut atoms = BTreeMap::new();
    md_atoms(d, &mut atoms);
    let mut v = md_value(d);
    v["signature"] = signature_json(atoms);
    v
}

fn md_parse(v: &Value, sig: &Signature) -> Result<MDerivation, SerialError> {
    let name = str_field(v, "rule")?;
    let rule: HRule = name.parse().map_err(|_| SerialError::Rule(name.into()))?;
    let (antecedent, succedent) = parse_msequent(str_field(v, "sequent")?, sig)?;
    let premises = premises_of(v)?.iter().map(|p| md_parse(p, sig)).collect::<Result<_, _>>()?;
    let p = v.get("params");
    let at = match p.and_then(|p| p.get("at")) {
        None | Some(Value::Null) => None,
        Some(a) => Some(path_from(a, "at")?),
    };
    let k = match p {
        Some(p) => opt_usize(p, "k")?,
        None => None,
    };
    let mut d = MDerivation {
        rule: MRule::Logical(rule),
        conclusion: MSequent { antecedent, succedent },
        premises,
        params: MParams { at, k },
    };
    let steps = match v.get("then") {
        None | Some(Value::Null) => return Ok(d),
        Some(t) => t.as_array().ok_or_else(|| SerialError::Field("then".into()))?,
    };
    for step in steps {
        let name = str_field(step, "rule")?;
        let r: Rule = name.parse().map_err(|_| SerialError::Rule(name.into()))?;
        let app = RuleApp { rule: r, at: path_from(field(step, "path")?, "path")?, params: app_params_from(step.get("params"))? };
        let (antecedent, succedent) = parse_msequent(str_field(step, "sequent")?, sig)?;
        d = MDerivation {
            rule: MRule::Structural(app),
            conclusion: MSequent { antecedent, succedent },
            premises: vec![d],
            params: MParams::default(),
        };
    }
    Ok(d)
}

/// Reads a multimodal derivation.
pub fn md_from_json(src: &str, sig: Option<&Signature>) -> Result<MDerivation, SerialError> {
    let v: Value = serde_json::from_str(src)?;
    let sig = reading_signature(&v, sig)?;
    md_parse(&v, &sig)
}

// traces

/// `{"start", "steps": [{"rule", "path", "params", "result"}]}`.
pub fn trace_to_json(t: &RewriteTrace) -> Value {
    json!({
        "start": t.start.to_string(),
        "steps": t.steps.iter().map(|s| json!({
            "rule": s.app.rule.name(),
            "path": path_json(&s.app.at),
            "params": app_params_json(&s.app.params),
            "result": s.result.to_string(),
        })).collect::<Vec<_>>(),
    })
}

/// Reads a trace; results are parsed, not recomputed, so `validate` is meaningful.
pub fn trace_from_json(src: &str, sig: &Signature) -> Result<RewriteTrace, SerialError> {
    let v: Value = serde_json::from_str(src)?;
    let sig = reading_signature(&v, Some(sig))?;
    let start = parse_term(str_field(&v, "start")?, &sig)?;
    let steps = field(&v, "steps")?.as_array().ok_or_else(|| SerialError::Field("steps".into()))?;
    let steps = steps
        .iter()
        .map(|s| {
            let name = str_field(s, "rule")?;
            let rule: Rule = name.parse().map_err(|_| SerialError::Rule(name.into()))?;
            let app = RuleApp { rule, at: path_from(field(s, "path")?, "path")?, params: app_params_from(s.get("params"))? };
            Ok(TraceStep { app, result: parse_term(str_field(s, "result")?, &sig)? })
        })
        .collect::<Result<Vec<_>, SerialError>>()?;
    Ok(RewriteTrace { start, steps })
}

// LaTeX and text

fn tex_escape(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\backslash "),
            '^' => out.push_str("\\uparrow "),
            '!' => out.push_str("\\downarrow "),
            '@' => out.push_str("\\odot "),
            '.' => out.push_str("\\bullet "),
            '{' => out.push_str("\\{"),
            '}' => out.push_str("\\}"),
            '_' => out.push_str("\\_"),
            '#' => out.push_str("\\#"),
            '>' => out.push_str("{>}"),
            _ => out.push(c),
        }
    }
    out
}

fn tex_node(out: &mut String, rule: &str, sequent: &str, premises: usize) {
    if premises == 0 {
        out.push_str("\\AxiomC{}\n");
    }
    out.push_str(&format!("\\RightLabel{{\\scriptsize {}}}\n", tex_escape(rule)));
    let inf = match premises {
        0 | 1 => "UnaryInfC",
        2 => "BinaryInfC",
        _ => "TrinaryInfC",
    };
    out.push_str(&format!("\\{inf}{{$\\mathtt{{{}}}$}}\n", tex_escape(sequent)));
}

fn hd_tex(d: &HDerivation, out: &mut String) {
    for p in &d.premises {
        hd_tex(p, out);
    }
    tex_node(out, d.rule.name(), &d.conclusion.to_string(), d.premises.len());
}

fn md_tex(d: &MDerivation, out: &mut String) {
    for p in &d.premises {
        md_tex(p, out);
    }
    tex_node(out, d.rule.name(), &d.conclusion.to_string(), d.premises.len());
}

/// A `bussproofs` proof tree.
pub fn hd_to_latex(d: &HDerivation) -> String {
    let mut out = String::from("\\begin{prooftree}\n");
    hd_tex(d, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}

pub fn md_to_latex(d: &MDerivation) -> String {
    let mut out = String::from("\\begin{prooftree}\n");
    md_tex(d, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}

/// Indented tree, conclusion first.
pub fn hd_to_text(d: &HDerivation) -> String {
    fn go(d: &HDerivation, depth: usize, out: &mut String) {
        out.push_str(&format!("{}{}  [{}]\n", "  ".repeat(depth), d.conclusion, d.rule));
        for p in &d.premises {
            go(p, depth + 1, out);
        }
    }
    let mut out = String::new();
    go(d, 0, &mut out);
    out
}

pub fn md_to_text(d: &MDerivation) -> String {
    fn go(d: &MDerivation, depth: usize, out: &mut String) {
        let label = match &d.rule {
            MRule::Logical(r) => r.to_string(),
            MRule::Structural(app) => app.to_string(),
        };
        out.push_str(&format!("{}{}  [{}]\n", "  ".repeat(depth), d.conclusion, label));
        for p in &d.premises {
            go(p, depth + 1, out);
        }
    }
    let mut out = String::new();
    go(d, 0, &mut out);
    out
}

pub fn trace_to_text(t: &RewriteTrace) -> String {
    let mut out = format!("{}\n", t.start);
    for s in &t.steps {
        out.push_str(&format!("  ~> {}  [{}]\n", s.result, s.app));
    }
    out
}
