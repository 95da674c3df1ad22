//! Text formats for proofs, extended-resolution files, certificates, and
//! metadata sidecars.
//!
//! All four formats are line oriented. Blank lines are ignored; `c` lines
//! are comments except in metadata sidecars. Clause ids are implicit: the
//! input clauses take 1.., each step takes the next id.
//!
//! Proof files hold one step per line:
//!
//! ```text
//! r <left> <right> <pivot> <lits...> 0
//! w <premise> <lits...> 0
//! b <witness> <lits...> 0
//! t <witness> <lits...> 0
//! s <k> <witness-lits...> <lits...> 0
//! ```
//!
//! `r` and `w` name premise ids (0 asks a permissive checker to search);
//! `b`, `t`, `s` give the witness first, and the added clause is the
//! witness together with the remaining literals. Extended-resolution files
//! open with one `x <var> <left> <right> 0` line per definition, then hold
//! `r`/`w` lines. Certificate files open with `keep <ids...> 0`, then the
//! blocked ordering as `x <witness> <lits...> 0` lines, then `r`/`w`
//! lines. Metadata sidecars hold `key=value` lines, keys sorted on output.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::clause::Clause;
use crate::formula::ClauseId;
use crate::generators::{ErProof, ExtensionSeq, ExtensionTriple};
use crate::lit::{Lit, Var};
use crate::proofs::{GerCertificate, Proof, ProofStep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProofParseError {
    #[error("line {line}: unknown directive {directive:?}")]
    UnknownDirective { line: usize, directive: String },
    #[error("line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: missing 0 terminator")]
    MissingTerminator { line: usize },
    #[error("line {line}: {directive} takes at least {needed} fields")]
    MissingFields {
        line: usize,
        directive: String,
        needed: usize,
    },
    #[error("line {line}: extra fields after the definition triple")]
    ExtraFields { line: usize },
    #[error("line {line}: witness size {k} exceeds the listed literals")]
    WitnessTooLarge { line: usize, k: usize },
    #[error("line {line}: tautological clause on variable {var}")]
    Tautology { line: usize, var: u32 },
    #[error("line {line}: {directive} section out of order")]
    SectionOutOfOrder { line: usize, directive: String },
    #[error("missing keep section")]
    MissingKeepSection,
}

/// Key=value metadata sidecar contents; keys are unique and emitted in
/// sorted order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Meta {
    pub entries: BTreeMap<String, String>,
}

impl Meta {
    pub fn new() -> Meta {
        Meta::default()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.insert(key.into(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Numbered non-blank, non-comment lines. Comment lines are a lone `c` or
/// `c ` followed by anything.
fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().filter_map(|(idx, raw)| {
        let text = raw.trim();
        if text.is_empty() || text == "c" || text.starts_with("c ") {
            None
        } else {
            Some((idx + 1, text))
        }
    })
}

fn numbers(line: usize, tokens: &[&str]) -> Result<Vec<i64>, ProofParseError> {
    tokens
        .iter()
        .map(|t| {
            t.parse::<i64>().map_err(|_| ProofParseError::BadToken {
                line,
                token: t.to_string(),
            })
        })
        .collect()
}

/// Strips the trailing 0 terminator, leaving the interior fields.
fn terminated(line: usize, mut body: Vec<i64>) -> Result<Vec<i64>, ProofParseError> {
    if body.last() != Some(&0) {
        return Err(ProofParseError::MissingTerminator { line });
    }
    body.pop();
    Ok(body)
}

fn lit_of(line: usize, code: i64) -> Result<Lit, ProofParseError> {
    let bad = || ProofParseError::BadToken {
        line,
        token: code.to_string(),
    };
    let narrowed = i32::try_from(code).map_err(|_| bad())?;
    Lit::from_dimacs(narrowed).ok_or_else(bad)
}

fn lits_of(line: usize, codes: &[i64]) -> Result<Vec<Lit>, ProofParseError> {
    codes.iter().map(|&c| lit_of(line, c)).collect()
}

fn var_of(line: usize, code: i64) -> Result<Var, ProofParseError> {
    let bad = || ProofParseError::BadToken {
        line,
        token: code.to_string(),
    };
    match u32::try_from(code) {
        Ok(id) if id > 0 => Ok(Var::new(id)),
        _ => Err(bad()),
    }
}

/// Premise and kept-clause ids; id 0 is only meaningful for permissive
/// premise search.
fn id_of(line: usize, code: i64, allow_zero: bool) -> Result<ClauseId, ProofParseError> {
    match u32::try_from(code) {
        Ok(id) if id > 0 || allow_zero => Ok(ClauseId(id)),
        _ => Err(ProofParseError::BadToken {
            line,
            token: code.to_string(),
        }),
    }
}

fn clause_of(line: usize, lits: Vec<Lit>) -> Result<Clause, ProofParseError> {
    Clause::new(lits).map_err(|e| ProofParseError::Tautology {
        line,
        var: e.var.id(),
    })
}

fn missing(line: usize, directive: &str, needed: usize) -> ProofParseError {
    ProofParseError::MissingFields {
        line,
        directive: directive.to_string(),
        needed,
    }
}

/// Parses one step line; `interior` is the line's fields without the
/// directive and terminator.
fn step_of(
    line: usize,
    directive: &str,
    interior: &[i64],
) -> Result<ProofStep, ProofParseError> {
    match directive {
        "r" => {
            if interior.len() < 3 {
                return Err(missing(line, "r", 3));
            }
            Ok(ProofStep::Resolve {
                left: id_of(line, interior[0], true)?,
                right: id_of(line, interior[1], true)?,
                pivot: var_of(line, interior[2])?,
                result: clause_of(line, lits_of(line, &interior[3..])?)?,
            })
        }
        "w" => {
            if interior.is_empty() {
                return Err(missing(line, "w", 1));
            }
            Ok(ProofStep::Weaken {
                premise: id_of(line, interior[0], true)?,
                result: clause_of(line, lits_of(line, &interior[1..])?)?,
            })
        }
        "b" | "t" => {
            if interior.is_empty() {
                return Err(missing(line, directive, 1));
            }
            let witness = lit_of(line, interior[0])?;
            let mut lits = vec![witness];
            lits.extend(lits_of(line, &interior[1..])?);
            let result = clause_of(line, lits)?;
            Ok(if directive == "b" {
                ProofStep::AddBc { witness, result }
            } else {
                ProofStep::AddRat { witness, result }
            })
        }
        "s" => {
            if interior.is_empty() {
                return Err(missing(line, "s", 1));
            }
            let k = usize::try_from(interior[0]).map_err(|_| ProofParseError::BadToken {
                line,
                token: interior[0].to_string(),
            })?;
            if interior.len() - 1 < k {
                return Err(ProofParseError::WitnessTooLarge { line, k });
            }
            let witness = lits_of(line, &interior[1..=k])?;
            let mut lits = witness.clone();
            lits.extend(lits_of(line, &interior[k + 1..])?);
            let result = clause_of(line, lits)?;
            Ok(ProofStep::AddSbc { witness, result })
        }
        other => Err(ProofParseError::UnknownDirective {
            line,
            directive: other.to_string(),
        }),
    }
}

pub fn parse_proof(input: &str) -> Result<Proof, ProofParseError> {
    let mut steps = Vec::new();
    for (line, text) in content_lines(input) {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let interior = terminated(line, numbers(line, &tokens[1..])?)?;
        steps.push(step_of(line, tokens[0], &interior)?);
    }
    Ok(Proof::new(steps))
}

fn push_step_line(out: &mut String, step: &ProofStep) {
    let mut fields: Vec<String> = Vec::new();
    match step {
        ProofStep::Resolve {
            left,
            right,
            pivot,
            result,
        } => {
            fields.push("r".to_string());
            fields.push(left.0.to_string());
            fields.push(right.0.to_string());
            fields.push(pivot.id().to_string());
            fields.extend(result.iter().map(|l| l.to_string()));
        }
        ProofStep::Weaken { premise, result } => {
            fields.push("w".to_string());
            fields.push(premise.0.to_string());
            fields.extend(result.iter().map(|l| l.to_string()));
        }
        ProofStep::AddBc { witness, result } | ProofStep::AddRat { witness, result } => {
            fields.push(if matches!(step, ProofStep::AddBc { .. }) {
                "b".to_string()
            } else {
                "t".to_string()
            });
            fields.push(witness.to_string());
            fields.extend(result.without(*witness).iter().map(|l| l.to_string()));
        }
        ProofStep::AddSbc { witness, result } => {
            fields.push("s".to_string());
            fields.push(witness.len().to_string());
            fields.extend(witness.iter().map(|l| l.to_string()));
            fields.extend(result.without_all(witness).iter().map(|l| l.to_string()));
        }
    }
    fields.push("0".to_string());
    out.push_str(&fields.join(" "));
    out.push('\n');
}

pub fn write_proof(proof: &Proof) -> String {
    let mut out = String::new();
    for step in &proof.steps {
        push_step_line(&mut out, step);
    }
    out
}

pub fn parse_er(input: &str) -> Result<ErProof, ProofParseError> {
    let mut triples = Vec::new();
    let mut steps = Vec::new();
    for (line, text) in content_lines(input) {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let interior = terminated(line, numbers(line, &tokens[1..])?)?;
        match tokens[0] {
            "x" => {
                if !steps.is_empty() {
                    return Err(ProofParseError::SectionOutOfOrder {
                        line,
                        directive: "x".to_string(),
                    });
                }
                if interior.len() < 3 {
                    return Err(missing(line, "x", 3));
                }
                if interior.len() > 3 {
                    return Err(ProofParseError::ExtraFields { line });
                }
                triples.push(ExtensionTriple::new(
                    var_of(line, interior[0])?,
                    lit_of(line, interior[1])?,
                    lit_of(line, interior[2])?,
                ));
            }
            d @ ("r" | "w") => steps.push(step_of(line, d, &interior)?),
            other => {
                return Err(ProofParseError::UnknownDirective {
                    line,
                    directive: other.to_string(),
                })
            }
        }
    }
    Ok(ErProof::new(ExtensionSeq::new(triples), Proof::new(steps)))
}

pub fn write_er(er: &ErProof) -> String {
    let mut out = String::new();
    for triple in &er.ext.triples {
        out.push_str(&format!(
            "x {} {} {} 0\n",
            triple.var.id(),
            triple.left,
            triple.right
        ));
    }
    for step in &er.res.steps {
        assert!(
            matches!(step, ProofStep::Resolve { .. } | ProofStep::Weaken { .. }),
            "extended-resolution files hold only resolution and weakening steps"
        );
        push_step_line(&mut out, step);
    }
    out
}

pub fn parse_ger(input: &str) -> Result<GerCertificate, ProofParseError> {
    let mut kept: Option<Vec<ClauseId>> = None;
    let mut blocked: Vec<(Lit, Clause)> = Vec::new();
    let mut resolution = Vec::new();
    for (line, text) in content_lines(input) {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let interior = terminated(line, numbers(line, &tokens[1..])?)?;
        match tokens[0] {
            "keep" => {
                if kept.is_some() || !blocked.is_empty() || !resolution.is_empty() {
                    return Err(ProofParseError::SectionOutOfOrder {
                        line,
                        directive: "keep".to_string(),
                    });
                }
                kept = Some(
                    interior
                        .iter()
                        .map(|&id| id_of(line, id, false))
                        .collect::<Result<_, _>>()?,
                );
            }
            "x" => {
                if !resolution.is_empty() {
                    return Err(ProofParseError::SectionOutOfOrder {
                        line,
                        directive: "x".to_string(),
                    });
                }
                if interior.is_empty() {
                    return Err(missing(line, "x", 1));
                }
                let witness = lit_of(line, interior[0])?;
                let mut lits = vec![witness];
                lits.extend(lits_of(line, &interior[1..])?);
                blocked.push((witness, clause_of(line, lits)?));
            }
            d @ ("r" | "w") => resolution.push(step_of(line, d, &interior)?),
            other => {
                return Err(ProofParseError::UnknownDirective {
                    line,
                    directive: other.to_string(),
                })
            }
        }
    }
    Ok(GerCertificate {
        kept: kept.ok_or(ProofParseError::MissingKeepSection)?,
        blocked,
        resolution,
    })
}

pub fn write_ger(cert: &GerCertificate) -> String {
    let mut fields: Vec<String> = vec!["keep".to_string()];
    fields.extend(cert.kept.iter().map(|id| id.0.to_string()));
    fields.push("0".to_string());
    let mut out = fields.join(" ");
    out.push('\n');
    for (witness, clause) in &cert.blocked {
        let mut fields = vec!["x".to_string(), witness.to_string()];
        fields.extend(clause.without(*witness).iter().map(|l| l.to_string()));
        fields.push("0".to_string());
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    for step in &cert.resolution {
        assert!(
            matches!(step, ProofStep::Resolve { .. } | ProofStep::Weaken { .. }),
            "certificate resolution parts hold only resolution and weakening steps"
        );
        push_step_line(&mut out, step);
    }
    out
}

pub fn parse_meta(input: &str) -> Result<Meta, ProofParseError> {
    let mut meta = Meta::new();
    for (idx, raw) in input.lines().enumerate() {
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        let (key, value) = text.split_once('=').ok_or(ProofParseError::BadToken {
            line: idx + 1,
            token: text.to_string(),
        })?;
        meta.set(key.trim(), value.trim());
    }
    Ok(meta)
}

pub fn write_meta(meta: &Meta) -> String {
    let mut out = String::new();
    for (key, value) in &meta.entries {
        out.push_str(key);
        out.push('=');
        out.push_str(value);
        out.push('\n');
    }
    out
}
