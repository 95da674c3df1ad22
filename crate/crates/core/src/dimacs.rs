//! DIMACS CNF reading and writing.
//!
//! The writer emits a canonical form: comment lines first, then the
//! `p cnf` header, then one clause per line with literals in clause order.
//! Parsing that form and writing it again reproduces the bytes, so files
//! are stable across round-trips up to comment lines.

use std::fmt::Write as _;

use thiserror::Error;

use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::Lit;

/// A parsed CNF file: the formula plus its comment lines in order, with the
/// leading `c ` stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFile {
    pub formula: Formula,
    pub comments: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: expected `p cnf <vars> <clauses>` header, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: second header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: clause data before header")]
    ClauseBeforeHeader { line: usize },
    #[error("line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: variable {var} above the declared maximum {max}")]
    VarAboveDeclared { line: usize, var: u32, max: u32 },
    #[error("line {line}: tautological clause on variable {var}")]
    Tautology { line: usize, var: u32 },
    #[error("last clause is not 0-terminated")]
    MissingTerminator,
    #[error("header declares {declared} clauses, file contains {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("missing `p cnf` header")]
    MissingHeader,
}

pub fn parse_cnf(input: &str) -> Result<CnfFile, DimacsError> {
    let mut comments = Vec::new();
    let mut header: Option<(u32, usize)> = None;
    let mut formula = Formula::empty();
    let mut current: Vec<Lit> = Vec::new();
    let mut parsed_clauses = 0usize;

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                comments.push(rest.strip_prefix(' ').unwrap_or(rest).to_string());
                continue;
            }
            return Err(DimacsError::BadToken {
                line,
                token: text.split_whitespace().next().unwrap_or("").to_string(),
            });
        }
        if text.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line });
            }
            let fields: Vec<&str> = text.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", vars, clauses] => vars
                    .parse::<u32>()
                    .ok()
                    .zip(clauses.parse::<usize>().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(DimacsError::BadHeader {
                line,
                found: text.to_string(),
            })?);
            continue;
        }
        let (max_var, _) = header.ok_or(DimacsError::ClauseBeforeHeader { line })?;
        for token in text.split_whitespace() {
            let code: i32 = token.parse().map_err(|_| DimacsError::BadToken {
                line,
                token: token.to_string(),
            })?;
            match Lit::from_dimacs(code) {
                None => {
                    let clause = Clause::new(current.drain(..))
                        .map_err(|e| DimacsError::Tautology {
                            line,
                            var: e.var.id(),
                        })?;
                    formula.insert(clause);
                    parsed_clauses += 1;
                }
                Some(lit) => {
                    if lit.var().id() > max_var {
                        return Err(DimacsError::VarAboveDeclared {
                            line,
                            var: lit.var().id(),
                            max: max_var,
                        });
                    }
                    current.push(lit);
                }
            }
        }
    }

    let (_, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::MissingTerminator);
    }
    if declared != parsed_clauses {
        return Err(DimacsError::ClauseCountMismatch {
            declared,
            found: parsed_clauses,
        });
    }
    Ok(CnfFile { formula, comments })
}

pub fn write_cnf(g: &Formula, comments: &[String]) -> String {
    let mut out = String::new();
    for comment in comments {
        if comment.is_empty() {
            out.push_str("c\n");
        } else {
            writeln!(out, "c {comment}").unwrap();
        }
    }
    let max_var = g.max_var().map_or(0, |v| v.id());
    writeln!(out, "p cnf {max_var} {}", g.len()).unwrap();
    for (_, clause) in g.iter() {
        for lit in clause.iter() {
            write!(out, "{lit} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause;
    use crate::clause::Clause;

    #[test]
    fn parses_header_comments_and_clauses() {
        let input = "c generated\nc\np cnf 3 3\n1 2 0\n-1\n-3 0\n0\n";
        let file = parse_cnf(input).unwrap();
        assert_eq!(file.comments, vec!["generated".to_string(), String::new()]);
        assert_eq!(
            file.formula,
            Formula::from_clauses([clause![1, 2], clause![-1, -3], Clause::empty()])
        );
    }

    #[test]
    fn multiple_clauses_on_one_line() {
        let file = parse_cnf("p cnf 2 2\n1 0 -2 0\n").unwrap();
        assert_eq!(
            file.formula,
            Formula::from_clauses([clause![1], clause![-2]])
        );
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            parse_cnf("p cnf x 1\n1 0\n"),
            Err(DimacsError::BadHeader { line: 1, .. })
        ));
        assert!(matches!(
            parse_cnf("1 0\n"),
            Err(DimacsError::ClauseBeforeHeader { line: 1 })
        ));
        assert!(matches!(
            parse_cnf("p cnf 1 1\n2 0\n"),
            Err(DimacsError::VarAboveDeclared { var: 2, max: 1, .. })
        ));
        assert!(matches!(
            parse_cnf("p cnf 1 1\n1 -1 0\n"),
            Err(DimacsError::Tautology { var: 1, .. })
        ));
        assert!(matches!(
            parse_cnf("p cnf 1 1\n1\n"),
            Err(DimacsError::MissingTerminator)
        ));
        assert!(matches!(
            parse_cnf("p cnf 1 2\n1 0\n"),
            Err(DimacsError::ClauseCountMismatch {
                declared: 2,
                found: 1
            })
        ));
        assert!(matches!(parse_cnf(""), Err(DimacsError::MissingHeader)));
        assert!(matches!(
            parse_cnf("p cnf 1 1\ncomment without prefix\n1 0\n"),
            Err(DimacsError::BadToken { .. })
        ));
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let g = Formula::from_clauses([clause![2, -1], clause![3]]);
        let comments = vec!["layout demo".to_string()];
        let text = write_cnf(&g, &comments);
        let reparsed = parse_cnf(&text).unwrap();
        assert_eq!(reparsed.formula, g);
        assert_eq!(reparsed.comments, comments);
        assert_eq!(write_cnf(&reparsed.formula, &reparsed.comments), text);
    }

    #[test]
    fn duplicate_clauses_collapse_but_count_is_checked_against_file() {
        let file = parse_cnf("p cnf 2 2\n1 2 0\n2 1 0\n").unwrap();
        assert_eq!(file.formula.len(), 1);
    }
}
