use crate::error::{ParseError, ReductionError};

/// A nonzero DIMACS literal: `v` is variable `v`, `-v` its negation.
pub type Literal = i32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    /// Validates the clauses and pads a single clause to two copies.
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<CnfFormula, ParseError> {
        for (i, c) in clauses.iter().enumerate() {
            let clause = i + 1;
            let vars: Vec<usize> = c.iter().map(|l| l.unsigned_abs() as usize).collect();
            if vars.contains(&0) {
                return Err(ParseError::Clause {
                    clause,
                    message: "literal 0 inside clause".into(),
                });
            }
            if let Some(&v) = vars.iter().find(|&&v| v > num_vars) {
                return Err(ParseError::Clause {
                    clause,
                    message: format!("variable {v} exceeds declared count {num_vars}"),
                });
            }
            if vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2] {
                return Err(ParseError::Clause {
                    clause,
                    message: "clause must mention three different variables".into(),
                });
            }
        }
        if clauses.is_empty() {
            return Err(ParseError::Clause {
                clause: 0,
                message: "formula has no clauses".into(),
            });
        }
        let mut clauses = clauses;
        if clauses.len() == 1 {
            clauses.push(clauses[0]);
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Index of the first clause falsified by `assignment` (`assignment[j-1]` is `x_j`).
    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|&l| literal_true(l, assignment)))
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars && self.first_unsatisfied(assignment).is_none()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

pub fn literal_true(l: Literal, assignment: &[bool]) -> bool {
    let value = assignment[l.unsigned_abs() as usize - 1];
    if l > 0 {
        value
    } else {
        !value
    }
}

/// Parses DIMACS CNF with exactly three literals per clause.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') || body.starts_with('%') {
            continue;
        }
        if let Some(rest) = body.strip_prefix('p') {
            if header.is_some() {
                return Err(ParseError::syntax(line, "duplicate problem line"));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header =
                Some(parsed.ok_or_else(|| {
                    ParseError::syntax(line, "expected `p cnf <vars> <clauses>`")
                })?);
            continue;
        }
        if header.is_none() {
            return Err(ParseError::syntax(line, "clause before problem line"));
        }
        for tok in body.split_whitespace() {
            let lit: Literal = tok
                .parse()
                .map_err(|_| ParseError::syntax(line, format!("bad literal {tok:?}")))?;
            if current.is_empty() {
                current_line = line;
            }
            if lit == 0 {
                let clause = clauses.len() + 1;
                let arr: [Literal; 3] =
                    current
                        .as_slice()
                        .try_into()
                        .map_err(|_| ParseError::Clause {
                            clause,
                            message: format!(
                                "clause on line {current_line} has {} literals, expected 3",
                                current.len()
                            ),
                        })?;
                clauses.push(arr);
                current.clear();
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| ParseError::syntax(1, "missing problem line"))?;
    if !current.is_empty() {
        return Err(ParseError::syntax(
            current_line,
            "last clause is not terminated by 0",
        ));
    }
    if clauses.len() != count {
        return Err(ParseError::syntax(
            1,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses)
}

/// Exhaustive search over all assignments, smallest binary number first
/// (`x_1` is the most significant bit, false before true).
pub fn sat_oracle(formula: &CnfFormula) -> Result<Option<Vec<bool>>, ReductionError> {
    let m = formula.num_vars;
    if m > 30 {
        return Err(ReductionError::TooManyVariables(m));
    }
    let mut assignment = vec![false; m];
    for bits in 0u64..(1u64 << m) {
        for (j, slot) in assignment.iter_mut().enumerate() {
            *slot = bits >> (m - 1 - j) & 1 == 1;
        }
        if formula.first_unsatisfied(&assignment).is_none() {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}
