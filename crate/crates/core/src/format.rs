//! Text formats: `.cplx` complexes with role headers, and certificates.
//!
//! A `.cplx` file lists one generating face per line as whitespace-separated
//! vertex tokens; `#` starts a comment. Header comments of the form
//! `# role <tag>: <tokens>` name distinguished faces. Certificates start with
//! `d <int>` and then list one step per line, `σ-tokens [-> τ-tokens]`.

use std::fmt::Write as _;

use crate::collapse::{Certificate, CollapseStep};
use crate::complex::{Complex, SymbolTable};
use crate::error::ParseError;
use crate::face::{Face, VertexId};

/// Tagged faces of a built complex (`"rho"`, `"v1.iota+"`, …) in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    entries: Vec<(String, Face)>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, tag: impl Into<String>, face: Face) {
        self.entries.push((tag.into(), face));
    }

    pub fn get(&self, tag: &str) -> Option<&Face> {
        self.entries.iter().find(|(t, _)| t == tag).map(|(_, f)| f)
    }

    /// Entries whose tag starts with `prefix`, in insertion order.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a Face)> {
        self.entries
            .iter()
            .filter(move |(t, _)| t.starts_with(prefix))
            .map(|(t, f)| (t.as_str(), f))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Face)> {
        self.entries.iter().map(|(t, f)| (t.as_str(), f))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Applies a vertex map to every face.
    pub fn mapped(&self, map: impl Fn(VertexId) -> VertexId) -> Registry {
        Registry {
            entries: self
                .entries
                .iter()
                .map(|(t, f)| {
                    (
                        t.clone(),
                        f.map(&map).expect("map is injective on registered faces"),
                    )
                })
                .collect(),
        }
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: &Registry) {
        for (t, f) in &other.entries {
            self.entries.push((format!("{prefix}{t}"), f.clone()));
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a `.cplx` text. Vertex ids follow first appearance in face lines.
pub fn parse_cplx(text: &str) -> Result<(Complex, Registry), ParseError> {
    let mut symbols = SymbolTable::new();
    let mut generators = Vec::new();
    let mut roles: Vec<(usize, String, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if let Some(rest) = raw.trim_start().strip_prefix('#') {
            if let Some(role) = rest.trim_start().strip_prefix("role ") {
                let (tag, tokens) = role.split_once(':').ok_or_else(|| {
                    ParseError::syntax(line_no, "role header needs `tag: tokens`")
                })?;
                let tag = tag.trim();
                if tag.is_empty() || tag.contains(char::is_whitespace) {
                    return Err(ParseError::syntax(line_no, "role tag must be one word"));
                }
                roles.push((
                    line_no,
                    tag.to_string(),
                    tokens.split_whitespace().map(str::to_string).collect(),
                ));
            }
            continue;
        }
        let body = strip_comment(raw);
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let mut ids = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let id = match symbols.lookup(tok) {
                Some(id) => id,
                None => symbols.push(Some(tok.to_string())).expect("checked absent"),
            };
            ids.push(id);
        }
        let face = Face::new(ids).map_err(|e| ParseError::syntax(line_no, e.to_string()))?;
        generators.push(face);
    }
    let complex = Complex::from_generators_named(generators, symbols);
    let mut registry = Registry::new();
    for (line, tag, tokens) in roles {
        let mut ids = Vec::new();
        for tok in tokens {
            let id = complex
                .symbols()
                .lookup(&tok)
                .ok_or(ParseError::UnknownToken {
                    line,
                    token: tok.clone(),
                })?;
            ids.push(id);
        }
        let face = Face::new(ids).map_err(|e| ParseError::syntax(line, e.to_string()))?;
        if !complex.contains(&face) {
            return Err(ParseError::syntax(
                line,
                format!("role {tag} names a face not in the complex"),
            ));
        }
        registry.insert(tag, face);
    }
    Ok((complex, registry))
}

/// Writes maximal faces (tokens by increasing id, lines in lexicographic
/// face order) after optional comment and role header lines.
pub fn write_cplx(k: &Complex, registry: &Registry, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for (tag, face) in registry.iter() {
        let _ = writeln!(out, "# role {tag}: {}", k.face_tokens(face));
    }
    for m in k.maximal() {
        let _ = writeln!(out, "{}", k.face_tokens(m));
    }
    out
}

fn parse_face(k: &Complex, line: usize, text: &str) -> Result<Face, ParseError> {
    let mut ids = Vec::new();
    for tok in text.split_whitespace() {
        let id = k
            .symbols()
            .resolve(tok)
            .ok_or_else(|| ParseError::UnknownToken {
                line,
                token: tok.to_string(),
            })?;
        ids.push(id);
    }
    Face::new(ids).map_err(|e| ParseError::syntax(line, e.to_string()))
}

/// Parses a certificate whose tokens refer to `k`'s symbol table.
pub fn parse_certificate(text: &str, k: &Complex) -> Result<Certificate, ParseError> {
    let mut d = None;
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        if d.is_none() {
            let value = body
                .strip_prefix('d')
                .filter(|r| r.starts_with(char::is_whitespace))
                .and_then(|r| r.trim().parse::<usize>().ok())
                .filter(|&v| v >= 1)
                .ok_or_else(|| ParseError::syntax(line, "expected `d <positive int>` header"))?;
            d = Some(value);
            continue;
        }
        let step = match body.split_once("->") {
            Some((s, t)) => {
                let sigma = parse_face(k, line, s)?;
                let tau = parse_face(k, line, t)?;
                if !sigma.is_subset_of(&tau) {
                    return Err(ParseError::syntax(line, "expected τ must contain σ"));
                }
                CollapseStep::with_tau(sigma, tau)
            }
            None => CollapseStep::new(parse_face(k, line, body)?),
        };
        steps.push(step);
    }
    let d = d.ok_or_else(|| ParseError::syntax(1, "missing `d <int>` header"))?;
    Ok(Certificate { d, steps })
}

pub fn write_certificate(cert: &Certificate, k: &Complex) -> String {
    let mut out = format!("d {}\n", cert.d);
    for s in &cert.steps {
        match &s.expected_tau {
            Some(t) => {
                let _ = writeln!(out, "{} -> {}", k.face_tokens(&s.sigma), k.face_tokens(t));
            }
            None => {
                let _ = writeln!(out, "{}", k.face_tokens(&s.sigma));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write_round_trip() {
        let text = "# a tetrahedron and a tail\n# role top: a b c d\na b c d\nd e # tail\n\n";
        let (k, reg) = parse_cplx(text).unwrap();
        assert_eq!(k.len(), 15 + 2);
        assert_eq!(reg.get("top"), k.named_face(&["a", "b", "c", "d"]).as_ref());
        let written = write_cplx(&k, &reg, &[]);
        assert_eq!(written, "# role top: a b c d\na b c d\nd e\n");
        let (k2, reg2) = parse_cplx(&written).unwrap();
        assert!(k.same_named_faces(&k2));
        assert_eq!(reg, reg2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_cplx("a b\na a\n").unwrap_err(),
            ParseError::syntax(2, "vertex 0 repeated in face")
        );
        assert!(matches!(
            parse_cplx("# role x: a z\na b\n"),
            Err(ParseError::UnknownToken { line: 1, .. })
        ));
    }

    #[test]
    fn certificate_round_trip() {
        let (k, _) = parse_cplx("x y z\n").unwrap();
        let text = "d 2\nx y -> x y z\nx\n# done\ny z\ny\nz\n";
        let cert = parse_certificate(text, &k).unwrap();
        assert_eq!(cert.d, 2);
        assert_eq!(cert.len(), 5);
        crate::collapse::check_certificate(&k, &cert).unwrap();
        let again = parse_certificate(&write_certificate(&cert, &k), &k).unwrap();
        assert_eq!(again, cert);
        assert!(parse_certificate("x y\n", &k).is_err());
        assert!(matches!(
            parse_certificate("d 2\nq\n", &k),
            Err(ParseError::UnknownToken { line: 2, .. })
        ));
    }

    #[test]
    fn unnamed_vertices_use_placeholder_tokens() {
        let k = Complex::from_generators([Face::from_ids(&[0, 2])]);
        let text = write_cplx(&k, &Registry::new(), &[]);
        assert_eq!(text, "_0 _2\n");
        let (back, _) = parse_cplx(&text).unwrap();
        assert!(k.same_named_faces(&back));
    }
}
