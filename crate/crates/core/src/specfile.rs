//! Reading and writing the structured-text group description and the
//! polynomial term-list format.
//!
//! A spec file is line-oriented. `#` starts a comment. Scalar sections are
//! single lines (`dim 4`, `theta 1.0`, `signature [1, 1, 1, -1]`,
//! `circle_blocks [(0, 1)]`); matrices open with `finite_generator [` or
//! `involution [`, carry one bracketed row per line, and close with `]`.
//! Matrix entries are rational literals (`p/q` or an integer) or one of the
//! tokens `cosh`, `-cosh`, `sinh`, `-sinh`, resolved against `theta`.

use std::fmt::Write as _;

use num_rational::BigRational;

use crate::algebra::scalar::parse_rational;
use crate::algebra::{Mat, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// One matrix entry as written in a spec file.
#[derive(Debug, Clone, PartialEq)]
pub enum EntryToken {
    Rational(BigRational),
    Cosh,
    NegCosh,
    Sinh,
    NegSinh,
}

impl EntryToken {
    fn parse(s: &str, line: usize) -> Result<Self> {
        match s {
            "cosh" => Ok(EntryToken::Cosh),
            "-cosh" => Ok(EntryToken::NegCosh),
            "sinh" => Ok(EntryToken::Sinh),
            "-sinh" => Ok(EntryToken::NegSinh),
            _ => parse_rational(s)
                .map(EntryToken::Rational)
                .map_err(|_| Error::parse(line, format!("bad matrix entry `{s}`"))),
        }
    }

    fn needs_theta(&self) -> bool {
        !matches!(self, EntryToken::Rational(_))
    }

    fn resolve(&self, theta: Option<f64>) -> Result<Scalar> {
        let hyper = |f: fn(f64) -> f64, sign: f64| -> Result<Scalar> {
            theta.map(|t| Scalar::from_f64(sign * f(t))).ok_or(Error::MissingTheta)
        };
        match self {
            EntryToken::Rational(r) => Ok(Scalar::Exact(r.clone())),
            EntryToken::Cosh => hyper(f64::cosh, 1.0),
            EntryToken::NegCosh => hyper(f64::cosh, -1.0),
            EntryToken::Sinh => hyper(f64::sinh, 1.0),
            EntryToken::NegSinh => hyper(f64::sinh, -1.0),
        }
    }
}

impl std::fmt::Display for EntryToken {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EntryToken::Rational(r) => write!(f, "{r}"),
            EntryToken::Cosh => write!(f, "cosh"),
            EntryToken::NegCosh => write!(f, "-cosh"),
            EntryToken::Sinh => write!(f, "sinh"),
            EntryToken::NegSinh => write!(f, "-sinh"),
        }
    }
}

type TokenMatrix = Vec<Vec<EntryToken>>;

/// Parsed form of a group description file, before numeric resolution.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpecFile {
    pub dim: usize,
    pub theta: Option<f64>,
    pub signature: Option<Vec<i8>>,
    pub circle_blocks: Vec<(usize, usize)>,
    pub finite_generators: Vec<TokenMatrix>,
    pub involutions: Vec<TokenMatrix>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn bracket_body<'a>(s: &'a str, line: usize, what: &str) -> Result<&'a str> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        Ok(body)
    } else {
        Err(Error::parse(line, format!("{what} must be a bracketed list")))
    }
}

fn split_items(body: &str) -> impl Iterator<Item = &str> {
    body.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_index_pairs(body: &str, line: usize) -> Result<Vec<(usize, usize)>> {
    // pairs look like (0, 1); split on ")" groups to keep commas inside
    let mut out = Vec::new();
    for chunk in body.split(')') {
        let chunk = chunk.trim().trim_start_matches(',').trim();
        if chunk.is_empty() {
            continue;
        }
        let inner = chunk
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(line, format!("bad index pair `{chunk})`")))?;
        let parts: Vec<&str> = split_items(inner).collect();
        if parts.len() != 2 {
            return Err(Error::parse(line, format!("index pair `({inner})` needs two entries")));
        }
        let a = parts[0]
            .parse::<usize>()
            .map_err(|_| Error::parse(line, format!("bad index `{}`", parts[0])))?;
        let b = parts[1]
            .parse::<usize>()
            .map_err(|_| Error::parse(line, format!("bad index `{}`", parts[1])))?;
        out.push((a, b));
    }
    Ok(out)
}

/// Parse the textual group description. Errors carry 1-based line numbers.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut spec = SpecFile::default();
    let mut saw_dim = false;
    // (keyword, rows, opening line) while inside a matrix block
    let mut open: Option<(String, TokenMatrix, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }

        if let Some((keyword, mut rows, opened_at)) = open.take() {
            if line == "]" {
                if rows.is_empty() {
                    return Err(Error::parse(opened_at, format!("{keyword} has no rows")));
                }
                if spec.dim != 0 && rows.len() != spec.dim {
                    return Err(Error::parse(
                        lineno,
                        format!("{keyword} has {} rows, expected {}", rows.len(), spec.dim),
                    ));
                }
                match keyword.as_str() {
                    "finite_generator" => spec.finite_generators.push(rows),
                    _ => spec.involutions.push(rows),
                }
            } else {
                let body = bracket_body(line, lineno, "matrix row")?;
                let row: Vec<EntryToken> = split_items(body)
                    .map(|tok| EntryToken::parse(tok, lineno))
                    .collect::<Result<_>>()?;
                if spec.dim != 0 && row.len() != spec.dim {
                    return Err(Error::parse(
                        lineno,
                        format!("row has {} entries, expected {}", row.len(), spec.dim),
                    ));
                }
                rows.push(row);
                open = Some((keyword, rows, opened_at));
            }
            continue;
        }

        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "dim" => {
                if saw_dim {
                    return Err(Error::parse(lineno, "duplicate dim line"));
                }
                spec.dim = rest
                    .parse::<usize>()
                    .map_err(|_| Error::parse(lineno, format!("bad dimension `{rest}`")))?;
                if spec.dim == 0 {
                    return Err(Error::parse(lineno, "dimension must be positive"));
                }
                saw_dim = true;
            }
            "theta" => {
                let t = rest
                    .parse::<f64>()
                    .map_err(|_| Error::parse(lineno, format!("bad theta `{rest}`")))?;
                spec.theta = Some(t);
            }
            "signature" => {
                let body = bracket_body(rest, lineno, "signature")?;
                let sig: Vec<i8> = split_items(body)
                    .map(|s| match s {
                        "1" | "+1" => Ok(1),
                        "-1" => Ok(-1),
                        _ => Err(Error::parse(
                            lineno,
                            format!("signature entry `{s}` must be 1 or -1"),
                        )),
                    })
                    .collect::<Result<_>>()?;
                spec.signature = Some(sig);
            }
            "circle_blocks" => {
                let body = bracket_body(rest, lineno, "circle_blocks")?;
                spec.circle_blocks = parse_index_pairs(body, lineno)?;
            }
            "finite_generator" | "involution" => {
                if rest != "[" {
                    return Err(Error::parse(lineno, format!("{keyword} must open a `[` block")));
                }
                open = Some((keyword.to_string(), Vec::new(), lineno));
            }
            _ => return Err(Error::parse(lineno, format!("unknown keyword `{keyword}`"))),
        }
    }

    if let Some((keyword, _, opened_at)) = open {
        return Err(Error::parse(opened_at, format!("{keyword} block is never closed")));
    }
    if !saw_dim {
        return Err(Error::parse(1, "missing dim line"));
    }
    if let Some(sig) = &spec.signature {
        if sig.len() != spec.dim {
            return Err(Error::parse(
                1,
                format!("signature has {} entries, dim is {}", sig.len(), spec.dim),
            ));
        }
    }
    Ok(spec)
}

impl SpecFile {
    /// Canonical textual form; parsing it back yields an equal `SpecFile`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dim {}", self.dim);
        if let Some(t) = self.theta {
            let _ = writeln!(out, "theta {t}");
        }
        if let Some(sig) = &self.signature {
            let items: Vec<String> = sig.iter().map(|s| s.to_string()).collect();
            let _ = writeln!(out, "signature [{}]", items.join(", "));
        }
        if !self.circle_blocks.is_empty() {
            let items: Vec<String> =
                self.circle_blocks.iter().map(|(a, b)| format!("({a}, {b})")).collect();
            let _ = writeln!(out, "circle_blocks [{}]", items.join(", "));
        }
        let mut write_matrix = |keyword: &str, m: &TokenMatrix| {
            let _ = writeln!(out, "\n{keyword} [");
            for row in m {
                let items: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(out, "  [{}]", items.join(", "));
            }
            let _ = writeln!(out, "]");
        };
        for m in &self.finite_generators {
            write_matrix("finite_generator", m);
        }
        for m in &self.involutions {
            write_matrix("involution", m);
        }
        out
    }

    fn resolve_matrix(rows: &TokenMatrix, theta: Option<f64>) -> Result<Mat<Scalar>> {
        let resolved: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| row.iter().map(|e| e.resolve(theta)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Mat::from_rows(resolved)
    }

    /// Whether any matrix entry refers to the hyperbolic parameter.
    pub fn uses_theta(&self) -> bool {
        self.finite_generators
            .iter()
            .chain(&self.involutions)
            .flatten()
            .flatten()
            .any(EntryToken::needs_theta)
    }

    /// Resolve tokens into numeric matrices. `theta_override` wins over the
    /// file's `theta` line.
    pub fn to_group_spec(&self, theta_override: Option<f64>) -> Result<GroupSpec> {
        let theta = theta_override.or(self.theta);
        if self.uses_theta() && theta.is_none() {
            return Err(Error::MissingTheta);
        }
        let finite_factor = self
            .finite_generators
            .iter()
            .map(|m| Self::resolve_matrix(m, theta))
            .collect::<Result<_>>()?;
        let involutions = self
            .involutions
            .iter()
            .map(|m| Self::resolve_matrix(m, theta))
            .collect::<Result<_>>()?;
        Ok(GroupSpec {
            dim: self.dim,
            circle_blocks: self.circle_blocks.clone(),
            finite_factor,
            involutions,
            theta: if self.uses_theta() { theta } else { None },
            signature: self.signature.clone(),
        })
    }
}

/// A named polynomial from a term-list file.
#[derive(Debug, Clone)]
pub struct NamedPolynomial {
    pub name: String,
    pub poly: Polynomial,
}

fn parse_coefficient(s: &str, line: usize) -> Result<Scalar> {
    if let Ok(r) = parse_rational(s) {
        return Ok(Scalar::Exact(r));
    }
    s.parse::<f64>()
        .map(Scalar::from_f64)
        .map_err(|_| Error::parse(line, format!("bad coefficient `{s}`")))
}

/// Parse a polynomial file: `poly <name>` headers followed by
/// `term <coeff> [e1, ..., ek]` lines. Coefficients are rationals or
/// floats; exponent vectors fix the variable count per polynomial.
pub fn parse_poly_file(text: &str) -> Result<Vec<NamedPolynomial>> {
    // name, accumulated terms, and the line the `poly` header appeared on
    type Pending = (String, Vec<(Vec<u32>, Scalar)>, usize);

    let mut out: Vec<NamedPolynomial> = Vec::new();
    let mut current: Option<Pending> = None;

    let finish = |current: &mut Option<Pending>, out: &mut Vec<NamedPolynomial>| -> Result<()> {
        if let Some((name, terms, opened_at)) = current.take() {
            let nvars = match terms.first() {
                Some((exps, _)) => exps.len(),
                None => return Err(Error::parse(opened_at, format!("poly {name} has no terms"))),
            };
            let poly = Polynomial::from_terms(nvars, terms)
                .map_err(|e| Error::parse(opened_at, e.to_string()))?;
            out.push(NamedPolynomial { name, poly });
        }
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "poly" => {
                finish(&mut current, &mut out)?;
                if rest.is_empty() {
                    return Err(Error::parse(lineno, "poly needs a name"));
                }
                current = Some((rest.to_string(), Vec::new(), lineno));
            }
            "term" => {
                let Some((_, terms, _)) = current.as_mut() else {
                    return Err(Error::parse(lineno, "term before any poly header"));
                };
                let (coeff_str, exps_str) =
                    rest.split_once(char::is_whitespace).ok_or_else(|| {
                        Error::parse(lineno, "term needs a coefficient and exponents")
                    })?;
                let coeff = parse_coefficient(coeff_str.trim(), lineno)?;
                let body = bracket_body(exps_str, lineno, "exponent vector")?;
                let exps: Vec<u32> = split_items(body)
                    .map(|s| {
                        s.parse::<u32>()
                            .map_err(|_| Error::parse(lineno, format!("bad exponent `{s}`")))
                    })
                    .collect::<Result<_>>()?;
                if let Some((prev, _)) = terms.first() {
                    if prev.len() != exps.len() {
                        return Err(Error::parse(
                            lineno,
                            format!(
                                "exponent vector has {} entries, expected {}",
                                exps.len(),
                                prev.len()
                            ),
                        ));
                    }
                }
                terms.push((exps, coeff));
            }
            _ => return Err(Error::parse(lineno, format!("unknown keyword `{keyword}`"))),
        }
    }
    finish(&mut current, &mut out)?;
    Ok(out)
}
