//! The algebra spec file: line-based `key = value` UTF-8 text.
//!
//! Keys: `p` (prime characteristic), `vars` (comma-separated names),
//! `family`, `e_max`, and optionally `quotient` (bracketed ideal),
//! `order` (`lex` | `grevlex`), `csv` (output path). Unknown keys are
//! rejected. `#` starts a comment line.
//!
//! Family selectors:
//!   family = full
//!   family = principal(x^2 + y)
//!   family = fedder([x*y, y^2])
//!   family = paper-example
//!   family = table(1: [x^2]; 2: [x^2, y^3])
//!   family = template([x^2, x*y^(e*q)])

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use cartier_core::{
    parse_ideal_list, parse_poly, parse_template_list, AlgebraFamily, CartierAlgebraSpec, Ideal,
    OrderKind, RingContext,
};

#[derive(Debug)]
pub struct SpecFileError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for SpecFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.msg)
        } else {
            write!(f, "{}", self.msg)
        }
    }
}

fn err(line: usize, msg: impl Into<String>) -> SpecFileError {
    SpecFileError {
        line,
        msg: msg.into(),
    }
}

/// A parsed and validated spec file.
#[derive(Debug)]
pub struct SpecFile {
    pub ctx: RingContext,
    pub quotient: Option<Ideal>,
    pub family: AlgebraFamily,
    pub e_max: u32,
    pub order: OrderKind,
    pub csv: Option<PathBuf>,
}

impl SpecFile {
    pub fn algebra(&self) -> Result<CartierAlgebraSpec, SpecFileError> {
        CartierAlgebraSpec::new(&self.ctx, self.quotient.clone(), self.family.clone())
            .map_err(|e| err(0, e.to_string()))
    }
}

const KNOWN_KEYS: [&str; 7] = ["p", "vars", "family", "e_max", "quotient", "order", "csv"];

pub fn parse_spec(path: &Path) -> Result<SpecFile, SpecFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| err(0, format!("cannot read {}: {e}", path.display())))?;
    parse_spec_text(&text)
}

pub fn parse_spec_text(text: &str) -> Result<SpecFile, SpecFileError> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(err(line_no, "expected `key = value`"));
        };
        let key = line[..eq].trim().to_string();
        let value = line[eq + 1..].trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(err(line_no, format!("unknown key `{key}`")));
        }
        if entries.contains_key(&key) {
            return Err(err(line_no, format!("duplicate key `{key}`")));
        }
        entries.insert(key, (line_no, value));
    }

    let take = |key: &str| entries.get(key).cloned();
    let require = |key: &str| {
        take(key).ok_or_else(|| err(0, format!("missing required key `{key}`")))
    };

    let (p_line, p_text) = require("p")?;
    let p: u64 = p_text
        .parse()
        .map_err(|_| err(p_line, format!("`p = {p_text}` is not an integer")))?;

    let (vars_line, vars_text) = require("vars")?;
    let vars: Vec<String> = vars_text
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    if vars.is_empty() {
        return Err(err(vars_line, "`vars` must list at least one variable"));
    }
    let ctx = RingContext::new(p, vars).map_err(|e| match e {
        cartier_core::Error::NonPrimeCharacteristic(_) => {
            err(p_line, "characteristic must be prime")
        }
        other => err(vars_line, other.to_string()),
    })?;

    let (e_line, e_text) = require("e_max")?;
    let e_max: u32 = e_text
        .parse()
        .map_err(|_| err(e_line, format!("`e_max = {e_text}` is not an integer")))?;
    if e_max < 1 {
        return Err(err(e_line, "e_max must be >= 1"));
    }

    let quotient = match take("quotient") {
        None => None,
        Some((line, text)) => {
            let gens = parse_ideal_list(&text, &ctx).map_err(|e| err(line, e.to_string()))?;
            let ideal = Ideal::new(&ctx, gens).map_err(|e| err(line, e.to_string()))?;
            if ideal.is_zero() {
                None
            } else {
                Some(ideal)
            }
        }
    };

    let order = match take("order") {
        None => OrderKind::GradedReverseLexicographic,
        Some((line, text)) => match text.as_str() {
            "lex" => OrderKind::Lexicographic,
            "grevlex" => OrderKind::GradedReverseLexicographic,
            other => return Err(err(line, format!("unknown order `{other}`"))),
        },
    };

    let csv = take("csv").map(|(_, text)| PathBuf::from(text));

    let (fam_line, fam_text) = require("family")?;
    let family = parse_family(&fam_text, &ctx, fam_line)?;

    Ok(SpecFile {
        ctx,
        quotient,
        family,
        e_max,
        order,
        csv,
    })
}

fn parse_family(
    text: &str,
    ctx: &RingContext,
    line: usize,
) -> Result<AlgebraFamily, SpecFileError> {
    let text = text.trim();
    if text == "full" {
        return Ok(AlgebraFamily::Full);
    }
    if text == "paper-example" {
        return Ok(AlgebraFamily::PaperExample);
    }
    let (name, args) = match text.find('(') {
        Some(open) if text.ends_with(')') => {
            (text[..open].trim(), text[open + 1..text.len() - 1].trim())
        }
        _ => {
            return Err(err(
                line,
                format!(
                    "unknown family `{text}` (expected full | principal(<poly>) | fedder([...]) \
                     | paper-example | table(<e>: [...]; ...) | template([...]))"
                ),
            ))
        }
    };
    match name {
        "principal" => {
            let f = parse_poly(args, ctx).map_err(|e| err(line, e.to_string()))?;
            Ok(AlgebraFamily::Principal(f))
        }
        "fedder" => {
            let gens = parse_ideal_list(args, ctx).map_err(|e| err(line, e.to_string()))?;
            let ideal = Ideal::new(ctx, gens).map_err(|e| err(line, e.to_string()))?;
            Ok(AlgebraFamily::Fedder(ideal))
        }
        "template" => {
            let ts = parse_template_list(args, ctx).map_err(|e| err(line, e.to_string()))?;
            Ok(AlgebraFamily::Template(ts))
        }
        "table" => {
            let mut table = BTreeMap::new();
            for entry in args.split(';') {
                let entry = entry.trim();
                if entry.is_empty() {
                    continue;
                }
                let Some(colon) = entry.find(':') else {
                    return Err(err(line, format!("table entry `{entry}` needs `<e>: [...]`")));
                };
                let level: u32 = entry[..colon].trim().parse().map_err(|_| {
                    err(line, format!("table level `{}` is not an integer", &entry[..colon]))
                })?;
                if level < 1 {
                    return Err(err(line, "table levels start at 1"));
                }
                let gens = parse_ideal_list(entry[colon + 1..].trim(), ctx)
                    .map_err(|e| err(line, e.to_string()))?;
                if table.insert(level, gens).is_some() {
                    return Err(err(line, format!("duplicate table level {level}")));
                }
            }
            if table.is_empty() {
                return Err(err(line, "table family needs at least one level"));
            }
            Ok(AlgebraFamily::Table(table))
        }
        other => Err(err(line, format!("unknown family `{other}`"))),
    }
}
