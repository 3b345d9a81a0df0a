//! The `vpa 1` text format.
//!
//! ```text
//! vpa 1
//! calls c
//! returns r1 r2
//! internals
//! stack Z Z'
//! states q q' q''
//! initial q
//! acceptance stair-buchi
//! final q''
//! call q c -> q'' Z
//! ret q'' Z r1 -> q''
//! ```
//!
//! `#` starts a comment. Section lines may come in any order but each at
//! most once; transition lines may appear anywhere after the header.

use std::fmt::Write as _;

use stairvpa::{validate, AcceptanceKind, Description, Dvpa, Validated, ValidationError};

pub const HEADER: &str = "vpa 1";

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct SyntaxError {
    /// 1-based; 0 refers to the file as a whole.
    pub line: usize,
    pub message: String,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax error: {0}")]
    Syntax(#[from] SyntaxError),
    #[error("invalid automaton: {0}")]
    Semantic(#[from] ValidationError),
}

fn err(line: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError {
        line,
        message: message.into(),
    }
}

const SECTIONS: [&str; 9] = [
    "calls",
    "returns",
    "internals",
    "stack",
    "states",
    "initial",
    "acceptance",
    "final",
    "priorities",
];

/// Parses the text into a description without semantic checks.
pub fn parse_description(text: &str) -> Result<Description, SyntaxError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty());

    match lines.next() {
        Some((_, toks)) if toks == ["vpa", "1"] => {}
        Some((n, _)) => return Err(err(n, format!("expected header `{HEADER}`"))),
        None => return Err(err(0, format!("empty file, expected header `{HEADER}`"))),
    }

    let mut sections: [Option<(usize, Vec<String>)>; 9] = Default::default();
    let mut desc = Description::new(AcceptanceKind::Buchi);
    for (n, toks) in lines {
        let owned = |t: &[&str]| t.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        match toks[0] {
            "call" => match toks.as_slice() {
                [_, q, a, "->", p, z] => {
                    desc.call(q, a, p, z);
                }
                _ => return Err(err(n, "expected `call q a -> p Z`")),
            },
            "ret" => match toks.as_slice() {
                [_, q, z, a, "->", p] => {
                    desc.ret(q, z, a, p);
                }
                _ => return Err(err(n, "expected `ret q Z a -> p`")),
            },
            "int" => match toks.as_slice() {
                [_, q, a, "->", p] => {
                    desc.internal(q, a, p);
                }
                _ => return Err(err(n, "expected `int q a -> p`")),
            },
            key => {
                let Some(slot) = SECTIONS.iter().position(|&s| s == key) else {
                    return Err(err(n, format!("unknown section or rule `{key}`")));
                };
                if sections[slot].is_some() {
                    return Err(err(n, format!("section `{key}` given twice")));
                }
                sections[slot] = Some((n, owned(&toks[1..])));
            }
        }
    }

    let mut take = |name: &str| sections[SECTIONS.iter().position(|&s| s == name).unwrap()].take();
    let list = |s: Option<(usize, Vec<String>)>| s.map(|(_, v)| v).unwrap_or_default();
    desc.calls = list(take("calls"));
    desc.returns = list(take("returns"));
    desc.internals = list(take("internals"));
    desc.stack = list(take("stack"));
    desc.states = take("states")
        .ok_or_else(|| err(0, "missing section `states`"))?
        .1;
    desc.initial = match take("initial") {
        Some((_, v)) if v.len() == 1 => v[0].clone(),
        Some((n, _)) => return Err(err(n, "`initial` takes exactly one state")),
        None => return Err(err(0, "missing section `initial`")),
    };
    desc.kind = match take("acceptance") {
        Some((n, v)) => match v.as_slice() {
            [k] => AcceptanceKind::from_keyword(k).ok_or_else(|| {
                err(
                    n,
                    format!("unknown acceptance `{k}`, expected buchi, parity, stair-buchi or stair-parity"),
                )
            })?,
            _ => return Err(err(n, "`acceptance` takes exactly one keyword")),
        },
        None => return Err(err(0, "missing section `acceptance`")),
    };
    let fin = take("final");
    let prio = take("priorities");
    if desc.kind.uses_final_states() {
        if let Some((n, _)) = prio {
            return Err(err(
                n,
                format!("`priorities` does not apply to {}", desc.kind),
            ));
        }
        desc.final_states = Some(fin.ok_or_else(|| err(0, "missing section `final`"))?.1);
        desc.priorities = None;
    } else {
        if let Some((n, _)) = fin {
            return Err(err(n, format!("`final` does not apply to {}", desc.kind)));
        }
        let (n, entries) = prio.ok_or_else(|| err(0, "missing section `priorities`"))?;
        let parsed = entries
            .iter()
            .map(|e| {
                let (q, v) = e
                    .rsplit_once(':')
                    .ok_or_else(|| err(n, format!("priority entry `{e}` is not `q:n`")))?;
                let v = v
                    .parse::<u32>()
                    .map_err(|_| err(n, format!("priority entry `{e}` has no number")))?;
                Ok((q.to_string(), v))
            })
            .collect::<Result<Vec<_>, SyntaxError>>()?;
        desc.priorities = Some(parsed);
        desc.final_states = None;
    }
    Ok(desc)
}

/// Parses and validates.
pub fn parse(text: &str) -> Result<Validated, FormatError> {
    let desc = parse_description(text)?;
    Ok(validate(&desc)?)
}

/// Canonical text: sections in fixed order, names and rules sorted.
pub fn serialize(dvpa: &Dvpa) -> String {
    let d = dvpa.describe();
    let mut out = String::new();
    let line = |out: &mut String, key: &str, items: &[String]| {
        let mut items = items.to_vec();
        items.sort();
        out.push_str(key);
        for i in items {
            out.push(' ');
            out.push_str(&i);
        }
        out.push('\n');
    };
    out.push_str(HEADER);
    out.push('\n');
    line(&mut out, "calls", &d.calls);
    line(&mut out, "returns", &d.returns);
    line(&mut out, "internals", &d.internals);
    line(&mut out, "stack", &d.stack);
    line(&mut out, "states", &d.states);
    line(&mut out, "initial", std::slice::from_ref(&d.initial));
    line(&mut out, "acceptance", &[d.kind.keyword().to_string()]);
    if let Some(f) = &d.final_states {
        line(&mut out, "final", f);
    }
    if let Some(p) = &d.priorities {
        let entries: Vec<String> = p.iter().map(|(q, n)| format!("{q}:{n}")).collect();
        line(&mut out, "priorities", &entries);
    }
    let mut calls = d.call_rules.clone();
    calls.sort();
    for r in calls {
        let _ = writeln!(out, "call {} {} -> {} {}", r.from, r.symbol, r.to, r.push);
    }
    let mut rets = d.return_rules.clone();
    rets.sort();
    for r in rets {
        let _ = writeln!(out, "ret {} {} {} -> {}", r.from, r.pop, r.symbol, r.to);
    }
    let mut ints = d.internal_rules.clone();
    ints.sort();
    for r in ints {
        let _ = writeln!(out, "int {} {} -> {}", r.from, r.symbol, r.to);
    }
    out
}
